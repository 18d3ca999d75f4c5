#pragma once

#include <cstdint>
#include <vector>

#include "locq/errors.hpp"

namespace locq {

// A field element, encoded as an integer 0..q-1.
using Fe = std::uint8_t;

// Arithmetic tables for GF(q), q = p^k <= 9.
//
// Extension fields use one fixed monic irreducible polynomial per q so that
// element encodings are stable across runs:
//   q=4: x^2 + x + 1      q=8: x^3 + x + 1      q=9: x^2 + 1
// Elements are base-p packings of polynomial coefficients (low degree in the
// least significant digit), so 0 is always the additive identity and 1 the
// multiplicative identity.
//
// Instances are built once per q, are immutable afterwards, and may be shared
// freely across threads.
class Field {
  public:
    static const Field& get(int q);  // supported q: 2, 3, 4, 5, 7, 8, 9
    static bool supported(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int k() const { return k_; }
    // Reduction polynomial coefficients, constant term first, degree k.
    const std::vector<int>& reduction_poly() const { return poly_; }

    Fe add(Fe a, Fe b) const { return add_[idx(a, b)]; }
    Fe sub(Fe a, Fe b) const { return add_[idx(a, neg_[b])]; }
    Fe neg(Fe a) const { return neg_[a]; }
    Fe mul(Fe a, Fe b) const { return mul_[idx(a, b)]; }
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    // True iff some d satisfies d*d == a. Holds for (q+1)/2 elements when q
    // is odd and for every element in characteristic 2.
    bool is_square(Fe a) const { return square_[a]; }

  private:
    explicit Field(int q);
    int idx(Fe a, Fe b) const { return int(a) * q_ + int(b); }

    int q_, p_, k_;
    std::vector<int> poly_;
    std::vector<Fe> add_, mul_, neg_, inv_;
    std::vector<bool> square_;
};

}  // namespace locq
