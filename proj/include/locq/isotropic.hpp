#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locq/graph.hpp"
#include "locq/linalg.hpp"

namespace locq {

// An element of K = GF(q)^2.
struct KElem {
    Fe x = 0, y = 0;
    bool operator==(const KElem&) const = default;
    bool is_zero() const { return x == 0 && y == 0; }
};

// An element of K^V, stored as the coordinate pair (X, Y): A(v) = (x[v], y[v]).
struct KVector {
    const Field* f = nullptr;
    std::vector<Fe> x, y;

    KVector() = default;
    KVector(const Field& field, int n) : f(&field), x(n, 0), y(n, 0) {}
    static KVector constant(const Field& field, int n, KElem e);

    int n() const { return int(x.size()); }
    const Field& field() const { return *f; }
    KElem at(int v) const { return {x[v], y[v]}; }
    void set(int v, KElem e) { x[v] = e.x; y[v] = e.y; }

    // No coordinate equal to (0, 0).
    bool is_complete() const;

    bool operator==(const KVector& o) const { return x == o.x && y == o.y; }
};

// Symplectic form <A,B> = sum_v (X_A(v) Y_B(v) - X_B(v) Y_A(v)).
Fe inner(const KVector& a, const KVector& b);

// The 2n x 2n matrix D(A, B) with four diagonal blocks,
//   [[diag z, diag t], [diag x, diag y]]   for A = (x, y), B = (z, t),
// stored as its four diagonals. det_at(v) = z[v] y[v] - x[v] t[v], the v-th
// entry of the diagonal "determinant" of D, equal to <B(v), A(v)>.
struct BlockDiag {
    const Field* f = nullptr;
    std::vector<Fe> z, t, x, y;

    BlockDiag() = default;
    BlockDiag(const Field& field, int n)
        : f(&field), z(n, 0), t(n, 0), x(n, 0), y(n, 0) {}
    static BlockDiag identity(const Field& field, int n);
    static BlockDiag of_pair(const KVector& a, const KVector& b);

    int n() const { return int(z.size()); }
    const Field& field() const { return *f; }
    KVector vec_a() const;  // (x, y)
    KVector vec_b() const;  // (z, t)

    Fe det_at(int v) const;
    // The common value of det_at when it is constant over v, else nullopt.
    std::optional<Fe> constant_det() const;

    bool operator==(const BlockDiag& o) const {
        return z == o.z && t == o.t && x == o.x && y == o.y;
    }
};

// Shared validity gate for presentations: returns the constant determinant
// value, throwing InvalidPresentation unless it exists and is nonzero.
Fe require_presentation_det(const BlockDiag& d);

// An n-dimensional self-orthogonal subspace of K^V, held as its canonical
// reduced-row-echelon basis (n x 2n, X block columns first), so subspace
// equality is plain matrix comparison.
class IsotropicSystem {
  public:
    // Canonicalizes the row space and validates both invariants:
    // rank n and B [[0,I],[-I,0]] B^T = 0. Throws InvariantViolation.
    static IsotropicSystem from_rows(const Mat& rows);

    int n() const { return basis_.rows(); }
    int q() const { return basis_.field().q(); }
    const Field& field() const { return basis_.field(); }
    const Mat& basis() const { return basis_; }

    bool operator==(const IsotropicSystem& o) const { return basis_ == o.basis_; }

  private:
    explicit IsotropicSystem(Mat basis) : basis_(std::move(basis)) {}
    Mat basis_;
};

// True iff rows has full rank n = cols/2 and its symplectic Gram matrix
// vanishes.
bool is_isotropic(const Mat& rows);

// Row space of (I | G) . D as an isotropic system. D must have constant
// nonzero determinant (throws InvalidPresentation otherwise).
IsotropicSystem from_graph(const LabeledGraph& g, const BlockDiag& d);

// from_graph with the identity D: basis rows (delta_v | g(v)).
IsotropicSystem standard_system(const LabeledGraph& g);

// Finds a graph G and block-diagonal D with determinant diagonal all-ones
// such that (I | G) . D spans L. Chooses per-coordinate column swaps between
// the two blocks to make the first block invertible (greedy, with
// backtracking on failure), row-reduces, symmetrizes and kills the diagonal.
std::pair<LabeledGraph, BlockDiag> extract_presentation(const IsotropicSystem& L);

// dim(L intersect C-hat) where C-hat = span{E_{v,C(v)}}. C must be complete.
int intersect_dim(const IsotropicSystem& L, const KVector& c);

// Fixed representatives of K* = (K \ {0}) / scalar: (1, y) for each y in
// F_q, then (0, 1) - q+1 classes in a deterministic order.
std::vector<KElem> kstar_reps(const Field& f);

// Representative of the class of a nonzero element.
KElem kstar_class_of(const Field& f, KElem v);

// The minor of L at v: restrict to {C in L : <C(v), x> = 0} and project out
// coordinate v. Passing nullopt selects the stricter restriction
// {C : C(v) = 0} (used when v is isolated in a fundamental graph); nullopt
// is deliberately distinct from any element of K*, since <C(v), 0> = 0 would
// hold vacuously. The result always has half-dimension n-1.
IsotropicSystem minor(const IsotropicSystem& L, int v, std::optional<KElem> x);

// Text format: "q n" header, then n rows of 2n space-separated encodings.
std::string system_to_text(const IsotropicSystem& L);
IsotropicSystem parse_system(const std::string& text);

}  // namespace locq
