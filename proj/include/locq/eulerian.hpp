#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "locq/isotropic.hpp"

namespace locq {

// M(L; t) = sum over complete vectors C of (t - q)^{dim(L n C-hat)}, kept in
// the shifted basis s = t - q: coeffs[d] counts the complete vectors with
// intersection dimension d. epsilon() = M(L; q) is the Eulerian-vector count.
struct TutteMartinPoly {
    int q = 0;
    int n = 0;
    std::vector<long long> coeffs;

    void trim();
    long long at(int d) const {
        return d >= 0 && d < int(coeffs.size()) ? coeffs[d] : 0;
    }
    long long total() const;
    long long epsilon() const { return at(0); }

    // Equality of the polynomials (same q, same coefficients).
    bool operator==(const TutteMartinPoly& o) const;
};

// Enumerates all (q^2-1)^n complete vectors of K^V in a fixed order, reusing
// one buffer. Throws BudgetError when the count exceeds the budget.
void for_each_complete(const Field& f, int n, std::uint64_t budget,
                       const std::function<void(const KVector&)>& fn);

// A-hat intersects L trivially. A must be complete.
bool is_eulerian(const IsotropicSystem& L, const KVector& a);

// Exact count of Eulerian vectors by exhaustive enumeration. The summation
// is read-only on L, so threads > 1 splits the enumeration range; results
// are identical to the single-threaded run.
long long count_eulerian(const IsotropicSystem& L,
                         std::uint64_t budget = kDefaultBudget, int threads = 1);

// Histogram of intersect_dim over all complete vectors.
TutteMartinPoly tutte_martin_direct(const IsotropicSystem& L,
                                    std::uint64_t budget = kDefaultBudget,
                                    int threads = 1);

// Recursive computation on graphs, memoized on canonical keys:
//   - isolated v:  M(G) = (q-1) t M(G - v)
//   - otherwise, with w the smallest neighbor of the smallest non-isolated
//     vertex v:  M(G) = (q-1) [ M((G *_s w) *_1 v - v) + sum_r M(G *_r v - v) ]
//     where s = -g(v,w)^{-2}.
// Isolated vertices are always handled first; single-threaded.
TutteMartinPoly tutte_martin_recursive(const LabeledGraph& g);

// Moves a presentation along a star operation: the same system presented
// with fundamental graph G *_r v, via (A + r B_v, B + r g(v)^2 x A).
std::pair<LabeledGraph, BlockDiag> switch_presentation(const LabeledGraph& g,
                                                       const BlockDiag& d,
                                                       int v, Fe r);

// Same for vertex scaling: (G o_s v, A + (s^{-1}-1) A_v, B + (s-1) B_v).
std::pair<LabeledGraph, BlockDiag> scale_presentation(const LabeledGraph& g,
                                                      const BlockDiag& d,
                                                      int v, Fe s);

// The unique presentation (G, A, B) of L with Eulerian vector A, normalized
// so the determinant diagonal of D(A, B) is all-ones. Returns (G, B).
// For each v this solves for the one-dimensional intersection of L with
// span({A_w : w != v} + E_{v,*}).
std::pair<LabeledGraph, KVector> eulerian_to_presentation(const IsotropicSystem& L,
                                                          const KVector& a);

// The K* classes x such that replacing A(v) by x keeps A Eulerian. For
// systems of full dimension exactly q of the q+1 classes qualify.
std::vector<KElem> switching_classes(const IsotropicSystem& L, const KVector& a,
                                     int v);

}  // namespace locq
