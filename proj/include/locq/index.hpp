#pragma once

#include <cstdint>
#include <vector>

#include "locq/isotropic.hpp"

namespace locq {

// Solutions D(A, B) of the linear constraint
//   (diag Z + G diag X) G - diag T - G diag Y = 0
// in the 4n unknowns (X, Y, Z, T); "presentations" is the subset with a
// constant nonzero determinant diagonal. Its size is lambda(G), the number
// of pairs (A, B) presenting the system attached to the fundamental graph G.
struct IntsolSolutions {
    int n = 0;
    int q = 0;
    Mat nullspace_basis;  // rows span all solution vectors (X | Y | Z | T)
    std::vector<BlockDiag> presentations;

    explicit IntsolSolutions(const Field& f) : nullspace_basis(f, 0, 0) {}
    std::uint64_t solution_count() const;  // q^rank of the nullspace
};

// Coefficient matrix of the constraint: n^2 equations over the unknown
// layout [X | Y | Z | T].
Mat intsol_matrix(const LabeledGraph& g);

// Nullspace basis plus the det-filtered enumeration. The enumeration visits
// q^dim vectors; throws BudgetError beyond the budget.
IntsolSolutions intsol_solutions(const LabeledGraph& g,
                                 std::uint64_t budget = kDefaultBudget);

long long lambda(const LabeledGraph& g, std::uint64_t budget = kDefaultBudget);

// Basis (canonical RREF) of the bineighborhood space: the span of the
// alternating vectors
//   nu(W) = sum_i (-1)^i g(v_i, v_i+1)^{-1} g(v_i) x g(v_i+1)
// over even closed walks W, together with the componentwise products
// g(v) x g(w) over non-adjacent pairs. Simple even cycles alone do not
// span the space (two odd cycles sharing a vertex contribute an even walk
// that is not a cycle), so the walk span is generated from the fundamental
// cycles of the bipartite double cover of the support graph. This is
// exactly the orthogonal complement of the X-projection of the solution
// set, for every graph.
Mat bineighborhood(const LabeledGraph& g, std::uint64_t budget = kDefaultBudget);

// Vertex sets of all simple cycles of the support graph, each anchored at
// its smallest vertex with the lexicographically smaller orientation.
std::vector<std::vector<int>> simple_cycles(const LabeledGraph& g,
                                            std::uint64_t budget = kDefaultBudget);

// Dimension of the projection of the solution nullspace onto the X block;
// equals n - rank(bineighborhood(G)) for connected graphs.
int nu_perp_from_solutions(const LabeledGraph& g);

// Non-bipartiteness of the support graph.
bool has_odd_cycle(const LabeledGraph& g);

}  // namespace locq
