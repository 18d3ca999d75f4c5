#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "locq/budget.hpp"
#include "locq/gf.hpp"

namespace locq {

// Labeled graph on n vertices over GF(q): a symmetric matrix with zero
// diagonal. Only the upper triangle is stored, so symmetry and the zero
// diagonal hold by construction. Vertices are dense 0-based indices.
class LabeledGraph {
  public:
    LabeledGraph(int n, int q);

    int n() const { return n_; }
    int q() const { return field_->q(); }
    const Field& field() const { return *field_; }

    Fe label(int v, int w) const;
    void set_label(int v, int w, Fe value);  // requires v != w
    std::vector<Fe> row(int v) const;

    int degree(int v) const;  // number of incident nonzero labels
    bool is_isolated(int v) const { return degree(v) == 0; }
    long long edge_count() const;

    bool operator==(const LabeledGraph& o) const;

    // Injective byte encoding (q, n, upper-triangle labels row-major).
    // Equal graphs have equal keys and keys decode back to equal graphs.
    std::string canonical_key() const;
    static LabeledGraph from_key(std::string_view key);

    // Connectivity of the support graph (pairs with nonzero label).
    bool is_connected() const;

  private:
    int pair_index(int v, int w) const;

    const Field* field_;
    int n_;
    std::vector<Fe> labels_;  // size n(n-1)/2
};

// Local complementation at v with coefficient r: adds r*g(v,u)*g(v,w) to each
// label between distinct neighbors u, w of v; row v is unchanged. r = 0 is a
// no-op by definition.
LabeledGraph star(const LabeledGraph& g, int v, Fe r);

// Multiplies every label incident to v by s != 0.
LabeledGraph scale_vertex(const LabeledGraph& g, int v, Fe s);

// Multiplies every label by c != 0.
LabeledGraph scale_graph(const LabeledGraph& g, Fe c);

LabeledGraph delete_vertex(const LabeledGraph& g, int v);

// q^{n(n-1)/2}, saturating.
std::uint64_t graph_count(int n, int q);

// Enumerates every labeled graph exactly once, in canonical-key order.
// Throws BudgetError if q^{n(n-1)/2} exceeds the budget.
void for_each_graph(int n, int q, bool connected_only, std::uint64_t budget,
                    const std::function<void(const LabeledGraph&)>& fn);

std::vector<LabeledGraph> all_graphs(int n, int q, bool connected_only,
                                     std::uint64_t budget = kDefaultBudget);

// Text format: first line "q n", then one line "u v label" per nonzero
// label, 0-indexed; unlisted pairs are 0. The writer emits pairs sorted
// lexicographically. The inline form uses ';' instead of newlines.
LabeledGraph read_graph(std::istream& in);
LabeledGraph parse_graph(const std::string& text);
LabeledGraph parse_graph_inline(const std::string& text);
void write_graph(std::ostream& out, const LabeledGraph& g);
std::string graph_to_text(const LabeledGraph& g);
std::string graph_to_inline(const LabeledGraph& g);

}  // namespace locq
