#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "locq/graph.hpp"

namespace locq {

// A local-equivalence orbit, as the set of canonical keys of its members.
struct Orbit {
    std::string representative;  // lexicographically smallest member key
    std::unordered_set<std::string> members;

    long long size() const { return (long long)members.size(); }
    bool contains(const std::string& key) const { return members.count(key) != 0; }
};

// (q-1)(q^2-1)^n, the proven cap on orbit sizes of connected graphs;
// saturating.
std::uint64_t orbit_size_bound(int n, int q);

// Breadth-first closure of {g} under the generators
//   { star(.,v,r) : r != 0 }  and  { scale_vertex(.,v,s) : s not in {0,1} },
// deduplicated by canonical key. budget = 0 selects the default cap of
// orbit_size_bound(n, q); exceeding the cap throws BudgetError.
Orbit orbit(const LabeledGraph& g, std::uint64_t budget = 0);

// Union of orbit(c g) over all nonzero c; its size is l(g) or 2 l(g).
Orbit scalar_orbit(const LabeledGraph& g, std::uint64_t budget = 0);

// Orbit membership; requires matching n and q.
bool are_equivalent(const LabeledGraph& g, const LabeledGraph& h,
                    std::uint64_t budget = 0);

struct CensusReport {
    int n = 0;
    int q = 0;
    bool connected_only = false;
    long long graph_count = 0;  // graphs partitioned (connected-only if set)
    long long class_count = 0;
    std::map<long long, long long> size_histogram;  // orbit size -> #orbits
    std::vector<std::string> representatives;       // sorted canonical keys

    // Census bound annotations: log_q of q^{(n^2-5n)/2 - 1} and q^{(n^2-n)/2}.
    long long lower_exp = 0, upper_exp = 0;
    bool lower_ok = false, upper_ok = false;
};

// Partitions all (connected) labeled graphs on n vertices into orbits by
// repeated BFS from the smallest unvisited key. threads > 1 runs BFS workers
// over independent seeds; results are merged and reported in key order, so
// output is deterministic either way.
CensusReport census(int n, int q, bool connected_only,
                    std::uint64_t budget = kDefaultBudget, int threads = 1);

// The counting identities tying the orbit size to the Eulerian count and
// the index, each quantity computed by its own independent path:
//   odd q:  |scalar_orbit| * lambda == (q-1) * epsilon, |scalar_orbit| in {l, 2l}
//   q = 2:  l * lambda == epsilon
// Requires a connected graph and q = 2 or odd q.
struct CountingCheck {
    long long l = 0;
    long long scalar = 0;
    long long epsilon = 0;
    long long lambda = 0;
    bool identity_ok = false;
    bool dichotomy_ok = false;
    bool divisibility_ok = false;

    bool ok() const { return identity_ok && dichotomy_ok && divisibility_ok; }
};

CountingCheck verify_counting(const LabeledGraph& g,
                              std::uint64_t budget = kDefaultBudget);

}  // namespace locq
