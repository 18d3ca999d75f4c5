#include "locq/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <thread>

#include "locq/errors.hpp"
#include "locq/eulerian.hpp"
#include "locq/index.hpp"

namespace locq {

namespace {
constexpr std::uint64_t kOrbitMemberCap = 50'000'000;

std::uint64_t effective_orbit_budget(const LabeledGraph& g, std::uint64_t budget) {
    if (budget == 0) budget = orbit_size_bound(g.n(), g.q());
    return std::min(budget, kOrbitMemberCap);
}

// Closure of the seed set under the generators, deduplicated by key.
Orbit bfs_closure(std::vector<std::string> seeds, int n, int q,
                  std::uint64_t budget) {
    Orbit orb;
    std::deque<std::string> queue;
    for (std::string& seed : seeds) {
        if (orb.members.insert(seed).second) {
            if (orb.representative.empty() || seed < orb.representative)
                orb.representative = seed;
            queue.push_back(std::move(seed));
        }
    }
    while (!queue.empty()) {
        LabeledGraph g = LabeledGraph::from_key(queue.front());
        queue.pop_front();
        auto visit = [&](const LabeledGraph& h) {
            std::string key = h.canonical_key();
            if (!orb.members.insert(key).second) return;
            if (orb.members.size() > budget)
                throw BudgetError("orbit exceeded budget of " + std::to_string(budget) +
                                  " members");
            if (key < orb.representative) orb.representative = key;
            queue.push_back(std::move(key));
        };
        for (int v = 0; v < n; ++v) {
            for (int r = 1; r < q; ++r) visit(star(g, v, Fe(r)));
            for (int s = 2; s < q; ++s) visit(scale_vertex(g, v, Fe(s)));
        }
    }
    return orb;
}

}  // namespace

std::uint64_t orbit_size_bound(int n, int q) {
    std::uint64_t b = ipow_sat(std::uint64_t(q) * q - 1, unsigned(n));
    if (b > UINT64_MAX / std::uint64_t(q - 1)) return UINT64_MAX;
    return std::uint64_t(q - 1) * b;
}

Orbit orbit(const LabeledGraph& g, std::uint64_t budget) {
    return bfs_closure({g.canonical_key()}, g.n(), g.q(),
                       effective_orbit_budget(g, budget));
}

Orbit scalar_orbit(const LabeledGraph& g, std::uint64_t budget) {
    std::vector<std::string> seeds;
    for (int c = 1; c < g.q(); ++c)
        seeds.push_back(scale_graph(g, Fe(c)).canonical_key());
    return bfs_closure(std::move(seeds), g.n(), g.q(),
                       effective_orbit_budget(g, budget));
}

bool are_equivalent(const LabeledGraph& g, const LabeledGraph& h,
                    std::uint64_t budget) {
    if (g.n() != h.n() || g.q() != h.q())
        throw InvalidArgument("graphs live in different spaces");
    return orbit(g, budget).contains(h.canonical_key());
}

CensusReport census(int n, int q, bool connected_only, std::uint64_t budget,
                    int threads) {
    if (threads < 1) throw InvalidArgument("thread count must be positive");

    std::vector<std::string> seeds;
    for_each_graph(n, q, connected_only, budget,
                   [&](const LabeledGraph& g) { seeds.push_back(g.canonical_key()); });

    std::map<std::string, Orbit> orbits_by_rep;
    std::unordered_set<std::string> classified;

    if (threads == 1) {
        for (const std::string& seed : seeds) {
            if (classified.count(seed)) continue;
            Orbit orb = orbit(LabeledGraph::from_key(seed));
            for (const std::string& m : orb.members) classified.insert(m);
            orbits_by_rep.emplace(orb.representative, std::move(orb));
        }
    } else {
        // Workers claim seeds in order and explore whole orbits locally;
        // simultaneous discovery of one orbit from two seeds is resolved by
        // merging on the representative, so the result is deterministic.
        std::atomic<size_t> next{0};
        std::mutex mu;
        auto worker = [&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= seeds.size()) return;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (classified.count(seeds[i])) continue;
                }
                Orbit orb = orbit(LabeledGraph::from_key(seeds[i]));
                std::lock_guard<std::mutex> lock(mu);
                if (orbits_by_rep.count(orb.representative)) continue;
                for (const std::string& m : orb.members) classified.insert(m);
                orbits_by_rep.emplace(orb.representative, std::move(orb));
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CensusReport report;
    report.n = n;
    report.q = q;
    report.connected_only = connected_only;
    report.graph_count = (long long)seeds.size();
    report.class_count = (long long)orbits_by_rep.size();

    long long covered = 0;
    for (const auto& [rep, orb] : orbits_by_rep) {
        report.representatives.push_back(rep);
        ++report.size_histogram[orb.size()];
        covered += orb.size();
    }
    if (covered != report.graph_count)
        throw InvariantViolation("orbits do not partition the graph set");

    report.lower_exp = (1LL * n * n - 5LL * n) / 2 - 1;
    report.upper_exp = (1LL * n * n - n) / 2;
    report.lower_ok =
        report.lower_exp < 0 ||
        std::uint64_t(report.class_count) >= ipow_sat(q, unsigned(report.lower_exp));
    report.upper_ok =
        std::uint64_t(report.class_count) <= ipow_sat(q, unsigned(report.upper_exp));
    return report;
}

CountingCheck verify_counting(const LabeledGraph& g, std::uint64_t budget) {
    if (!g.is_connected())
        throw ConfigError("counting identities require a connected graph");
    int q = g.q();
    if (q != 2 && q % 2 == 0)
        throw ConfigError("counting identities require q = 2 or odd q");

    CountingCheck check;
    check.l = orbit(g, budget).size();
    check.epsilon = count_eulerian(standard_system(g), budget);
    check.lambda = lambda(g, budget);

    if (q == 2) {
        check.scalar = check.l;
        check.identity_ok = check.l * check.lambda == check.epsilon;
        check.dichotomy_ok = true;
        check.divisibility_ok =
            check.lambda != 0 && check.epsilon % check.lambda == 0;
    } else {
        check.scalar = scalar_orbit(g, budget).size();
        check.identity_ok =
            check.scalar * check.lambda == (long long)(q - 1) * check.epsilon;
        check.dichotomy_ok =
            check.scalar == check.l || check.scalar == 2 * check.l;
        check.divisibility_ok =
            check.lambda != 0 && ((long long)(q - 1) * check.epsilon) % check.lambda == 0;
    }
    return check;
}

}  // namespace locq
