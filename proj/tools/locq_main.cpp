// locq: exact invariants and orbit enumeration for graphs labeled over GF(q).
//
// Exit codes: 0 success, 1 verification failure, 2 input/configuration error,
// 3 budget exceeded, 4 internal error.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "locq/eulerian.hpp"
#include "locq/graph.hpp"
#include "locq/index.hpp"
#include "locq/orbits.hpp"

using nlohmann::json;
using namespace locq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;

struct GraphInput {
    std::string file;
    std::string inline_graph;

    void add_options(CLI::App* cmd) {
        cmd->add_option("file", file, "graph file (text format: 'q n' then 'u v label' lines)");
        cmd->add_option("--graph", inline_graph, "inline graph, e.g. \"2 3; 0 1 1; 1 2 1\"");
    }

    LabeledGraph load() const {
        if (file.empty() == inline_graph.empty())
            throw ConfigError("provide exactly one graph input (file or --graph)");
        if (!inline_graph.empty()) return parse_graph_inline(inline_graph);
        std::ifstream in(file);
        if (!in) throw ConfigError("cannot open " + file);
        return read_graph(in);
    }
};

json tutte_to_json(const TutteMartinPoly& poly) {
    json coeffs = json::object();
    for (size_t d = 0; d < poly.coeffs.size(); ++d)
        if (poly.coeffs[d] != 0) coeffs[std::to_string(d)] = poly.coeffs[d];
    return json{{"q", poly.q}, {"n", poly.n}, {"coeffs", coeffs}};
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump() << '\n';
    } else {
        for (auto it = j.begin(); it != j.end(); ++it)
            std::cout << it.key() << ": " << it.value().dump() << '\n';
    }
}

int cmd_orbit(const GraphInput& input, std::uint64_t budget,
              const std::string& dump_members, const std::string& format) {
    LabeledGraph g = input.load();
    Orbit orb = orbit(g, budget);
    Orbit sorb = scalar_orbit(g, budget);
    json out{{"schema", "locq.orbit/1"},
             {"q", g.q()},
             {"n", g.n()},
             {"l", orb.size()},
             {"scalar_orbit_size", sorb.size()},
             {"representative",
              graph_to_inline(LabeledGraph::from_key(orb.representative))}};
    emit(out, format);
    if (!dump_members.empty()) {
        std::ostringstream blocks;
        std::vector<std::string> keys(orb.members.begin(), orb.members.end());
        std::sort(keys.begin(), keys.end());
        for (size_t i = 0; i < keys.size(); ++i) {
            if (i) blocks << '\n';
            write_graph(blocks, LabeledGraph::from_key(keys[i]));
        }
        if (dump_members == "-") {
            std::cout << blocks.str();
        } else {
            std::ofstream out_file(dump_members);
            if (!out_file) throw ConfigError("cannot write " + dump_members);
            out_file << blocks.str();
        }
    }
    return kExitOk;
}

int cmd_invariants(const GraphInput& input, std::uint64_t budget, int threads,
                   const std::string& format) {
    LabeledGraph g = input.load();
    IsotropicSystem system = standard_system(g);
    json out{{"schema", "locq.invariants/1"},
             {"q", g.q()},
             {"n", g.n()},
             {"epsilon", count_eulerian(system, budget, threads)},
             {"lambda", lambda(g, budget)},
             {"nu_perp_dim", g.n() - bineighborhood(g, budget).rows()},
             {"has_odd_cycle", has_odd_cycle(g)},
             {"tutte_martin",
              tutte_to_json(tutte_martin_direct(system, budget, threads))}};
    emit(out, format);
    return kExitOk;
}

int cmd_census(int q, int n, bool connected, std::uint64_t budget, int threads,
               const std::string& format) {
    CensusReport report = census(n, q, connected, budget, threads);
    json hist = json::object();
    for (const auto& [size, count] : report.size_histogram)
        hist[std::to_string(size)] = count;
    json reps = json::array();
    for (const std::string& key : report.representatives)
        reps.push_back(graph_to_inline(LabeledGraph::from_key(key)));
    json out{{"schema", "locq.census/1"},
             {"q", report.q},
             {"n", report.n},
             {"connected_only", report.connected_only},
             {"graph_count", report.graph_count},
             {"class_count", report.class_count},
             {"size_histogram", hist},
             {"representatives", reps},
             {"bounds",
              {{"lower_log_q", report.lower_exp},
               {"upper_log_q", report.upper_exp},
               {"lower_ok", report.lower_ok},
               {"upper_ok", report.upper_ok}}}};
    emit(out, format);
    return report.lower_ok && report.upper_ok ? kExitOk : kExitViolation;
}

json check_to_json(const LabeledGraph& g, const CountingCheck& check) {
    return json{{"graph", graph_to_inline(g)},
                {"l", check.l},
                {"scalar_orbit_size", check.scalar},
                {"epsilon", check.epsilon},
                {"lambda", check.lambda},
                {"identity_ok", check.identity_ok},
                {"dichotomy_ok", check.dichotomy_ok},
                {"divisibility_ok", check.divisibility_ok}};
}

int cmd_verify(const GraphInput& input, int q, int n, std::uint64_t budget,
               int sample, unsigned seed, bool inject_fault,
               const std::string& format) {
    std::vector<LabeledGraph> graphs;
    bool have_graph = !input.file.empty() || !input.inline_graph.empty();
    if (have_graph == (n > 0))
        throw ConfigError("provide exactly one of: a graph input, or --q with --n");
    if (have_graph) {
        graphs.push_back(input.load());
    } else {
        if (!Field::supported(q)) throw ConfigError("unsupported field size");
        if (sample > 0) {
            std::mt19937 rng(seed);
            std::uniform_int_distribution<int> pick(0, q - 1);
            while ((int)graphs.size() < sample) {
                LabeledGraph g(n, q);
                for (int v = 0; v < n; ++v)
                    for (int w = v + 1; w < n; ++w)
                        g.set_label(v, w, Fe(pick(rng)));
                if (g.is_connected()) graphs.push_back(g);
            }
        } else {
            for_each_graph(n, q, true, budget,
                           [&](const LabeledGraph& g) { graphs.push_back(g); });
        }
    }

    json failures = json::array();
    long long checked = 0;
    for (const LabeledGraph& g : graphs) {
        CountingCheck check = verify_counting(g, budget);
        if (inject_fault) {
            check.lambda += 1;  // deliberate perturbation for pipeline tests
            check.identity_ok = false;
        }
        ++checked;
        if (!check.ok()) failures.push_back(check_to_json(g, check));
    }
    json out{{"schema", "locq.verify/1"},
             {"graphs_checked", checked},
             {"all_ok", failures.empty()},
             {"failures", failures}};
    emit(out, format);
    return failures.empty() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact local-equivalence invariants for graphs over GF(q)"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t budget = kDefaultBudget;
    std::string format = "json";
    app.add_option("--budget", budget, "enumeration budget (graphs/vectors/orbit members)")
        ->capture_default_str();
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    auto* orbit_cmd = app.add_subcommand("orbit", "orbit size l, scalar orbit size, representative");
    GraphInput orbit_input;
    orbit_input.add_options(orbit_cmd);
    std::string dump_members;
    orbit_cmd->add_option("--dump-members", dump_members,
                          "write orbit members in text format ('-' for stdout)");

    auto* inv_cmd = app.add_subcommand(
        "invariants", "epsilon, lambda, bineighborhood codimension, Tutte-Martin polynomial");
    GraphInput inv_input;
    inv_input.add_options(inv_cmd);
    int inv_threads = 1;
    inv_cmd->add_option("--threads", inv_threads, "summation worker threads")
        ->capture_default_str();

    auto* census_cmd = app.add_subcommand("census", "partition all graphs at (q, n) into orbits");
    int census_q = 2, census_n = 2;
    bool census_connected = false;
    int census_threads = 1;
    census_cmd->add_option("--q", census_q, "field size")->required();
    census_cmd->add_option("--n", census_n, "vertex count")->required();
    census_cmd->add_flag("--connected", census_connected, "restrict to connected graphs");
    census_cmd->add_option("--threads", census_threads, "BFS worker threads")
        ->capture_default_str();

    auto* verify_cmd = app.add_subcommand(
        "verify", "check the counting identities on one graph or on all connected graphs at (q, n)");
    GraphInput verify_input;
    verify_input.add_options(verify_cmd);
    int verify_q = 0, verify_n = 0, verify_sample = 0;
    unsigned verify_seed = 1;
    bool inject_fault = false;
    verify_cmd->add_option("--q", verify_q, "field size");
    verify_cmd->add_option("--n", verify_n, "vertex count");
    verify_cmd->add_option("--sample", verify_sample,
                           "check this many random connected graphs instead of all");
    verify_cmd->add_option("--seed", verify_seed, "seed for --sample")->capture_default_str();
    verify_cmd->add_flag("--inject-fault", inject_fault,
                         "perturb lambda to force a failure (pipeline self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (orbit_cmd->parsed())
            return cmd_orbit(orbit_input, budget, dump_members, format);
        if (inv_cmd->parsed())
            return cmd_invariants(inv_input, budget, inv_threads, format);
        if (census_cmd->parsed())
            return cmd_census(census_q, census_n, census_connected, budget,
                              census_threads, format);
        if (verify_cmd->parsed())
            return cmd_verify(verify_input, verify_q, verify_n, budget, verify_sample,
                              verify_seed, inject_fault, format);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
