#include "locq/index.hpp"

#include <algorithm>

#include "locq/errors.hpp"

namespace locq {

std::uint64_t IntsolSolutions::solution_count() const {
    return ipow_sat(std::uint64_t(q), unsigned(nullspace_basis.rows()));
}

Mat intsol_matrix(const LabeledGraph& g) {
    const Field& f = g.field();
    int n = g.n();
    // Unknown layout [X | Y | Z | T]; equation (u, w) is the (u, w) entry of
    // (diag Z + G diag X) G - diag T - G diag Y.
    Mat m(f, n * n, 4 * n);
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            int row = u * n + w;
            for (int mid = 0; mid < n; ++mid) {
                Fe c = f.mul(g.label(u, mid), g.label(mid, w));
                if (c != 0) m(row, mid) = f.add(m(row, mid), c);
            }
            Fe guw = g.label(u, w);
            m(row, n + w) = f.sub(m(row, n + w), guw);      // -g_uw Y(w)
            m(row, 2 * n + u) = f.add(m(row, 2 * n + u), guw);  // +g_uw Z(u)
            if (u == w) m(row, 3 * n + u) = f.neg(Fe(1));   // -T(u)
        }
    return m;
}

IntsolSolutions intsol_solutions(const LabeledGraph& g, std::uint64_t budget) {
    const Field& f = g.field();
    int n = g.n();
    int q = g.q();
    IntsolSolutions out(f);
    out.n = n;
    out.q = q;
    out.nullspace_basis = nullspace(intsol_matrix(g));

    int dim = out.nullspace_basis.rows();
    std::uint64_t count = ipow_sat(std::uint64_t(q), unsigned(dim));
    if (count > budget)
        throw BudgetError("solution enumeration needs " + std::to_string(count) +
                          " vectors, budget is " + std::to_string(budget));

    std::vector<Fe> coeff(dim, 0);
    std::vector<Fe> sol(4 * n, 0);
    while (true) {
        std::fill(sol.begin(), sol.end(), 0);
        for (int i = 0; i < dim; ++i) {
            if (coeff[i] == 0) continue;
            for (int j = 0; j < 4 * n; ++j)
                sol[j] = f.add(sol[j], f.mul(coeff[i], out.nullspace_basis(i, j)));
        }
        BlockDiag d(f, n);
        for (int v = 0; v < n; ++v) {
            d.x[v] = sol[v];
            d.y[v] = sol[n + v];
            d.z[v] = sol[2 * n + v];
            d.t[v] = sol[3 * n + v];
        }
        auto det = d.constant_det();
        if (det && *det != 0) out.presentations.push_back(std::move(d));

        int pos = dim - 1;
        while (pos >= 0 && coeff[pos] == q - 1) coeff[pos--] = 0;
        if (pos < 0) break;
        ++coeff[pos];
    }
    return out;
}

long long lambda(const LabeledGraph& g, std::uint64_t budget) {
    return (long long)intsol_solutions(g, budget).presentations.size();
}

std::vector<std::vector<int>> simple_cycles(const LabeledGraph& g,
                                            std::uint64_t budget) {
    int n = g.n();
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (w != v && g.label(v, w) != 0) adj[v].push_back(w);

    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<bool> used(n, false);
    std::uint64_t steps = 0;

    // Each cycle is produced once: anchored at its smallest vertex, with the
    // lexicographically smaller of the two orientations.
    std::function<void(int)> dfs = [&](int anchor) {
        int v = path.back();
        if (++steps > budget)
            throw BudgetError("cycle enumeration exceeded budget");
        for (int w : adj[v]) {
            if (w == anchor && path.size() >= 3 && path[1] < path.back())
                cycles.push_back(path);
            if (w <= anchor || used[w]) continue;
            used[w] = true;
            path.push_back(w);
            dfs(anchor);
            path.pop_back();
            used[w] = false;
        }
    };
    for (int a = 0; a < n; ++a) {
        path = {a};
        used.assign(n, false);
        used[a] = true;
        dfs(a);
    }
    return cycles;
}

namespace {

std::vector<Fe> even_walk_vector(const LabeledGraph& g, const std::vector<int>& walk) {
    const Field& f = g.field();
    int n = g.n();
    std::vector<Fe> gen(n, 0);
    for (size_t i = 0; i < walk.size(); ++i) {
        int a = walk[i];
        int b = walk[(i + 1) % walk.size()];
        Fe weight = f.inv(g.label(a, b));
        for (int m = 0; m < n; ++m) {
            Fe term = f.mul(weight, f.mul(g.label(a, m), g.label(b, m)));
            if ((i + 1) % 2 == 1) term = f.neg(term);  // 1-based alternation
            gen[m] = f.add(gen[m], term);
        }
    }
    return gen;
}

}  // namespace

Mat bineighborhood(const LabeledGraph& g, std::uint64_t budget) {
    const Field& f = g.field();
    int n = g.n();
    std::vector<std::vector<Fe>> gens;

    // Componentwise products over non-adjacent pairs.
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w) {
            if (g.label(v, w) != 0) continue;
            std::vector<Fe> gen(n, 0);
            for (int m = 0; m < n; ++m)
                gen[m] = f.mul(g.label(v, m), g.label(w, m));
            gens.push_back(std::move(gen));
        }

    // Alternating even-closed-walk vectors. A complete finite generating
    // family is given by the fundamental cycles of the bipartite double
    // cover of the support graph (nodes Z_v and Y_v, support edge {u, w}
    // lifting to Z_u-Y_w and Z_w-Y_u): its cycles are exactly the even
    // closed walks, which include the simple even cycles and, beyond them,
    // concatenations of odd cycles such as two triangles joined at a
    // vertex. Each edge enters with weight g(a,b)^{-1}; over GF(2) and
    // GF(3) every nonzero label is its own inverse, so this coincides with
    // plain g(a,b) weights there.
    int dc = 2 * n;  // node v is Z_v, node n+v is Y_v
    std::vector<std::vector<std::pair<int, int>>> inc(dc);  // (neighbor, edge id)
    std::vector<std::pair<int, int>> edges;  // (Z-node, Y-node)
    std::uint64_t edge_budget = 0;
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            if (w == u || g.label(u, w) == 0) continue;
            int id = int(edges.size());
            edges.push_back({u, n + w});
            inc[u].push_back({n + w, id});
            inc[n + w].push_back({u, id});
            if (++edge_budget > budget)
                throw BudgetError("double cover exceeded budget");
        }

    std::vector<int> parent(dc, -2);
    std::vector<bool> in_tree(edges.size(), false);
    for (int root = 0; root < dc; ++root) {
        if (parent[root] != -2) continue;
        parent[root] = -1;
        std::vector<int> stack = {root};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto [y, id] : inc[x]) {
                if (parent[y] != -2) continue;
                parent[y] = x;
                in_tree[id] = true;
                stack.push_back(y);
            }
        }
    }

    auto ancestors = [&](int x) {
        std::vector<int> path = {x};
        while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
        return path;
    };
    for (size_t id = 0; id < edges.size(); ++id) {
        if (in_tree[id]) continue;
        // Fundamental cycle: the non-tree edge plus the tree path between
        // its endpoints; project double-cover nodes back to vertices.
        std::vector<int> up_p = ancestors(edges[id].first);
        std::vector<int> up_q = ancestors(edges[id].second);
        while (up_p.size() > 1 && up_q.size() > 1 &&
               up_p[up_p.size() - 2] == up_q[up_q.size() - 2]) {
            up_p.pop_back();
            up_q.pop_back();
        }
        // Walk q -> lca -> p, then close with the non-tree edge p -> q.
        std::vector<int> walk;
        for (size_t i = 0; i + 1 < up_q.size(); ++i) walk.push_back(up_q[i]);
        for (size_t i = up_p.size(); i-- > 0;) walk.push_back(up_p[i]);
        std::vector<int> projected;
        projected.reserve(walk.size());
        for (int node : walk) projected.push_back(node < n ? node : node - n);
        gens.push_back(even_walk_vector(g, projected));
    }

    Mat raw(f, int(gens.size()), n);
    for (size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < n; ++j) raw(int(i), j) = gens[i][j];
    return row_space_rref(raw);
}

int nu_perp_from_solutions(const LabeledGraph& g) {
    Mat ns = nullspace(intsol_matrix(g));
    Mat xs(g.field(), ns.rows(), g.n());
    for (int i = 0; i < ns.rows(); ++i)
        for (int j = 0; j < g.n(); ++j) xs(i, j) = ns(i, j);
    return rank_of(xs);
}

bool has_odd_cycle(const LabeledGraph& g) {
    int n = g.n();
    std::vector<int> color(n, -1);
    for (int start = 0; start < n; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::vector<int> stack = {start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                if (w == v || g.label(v, w) == 0) continue;
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    stack.push_back(w);
                } else if (color[w] == color[v]) {
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace locq
