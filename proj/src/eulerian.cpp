#include "locq/eulerian.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "locq/errors.hpp"
#include "locq/linalg.hpp"

namespace locq {

void TutteMartinPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

long long TutteMartinPoly::total() const {
    long long s = 0;
    for (long long c : coeffs) s += c;
    return s;
}

bool TutteMartinPoly::operator==(const TutteMartinPoly& o) const {
    TutteMartinPoly a = *this, b = o;
    a.trim();
    b.trim();
    return a.q == b.q && a.coeffs == b.coeffs;
}

void for_each_complete(const Field& f, int n, std::uint64_t budget,
                       const std::function<void(const KVector&)>& fn) {
    std::uint64_t total = ipow_sat(std::uint64_t(f.q()) * f.q() - 1, unsigned(n));
    if (total > budget)
        throw BudgetError("complete-vector enumeration needs " +
                          std::to_string(total) + " vectors, budget is " +
                          std::to_string(budget));
    int q = f.q();
    // Per-coordinate value 1..q^2-1 encodes (x, y) = (val / q, val % q).
    std::vector<int> vals(n, 1);
    KVector c(f, n);
    for (int v = 0; v < n; ++v) c.set(v, {Fe(0), Fe(1)});
    if (n == 0) {
        fn(c);
        return;
    }
    while (true) {
        fn(c);
        int pos = n - 1;
        while (pos >= 0 && vals[pos] == q * q - 1) {
            vals[pos] = 1;
            c.set(pos, {Fe(0), Fe(1)});
            --pos;
        }
        if (pos < 0) break;
        ++vals[pos];
        c.set(pos, {Fe(vals[pos] / q), Fe(vals[pos] % q)});
    }
}

namespace {

// Enumerates the complete vectors with indices [lo, hi) in the global
// order used by for_each_complete, decoding the start point from its
// base-(q^2-1) digits and odometer-stepping from there.
void for_complete_range(const Field& f, int n, std::uint64_t lo, std::uint64_t hi,
                        const std::function<void(const KVector&)>& fn) {
    if (lo >= hi) return;
    int q = f.q();
    int radix = q * q - 1;
    std::vector<int> vals(n, 1);
    std::uint64_t rest = lo;
    for (int v = n - 1; v >= 0; --v) {
        vals[v] = int(rest % radix) + 1;
        rest /= radix;
    }
    KVector c(f, n);
    for (int v = 0; v < n; ++v) c.set(v, {Fe(vals[v] / q), Fe(vals[v] % q)});
    for (std::uint64_t i = lo; i < hi; ++i) {
        fn(c);
        int pos = n - 1;
        while (pos >= 0 && vals[pos] == radix) {
            vals[pos] = 1;
            c.set(pos, {Fe(0), Fe(1)});
            --pos;
        }
        if (pos < 0) break;
        ++vals[pos];
        c.set(pos, {Fe(vals[pos] / q), Fe(vals[pos] % q)});
    }
}

// Reusable rank computation for dim(L n C-hat) over many complete vectors.
struct IntersectDims {
    explicit IntersectDims(const IsotropicSystem& L)
        : n(L.n()), basis(&L.basis()), scratch(L.field(), 2 * L.n(), 2 * L.n()) {}

    int dim(const KVector& c) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 2 * n; ++j) scratch(i, j) = (*basis)(i, j);
        for (int v = 0; v < n; ++v)
            for (int j = 0; j < 2 * n; ++j) scratch(n + v, j) = 0;
        for (int v = 0; v < n; ++v) {
            scratch(n + v, v) = c.x[v];
            scratch(n + v, n + v) = c.y[v];
        }
        return 2 * n - rref_in_place(scratch);
    }

    int n;
    const Mat* basis;
    Mat scratch;
};

}  // namespace

bool is_eulerian(const IsotropicSystem& L, const KVector& a) {
    return intersect_dim(L, a) == 0;
}

namespace {

// Per-thread histograms over disjoint index ranges, merged by addition.
std::vector<long long> dim_histogram(const IsotropicSystem& L,
                                     std::uint64_t budget, int threads) {
    std::uint64_t total =
        ipow_sat(std::uint64_t(L.q()) * L.q() - 1, unsigned(L.n()));
    if (total > budget)
        throw BudgetError("complete-vector enumeration needs " +
                          std::to_string(total) + " vectors, budget is " +
                          std::to_string(budget));
    if (threads < 1) throw InvalidArgument("thread count must be positive");
    int workers = int(std::min<std::uint64_t>(std::uint64_t(threads), total ? total : 1));

    std::vector<std::vector<long long>> partial(
        workers, std::vector<long long>(L.n() + 1, 0));
    if (workers <= 1) {
        IntersectDims dims(L);
        for_each_complete(L.field(), L.n(), budget,
                          [&](const KVector& c) { ++partial[0][dims.dim(c)]; });
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            std::uint64_t lo = total * t / workers;
            std::uint64_t hi = total * (t + 1) / workers;
            pool.emplace_back([&, t, lo, hi]() {
                IntersectDims dims(L);
                for_complete_range(L.field(), L.n(), lo, hi,
                                   [&](const KVector& c) { ++partial[t][dims.dim(c)]; });
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<long long> hist(L.n() + 1, 0);
    for (const auto& p : partial)
        for (size_t d = 0; d < p.size(); ++d) hist[d] += p[d];
    return hist;
}

}  // namespace

long long count_eulerian(const IsotropicSystem& L, std::uint64_t budget,
                         int threads) {
    return dim_histogram(L, budget, threads)[0];
}

TutteMartinPoly tutte_martin_direct(const IsotropicSystem& L, std::uint64_t budget,
                                    int threads) {
    TutteMartinPoly poly;
    poly.q = L.q();
    poly.n = L.n();
    poly.coeffs = dim_histogram(L, budget, threads);
    poly.trim();
    return poly;
}

namespace {

// (q-1) t p in the shifted basis: t = s + q.
TutteMartinPoly mul_qt(const TutteMartinPoly& p) {
    TutteMartinPoly r;
    r.q = p.q;
    r.n = p.n + 1;
    r.coeffs.assign(p.coeffs.size() + 1, 0);
    for (size_t d = 0; d < r.coeffs.size(); ++d) {
        long long v = 0;
        if (d < p.coeffs.size()) v += (long long)p.q * p.coeffs[d];
        if (d >= 1) v += p.coeffs[d - 1];
        r.coeffs[d] = (p.q - 1) * v;
    }
    r.trim();
    return r;
}

TutteMartinPoly tm_rec(const LabeledGraph& g,
                       std::unordered_map<std::string, TutteMartinPoly>& memo) {
    if (g.n() == 0) {
        TutteMartinPoly one;
        one.q = g.q();
        one.n = 0;
        one.coeffs = {1};
        return one;
    }
    std::string key = g.canonical_key();
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    const Field& f = g.field();
    int q = g.q();
    TutteMartinPoly result;

    int isolated = -1;
    for (int v = 0; v < g.n(); ++v)
        if (g.is_isolated(v)) {
            isolated = v;
            break;
        }

    if (isolated >= 0) {
        result = mul_qt(tm_rec(delete_vertex(g, isolated), memo));
    } else {
        int v = 0;
        int w = -1;
        for (int u = 0; u < g.n(); ++u)
            if (g.label(v, u) != 0) {
                w = u;
                break;
            }
        Fe gvw = g.label(v, w);
        Fe s = f.neg(f.inv(f.mul(gvw, gvw)));

        TutteMartinPoly acc =
            tm_rec(delete_vertex(star(star(g, w, s), v, 1), v), memo);
        for (int r = 0; r < q; ++r) {
            TutteMartinPoly term = tm_rec(delete_vertex(star(g, v, Fe(r)), v), memo);
            if (term.coeffs.size() > acc.coeffs.size())
                acc.coeffs.resize(term.coeffs.size(), 0);
            for (size_t d = 0; d < term.coeffs.size(); ++d)
                acc.coeffs[d] += term.coeffs[d];
        }
        for (long long& c : acc.coeffs) c *= (q - 1);
        acc.trim();
        result = acc;
    }
    result.q = q;
    result.n = g.n();
    memo.emplace(std::move(key), result);
    return result;
}

}  // namespace

TutteMartinPoly tutte_martin_recursive(const LabeledGraph& g) {
    std::unordered_map<std::string, TutteMartinPoly> memo;
    return tm_rec(g, memo);
}

std::pair<LabeledGraph, BlockDiag> switch_presentation(const LabeledGraph& g,
                                                       const BlockDiag& d,
                                                       int v, Fe r) {
    if (v < 0 || v >= g.n()) throw InvalidArgument("vertex out of range");
    if (d.n() != g.n() || d.field().q() != g.q())
        throw InvalidArgument("graph and D dimension mismatch");
    require_presentation_det(d);
    const Field& f = g.field();

    BlockDiag out = d;
    // A' = A + r B_v
    out.x[v] = f.add(d.x[v], f.mul(r, d.z[v]));
    out.y[v] = f.add(d.y[v], f.mul(r, d.t[v]));
    // B' = B + r g(v)^2 x A
    for (int w = 0; w < g.n(); ++w) {
        Fe gw = g.label(v, w);
        if (gw == 0) continue;
        Fe rg2 = f.mul(r, f.mul(gw, gw));
        out.z[w] = f.add(d.z[w], f.mul(rg2, d.x[w]));
        out.t[w] = f.add(d.t[w], f.mul(rg2, d.y[w]));
    }
    require_presentation_det(out);
    return {star(g, v, r), std::move(out)};
}

std::pair<LabeledGraph, BlockDiag> scale_presentation(const LabeledGraph& g,
                                                      const BlockDiag& d,
                                                      int v, Fe s) {
    if (v < 0 || v >= g.n()) throw InvalidArgument("vertex out of range");
    if (s == 0) throw InvalidArgument("presentation scaling requires s != 0");
    if (d.n() != g.n() || d.field().q() != g.q())
        throw InvalidArgument("graph and D dimension mismatch");
    require_presentation_det(d);
    const Field& f = g.field();

    BlockDiag out = d;
    Fe sinv = f.inv(s);
    out.x[v] = f.mul(sinv, d.x[v]);
    out.y[v] = f.mul(sinv, d.y[v]);
    out.z[v] = f.mul(s, d.z[v]);
    out.t[v] = f.mul(s, d.t[v]);
    require_presentation_det(out);
    return {scale_vertex(g, v, s), std::move(out)};
}

std::pair<LabeledGraph, KVector> eulerian_to_presentation(const IsotropicSystem& L,
                                                          const KVector& a) {
    if (a.n() != L.n() || a.field().q() != L.q())
        throw InvalidArgument("vector dimension mismatch");
    if (!a.is_complete() || !is_eulerian(L, a))
        throw InvalidArgument("vector is not Eulerian for the system");
    const Field& f = L.field();
    int n = L.n();

    std::vector<std::vector<Fe>> matrix(n, std::vector<Fe>(n, 0));
    KVector b(f, n);

    for (int v = 0; v < n; ++v) {
        // Stack a basis of L over a basis of W = span({A_w : w != v}, E_v,*);
        // the one-dimensional left nullspace yields the element of L n W.
        int w_rows = n + 1;
        Mat stack(f, n + w_rows, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 2 * n; ++j) stack(i, j) = L.basis()(i, j);
        int row = n;
        for (int w = 0; w < n; ++w) {
            if (w == v) continue;
            stack(row, w) = a.x[w];
            stack(row, n + w) = a.y[w];
            ++row;
        }
        stack(row, v) = 1;
        stack(row + 1, n + v) = 1;

        Mat left_null = nullspace(stack.transposed());
        if (left_null.rows() != 1)
            throw InvariantViolation("presentation solve is not one-dimensional");

        std::vector<Fe> e(2 * n, 0);
        for (int i = 0; i < n; ++i) {
            Fe c = left_null(0, i);
            if (c == 0) continue;
            for (int j = 0; j < 2 * n; ++j)
                e[j] = f.add(e[j], f.mul(c, L.basis()(i, j)));
        }

        Fe det = f.sub(f.mul(e[v], a.y[v]), f.mul(a.x[v], e[n + v]));
        if (det == 0)
            throw InvariantViolation("solved element is degenerate at its vertex");
        Fe scale = f.inv(det);
        for (Fe& val : e) val = f.mul(scale, val);

        for (int w = 0; w < n; ++w) {
            if (w == v) continue;
            Fe coeff = a.x[w] != 0 ? f.div(e[w], a.x[w]) : f.div(e[n + w], a.y[w]);
            if (e[w] != f.mul(coeff, a.x[w]) || e[n + w] != f.mul(coeff, a.y[w]))
                throw InvariantViolation("solved element leaves the A-hat span");
            matrix[v][w] = coeff;
        }
        b.x[v] = e[v];
        b.y[v] = e[n + v];
    }

    LabeledGraph g(n, L.q());
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w) {
            if (matrix[v][w] != matrix[w][v])
                throw InvariantViolation("extracted matrix is not symmetric");
            g.set_label(v, w, matrix[v][w]);
        }

    BlockDiag d = BlockDiag::of_pair(a, b);
    if (require_presentation_det(d) != 1)
        throw InvariantViolation("presentation is not determinant-normalized");
    if (!(from_graph(g, d) == L))
        throw InvariantViolation("presentation spans a different system");
    return {std::move(g), std::move(b)};
}

std::vector<KElem> switching_classes(const IsotropicSystem& L, const KVector& a,
                                     int v) {
    if (v < 0 || v >= L.n()) throw InvalidArgument("vertex out of range");
    if (!a.is_complete() || !is_eulerian(L, a))
        throw InvalidArgument("vector is not Eulerian for the system");
    std::vector<KElem> kept;
    KVector probe = a;
    for (KElem rep : kstar_reps(L.field())) {
        probe.set(v, rep);
        if (is_eulerian(L, probe)) kept.push_back(rep);
    }
    return kept;
}

}  // namespace locq
