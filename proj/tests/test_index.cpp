#include <doctest.h>

#include <map>
#include <random>

#include "locq/index.hpp"
#include "test_util.hpp"

using namespace locq;
using testutil::random_connected_graph;
using testutil::random_graph;

namespace {

// Independent q^{4n} oracle: checks the defining matrix equation entrywise
// for every (X, Y, Z, T) and applies the determinant filter directly.
long long lambda_brute(const LabeledGraph& g) {
    const Field& f = g.field();
    int n = g.n();
    int q = g.q();
    long long total = 1;
    for (int i = 0; i < 4 * n; ++i) total *= q;

    auto satisfies = [&](const std::vector<Fe>& s) {
        for (int u = 0; u < n; ++u)
            for (int w = 0; w < n; ++w) {
                Fe acc = f.mul(s[2 * n + u], g.label(u, w));  // Z(u) g_uw
                for (int m = 0; m < n; ++m)
                    acc = f.add(acc, f.mul(s[m], f.mul(g.label(u, m), g.label(m, w))));
                if (u == w) acc = f.sub(acc, s[3 * n + u]);               // - T(u)
                acc = f.sub(acc, f.mul(g.label(u, w), s[n + w]));         // - g_uw Y(w)
                if (acc != 0) return false;
            }
        return true;
    };

    long long count = 0;
    std::vector<Fe> s(4 * n, 0);
    for (long long it = 0; it < total; ++it) {
        long long rest = it;
        for (int i = 0; i < 4 * n; ++i) {
            s[i] = Fe(rest % q);
            rest /= q;
        }
        if (!satisfies(s)) continue;
        Fe det0 = f.sub(f.mul(s[2 * n], s[n]), f.mul(s[0], s[3 * n]));
        bool constant = true;
        for (int v = 1; v < n; ++v) {
            Fe det = f.sub(f.mul(s[2 * n + v], s[n + v]), f.mul(s[v], s[3 * n + v]));
            if (det != det0) constant = false;
        }
        if (constant && det0 != 0) ++count;
    }
    return count;
}

LabeledGraph triangle(int q) {
    LabeledGraph g(3, q);
    g.set_label(0, 1, 1);
    g.set_label(0, 2, 1);
    g.set_label(1, 2, 1);
    return g;
}

LabeledGraph path(int n, int q) {
    LabeledGraph g(n, q);
    for (int v = 0; v + 1 < n; ++v) g.set_label(v, v + 1, 1);
    return g;
}

LabeledGraph cycle(int n, int q) {
    LabeledGraph g = path(n, q);
    g.set_label(0, n - 1, 1);
    return g;
}

}  // namespace

TEST_CASE("lambda matches the q^{4n} brute force at n <= 2") {
    for (int q : {2, 3}) {
        for (int n = 1; n <= 2; ++n) {
            for (const LabeledGraph& g : all_graphs(n, q, false)) {
                CAPTURE(q);
                CAPTURE(graph_to_inline(g));
                CHECK(lambda(g) == lambda_brute(g));
            }
        }
    }
}

TEST_CASE("lambda golden values") {
    // Single vertex: T is forced to zero, Z and Y range over nonzero values,
    // X is free: q (q-1)^2.
    LabeledGraph k1(1, 3);
    CHECK(lambda(k1) == 12);
    CHECK(lambda_brute(k1) == 12);

    LabeledGraph edge2(2, 2);
    edge2.set_label(0, 1, 1);
    CHECK(lambda(edge2) == 6);
    CHECK(lambda(triangle(2)) == 4);

    LabeledGraph edge3(2, 3);
    edge3.set_label(0, 1, 1);
    CHECK(lambda(edge3) == 48);
    edge3.set_label(0, 1, 2);
    CHECK(lambda(edge3) == 48);
}

TEST_CASE("solution structure: constant det, Y+Z direction, shift closure") {
    std::mt19937 rng(51);
    for (int q : {3, 5}) {
        const Field& f = Field::get(q);
        for (int trial = 0; trial < 12; ++trial) {
            int n = 2 + int(rng() % 3);
            LabeledGraph g = random_connected_graph(rng, n, q);
            IntsolSolutions sols = intsol_solutions(g);

            // The shift direction (X,Y,Z,T) = (0, 1, 1, 0) solves the system,
            // so the solution set is closed under D -> D + cI.
            Mat m = intsol_matrix(g);
            for (int row = 0; row < m.rows(); ++row) {
                Fe acc = 0;
                for (int v = 0; v < n; ++v)
                    acc = f.add(acc, f.add(m(row, n + v), m(row, 2 * n + v)));
                CHECK(acc == 0);
            }

            // Enumerate every solution: determinant diagonal constant and
            // Y + Z a multiple of the all-ones vector.
            int dim = sols.nullspace_basis.rows();
            std::vector<Fe> coeff(dim, 0);
            long long checked = 0;
            while (true) {
                std::vector<Fe> s(4 * n, 0);
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < 4 * n; ++j)
                        s[j] = f.add(s[j], f.mul(coeff[i], sols.nullspace_basis(i, j)));
                BlockDiag d(f, n);
                for (int v = 0; v < n; ++v) {
                    d.x[v] = s[v];
                    d.y[v] = s[n + v];
                    d.z[v] = s[2 * n + v];
                    d.t[v] = s[3 * n + v];
                }
                CHECK(d.constant_det().has_value());
                Fe yz0 = f.add(d.y[0], d.z[0]);
                for (int v = 1; v < n; ++v) CHECK(f.add(d.y[v], d.z[v]) == yz0);
                ++checked;
                int pos = dim - 1;
                while (pos >= 0 && coeff[pos] == q - 1) coeff[pos--] = 0;
                if (pos < 0) break;
                ++coeff[pos];
            }
            CHECK(std::uint64_t(checked) == sols.solution_count());
            CHECK((long long)sols.presentations.size() == lambda(g));
        }
    }
}

TEST_CASE("solutions group into X-fibers of the predicted size") {
    // Connected graphs, odd q. Odd-cycle case: q solutions per admissible X,
    // forming one shift family D0 + cI with Y0 + Z0 = 0, so the determinant
    // along the fiber is d0 + c^2 and the nonzero-det survivors number
    // q - #{c : c^2 = -d0}, i.e. q, q-1 or q-2 (q-1 happens on every fiber
    // with d0 = 0, such as X = 0). Bipartite case: q^2 per fiber with at
    // least q(q-2) survivors.
    auto check = [](const LabeledGraph& g) {
        const Field& f = g.field();
        int n = g.n();
        int q = g.q();
        IntsolSolutions sols = intsol_solutions(g);
        struct Fiber {
            long long total = 0, kept = 0;
            std::map<Fe, int> base_dets;  // det of the Y+Z = 0 representative
        };
        std::map<std::vector<Fe>, Fiber> fibers;
        Fe half = f.inv(2);  // q odd
        int dim = sols.nullspace_basis.rows();
        std::vector<Fe> coeff(dim, 0);
        while (true) {
            std::vector<Fe> s(4 * n, 0);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < 4 * n; ++j)
                    s[j] = f.add(s[j], f.mul(coeff[i], sols.nullspace_basis(i, j)));
            std::vector<Fe> x(s.begin(), s.begin() + n);
            Fiber& fiber = fibers[x];
            ++fiber.total;
            Fe det0 = f.sub(f.mul(s[2 * n], s[n]), f.mul(s[0], s[3 * n]));
            if (det0 != 0) ++fiber.kept;
            // Shift back to the Y+Z = 0 representative of this solution.
            Fe gamma = f.add(s[n], s[2 * n]);
            Fe c = f.mul(half, gamma);
            Fe base_det = f.sub(f.mul(f.sub(s[2 * n], c), f.sub(s[n], c)),
                                f.mul(s[0], s[3 * n]));
            ++fiber.base_dets[base_det];
            int pos = dim - 1;
            while (pos >= 0 && coeff[pos] == q - 1) coeff[pos--] = 0;
            if (pos < 0) break;
            ++coeff[pos];
        }
        bool odd = has_odd_cycle(g);
        for (const auto& [x, fiber] : fibers) {
            if (odd) {
                CHECK(fiber.total == q);
                // The whole fiber shares one shift representative.
                CHECK(fiber.base_dets.size() == 1);
                Fe d0 = fiber.base_dets.begin()->first;
                int roots = 0;
                for (int cc = 0; cc < q; ++cc)
                    if (f.mul(Fe(cc), Fe(cc)) == f.neg(d0)) ++roots;
                CHECK(fiber.kept == q - roots);
                CHECK(fiber.kept >= q - 2);
            } else {
                CHECK(fiber.total == (long long)q * q);
                CHECK(fiber.kept >= (long long)q * (q - 2));
            }
        }
    };
    for (int n = 1; n <= 3; ++n)
        for (const LabeledGraph& g : all_graphs(n, 3, true)) check(g);
    std::mt19937 rng(53);
    for (int i = 0; i < 10; ++i) check(random_connected_graph(rng, 3, 5));
}

TEST_CASE("bineighborhood spot shapes") {
    const Field& f = Field::get(3);

    // Triangle: no even cycles, no non-edges; the space is trivial.
    Mat tri = bineighborhood(triangle(3));
    CHECK(tri.rows() == 0);
    CHECK(nu_perp_from_solutions(triangle(3)) == 3);

    // Path on 3 vertices: one non-adjacent pair contributes g(0) x g(2).
    Mat p3 = bineighborhood(path(3, 3));
    REQUIRE(p3.rows() == 1);
    CHECK(p3(0, 0) == 0);
    CHECK(p3(0, 1) == 1);
    CHECK(p3(0, 2) == 0);

    // Unit 4-cycle: the even-cycle vector vanishes (adjacent rows have
    // disjoint support) and the two diagonals contribute the basis.
    LabeledGraph c4 = cycle(4, 3);
    auto cycles = simple_cycles(c4);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].size() == 4);
    std::vector<Fe> nu_c(4, 0);
    for (size_t i = 0; i < 4; ++i) {
        int a = cycles[0][i], b = cycles[0][(i + 1) % 4];
        for (int m = 0; m < 4; ++m) {
            Fe term = f.mul(c4.label(a, b), f.mul(c4.label(a, m), c4.label(b, m)));
            if ((i + 1) % 2 == 1) term = f.neg(term);
            nu_c[m] = f.add(nu_c[m], term);
        }
    }
    CHECK(nu_c == std::vector<Fe>(4, 0));
    Mat nu = bineighborhood(c4);
    CHECK(nu.rows() == 2);
    CHECK(nu_perp_from_solutions(c4) == 2);
}

TEST_CASE("X-projection dimension equals the bineighborhood codimension") {
    for (int q : {3, 5}) {
        for (int n = 2; n <= (q == 3 ? 4 : 3); ++n) {
            for (const LabeledGraph& g : all_graphs(n, q, true)) {
                CAPTURE(graph_to_inline(g));
                CHECK(nu_perp_from_solutions(g) == g.n() - bineighborhood(g).rows());
            }
        }
    }

    // Two triangles sharing a vertex: the even closed walk through both
    // contributes a generator that no simple even cycle provides.
    LabeledGraph bowtie = parse_graph_inline("3 5;0 1 2;0 2 1;1 2 2;2 3 2;2 4 1;3 4 2");
    CHECK(simple_cycles(bowtie).size() == 2);  // both odd
    CHECK(bineighborhood(bowtie).rows() == 2);
    CHECK(nu_perp_from_solutions(bowtie) == 3);

    std::mt19937 rng(52);
    for (int i = 0; i < 30; ++i) {
        LabeledGraph g = random_connected_graph(rng, 5, 5);
        CHECK(nu_perp_from_solutions(g) == g.n() - bineighborhood(g).rows());
    }
}

TEST_CASE("cycle enumeration is exact on known graphs") {
    CHECK(simple_cycles(path(4, 2)).empty());
    CHECK(simple_cycles(triangle(2)).size() == 1);
    LabeledGraph k4(4, 2);
    for (int v = 0; v < 4; ++v)
        for (int w = v + 1; w < 4; ++w) k4.set_label(v, w, 1);
    // K4: four triangles plus three 4-cycles.
    CHECK(simple_cycles(k4).size() == 7);
}

TEST_CASE("odd cycle detection") {
    CHECK(has_odd_cycle(triangle(3)));
    CHECK_FALSE(has_odd_cycle(cycle(4, 3)));
    CHECK_FALSE(has_odd_cycle(path(4, 3)));
    LabeledGraph c5 = cycle(5, 3);
    CHECK(has_odd_cycle(c5));
}

TEST_CASE("lambda bounds from the bineighborhood codimension") {
    // Odd-cycle branch: (q-2) q^dim <= lambda <= q^{dim+1}.
    for (const LabeledGraph& g : {triangle(3), cycle(5, 3)}) {
        long long lam = lambda(g);
        int dim = g.n() - bineighborhood(g).rows();
        long long lo = 1, hi = 3;
        for (int i = 0; i < dim; ++i) {
            lo *= 3;
            hi *= 3;
        }
        CHECK(has_odd_cycle(g));
        CHECK(lam >= lo);
        CHECK(lam <= hi);
    }
    // Bipartite branch: (q-2) q^{dim+1} <= lambda <= q^{dim+2}.
    for (const LabeledGraph& g : {path(3, 3), path(4, 3), cycle(4, 3)}) {
        long long lam = lambda(g);
        int dim = g.n() - bineighborhood(g).rows();
        long long lo = 3, hi = 9;
        for (int i = 0; i < dim; ++i) {
            lo *= 3;
            hi *= 3;
        }
        CHECK_FALSE(has_odd_cycle(g));
        CHECK(lam >= lo);
        CHECK(lam <= hi);
    }
}

TEST_CASE("budget guards") {
    LabeledGraph empty(5, 3);  // nullspace dimension 3n = 15
    CHECK_THROWS_AS(intsol_solutions(empty, 1000), BudgetError);
}
