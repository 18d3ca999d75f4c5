#include "locq/isotropic.hpp"

#include <algorithm>
#include <sstream>

#include "locq/errors.hpp"

namespace locq {

KVector KVector::constant(const Field& field, int n, KElem e) {
    KVector v(field, n);
    for (int i = 0; i < n; ++i) v.set(i, e);
    return v;
}

bool KVector::is_complete() const {
    for (int v = 0; v < n(); ++v)
        if (x[v] == 0 && y[v] == 0) return false;
    return true;
}

Fe inner(const KVector& a, const KVector& b) {
    if (a.n() != b.n() || a.field().q() != b.field().q())
        throw InvalidArgument("inner product dimension mismatch");
    const Field& f = a.field();
    Fe acc = 0;
    for (int v = 0; v < a.n(); ++v)
        acc = f.add(acc, f.sub(f.mul(a.x[v], b.y[v]), f.mul(b.x[v], a.y[v])));
    return acc;
}

BlockDiag BlockDiag::identity(const Field& field, int n) {
    BlockDiag d(field, n);
    for (int v = 0; v < n; ++v) {
        d.z[v] = 1;
        d.y[v] = 1;
    }
    return d;
}

BlockDiag BlockDiag::of_pair(const KVector& a, const KVector& b) {
    if (a.n() != b.n() || a.field().q() != b.field().q())
        throw InvalidArgument("vector pair dimension mismatch");
    BlockDiag d(a.field(), a.n());
    d.x = a.x;
    d.y = a.y;
    d.z = b.x;
    d.t = b.y;
    return d;
}

KVector BlockDiag::vec_a() const {
    KVector a(*f, n());
    a.x = x;
    a.y = y;
    return a;
}

KVector BlockDiag::vec_b() const {
    KVector b(*f, n());
    b.x = z;
    b.y = t;
    return b;
}

Fe BlockDiag::det_at(int v) const {
    return f->sub(f->mul(z[v], y[v]), f->mul(x[v], t[v]));
}

std::optional<Fe> BlockDiag::constant_det() const {
    if (n() == 0) return Fe(1);
    Fe d = det_at(0);
    for (int v = 1; v < n(); ++v)
        if (det_at(v) != d) return std::nullopt;
    return d;
}

Fe require_presentation_det(const BlockDiag& d) {
    auto det = d.constant_det();
    if (!det) throw InvalidPresentation("determinant diagonal is not constant");
    if (*det == 0) throw InvalidPresentation("determinant diagonal is zero");
    return *det;
}

namespace {

// Gram matrix entry of the symplectic form between rows i and j of an
// n x 2n matrix laid out as (X | Y).
Fe symplectic_pair(const Mat& rows, int i, int j) {
    const Field& f = rows.field();
    int n = rows.cols() / 2;
    Fe acc = 0;
    for (int v = 0; v < n; ++v) {
        Fe term = f.sub(f.mul(rows(i, v), rows(j, n + v)),
                        f.mul(rows(j, v), rows(i, n + v)));
        acc = f.add(acc, term);
    }
    return acc;
}

}  // namespace

bool is_isotropic(const Mat& rows) {
    if (rows.cols() % 2 != 0) return false;
    int n = rows.cols() / 2;
    if (rank_of(rows) != n) return false;
    for (int i = 0; i < rows.rows(); ++i)
        for (int j = i; j < rows.rows(); ++j)
            if (symplectic_pair(rows, i, j) != 0) return false;
    return true;
}

IsotropicSystem IsotropicSystem::from_rows(const Mat& rows) {
    if (rows.cols() % 2 != 0)
        throw InvalidArgument("basis must have 2n columns");
    int n = rows.cols() / 2;
    Mat canon = row_space_rref(rows);
    if (canon.rows() != n)
        throw InvariantViolation("isotropic basis rank " +
                                 std::to_string(canon.rows()) + " != " +
                                 std::to_string(n));
    for (int i = 0; i < canon.rows(); ++i)
        for (int j = i; j < canon.rows(); ++j)
            if (symplectic_pair(canon, i, j) != 0)
                throw InvariantViolation("basis is not self-orthogonal");
    return IsotropicSystem(std::move(canon));
}

IsotropicSystem from_graph(const LabeledGraph& g, const BlockDiag& d) {
    if (d.n() != g.n() || d.field().q() != g.q())
        throw InvalidArgument("graph and D dimension mismatch");
    require_presentation_det(d);
    const Field& f = g.field();
    int n = g.n();
    // Row v of (I | G) . D: left block delta_vw z[w] + g_vw x[w], right block
    // delta_vw t[w] + g_vw y[w].
    Mat rows(f, n, 2 * n);
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
            Fe gvw = g.label(v, w);
            Fe left = f.mul(gvw, d.x[w]);
            Fe right = f.mul(gvw, d.y[w]);
            if (v == w) {
                left = f.add(left, d.z[w]);
                right = f.add(right, d.t[w]);
            }
            rows(v, w) = left;
            rows(v, n + w) = right;
        }
    }
    return IsotropicSystem::from_rows(rows);
}

IsotropicSystem standard_system(const LabeledGraph& g) {
    return from_graph(g, BlockDiag::identity(g.field(), g.n()));
}

int intersect_dim(const IsotropicSystem& L, const KVector& c) {
    if (c.n() != L.n() || c.field().q() != L.q())
        throw InvalidArgument("vector dimension mismatch");
    if (!c.is_complete())
        throw InvalidArgument("intersect_dim requires a complete vector");
    int n = L.n();
    Mat stack(L.field(), 2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2 * n; ++j) stack(i, j) = L.basis()(i, j);
    for (int v = 0; v < n; ++v) {
        stack(n + v, v) = c.x[v];
        stack(n + v, n + v) = c.y[v];
    }
    return 2 * n - rref_in_place(stack);
}

std::vector<KElem> kstar_reps(const Field& f) {
    std::vector<KElem> reps;
    reps.reserve(f.q() + 1);
    for (int y = 0; y < f.q(); ++y) reps.push_back({Fe(1), Fe(y)});
    reps.push_back({Fe(0), Fe(1)});
    return reps;
}

KElem kstar_class_of(const Field& f, KElem v) {
    if (v.is_zero()) throw InvalidArgument("zero vector has no projective class");
    if (v.x != 0) return {Fe(1), f.div(v.y, v.x)};
    return {Fe(0), Fe(1)};
}

IsotropicSystem minor(const IsotropicSystem& L, int v, std::optional<KElem> x) {
    if (v < 0 || v >= L.n()) throw InvalidArgument("minor vertex out of range");
    const Field& f = L.field();
    int n = L.n();

    // Restrict the basis by the linear functionals cutting out L^v_x.
    std::vector<std::vector<Fe>> rows;
    for (int i = 0; i < n; ++i) {
        std::vector<Fe> r(2 * n);
        for (int j = 0; j < 2 * n; ++j) r[j] = L.basis()(i, j);
        rows.push_back(std::move(r));
    }
    auto restrict_by = [&](const std::function<Fe(const std::vector<Fe>&)>& phi) {
        std::vector<Fe> vals;
        vals.reserve(rows.size());
        for (const auto& r : rows) vals.push_back(phi(r));
        int pivot = -1;
        for (size_t i = 0; i < rows.size(); ++i)
            if (vals[i] != 0) {
                pivot = int(i);
                break;
            }
        if (pivot < 0) return;  // functional already vanishes on the span
        std::vector<std::vector<Fe>> kept;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (int(i) == pivot) continue;
            std::vector<Fe> r = rows[i];
            if (vals[i] != 0) {
                Fe c = f.div(vals[i], vals[pivot]);
                for (int j = 0; j < 2 * n; ++j)
                    r[j] = f.sub(r[j], f.mul(c, rows[pivot][j]));
            }
            kept.push_back(std::move(r));
        }
        rows = std::move(kept);
    };

    if (x) {
        if (x->is_zero())
            throw InvalidArgument("minor requires a K* class or the zero marker");
        // <C(v), x> = X_C(v) x.y - x.x Y_C(v)
        restrict_by([&](const std::vector<Fe>& r) {
            return f.sub(f.mul(r[v], x->y), f.mul(x->x, r[n + v]));
        });
    } else {
        restrict_by([&](const std::vector<Fe>& r) { return r[v]; });
        restrict_by([&](const std::vector<Fe>& r) { return r[n + v]; });
    }

    // Project out coordinate v.
    Mat projected(f, int(rows.size()), 2 * (n - 1));
    for (size_t i = 0; i < rows.size(); ++i) {
        int c = 0;
        for (int j = 0; j < n; ++j)
            if (j != v) projected(int(i), c++) = rows[i][j];
        for (int j = 0; j < n; ++j)
            if (j != v) projected(int(i), c++) = rows[i][n + j];
    }
    return IsotropicSystem::from_rows(projected);
}

namespace {

// Picks one column of {v, n+v} per coordinate so the chosen n columns of the
// basis are linearly independent: greedy first, backtracking only on failure.
struct ColumnChooser {
    const Mat& basis;
    int n;
    std::vector<bool> swapped;

    struct Elim {
        std::vector<std::vector<Fe>> red;  // reduced columns, pivot normalized to 1
        std::vector<int> piv;
    };

    bool try_add(Elim& e, std::vector<Fe> col) const {
        const Field& f = basis.field();
        for (size_t i = 0; i < e.red.size(); ++i) {
            Fe c = col[e.piv[i]];
            if (c == 0) continue;
            for (int r = 0; r < n; ++r)
                col[r] = f.sub(col[r], f.mul(c, e.red[i][r]));
        }
        int pivot = -1;
        for (int r = 0; r < n; ++r)
            if (col[r] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        Fe s = f.inv(col[pivot]);
        for (int r = 0; r < n; ++r) col[r] = f.mul(col[r], s);
        e.red.push_back(std::move(col));
        e.piv.push_back(pivot);
        return true;
    }

    std::vector<Fe> column(int v, bool swap) const {
        std::vector<Fe> col(n);
        for (int r = 0; r < n; ++r) col[r] = basis(r, swap ? n + v : v);
        return col;
    }

    bool search(int v, Elim& e) {
        if (v == n) return true;
        for (bool swap : {false, true}) {
            Elim saved = e;
            if (try_add(e, column(v, swap))) {
                swapped[v] = swap;
                if (search(v + 1, e)) return true;
            }
            e = std::move(saved);
        }
        return false;
    }

    bool run() {
        swapped.assign(n, false);
        Elim e;
        return search(0, e);
    }
};

}  // namespace

std::pair<LabeledGraph, BlockDiag> extract_presentation(const IsotropicSystem& L) {
    const Field& f = L.field();
    int n = L.n();
    if (n == 0) return {LabeledGraph(0, L.q()), BlockDiag(f, 0)};

    ColumnChooser chooser{L.basis(), n, {}};
    if (!chooser.run())
        throw InvariantViolation("no block-column selection reaches full rank");
    const std::vector<bool>& swapped = chooser.swapped;

    // B1 = basis with the chosen coordinate swaps applied.
    Mat b1(f, n, 2 * n);
    for (int r = 0; r < n; ++r)
        for (int v = 0; v < n; ++v) {
            b1(r, v) = L.basis()(r, swapped[v] ? n + v : v);
            b1(r, n + v) = L.basis()(r, swapped[v] ? v : n + v);
        }

    Mat first(f, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) first(r, c) = b1(r, c);
    Mat u = inverse(first);
    Mat b2 = mat_mul(u, b1);  // (I | G''), possibly nonzero diagonal

    std::vector<Fe> diag(n);
    for (int v = 0; v < n; ++v) diag[v] = b2(v, n + v);

    // Per-coordinate 2x2 blocks of D~ = D2^{-1} D1, where D1 swaps and D2
    // subtracts the diagonal. The final D rescales the bottom row of each
    // block by the block determinant so det D becomes the identity.
    BlockDiag d(f, n);
    std::vector<Fe> dets(n);
    for (int v = 0; v < n; ++v) {
        Fe zt_z, zt_t, xy_x, xy_y;
        if (swapped[v]) {
            zt_z = diag[v];
            zt_t = 1;
            xy_x = 1;
            xy_y = 0;
        } else {
            zt_z = 1;
            zt_t = diag[v];
            xy_x = 0;
            xy_y = 1;
        }
        Fe det = f.sub(f.mul(zt_z, xy_y), f.mul(xy_x, zt_t));
        dets[v] = det;
        Fe inv_det = f.inv(det);
        d.z[v] = zt_z;
        d.t[v] = zt_t;
        d.x[v] = f.mul(xy_x, inv_det);
        d.y[v] = f.mul(xy_y, inv_det);
    }

    // G = G' det(D~): zero the diagonal of G'' and rescale column w by dets[w].
    LabeledGraph g(n, L.q());
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            if (v == w) continue;
            Fe val = f.mul(b2(v, n + w), dets[w]);
            if (w > v) {
                g.set_label(v, w, val);
            } else if (g.label(w, v) != val) {
                throw InvariantViolation("extracted matrix is not symmetric");
            }
        }

    if (require_presentation_det(d) != 1)
        throw InvariantViolation("extracted presentation is not normalized");
    if (!(from_graph(g, d) == L))
        throw InvariantViolation("extracted presentation spans a different system");
    return {std::move(g), std::move(d)};
}

std::string system_to_text(const IsotropicSystem& L) {
    std::ostringstream out;
    out << L.q() << ' ' << L.n() << '\n';
    for (int r = 0; r < L.n(); ++r) {
        for (int c = 0; c < 2 * L.n(); ++c) {
            if (c) out << ' ';
            out << int(L.basis()(r, c));
        }
        out << '\n';
    }
    return out.str();
}

IsotropicSystem parse_system(const std::string& text) {
    std::istringstream in(text);
    int q, n;
    if (!(in >> q >> n)) throw ParseError("expected header 'q n'", 1);
    if (!Field::supported(q)) throw ParseError("unsupported field size", 1);
    if (n < 0) throw ParseError("negative dimension", 1);
    const Field& f = Field::get(q);
    Mat rows(f, n, 2 * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < 2 * n; ++c) {
            int v;
            if (!(in >> v)) throw ParseError("truncated basis matrix", r + 2);
            if (v < 0 || v >= q) throw ParseError("entry out of range", r + 2);
            rows(r, c) = Fe(v);
        }
    return IsotropicSystem::from_rows(rows);
}

}  // namespace locq
