#include "locq/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "locq/errors.hpp"

namespace locq {

namespace {
constexpr int kMaxVertices = 200;  // canonical keys store n in one byte

void check_vertex(const LabeledGraph& g, int v) {
    if (v < 0 || v >= g.n())
        throw InvalidArgument("vertex index " + std::to_string(v) +
                              " out of range for n=" + std::to_string(g.n()));
}
}  // namespace

LabeledGraph::LabeledGraph(int n, int q)
    : field_(&Field::get(q)), n_(n), labels_(size_t(n) * (n - 1) / 2, 0) {
    if (n < 0 || n > kMaxVertices)
        throw InvalidArgument("vertex count out of range: " + std::to_string(n));
}

int LabeledGraph::pair_index(int v, int w) const {
    if (v > w) std::swap(v, w);
    return v * n_ - v * (v + 1) / 2 + (w - v - 1);
}

Fe LabeledGraph::label(int v, int w) const {
    check_vertex(*this, v);
    check_vertex(*this, w);
    if (v == w) return 0;
    return labels_[pair_index(v, w)];
}

void LabeledGraph::set_label(int v, int w, Fe value) {
    check_vertex(*this, v);
    check_vertex(*this, w);
    if (v == w) throw InvalidArgument("loops are not representable");
    if (value >= q()) throw InvalidArgument("label out of range for GF(q)");
    labels_[pair_index(v, w)] = value;
}

std::vector<Fe> LabeledGraph::row(int v) const {
    check_vertex(*this, v);
    std::vector<Fe> r(n_, 0);
    for (int w = 0; w < n_; ++w)
        if (w != v) r[w] = labels_[pair_index(v, w)];
    return r;
}

int LabeledGraph::degree(int v) const {
    check_vertex(*this, v);
    int d = 0;
    for (int w = 0; w < n_; ++w)
        if (w != v && labels_[pair_index(v, w)] != 0) ++d;
    return d;
}

long long LabeledGraph::edge_count() const {
    long long e = 0;
    for (Fe x : labels_)
        if (x != 0) ++e;
    return e;
}

bool LabeledGraph::operator==(const LabeledGraph& o) const {
    return q() == o.q() && n_ == o.n_ && labels_ == o.labels_;
}

std::string LabeledGraph::canonical_key() const {
    std::string key;
    key.reserve(2 + labels_.size());
    key.push_back(char(q()));
    key.push_back(char(n_));
    for (Fe x : labels_) key.push_back(char(x));
    return key;
}

LabeledGraph LabeledGraph::from_key(std::string_view key) {
    if (key.size() < 2) throw InvalidArgument("truncated graph key");
    int q = int(static_cast<unsigned char>(key[0]));
    int n = int(static_cast<unsigned char>(key[1]));
    if (!Field::supported(q)) throw InvalidArgument("graph key has unsupported q");
    LabeledGraph g(n, q);
    if (key.size() != 2 + g.labels_.size())
        throw InvalidArgument("graph key length mismatch");
    for (size_t i = 0; i < g.labels_.size(); ++i) {
        Fe x = Fe(static_cast<unsigned char>(key[2 + i]));
        if (x >= q) throw InvalidArgument("graph key has label out of range");
        g.labels_[i] = x;
    }
    return g;
}

bool LabeledGraph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<bool> seen(n_, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n_; ++w) {
            if (w == v || seen[w] || labels_[pair_index(v, w)] == 0) continue;
            seen[w] = true;
            ++visited;
            stack.push_back(w);
        }
    }
    return visited == n_;
}

LabeledGraph star(const LabeledGraph& g, int v, Fe r) {
    check_vertex(g, v);
    if (r >= g.q()) throw InvalidArgument("star coefficient out of range");
    LabeledGraph out = g;
    if (r == 0) return out;
    const Field& f = g.field();
    for (int u = 0; u < g.n(); ++u) {
        if (u == v) continue;
        Fe gu = g.label(v, u);
        if (gu == 0) continue;
        for (int w = u + 1; w < g.n(); ++w) {
            if (w == v) continue;
            Fe gw = g.label(v, w);
            if (gw == 0) continue;
            Fe delta = f.mul(r, f.mul(gu, gw));
            out.set_label(u, w, f.add(g.label(u, w), delta));
        }
    }
    return out;
}

LabeledGraph scale_vertex(const LabeledGraph& g, int v, Fe s) {
    check_vertex(g, v);
    if (s == 0) throw InvalidArgument("vertex scaling requires s != 0");
    if (s >= g.q()) throw InvalidArgument("scale factor out of range");
    LabeledGraph out = g;
    const Field& f = g.field();
    for (int w = 0; w < g.n(); ++w)
        if (w != v) out.set_label(v, w, f.mul(s, g.label(v, w)));
    return out;
}

LabeledGraph scale_graph(const LabeledGraph& g, Fe c) {
    if (c == 0) throw InvalidArgument("graph scaling requires c != 0");
    if (c >= g.q()) throw InvalidArgument("scale factor out of range");
    LabeledGraph out = g;
    const Field& f = g.field();
    for (int v = 0; v < g.n(); ++v)
        for (int w = v + 1; w < g.n(); ++w)
            out.set_label(v, w, f.mul(c, g.label(v, w)));
    return out;
}

LabeledGraph delete_vertex(const LabeledGraph& g, int v) {
    check_vertex(g, v);
    LabeledGraph out(g.n() - 1, g.q());
    for (int a = 0, u = 0; a < g.n(); ++a) {
        if (a == v) continue;
        for (int b = a + 1, w = u + 1; b < g.n(); ++b) {
            if (b == v) continue;
            out.set_label(u, w, g.label(a, b));
            ++w;
        }
        ++u;
    }
    return out;
}

std::uint64_t graph_count(int n, int q) {
    return ipow_sat(std::uint64_t(q), unsigned(n * (n - 1) / 2));
}

void for_each_graph(int n, int q, bool connected_only, std::uint64_t budget,
                    const std::function<void(const LabeledGraph&)>& fn) {
    std::uint64_t total = graph_count(n, q);
    if (total > budget)
        throw BudgetError("graph enumeration needs " + std::to_string(total) +
                          " graphs, budget is " + std::to_string(budget));
    int pairs = n * (n - 1) / 2;
    std::vector<Fe> labels(pairs, 0);
    // Odometer with the last pair advancing fastest: canonical-key order.
    while (true) {
        {
            LabeledGraph cur(n, q);
            int idx = 0;
            for (int v = 0; v < n; ++v)
                for (int w = v + 1; w < n; ++w) cur.set_label(v, w, labels[idx++]);
            if (!connected_only || cur.is_connected()) fn(cur);
        }
        int pos = pairs - 1;
        while (pos >= 0 && labels[pos] == q - 1) labels[pos--] = 0;
        if (pos < 0) break;
        ++labels[pos];
    }
}

std::vector<LabeledGraph> all_graphs(int n, int q, bool connected_only,
                                     std::uint64_t budget) {
    std::vector<LabeledGraph> out;
    for_each_graph(n, q, connected_only, budget,
                   [&](const LabeledGraph& g) { out.push_back(g); });
    return out;
}

namespace {

LabeledGraph parse_graph_lines(std::istream& in) {
    std::string line;
    int line_no = 0;
    int q = -1, n = -1;
    LabeledGraph g(0, 2);
    bool have_header = false;
    std::vector<bool> seen;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank line
        ls.clear();
        ls.seekg(0);
        if (!have_header) {
            if (!(ls >> q >> n)) throw ParseError("expected header 'q n'", line_no);
            std::string extra;
            if (ls >> extra) throw ParseError("trailing tokens after header", line_no);
            if (!Field::supported(q))
                throw ParseError("unsupported field size q=" + std::to_string(q), line_no);
            if (n < 1 || n > kMaxVertices)
                throw ParseError("vertex count out of range", line_no);
            g = LabeledGraph(n, q);
            seen.assign(size_t(n) * n, false);
            have_header = true;
            continue;
        }
        long long u, v, label;
        if (!(ls >> u >> v >> label))
            throw ParseError("expected 'u v label'", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens after edge", line_no);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("vertex index out of range", line_no);
        if (u == v) throw ParseError("loops are not allowed", line_no);
        if (label < 0 || label >= q)
            throw ParseError("label out of range for GF(q)", line_no);
        size_t a = size_t(std::min(u, v)) * n + size_t(std::max(u, v));
        if (seen[a]) throw ParseError("duplicate pair", line_no);
        seen[a] = true;
        g.set_label(int(u), int(v), Fe(label));
    }
    if (!have_header) throw ParseError("empty graph input", line_no == 0 ? 1 : line_no);
    return g;
}

}  // namespace

LabeledGraph read_graph(std::istream& in) { return parse_graph_lines(in); }

LabeledGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph_lines(in);
}

LabeledGraph parse_graph_inline(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ';', '\n');
    return parse_graph(t);
}

void write_graph(std::ostream& out, const LabeledGraph& g) {
    out << g.q() << ' ' << g.n() << '\n';
    for (int v = 0; v < g.n(); ++v)
        for (int w = v + 1; w < g.n(); ++w)
            if (g.label(v, w) != 0)
                out << v << ' ' << w << ' ' << int(g.label(v, w)) << '\n';
}

std::string graph_to_text(const LabeledGraph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

std::string graph_to_inline(const LabeledGraph& g) {
    std::string s = graph_to_text(g);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    std::replace(s.begin(), s.end(), '\n', ';');
    return s;
}

}  // namespace locq
