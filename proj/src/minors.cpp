#include "uniprior/minors.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "uniprior/error.hpp"
#include "uniprior/transforms.hpp"

namespace uniprior {

bool UndirectedGraph::has_edge(int u, int v) const {
    if (u == v)
        return false;
    std::pair<int, int> key{std::min(u, v), std::max(u, v)};
    return std::binary_search(edges.begin(), edges.end(), key);
}

UndirectedGraph make_undirected(int vertex_count, std::vector<std::pair<int, int>> edges) {
    if (vertex_count < 0)
        throw Error(Errc::invalid_model, "negative vertex count");
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
            throw Error(Errc::invalid_model, "edge endpoint out of range");
        if (u == v)
            throw Error(Errc::invalid_model, "self-loops not allowed in undirected graphs");
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return UndirectedGraph{vertex_count, std::move(edges)};
}

UndirectedGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return UndirectedGraph{n, std::move(edges)};
}

UndirectedGraph underlying_undirected(const DirectedMultigraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges()) {
        if (e.tail == e.head)
            continue;
        edges.emplace_back(std::min(e.tail, e.head), std::max(e.tail, e.head));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return UndirectedGraph{g.vertex_count(), std::move(edges)};
}

namespace {

std::vector<std::vector<char>> adjacency_matrix(const UndirectedGraph& g) {
    std::vector<std::vector<char>> adj(
        static_cast<std::size_t>(g.vertex_count),
        std::vector<char>(static_cast<std::size_t>(g.vertex_count), 0));
    for (const auto& [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
        adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
    }
    return adj;
}

std::vector<int> degree_sequence(const UndirectedGraph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count), 0);
    for (const auto& [u, v] : g.edges) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

} // namespace

bool isomorphic(const UndirectedGraph& a, const UndirectedGraph& b) {
    if (a.vertex_count != b.vertex_count || a.edges.size() != b.edges.size())
        return false;
    int n = a.vertex_count;
    std::vector<int> da = degree_sequence(a), db = degree_sequence(b);
    {
        std::vector<int> sa(da), sb(db);
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return false;
    }
    auto adja = adjacency_matrix(a), adjb = adjacency_matrix(b);
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);

    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n)
            return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] ||
                da[static_cast<std::size_t>(v)] != db[static_cast<std::size_t>(w)])
                continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (adja[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] !=
                    adjb[static_cast<std::size_t>(w)][static_cast<std::size_t>(map[static_cast<std::size_t>(u)])])
                    ok = false;
            if (!ok)
                continue;
            map[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = 1;
            if (self(self, v + 1))
                return true;
            used[static_cast<std::size_t>(w)] = 0;
            map[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

namespace {

// Delta-wye: replace triangle {a,b,c} by a new vertex joined to a, b, c.
UndirectedGraph delta_wye(const UndirectedGraph& g, int a, int b, int c) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges) {
        bool in_triangle = (e == std::pair{std::min(a, b), std::max(a, b)}) ||
                           (e == std::pair{std::min(b, c), std::max(b, c)}) ||
                           (e == std::pair{std::min(a, c), std::max(a, c)});
        if (!in_triangle)
            edges.push_back(e);
    }
    int w = g.vertex_count;
    edges.emplace_back(a, w);
    edges.emplace_back(b, w);
    edges.emplace_back(c, w);
    return make_undirected(g.vertex_count + 1, std::move(edges));
}

// Wye-delta: remove a degree-3 vertex and join its pairwise non-adjacent
// neighbours into a triangle (only applied where the result stays simple,
// which also preserves the edge count).
UndirectedGraph wye_delta(const UndirectedGraph& g, int v, int a, int b, int c) {
    std::vector<std::pair<int, int>> edges;
    auto relabel = [&](int x) { return x > v ? x - 1 : x; };
    for (const auto& [s, t] : g.edges) {
        if (s == v || t == v)
            continue;
        edges.emplace_back(relabel(s), relabel(t));
    }
    edges.emplace_back(relabel(a), relabel(b));
    edges.emplace_back(relabel(b), relabel(c));
    edges.emplace_back(relabel(a), relabel(c));
    return make_undirected(g.vertex_count - 1, std::move(edges));
}

std::vector<UndirectedGraph> transform_moves(const UndirectedGraph& g) {
    std::vector<UndirectedGraph> out;
    int n = g.vertex_count;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!g.has_edge(a, b))
                continue;
            for (int c = b + 1; c < n; ++c)
                if (g.has_edge(a, c) && g.has_edge(b, c))
                    out.push_back(delta_wye(g, a, b, c));
        }
    std::vector<int> deg = degree_sequence(g);
    auto adj = adjacency_matrix(g);
    for (int v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] != 3)
            continue;
        std::vector<int> nb;
        for (int w = 0; w < n; ++w)
            if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)])
                nb.push_back(w);
        if (!g.has_edge(nb[0], nb[1]) && !g.has_edge(nb[1], nb[2]) && !g.has_edge(nb[0], nb[2]))
            out.push_back(wye_delta(g, v, nb[0], nb[1], nb[2]));
    }
    return out;
}

} // namespace

const std::vector<UndirectedGraph>& petersen_family() {
    static const std::vector<UndirectedGraph> family = [] {
        std::vector<UndirectedGraph> closure{complete_graph(6)};
        std::size_t scan = 0;
        while (scan < closure.size()) {
            UndirectedGraph g = closure[scan++];
            for (UndirectedGraph& h : transform_moves(g)) {
                bool fresh = true;
                for (const UndirectedGraph& f : closure)
                    if (isomorphic(h, f)) {
                        fresh = false;
                        break;
                    }
                if (fresh)
                    closure.push_back(std::move(h));
            }
        }
        std::sort(closure.begin(), closure.end(),
                  [](const UndirectedGraph& x, const UndirectedGraph& y) {
                      if (x.vertex_count != y.vertex_count)
                          return x.vertex_count < y.vertex_count;
                      return x.edges < y.edges;
                  });
        return closure;
    }();
    return family;
}

namespace {

struct MinorSearch {
    const UndirectedGraph& g;
    const UndirectedGraph& h;
    std::size_t budget;
    std::size_t nodes = 0;
    int gn, hn;
    std::vector<std::uint32_t> gadj;
    std::vector<int> order;                       // h vertices, high degree first
    std::vector<std::vector<int>> earlier;        // per position: earlier positions adjacent in h
    std::vector<std::uint32_t> branch, branch_nb; // per placed position

    void tick() {
        if (++nodes > budget)
            throw Error(Errc::budget_exceeded,
                        "minor search exceeded " + std::to_string(budget) + " nodes");
    }

    std::uint32_t nbhd(std::uint32_t set) const {
        std::uint32_t out = 0;
        std::uint32_t bits = set;
        while (bits) {
            int v = std::countr_zero(bits);
            bits &= bits - 1;
            out |= gadj[static_cast<std::size_t>(v)];
        }
        return out;
    }

    bool constraints_ok(int pos, std::uint32_t set) const {
        for (int j : earlier[static_cast<std::size_t>(pos)])
            if ((branch_nb[static_cast<std::size_t>(j)] & set) == 0)
                return false;
        return true;
    }

    // Enumerates connected supersets of `set` inside the current root's
    // allowed region; `banned` prevents revisiting subsets.
    bool grow(int pos, std::uint32_t set, std::uint32_t set_nb, std::uint32_t ext,
              std::uint32_t banned, std::uint32_t allowed, std::uint32_t free) {
        tick();
        if (constraints_ok(pos, set)) {
            branch[static_cast<std::size_t>(pos)] = set;
            branch_nb[static_cast<std::size_t>(pos)] = set_nb;
            if (place(pos + 1, free & ~set))
                return true;
        }
        std::uint32_t local_banned = banned;
        std::uint32_t candidates = ext;
        while (candidates) {
            int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            std::uint32_t vbit = std::uint32_t{1} << v;
            if (local_banned & vbit)
                continue;
            std::uint32_t new_set = set | vbit;
            std::uint32_t new_ext =
                ((ext | (gadj[static_cast<std::size_t>(v)] & allowed)) & ~new_set) & ~local_banned;
            if (grow(pos, new_set, set_nb | gadj[static_cast<std::size_t>(v)], new_ext,
                     local_banned, allowed, free))
                return true;
            local_banned |= vbit;
        }
        return false;
    }

    bool place(int pos, std::uint32_t free) {
        tick();
        if (pos == hn)
            return true;
        if (std::popcount(free) < hn - pos)
            return false;
        std::uint32_t roots = free;
        while (roots) {
            int r = std::countr_zero(roots);
            roots &= roots - 1;
            // min-vertex convention: this set only uses vertices >= r
            std::uint32_t allowed = free & ~((std::uint32_t{1} << r) - 1);
            std::uint32_t rbit = std::uint32_t{1} << r;
            if (grow(pos, rbit, gadj[static_cast<std::size_t>(r)],
                     gadj[static_cast<std::size_t>(r)] & allowed & ~rbit, 0, allowed, free))
                return true;
        }
        return false;
    }
};

} // namespace

bool has_minor(const UndirectedGraph& g, const UndirectedGraph& h, const MinorLimits& limits) {
    if (g.vertex_count > limits.vertex_limit || g.vertex_count > 32)
        throw Error(Errc::too_large,
                    "graph has " + std::to_string(g.vertex_count) +
                        " vertices; minor-test limit is " +
                        std::to_string(std::min(limits.vertex_limit, 32)));
    if (g.vertex_count < h.vertex_count || g.edge_count() < h.edge_count())
        return false;
    if (h.vertex_count == 0)
        return true;

    MinorSearch search{g, h, limits.node_budget, 0, g.vertex_count, h.vertex_count,
                       {}, {}, {}, {}, {}};
    search.gadj.assign(static_cast<std::size_t>(g.vertex_count), 0);
    for (const auto& [u, v] : g.edges) {
        search.gadj[static_cast<std::size_t>(u)] |= std::uint32_t{1} << v;
        search.gadj[static_cast<std::size_t>(v)] |= std::uint32_t{1} << u;
    }
    std::vector<int> hdeg = degree_sequence(h);
    search.order.resize(static_cast<std::size_t>(h.vertex_count));
    for (int i = 0; i < h.vertex_count; ++i)
        search.order[static_cast<std::size_t>(i)] = i;
    std::sort(search.order.begin(), search.order.end(), [&](int x, int y) {
        if (hdeg[static_cast<std::size_t>(x)] != hdeg[static_cast<std::size_t>(y)])
            return hdeg[static_cast<std::size_t>(x)] > hdeg[static_cast<std::size_t>(y)];
        return x < y;
    });
    std::vector<int> pos_of(static_cast<std::size_t>(h.vertex_count));
    for (int p = 0; p < h.vertex_count; ++p)
        pos_of[static_cast<std::size_t>(search.order[static_cast<std::size_t>(p)])] = p;
    search.earlier.assign(static_cast<std::size_t>(h.vertex_count), {});
    for (const auto& [u, v] : h.edges) {
        int pu = pos_of[static_cast<std::size_t>(u)];
        int pv = pos_of[static_cast<std::size_t>(v)];
        search.earlier[static_cast<std::size_t>(std::max(pu, pv))].push_back(std::min(pu, pv));
    }
    search.branch.assign(static_cast<std::size_t>(h.vertex_count), 0);
    search.branch_nb.assign(static_cast<std::size_t>(h.vertex_count), 0);

    std::uint32_t all = g.vertex_count == 32 ? ~std::uint32_t{0}
                                             : (std::uint32_t{1} << g.vertex_count) - 1;
    return search.place(0, all);
}

const char* tightness_name(TightnessCertificate::Kind kind) {
    switch (kind) {
    case TightnessCertificate::Kind::petersen_free: return "PetersenFree";
    case TightnessCertificate::Kind::exact_equality: return "ExactEquality";
    case TightnessCertificate::Kind::possibly_loose: return "PossiblyLoose";
    }
    return "Unknown";
}

namespace {

bool petersen_minor_free(const UndirectedGraph& u, const MinorLimits& limits) {
    for (const UndirectedGraph& h : petersen_family())
        if (has_minor(u, h, limits))
            return false;
    return true;
}

} // namespace

TightnessCertificate classify_tightness(const EulerianView& view, int nu_e, int tau_e,
                                        const MinorLimits& minor_limits) {
    TightnessCertificate cert;
    cert.nu_e = nu_e;
    cert.tau_e = tau_e;
    if (petersen_minor_free(underlying_undirected(view.graph), minor_limits))
        cert.kind = TightnessCertificate::Kind::petersen_free;
    else if (nu_e == tau_e)
        cert.kind = TightnessCertificate::Kind::exact_equality;
    else
        cert.kind = TightnessCertificate::Kind::possibly_loose;
    return cert;
}

TightnessCertificate tightness_certificate(const DemandSupergraph& gc,
                                           const SolverLimits& solver_limits,
                                           const MinorLimits& minor_limits) {
    EulerianView view = to_eulerian(gc);
    if (petersen_minor_free(underlying_undirected(view.graph), minor_limits))
        return TightnessCertificate{TightnessCertificate::Kind::petersen_free, -1, -1};
    SupergraphSolution sol = supergraph_nu_tau(gc, solver_limits);
    return classify_tightness(view, sol.nu_e, sol.tau_e, minor_limits);
}

UndirectedGraph parse_undirected(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    int vertices = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word))
            continue;
        if (word == "vertices") {
            if (!(ls >> vertices) || vertices < 0)
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected vertex count");
        } else if (word == "edge") {
            int u = 0, v = 0;
            if (vertices < 0 || !(ls >> u >> v))
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": malformed edge line");
            if (u < 0 || u >= vertices || v < 0 || v >= vertices || u == v)
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": bad endpoints");
            edges.emplace_back(u, v);
        } else {
            throw Error(Errc::syntax_error,
                        "line " + std::to_string(lineno) + ": unknown directive '" + word + "'");
        }
    }
    if (vertices < 0)
        throw Error(Errc::syntax_error, "missing vertices line");
    return make_undirected(vertices, std::move(edges));
}

std::string serialize_undirected(const UndirectedGraph& g) {
    std::ostringstream out;
    out << "vertices " << g.vertex_count << "\n";
    for (const auto& [u, v] : g.edges)
        out << "edge " << u << " " << v << "\n";
    return out.str();
}

} // namespace uniprior
