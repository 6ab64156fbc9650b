#include "uniprior/multigraph.hpp"

#include <algorithm>
#include <sstream>

#include "uniprior/error.hpp"

namespace uniprior {

namespace {

// CSR-style bucket layout: start[v]..start[v+1] indexes into index[].
void build_buckets(int vertex_count, const std::vector<int>& keys,
                   std::vector<int>& index, std::vector<int>& start) {
    start.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
    for (int k : keys)
        ++start[static_cast<std::size_t>(k) + 1];
    for (int v = 0; v < vertex_count; ++v)
        start[static_cast<std::size_t>(v) + 1] += start[v];
    index.resize(keys.size());
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (int e = 0; e < static_cast<int>(keys.size()); ++e)
        index[static_cast<std::size_t>(fill[keys[static_cast<std::size_t>(e)]]++)] = e;
}

} // namespace

DirectedMultigraph::DirectedMultigraph(int vertex_count, std::vector<Edge> edges,
                                       bool allow_self_loops)
    : vertex_count_(vertex_count), edges_(std::move(edges)),
      allow_self_loops_(allow_self_loops) {
    if (vertex_count_ < 0)
        throw Error(Errc::invalid_model, "negative vertex count");
    std::vector<int> tails, heads;
    tails.reserve(edges_.size());
    heads.reserve(edges_.size());
    for (const Edge& e : edges_) {
        if (e.tail < 0 || e.tail >= vertex_count_ || e.head < 0 || e.head >= vertex_count_)
            throw Error(Errc::invalid_model, "edge endpoint out of range");
        if (e.tail == e.head && !allow_self_loops_)
            throw Error(Errc::invalid_model,
                        "self-loop at vertex " + std::to_string(e.tail) + " not allowed");
        tails.push_back(e.tail);
        heads.push_back(e.head);
    }
    build_buckets(vertex_count_, tails, out_index_, out_start_);
    build_buckets(vertex_count_, heads, in_index_, in_start_);
}

std::span<const int> DirectedMultigraph::out_edges(int v) const {
    return {out_index_.data() + out_start_[v],
            out_index_.data() + out_start_[static_cast<std::size_t>(v) + 1]};
}

std::span<const int> DirectedMultigraph::in_edges(int v) const {
    return {in_index_.data() + in_start_[v],
            in_index_.data() + in_start_[static_cast<std::size_t>(v) + 1]};
}

bool is_valid_simple_cycle(const DirectedMultigraph& g, const SimpleCycle& c) {
    if (c.edges.empty())
        return false;
    std::vector<int> seen_edges(c.edges);
    std::sort(seen_edges.begin(), seen_edges.end());
    if (std::adjacent_find(seen_edges.begin(), seen_edges.end()) != seen_edges.end())
        return false;
    for (int e : c.edges)
        if (e < 0 || e >= g.edge_count())
            return false;
    std::vector<int> verts;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        int e = c.edges[k];
        int next = c.edges[(k + 1) % c.edges.size()];
        if (g.head(e) != g.tail(next))
            return false;
        verts.push_back(g.tail(e));
    }
    std::sort(verts.begin(), verts.end());
    return std::adjacent_find(verts.begin(), verts.end()) == verts.end();
}

std::vector<int> cycle_vertices(const DirectedMultigraph& g, const SimpleCycle& c) {
    std::vector<int> verts;
    verts.reserve(c.edges.size());
    for (int e : c.edges)
        verts.push_back(g.tail(e));
    return verts;
}

namespace {

void dfs_reach(const DirectedMultigraph& g, int from, bool reverse, std::vector<char>& seen) {
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : reverse ? g.in_edges(v) : g.out_edges(v)) {
            int w = reverse ? g.tail(e) : g.head(e);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
}

} // namespace

bool strongly_connected(const DirectedMultigraph& g) {
    int n = g.vertex_count();
    if (n <= 1)
        return true;
    std::vector<char> fwd(static_cast<std::size_t>(n), 0), bwd(static_cast<std::size_t>(n), 0);
    dfs_reach(g, 0, false, fwd);
    dfs_reach(g, 0, true, bwd);
    for (int v = 0; v < n; ++v)
        if (!fwd[static_cast<std::size_t>(v)] || !bwd[static_cast<std::size_t>(v)])
            return false;
    return true;
}

bool is_acyclic(const DirectedMultigraph& g) {
    int n = g.vertex_count();
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& e : g.edges()) {
        if (e.tail == e.head)
            return false;
        ++indeg[static_cast<std::size_t>(e.head)];
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0)
            queue.push_back(v);
    int removed = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++removed;
        for (int e : g.out_edges(v))
            if (--indeg[static_cast<std::size_t>(g.head(e))] == 0)
                queue.push_back(g.head(e));
    }
    return removed == n;
}

bool is_eulerian(const DirectedMultigraph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.in_degree(v) == 0 && g.out_degree(v) == 0)
            throw Error(Errc::isolated_vertex,
                        "vertex " + std::to_string(v) + " has no incident edge");
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.in_degree(v) != g.out_degree(v))
            return false;
    return strongly_connected(g);
}

namespace {

struct CycleEnumerator {
    const DirectedMultigraph& g;
    std::size_t limit;
    std::vector<SimpleCycle> out;
    std::vector<char> on_path;
    std::vector<char> can_reach_start;
    std::vector<int> path;
    int start = 0;

    void record(const std::vector<int>& edges) {
        if (out.size() >= limit)
            throw Error(Errc::cycle_limit_exceeded,
                        "more than " + std::to_string(limit) + " simple cycles");
        out.push_back(SimpleCycle{edges});
    }

    // Paths live in the subgraph induced by vertices >= start and only visit
    // vertices that can still reach start there, so every cycle is reported
    // exactly once, rooted at its smallest vertex.
    void extend(int v) {
        for (int e : g.out_edges(v)) {
            int h = g.head(e);
            if (h == start) {
                // closes the cycle; with v == start this is a self-loop
                path.push_back(e);
                record(path);
                path.pop_back();
            } else if (h > start && !on_path[static_cast<std::size_t>(h)] &&
                       can_reach_start[static_cast<std::size_t>(h)]) {
                on_path[static_cast<std::size_t>(h)] = 1;
                path.push_back(e);
                extend(h);
                path.pop_back();
                on_path[static_cast<std::size_t>(h)] = 0;
            }
        }
    }

    std::vector<SimpleCycle> run() {
        int n = g.vertex_count();
        for (start = 0; start < n; ++start) {
            can_reach_start.assign(static_cast<std::size_t>(n), 0);
            // reverse reachability restricted to vertices >= start
            std::vector<int> stack{start};
            can_reach_start[static_cast<std::size_t>(start)] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int e : g.in_edges(v)) {
                    int t = g.tail(e);
                    if (t >= start && !can_reach_start[static_cast<std::size_t>(t)]) {
                        can_reach_start[static_cast<std::size_t>(t)] = 1;
                        stack.push_back(t);
                    }
                }
            }
            on_path.assign(static_cast<std::size_t>(n), 0);
            on_path[static_cast<std::size_t>(start)] = 1;
            path.clear();
            extend(start);
        }
        return std::move(out);
    }
};

} // namespace

std::vector<SimpleCycle> enumerate_simple_cycles(const DirectedMultigraph& g,
                                                 std::size_t limit) {
    CycleEnumerator en{g, limit, {}, {}, {}, {}, 0};
    return en.run();
}

namespace {

struct ChordlessEnumerator {
    const DirectedMultigraph& g;
    std::size_t limit;
    std::vector<std::vector<char>> adj; // edge existence, parallels collapsed
    std::vector<char> has_loop;
    std::vector<std::vector<int>> out_neighbors; // distinct, ascending
    std::vector<char> on_path;
    std::vector<int> path;
    std::vector<std::vector<int>> out;

    void record(const std::vector<int>& verts) {
        if (out.size() >= limit)
            throw Error(Errc::cycle_limit_exceeded,
                        "more than " + std::to_string(limit) + " chordless cycles");
        out.push_back(verts);
    }

    // A cycle is chordless when the only edges among its vertices follow the
    // cyclic successor order. A vertex with a self-loop only appears as the
    // length-1 cycle: the loop itself is a chord of anything longer.
    void extend(int start) {
        int v = path.back();
        for (int w : out_neighbors[static_cast<std::size_t>(v)]) {
            if (w == start) {
                if (path.size() >= 2)
                    record(path);
                continue;
            }
            if (w < start || on_path[static_cast<std::size_t>(w)] ||
                has_loop[static_cast<std::size_t>(w)])
                continue;
            bool chord = false;
            for (std::size_t i = 0; i + 1 < path.size() && !chord; ++i)
                if (adj[static_cast<std::size_t>(path[i])][static_cast<std::size_t>(w)])
                    chord = true; // forward chord into w
            for (std::size_t i = 1; i < path.size() && !chord; ++i)
                if (adj[static_cast<std::size_t>(w)][static_cast<std::size_t>(path[i])])
                    chord = true; // backward chord out of w
            if (chord)
                continue;
            path.push_back(w);
            on_path[static_cast<std::size_t>(w)] = 1;
            if (adj[static_cast<std::size_t>(w)][static_cast<std::size_t>(start)]) {
                // forced closure: extending past w would leave w->start as a chord
                if (path.size() >= 2)
                    record(path);
            } else {
                extend(start);
            }
            on_path[static_cast<std::size_t>(w)] = 0;
            path.pop_back();
        }
    }

    std::vector<std::vector<int>> run() {
        int n = g.vertex_count();
        adj.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
        has_loop.assign(static_cast<std::size_t>(n), 0);
        out_neighbors.assign(static_cast<std::size_t>(n), {});
        for (const auto& e : g.edges()) {
            if (e.tail == e.head) {
                has_loop[static_cast<std::size_t>(e.tail)] = 1;
                continue;
            }
            if (!adj[static_cast<std::size_t>(e.tail)][static_cast<std::size_t>(e.head)]) {
                adj[static_cast<std::size_t>(e.tail)][static_cast<std::size_t>(e.head)] = 1;
                out_neighbors[static_cast<std::size_t>(e.tail)].push_back(e.head);
            }
        }
        for (auto& nb : out_neighbors)
            std::sort(nb.begin(), nb.end());
        on_path.assign(static_cast<std::size_t>(n), 0);
        for (int s = 0; s < n; ++s) {
            if (has_loop[static_cast<std::size_t>(s)]) {
                record({s});
                continue;
            }
            path.assign(1, s);
            on_path[static_cast<std::size_t>(s)] = 1;
            extend(s);
            on_path[static_cast<std::size_t>(s)] = 0;
        }
        return std::move(out);
    }
};

} // namespace

std::vector<std::vector<int>> enumerate_chordless_vertex_cycles(const DirectedMultigraph& g,
                                                                std::size_t limit) {
    ChordlessEnumerator en{g, limit, {}, {}, {}, {}, {}, {}};
    return en.run();
}

DirectedMultigraph parse_multigraph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    int vertices = -1;
    std::vector<DirectedMultigraph::Edge> edges;
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
            if (vertices >= 0)
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": duplicate vertices line");
            if (!(ls >> vertices) || vertices < 0)
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected vertex count");
        } else if (word == "edge") {
            if (vertices < 0)
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": edge before vertices line");
            int t = 0, h = 0;
            if (!(ls >> t >> h))
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected edge endpoints");
            if (t < 0 || t >= vertices || h < 0 || h >= vertices)
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": endpoint out of range");
            edges.push_back({t, h});
        } else {
            throw Error(Errc::syntax_error,
                        "line " + std::to_string(lineno) + ": unknown directive '" + word + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw Error(Errc::syntax_error,
                        "line " + std::to_string(lineno) + ": trailing tokens");
    }
    if (vertices < 0)
        throw Error(Errc::syntax_error, "missing vertices line");
    return DirectedMultigraph(vertices, std::move(edges), /*allow_self_loops=*/true);
}

std::string serialize_multigraph(const DirectedMultigraph& g) {
    std::ostringstream out;
    out << "vertices " << g.vertex_count() << "\n";
    for (const auto& e : g.edges())
        out << "edge " << e.tail << " " << e.head << "\n";
    return out.str();
}

} // namespace uniprior
