#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uniprior {

// Directed multigraph stored as an indexed edge list. Parallel edges are
// distinct edges that happen to share endpoints; every algorithm identifies
// an edge by its index, never by its endpoints, so packings and feedback
// sets are plain sets of indices.
class DirectedMultigraph {
public:
    struct Edge {
        int tail = 0;
        int head = 0;
        bool operator==(const Edge&) const = default;
    };

    DirectedMultigraph() = default;
    DirectedMultigraph(int vertex_count, std::vector<Edge> edges,
                       bool allow_self_loops = false);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    int tail(int e) const { return edge(e).tail; }
    int head(int e) const { return edge(e).head; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool allows_self_loops() const { return allow_self_loops_; }

    // Edge indices leaving/entering v, in ascending index order.
    std::span<const int> out_edges(int v) const;
    std::span<const int> in_edges(int v) const;
    int out_degree(int v) const { return static_cast<int>(out_edges(v).size()); }
    int in_degree(int v) const { return static_cast<int>(in_edges(v).size()); }

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    bool allow_self_loops_ = false;
    std::vector<int> out_index_, out_start_;
    std::vector<int> in_index_, in_start_;
};

// A cycle through pairwise distinct vertices, held as the edge indices in
// traversal order. Length 1 only for self-loops.
struct SimpleCycle {
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
    bool operator==(const SimpleCycle&) const = default;
};

bool is_valid_simple_cycle(const DirectedMultigraph& g, const SimpleCycle& c);

// Vertices visited, aligned with the edge list (vertex k is the tail of
// edge k).
std::vector<int> cycle_vertices(const DirectedMultigraph& g, const SimpleCycle& c);

bool strongly_connected(const DirectedMultigraph& g);
bool is_acyclic(const DirectedMultigraph& g);

// Balanced in/out degree at every vertex plus strong connectivity. Requires
// at least one incident edge per vertex; isolated vertices are an error, not
// a "no".
bool is_eulerian(const DirectedMultigraph& g);

inline constexpr std::size_t default_cycle_limit = 100000;

// Every simple cycle exactly once, deterministically ordered. Each cycle is
// rooted at its smallest vertex; parallel edges yield distinct cycles.
std::vector<SimpleCycle> enumerate_simple_cycles(const DirectedMultigraph& g,
                                                 std::size_t limit = default_cycle_limit);

// Chordless cycles as vertex sequences rooted at their smallest vertex.
// Parallel edges do not multiply results. Every cycle contains a chordless
// cycle on a subset of its vertices, so this list is a sufficient ground set
// for vertex-disjoint packing and feedback vertex sets.
std::vector<std::vector<int>> enumerate_chordless_vertex_cycles(
    const DirectedMultigraph& g, std::size_t limit = default_cycle_limit);

// Text format: "vertices <n>" then one "edge <tail> <head>" line per edge,
// 0-based; '#' comments and blank lines ignored.
DirectedMultigraph parse_multigraph(std::string_view text);
std::string serialize_multigraph(const DirectedMultigraph& g);

} // namespace uniprior
