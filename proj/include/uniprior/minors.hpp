#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uniprior/multigraph.hpp"
#include "uniprior/solvers.hpp"
#include "uniprior/supergraph.hpp"

namespace uniprior {

// Simple undirected graph; edges normalized to u < v, sorted, deduplicated.
struct UndirectedGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool has_edge(int u, int v) const;
};

UndirectedGraph make_undirected(int vertex_count, std::vector<std::pair<int, int>> edges);
UndirectedGraph complete_graph(int n);

// Collapses directions, parallel edges and antiparallel pairs into single
// undirected edges; self-loops are dropped.
UndirectedGraph underlying_undirected(const DirectedMultigraph& g);

bool isomorphic(const UndirectedGraph& a, const UndirectedGraph& b);

// The seven-graph closure of K6 under delta-wye (replace a triangle by a new
// degree-3 vertex) and wye-delta (the inverse, applied only where it keeps
// the graph simple). Includes the Petersen graph; every member has 15 edges.
const std::vector<UndirectedGraph>& petersen_family();

struct MinorLimits {
    int vertex_limit = 16;
    std::size_t node_budget = 2'000'000;
};

// Minor containment by branch-set backtracking: disjoint connected subsets of
// g, one per vertex of h, with a g-edge between subsets for every h-edge.
bool has_minor(const UndirectedGraph& g, const UndirectedGraph& h,
               const MinorLimits& limits = {});

struct TightnessCertificate {
    enum class Kind { petersen_free, exact_equality, possibly_loose };

    Kind kind = Kind::possibly_loose;
    // Filled when the solvers ran (always for exact_equality/possibly_loose).
    int nu_e = -1;
    int tau_e = -1;
};

const char* tightness_name(TightnessCertificate::Kind kind);

// Certifies nu_e == tau_e for a generalized cycle: first by testing the
// underlying undirected graph of its demand multigraph against the Petersen
// family, then by falling back to exact solver equality.
TightnessCertificate tightness_certificate(const DemandSupergraph& gc,
                                           const SolverLimits& solver_limits = {},
                                           const MinorLimits& minor_limits = {});

// Same decision given already-computed solver values.
TightnessCertificate classify_tightness(const EulerianView& view, int nu_e, int tau_e,
                                        const MinorLimits& minor_limits = {});

// Text format: "vertices <n>" then "edge <u> <v>" lines.
UndirectedGraph parse_undirected(std::string_view text);
std::string serialize_undirected(const UndirectedGraph& g);

} // namespace uniprior
