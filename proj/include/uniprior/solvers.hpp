#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uniprior/multigraph.hpp"
#include "uniprior/supergraph.hpp"
#include "uniprior/transforms.hpp"

namespace uniprior {

struct SolverLimits {
    std::size_t cycle_limit = default_cycle_limit;
    std::size_t node_budget = 10'000'000;
};

enum class PackingMode { exact, greedy };

// Pairwise disjoint cycles (edge-level or vertex-level disjointness depending
// on the producing solver). `scope` names the graph the indices refer to.
struct CyclePacking {
    std::vector<SimpleCycle> cycles;
    std::string scope;

    int size() const { return static_cast<int>(cycles.size()); }
};

struct FeedbackEdgeSet {
    std::vector<int> edges;

    int size() const { return static_cast<int>(edges.size()); }
};

struct FeedbackVertexSet {
    std::vector<int> vertices;

    int size() const { return static_cast<int>(vertices.size()); }
};

// Maximum (exact) or maximal (greedy, shortest-cycle-first) set of pairwise
// edge-disjoint cycles. Exact mode is branch and bound over the enumerated
// cycle list.
CyclePacking max_edge_disjoint_packing(const DirectedMultigraph& g,
                                       PackingMode mode = PackingMode::exact,
                                       const SolverLimits& limits = {});

// Exact minimum set of edges meeting every cycle; the residual graph is
// re-checked acyclic before returning.
FeedbackEdgeSet min_feedback_edge_set(const DirectedMultigraph& g,
                                      const SolverLimits& limits = {});

// Exact maximum set of vertex-disjoint cycles.
CyclePacking max_vertex_disjoint_packing(const DirectedMultigraph& g,
                                         const SolverLimits& limits = {});

// Exact minimum set of vertices meeting every cycle.
FeedbackVertexSet min_feedback_vertex_set(const DirectedMultigraph& g,
                                          const SolverLimits& limits = {});

// Peels cycles off an Eulerian graph until no edge remains; the result is a
// maximal packing whose cycles partition the edge set.
CyclePacking eulerian_decomposition(const DirectedMultigraph& g);

struct SupergraphSolution {
    int nu_e = 0;
    int tau_e = 0;
    std::vector<SupergraphCycle> packing;
    std::vector<DemandEdge> feedback_edges;
};

// nu_e / tau_e of a generalized cycle, computed on its demand multigraph with
// certificates mapped back to demand edges.
SupergraphSolution supergraph_nu_tau(const DemandSupergraph& gc,
                                     const SolverLimits& limits = {});

} // namespace uniprior
