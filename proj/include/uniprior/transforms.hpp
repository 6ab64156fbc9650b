#pragma once

#include <vector>

#include "uniprior/multigraph.hpp"
#include "uniprior/supergraph.hpp"

namespace uniprior {

// Side-information graph of a generalized cycle viewed as a single unicast
// problem: one vertex per message, and an edge x -> y whenever the receiver
// demanding x holds y. Always simple and self-loop free.
struct SideInfoGraph {
    DirectedMultigraph graph;
    std::vector<MessageId> vertex_labels; // canonical message order

    int vertex_of(const MessageId& m) const;
};

// Demand multigraph on the receivers: one edge holder -> demander per demand
// edge, with the originating demand recorded per multigraph edge. For a
// generalized cycle this graph is Eulerian.
struct EulerianView {
    DirectedMultigraph graph;
    std::vector<ReceiverId> vertex_labels;   // canonical receiver order
    std::vector<DemandEdge> edge_provenance; // parallel to graph.edges()

    int vertex_of(const ReceiverId& r) const;
};

SideInfoGraph to_side_information_graph(const DemandSupergraph& gc);

EulerianView to_eulerian(const DemandSupergraph& gc);

// Inverse of to_eulerian up to labeling: builds a generalized cycle whose
// demand multigraph has exactly the edge list of g. Supervertex i is labeled
// by its index and gets one fresh message per outgoing edge, assigned in
// edge-list order.
DemandSupergraph from_eulerian(const DirectedMultigraph& g);

// Maps a simple cycle of the demand multigraph back to the supergraph cycle
// formed by the provenance demands.
SupergraphCycle to_supergraph_cycle(const EulerianView& view, const SimpleCycle& c);

std::vector<DemandEdge> to_demand_edges(const EulerianView& view,
                                        const std::vector<int>& edge_indices);

} // namespace uniprior
