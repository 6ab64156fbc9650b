#include "uniprior/transforms.hpp"

#include <algorithm>
#include <map>

#include "uniprior/error.hpp"

namespace uniprior {

int SideInfoGraph::vertex_of(const MessageId& m) const {
    auto it = std::lower_bound(vertex_labels.begin(), vertex_labels.end(), m);
    if (it == vertex_labels.end() || !(*it == m))
        throw Error(Errc::invalid_model, "message " + m.label + " is not a vertex");
    return static_cast<int>(it - vertex_labels.begin());
}

int EulerianView::vertex_of(const ReceiverId& r) const {
    auto it = std::lower_bound(vertex_labels.begin(), vertex_labels.end(), r);
    if (it == vertex_labels.end() || !(*it == r))
        throw Error(Errc::invalid_model, "receiver " + r.label + " is not a vertex");
    return static_cast<int>(it - vertex_labels.begin());
}

namespace {

void require_generalized_cycle(const DemandSupergraph& g) {
    if (GcVerdict v = is_generalized_cycle(g); !v.ok)
        throw Error(Errc::not_generalized_cycle, v.witness);
}

} // namespace

SideInfoGraph to_side_information_graph(const DemandSupergraph& gc) {
    require_generalized_cycle(gc);
    const std::vector<MessageId>& msgs = gc.messages();
    std::map<MessageId, int> index;
    for (const MessageId& m : msgs)
        index.emplace(m, static_cast<int>(index.size()));
    // the unique demander of each message
    std::map<MessageId, ReceiverId> demander;
    for (const DemandEdge& d : gc.demands())
        demander.emplace(d.message, d.receiver);
    std::vector<DirectedMultigraph::Edge> edges;
    for (const MessageId& m : msgs)
        for (const MessageId& held : gc.side_info(demander.at(m)))
            edges.push_back({index.at(m), index.at(held)});
    return SideInfoGraph{DirectedMultigraph(gc.message_count(), std::move(edges)), msgs};
}

EulerianView to_eulerian(const DemandSupergraph& gc) {
    require_generalized_cycle(gc);
    std::vector<ReceiverId> labels;
    std::map<ReceiverId, int> index;
    for (const auto& [r, side] : gc.receivers()) {
        index.emplace(r, static_cast<int>(labels.size()));
        labels.push_back(r);
    }
    std::vector<DirectedMultigraph::Edge> edges;
    std::vector<DemandEdge> provenance;
    for (const DemandEdge& d : gc.demands()) {
        edges.push_back({index.at(gc.holder(d.message)), index.at(d.receiver)});
        provenance.push_back(d);
    }
    EulerianView view{DirectedMultigraph(gc.receiver_count(), std::move(edges)),
                      std::move(labels), std::move(provenance)};
    if (!is_eulerian(view.graph))
        throw Error(Errc::not_eulerian, "demand multigraph of a generalized cycle "
                                        "must be Eulerian");
    return view;
}

namespace {

std::string padded_label(char prefix, int i, int count) {
    std::size_t width = 1;
    for (int v = count - 1; v >= 10; v /= 10)
        ++width;
    std::string num = std::to_string(i);
    return prefix + std::string(width - num.size(), '0') + num;
}

} // namespace

DemandSupergraph from_eulerian(const DirectedMultigraph& g) {
    if (!is_eulerian(g))
        throw Error(Errc::not_eulerian, "graph is not Eulerian");
    for (const auto& e : g.edges())
        if (e.tail == e.head)
            throw Error(Errc::not_applicable,
                        "self-loop at vertex " + std::to_string(e.tail) +
                            ": no receiver demands its own side information");
    int m = g.vertex_count();
    int n = g.edge_count();
    // zero-padded labels keep lexicographic order equal to index order, so
    // converting back reproduces the edge list exactly
    std::map<ReceiverId, std::set<MessageId>> side_info;
    std::set<DemandEdge> demands;
    for (int e = 0; e < n; ++e) {
        MessageId msg{padded_label('x', e, n)};
        side_info[ReceiverId{padded_label('r', g.tail(e), m)}].insert(msg);
        demands.insert(DemandEdge{msg, ReceiverId{padded_label('r', g.head(e), m)}});
    }
    return DemandSupergraph(std::move(side_info), std::move(demands));
}

SupergraphCycle to_supergraph_cycle(const EulerianView& view, const SimpleCycle& c) {
    SupergraphCycle out;
    out.edges.reserve(c.edges.size());
    for (int e : c.edges)
        out.edges.push_back(view.edge_provenance[static_cast<std::size_t>(e)]);
    return out;
}

std::vector<DemandEdge> to_demand_edges(const EulerianView& view,
                                        const std::vector<int>& edge_indices) {
    std::vector<DemandEdge> out;
    out.reserve(edge_indices.size());
    for (int e : edge_indices)
        out.push_back(view.edge_provenance[static_cast<std::size_t>(e)]);
    return out;
}

} // namespace uniprior
