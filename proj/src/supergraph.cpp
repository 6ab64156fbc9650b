#include "uniprior/supergraph.hpp"

#include <algorithm>
#include <sstream>

#include "uniprior/error.hpp"
#include "uniprior/multigraph.hpp"
#include "uniprior/transforms.hpp"

namespace uniprior {

DemandSupergraph::DemandSupergraph(std::map<ReceiverId, std::set<MessageId>> side_info,
                                   std::set<DemandEdge> demands)
    : side_info_(std::move(side_info)) {
    if (side_info_.empty())
        throw Error(Errc::invalid_model, "at least one receiver required");
    for (const auto& [r, side] : side_info_) {
        if (side.empty())
            throw Error(Errc::invalid_model,
                        "receiver " + r.label + " has an empty side-information set");
        for (const MessageId& m : side) {
            auto [it, fresh] = holder_.emplace(m, r);
            if (!fresh)
                throw Error(Errc::non_disjoint_side_info,
                            "message " + m.label + " is side information of both " +
                                it->second.label + " and " + r.label);
            messages_.push_back(m);
        }
    }
    std::sort(messages_.begin(), messages_.end());
    for (const DemandEdge& d : demands) {
        if (!side_info_.count(d.receiver))
            throw Error(Errc::invalid_model,
                        "demand (" + d.message.label + ", " + d.receiver.label +
                            ") names an unknown receiver");
        auto h = holder_.find(d.message);
        if (h == holder_.end())
            throw Error(Errc::unhoused_demanded_message,
                        "demanded message " + d.message.label +
                            " is not side information of any receiver");
        if (h->second == d.receiver)
            throw Error(Errc::demand_in_own_side_info,
                        "receiver " + d.receiver.label + " demands its own side message " +
                            d.message.label);
    }
    demands_.assign(demands.begin(), demands.end());
}

const std::set<MessageId>& DemandSupergraph::side_info(const ReceiverId& r) const {
    auto it = side_info_.find(r);
    if (it == side_info_.end())
        throw Error(Errc::invalid_model, "unknown receiver " + r.label);
    return it->second;
}

const ReceiverId& DemandSupergraph::holder(const MessageId& m) const {
    auto it = holder_.find(m);
    if (it == holder_.end())
        throw Error(Errc::invalid_model, "unknown message " + m.label);
    return it->second;
}

std::vector<DemandEdge> DemandSupergraph::demands_of(const ReceiverId& r) const {
    std::vector<DemandEdge> out;
    for (const DemandEdge& d : demands_)
        if (d.receiver == r)
            out.push_back(d);
    return out;
}

bool DemandSupergraph::operator==(const DemandSupergraph& other) const {
    return side_info_ == other.side_info_ && demands_ == other.demands_;
}

bool is_valid_supergraph_cycle(const DemandSupergraph& g, const SupergraphCycle& c) {
    if (c.edges.empty())
        return false;
    std::vector<DemandEdge> sorted(c.edges);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    std::vector<ReceiverId> holders;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        const DemandEdge& d = c.edges[k];
        if (!std::binary_search(g.demands().begin(), g.demands().end(), d))
            return false;
        const DemandEdge& next = c.edges[(k + 1) % c.edges.size()];
        if (!(g.holder(next.message) == d.receiver))
            return false;
        holders.push_back(g.holder(d.message));
    }
    std::sort(holders.begin(), holders.end());
    return std::adjacent_find(holders.begin(), holders.end()) == holders.end();
}

namespace {

// Receiver multigraph of an arbitrary supergraph: one edge holder -> demander
// per demand, vertices in canonical receiver order.
DirectedMultigraph receiver_graph(const DemandSupergraph& g) {
    std::map<ReceiverId, int> index;
    for (const auto& [r, side] : g.receivers())
        index.emplace(r, static_cast<int>(index.size()));
    std::vector<DirectedMultigraph::Edge> edges;
    edges.reserve(g.demands().size());
    for (const DemandEdge& d : g.demands())
        edges.push_back({index.at(g.holder(d.message)), index.at(d.receiver)});
    return DirectedMultigraph(g.receiver_count(), std::move(edges));
}

} // namespace

GcVerdict is_generalized_cycle(const DemandSupergraph& g) {
    std::map<ReceiverId, int> indeg;
    std::map<MessageId, int> times_demanded;
    for (const DemandEdge& d : g.demands()) {
        ++indeg[d.receiver];
        ++times_demanded[d.message];
    }
    for (const auto& [r, side] : g.receivers()) {
        int have = indeg.count(r) ? indeg.at(r) : 0;
        int want = static_cast<int>(side.size());
        if (have != want)
            return {false, "in-degree(" + r.label + ")=" + std::to_string(have) +
                               " != s_" + r.label + "=" + std::to_string(want)};
    }
    for (const MessageId& m : g.messages()) {
        int k = times_demanded.count(m) ? times_demanded.at(m) : 0;
        if (k != 1)
            return {false, "message " + m.label + " demanded " + std::to_string(k) +
                               " times, expected exactly once"};
    }
    if (!strongly_connected(receiver_graph(g)))
        return {false, "supervertices not strongly connected"};
    return {true, ""};
}

namespace {

struct CycleProfile {
    std::set<MessageId> tails;
    std::set<ReceiverId> supervertices;
};

CycleProfile profile(const DemandSupergraph& g, const SupergraphCycle& c) {
    CycleProfile p;
    for (const DemandEdge& d : c.edges) {
        p.tails.insert(d.message);
        p.supervertices.insert(g.holder(d.message));
    }
    return p;
}

} // namespace

bool is_demand_decomposable(const DemandSupergraph& g, const DemandSupergraph& gc,
                            const std::vector<SupergraphCycle>& packing) {
    if (!(gc.receivers() == g.receivers()))
        throw Error(Errc::invalid_subgraph,
                    "subgraph must keep every supervertex and every subvertex");
    if (!std::includes(g.demands().begin(), g.demands().end(),
                       gc.demands().begin(), gc.demands().end()))
        throw Error(Errc::invalid_subgraph, "subgraph has a demand edge the supergraph lacks");
    if (GcVerdict v = is_generalized_cycle(gc); !v.ok)
        throw Error(Errc::invalid_subgraph, "subgraph is not a generalized cycle: " + v.witness);

    std::set<DemandEdge> packed;
    for (std::size_t i = 0; i < packing.size(); ++i) {
        if (!is_valid_supergraph_cycle(gc, packing[i]))
            throw Error(Errc::invalid_packing,
                        "cycle " + std::to_string(i + 1) + " is not a cycle of the subgraph");
        for (const DemandEdge& d : packing[i].edges)
            if (!packed.insert(d).second)
                throw Error(Errc::invalid_packing, "cycles share demand edge (" +
                                                       d.message.label + ", " +
                                                       d.receiver.label + ")");
    }
    // maximality: the unpacked part of gc must not contain a supergraph cycle
    {
        std::map<ReceiverId, int> index;
        for (const auto& [r, side] : gc.receivers())
            index.emplace(r, static_cast<int>(index.size()));
        std::vector<DirectedMultigraph::Edge> residual;
        for (const DemandEdge& d : gc.demands())
            if (!packed.count(d))
                residual.push_back({index.at(gc.holder(d.message)), index.at(d.receiver)});
        DirectedMultigraph res(gc.receiver_count(), std::move(residual));
        if (!is_acyclic(res))
            throw Error(Errc::invalid_packing, "packing is not maximal: residual cycle exists");
    }

    std::vector<CycleProfile> profiles;
    profiles.reserve(packing.size());
    for (const SupergraphCycle& c : packing)
        profiles.push_back(profile(gc, c));

    for (const DemandEdge& d : g.demands()) {
        if (packed.count(d))
            continue;
        bool ok = false;
        for (const CycleProfile& p : profiles) {
            if (p.tails.count(d.message)) {
                ok = p.supervertices.count(d.receiver) > 0;
                break; // the message lies in exactly one cycle of a partition
            }
        }
        if (!ok)
            return false;
    }
    return true;
}

namespace {

struct SpanningSearch {
    const DemandSupergraph& g;
    std::size_t budget;
    std::size_t nodes = 0;

    void count_node() {
        if (++nodes > budget)
            throw Error(Errc::search_limit_exceeded,
                        "spanning generalized-cycle search exceeded " +
                            std::to_string(budget) + " nodes");
    }

    // Best edge partition of the demand multigraph into compatible cycles,
    // maximizing cardinality. Empty optional when none exists.
    std::optional<std::vector<SimpleCycle>> best_partition(
        const EulerianView& view, const std::vector<SimpleCycle>& usable) {
        int edge_total = view.graph.edge_count();
        // cycles containing each edge, in enumeration order
        std::vector<std::vector<int>> by_edge(static_cast<std::size_t>(edge_total));
        for (int ci = 0; ci < static_cast<int>(usable.size()); ++ci)
            for (int e : usable[static_cast<std::size_t>(ci)].edges)
                by_edge[static_cast<std::size_t>(e)].push_back(ci);
        std::vector<char> covered(static_cast<std::size_t>(edge_total), 0);
        std::vector<int> chosen;
        std::vector<int> best;
        bool found = false;

        auto rec = [&](auto&& self, int covered_count) -> void {
            count_node();
            if (covered_count == edge_total) {
                if (!found || chosen.size() > best.size()) {
                    best = chosen;
                    found = true;
                }
                return;
            }
            // upper bound: every further cycle needs >= 2 edges
            int remaining = edge_total - covered_count;
            if (found && chosen.size() + static_cast<std::size_t>(remaining / 2) <= best.size())
                return;
            int e = 0;
            while (covered[static_cast<std::size_t>(e)])
                ++e;
            for (int ci : by_edge[static_cast<std::size_t>(e)]) {
                const auto& cyc = usable[static_cast<std::size_t>(ci)].edges;
                bool free = true;
                for (int ce : cyc)
                    if (covered[static_cast<std::size_t>(ce)]) {
                        free = false;
                        break;
                    }
                if (!free)
                    continue;
                for (int ce : cyc)
                    covered[static_cast<std::size_t>(ce)] = 1;
                chosen.push_back(ci);
                self(self, covered_count + static_cast<int>(cyc.size()));
                chosen.pop_back();
                for (int ce : cyc)
                    covered[static_cast<std::size_t>(ce)] = 0;
            }
        };
        rec(rec, 0);
        if (!found)
            return std::nullopt;
        std::vector<SimpleCycle> out;
        out.reserve(best.size());
        for (int ci : best)
            out.push_back(usable[static_cast<std::size_t>(ci)]);
        return out;
    }

    std::optional<SpanningGc> try_gc(std::set<DemandEdge> chosen_demands) {
        DemandSupergraph gc(g.receivers(), std::move(chosen_demands));
        if (!is_generalized_cycle(gc).ok)
            return std::nullopt;
        EulerianView view = to_eulerian(gc);
        std::vector<SimpleCycle> cycles = enumerate_simple_cycles(view.graph);

        std::vector<DemandEdge> extras;
        std::set<DemandEdge> gc_set(gc.demands().begin(), gc.demands().end());
        for (const DemandEdge& d : g.demands())
            if (!gc_set.count(d))
                extras.push_back(d);

        // a cycle is usable iff every extra demand whose message it contains
        // ends at one of its supervertices
        std::vector<SimpleCycle> usable;
        for (const SimpleCycle& c : cycles) {
            SupergraphCycle sc = to_supergraph_cycle(view, c);
            CycleProfile p = profile(gc, sc);
            bool ok = true;
            for (const DemandEdge& x : extras)
                if (p.tails.count(x.message) && !p.supervertices.count(x.receiver)) {
                    ok = false;
                    break;
                }
            if (ok)
                usable.push_back(c);
        }
        auto part = best_partition(view, usable);
        if (!part)
            return std::nullopt;
        std::vector<SupergraphCycle> packing;
        packing.reserve(part->size());
        for (const SimpleCycle& c : *part)
            packing.push_back(to_supergraph_cycle(view, c));
        return SpanningGc{std::move(gc), std::move(packing)};
    }

    std::optional<SpanningGc> run() {
        // one demand edge must be kept per message; side sets stay whole
        const std::vector<MessageId>& msgs = g.messages();
        std::vector<std::vector<DemandEdge>> candidates(msgs.size());
        for (std::size_t i = 0; i < msgs.size(); ++i) {
            for (const DemandEdge& d : g.demands())
                if (d.message == msgs[i])
                    candidates[i].push_back(d);
            if (candidates[i].empty())
                return std::nullopt; // some message is never demanded
        }
        std::map<ReceiverId, int> want;
        for (const auto& [r, side] : g.receivers())
            want[r] = static_cast<int>(side.size());
        std::map<ReceiverId, int> indeg;
        std::set<DemandEdge> chosen;
        std::optional<SpanningGc> result;

        auto rec = [&](auto&& self, std::size_t i) -> bool {
            count_node();
            if (i == msgs.size()) {
                for (const auto& [r, w] : want) {
                    int have = indeg.count(r) ? indeg.at(r) : 0;
                    if (have != w)
                        return false;
                }
                result = try_gc(chosen);
                return result.has_value();
            }
            for (const DemandEdge& d : candidates[i]) {
                if (indeg[d.receiver] + 1 > want.at(d.receiver))
                    continue;
                ++indeg[d.receiver];
                chosen.insert(d);
                if (self(self, i + 1))
                    return true;
                chosen.erase(d);
                --indeg[d.receiver];
            }
            return false;
        };
        rec(rec, 0);
        return result;
    }
};

} // namespace

std::optional<SpanningGc> find_spanning_generalized_cycle(const DemandSupergraph& g,
                                                          std::size_t budget) {
    SpanningSearch search{g, budget, 0};
    return search.run();
}

DemandSupergraph parse_problem(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    std::map<ReceiverId, std::set<MessageId>> side_info;
    std::set<DemandEdge> demands;
    std::optional<ReceiverId> current;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word))
            continue;
        if (word == "receiver") {
            std::string id;
            if (!(ls >> id))
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected receiver id");
            ReceiverId r{id};
            if (side_info.count(r))
                throw Error(Errc::syntax_error, "line " + std::to_string(lineno) +
                                                    ": duplicate receiver " + id);
            side_info[r] = {};
            current = r;
        } else if (word == "side" || word == "demand") {
            if (!current)
                throw Error(Errc::syntax_error, "line " + std::to_string(lineno) + ": '" +
                                                    word + "' before any receiver");
            std::string id;
            int count = 0;
            while (ls >> id) {
                ++count;
                if (word == "side")
                    side_info[*current].insert(MessageId{id});
                else
                    demands.insert(DemandEdge{MessageId{id}, *current});
            }
            if (count == 0)
                throw Error(Errc::syntax_error, "line " + std::to_string(lineno) +
                                                    ": '" + word + "' lists no messages");
        } else {
            throw Error(Errc::syntax_error, "line " + std::to_string(lineno) +
                                                ": unknown directive '" + word + "'");
        }
    }
    if (side_info.empty())
        throw Error(Errc::syntax_error, "no receiver lines found");
    return DemandSupergraph(std::move(side_info), std::move(demands));
}

std::string serialize_problem(const DemandSupergraph& g) {
    std::ostringstream out;
    for (const auto& [r, side] : g.receivers()) {
        out << "receiver " << r.label << "\n";
        out << "side";
        for (const MessageId& m : side)
            out << " " << m.label;
        out << "\n";
        std::vector<DemandEdge> mine = g.demands_of(r);
        if (!mine.empty()) {
            out << "demand";
            for (const DemandEdge& d : mine)
                out << " " << d.message.label;
            out << "\n";
        }
    }
    return out.str();
}

} // namespace uniprior
