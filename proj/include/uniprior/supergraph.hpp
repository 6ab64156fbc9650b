#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace uniprior {

struct MessageId {
    std::string label;
    auto operator<=>(const MessageId&) const = default;
};

struct ReceiverId {
    std::string label;
    auto operator<=>(const ReceiverId&) const = default;
};

// A demand: `message` is wanted by `receiver`. The message always lives in
// some other receiver's side-information set.
struct DemandEdge {
    MessageId message;
    ReceiverId receiver;
    auto operator<=>(const DemandEdge&) const = default;
};

// Uniprior index coding instance: receivers own pairwise disjoint
// side-information sets (the subvertices of each supervertex) and demand
// messages held by other receivers. Immutable once constructed; construction
// validates all model invariants.
class DemandSupergraph {
public:
    DemandSupergraph(std::map<ReceiverId, std::set<MessageId>> side_info,
                     std::set<DemandEdge> demands);

    const std::map<ReceiverId, std::set<MessageId>>& receivers() const { return side_info_; }
    const std::vector<DemandEdge>& demands() const { return demands_; }

    // Message universe in canonical (label) order.
    const std::vector<MessageId>& messages() const { return messages_; }

    int receiver_count() const { return static_cast<int>(side_info_.size()); }
    int message_count() const { return static_cast<int>(messages_.size()); }

    bool has_receiver(const ReceiverId& r) const { return side_info_.count(r) > 0; }
    bool has_message(const MessageId& m) const { return holder_.count(m) > 0; }

    const std::set<MessageId>& side_info(const ReceiverId& r) const;
    int side_count(const ReceiverId& r) const { return static_cast<int>(side_info(r).size()); }

    // The unique receiver holding `m` as side information.
    const ReceiverId& holder(const MessageId& m) const;

    std::vector<DemandEdge> demands_of(const ReceiverId& r) const;

    bool operator==(const DemandSupergraph& other) const;

private:
    std::map<ReceiverId, std::set<MessageId>> side_info_;
    std::vector<DemandEdge> demands_;
    std::vector<MessageId> messages_;
    std::map<MessageId, ReceiverId> holder_;
};

// A supergraph cycle: distinct demand edges where the receiver of edge k
// holds the message of edge k+1 (cyclically) and the holding supervertices
// are pairwise distinct.
struct SupergraphCycle {
    std::vector<DemandEdge> edges;

    int length() const { return static_cast<int>(edges.size()); }
    bool operator==(const SupergraphCycle&) const = default;
};

bool is_valid_supergraph_cycle(const DemandSupergraph& g, const SupergraphCycle& c);

struct GcVerdict {
    bool ok = false;
    std::string witness; // empty when ok
    explicit operator bool() const { return ok; }
};

// Generalized-cycle test: every supervertex's in-degree equals its side set
// size, every message is demanded exactly once, and the supervertices are
// strongly connected through the demand structure. The witness names the
// first violation found.
GcVerdict is_generalized_cycle(const DemandSupergraph& g);

// Definition check for the extended class: gc must be a spanning generalized
// cycle subgraph of g and `packing` a maximal set of edge-disjoint cycles of
// gc; then g is demand-decomposable by `packing` iff every extra edge of g
// starts at a message inside one of the cycles and ends at a supervertex of
// that same cycle.
bool is_demand_decomposable(const DemandSupergraph& g, const DemandSupergraph& gc,
                            const std::vector<SupergraphCycle>& packing);

struct SpanningGc {
    DemandSupergraph gc;
    std::vector<SupergraphCycle> packing;
};

inline constexpr std::size_t default_search_budget = 5'000'000;

// Searches for a spanning generalized-cycle subgraph and a maximal packing
// that make g demand-decomposable. Deterministic; prefers packings of
// maximum cardinality for the first qualifying subgraph found.
std::optional<SpanningGc> find_spanning_generalized_cycle(
    const DemandSupergraph& g, std::size_t budget = default_search_budget);

// Instance file format ('#' comments, blank lines ignored):
//   receiver <id>
//   side <msg> [<msg> ...]
//   demand <msg> [<msg> ...]
// repeated per receiver; the message universe is the union of side lines.
DemandSupergraph parse_problem(std::string_view text);
std::string serialize_problem(const DemandSupergraph& g);

} // namespace uniprior
