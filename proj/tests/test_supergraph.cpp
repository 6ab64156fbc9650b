#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include "test_util.hpp"
#include "uniprior/error.hpp"
#include "uniprior/generator.hpp"
#include "uniprior/supergraph.hpp"

using namespace uniprior;
using namespace testutil;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::io_error; // sentinel: nothing thrown
}

} // namespace

TEST_CASE("parsing the running example") {
    DemandSupergraph g = parse_problem(example1_text());
    CHECK(g.receiver_count() == 4);
    CHECK(g.message_count() == 9);
    CHECK(g.demands().size() == 9);
    CHECK(g.holder(MessageId{"x1"}) == ReceiverId{"2"});
    CHECK(g.holder(MessageId{"x3"}) == ReceiverId{"1"});
    CHECK(g.side_count(ReceiverId{"2"}) == 3);
    CHECK(g.demands_of(ReceiverId{"4"}).size() == 2);
}

TEST_CASE("model invariant violations") {
    CHECK(code_of([] {
        parse_problem("receiver 1\nside a\nreceiver 2\nside a\n");
    }) == Errc::non_disjoint_side_info);
    CHECK(code_of([] {
        parse_problem("receiver 1\nside a\ndemand a\nreceiver 2\nside b\n");
    }) == Errc::demand_in_own_side_info);
    CHECK(code_of([] {
        parse_problem("receiver 1\nside a\ndemand z\nreceiver 2\nside b\n");
    }) == Errc::unhoused_demanded_message);
    CHECK(code_of([] { parse_problem("side a\n"); }) == Errc::syntax_error);
    CHECK(code_of([] { parse_problem("receiver 1\nnonsense x\n"); }) == Errc::syntax_error);
    CHECK(code_of([] { parse_problem("receiver 1\nside\n"); }) == Errc::syntax_error);
    CHECK(code_of([] { parse_problem("receiver 1\nside a\nreceiver 1\nside b\n"); }) ==
          Errc::syntax_error);
    CHECK(code_of([] { parse_problem("# only comments\n"); }) == Errc::syntax_error);
    // empty side information set is outside the model
    CHECK(code_of([] { parse_problem("receiver 1\nside a\nreceiver 2\ndemand a\n"); }) ==
          Errc::invalid_model);

    // syntax errors carry line numbers
    try {
        parse_problem("receiver 1\nside a\nbogus\n");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("generalized cycle classification") {
    CHECK(is_generalized_cycle(parse_problem(example1_text())).ok);
    CHECK(is_generalized_cycle(parse_problem(toy2_text())).ok);

    // dropping demand (x1,1) breaks the in-degree of supervertex 1
    std::string text = example1_text();
    auto at = text.find("demand x1\n");
    REQUIRE(at != std::string::npos);
    text.erase(at, 10);
    GcVerdict v = is_generalized_cycle(parse_problem(text));
    CHECK_FALSE(v.ok);
    CHECK(v.witness.find("in-degree(1)=0") != std::string::npos);

    // in-degrees all match but message a is demanded twice (and z never)
    GcVerdict twice = is_generalized_cycle(parse_problem(
        "receiver 1\nside a\ndemand c\nreceiver 2\nside b\ndemand a\n"
        "receiver 3\nside c z\ndemand a b\n"));
    CHECK_FALSE(twice.ok);
    CHECK(twice.witness.find("message a demanded 2 times") != std::string::npos);

    // two 2-cycles that never touch: connectivity fails
    GcVerdict split = is_generalized_cycle(parse_problem(
        "receiver 1\nside a\ndemand b\nreceiver 2\nside b\ndemand a\n"
        "receiver 3\nside c\ndemand d\nreceiver 4\nside d\ndemand c\n"));
    CHECK_FALSE(split.ok);
    CHECK(split.witness.find("strongly connected") != std::string::npos);

    // side message never demanded trips the in-degree count of its holder
    GcVerdict undemanded = is_generalized_cycle(parse_problem(
        "receiver 1\nside a z\ndemand b\nreceiver 2\nside b\ndemand a\n"));
    CHECK_FALSE(undemanded.ok);
}

TEST_CASE("generalized cycle bookkeeping identities") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GeneratedInstance inst = gen_instance({4 + int(seed % 4), 2 + int(seed % 3), 0, seed, 200});
        REQUIRE(is_generalized_cycle(inst.gc).ok);
        // total demands = n, and in-degrees sum to the side sizes
        CHECK(static_cast<int>(inst.gc.demands().size()) == inst.gc.message_count());
        int side_sum = 0;
        for (const auto& [r, side] : inst.gc.receivers())
            side_sum += static_cast<int>(side.size());
        CHECK(side_sum == inst.gc.message_count());
    }
}

TEST_CASE("supergraph cycle validity") {
    DemandSupergraph g = parse_problem(example1_text());
    for (const SupergraphCycle& c : example1_cycles())
        CHECK(is_valid_supergraph_cycle(g, c));
    // wrong order breaks the holder chain
    CHECK_FALSE(is_valid_supergraph_cycle(
        g, SupergraphCycle{{de("x3", "3"), de("x1", "1"), de("x2", "2")}}));
    // absent demand edge
    CHECK_FALSE(is_valid_supergraph_cycle(g, SupergraphCycle{{de("x1", "4"), de("x9", "2")}}));
    CHECK_FALSE(is_valid_supergraph_cycle(g, SupergraphCycle{{}}));
}

TEST_CASE("demand decomposability: positive cases") {
    DemandSupergraph gc = parse_problem(example1_text());
    DemandSupergraph ext = parse_problem(example1_extended_text());
    CHECK(is_demand_decomposable(ext, gc, example1_cycles()));
    // a generalized cycle is decomposable by any of its maximal packings
    CHECK(is_demand_decomposable(gc, gc, example1_cycles()));
}

TEST_CASE("demand decomposability: the (x5,4) extra edge crosses cycles") {
    DemandSupergraph gc = parse_problem(example1_text());
    std::set<DemandEdge> demands(gc.demands().begin(), gc.demands().end());
    demands.insert(de("x5", "4"));
    DemandSupergraph g(gc.receivers(), demands);
    // x5 lies in the 2-cycle over supervertices {3,2}; receiver 4 is outside
    CHECK_FALSE(is_demand_decomposable(g, gc, example1_cycles()));
}

TEST_CASE("demand decomposability: input validation") {
    DemandSupergraph gc = parse_problem(example1_text());
    DemandSupergraph ext = parse_problem(example1_extended_text());

    // subgraph missing a receiver
    CHECK(code_of([&] {
        is_demand_decomposable(ext, parse_problem(toy2_text()), {});
    }) == Errc::invalid_subgraph);
    // subgraph that is not a generalized cycle (extra demands make x1 doubly demanded)
    CHECK(code_of([&] { is_demand_decomposable(ext, ext, example1_cycles()); }) ==
          Errc::invalid_subgraph);

    auto cycles = example1_cycles();
    // overlapping cycles
    auto doubled = cycles;
    doubled.push_back(cycles[1]);
    CHECK(code_of([&] { is_demand_decomposable(ext, gc, doubled); }) == Errc::invalid_packing);
    // dropping a cycle leaves a residual cycle: not maximal
    auto partial = std::vector<SupergraphCycle>{cycles[0], cycles[1], cycles[2]};
    CHECK(code_of([&] { is_demand_decomposable(ext, gc, partial); }) == Errc::invalid_packing);
    // a non-cycle
    auto broken = cycles;
    broken[0].edges[0] = de("x9", "3");
    CHECK(code_of([&] { is_demand_decomposable(ext, gc, broken); }) == Errc::invalid_packing);
}

TEST_CASE("spanning generalized cycle search: extension instance") {
    DemandSupergraph ext = parse_problem(example1_extended_text());
    auto sp = find_spanning_generalized_cycle(ext);
    REQUIRE(sp.has_value());
    CHECK(sp->gc == parse_problem(example1_text()));
    CHECK(sp->packing.size() == 4);
    CHECK(is_demand_decomposable(ext, sp->gc, sp->packing));
}

TEST_CASE("spanning generalized cycle search: a generalized cycle returns itself") {
    DemandSupergraph gc = parse_problem(example1_text());
    auto sp = find_spanning_generalized_cycle(gc);
    REQUIRE(sp.has_value());
    CHECK(sp->gc == gc);
    CHECK(sp->packing.size() == 4); // maximum cardinality preferred
    CHECK(is_demand_decomposable(gc, sp->gc, sp->packing));
}

TEST_CASE("spanning generalized cycle search: negative and budget cases") {
    // single demand edge: message b is never demanded
    DemandSupergraph acyclic = parse_problem(
        "receiver 1\nside a\nreceiver 2\nside b\ndemand a\n");
    CHECK_FALSE(find_spanning_generalized_cycle(acyclic).has_value());

    DemandSupergraph ext = parse_problem(example1_extended_text());
    CHECK(code_of([&] { find_spanning_generalized_cycle(ext, 3); }) ==
          Errc::search_limit_exceeded);
}

TEST_CASE("instance text round trip") {
    for (const std::string& text :
         {example1_text(), example1_extended_text(), toy2_text()}) {
        DemandSupergraph g = parse_problem(text);
        CHECK(parse_problem(serialize_problem(g)) == g);
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GeneratedInstance inst =
            gen_instance({3 + int(seed % 5), 1 + int(seed % 4), int(seed % 3), seed, 200});
        CHECK(parse_problem(serialize_problem(inst.problem)) == inst.problem);
    }
}
