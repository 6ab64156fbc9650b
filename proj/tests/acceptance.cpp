// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its expectations from scratch so a run
// of this binary is a full end-to-end check of the library.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "uniprior/codes.hpp"
#include "uniprior/error.hpp"
#include "uniprior/generator.hpp"
#include "uniprior/minors.hpp"
#include "uniprior/solvers.hpp"
#include "uniprior/transforms.hpp"

using namespace uniprior;
using namespace testutil;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond)
        throw CheckFailure(what);
}

int g_failures = 0;

void criterion(int id, const std::string& name, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
        body();
    } catch (const std::exception& e) {
        verdict = "FAIL";
        detail = e.what();
        ++g_failures;
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << "criterion " << id << " (" << name << "): " << verdict;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " [" << dt << "s]";
    if (!detail.empty())
        line << " -- " << detail;
    std::cout << line.str() << std::endl;
}

// Independent exact solvers over explicit footprints, used to compute the
// supergraph-level quantities without the demand-multigraph reduction.
int bounded_max_disjoint(const std::vector<std::vector<int>>& fps, int universe) {
    std::vector<std::size_t> order(fps.size());
    for (std::size_t i = 0; i < fps.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fps[a].size() < fps[b].size();
    });
    std::vector<char> used(static_cast<std::size_t>(universe), 0);
    int free_units = universe;
    int best = 0;
    auto rec = [&](auto&& self, std::size_t i, int taken) -> void {
        best = std::max(best, taken);
        if (i == order.size())
            return;
        std::size_t len = fps[order[i]].size();
        if (taken + static_cast<int>(static_cast<std::size_t>(free_units) / len) <= best)
            return;
        bool ok = true;
        for (int u : fps[order[i]])
            if (used[static_cast<std::size_t>(u)])
                ok = false;
        if (ok) {
            for (int u : fps[order[i]])
                used[static_cast<std::size_t>(u)] = 1;
            free_units -= static_cast<int>(len);
            self(self, i + 1, taken + 1);
            free_units += static_cast<int>(len);
            for (int u : fps[order[i]])
                used[static_cast<std::size_t>(u)] = 0;
        }
        self(self, i + 1, taken);
    };
    rec(rec, 0, 0);
    return best;
}

int bounded_min_hitting(const std::vector<std::vector<int>>& fps, int universe) {
    if (fps.empty())
        return 0;
    std::vector<char> chosen(static_cast<std::size_t>(universe), 0);
    int best = universe;
    auto uncovered_packing = [&]() {
        // greedy disjoint uncovered footprints: a lower bound on what is
        // still needed
        std::vector<char> blocked(static_cast<std::size_t>(universe), 0);
        int count = 0;
        for (const auto& fp : fps) {
            bool hit = false, disjoint = true;
            for (int u : fp) {
                if (chosen[static_cast<std::size_t>(u)])
                    hit = true;
                if (blocked[static_cast<std::size_t>(u)])
                    disjoint = false;
            }
            if (hit || !disjoint)
                continue;
            for (int u : fp)
                blocked[static_cast<std::size_t>(u)] = 1;
            ++count;
        }
        return count;
    };
    auto rec = [&](auto&& self, int size) -> void {
        const std::vector<int>* pick = nullptr;
        for (const auto& fp : fps) {
            bool hit = false;
            for (int u : fp)
                if (chosen[static_cast<std::size_t>(u)])
                    hit = true;
            if (!hit && (!pick || fp.size() < pick->size()))
                pick = &fp;
        }
        if (!pick) {
            best = std::min(best, size);
            return;
        }
        if (size + uncovered_packing() >= best)
            return;
        for (int u : *pick) {
            chosen[static_cast<std::size_t>(u)] = 1;
            self(self, size + 1);
            chosen[static_cast<std::size_t>(u)] = 0;
        }
    };
    rec(rec, 0);
    return best;
}

std::pair<int, int> supergraph_nu_tau_direct(const DemandSupergraph& gc) {
    std::vector<SupergraphCycle> cycles = direct_supergraph_cycles(gc);
    std::map<DemandEdge, int> index;
    for (const DemandEdge& d : gc.demands())
        index.emplace(d, static_cast<int>(index.size()));
    std::vector<std::vector<int>> fps;
    fps.reserve(cycles.size());
    for (const SupergraphCycle& c : cycles) {
        std::vector<int> fp;
        for (const DemandEdge& d : c.edges)
            fp.push_back(index.at(d));
        std::sort(fp.begin(), fp.end());
        fps.push_back(std::move(fp));
    }
    int universe = static_cast<int>(gc.demands().size());
    return {bounded_max_disjoint(fps, universe), bounded_min_hitting(fps, universe)};
}

// The seeded 200-instance sweep shared by criteria 4-6: at most 8
// supervertices and 20 demands each.
std::vector<DemandSupergraph> property_instances() {
    std::vector<DemandSupergraph> out;
    for (int i = 0; i < 200; ++i) {
        int m = 2 + i % 7;
        int rmax = std::max(1, 20 / m);
        int r = 1 + (i * 13 + 5) % rmax;
        GenParams params;
        params.receivers = m;
        params.cycles = r;
        params.extra_edges = 0;
        params.seed = static_cast<std::uint64_t>(1000 + i);
        GeneratedInstance inst = gen_instance(params);
        require(inst.gc.receiver_count() <= 8, "generator exceeded 8 supervertices");
        require(static_cast<int>(inst.gc.demands().size()) <= 20,
                "generator exceeded 20 demands");
        out.push_back(inst.gc);
    }
    return out;
}

const std::vector<DemandSupergraph>& instances() {
    static const std::vector<DemandSupergraph> cached = property_instances();
    return cached;
}

void criterion1() {
    DemandSupergraph g = parse_problem(example1_text());
    require(is_generalized_cycle(g).ok, "classifier rejects the example");
    SupergraphSolution sol = supergraph_nu_tau(g);
    require(sol.nu_e == 4, "nu_e != 4");
    require(sol.tau_e == 4, "tau_e != 4");
    BoundsReport report = bounds_report(g);
    require(report.lower == 5 && report.upper == 5, "bounds != [5,5]");
    for (int q : {2, 3}) {
        IndexCode code = cyclic_code(g, sol.packing, q);
        require(code.length() == 5, "code length != 5");
        VerifyReport vr = verify_code(g, code);
        require(vr.verdicts.size() == 9, "expected 9 demands");
        require(vr.all_decodable, "not all demands decodable over GF(" + std::to_string(q) + ")");
    }
}

void criterion2() {
    DemandSupergraph g = parse_problem(example1_text());
    SideInfoGraph si = to_side_information_graph(g);
    require(si.graph.edge_count() == 23, "expected 23 free entries");
    int mrk = minrank_oracle(si);
    require(mrk == 5, "minrank != 5 (got " + std::to_string(mrk) + ")");
    BoundsReport report = bounds_report(g);
    require(report.lower == mrk && report.upper == mrk, "minrank differs from the bounds");
}

void criterion3() {
    DemandSupergraph gc = parse_problem(example1_text());
    DemandSupergraph ext = parse_problem(example1_extended_text());
    require(is_demand_decomposable(ext, gc, example1_cycles()),
            "extension not decomposable by the published cycles");
    IndexCode code = cyclic_code(gc, example1_cycles(), 2);
    require(code.length() == 5, "code length != 5");
    VerifyReport vr = verify_code(ext, code);
    require(vr.verdicts.size() == 12, "expected 12 extended demands");
    require(vr.all_decodable, "extended demands not all decodable");
}

void criterion4() {
    std::mt19937 shuffler(99);
    for (const DemandSupergraph& gc : instances()) {
        EulerianView view = to_eulerian(gc);
        SupergraphSolution sol = supergraph_nu_tau(gc);
        int n = gc.message_count();

        // packing/feedback equalities against the side-information graph
        SideInfoGraph si = to_side_information_graph(gc);
        int nu_v = max_vertex_disjoint_packing(si.graph).size();
        int tau_v = min_feedback_vertex_set(si.graph).size();
        require(sol.nu_e == nu_v, "nu_e != nu_v on the side-information graph");
        require(sol.tau_e == tau_v, "tau_e != tau_v on the side-information graph");

        // same quantities from the supergraph's own cycle space
        auto [nu_direct, tau_direct] = supergraph_nu_tau_direct(gc);
        require(sol.nu_e == nu_direct, "nu_e differs between gc and its demand multigraph");
        require(sol.tau_e == tau_direct, "tau_e differs between gc and its demand multigraph");

        // explicit code: length n - nu_e, fully decodable
        IndexCode code = cyclic_code(gc, sol.packing, 2);
        require(code.length() == n - sol.nu_e, "code length != n - nu_e");
        require(verify_code(gc, code).all_decodable, "cyclic code failed verification");

        // any maximal packing covers all edges; try greedy over shuffled orders
        std::vector<SimpleCycle> cycles = enumerate_simple_cycles(view.graph);
        for (int round = 0; round < 3; ++round) {
            std::shuffle(cycles.begin(), cycles.end(), shuffler);
            std::vector<char> used(static_cast<std::size_t>(view.graph.edge_count()), 0);
            std::size_t covered = 0;
            for (const SimpleCycle& c : cycles) {
                bool free = true;
                for (int e : c.edges)
                    if (used[static_cast<std::size_t>(e)])
                        free = false;
                if (!free)
                    continue;
                for (int e : c.edges) {
                    used[static_cast<std::size_t>(e)] = 1;
                    ++covered;
                }
            }
            require(covered == static_cast<std::size_t>(view.graph.edge_count()),
                    "a maximal packing left edges uncovered");
        }
    }
}

void criterion5() {
    const auto& family = petersen_family();
    require(family.size() == 7, "family size != 7");
    for (const UndirectedGraph& g : family)
        require(g.edge_count() == 15, "family member without 15 edges");

    // the petersen graph: 10 vertices, 3-regular, girth 5 implies it is the
    // kneser graph; verify by explicit isomorphism
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            pairs.emplace_back(a, b);
    std::vector<std::pair<int, int>> pedges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            auto [a, b] = pairs[i];
            auto [c, d] = pairs[j];
            if (a != c && a != d && b != c && b != d)
                pedges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    UndirectedGraph petersen = make_undirected(10, std::move(pedges));
    bool found = false;
    for (const UndirectedGraph& g : family)
        found = found || isomorphic(g, petersen);
    require(found, "petersen graph missing from the closure");

    UndirectedGraph fig3 = underlying_undirected(fig3_graph());
    for (const UndirectedGraph& h : family)
        require(!has_minor(fig3, h), "example graph unexpectedly has a family minor");

    // certified petersen-free implies solver equality
    int certified = 0;
    for (const DemandSupergraph& gc : instances()) {
        TightnessCertificate cert = tightness_certificate(gc);
        if (cert.kind == TightnessCertificate::Kind::petersen_free) {
            SupergraphSolution sol = supergraph_nu_tau(gc);
            require(sol.nu_e == sol.tau_e, "petersen-free certificate with nu_e != tau_e");
            ++certified;
        }
    }
    require(certified > 0, "no instance was certified petersen-free");
}

void criterion6() {
    int tested = 0;
    // the running example plus every sweep instance small enough
    std::vector<DemandSupergraph> pool{parse_problem(example1_text())};
    for (const DemandSupergraph& gc : instances())
        pool.push_back(gc);
    for (const DemandSupergraph& gc : pool) {
        SideInfoGraph si = to_side_information_graph(gc);
        if (si.graph.edge_count() > 24)
            continue;
        int mrk = minrank_oracle(si);
        SupergraphSolution sol = supergraph_nu_tau(gc);
        int n = gc.message_count();
        require(n - sol.tau_e <= mrk, "minrank below the lower bound");
        require(mrk <= n - sol.nu_e, "minrank above the upper bound");
        ++tested;
        if (tested >= 40)
            break;
    }
    require(tested >= 10, "too few oracle-sized instances (got " + std::to_string(tested) + ")");
    std::cout << "  (sandwich checked on " << tested << " instances)\n";
}

} // namespace

int main() {
    criterion(1, "example instance end-to-end", criterion1);
    criterion(2, "exhaustive minrank equals both bounds", criterion2);
    criterion(3, "extension instance decodes with the embedded-cycle code", criterion3);
    criterion(4, "property sweep over 200 random generalized cycles", criterion4);
    criterion(5, "petersen family closure and tightness certificates", criterion5);
    criterion(6, "minrank sandwich on oracle-sized instances", criterion6);
    if (g_failures) {
        std::cout << g_failures << " criterion(s) FAILED" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
