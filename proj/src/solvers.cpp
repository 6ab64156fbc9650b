#include "uniprior/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "uniprior/error.hpp"

namespace uniprior {

namespace {

struct BudgetCounter {
    std::size_t budget;
    std::size_t used = 0;

    void tick() {
        if (++used > budget)
            throw Error(Errc::solver_budget_exceeded,
                        "solver exceeded " + std::to_string(budget) + " search nodes");
    }
};

// Sorts footprints shortest-first, ties by content; returns the permutation.
std::vector<int> sorted_order(const std::vector<std::vector<int>>& footprints) {
    std::vector<int> order(footprints.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& fa = footprints[static_cast<std::size_t>(a)];
        const auto& fb = footprints[static_cast<std::size_t>(b)];
        if (fa.size() != fb.size())
            return fa.size() < fb.size();
        return fa < fb;
    });
    return order;
}

// Maximum set of pairwise disjoint footprints; branch and bound with the
// remaining-units / shortest-footprint bound. Returns chosen indices into
// `footprints` (original indexing) in pick order.
std::vector<int> max_disjoint_set(const std::vector<std::vector<int>>& footprints,
                                  int universe_size, BudgetCounter& budget) {
    std::vector<int> order = sorted_order(footprints);
    std::vector<char> used(static_cast<std::size_t>(universe_size), 0);
    int free_units = universe_size;
    std::vector<int> taken, best;

    auto rec = [&](auto&& self, std::size_t i) -> void {
        budget.tick();
        if (taken.size() > best.size())
            best = taken;
        if (i == order.size())
            return;
        const auto& fp = footprints[static_cast<std::size_t>(order[i])];
        std::size_t bound = taken.size() +
                            std::min(order.size() - i,
                                     static_cast<std::size_t>(free_units) / fp.size());
        if (bound <= best.size())
            return;
        bool disjoint = true;
        for (int u : fp)
            if (used[static_cast<std::size_t>(u)]) {
                disjoint = false;
                break;
            }
        if (disjoint) {
            for (int u : fp)
                used[static_cast<std::size_t>(u)] = 1;
            free_units -= static_cast<int>(fp.size());
            taken.push_back(order[i]);
            self(self, i + 1);
            taken.pop_back();
            free_units += static_cast<int>(fp.size());
            for (int u : fp)
                used[static_cast<std::size_t>(u)] = 0;
        }
        self(self, i + 1);
    };
    rec(rec, 0);
    return best;
}

// Greedy maximal disjoint set in the given order.
std::vector<int> greedy_disjoint_set(const std::vector<std::vector<int>>& footprints,
                                     int universe_size) {
    std::vector<int> order = sorted_order(footprints);
    std::vector<char> used(static_cast<std::size_t>(universe_size), 0);
    std::vector<int> taken;
    for (int idx : order) {
        const auto& fp = footprints[static_cast<std::size_t>(idx)];
        bool disjoint = true;
        for (int u : fp)
            if (used[static_cast<std::size_t>(u)]) {
                disjoint = false;
                break;
            }
        if (!disjoint)
            continue;
        for (int u : fp)
            used[static_cast<std::size_t>(u)] = 1;
        taken.push_back(idx);
    }
    return taken;
}

// Minimum hitting set over the footprints. `seed_lower` is a known valid
// lower bound (a disjoint-set cardinality). Returns chosen elements sorted.
std::vector<int> min_hitting_set(const std::vector<std::vector<int>>& footprints,
                                 int universe_size, std::size_t seed_lower,
                                 BudgetCounter& budget) {
    if (footprints.empty())
        return {};
    std::vector<int> order = sorted_order(footprints);

    std::vector<std::vector<int>> items_of(static_cast<std::size_t>(universe_size));
    for (std::size_t i = 0; i < footprints.size(); ++i)
        for (int u : footprints[i])
            items_of[static_cast<std::size_t>(u)].push_back(static_cast<int>(i));

    // greedy incumbent: repeatedly hit the element covering the most
    // still-uncovered footprints
    std::vector<int> incumbent;
    {
        std::vector<char> covered(footprints.size(), 0);
        std::size_t left = footprints.size();
        while (left > 0) {
            int best_elem = -1;
            int best_gain = -1;
            for (int u = 0; u < universe_size; ++u) {
                int gain = 0;
                for (int it : items_of[static_cast<std::size_t>(u)])
                    if (!covered[static_cast<std::size_t>(it)])
                        ++gain;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_elem = u;
                }
            }
            incumbent.push_back(best_elem);
            for (int it : items_of[static_cast<std::size_t>(best_elem)])
                if (!covered[static_cast<std::size_t>(it)]) {
                    covered[static_cast<std::size_t>(it)] = 1;
                    --left;
                }
        }
    }
    std::sort(incumbent.begin(), incumbent.end());
    if (incumbent.size() == seed_lower)
        return incumbent;

    std::vector<int> hit_count(footprints.size(), 0);
    std::vector<int> chosen;
    std::vector<int> best = incumbent;

    // lower bound: chosen plus a greedy packing of uncovered footprints
    auto lower_bound = [&]() {
        std::vector<char> blocked(static_cast<std::size_t>(universe_size), 0);
        std::size_t packed = 0;
        for (int idx : order) {
            if (hit_count[static_cast<std::size_t>(idx)] > 0)
                continue;
            bool disjoint = true;
            for (int u : footprints[static_cast<std::size_t>(idx)])
                if (blocked[static_cast<std::size_t>(u)]) {
                    disjoint = false;
                    break;
                }
            if (!disjoint)
                continue;
            for (int u : footprints[static_cast<std::size_t>(idx)])
                blocked[static_cast<std::size_t>(u)] = 1;
            ++packed;
        }
        return chosen.size() + packed;
    };

    auto rec = [&](auto&& self) -> void {
        budget.tick();
        int pick = -1;
        for (int idx : order)
            if (hit_count[static_cast<std::size_t>(idx)] == 0) {
                pick = idx;
                break;
            }
        if (pick < 0) {
            if (chosen.size() < best.size()) {
                best = chosen;
                std::sort(best.begin(), best.end());
            }
            return;
        }
        if (lower_bound() >= best.size())
            return;
        for (int u : footprints[static_cast<std::size_t>(pick)]) {
            chosen.push_back(u);
            for (int it : items_of[static_cast<std::size_t>(u)])
                ++hit_count[static_cast<std::size_t>(it)];
            self(self);
            for (int it : items_of[static_cast<std::size_t>(u)])
                --hit_count[static_cast<std::size_t>(it)];
            chosen.pop_back();
        }
    };
    rec(rec);
    return best;
}

std::vector<std::vector<int>> edge_footprints(const std::vector<SimpleCycle>& cycles) {
    std::vector<std::vector<int>> out;
    out.reserve(cycles.size());
    for (const SimpleCycle& c : cycles) {
        std::vector<int> fp(c.edges);
        std::sort(fp.begin(), fp.end());
        out.push_back(std::move(fp));
    }
    return out;
}

// Realizes a chordless vertex cycle as concrete edges: the first edge between
// each consecutive vertex pair.
SimpleCycle realize_vertex_cycle(const DirectedMultigraph& g, const std::vector<int>& verts) {
    SimpleCycle c;
    for (std::size_t k = 0; k < verts.size(); ++k) {
        int u = verts[k];
        int w = verts[(k + 1) % verts.size()];
        int found = -1;
        for (int e : g.out_edges(u))
            if (g.head(e) == w) {
                found = e;
                break;
            }
        if (found < 0)
            throw std::logic_error("vertex cycle without a realizing edge");
        c.edges.push_back(found);
    }
    return c;
}

} // namespace

CyclePacking max_edge_disjoint_packing(const DirectedMultigraph& g, PackingMode mode,
                                       const SolverLimits& limits) {
    std::vector<SimpleCycle> cycles = enumerate_simple_cycles(g, limits.cycle_limit);
    std::vector<std::vector<int>> fps = edge_footprints(cycles);
    std::vector<int> chosen;
    if (mode == PackingMode::exact) {
        BudgetCounter budget{limits.node_budget};
        chosen = max_disjoint_set(fps, g.edge_count(), budget);
    } else {
        chosen = greedy_disjoint_set(fps, g.edge_count());
    }
    CyclePacking packing;
    packing.scope = "edge-disjoint";
    for (int idx : chosen)
        packing.cycles.push_back(cycles[static_cast<std::size_t>(idx)]);
    return packing;
}

FeedbackEdgeSet min_feedback_edge_set(const DirectedMultigraph& g,
                                      const SolverLimits& limits) {
    std::vector<SimpleCycle> cycles = enumerate_simple_cycles(g, limits.cycle_limit);
    if (cycles.empty())
        return {};
    std::vector<std::vector<int>> fps = edge_footprints(cycles);
    BudgetCounter budget{limits.node_budget};
    std::size_t nu = max_disjoint_set(fps, g.edge_count(), budget).size();
    std::vector<int> hit = min_hitting_set(fps, g.edge_count(), nu, budget);

    std::vector<char> removed(static_cast<std::size_t>(g.edge_count()), 0);
    for (int e : hit)
        removed[static_cast<std::size_t>(e)] = 1;
    std::vector<DirectedMultigraph::Edge> rest;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!removed[static_cast<std::size_t>(e)])
            rest.push_back(g.edge(e));
    if (!is_acyclic(DirectedMultigraph(g.vertex_count(), std::move(rest),
                                       g.allows_self_loops())))
        throw std::logic_error("feedback edge set leaves a cycle");
    return FeedbackEdgeSet{std::move(hit)};
}

CyclePacking max_vertex_disjoint_packing(const DirectedMultigraph& g,
                                         const SolverLimits& limits) {
    std::vector<std::vector<int>> vcycles =
        enumerate_chordless_vertex_cycles(g, limits.cycle_limit);
    BudgetCounter budget{limits.node_budget};
    std::vector<int> chosen = max_disjoint_set(vcycles, g.vertex_count(), budget);
    CyclePacking packing;
    packing.scope = "vertex-disjoint";
    for (int idx : chosen)
        packing.cycles.push_back(realize_vertex_cycle(g, vcycles[static_cast<std::size_t>(idx)]));
    return packing;
}

FeedbackVertexSet min_feedback_vertex_set(const DirectedMultigraph& g,
                                          const SolverLimits& limits) {
    std::vector<std::vector<int>> vcycles =
        enumerate_chordless_vertex_cycles(g, limits.cycle_limit);
    if (vcycles.empty())
        return {};
    for (auto& fp : vcycles)
        std::sort(fp.begin(), fp.end());
    BudgetCounter budget{limits.node_budget};
    std::size_t nu = max_disjoint_set(vcycles, g.vertex_count(), budget).size();
    std::vector<int> hit = min_hitting_set(vcycles, g.vertex_count(), nu, budget);

    std::vector<char> gone(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : hit)
        gone[static_cast<std::size_t>(v)] = 1;
    std::vector<DirectedMultigraph::Edge> rest;
    for (const auto& e : g.edges())
        if (!gone[static_cast<std::size_t>(e.tail)] && !gone[static_cast<std::size_t>(e.head)])
            rest.push_back(e);
    if (!is_acyclic(DirectedMultigraph(g.vertex_count(), std::move(rest),
                                       g.allows_self_loops())))
        throw std::logic_error("feedback vertex set leaves a cycle");
    return FeedbackVertexSet{std::move(hit)};
}

CyclePacking eulerian_decomposition(const DirectedMultigraph& g) {
    if (!is_eulerian(g))
        throw Error(Errc::not_eulerian, "graph is not Eulerian");
    int n = g.vertex_count();
    std::vector<char> used(static_cast<std::size_t>(g.edge_count()), 0);
    std::vector<std::size_t> next_out(static_cast<std::size_t>(n), 0);
    std::vector<int> pos_in_path(static_cast<std::size_t>(n), -1);
    CyclePacking packing;
    packing.scope = "eulerian-decomposition";

    auto next_unused = [&](int v) -> int {
        auto outs = g.out_edges(v);
        while (next_out[static_cast<std::size_t>(v)] < outs.size()) {
            int e = outs[next_out[static_cast<std::size_t>(v)]];
            if (!used[static_cast<std::size_t>(e)])
                return e;
            ++next_out[static_cast<std::size_t>(v)];
        }
        return -1;
    };

    // Walk from the smallest vertex with an unused edge; whenever the walk
    // revisits a vertex of the open path, peel that cycle off. Balance keeps
    // the walk from sticking anywhere except back at its start.
    for (int s = 0; s < n; ++s) {
        while (next_unused(s) >= 0) {
            std::vector<int> path_verts{s};
            std::vector<int> path_edges;
            pos_in_path[static_cast<std::size_t>(s)] = 0;
            int v = s;
            while (true) {
                int e = next_unused(v);
                if (e < 0) {
                    if (path_verts.size() != 1)
                        throw std::logic_error("eulerian walk stuck off its start");
                    break;
                }
                used[static_cast<std::size_t>(e)] = 1;
                int h = g.head(e);
                int at = pos_in_path[static_cast<std::size_t>(h)];
                if (at >= 0) {
                    SimpleCycle cycle;
                    cycle.edges.assign(path_edges.begin() + at, path_edges.end());
                    cycle.edges.push_back(e);
                    packing.cycles.push_back(std::move(cycle));
                    for (std::size_t k = static_cast<std::size_t>(at) + 1; k < path_verts.size(); ++k)
                        pos_in_path[static_cast<std::size_t>(path_verts[k])] = -1;
                    path_verts.resize(static_cast<std::size_t>(at) + 1);
                    path_edges.resize(static_cast<std::size_t>(at));
                    v = h;
                } else {
                    path_edges.push_back(e);
                    path_verts.push_back(h);
                    pos_in_path[static_cast<std::size_t>(h)] = static_cast<int>(path_verts.size()) - 1;
                    v = h;
                }
                if (path_verts.size() == 1 && next_unused(v) < 0)
                    break;
            }
            pos_in_path[static_cast<std::size_t>(s)] = -1;
        }
    }
    return packing;
}

SupergraphSolution supergraph_nu_tau(const DemandSupergraph& gc, const SolverLimits& limits) {
    EulerianView view = to_eulerian(gc);
    CyclePacking packing = max_edge_disjoint_packing(view.graph, PackingMode::exact, limits);
    FeedbackEdgeSet fes = min_feedback_edge_set(view.graph, limits);
    SupergraphSolution sol;
    sol.nu_e = packing.size();
    sol.tau_e = fes.size();
    for (const SimpleCycle& c : packing.cycles)
        sol.packing.push_back(to_supergraph_cycle(view, c));
    sol.feedback_edges = to_demand_edges(view, fes.edges);
    return sol;
}

} // namespace uniprior
