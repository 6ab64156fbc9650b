#include "uniprior/generator.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "uniprior/error.hpp"
#include "uniprior/multigraph.hpp"
#include "uniprior/transforms.hpp"

namespace uniprior {

namespace {

// mt19937_64 plus rejection sampling; avoids std::uniform_int_distribution so
// identical seeds give identical instances on every standard library.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t r;
        do {
            r = engine();
        } while (r >= limit);
        return r % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
};

} // namespace

GeneratedInstance gen_instance(const GenParams& params) {
    if (params.receivers < 2)
        throw Error(Errc::invalid_model, "generator needs at least 2 receivers");
    if (params.cycles < 1)
        throw Error(Errc::invalid_model, "generator needs at least 1 cycle");
    if (params.extra_edges < 0)
        throw Error(Errc::invalid_model, "extra edge count must be non-negative");

    Rng rng(params.seed);
    int m = params.receivers;

    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        std::vector<DirectedMultigraph::Edge> edges;
        std::vector<std::vector<int>> cycle_edges(static_cast<std::size_t>(params.cycles));
        for (int c = 0; c < params.cycles; ++c) {
            int len = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
            std::vector<int> verts(static_cast<std::size_t>(m));
            for (int v = 0; v < m; ++v)
                verts[static_cast<std::size_t>(v)] = v;
            rng.shuffle(verts);
            verts.resize(static_cast<std::size_t>(len));
            for (int k = 0; k < len; ++k) {
                cycle_edges[static_cast<std::size_t>(c)].push_back(
                    static_cast<int>(edges.size()));
                edges.push_back({verts[static_cast<std::size_t>(k)],
                                 verts[static_cast<std::size_t>((k + 1) % len)]});
            }
        }
        DirectedMultigraph graph(m, edges);
        if (!strongly_connected(graph))
            continue;

        DemandSupergraph gc = from_eulerian(graph);
        EulerianView view = to_eulerian(gc); // edge list identical to `graph`
        std::vector<SupergraphCycle> packing;
        packing.reserve(cycle_edges.size());
        for (const auto& ce : cycle_edges)
            packing.push_back(to_supergraph_cycle(view, SimpleCycle{ce}));

        if (params.extra_edges == 0)
            return GeneratedInstance{gc, gc, std::move(packing)};

        // extra demands must start at a message of some cycle and end at a
        // supervertex of the same cycle
        std::vector<DemandEdge> candidates;
        for (const SupergraphCycle& sc : packing) {
            std::set<ReceiverId> supervertices;
            for (const DemandEdge& d : sc.edges)
                supervertices.insert(gc.holder(d.message));
            for (const DemandEdge& d : sc.edges) {
                const ReceiverId& held_by = gc.holder(d.message);
                for (const ReceiverId& j : supervertices)
                    if (!(j == d.receiver) && !(j == held_by))
                        candidates.push_back(DemandEdge{d.message, j});
            }
        }
        if (static_cast<int>(candidates.size()) < params.extra_edges)
            continue;
        std::sort(candidates.begin(), candidates.end());
        rng.shuffle(candidates);

        std::set<DemandEdge> demands(gc.demands().begin(), gc.demands().end());
        for (int k = 0; k < params.extra_edges; ++k)
            demands.insert(candidates[static_cast<std::size_t>(k)]);
        DemandSupergraph problem(gc.receivers(), std::move(demands));
        return GeneratedInstance{std::move(problem), std::move(gc), std::move(packing)};
    }
    throw Error(Errc::retry_limit_exceeded,
                "could not generate a strongly connected instance in " +
                    std::to_string(params.max_attempts) + " attempts");
}

} // namespace uniprior
