#pragma once

#include <cstdint>
#include <vector>

#include "uniprior/supergraph.hpp"

namespace uniprior {

struct GenParams {
    int receivers = 4;       // m >= 2
    int cycles = 2;          // r >= 1 superposed random cycles
    int extra_edges = 0;     // k extra intra-cycle demands
    std::uint64_t seed = 0;
    int max_attempts = 200;
};

struct GeneratedInstance {
    DemandSupergraph problem;
    DemandSupergraph gc;                  // equals problem when extra_edges == 0
    std::vector<SupergraphCycle> packing; // the superposed cycles, as a witness
};

// Superposes `cycles` random directed simple cycles on `receivers` vertices,
// retries until the union is strongly connected, converts to a generalized
// cycle, and optionally adds extra demands that stay inside single cycles of
// the recorded packing (so the result is demand-decomposable by it). Fully
// determined by the seed.
GeneratedInstance gen_instance(const GenParams& params);

} // namespace uniprior
