#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uniprior/gf.hpp"
#include "uniprior/minors.hpp"
#include "uniprior/solvers.hpp"
#include "uniprior/supergraph.hpp"
#include "uniprior/transforms.hpp"

namespace uniprior {

// Scalar linear index code over GF(q): one row per transmission, one column
// per message in the recorded order.
struct IndexCode {
    int q = 2;
    std::vector<MessageId> columns;
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<std::string> row_provenance; // optional cycle label per row

    int length() const { return static_cast<int>(rows.size()); }
    int width() const { return static_cast<int>(columns.size()); }
};

// The explicit code of a generalized cycle: for every cycle
// (x0,i1),(x1,i2),...,(x_{L-1},i0) in the packing, the L-1 difference
// transmissions x0-x1, x1-x2, ..., x_{L-2}-x_{L-1}. Requires a maximum
// packing so the total length is exactly n - nu_e.
IndexCode cyclic_code(const DemandSupergraph& gc,
                      const std::vector<SupergraphCycle>& packing, int q,
                      const SolverLimits& limits = {});

struct DemandVerdict {
    DemandEdge demand;
    bool decodable = false;
};

struct VerifyReport {
    std::vector<DemandVerdict> verdicts;
    bool all_decodable = false;

    int decodable_count() const;
};

// A demand (x, j) is decodable iff the indicator of x lies in the span of the
// code rows together with the indicators of j's side information.
VerifyReport verify_code(const DemandSupergraph& problem, const IndexCode& code);

struct OracleOptions {
    int q = 2;          // only GF(2) is supported
    int max_edges = 24; // search space is 2^edges
    int threads = 0;    // 0 = auto
};

// Minimum rank over all GF(2) matrices with unit diagonal whose off-diagonal
// support is contained in the side-information edges. Equals the optimal
// scalar linear code length.
int minrank_oracle(const SideInfoGraph& si, const OracleOptions& options = {});

struct BoundsReport {
    int n = 0;
    int nu_e = 0;
    int tau_e = 0;
    int lower = 0; // n - tau_e
    int upper = 0; // n - nu_e
    int achieved_length = 0;
    TightnessCertificate tightness;
    bool embedded_gc = false; // bounds taken on a spanning subgraph of the input
    std::vector<SupergraphCycle> packing;
    std::vector<DemandEdge> feedback_edges;
    IndexCode code;
};

struct BoundsOptions {
    int field_q = 2;
    SolverLimits limits;
    std::size_t search_budget = default_search_budget;
    MinorLimits minor_limits;
};

// Full report for a generalized cycle, or for a demand-decomposable
// supergraph via its discovered spanning generalized cycle.
BoundsReport bounds_report(const DemandSupergraph& g, const BoundsOptions& options = {});

// Code file format: "field <q>", "length <l>", "messages <m1> <m2> ...",
// then l lines of space-separated coefficients in [0, q).
IndexCode parse_code(std::string_view text);
std::string serialize_code(const IndexCode& code);

} // namespace uniprior
