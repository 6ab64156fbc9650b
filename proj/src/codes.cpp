#include "uniprior/codes.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "uniprior/error.hpp"

namespace uniprior {

int VerifyReport::decodable_count() const {
    int n = 0;
    for (const DemandVerdict& v : verdicts)
        if (v.decodable)
            ++n;
    return n;
}

namespace {

// Rows for the per-cycle difference transmissions. Validates that the packing
// is a set of pairwise edge-disjoint cycles of gc covering every demand.
IndexCode build_cyclic_rows(const DemandSupergraph& gc,
                            const std::vector<SupergraphCycle>& packing, int q) {
    const GaloisField& f = GaloisField::of(q);
    if (GcVerdict v = is_generalized_cycle(gc); !v.ok)
        throw Error(Errc::not_generalized_cycle, v.witness);
    std::set<DemandEdge> seen;
    for (std::size_t i = 0; i < packing.size(); ++i) {
        if (!is_valid_supergraph_cycle(gc, packing[i]))
            throw Error(Errc::invalid_packing,
                        "cycle " + std::to_string(i + 1) + " is not a cycle of the problem");
        for (const DemandEdge& d : packing[i].edges)
            if (!seen.insert(d).second)
                throw Error(Errc::invalid_packing, "cycles share demand edge (" +
                                                       d.message.label + ", " +
                                                       d.receiver.label + ")");
    }
    if (static_cast<int>(seen.size()) != gc.message_count())
        throw Error(Errc::invalid_packing, "packing does not cover every demand");

    std::map<MessageId, int> col;
    for (const MessageId& m : gc.messages())
        col.emplace(m, static_cast<int>(col.size()));

    IndexCode code;
    code.q = q;
    code.columns = gc.messages();
    for (std::size_t ci = 0; ci < packing.size(); ++ci) {
        const auto& edges = packing[ci].edges;
        std::string label = "C" + std::to_string(ci + 1);
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            std::vector<std::uint8_t> row(static_cast<std::size_t>(gc.message_count()), 0);
            row[static_cast<std::size_t>(col.at(edges[k].message))] = 1;
            row[static_cast<std::size_t>(col.at(edges[k + 1].message))] = f.neg(1);
            code.rows.push_back(std::move(row));
            code.row_provenance.push_back(label);
        }
    }
    return code;
}

} // namespace

IndexCode cyclic_code(const DemandSupergraph& gc,
                      const std::vector<SupergraphCycle>& packing, int q,
                      const SolverLimits& limits) {
    IndexCode code = build_cyclic_rows(gc, packing, q);
    SupergraphSolution sol = supergraph_nu_tau(gc, limits);
    if (static_cast<int>(packing.size()) != sol.nu_e)
        throw Error(Errc::packing_not_maximum,
                    "packing has " + std::to_string(packing.size()) + " cycles but nu_e is " +
                        std::to_string(sol.nu_e) + "; length would exceed n - nu_e");
    if (code.length() != gc.message_count() - sol.nu_e)
        throw std::logic_error("cyclic code length is not n - nu_e");
    return code;
}

VerifyReport verify_code(const DemandSupergraph& problem, const IndexCode& code) {
    const GaloisField& f = GaloisField::of(code.q);
    std::vector<MessageId> sorted_cols(code.columns);
    std::sort(sorted_cols.begin(), sorted_cols.end());
    if (sorted_cols != problem.messages())
        throw Error(Errc::dimension_mismatch,
                    "code columns do not match the problem's message set");
    std::map<MessageId, int> col;
    for (std::size_t i = 0; i < code.columns.size(); ++i)
        if (!col.emplace(code.columns[i], static_cast<int>(i)).second)
            throw Error(Errc::dimension_mismatch,
                        "duplicate code column " + code.columns[i].label);
    int width = code.width();
    for (const auto& row : code.rows)
        if (static_cast<int>(row.size()) != width)
            throw Error(Errc::dimension_mismatch, "code row width mismatch");

    VerifyReport report;
    report.all_decodable = true;
    for (const auto& [r, side] : problem.receivers()) {
        std::vector<DemandEdge> mine = problem.demands_of(r);
        if (mine.empty())
            continue;
        GFMatrix known(f, 0, width);
        for (const auto& row : code.rows)
            known.append_row(row);
        for (const MessageId& m : side) {
            std::vector<std::uint8_t> ind(static_cast<std::size_t>(width), 0);
            ind[static_cast<std::size_t>(col.at(m))] = 1;
            known.append_row(ind);
        }
        for (const DemandEdge& d : mine) {
            std::vector<std::uint8_t> ind(static_cast<std::size_t>(width), 0);
            ind[static_cast<std::size_t>(col.at(d.message))] = 1;
            bool ok = known.in_row_span(ind);
            report.verdicts.push_back({d, ok});
            report.all_decodable = report.all_decodable && ok;
        }
    }
    std::sort(report.verdicts.begin(), report.verdicts.end(),
              [](const DemandVerdict& a, const DemandVerdict& b) { return a.demand < b.demand; });
    return report;
}

namespace {

int gf2_rank_capped(std::uint64_t* rows, int n, int cap) {
    std::uint64_t pivot[64] = {};
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t cur = rows[i];
        while (cur) {
            int b = 63 - std::countl_zero(cur);
            if (!pivot[b]) {
                pivot[b] = cur;
                if (++rank >= cap)
                    return rank; // cannot beat the incumbent
                break;
            }
            cur ^= pivot[b];
        }
    }
    return rank;
}

} // namespace

int minrank_oracle(const SideInfoGraph& si, const OracleOptions& options) {
    if (options.q != 2)
        throw Error(Errc::unsupported_field, "minrank oracle supports GF(2) only");
    int n = si.graph.vertex_count();
    int m = si.graph.edge_count();
    if (m > options.max_edges)
        throw Error(Errc::too_large, "side-information graph has " + std::to_string(m) +
                                         " edges; oracle limit is " +
                                         std::to_string(options.max_edges));
    if (n > 64)
        throw Error(Errc::too_large, "oracle supports at most 64 messages");
    if (n == 0)
        return 0;

    std::vector<std::uint64_t> base(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        base[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
    std::vector<std::pair<int, std::uint64_t>> free_bits;
    free_bits.reserve(static_cast<std::size_t>(m));
    for (const auto& e : si.graph.edges())
        free_bits.emplace_back(e.tail, std::uint64_t{1} << e.head);

    const std::uint64_t total = std::uint64_t{1} << m;
    std::atomic<int> best{n};

    int threads = options.threads > 0
                      ? options.threads
                      : std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    if (static_cast<std::uint64_t>(threads) > total)
        threads = static_cast<int>(total);

    auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            int cap = best.load(std::memory_order_relaxed);
            if (cap <= 1)
                return; // rank 1 is the floor for a unit diagonal
            std::copy(base.begin(), base.end(), rows.begin());
            std::uint64_t bits = mask;
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                rows[static_cast<std::size_t>(free_bits[static_cast<std::size_t>(b)].first)] |=
                    free_bits[static_cast<std::size_t>(b)].second;
            }
            int r = gf2_rank_capped(rows.data(), n, cap);
            if (r < cap) {
                int cur = best.load(std::memory_order_relaxed);
                while (r < cur && !best.compare_exchange_weak(cur, r)) {
                }
            }
        }
    };

    if (threads <= 1) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = total / static_cast<std::uint64_t>(threads);
        for (int t = 0; t < threads; ++t) {
            std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
            std::uint64_t hi = (t + 1 == threads) ? total : lo + chunk;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool)
            th.join();
    }
    return best.load();
}

BoundsReport bounds_report(const DemandSupergraph& g, const BoundsOptions& options) {
    DemandSupergraph gc = g;
    std::vector<SupergraphCycle> witness;
    bool embedded = false;
    if (!is_generalized_cycle(g).ok) {
        auto sp = find_spanning_generalized_cycle(g, options.search_budget);
        if (!sp)
            throw Error(Errc::not_applicable,
                        "problem is neither a generalized cycle nor demand-decomposable");
        gc = std::move(sp->gc);
        witness = std::move(sp->packing);
        embedded = true;
    }
    SupergraphSolution sol = supergraph_nu_tau(gc, options.limits);
    if (!embedded)
        witness = sol.packing;

    BoundsReport report;
    report.n = gc.message_count();
    report.nu_e = sol.nu_e;
    report.tau_e = sol.tau_e;
    report.lower = report.n - report.tau_e;
    report.upper = report.n - report.nu_e;
    report.embedded_gc = embedded;
    report.packing = witness;
    report.feedback_edges = sol.feedback_edges;
    report.code = build_cyclic_rows(gc, witness, options.field_q);
    report.achieved_length = report.code.length();
    report.tightness =
        classify_tightness(to_eulerian(gc), sol.nu_e, sol.tau_e, options.minor_limits);
    return report;
}

IndexCode parse_code(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    IndexCode code;
    int declared_length = -1;
    enum { want_field, want_length, want_messages, want_rows } state = want_field;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word))
            continue;
        switch (state) {
        case want_field: {
            if (word != "field" || !(ls >> code.q))
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected 'field <q>'");
            state = want_length;
            break;
        }
        case want_length: {
            if (word != "length" || !(ls >> declared_length) || declared_length < 0)
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected 'length <l>'");
            state = want_messages;
            break;
        }
        case want_messages: {
            if (word != "messages")
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected 'messages ...'");
            std::string id;
            while (ls >> id)
                code.columns.push_back(MessageId{id});
            if (code.columns.empty())
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": no messages listed");
            state = want_rows;
            break;
        }
        case want_rows: {
            std::vector<std::uint8_t> row;
            ls.clear();
            ls.str(line);
            int value = 0;
            while (ls >> value) {
                if (value < 0 || value >= code.q)
                    throw Error(Errc::syntax_error, "line " + std::to_string(lineno) +
                                                        ": coefficient out of range");
                row.push_back(static_cast<std::uint8_t>(value));
            }
            if (row.size() != code.columns.size())
                throw Error(Errc::syntax_error,
                            "line " + std::to_string(lineno) + ": expected " +
                                std::to_string(code.columns.size()) + " coefficients");
            code.rows.push_back(std::move(row));
            break;
        }
        }
    }
    if (state != want_rows)
        throw Error(Errc::syntax_error, "incomplete code file");
    if (declared_length != static_cast<int>(code.rows.size()))
        throw Error(Errc::syntax_error,
                    "declared length " + std::to_string(declared_length) + " but " +
                        std::to_string(code.rows.size()) + " rows present");
    GaloisField::of(code.q); // reject unsupported fields early
    return code;
}

std::string serialize_code(const IndexCode& code) {
    std::ostringstream out;
    out << "field " << code.q << "\n";
    out << "length " << code.length() << "\n";
    out << "messages";
    for (const MessageId& m : code.columns)
        out << " " << m.label;
    out << "\n";
    for (const auto& row : code.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? " " : "") << int(row[i]);
        out << "\n";
    }
    return out.str();
}

} // namespace uniprior
