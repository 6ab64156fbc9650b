#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "uniprior/codes.hpp"
#include "uniprior/error.hpp"
#include "uniprior/generator.hpp"
#include "uniprior/minors.hpp"
#include "uniprior/multigraph.hpp"
#include "uniprior/solvers.hpp"
#include "uniprior/supergraph.hpp"
#include "uniprior/transforms.hpp"

using namespace uniprior;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io_error, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::io_error, "cannot write " + path);
    out << content;
}

// First directive decides the format: "receiver" lines are instances,
// "vertices" lines are graphs.
bool looks_like_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (ls >> word)
            return word == "receiver" || word == "side" || word == "demand";
    }
    return false;
}

std::string render_cycle(const SupergraphCycle& c) {
    std::string out;
    for (const DemandEdge& d : c.edges)
        out += " (" + d.message.label + "," + d.receiver.label + ")";
    return out;
}

std::string render_row(const IndexCode& code, std::size_t r) {
    const GaloisField& f = GaloisField::of(code.q);
    std::vector<std::pair<std::string, std::uint8_t>> terms;
    for (std::size_t c = 0; c < code.columns.size(); ++c)
        if (code.rows[r][c] != 0)
            terms.emplace_back(code.columns[c].label, code.rows[r][c]);
    if (terms.size() == 2 && terms[0].second == 1 && terms[1].second == f.neg(1))
        return terms[0].first + " - " + terms[1].first;
    if (terms.size() == 2 && terms[1].second == 1 && terms[0].second == f.neg(1))
        return terms[1].first + " - " + terms[0].first;
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i)
            out += " + ";
        if (terms[i].second != 1)
            out += std::to_string(int(terms[i].second)) + "*";
        out += terms[i].first;
    }
    return out.empty() ? "0" : out;
}

struct RunConfig {
    std::string input;
    std::string second_input;
    std::string out_path;
    int field_q = 2;
    std::string mode = "exact";
    std::size_t cycle_cap = default_cycle_limit;
    std::size_t budget = 10'000'000;
    int oracle_max_edges = 24;
    int minor_vertex_limit = 16;
    std::uint64_t seed = 0;
    int receivers = 4;
    int cycles = 2;
    int extra = 0;
    int trials = 100;
    int threads = 0;

    SolverLimits solver_limits() const { return SolverLimits{cycle_cap, budget}; }
    MinorLimits minor_limits() const { return MinorLimits{minor_vertex_limit, budget}; }
};

void emit(const RunConfig& cfg, const std::string& machine_text) {
    if (!cfg.out_path.empty())
        write_file(cfg.out_path, machine_text);
}

int cmd_validate(const RunConfig& cfg) {
    DemandSupergraph g = parse_problem(read_file(cfg.input));
    std::cout << "valid instance: m=" << g.receiver_count() << " receivers, n="
              << g.message_count() << " messages, " << g.demands().size() << " demands\n";
    emit(cfg, serialize_problem(g));
    return 0;
}

int cmd_classify(const RunConfig& cfg) {
    DemandSupergraph g = parse_problem(read_file(cfg.input));
    GcVerdict v = is_generalized_cycle(g);
    if (v.ok) {
        std::cout << "generalized-cycle: yes\n";
        return 0;
    }
    std::cout << "generalized-cycle: no (" << v.witness << ")\n";
    auto sp = find_spanning_generalized_cycle(g, cfg.budget);
    if (sp) {
        std::cout << "demand-decomposable: yes (" << sp->packing.size() << " cycles)\n";
        for (std::size_t i = 0; i < sp->packing.size(); ++i)
            std::cout << "cycle C" << (i + 1) << ":" << render_cycle(sp->packing[i]) << "\n";
    } else {
        std::cout << "demand-decomposable: no\n";
    }
    return 0;
}

int cmd_bounds(const RunConfig& cfg) {
    DemandSupergraph g = parse_problem(read_file(cfg.input));
    BoundsOptions options;
    options.field_q = cfg.field_q;
    options.limits = cfg.solver_limits();
    options.search_budget = cfg.budget;
    options.minor_limits = cfg.minor_limits();
    BoundsReport r = bounds_report(g, options);

    std::string tight = tightness_name(r.tightness.kind);
    std::cout << "n=" << r.n << " nu_e=" << r.nu_e << " tau_e=" << r.tau_e
              << " lower=" << r.lower << " upper=" << r.upper << " tight=" << tight << "\n";
    if (r.embedded_gc)
        std::cout << "bounds computed on an embedded spanning generalized cycle\n";
    for (std::size_t i = 0; i < r.packing.size(); ++i)
        std::cout << "cycle C" << (i + 1) << ":" << render_cycle(r.packing[i]) << "\n";
    std::cout << "feedback edges:";
    for (const DemandEdge& d : r.feedback_edges)
        std::cout << " (" << d.message.label << "," << d.receiver.label << ")";
    std::cout << "\n";
    std::cout << "code over GF(" << r.code.q << "), length " << r.code.length() << ":\n";
    for (std::size_t i = 0; i < r.code.rows.size(); ++i) {
        std::cout << "  row " << (i + 1);
        if (i < r.code.row_provenance.size())
            std::cout << " [" << r.code.row_provenance[i] << "]";
        std::cout << " " << render_row(r.code, i) << "\n";
    }

    std::ostringstream machine;
    machine << "n " << r.n << "\n"
            << "nu_e " << r.nu_e << "\n"
            << "tau_e " << r.tau_e << "\n"
            << "lower " << r.lower << "\n"
            << "upper " << r.upper << "\n"
            << "achieved_length " << r.achieved_length << "\n"
            << "tightness " << tight << "\n"
            << "embedded_gc " << (r.embedded_gc ? 1 : 0) << "\n";
    for (const SupergraphCycle& c : r.packing) {
        machine << "cycle";
        for (const DemandEdge& d : c.edges)
            machine << " " << d.message.label << "," << d.receiver.label;
        machine << "\n";
    }
    for (const DemandEdge& d : r.feedback_edges)
        machine << "feedback_edge " << d.message.label << "," << d.receiver.label << "\n";
    emit(cfg, machine.str());
    return 0;
}

int cmd_pack(const RunConfig& cfg) {
    std::string text = read_file(cfg.input);
    PackingMode mode = cfg.mode == "greedy" ? PackingMode::greedy : PackingMode::exact;
    if (looks_like_instance(text)) {
        DemandSupergraph g = parse_problem(text);
        EulerianView view = to_eulerian(g);
        CyclePacking packing = max_edge_disjoint_packing(view.graph, mode, cfg.solver_limits());
        std::cout << (mode == PackingMode::exact ? "nu_e=" : "greedy packing size=")
                  << packing.size() << "\n";
        for (std::size_t i = 0; i < packing.cycles.size(); ++i)
            std::cout << "cycle C" << (i + 1) << ":"
                      << render_cycle(to_supergraph_cycle(view, packing.cycles[i])) << "\n";
    } else {
        DirectedMultigraph g = parse_multigraph(text);
        CyclePacking packing = max_edge_disjoint_packing(g, mode, cfg.solver_limits());
        std::cout << (mode == PackingMode::exact ? "nu_e=" : "greedy packing size=")
                  << packing.size() << "\n";
        for (std::size_t i = 0; i < packing.cycles.size(); ++i) {
            std::cout << "cycle C" << (i + 1) << ":";
            for (int e : packing.cycles[i].edges)
                std::cout << " " << e << "(" << g.tail(e) << "->" << g.head(e) << ")";
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_fes(const RunConfig& cfg) {
    std::string text = read_file(cfg.input);
    if (looks_like_instance(text)) {
        DemandSupergraph g = parse_problem(text);
        EulerianView view = to_eulerian(g);
        FeedbackEdgeSet fes = min_feedback_edge_set(view.graph, cfg.solver_limits());
        std::cout << "tau_e=" << fes.size() << "\n";
        std::cout << "feedback edges:";
        for (const DemandEdge& d : to_demand_edges(view, fes.edges))
            std::cout << " (" << d.message.label << "," << d.receiver.label << ")";
        std::cout << "\n";
    } else {
        DirectedMultigraph g = parse_multigraph(text);
        FeedbackEdgeSet fes = min_feedback_edge_set(g, cfg.solver_limits());
        std::cout << "tau_e=" << fes.size() << "\n";
        std::cout << "feedback edges:";
        for (int e : fes.edges)
            std::cout << " " << e << "(" << g.tail(e) << "->" << g.head(e) << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_code(const RunConfig& cfg) {
    DemandSupergraph g = parse_problem(read_file(cfg.input));
    SupergraphSolution sol = supergraph_nu_tau(g, cfg.solver_limits());
    IndexCode code = cyclic_code(g, sol.packing, cfg.field_q, cfg.solver_limits());
    std::cout << "cyclic code over GF(" << code.q << "), length " << code.length() << ":\n";
    for (std::size_t i = 0; i < code.rows.size(); ++i)
        std::cout << "  row " << (i + 1) << " [" << code.row_provenance[i] << "] "
                  << render_row(code, i) << "\n";
    emit(cfg, serialize_code(code));
    if (cfg.out_path.empty())
        std::cout << serialize_code(code);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    DemandSupergraph g = parse_problem(read_file(cfg.input));
    IndexCode code = parse_code(read_file(cfg.second_input));
    VerifyReport report = verify_code(g, code);
    for (const DemandVerdict& v : report.verdicts)
        std::cout << "demand (" << v.demand.message.label << "," << v.demand.receiver.label
                  << "): " << (v.decodable ? "decodable" : "NOT decodable") << "\n";
    std::cout << report.decodable_count() << "/" << report.verdicts.size()
              << " demands decodable\n";
    return report.all_decodable ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg) {
    DemandSupergraph g = parse_problem(read_file(cfg.input));
    SideInfoGraph si = to_side_information_graph(g);
    OracleOptions options;
    options.q = cfg.field_q;
    options.max_edges = cfg.oracle_max_edges;
    options.threads = cfg.threads;
    int l = minrank_oracle(si, options);
    std::cout << "minrank=" << l << " (side-information graph: " << si.graph.vertex_count()
              << " vertices, " << si.graph.edge_count() << " edges)\n";
    return 0;
}

int cmd_petersen(const RunConfig& cfg) {
    const auto& family = petersen_family();
    if (cfg.input.empty()) {
        std::cout << "petersen family: " << family.size() << " graphs\n";
        for (std::size_t i = 0; i < family.size(); ++i)
            std::cout << "  member " << (i + 1) << ": " << family[i].vertex_count
                      << " vertices, " << family[i].edge_count() << " edges\n";
        return 0;
    }
    std::string text = read_file(cfg.input);
    UndirectedGraph u;
    if (looks_like_instance(text)) {
        DemandSupergraph g = parse_problem(text);
        u = underlying_undirected(to_eulerian(g).graph);
    } else {
        u = parse_undirected(text);
    }
    bool any = false;
    for (std::size_t i = 0; i < family.size(); ++i) {
        bool found = has_minor(u, family[i], cfg.minor_limits());
        any = any || found;
        std::cout << "member " << (i + 1) << " (" << family[i].vertex_count
                  << " vertices): " << (found ? "minor present" : "minor-free") << "\n";
    }
    std::cout << "petersen-minor-free: " << (any ? "no" : "yes") << "\n";
    return 0;
}

int cmd_gen(const RunConfig& cfg) {
    GenParams params;
    params.receivers = cfg.receivers;
    params.cycles = cfg.cycles;
    params.extra_edges = cfg.extra;
    params.seed = cfg.seed;
    GeneratedInstance inst = gen_instance(params);
    std::string text = serialize_problem(inst.problem);
    if (cfg.out_path.empty())
        std::cout << text;
    else
        write_file(cfg.out_path, text);
    return 0;
}

// Stretch utility: hunt for instances with nu_e < tau_e. None are expected at
// small sizes; the search reports whatever it finds.
int cmd_gapsearch(const RunConfig& cfg) {
    for (int t = 0; t < cfg.trials; ++t) {
        GenParams params;
        params.receivers = cfg.receivers;
        params.cycles = cfg.cycles;
        params.seed = cfg.seed + static_cast<std::uint64_t>(t);
        std::optional<GeneratedInstance> inst;
        try {
            inst = gen_instance(params);
        } catch (const Error& e) {
            if (e.code() == Errc::retry_limit_exceeded)
                continue;
            throw;
        }
        SupergraphSolution sol = supergraph_nu_tau(inst->gc, cfg.solver_limits());
        if (sol.nu_e < sol.tau_e) {
            std::cout << "gap found at seed " << params.seed << ": nu_e=" << sol.nu_e
                      << " tau_e=" << sol.tau_e << "\n";
            std::cout << serialize_problem(inst->gc);
            return 0;
        }
    }
    std::cout << "no gap instance found in " << cfg.trials << " trials\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniprior index coding bounds, explicit cyclic codes and certificates"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_limits = [&](CLI::App* sub) {
        sub->add_option("--cycle-cap", cfg.cycle_cap, "cycle enumeration cap");
        sub->add_option("--budget", cfg.budget, "search node budget");
    };

    CLI::App* validate = app.add_subcommand("validate", "parse and validate an instance");
    validate->add_option("input", cfg.input, "instance file")->required();
    validate->add_option("--out", cfg.out_path, "write canonical form here");

    CLI::App* classify = app.add_subcommand("classify", "generalized-cycle / decomposable test");
    classify->add_option("input", cfg.input, "instance file")->required();
    add_limits(classify);

    CLI::App* bounds = app.add_subcommand("bounds", "lower/upper bounds with certificates");
    bounds->add_option("input", cfg.input, "instance file")->required();
    bounds->add_option("--field", cfg.field_q, "field size for the emitted code");
    bounds->add_option("--minor-vertex-limit", cfg.minor_vertex_limit, "minor test size cap");
    bounds->add_option("--out", cfg.out_path, "write machine-readable report here");
    add_limits(bounds);

    CLI::App* pack = app.add_subcommand("pack", "maximum edge-disjoint cycle packing");
    pack->add_option("input", cfg.input, "instance or multigraph file")->required();
    pack->add_option("--mode", cfg.mode, "exact|greedy")
        ->check(CLI::IsMember({"exact", "greedy"}));
    add_limits(pack);

    CLI::App* fes = app.add_subcommand("fes", "minimum feedback edge set");
    fes->add_option("input", cfg.input, "instance or multigraph file")->required();
    add_limits(fes);

    CLI::App* code = app.add_subcommand("code", "emit the explicit cyclic code");
    code->add_option("input", cfg.input, "instance file")->required();
    code->add_option("--field", cfg.field_q, "field size");
    code->add_option("--out", cfg.out_path, "write code file here");
    add_limits(code);

    CLI::App* verify = app.add_subcommand("verify", "check a code against an instance");
    verify->add_option("input", cfg.input, "instance file")->required();
    verify->add_option("code", cfg.second_input, "code file")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive minrank over GF(2)");
    oracle->add_option("input", cfg.input, "instance file")->required();
    oracle->add_option("--field", cfg.field_q, "field size (only 2)");
    oracle->add_option("--oracle-max-edges", cfg.oracle_max_edges, "edge cap (2^edges work)");
    oracle->add_option("--threads", cfg.threads, "worker threads (0 = auto)");

    CLI::App* petersen = app.add_subcommand("petersen", "petersen family / minor test");
    petersen->add_option("input", cfg.input, "undirected graph or instance file");
    petersen->add_option("--minor-vertex-limit", cfg.minor_vertex_limit, "minor test size cap");
    petersen->add_option("--budget", cfg.budget, "search node budget");

    CLI::App* gen = app.add_subcommand("gen", "seeded random instance generator");
    gen->add_option("-m,--receivers", cfg.receivers, "supervertex count (>= 2)");
    gen->add_option("-r,--cycles", cfg.cycles, "superposed cycles (>= 1)");
    gen->add_option("-k,--extra", cfg.extra, "extra intra-cycle demands");
    gen->add_option("--seed", cfg.seed, "random seed");
    gen->add_option("--out", cfg.out_path, "write instance here");

    CLI::App* gapsearch = app.add_subcommand("gapsearch", "search for nu_e < tau_e instances");
    gapsearch->add_option("-m,--receivers", cfg.receivers, "supervertex count");
    gapsearch->add_option("-r,--cycles", cfg.cycles, "superposed cycles");
    gapsearch->add_option("--trials", cfg.trials, "instances to try");
    gapsearch->add_option("--seed", cfg.seed, "base seed");
    add_limits(gapsearch);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return cmd_validate(cfg);
        if (classify->parsed())
            return cmd_classify(cfg);
        if (bounds->parsed())
            return cmd_bounds(cfg);
        if (pack->parsed())
            return cmd_pack(cfg);
        if (fes->parsed())
            return cmd_fes(cfg);
        if (code->parsed())
            return cmd_code(cfg);
        if (verify->parsed())
            return cmd_verify(cfg);
        if (oracle->parsed())
            return cmd_oracle(cfg);
        if (petersen->parsed())
            return cmd_petersen(cfg);
        if (gen->parsed())
            return cmd_gen(cfg);
        if (gapsearch->parsed())
            return cmd_gapsearch(cfg);
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return is_limit_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
