#include "hamcycle/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hamcycle/core.hpp"
#include "hamcycle/harness.hpp"
#include "hamcycle/model.hpp"
#include "hamcycle/oracle.hpp"
#include "hamcycle/search.hpp"

namespace hamcycle::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flag values shared by the subcommands; unset flags stay empty.
struct Flags {
    std::optional<std::int64_t> n;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> ell;
    std::vector<double> p;
    std::vector<double> c;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 200;
    int jobs = 1;
    std::string input;
    std::string output;
    std::string format = "csv";
    std::string preset;
    bool sparse = false;
    bool independent = false;
};

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

template <class T>
T require(const std::optional<T>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing required flag ") + flag);
    return *v;
}

void emit(const Flags& f, std::ostream& out, const std::string& text) {
    if (f.output.empty()) {
        out << text;
    } else {
        write_file_atomic(f.output, text);
    }
}

// Either --input, or a sample described by --n --k --p --seed.
HypergraphInstance load_or_sample(const Flags& f, std::ostream& log) {
    if (!f.input.empty()) {
        std::ifstream in(f.input);
        if (!in) throw InvalidInputError("cannot open " + f.input);
        log << "# input=" << f.input << '\n';
        return read_hypergraph(in);
    }
    if (f.p.size() != 1) throw UsageError("need --input, or --n --k --p --seed with a single p");
    const ModelSpec spec{static_cast<Vertex>(require(f.n, "--n")), static_cast<unsigned>(require(f.k, "--k")),
                         f.p.front(), require(f.seed, "--seed")};
    log << "# sample n=" << spec.n << " k=" << spec.k << " p=" << fmt(spec.p) << " seed=" << spec.seed
        << " method=" << (f.sparse ? "sparse" : "dense") << '\n';
    return f.sparse ? sample_sparse(spec) : sample(spec);
}

void write_witness(std::ostream& os, const Hamperm& w) {
    os << "permutation";
    for (Vertex v : w.pi()) os << ' ' << v;
    os << '\n';
    for (const Edge& e : w.induced_edges()) {
        os << "edge";
        for (Vertex v : e.vertices()) os << ' ' << v;
        os << '\n';
    }
}

int cmd_sample(const Flags& f, std::ostream& out) {
    if (f.p.size() != 1) throw UsageError("sample needs exactly one --p");
    std::ostringstream text;
    const HypergraphInstance h = load_or_sample(f, text);
    write_hypergraph(text, h);
    emit(f, out, text.str());
    return kExitOk;
}

int cmd_check(const Flags& f, std::ostream& out) {
    std::ostringstream text;
    const HypergraphInstance h = load_or_sample(f, text);
    const auto ell = static_cast<unsigned>(require(f.ell, "--ell"));
    const SearchResult res = has_hamilton(h, ell);
    text << "# check n=" << h.n() << " k=" << h.k() << " ell=" << ell << '\n';
    text << "hamiltonian " << (res.found ? "yes" : "no") << '\n';
    text << "nodes_explored " << res.nodes_explored << '\n';
    if (res.witness) write_witness(text, *res.witness);
    emit(f, out, text.str());
    return kExitOk;
}

int cmd_count(const Flags& f, std::ostream& out) {
    std::ostringstream text;
    const HypergraphInstance h = load_or_sample(f, text);
    const auto ell = static_cast<unsigned>(require(f.ell, "--ell"));
    text << "# count n=" << h.n() << " k=" << h.k() << " ell=" << ell << '\n';
    text << "hamperms " << count_hamperms(h, ell) << '\n';
    text << "distinct_cycles " << count_distinct_cycles(h, ell) << '\n';
    if (f.input.empty()) {
        text << "expected_hamperms " << fmt(std::exp(log_expected_hamperms(h.n(), h.k(), ell, f.p.front())))
             << '\n';
    }
    emit(f, out, text.str());
    return kExitOk;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
    const CycleParams params = validate_params(require(f.n, "--n"), require(f.k, "--k"), require(f.ell, "--ell"));
    const NbaTable table = brute_force_nba(params);
    std::ostringstream text;
    text << "# oracle n=" << params.n << " k=" << params.k << " ell=" << params.ell << " m=" << params.m
         << " permutations=" << table.total() << '\n';
    text << "b,a,count,log_bound_basic,log_bound_refined,slack\n";
    text << "0,0," << table.zero_count << ",,,\n";
    for (const auto& [cell, count] : table.counts) {
        const auto [b, a] = cell;
        const LogBound basic = bound_nba_basic(params, b, a);
        std::string refined;
        if (params.tight()) refined = fmt(bound_nba_refined(params.n, params.k, b, a).value);
        text << b << ',' << a << ',' << count << ',' << fmt(basic.value) << ',' << refined << ','
             << fmt(basic.value - std::log(static_cast<double>(count))) << '\n';
    }
    for (double p : f.p) {
        const MomentReport m = exact_second_moment(table, p);
        text << "# moments p=" << fmt(p) << " log_ex=" << fmt(m.log_ex) << " log_ex2=" << fmt(m.log_ex2)
             << " ratio_minus_one=" << fmt(m.ratio_minus_one) << '\n';
    }
    emit(f, out, text.str());
    return kExitOk;
}

SweepSpec sweep_spec(const Flags& f) {
    const auto n = static_cast<Vertex>(require(f.n, "--n"));
    const auto k = static_cast<unsigned>(require(f.k, "--k"));
    SweepSpec spec;
    if (!f.preset.empty()) {
        std::optional<unsigned> ell;
        if (f.ell) ell = static_cast<unsigned>(*f.ell);
        spec = preset(f.preset, k, n, ell);
        if (f.ell && static_cast<unsigned>(*f.ell) != spec.ell) {
            throw UsageError("--ell conflicts with preset " + f.preset);
        }
    } else {
        spec.n = n;
        spec.k = k;
        spec.ell = static_cast<unsigned>(require(f.ell, "--ell"));
        spec.scaling = {k - std::min(spec.ell, k), false};
        spec.c_grid = default_c_grid();
    }
    if (!f.c.empty() && !f.p.empty()) throw UsageError("give either --c or --p, not both");
    if (!f.c.empty()) spec.c_grid = f.c;
    if (!f.p.empty()) {
        // A probability grid directly: p = c.
        spec.scaling = {0, false};
        spec.c_grid = f.p;
    }
    spec.trials = f.trials;
    spec.seed = require(f.seed, "--seed");
    spec.jobs = f.jobs;
    spec.coupled = !f.independent;
    return spec;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
    const SweepSpec spec = sweep_spec(f);
    err << "# jobs=" << spec.jobs << '\n';
    const SweepResult result = sweep(spec);
    std::ostringstream text;
    if (f.format == "json") {
        write_sweep_json(text, spec, result);
    } else {
        write_sweep_csv(text, spec, result);
    }
    emit(f, out, text.str());
    return kExitOk;
}

int cmd_pancyclic(const Flags& f, std::ostream& out, std::ostream& err) {
    std::ostringstream text;
    if (!f.input.empty() || f.p.empty()) {
        const HypergraphInstance h = load_or_sample(f, text);
        const PancyclicResult res = is_pancyclic(h);
        text << "# pancyclic n=" << h.n() << " k=" << h.k() << '\n';
        text << "pancyclic " << (res.pancyclic ? "yes" : "no") << '\n';
        if (res.first_missing) text << "first_missing " << *res.first_missing << '\n';
        emit(f, out, text.str());
        return kExitOk;
    }
    const auto n = static_cast<Vertex>(require(f.n, "--n"));
    const auto k = static_cast<unsigned>(require(f.k, "--k"));
    const std::uint64_t seed = require(f.seed, "--seed");
    err << "# jobs=" << f.jobs << '\n';
    const auto records = pancyclicity_sweep(n, k, f.p, f.trials, seed, f.jobs, !f.independent);
    if (f.format == "json") {
        write_pancyclic_json(text, records);
    } else {
        text << "# pancyclic-sweep n=" << n << " k=" << k << " trials=" << f.trials << " seed=" << seed
             << " sampling=" << (f.independent ? "independent" : "coupled") << '\n';
        write_pancyclic_csv(text, records);
    }
    emit(f, out, text.str());
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hamilton cycles in random uniform hypergraphs: sampling, exact search, "
                 "second-moment oracles and threshold sweeps"};
    app.require_subcommand(1);
    Flags f;

    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("--n", f.n, "vertex count");
        sub->add_option("--k", f.k, "uniformity");
        sub->add_option("--p", f.p, "edge probability (comma list where a grid is accepted)")
            ->delimiter(',');
        sub->add_option("--seed", f.seed, "64-bit seed (required for every random draw)");
        sub->add_option("--output", f.output, "write results here atomically instead of stdout");
    };

    auto* sample_cmd = app.add_subcommand("sample", "draw H(n, p, k) and print it");
    add_instance(sample_cmd);
    sample_cmd->add_flag("--sparse", f.sparse, "binomial edge count then distinct ranks");

    auto* check_cmd = app.add_subcommand("check", "decide ell-Hamiltonicity and print a witness");
    add_instance(check_cmd);
    check_cmd->add_option("--ell", f.ell, "overlap ell")->required();
    check_cmd->add_option("--input", f.input, "hypergraph file");
    check_cmd->add_flag("--sparse", f.sparse, "sample with the sparse sampler");

    auto* count_cmd = app.add_subcommand("count", "count hamperms and distinct Hamilton cycles");
    add_instance(count_cmd);
    count_cmd->add_option("--ell", f.ell, "overlap ell")->required();
    count_cmd->add_option("--input", f.input, "hypergraph file");
    count_cmd->add_flag("--sparse", f.sparse, "sample with the sparse sampler");

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force N(b,a) table with bounds as CSV");
    oracle_cmd->add_option("--n", f.n, "vertex count")->required();
    oracle_cmd->add_option("--k", f.k, "uniformity")->required();
    oracle_cmd->add_option("--ell", f.ell, "overlap ell")->required();
    oracle_cmd->add_option("--p", f.p, "report exact second moments at these p")->delimiter(',');
    oracle_cmd->add_option("--output", f.output, "output file");

    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo Hamiltonicity curve over a c grid");
    add_instance(sweep_cmd);
    sweep_cmd->add_option("--ell", f.ell, "overlap ell");
    sweep_cmd->add_option("--c", f.c, "ascending scale grid, comma separated")->delimiter(',');
    sweep_cmd->add_option("--preset", f.preset, "loose-k3 | loose-k | ell2 | mid-ell | tight");
    sweep_cmd->add_option("--trials", f.trials, "samples per grid point");
    sweep_cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_flag("--independent", f.independent, "fresh samples per grid point");

    auto* pan_cmd = app.add_subcommand("pancyclic", "pancyclicity of one hypergraph, or a sweep over --p");
    add_instance(pan_cmd);
    pan_cmd->add_option("--input", f.input, "hypergraph file");
    pan_cmd->add_option("--trials", f.trials, "samples per grid point");
    pan_cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    pan_cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    pan_cmd->add_flag("--independent", f.independent, "fresh samples per grid point");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*sample_cmd) return cmd_sample(f, out);
        if (*check_cmd) return cmd_check(f, out);
        if (*count_cmd) return cmd_count(f, out);
        if (*oracle_cmd) return cmd_oracle(f, out);
        if (*sweep_cmd) return cmd_sweep(f, out, err);
        if (*pan_cmd) return cmd_pancyclic(f, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace hamcycle::cli
