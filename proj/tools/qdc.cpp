// qdc: dense-coding capacity of noisy multiparty resource states.
//
// Exit codes: 0 success, 1 numeric failure (or failed validation/table
// check), 2 usage error.

#include "qdc/analysis.hpp"
#include "qdc/errors.hpp"
#include "qdc/oracles.hpp"
#include "qdc/parallel.hpp"
#include "qdc/record.hpp"
#include "qdc/tables.hpp"
#include "qdc/textio.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct ProblemArgs {
    std::string state;
    int senders = 2;
    int receivers = 1;
    int split = 1;
    std::string channel;
    qdc::OptimizerConfig opt;
    bool no_optimize = false;
};

struct QuenchArgs {
    long realizations = 4000;
    std::uint64_t seed = 1;
    bool optimize_per_realization = false;
};

struct OutputArgs {
    std::string format = "json";
    std::string out;
};

void add_problem_options(CLI::App* app, ProblemArgs& a) {
    app->add_option("--state", a.state, "Resource state, e.g. gghz:n=3,x=0.70711, w:n=4, whalf:n=3,b=0.25, bell")
        ->required();
    app->add_option("--senders", a.senders, "Number of sender qubits")->check(CLI::Range(1, 4));
    app->add_option("--receivers", a.receivers, "Number of receivers")->check(CLI::IsMember({1, 2}));
    app->add_option("--split", a.split, "Two receivers: senders reporting to the first receiver");
    app->add_option("--channel", a.channel, "Noise, e.g. dephasing:alpha=0.5,p=0.2 or depolarizing:alpha=0.3,p=0.05,eps=0.5")
        ->required();
    app->add_option("--opt-seed", a.opt.seed, "Optimizer seed");
    app->add_option("--population", a.opt.population, "ES population (0: 20 x parameter count)");
    app->add_option("--max-evals", a.opt.max_evaluations, "Objective evaluation budget");
    app->add_option("--restarts", a.opt.restarts, "Optimizer restarts");
    app->add_option("--tolerance", a.opt.tolerance, "Optimizer convergence tolerance");
    app->add_flag("--no-optimize", a.no_optimize, "Use the identity encoding only");
}

void add_quench_options(CLI::App* app, QuenchArgs& q) {
    app->add_option("--realizations", q.realizations, "Random-channel realizations")->check(CLI::PositiveNumber);
    app->add_option("--seed", q.seed, "Master seed of the random-channel draws");
    app->add_flag("--optimize-per-realization", q.optimize_per_realization,
                  "Optimize the encoding for every realization");
}

void add_output_options(CLI::App* app, OutputArgs& o) {
    app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", o.out, "Output file (default: stdout)");
}

qdc::Problem make_problem(const ProblemArgs& a) {
    qdc::Problem pr;
    pr.state = qdc::parse_state(a.state);
    pr.layout.n_senders = a.senders;
    pr.layout.two_receivers = a.receivers == 2;
    pr.layout.split = a.split;
    pr.channel = qdc::parse_channel(a.channel);
    pr.opt = a.opt;
    pr.opt.enabled = !a.no_optimize;
    qdc::validate(pr);
    return pr;
}

qdc::QuenchConfig make_quench(const QuenchArgs& q, int threads) {
    qdc::QuenchConfig qc;
    qc.realizations = q.realizations;
    qc.master_seed = q.seed;
    qc.optimize_per_realization = q.optimize_per_realization;
    qc.threads = threads;
    return qc;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(path);
    if (!f) throw qdc::DomainError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

void emit(const std::vector<qdc::RunRecord>& records, const OutputArgs& o) {
    std::string text;
    if (o.format == "csv") {
        text = qdc::csv_header_line() + "\n";
        for (const auto& r : records) text += qdc::to_csv_row(r) + "\n";
    } else {
        for (const auto& r : records) text += qdc::to_json(r) + "\n";
    }
    write_output(o.out, text);
}

qdc::SweepAxis parse_axis(const std::string& axis, std::string& state_key) {
    if (axis == "p") return qdc::SweepAxis::P;
    if (axis == "alpha") return qdc::SweepAxis::Alpha;
    state_key = axis;
    return qdc::SweepAxis::StateParam;
}

// Reads `key = value` lines (blank lines and # comments skipped) and turns
// them into flags placed right after the subcommand, so that flags given on
// the command line, which come later, take precedence.
std::vector<std::string> config_args(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qdc::DomainError("cannot read config file '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw qdc::DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.starts_with("--")) key.erase(0, 2);
        if (value == "true") {
            out.push_back("--" + key);
        } else if (value != "false") {
            out.push_back("--" + key);
            out.push_back(value);
        }
    }
    return out;
}

// argv with the contents of any --config FILE spliced in after the subcommand.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    const auto extra = config_args(path);
    const std::size_t at = args.empty() ? 0 : 1;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
    return args;
}

int run(int argc, char** argv) {
    CLI::App app{"Dense-coding capacity of noisy multiparty resource states"};
    app.set_version_flag("--version", qdc::tool_version());
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", "key = value file mirroring the long flags; command-line flags win");

    int threads = qdc::default_thread_count();
    const auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "Worker threads (default: QDC_THREADS or core count)")
            ->check(CLI::PositiveNumber);
    };

    // capacity
    ProblemArgs cap_args;
    OutputArgs cap_out;
    auto* cap = app.add_subcommand("capacity", "Capacity (or two-receiver bound) of one deterministic problem");
    add_problem_options(cap, cap_args);
    add_output_options(cap, cap_out);

    // quench
    ProblemArgs q_args;
    QuenchArgs q_q;
    OutputArgs q_out;
    auto* quench = app.add_subcommand("quench", "Quenched mean capacity under a random channel");
    add_problem_options(quench, q_args);
    add_quench_options(quench, q_q);
    add_output_options(quench, q_out);
    add_threads(quench);

    // critical
    ProblemArgs c_args;
    QuenchArgs c_q;
    OutputArgs c_out;
    qdc::ScanConfig scan;
    bool no_pa = false;
    auto* critical = app.add_subcommand("critical", "Critical noise strengths p_c, p_r, p_a (the channel's p is ignored)");
    add_problem_options(critical, c_args);
    add_quench_options(critical, c_q);
    add_output_options(critical, c_out);
    add_threads(critical);
    critical->add_option("--scan-step", scan.scan_step, "Forward scan step in p")->check(CLI::PositiveNumber);
    critical->add_option("--refine", scan.refine, "Final bracket width")->check(CLI::PositiveNumber);
    critical->add_flag("--no-pa", no_pa, "Skip the non-Markovian advantage search");

    // sweep
    ProblemArgs s_args;
    QuenchArgs s_q;
    OutputArgs s_out;
    std::string axis = "p";
    qdc::SweepSpec sweep_spec;
    auto* sweep = app.add_subcommand("sweep", "Capacity along a grid in p, alpha or a state parameter");
    add_problem_options(sweep, s_args);
    add_quench_options(sweep, s_q);
    add_output_options(sweep, s_out);
    add_threads(sweep);
    sweep->add_option("--axis", axis, "p, alpha, or a state parameter key (x, a, b, c)");
    sweep->add_option("--from", sweep_spec.lo, "Grid start")->required();
    sweep->add_option("--to", sweep_spec.hi, "Grid end")->required();
    sweep->add_option("--steps", sweep_spec.steps, "Grid points, both ends included")->check(CLI::PositiveNumber);

    // validate
    std::string v_format = "text";
    qdc::OptimizerConfig v_opt;
    auto* validate = app.add_subcommand("validate", "Compare the numerics against closed-form results");
    validate->add_option("--format", v_format, "Output format")->check(CLI::IsMember({"text", "json"}));
    validate->add_option("--opt-seed", v_opt.seed, "Optimizer seed");

    // table
    std::string which;
    std::string t_out;
    qdc::TableOptions t_opts;
    auto* table = app.add_subcommand("table", "Critical-strength tables against reference values");
    table->add_option("--which", which, "I (dephasing), II (depolarizing) or III (random depolarizing)")->required();
    table->add_option("--out", t_out, "CSV output file (default: stdout)");
    table->add_option("--realizations", t_opts.realizations, "Realizations for the random-channel table")->check(CLI::PositiveNumber);
    table->add_option("--seed", t_opts.master_seed, "Master seed for the random-channel table");
    table->add_option("--opt-seed", t_opts.opt.seed, "Optimizer seed");
    table->add_flag("--fast", t_opts.fast, "Random-channel table: six-cell subset at 500 realizations");
    add_threads(table);

    const std::vector<std::string> args = expand_config(argc, argv);
    std::vector<const char*> cargs{argv[0]};
    for (const auto& s : args) cargs.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*cap) {
        const qdc::Problem pr = make_problem(cap_args);
        if (pr.channel.is_random())
            throw qdc::DomainError("capacity: random channels (eps > 0) need the quench subcommand");
        emit({qdc::make_record(pr, qdc::evaluate(pr))}, cap_out);
        return 0;
    }
    if (*quench) {
        const qdc::Problem pr = make_problem(q_args);
        const qdc::QuenchConfig qc = make_quench(q_q, threads);
        emit({qdc::make_record(pr, qc, qdc::quenched_capacity(pr, qc))}, q_out);
        return 0;
    }
    if (*critical) {
        const qdc::Problem pr = make_problem(c_args);
        std::optional<qdc::QuenchConfig> qc;
        if (pr.channel.is_random()) qc = make_quench(c_q, threads);
        const auto cs = qdc::critical_strengths(pr, scan, !no_pa, qc);
        emit({qdc::make_record(pr, cs, qc)}, c_out);
        return 0;
    }
    if (*sweep) {
        const qdc::Problem pr = make_problem(s_args);
        sweep_spec.axis = parse_axis(axis, sweep_spec.state_key);
        std::optional<qdc::QuenchConfig> qc;
        if (pr.channel.is_random()) qc = make_quench(s_q, threads);
        std::vector<qdc::RunRecord> records;
        for (const auto& row : qdc::sweep(pr, sweep_spec, qc, threads)) {
            records.push_back(row.quenched ? qdc::make_record(row.problem, *qc, *row.quenched)
                                           : qdc::make_record(row.problem, row.result));
        }
        emit(records, s_out);
        return 0;
    }
    if (*validate) {
        const auto reports = qdc::validation_suite(v_opt);
        bool ok = true;
        if (v_format == "json") {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& r : reports) {
                arr.push_back({{"name", r.name},
                               {"numeric_value", r.numeric_value},
                               {"closed_form_value", r.closed_form_value},
                               {"abs_error", r.abs_error},
                               {"tolerance", r.tolerance},
                               {"pass", r.pass}});
                ok = ok && r.pass;
            }
            std::cout << arr.dump(2) << "\n";
        } else {
            for (const auto& r : reports) {
                std::printf("%-4s %-50s numeric=%-14.10g closed=%-14.10g err=%.3g tol=%.3g\n", r.pass ? "PASS" : "FAIL",
                            r.name.c_str(), r.numeric_value, r.closed_form_value, r.abs_error, r.tolerance);
                ok = ok && r.pass;
            }
        }
        return ok ? 0 : kExitNumeric;
    }
    if (*table) {
        t_opts.threads = threads;
        const auto report = qdc::compute_table(qdc::parse_table_id(which), t_opts);
        write_output(t_out, qdc::table_csv(report));
        return report.all_pass() ? 0 : kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const qdc::DomainError& e) {
        std::cerr << "qdc: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qdc: " << e.what() << "\n";
        return kExitNumeric;
    }
}
