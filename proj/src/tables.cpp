#include "qdc/tables.hpp"

#include "qdc/errors.hpp"
#include "qdc/parallel.hpp"
#include "qdc/record.hpp"
#include "qdc/textio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>

namespace qdc {

namespace {

constexpr double kBlank = -1.0;
constexpr double kDeterministicTol = 0.01;
constexpr double kRandomTol = 0.02;
constexpr double kFastTol = 0.03;
constexpr long kFastRealizations = 500;

constexpr std::array<double, 5> kDeterministicAlphas = {0.0, 0.3, 0.5, 0.7, 0.9};
constexpr std::array<double, 3> kRandomAlphas = {0.3, 0.5, 0.9};
constexpr std::array<double, 3> kEpsilons = {0.5, 0.7, 1.0};

struct Series {
    const char* quantity;
    const char* column;
    std::array<double, 5> values;
};

// Dephasing: rows alpha = 0, 0.3, 0.5, 0.7, 0.9.
const std::array<Series, 9> kDephasingReference = {{
    {"p_c", "GHZ 2S-1R", {0.48, 0.41, 0.36, 0.33, 0.29}},
    {"p_c", "GHZ 3S-1R", {0.42, 0.35, 0.31, 0.28, 0.25}},
    {"p_c", "W 2S-1R", {0.13, 0.10, 0.09, 0.08, 0.07}},
    {"p_c", "W 3S-1R", {0.07, 0.06, 0.05, 0.05, 0.04}},
    {"p_r", "GHZ 2S-1R", {kBlank, 0.46, 0.41, 0.37, 0.33}},
    {"p_r", "GHZ 3S-1R", {kBlank, kBlank, 0.47, 0.42, 0.38}},
    {"p_a", "GHZ 2S-1R", {kBlank, 0.48, 0.44, 0.42, 0.40}},
    {"p_a", "GHZ 3S-1R", {kBlank, kBlank, 0.47, 0.42, 0.40}},
    {"p_a", "W 2S-2R", {kBlank, kBlank, 0.45, 0.41, 0.39}},
}};

// Depolarizing: rows alpha = 0, 0.3, 0.5, 0.7, 0.9.
const std::array<Series, 6> kDepolarizingReference = {{
    {"p_c", "GHZ 2S-1R", {0.09, 0.07, 0.05, 0.04, 0.03}},
    {"p_c", "GHZ 3S-1R", {0.06, 0.03, 0.03, 0.02, 0.02}},
    {"p_c", "GHZ 2S-2R", {0.75, 0.58, 0.45, 0.32, 0.25}},
    {"p_c", "W 2S-1R", {0.08, 0.05, 0.04, 0.03, 0.02}},
    {"p_c", "W 3S-1R", {0.05, 0.03, 0.02, 0.02, 0.02}},
    {"p_c", "W 2S-2R", {0.31, 0.26, 0.21, 0.16, 0.10}},
}};

struct RandomSeries {
    const char* column;
    // [alpha row][epsilon]
    std::array<std::array<double, 3>, 3> values;
};

// Random depolarizing: rows alpha = 0.3, 0.5, 0.9; epsilon = 0.5, 0.7, 1.0.
const std::array<RandomSeries, 4> kRandomReference = {{
    {"GHZ 2S-1R", {{{0.09, 0.11, 0.14}, {0.06, 0.08, 0.10}, {0.04, 0.05, 0.07}}}},
    {"GHZ 3S-1R", {{{0.04, 0.05, 0.06}, {0.03, 0.04, 0.05}, {0.02, 0.03, 0.04}}}},
    {"W 2S-1R", {{{0.08, 0.09, 0.12}, {0.05, 0.06, 0.09}, {0.03, 0.04, 0.07}}}},
    {"W 3S-1R", {{{0.03, 0.04, 0.05}, {0.03, 0.03, 0.04}, {0.02, 0.02, 0.01}}}},
}};

std::optional<double> reference_value(double v) {
    if (v == kBlank) return std::nullopt;
    return v;
}

void grade(TableCell& cell) {
    if (!cell.reference) {
        cell.pass = !cell.computed;
    } else {
        cell.pass = cell.computed && std::abs(*cell.computed - *cell.reference) <= cell.tolerance;
    }
}

// Everything a table needs from one column across the alpha rows.
struct ColumnJob {
    std::string column;
    ChannelKind kind = ChannelKind::Dephasing;
    double epsilon = 0.0;
    std::vector<double> alphas;
    bool want_pc = false;
    bool want_pr = false;
    bool want_pa = false;
    // Outputs, one per alpha.
    std::vector<CriticalStrengths> results;
};

void run_job(ColumnJob& job, const TableOptions& options, const std::optional<QuenchConfig>& quench) {
    const auto problem_at = [&](double alpha) {
        return table_problem(job.column, ChannelSpec{job.kind, alpha, 0.0, job.epsilon}, options.opt);
    };
    // The Markovian curve serves the alpha = 0 row and every p_a reference.
    std::optional<CapacityCurve> markov;
    const auto markov_curve = [&]() -> CapacityCurve& {
        if (!markov) markov.emplace(problem_at(0.0), quench);
        return *markov;
    };
    job.results.assign(job.alphas.size(), CriticalStrengths{});
    for (std::size_t i = 0; i < job.alphas.size(); ++i) {
        const double alpha = job.alphas[i];
        std::optional<CapacityCurve> own;
        CapacityCurve& curve = alpha == 0.0 ? markov_curve() : own.emplace(problem_at(alpha), quench);
        CriticalStrengths& out = job.results[i];
        out.bracket_resolution = options.scan.refine;
        if (job.want_pc || job.want_pr) out.p_c = find_pc(curve, options.scan);
        if (job.want_pr && out.p_c) out.p_r = find_pr(curve, *out.p_c, options.scan);
        if (job.want_pa && alpha > 0.0) out.p_a = find_pa(curve, markov_curve(), options.scan);
    }
}

void run_jobs(std::vector<ColumnJob>& jobs, const TableOptions& options, const std::optional<QuenchConfig>& quench) {
    if (quench) {
        // Realizations parallelize inside each curve.
        for (auto& job : jobs) run_job(job, options, quench);
        return;
    }
    parallel_for(jobs.size(), options.threads, [&](std::size_t i) { run_job(jobs[i], options, quench); });
}

std::optional<double> pick(const CriticalStrengths& cs, std::string_view quantity) {
    if (quantity == "p_c") return cs.p_c;
    if (quantity == "p_r") return cs.p_r;
    return cs.p_a;
}

TableReport deterministic_table(TableId id, const TableOptions& options) {
    const bool dephasing = id == TableId::Dephasing;
    const std::vector<double> alphas(kDeterministicAlphas.begin(), kDeterministicAlphas.end());
    const std::span<const Series> reference =
        dephasing ? std::span<const Series>(kDephasingReference) : std::span<const Series>(kDepolarizingReference);

    std::vector<ColumnJob> jobs;
    std::map<std::string, std::size_t> job_of;
    for (const auto& s : reference) {
        auto [it, fresh] = job_of.try_emplace(s.column, jobs.size());
        if (fresh) {
            ColumnJob job;
            job.column = s.column;
            job.kind = dephasing ? ChannelKind::Dephasing : ChannelKind::Depolarizing;
            job.alphas = alphas;
            jobs.push_back(std::move(job));
        }
        ColumnJob& job = jobs[it->second];
        const std::string_view q = s.quantity;
        (q == "p_c" ? job.want_pc : q == "p_r" ? job.want_pr : job.want_pa) = true;
    }
    run_jobs(jobs, options, std::nullopt);

    TableReport report;
    report.id = id;
    for (std::size_t row = 0; row < alphas.size(); ++row) {
        for (const auto& s : reference) {
            TableCell cell;
            cell.alpha = alphas[row];
            cell.quantity = s.quantity;
            cell.column = s.column;
            cell.reference = reference_value(s.values[row]);
            cell.computed = pick(jobs[job_of.at(s.column)].results[row], s.quantity);
            cell.tolerance = kDeterministicTol;
            grade(cell);
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

TableReport random_table(const TableOptions& options) {
    QuenchConfig qc;
    qc.realizations = options.fast ? kFastRealizations : options.realizations;
    qc.master_seed = options.master_seed;
    qc.optimize_per_realization = false;
    qc.threads = options.threads;

    const auto in_fast_subset = [](std::string_view column, std::size_t alpha_row) {
        return alpha_row == 0 && (column == "GHZ 2S-1R" || column == "W 2S-1R");
    };

    std::vector<ColumnJob> jobs;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> job_of;  // (series, epsilon) -> job
    for (std::size_t s = 0; s < kRandomReference.size(); ++s) {
        for (std::size_t e = 0; e < kEpsilons.size(); ++e) {
            ColumnJob job;
            job.column = kRandomReference[s].column;
            job.kind = ChannelKind::Depolarizing;
            job.epsilon = kEpsilons[e];
            job.want_pc = true;
            for (std::size_t a = 0; a < kRandomAlphas.size(); ++a) {
                if (options.fast && !in_fast_subset(job.column, a)) continue;
                job.alphas.push_back(kRandomAlphas[a]);
            }
            if (job.alphas.empty()) continue;
            job_of[{s, e}] = jobs.size();
            jobs.push_back(std::move(job));
        }
    }
    run_jobs(jobs, options, qc);

    TableReport report;
    report.id = TableId::RandomDepolarizing;
    report.realizations = qc.realizations;
    for (std::size_t a = 0; a < kRandomAlphas.size(); ++a) {
        for (std::size_t s = 0; s < kRandomReference.size(); ++s) {
            for (std::size_t e = 0; e < kEpsilons.size(); ++e) {
                const auto it = job_of.find({s, e});
                if (it == job_of.end()) continue;
                const ColumnJob& job = jobs[it->second];
                const auto pos = std::find(job.alphas.begin(), job.alphas.end(), kRandomAlphas[a]);
                if (pos == job.alphas.end()) continue;
                TableCell cell;
                cell.alpha = kRandomAlphas[a];
                cell.quantity = "p_c";
                cell.column = job.column;
                cell.epsilon = kEpsilons[e];
                cell.reference = reference_value(kRandomReference[s].values[a][e]);
                cell.computed = job.results[static_cast<std::size_t>(pos - job.alphas.begin())].p_c;
                cell.tolerance = options.fast ? kFastTol : kRandomTol;
                grade(cell);
                report.cells.push_back(std::move(cell));
            }
        }
    }
    return report;
}

std::string cell_key(const TableCell& c) {
    std::string key = c.quantity + " " + c.column;
    if (c.epsilon) key += " eps=" + format_exact(*c.epsilon);
    return key;
}

}  // namespace

TableId parse_table_id(std::string_view text) {
    if (text == "I" || text == "1" || text == "dephasing") return TableId::Dephasing;
    if (text == "II" || text == "2" || text == "depolarizing") return TableId::Depolarizing;
    if (text == "III" || text == "3" || text == "random") return TableId::RandomDepolarizing;
    throw DomainError("unknown table '" + std::string(text) + "' (expected I, II or III)");
}

std::string table_name(TableId id) {
    switch (id) {
        case TableId::Dephasing: return "I";
        case TableId::Depolarizing: return "II";
        case TableId::RandomDepolarizing: return "III";
    }
    return {};
}

bool TableReport::all_pass() const {
    return std::all_of(cells.begin(), cells.end(), [](const TableCell& c) { return c.pass; });
}

Problem table_problem(std::string_view column, const ChannelSpec& channel, const OptimizerConfig& opt) {
    Problem pr;
    pr.channel = channel;
    pr.opt = opt;
    const bool ghz = column.starts_with("GHZ ");
    const bool w = column.starts_with("W ");
    const std::string_view layout = column.substr(ghz ? 4 : 2);
    if ((!ghz && !w) || (layout != "2S-1R" && layout != "3S-1R" && layout != "2S-2R"))
        throw DomainError("unknown table column '" + std::string(column) + "'");
    pr.layout.n_senders = layout[0] - '0';
    pr.layout.two_receivers = layout == "2S-2R";
    pr.layout.split = 1;
    const int qubits = pr.layout.total_qubits();
    if (ghz) {
        pr.state = GGHZ{qubits, 1.0 / std::sqrt(2.0)};
    } else {
        pr.state = WUniform{qubits};
    }
    validate(pr);
    return pr;
}

TableReport compute_table(TableId id, const TableOptions& options) {
    validate(options.opt, 3);
    if (options.realizations < 1) throw DomainError("table: realizations must be >= 1");
    if (options.threads < 1) throw DomainError("table: threads must be >= 1");
    if (id == TableId::RandomDepolarizing) return random_table(options);
    return deterministic_table(id, options);
}

std::string table_csv(const TableReport& report) {
    std::vector<std::string> keys;
    std::map<std::string, std::map<double, const TableCell*>> by_key;
    std::vector<double> alphas;
    for (const auto& c : report.cells) {
        const std::string key = cell_key(c);
        if (!by_key.contains(key)) keys.push_back(key);
        by_key[key][c.alpha] = &c;
        if (std::find(alphas.begin(), alphas.end(), c.alpha) == alphas.end()) alphas.push_back(c.alpha);
    }
    std::string out = "alpha";
    for (const auto& k : keys) {
        out += "," + csv_escape(k + " computed") + "," + csv_escape(k + " reference") + "," + csv_escape(k + " pass");
    }
    out += ",tool_version\n";
    const auto num = [](const std::optional<double>& v) { return v ? format_output(*v) : std::string(); };
    for (const double a : alphas) {
        out += format_exact(a);
        for (const auto& k : keys) {
            const auto it = by_key[k].find(a);
            if (it == by_key[k].end()) {
                out += ",,,";
                continue;
            }
            const TableCell& c = *it->second;
            out += "," + num(c.computed) + "," + num(c.reference) + "," + (c.pass ? "pass" : "fail");
        }
        out += "," + tool_version() + "\n";
    }
    return out;
}

}  // namespace qdc
