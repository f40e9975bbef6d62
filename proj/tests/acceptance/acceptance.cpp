// Acceptance checks. Prints one PASS/FAIL line per criterion (preceded by
// detail lines) and exits nonzero if any selected criterion fails.
//
//   qdc_acceptance [--criterion K]... [--fast] [--threads N]

#include "qdc/analysis.hpp"
#include "qdc/oracles.hpp"
#include "qdc/parallel.hpp"
#include "qdc/random.hpp"
#include "qdc/tables.hpp"
#include "qdc/textio.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace qdc;

namespace {

int g_threads = 1;
bool g_fast = false;

struct Outcome {
    bool pass = false;
    std::string summary;
};

std::string fmt(double v) { return format_output(v); }

std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("-"); }

Outcome table_outcome(const TableReport& report) {
    int passed = 0;
    for (const auto& c : report.cells) {
        passed += c.pass;
        std::printf("    %-4s alpha=%-4s %-4s %-10s %-9s computed=%-12s reference=%-6s tol=%s\n", c.pass ? "ok" : "MISS",
                    format_exact(c.alpha).c_str(), c.quantity.c_str(), c.column.c_str(),
                    c.epsilon ? ("eps=" + format_exact(*c.epsilon)).c_str() : "", opt_fmt(c.computed).c_str(),
                    opt_fmt(c.reference).c_str(), format_exact(c.tolerance).c_str());
    }
    const std::string tol = report.cells.empty() ? "" : format_exact(report.cells.front().tolerance);
    return {report.all_pass(), std::to_string(passed) + "/" + std::to_string(report.cells.size()) +
                                   " cells within +-" + tol +
                                   (report.realizations ? " (" + std::to_string(report.realizations) + " realizations)"
                                                        : "")};
}

Outcome criterion1() {
    TableOptions o;
    o.threads = g_threads;
    return table_outcome(compute_table(TableId::Dephasing, o));
}

Outcome criterion2() {
    TableOptions o;
    o.threads = g_threads;
    return table_outcome(compute_table(TableId::Depolarizing, o));
}

bool report_line(const OracleReport& r) {
    std::printf("    %-4s %-48s numeric=%-14.10g closed=%-14.10g err=%.3g tol=%.3g\n", r.pass ? "ok" : "MISS",
                r.name.c_str(), r.numeric_value, r.closed_form_value, r.abs_error, r.tolerance);
    return r.pass;
}

Outcome criterion3() {
    OptimizerConfig opt;
    opt.enabled = false;
    bool ok = true;
    int n = 0;
    for (const auto& r : validation_suite(opt)) {
        // Two-receiver flatness and encoding optimality are criteria 4 and 5.
        if (r.name.starts_with("gGHZ two-receiver") || r.name.starts_with("identity-optimal")) continue;
        ok = report_line(r) && ok;
        ++n;
    }
    // The closed forms round to the tabulated 0.44 and 0.4.
    const double a5 = std::round(pa_closed_form(0.5) * 100) / 100;
    const double a9 = std::round(pa_closed_form(0.9) * 10) / 10;
    ok = report_line(make_report("pa_closed_form(0.5) rounded to 2 digits", a5, 0.44, 1e-12)) && ok;
    ok = report_line(make_report("pa_closed_form(0.9) rounded to 1 digit", a9, 0.4, 1e-12)) && ok;
    return {ok, std::to_string(n + 2) + " closed-form comparisons"};
}

Outcome criterion4() {
    double worst_identity = 0.0, worst_optimized = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double x = i / 10.0;
        const DensityMatrix rho = build(GGHZ{4, x});
        for (int j = 0; j <= 5; ++j) {
            for (const double a : {0.0, 0.5, 0.9}) {
                const ChannelSpec spec{ChannelKind::Dephasing, a, j / 10.0};
                OptimizerConfig off;
                off.enabled = false;
                const double bound = gghz_two_receiver_bound(x);
                const auto id = bound_two_receivers(rho, PartyLayout{2, true, 1}, spec, nullptr, off);
                const auto op = bound_two_receivers(rho, PartyLayout{2, true, 1}, spec, nullptr, OptimizerConfig{});
                worst_identity = std::max(worst_identity, std::abs(id.capacity_bits - bound));
                worst_optimized = std::max(worst_optimized, std::abs(op.capacity_bits - bound));
            }
        }
    }
    std::printf("    max |B2 - (2 + H(x^2))|: identity encoding %.3g, optimized encoding %.3g (162 points)\n",
                worst_identity, worst_optimized);
    return {worst_identity <= 1e-6 && worst_optimized <= 1e-6,
            "max deviation " + fmt(std::max(worst_identity, worst_optimized)) + " <= 1e-6"};
}

Outcome criterion5() {
    RandomStream rng(20240601);
    double worst_below = 0.0, worst_above = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int n = t % 2 ? 3 : 2;
        const double x = rng.uniform();
        const double p = 0.5 * rng.uniform();
        const double a = rng.uniform();
        OptimizerConfig opt;
        opt.seed = static_cast<std::uint64_t>(t) + 1;
        const OracleReport r = identity_encoding_check(n, x, a, p, opt);
        // numeric = optimized entropy, closed form = identity-encoding entropy.
        const double diff = r.numeric_value - r.closed_form_value;
        worst_below = std::max(worst_below, -diff);
        worst_above = std::max(worst_above, diff);
        if (std::abs(diff) > 1e-6)
            std::printf("    MISS N=%d x=%.4f p=%.4f alpha=%.4f optimized-identity=%.3g\n", n, x, p, a, diff);
    }
    std::printf("    optimized below identity by at most %.3g, above by at most %.3g (50 instances)\n", worst_below,
                worst_above);
    return {worst_below <= 1e-6 && worst_above <= 1e-6,
            "|S_opt - S_identity| <= " + fmt(std::max(worst_below, worst_above)) + " (limit 1e-6)"};
}

Outcome criterion6() {
    TableOptions o;
    o.threads = g_threads;
    o.fast = g_fast;
    return table_outcome(compute_table(TableId::RandomDepolarizing, o));
}

Outcome criterion7() {
    // Each realization's capacity is a maximum over encodings, so the mean is
    // taken over optimized realizations; the identity-encoded mean is shown
    // alongside.
    QuenchConfig qc;
    qc.realizations = g_fast ? 500 : 4000;
    qc.master_seed = 1;
    qc.threads = g_threads;
    qc.optimize_per_realization = true;
    QuenchConfig id = qc;
    id.optimize_per_realization = false;
    bool ok = true;
    int points = 0, strict = 0, identity_below = 0;
    const auto check = [&](double eps, double alpha, double p) {
        Problem pr;
        pr.state = GGHZ{3, 1.0 / std::sqrt(2.0)};
        pr.layout = PartyLayout{2, false, 1};
        pr.channel = ChannelSpec{ChannelKind::Dephasing, alpha, p, 0.0};
        const double det = evaluate(pr).capacity_bits;
        pr.channel.epsilon = eps;
        const QuenchedResult qi = quenched_capacity(pr, id);
        const QuenchedResult q = quenched_capacity(pr, qc);
        const double margin = q.mean_capacity_bits - det;
        const bool pass = margin >= -3.0 * q.std_error_bits;
        const bool improved = margin > 3.0 * q.std_error_bits;
        ok = ok && pass;
        ++points;
        strict += improved;
        identity_below += qi.mean_capacity_bits - det < -3.0 * qi.std_error_bits;
        std::printf("    %-4s eps=%-3s alpha=%-3s p=%-4s <C>=%.6f +- %.2g  C(eps=0)=%.6f  identity <C>=%.6f  %s\n",
                    pass ? "ok" : "MISS", format_exact(eps).c_str(), format_exact(alpha).c_str(),
                    format_exact(p).c_str(), q.mean_capacity_bits, q.std_error_bits, det, qi.mean_capacity_bits,
                    improved ? "strictly above" : "");
    };
    for (const double eps : {0.3, 0.5})
        for (const double alpha : {0.0, 0.5})
            for (const double p : {0.1, 0.3}) check(eps, alpha, p);
    for (const double eps : {0.5, 0.7, 1.0})
        for (const double p : {0.1, 0.2, 0.3, 0.4, 0.5}) check(eps, 0.8, p);
    return {ok, std::to_string(points) + " points with <C> >= C(eps=0) - 3 SE; " + std::to_string(strict) +
                    " significantly above; identity encoding alone falls below at " +
                    std::to_string(identity_below)};
}

Outcome criterion8() {
    bool ok = true;
    const auto line = [&](bool pass, const std::string& what) {
        std::printf("    %-4s %s\n", pass ? "ok" : "MISS", what.c_str());
        ok = ok && pass;
    };

    // Completeness of sampled Kraus sets.
    RandomStream root(8);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        RandomStream s = root.child(static_cast<std::uint64_t>(t));
        const ChannelKind kind = t % 2 ? ChannelKind::Depolarizing : ChannelKind::Dephasing;
        const double alpha = s.uniform();
        const double p = s.uniform() * max_noise_strength(kind, alpha);
        worst = std::max(worst, sample_random_kraus(ChannelSpec{kind, alpha, p, 1.0 + s.uniform()}, s)
                                    .completeness_defect());
    }
    line(worst < 1e-10, "completeness of 1000 sampled Kraus sets: max defect " + fmt(worst));

    // Density-matrix invariants after channel application.
    double herm = 0.0, trace = 0.0, min_eig = 0.0;
    for (int t = 0; t < 200; ++t) {
        RandomStream s = root.child(10000 + static_cast<std::uint64_t>(t));
        const ChannelKind kind = t % 2 ? ChannelKind::Depolarizing : ChannelKind::Dephasing;
        const double alpha = s.uniform();
        const ChannelSpec spec{kind, alpha, s.uniform() * max_noise_strength(kind, alpha), t % 3 ? 0.7 : 0.0};
        const DensityMatrix rho = build(GGHZ{4, s.uniform()});
        const auto kraus = spec.is_random() ? realize_channels(spec, 3, s) : std::vector<KrausSet>(3, deterministic_kraus(spec));
        const int targets[] = {0, 1, 2};
        const DensityMatrix out = apply_local_channel(rho, kraus, targets);
        herm = std::max(herm, out.matrix().hermiticity_defect());
        trace = std::max(trace, std::abs(out.matrix().trace() - 1.0));
        min_eig = std::min(min_eig, hermitian_eigenvalues(out.matrix()).back());
    }
    line(herm <= 1e-10 && trace <= 1e-10 && min_eig >= -1e-9,
         "channel outputs: hermiticity " + fmt(herm) + ", trace error " + fmt(trace) + ", min eigenvalue " +
             fmt(min_eig));

    // Covariance. The depolarizing channel commutes with every unitary; Z
    // dephasing commutes with the Paulis but not with a Hadamard.
    const Complex amp[] = {0.6, Complex(0.48, 0.64)};
    const ComplexMatrix probe = ComplexMatrix::projector(amp);
    const auto act = [](const ComplexMatrix& m, const KrausSet& k) {
        ComplexMatrix r = m;
        apply_kraus_in_place(r, k, 0);
        return r;
    };
    std::vector<ComplexMatrix> unitaries = {pauli_x(), pauli_y(), pauli_z()};
    for (int t = 0; t < 20; ++t)
        unitaries.push_back(unitary_from_params({12.6 * root.uniform(), 6.3 * root.uniform(), 12.6 * root.uniform()}));
    double cov = 0.0;
    for (const double alpha : {0.0, 0.4, 0.9}) {
        const KrausSet k = deterministic_kraus(ChannelSpec{ChannelKind::Depolarizing, alpha, 0.3});
        for (const auto& w : unitaries)
            cov = std::max(cov, act(w * probe * w.adjoint(), k).max_abs_diff(w * act(probe, k) * w.adjoint()));
    }
    const KrausSet dph = deterministic_kraus(ChannelSpec{ChannelKind::Dephasing, 0.5, 0.3});
    const ComplexMatrix h = (pauli_x() + pauli_z()) * (1.0 / std::sqrt(2.0));
    const double violation = act(h * probe * h, dph).max_abs_diff(h * act(probe, dph) * h);
    line(cov < 1e-10, "depolarizing covariance defect over Paulis and 20 random unitaries: " + fmt(cov));
    line(violation > 1e-6, "dephasing covariance violation under a Hadamard detected: " + fmt(violation));

    // p = 0 against the noiseless capacity.
    double zero = 0.0;
    const std::vector<std::pair<ResourceState, PartyLayout>> cases = {
        {GGHZ{3, 0.6}, {2, false, 1}},      {GGHZ{4, 0.7}, {3, false, 1}}, {GGHZ{4, 0.8}, {2, true, 1}},
        {GW3{0.5, 0.25}, {2, false, 1}},   {GW4{0.5, 0.2, 0.1}, {3, false, 1}}, {WUniform{4}, {2, true, 1}},
        {Bell{}, {1, false, 1}}};
    for (const auto& [state, layout] : cases) {
        const DensityMatrix rho = build(state);
        for (const ChannelKind kind : {ChannelKind::Dephasing, ChannelKind::Depolarizing}) {
            const auto r = noisy_capacity(rho, layout, ChannelSpec{kind, 0.6, 0.0}, nullptr, OptimizerConfig{});
            zero = std::max(zero, std::abs(r.capacity_bits - capacity_noiseless(rho, layout).capacity_bits));
        }
    }
    line(zero < 1e-9, "capacity at p = 0 vs noiseless: max difference " + fmt(zero));

    // Thread-count independence.
    Problem pr;
    pr.state = GGHZ{3, 1.0 / std::sqrt(2.0)};
    pr.layout = PartyLayout{2, false, 1};
    pr.channel = ChannelSpec{ChannelKind::Depolarizing, 0.5, 0.04, 0.7};
    QuenchConfig qc;
    qc.realizations = 1000;
    const QuenchedResult q1 = quenched_capacity(pr, qc);
    qc.threads = 4;
    const QuenchedResult q4 = quenched_capacity(pr, qc);
    bool same = q1.mean_capacity_bits == q4.mean_capacity_bits && q1.std_error_bits == q4.std_error_bits;

    Problem det = pr;
    det.channel = ChannelSpec{ChannelKind::Dephasing, 0.8, 0.0};
    det.opt.max_evaluations = 2000;
    const SweepSpec spec{SweepAxis::P, "", 0.0, 0.5, 6};
    const auto s1 = sweep(det, spec, std::nullopt, 1);
    const auto s4 = sweep(det, spec, std::nullopt, 4);
    for (std::size_t i = 0; i < s1.size(); ++i) same = same && s1[i].result.capacity_bits == s4[i].result.capacity_bits;

    TableOptions t1, t3;
    t3.threads = 3;
    const auto a = compute_table(TableId::Depolarizing, t1);
    const auto b = compute_table(TableId::Depolarizing, t3);
    same = same && table_csv(a) == table_csv(b);
    line(same, "quench, sweep and table outputs identical for 1 and several threads");
    return {ok, "property suites"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"dephasing critical strengths p_c, p_r, p_a", criterion1},
    {"depolarizing critical strengths p_c", criterion2},
    {"closed-form oracles", criterion3},
    {"gGHZ two-receiver bound flat under dephasing", criterion4},
    {"identity encoding optimal for dephased gGHZ", criterion5},
    {"random depolarizing quenched p_c", criterion6},
    {"random dephasing does not lower the quenched capacity", criterion7},
    {"property suites", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::vector<int> selected;
    g_threads = default_thread_count();
    app.add_option("--criterion", selected, "Criterion number (repeatable; default all)")->check(CLI::Range(1, 8));
    app.add_flag("--fast", g_fast, "Criteria 6 and 7 at 500 realizations (6 also on a six-cell subset)");
    app.add_option("--threads", g_threads, "Worker threads")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    if (selected.empty())
        for (int k = 1; k <= 8; ++k) selected.push_back(k);

    bool all = true;
    for (const int k : selected) {
        const auto& [name, fn] = kCriteria[static_cast<std::size_t>(k - 1)];
        std::printf("criterion %d: %s%s\n", k, name.c_str(), (k == 6 || k == 7) && g_fast ? " (fast)" : "");
        std::fflush(stdout);
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s; %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", k, name.c_str(),
                    out.summary.c_str(), secs);
        std::fflush(stdout);
        all = all && out.pass;
    }
    return all ? 0 : 1;
}
