#include "qdc/oracles.hpp"

#include "qdc/capacity.hpp"
#include "qdc/channels.hpp"
#include "qdc/errors.hpp"
#include "qdc/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace qdc {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 2> symmetric_pair(double radicand) {
    const double r = std::sqrt(std::max(0.0, radicand));
    return {0.5 * (1.0 + r), 0.5 * (1.0 - r)};
}

std::array<double, 2> gghz_pair(int n, double x, double c) {
    const double x2 = x * x;
    return symmetric_pair(1.0 - 4.0 * (-1.0 + std::pow(c, 2 * n)) * x2 * (x2 - 1.0));
}

double distance_to_multiple_of_pi(double theta) {
    const double r = std::fmod(std::abs(theta), kPi);
    return std::min(r, kPi - r);
}

// Eigenvalues of the numerically channel-applied state, descending.
std::vector<double> numeric_spectrum(const ResourceState& state, int n_senders, const ChannelSpec& spec) {
    const DensityMatrix rho = build(state);
    const std::vector<KrausSet> kraus(static_cast<std::size_t>(n_senders), deterministic_kraus(spec));
    std::vector<int> targets(static_cast<std::size_t>(n_senders));
    for (int i = 0; i < n_senders; ++i) targets[static_cast<std::size_t>(i)] = i;
    return hermitian_eigenvalues(apply_local_channel(rho, kraus, targets).matrix());
}

double spectrum_error(const std::vector<double>& numeric, std::span<const double> closed) {
    std::vector<double> expect(closed.begin(), closed.end());
    std::sort(expect.begin(), expect.end(), std::greater<>());
    double err = 0.0;
    for (std::size_t i = 0; i < numeric.size(); ++i)
        err = std::max(err, std::abs(numeric[i] - (i < expect.size() ? expect[i] : 0.0)));
    return err;
}

double bell_entropy(const ChannelSpec& spec) {
    const DensityMatrix rho = build(Bell{});
    const std::vector<KrausSet> kraus{deterministic_kraus(spec)};
    const int target[] = {0};
    return von_neumann_entropy(apply_local_channel(rho, kraus, target));
}

}  // namespace

double dephasing_coherence(double p, double alpha) {
    return 1.0 - 2.0 * p + 2.0 * (p - 1.0) * p * alpha;
}

GghzDephasingSpectrum gghz_dephasing_spectrum(int n_senders, double x, double p, double alpha) {
    if (n_senders < 1 || x < 0.0 || x > 1.0 || p < 0.0 || p > 0.5 || alpha < 0.0 || alpha > 1.0)
        throw DomainError("gghz_dephasing_spectrum: argument out of range");
    return {gghz_pair(n_senders, x, 1.0 - 2.0 * p), gghz_pair(n_senders, x, dephasing_coherence(p, alpha))};
}

double pc_closed_form(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw DomainError("pc_closed_form: alpha must lie in [0, 1]");
    if (alpha == 0.0) return 0.5;
    return (1.0 + alpha - std::sqrt(1.0 + alpha * alpha)) / (2.0 * alpha);
}

double pa_closed_form(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw DomainError("pa_closed_form: alpha must lie in [0, 1]");
    if (alpha == 0.0) return 0.5;
    return (2.0 + alpha - std::sqrt(4.0 + alpha * alpha)) / (2.0 * alpha);
}

double gghz_two_receiver_bound(double x) {
    if (x < 0.0 || x > 1.0) throw DomainError("gghz_two_receiver_bound: x must lie in [0, 1]");
    return 2.0 + binary_entropy(x * x);
}

std::array<double, 4> bell_depolarizing_spectrum(double p, double alpha) {
    const double y = (1.0 - p) * (1.0 - 3.0 * alpha * p);
    const double rest = (1.0 - y) / 3.0;
    return {y, rest, rest, rest};
}

std::array<double, 2> bell_dephasing_spectrum(double p, double alpha) {
    return symmetric_pair(1.0 + 4.0 * p * (p - 1.0) * (alpha * (p - 1.0) - 1.0) * (alpha * p - 1.0));
}

OracleReport make_report(std::string name, double numeric, double closed_form, double tolerance) {
    const double err = std::abs(numeric - closed_form);
    return {std::move(name), numeric, closed_form, err, tolerance, err <= tolerance};
}

OracleReport identity_encoding_check(int n_senders, double x, double alpha, double p, const OptimizerConfig& opt) {
    const DensityMatrix rho = build(GGHZ{n_senders + 1, x});
    const std::vector<KrausSet> kraus(static_cast<std::size_t>(n_senders),
                                      deterministic_kraus(ChannelSpec{ChannelKind::Dephasing, alpha, p}));
    std::vector<int> senders(static_cast<std::size_t>(n_senders));
    for (int i = 0; i < n_senders; ++i) senders[static_cast<std::size_t>(i)] = i;
    const EncodingObjective objective = [&](const EncodingParams& e) {
        const auto us = e.unitaries();
        return von_neumann_entropy(encoded_channel_output(rho.matrix(), senders, kraus, us));
    };
    const double identity = objective(EncodingParams::identity(n_senders));
    const OptimizationResult r = minimize(objective, n_senders, opt);
    constexpr double kEntropyTol = 1e-6;
    constexpr double kThetaTol = 1e-2;
    bool thetas_ok = true;
    for (const auto& u : r.best_params.per_sender) thetas_ok = thetas_ok && distance_to_multiple_of_pi(u.theta) <= kThetaTol;
    OracleReport report = make_report("identity-optimal encoding N=" + std::to_string(n_senders), r.best_value, identity, kEntropyTol);
    report.pass = report.pass && thetas_ok;
    return report;
}

double bell_depolarizing_threshold(double alpha) {
    double lo = 0.0;
    double hi = max_noise_strength(ChannelKind::Depolarizing, alpha);
    auto above = [&](double p) { return bell_entropy(ChannelSpec{ChannelKind::Depolarizing, alpha, p}) >= 1.0; };
    if (!above(hi)) throw NumericError("bell_depolarizing_threshold: entropy never reaches 1 bit");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (above(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<OracleReport> validation_suite(const OptimizerConfig& opt) {
    std::vector<OracleReport> out;

    // gGHZ dephasing spectrum on a 10 x 10 x 10 grid of (x, p, alpha).
    for (int n = 2; n <= 3; ++n) {
        double err = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double x = (i + 0.5) / 10.0;
            for (int j = 0; j < 10; ++j) {
                const double p = 0.5 * j / 9.0;
                for (int k = 0; k < 10; ++k) {
                    const double a = k / 9.0;
                    const auto closed = gghz_dephasing_spectrum(n, x, p, a);
                    const auto num = numeric_spectrum(GGHZ{n + 1, x}, n, {ChannelKind::Dephasing, a, p});
                    err = std::max(err, spectrum_error(num, closed.non_markovian));
                    if (k == 0) err = std::max(err, spectrum_error(num, closed.markovian));
                }
            }
        }
        out.push_back(make_report("gghz_dephasing_spectrum N=" + std::to_string(n), err, 0.0, 1e-8));
    }

    double root = 0.0;
    for (int k = 1; k <= 100; ++k) root = std::max(root, std::abs(dephasing_coherence(pc_closed_form(k / 100.0), k / 100.0)));
    out.push_back(make_report("pc_closed_form root", root, 0.0, 1e-12));

    double order = 0.0;
    for (int k = 1; k <= 100; ++k) order = std::max(order, pc_closed_form(k / 100.0) - pa_closed_form(k / 100.0));
    out.push_back(make_report("pa_closed_form >= pc_closed_form", std::max(0.0, order), 0.0, 0.0));
    out.push_back(make_report("pa_closed_form(0.5)", pa_closed_form(0.5), 0.43845, 5e-6));
    out.push_back(make_report("pa_closed_form(0.9)", pa_closed_form(0.9), 0.39268, 5e-6));

    // Identity-encoding collapse of gGHZ at the closed-form p_c.
    for (int n = 2; n <= 3; ++n) {
        for (const double a : {0.3, 0.5, 0.9}) {
            OptimizerConfig off = opt;
            off.enabled = false;
            const auto r = capacity_one_receiver(build(GGHZ{n + 1, 1.0 / std::sqrt(2.0)}), PartyLayout{n, false, 1},
                                                 ChannelSpec{ChannelKind::Dephasing, a, pc_closed_form(a)}, nullptr, off);
            out.push_back(make_report("identity collapse at pc_closed_form N=" + std::to_string(n) +
                                          " alpha=" + std::to_string(a).substr(0, 3),
                                      r.unclamped_bits, n, 1e-9));
        }
    }

    double dep = 0.0, deph = 0.0;
    for (int j = 0; j <= 20; ++j) {
        for (int k = 0; k <= 10; ++k) {
            const double a = k / 10.0;
            const double pmax = max_noise_strength(ChannelKind::Depolarizing, a);
            const double p_dep = pmax * j / 20.0;
            dep = std::max(dep, spectrum_error(numeric_spectrum(Bell{}, 1, {ChannelKind::Depolarizing, a, p_dep}),
                                               bell_depolarizing_spectrum(p_dep, a)));
            const double p_deph = 0.5 * j / 20.0;
            deph = std::max(deph, spectrum_error(numeric_spectrum(Bell{}, 1, {ChannelKind::Dephasing, a, p_deph}),
                                                 bell_dephasing_spectrum(p_deph, a)));
        }
    }
    out.push_back(make_report("bell_depolarizing_spectrum", dep, 0.0, 1e-9));
    out.push_back(make_report("bell_dephasing_spectrum", deph, 0.0, 1e-9));

    out.push_back(make_report("bell depolarizing threshold alpha=0", bell_depolarizing_threshold(0.0), 0.189, 1e-3));

    const double gap = bell_entropy({ChannelKind::Dephasing, 0.0, 0.5}) - bell_entropy({ChannelKind::Dephasing, 1.0, 0.5});
    out.push_back(make_report("bell dephasing entropy gap alpha=1 p=1/2", gap, 1.0 - binary_entropy(0.25), 1e-9));

    double flat = 0.0;
    OptimizerConfig off = opt;
    off.enabled = false;
    for (int i = 1; i <= 9; ++i) {
        const double x = i / 10.0;
        const DensityMatrix rho = build(GGHZ{4, x});
        for (int j = 0; j <= 5; ++j) {
            for (const double a : {0.0, 0.5, 0.9}) {
                const auto r = bound_two_receivers(rho, PartyLayout{2, true, 1},
                                                   ChannelSpec{ChannelKind::Dephasing, a, j / 10.0}, nullptr, off);
                flat = std::max(flat, std::abs(r.capacity_bits - gghz_two_receiver_bound(x)));
            }
        }
    }
    out.push_back(make_report("gGHZ two-receiver bound flatness", flat, 0.0, 1e-6));

    out.push_back(identity_encoding_check(2, 0.6, 0.5, 0.2, opt));
    out.push_back(identity_encoding_check(3, 1.0 / std::sqrt(2.0), 0.9, 0.4, opt));
    out.push_back(identity_encoding_check(2, 1.0, 0.5, 0.3, opt));
    return out;
}

}  // namespace qdc
