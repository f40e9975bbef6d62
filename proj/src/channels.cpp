#include "qdc/channels.hpp"

#include "qdc/errors.hpp"
#include "qdc/textio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdc {

namespace {

constexpr double kPi = std::numbers::pi;
// Tolerance on the p range so that decimal inputs like p = 1/(3*0.3) pass.
constexpr double kRangeSlack = 1e-12;

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

double checked_sqrt(double w, const char* what) {
    if (w < 0.0) {
        if (w > -kRangeSlack) return 0.0;
        throw DomainError(std::string(what) + ": Kraus weight " + std::to_string(w) + " is negative");
    }
    return std::sqrt(w);
}

bool is_zero(const ComplexMatrix& m) {
    return std::all_of(m.entries().begin(), m.entries().end(), [](const Complex& z) { return z == Complex{}; });
}

}  // namespace

double max_noise_strength(ChannelKind kind, double alpha) {
    if (kind == ChannelKind::Dephasing) return 0.5;
    return alpha > 0.0 ? std::min(1.0, 1.0 / (3.0 * alpha)) : 1.0;
}

void validate(const ChannelSpec& spec) {
    require(std::isfinite(spec.alpha) && spec.alpha >= 0.0 && spec.alpha <= 1.0, "channel: alpha must lie in [0, 1]");
    require(std::isfinite(spec.epsilon) && spec.epsilon >= 0.0, "channel: epsilon must be >= 0");
    const double pmax = max_noise_strength(spec.kind, spec.alpha);
    require(std::isfinite(spec.p) && spec.p >= 0.0 && spec.p <= pmax + kRangeSlack,
            "channel: p = " + std::to_string(spec.p) + " outside [0, " + std::to_string(pmax) + "] for " +
                channel_name(spec.kind));
}

UnitaryParams pauli_means(Pauli which) {
    switch (which) {
        case Pauli::X: return {2 * kPi, kPi, kPi};
        case Pauli::Y: return {3 * kPi, kPi, kPi};
        case Pauli::Z: return {2 * kPi, 0.0, 3 * kPi};
    }
    return {};
}

ComplexMatrix unitary_from_params(const UnitaryParams& u) {
    const Complex a = std::polar(1.0, u.omega / 2);   // e^{i w/2}
    const Complex d = std::polar(1.0, u.delta / 2);   // e^{i d/2}
    const double c = std::cos(u.theta / 2), s = std::sin(u.theta / 2);
    // diag(a, 1/a) [[c, -s], [s, c]] diag(d, 1/d)
    return ComplexMatrix(2, {a * c * d, -a * s / d, s * d / a, c / (a * d)});
}

double KrausSet::completeness_defect() const {
    ComplexMatrix sum(2);
    for (const auto& k : operators) sum += k.adjoint() * k;
    return sum.max_abs_diff(ComplexMatrix::identity(2));
}

std::pair<double, double> dephasing_weights(double alpha, double p) {
    return {(1.0 - alpha * p) * (1.0 - p), (1.0 + alpha * (1.0 - p)) * p};
}

std::pair<double, double> depolarizing_weights(double alpha, double p) {
    return {(1.0 - 3.0 * alpha * p) * (1.0 - p), (1.0 + 3.0 * alpha * (1.0 - p)) * p / 3.0};
}

KrausSet kraus_dephasing(double alpha, double p, const ComplexMatrix& uz) {
    validate(ChannelSpec{ChannelKind::Dephasing, alpha, p});
    const auto [wi, wz] = dephasing_weights(alpha, p);
    return KrausSet{{ComplexMatrix::identity(2) * checked_sqrt(wi, "dephasing"), uz * checked_sqrt(wz, "dephasing")}};
}

KrausSet kraus_depolarizing(double alpha, double p, const ComplexMatrix& ux, const ComplexMatrix& uy,
                            const ComplexMatrix& uz) {
    require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0, "depolarizing: alpha must lie in [0, 1]");
    require(std::isfinite(p) && p >= 0.0, "depolarizing: p must be >= 0");
    const auto [wi, w] = depolarizing_weights(alpha, p);
    const double si = checked_sqrt(wi, "depolarizing");
    const double sp = checked_sqrt(w, "depolarizing");
    return KrausSet{{ComplexMatrix::identity(2) * si, ux * sp, uy * sp, uz * sp}};
}

KrausSet deterministic_kraus(const ChannelSpec& spec) {
    validate(spec);
    if (spec.kind == ChannelKind::Dephasing) return kraus_dephasing(spec.alpha, spec.p, pauli_z());
    return kraus_depolarizing(spec.alpha, spec.p, pauli_x(), pauli_y(), pauli_z());
}

KrausSet sample_random_kraus(const ChannelSpec& spec, RandomStream& stream) {
    validate(spec);
    auto draw = [&](Pauli which) {
        const UnitaryParams mean = pauli_means(which);
        UnitaryParams u;
        u.omega = stream.normal(mean.omega, spec.epsilon);
        u.theta = stream.normal(mean.theta, spec.epsilon);
        u.delta = stream.normal(mean.delta, spec.epsilon);
        return unitary_from_params(u);
    };
    if (spec.kind == ChannelKind::Dephasing) return kraus_dephasing(spec.alpha, spec.p, draw(Pauli::Z));
    auto ux = draw(Pauli::X);
    auto uy = draw(Pauli::Y);
    auto uz = draw(Pauli::Z);
    return kraus_depolarizing(spec.alpha, spec.p, ux, uy, uz);
}

std::vector<KrausSet> realize_channels(const ChannelSpec& spec, int n_targets, const RandomStream& stream) {
    std::vector<KrausSet> out;
    out.reserve(static_cast<std::size_t>(n_targets));
    if (!spec.is_random()) {
        const KrausSet k = deterministic_kraus(spec);
        out.assign(static_cast<std::size_t>(n_targets), k);
        return out;
    }
    for (int q = 0; q < n_targets; ++q) {
        const bool shared = spec.draw == DrawPolicy::SharedAcrossQubits;
        RandomStream s = stream.child(shared ? 0 : static_cast<std::uint64_t>(q));
        out.push_back(sample_random_kraus(spec, s));
    }
    return out;
}

void apply_kraus_in_place(ComplexMatrix& rho, const KrausSet& kraus, int qubit) {
    if (qubit < 0 || qubit >= rho.qubits()) throw DomainError("apply_kraus_in_place: qubit out of range");
    // Superoperator on each 2x2 block of the target qubit:
    // S[(i,j),(a,b)] = sum_k K_ia conj(K_jb).
    Complex s[4][4] = {};
    for (const auto& k : kraus.operators) {
        if (k.dim() != 2) throw SizeError("Kraus operators must be 2x2");
        if (is_zero(k)) continue;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) s[2 * i + j][2 * a + b] += k(i, a) * std::conj(k(j, b));
    }
    const std::size_t d = rho.dim();
    const std::size_t bit = std::size_t{1} << (rho.qubits() - 1 - qubit);
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (r0 & bit) continue;
        const std::size_t r1 = r0 | bit;
        for (std::size_t c0 = 0; c0 < d; ++c0) {
            if (c0 & bit) continue;
            const std::size_t c1 = c0 | bit;
            const Complex v[4] = {rho(r0, c0), rho(r0, c1), rho(r1, c0), rho(r1, c1)};
            Complex w[4];
            for (int i = 0; i < 4; ++i) w[i] = s[i][0] * v[0] + s[i][1] * v[1] + s[i][2] * v[2] + s[i][3] * v[3];
            rho(r0, c0) = w[0];
            rho(r0, c1) = w[1];
            rho(r1, c0) = w[2];
            rho(r1, c1) = w[3];
        }
    }
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, std::span<const KrausSet> per_qubit_kraus,
                                  std::span<const int> targets) {
    require(per_qubit_kraus.size() == targets.size(), "apply_local_channel: one Kraus set per target required");
    std::vector<int> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "apply_local_channel: duplicate target");
    for (const int t : targets) {
        require(t >= 0 && t < rho.qubits(), "apply_local_channel: target " + std::to_string(t) + " out of range");
    }
    ComplexMatrix m = rho.matrix();
    for (std::size_t i = 0; i < targets.size(); ++i) apply_kraus_in_place(m, per_qubit_kraus[i], targets[i]);
    return DensityMatrix(std::move(m));
}

ChannelSpec parse_channel(std::string_view text) {
    const KeyValueSpec kv = parse_kv_spec(text);
    kv.allow_only({"alpha", "p", "eps", "epsilon", "draw"});
    ChannelSpec spec;
    if (kv.kind == "dephasing" || kv.kind == "dph") {
        spec.kind = ChannelKind::Dephasing;
    } else if (kv.kind == "depolarizing" || kv.kind == "depolarising" || kv.kind == "dp") {
        spec.kind = ChannelKind::Depolarizing;
    } else {
        throw DomainError("unknown channel kind '" + kv.kind + "'");
    }
    spec.alpha = kv.number_or("alpha", 0.0);
    spec.p = kv.number_or("p", 0.0);
    require(!(kv.has("eps") && kv.has("epsilon")), "channel: give eps or epsilon, not both");
    spec.epsilon = kv.has("eps") ? kv.number("eps") : kv.number_or("epsilon", 0.0);
    const std::string draw = kv.text_or("draw", "per-qubit");
    if (draw == "per-qubit" || draw == "independent") {
        spec.draw = DrawPolicy::IndependentPerQubit;
    } else if (draw == "shared") {
        spec.draw = DrawPolicy::SharedAcrossQubits;
    } else {
        throw DomainError("channel: draw must be per-qubit or shared, got '" + draw + "'");
    }
    validate(spec);
    return spec;
}

std::string channel_name(ChannelKind kind) {
    return kind == ChannelKind::Dephasing ? "dephasing" : "depolarizing";
}

std::string draw_policy_name(DrawPolicy draw) {
    return draw == DrawPolicy::IndependentPerQubit ? "per-qubit" : "shared";
}

std::string format_channel(const ChannelSpec& spec) {
    return channel_name(spec.kind) + ":alpha=" + format_exact(spec.alpha) + ",p=" + format_exact(spec.p) +
           ",eps=" + format_exact(spec.epsilon) + ",draw=" + draw_policy_name(spec.draw);
}

}  // namespace qdc
