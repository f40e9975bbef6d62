#include "qdc/channels.hpp"
#include "qdc/errors.hpp"
#include "qdc/oracles.hpp"
#include "qdc/random.hpp"
#include "qdc/states.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qdc;

namespace {

constexpr double kPi = std::numbers::pi;

double weight(const ComplexMatrix& k) {
    const ComplexMatrix kk = k.adjoint() * k;
    return kk.trace().real() / 2.0;
}

ComplexMatrix apply_one(const ComplexMatrix& rho, const KrausSet& k, int q) {
    ComplexMatrix m = rho;
    apply_kraus_in_place(m, k, q);
    return m;
}

DensityMatrix random_state(int qubits, RandomStream& rng) {
    const std::size_t d = std::size_t{1} << qubits;
    ComplexMatrix g(d);
    for (auto& z : g.entries()) z = {rng.normal(), rng.normal()};
    ComplexMatrix m = g * g.adjoint();
    m *= 1.0 / m.trace().real();
    return DensityMatrix(m);
}

}  // namespace

TEST_CASE("Pauli means reproduce the Pauli matrices up to a phase") {
    CHECK(pauli_means(Pauli::X).omega == doctest::Approx(2 * kPi));
    CHECK(pauli_means(Pauli::Y).omega == doctest::Approx(3 * kPi));
    CHECK(pauli_means(Pauli::Z).delta == doctest::Approx(3 * kPi));
    const Complex i{0, 1};
    CHECK(unitary_from_params(pauli_means(Pauli::Z)).max_abs_diff(pauli_z() * i) < 1e-12);
    CHECK(unitary_from_params(pauli_means(Pauli::X)).max_abs_diff(pauli_x() * -i) < 1e-12);
    const ComplexMatrix y = unitary_from_params(pauli_means(Pauli::Y));
    CHECK(std::abs(std::abs((y.adjoint() * pauli_y()).trace()) - 2.0) < 1e-12);
    CHECK(unitary_from_params({0, 0, 0}).max_abs_diff(ComplexMatrix::identity(2)) < 1e-15);
}

TEST_CASE("Kraus weights") {
    auto k = kraus_dephasing(0.0, 0.0, pauli_z());
    CHECK(weight(k.operators[0]) == doctest::Approx(1.0));
    CHECK(weight(k.operators[1]) == doctest::Approx(0.0));
    k = kraus_dephasing(0.0, 0.5, pauli_z());
    CHECK(weight(k.operators[0]) == doctest::Approx(0.5));
    k = kraus_dephasing(0.5, 0.3, pauli_z());
    CHECK(weight(k.operators[0]) == doctest::Approx(0.595));
    CHECK(weight(k.operators[1]) == doctest::Approx(0.405));

    auto d = kraus_depolarizing(0.0, 0.75, pauli_x(), pauli_y(), pauli_z());
    for (const auto& op : d.operators) CHECK(weight(op) == doctest::Approx(0.25));
    d = kraus_depolarizing(0.5, 0.2, pauli_x(), pauli_y(), pauli_z());
    CHECK(weight(d.operators[0]) == doctest::Approx(0.56));
    CHECK(weight(d.operators[1]) == doctest::Approx(0.44 / 3));
    CHECK(d.completeness_defect() < 1e-12);
}

TEST_CASE("channel ranges") {
    CHECK_THROWS_AS(validate(ChannelSpec{ChannelKind::Dephasing, 0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(validate(ChannelSpec{ChannelKind::Depolarizing, 0.5, 0.7}), DomainError);
    CHECK_NOTHROW(validate(ChannelSpec{ChannelKind::Depolarizing, 0.4, 1.0 / (3 * 0.4)}));
    CHECK_THROWS_AS(validate(ChannelSpec{ChannelKind::Depolarizing, 0.3, 1.05}), DomainError);
    CHECK_THROWS_AS(validate(ChannelSpec{ChannelKind::Dephasing, 1.5, 0.1}), DomainError);
    CHECK_THROWS_AS(validate(ChannelSpec{ChannelKind::Dephasing, 0.5, 0.1, -1.0}), DomainError);
}

TEST_CASE("sampled Kraus sets are complete and give valid states") {
    RandomStream root(42);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        RandomStream s = root.child(static_cast<std::uint64_t>(t));
        const ChannelKind kind = t % 2 ? ChannelKind::Depolarizing : ChannelKind::Dephasing;
        const KrausSet k = sample_random_kraus(ChannelSpec{kind, 0.3, 0.2, 1.0}, s);
        worst = std::max(worst, k.completeness_defect());
    }
    CHECK(worst < 1e-10);

    const DensityMatrix bell = build(Bell{});
    const int target[] = {0};
    for (int t = 0; t < 1000; ++t) {
        RandomStream s = root.child(5000 + static_cast<std::uint64_t>(t));
        const std::vector<KrausSet> k{sample_random_kraus(ChannelSpec{ChannelKind::Dephasing, 0.5, 0.3, 0.5}, s)};
        const DensityMatrix out = apply_local_channel(bell, k, target);
        CHECK_NOTHROW(out.check_psd());
    }
}

TEST_CASE("zero disorder reproduces the deterministic channel") {
    RandomStream rng(1);
    const DensityMatrix rho = random_state(2, rng);
    for (const ChannelKind kind : {ChannelKind::Dephasing, ChannelKind::Depolarizing}) {
        const ChannelSpec spec{kind, 0.4, 0.3, 0.0};
        RandomStream s(7);
        const ComplexMatrix a = apply_one(rho.matrix(), sample_random_kraus(spec, s), 0);
        const ComplexMatrix b = apply_one(rho.matrix(), deterministic_kraus(spec), 0);
        CHECK(a.max_abs_diff(b) < 1e-12);
    }
}

TEST_CASE("identity Kraus sets leave the state unchanged; distinct targets commute") {
    RandomStream rng(2);
    const DensityMatrix rho = random_state(3, rng);
    const std::vector<KrausSet> ids(2, KrausSet{{ComplexMatrix::identity(2)}});
    const int targets[] = {0, 2};
    CHECK(apply_local_channel(rho, ids, targets).matrix().max_abs_diff(rho.matrix()) < 1e-14);

    const KrausSet a = deterministic_kraus(ChannelSpec{ChannelKind::Depolarizing, 0.3, 0.4});
    const KrausSet b = deterministic_kraus(ChannelSpec{ChannelKind::Dephasing, 0.7, 0.2});
    const ComplexMatrix ab = apply_one(apply_one(rho.matrix(), a, 0), b, 1);
    const ComplexMatrix ba = apply_one(apply_one(rho.matrix(), b, 1), a, 0);
    CHECK(ab.max_abs_diff(ba) < 1e-12);

    const int dup[] = {1, 1};
    CHECK_THROWS_AS(apply_local_channel(rho, ids, dup), DomainError);
}

TEST_CASE("full dephasing removes the GHZ coherence") {
    const DensityMatrix ghz = build(GGHZ{3, 1.0 / std::sqrt(2.0)});
    const std::vector<KrausSet> k(2, deterministic_kraus(ChannelSpec{ChannelKind::Dephasing, 0.0, 0.5}));
    const int targets[] = {0, 1};
    const DensityMatrix out = apply_local_channel(ghz, k, targets);
    CHECK(std::abs(out(0, 7)) < 1e-15);
    CHECK(std::abs(out(0, 0).real() - 0.5) < 1e-15);
}

TEST_CASE("Bell dephasing matches the closed-form spectrum") {
    const std::vector<KrausSet> k{deterministic_kraus(ChannelSpec{ChannelKind::Dephasing, 0.5, 0.3})};
    const int target[] = {0};
    const auto ev = hermitian_eigenvalues(apply_local_channel(build(Bell{}), k, target).matrix());
    const auto closed = bell_dephasing_spectrum(0.3, 0.5);
    CHECK(std::abs(ev[0] - closed[0]) < 1e-9);
    CHECK(std::abs(ev[1] - closed[1]) < 1e-9);
}

TEST_CASE("depolarizing noise is unitarily covariant, dephasing is not") {
    RandomStream rng(4);
    const DensityMatrix rho = random_state(1, rng);
    const KrausSet dep = deterministic_kraus(ChannelSpec{ChannelKind::Depolarizing, 0.6, 0.4});
    for (const auto& w : {pauli_x(), pauli_y(), pauli_z()}) {
        const ComplexMatrix lhs = apply_one(w * rho.matrix() * w.adjoint(), dep, 0);
        const ComplexMatrix rhs = w * apply_one(rho.matrix(), dep, 0) * w.adjoint();
        CHECK(lhs.max_abs_diff(rhs) < 1e-10);
    }
    const ComplexMatrix u = unitary_from_params({0.3, 1.1, 2.0});
    CHECK(apply_one(u * rho.matrix() * u.adjoint(), dep, 0).max_abs_diff(u * apply_one(rho.matrix(), dep, 0) * u.adjoint()) <
          1e-10);

    // Z dephasing is a Pauli channel, so it does commute with X; the Hadamard
    // exposes the lack of covariance.
    const KrausSet dph = deterministic_kraus(ChannelSpec{ChannelKind::Dephasing, 0.6, 0.4});
    const ComplexMatrix x = pauli_x();
    CHECK(apply_one(x * rho.matrix() * x, dph, 0).max_abs_diff(x * apply_one(rho.matrix(), dph, 0) * x) < 1e-12);
    const ComplexMatrix h = (pauli_x() + pauli_z()) * (1.0 / std::sqrt(2.0));
    CHECK(apply_one(h * rho.matrix() * h, dph, 0).max_abs_diff(h * apply_one(rho.matrix(), dph, 0) * h) > 1e-3);
}

TEST_CASE("realized channels follow the draw policy") {
    const RandomStream stream(99);
    ChannelSpec spec{ChannelKind::Depolarizing, 0.3, 0.1, 0.5};
    auto per = realize_channels(spec, 2, stream);
    CHECK(per[0].operators[1].max_abs_diff(per[1].operators[1]) > 1e-6);
    spec.draw = DrawPolicy::SharedAcrossQubits;
    auto shared = realize_channels(spec, 2, stream);
    CHECK(shared[0].operators[1].max_abs_diff(shared[1].operators[1]) == 0.0);
    // Same stream, same draws.
    auto again = realize_channels(spec, 2, stream);
    CHECK(again[0].operators[2].max_abs_diff(shared[0].operators[2]) == 0.0);
}

TEST_CASE("channel text") {
    const ChannelSpec s = parse_channel("depolarizing:alpha=0.3,p=0.05,eps=0.5,draw=shared");
    CHECK(s.kind == ChannelKind::Depolarizing);
    CHECK(s.epsilon == 0.5);
    CHECK(s.draw == DrawPolicy::SharedAcrossQubits);
    const ChannelSpec t = parse_channel(format_channel(s));
    CHECK(format_channel(t) == format_channel(s));
    CHECK_THROWS_AS(parse_channel("amplitude:p=0.1"), DomainError);
    CHECK_THROWS_AS(parse_channel("dephasing:p=0.1,q=2"), DomainError);
    CHECK_THROWS_AS(parse_channel("dephasing:p=0.7"), DomainError);
}
