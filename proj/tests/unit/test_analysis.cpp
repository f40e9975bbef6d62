#include "qdc/analysis.hpp"
#include "qdc/errors.hpp"
#include "qdc/oracles.hpp"
#include "qdc/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace qdc;

namespace {

Problem ghz_problem(int n_senders, ChannelSpec channel, bool optimize) {
    Problem p;
    p.state = GGHZ{n_senders + 1, 1.0 / std::sqrt(2.0)};
    p.layout = PartyLayout{n_senders, false, 1};
    p.channel = channel;
    p.opt.enabled = optimize;
    return p;
}

}  // namespace

TEST_CASE("identity-encoding critical strengths match the closed forms") {
    for (const double a : {0.5, 0.9}) {
        const Problem pr = ghz_problem(2, ChannelSpec{ChannelKind::Dephasing, a, 0.0}, false);
        const auto cs = critical_strengths(pr, ScanConfig{}, true);
        REQUIRE(cs.p_c);
        // The surplus vanishes like c^4 in the coherence c, so it falls below
        // the dense-coding slack slightly before the exact root.
        CHECK(*cs.p_c <= pc_closed_form(a) + 1e-4);
        CHECK(*cs.p_c >= pc_closed_form(a) - 5e-3);
        REQUIRE(cs.p_a);
        CHECK(std::abs(*cs.p_a - pa_closed_form(a)) <= 1e-4);
        REQUIRE(cs.p_r);
        CHECK(*cs.p_r >= *cs.p_c);
        CHECK(cs.bracket_resolution == 1e-4);
    }
}

TEST_CASE("Bell depolarizing collapse agrees with the entropy threshold") {
    Problem pr;
    pr.state = Bell{};
    pr.layout = PartyLayout{1, false, 1};
    pr.channel = ChannelSpec{ChannelKind::Depolarizing, 0.0, 0.0};
    CapacityCurve curve(pr);
    const auto pc = find_pc(curve);
    REQUIRE(pc);
    CHECK(std::abs(*pc - bell_depolarizing_threshold(0.0)) <= 1e-4);
    CHECK_FALSE(find_pr(curve, *pc));
}

TEST_CASE("gGHZ two-receiver bound never collapses under dephasing") {
    Problem pr;
    pr.state = GGHZ{4, 1.0 / std::sqrt(2.0)};
    pr.layout = PartyLayout{2, true, 1};
    pr.channel = ChannelSpec{ChannelKind::Dephasing, 0.5, 0.0};
    pr.opt.enabled = false;
    CapacityCurve curve(pr);
    CHECK_FALSE(find_pc(curve, ScanConfig{0.01, 1e-4}));
}

TEST_CASE("no p_c without a quantum advantage at p = 0") {
    Problem pr;
    pr.state = GGHZ{3, 1.0};
    pr.layout = PartyLayout{2, false, 1};
    pr.channel = ChannelSpec{ChannelKind::Depolarizing, 0.0, 0.0};
    CapacityCurve curve(pr);
    CHECK_FALSE(find_pc(curve));
}

TEST_CASE("quenched averages") {
    Problem pr = ghz_problem(2, ChannelSpec{ChannelKind::Depolarizing, 0.3, 0.05, 0.5}, false);
    QuenchConfig qc;
    qc.realizations = 400;
    qc.master_seed = 7;

    SUBCASE("independent of the thread count") {
        const auto one = quenched_capacity(pr, qc);
        qc.threads = 3;
        const auto three = quenched_capacity(pr, qc);
        CHECK(one.mean_capacity_bits == three.mean_capacity_bits);
        CHECK(one.std_error_bits == three.std_error_bits);
        CHECK(one.realizations_used == 400);
    }
    SUBCASE("vanishing disorder approaches the deterministic value") {
        pr.channel.epsilon = 1e-7;
        const auto q = quenched_capacity(pr, qc);
        Problem det = pr;
        det.channel.epsilon = 0.0;
        CHECK(std::abs(q.mean_capacity_bits - evaluate(det).capacity_bits) < 1e-6);
        CHECK(q.std_error_bits < 1e-6);
    }
    SUBCASE("standard error shrinks like 1/sqrt(R)") {
        pr.channel.p = 0.02;
        qc.realizations = 2000;
        const double se2000 = quenched_capacity(pr, qc).std_error_bits;
        qc.realizations = 4000;
        const double se4000 = quenched_capacity(pr, qc).std_error_bits;
        CHECK(std::abs(se4000 / se2000 - 1.0 / std::sqrt(2.0)) < 0.2 / std::sqrt(2.0));
    }
    SUBCASE("deterministic channels are rejected") {
        pr.channel.epsilon = 0.0;
        CHECK_THROWS_AS(quenched_capacity(pr, qc), DomainError);
    }
    SUBCASE("realization seeds are stable") {
        CHECK(realization_seed(7, 3) == realization_seed(7, 3));
        CHECK(realization_seed(7, 3) != realization_seed(7, 4));
    }
}

TEST_CASE("sweeps") {
    const Problem base = ghz_problem(2, ChannelSpec{ChannelKind::Dephasing, 0.8, 0.0}, false);
    SweepSpec spec;
    spec.lo = 0.0;
    spec.hi = 0.5;
    spec.steps = 6;
    const auto rows = sweep(base, spec, std::nullopt, 1);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].axis_value > rows[i - 1].axis_value);
    CHECK(rows.back().axis_value == 0.5);
    CHECK(rows.front().result.capacity_bits == doctest::Approx(3.0).epsilon(1e-9));

    const auto threaded = sweep(base, spec, std::nullopt, 4);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].result.capacity_bits == threaded[i].result.capacity_bits);

    spec.steps = 1;
    CHECK(sweep(base, spec, std::nullopt, 1).size() == 1);

    spec = SweepSpec{SweepAxis::StateParam, "x", 0.0, 1.0, 3};
    const auto xs = sweep(base, spec, std::nullopt, 1);
    CHECK(std::get<GGHZ>(xs[1].problem.state).x == 0.5);

    spec = SweepSpec{SweepAxis::P, "", 0.0, 0.6, 3};
    CHECK_THROWS_AS(sweep(base, spec, std::nullopt, 1), DomainError);
    spec = SweepSpec{SweepAxis::Alpha, "", 0.5, 0.2, 3};
    CHECK_THROWS_AS(sweep(base, spec, std::nullopt, 1), DomainError);
}
