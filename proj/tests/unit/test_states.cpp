#include "qdc/capacity.hpp"
#include "qdc/errors.hpp"
#include "qdc/states.hpp"

#include <doctest.h>

#include <cmath>

using namespace qdc;

TEST_CASE("built states") {
    const double s = 1.0 / std::sqrt(2.0);
    const DensityMatrix ghz = build(GGHZ{3, s});
    CHECK(std::abs(ghz(0, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(ghz(0, 7).real() - 0.5) < 1e-15);
    CHECK(std::abs(ghz(7, 7).real() - 0.5) < 1e-15);

    const DensityMatrix bell = build(Bell{});
    CHECK(std::abs(bell(0, 3).real() - 0.5) < 1e-15);

    const DensityMatrix w = build(GW3{0.5, 0.25});
    CHECK(std::abs(w(1, 1).real() - 0.5) < 1e-15);
    CHECK(std::abs(w(2, 2).real() - 0.25) < 1e-15);
    CHECK(std::abs(w(4, 4).real() - 0.25) < 1e-15);
    CHECK(std::abs(w(1, 2).real() - std::sqrt(0.5) * 0.5) < 1e-15);
}

TEST_CASE("w_half and uniform W") {
    const auto a = std::get<GW3>(w_half(3, 0.25));
    CHECK(a.a == 0.5);
    CHECK(a.b == 0.25);
    const auto b = std::get<GW4>(w_half(4, 1.0 / 6, 1.0 / 6));
    CHECK(b.a == 0.5);
    CHECK(build(WUniform{3}).matrix().max_abs_diff(build(GW3{1.0 / 3, 1.0 / 3}).matrix()) < 1e-12);
    const auto c = capacity_noiseless(build(w_half(3, 0.25)), PartyLayout{2, false, 1});
    CHECK(c.capacity_bits == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("every state is pure and gGHZ has the expected receiver marginal") {
    for (const auto& st : {ResourceState{GGHZ{3, 0.6}}, ResourceState{GGHZ{4, 0.3}}, ResourceState{GGHZ{5, 0.9}},
                           ResourceState{GW3{0.2, 0.5}}, ResourceState{GW4{0.5, 0.1, 0.2}}, ResourceState{WUniform{4}},
                           ResourceState{Bell{}}}) {
        CHECK(std::abs(von_neumann_entropy(build(st))) < 1e-9);
    }
    for (const double x : {0.1, 0.6, 0.9}) {
        const DensityMatrix rho = build(GGHZ{4, x});
        const int keep[] = {3};
        const auto ev = hermitian_eigenvalues(partial_trace(rho, keep).matrix());
        CHECK(std::abs(ev[0] - std::max(x * x, 1 - x * x)) < 1e-12);
        CHECK(std::abs(ev[1] - std::min(x * x, 1 - x * x)) < 1e-12);
    }
}

TEST_CASE("state parameters are validated") {
    CHECK_THROWS_AS(validate(ResourceState{GGHZ{3, 1.2}}), DomainError);
    CHECK_THROWS_AS(validate(ResourceState{GGHZ{2, 0.5}}), DomainError);
    CHECK_THROWS_AS(validate(ResourceState{GW3{0.7, 0.5}}), DomainError);
    CHECK_THROWS_AS(validate(ResourceState{GW4{0.5, 0.5, 0.1}}), DomainError);
    CHECK_THROWS_AS(validate(ResourceState{WUniform{5}}), DomainError);
}

TEST_CASE("state text round trip") {
    for (const char* text : {"gghz:n=3,x=0.70711", "gw3:a=0.5,b=0.25", "gw4:a=0.5,b=0.1,c=0.2", "w:n=4", "bell"}) {
        const ResourceState s = parse_state(text);
        CHECK(format_state(parse_state(format_state(s))) == format_state(s));
    }
    CHECK(std::holds_alternative<GW3>(parse_state("whalf:n=3,b=0.25")));
    CHECK_THROWS_AS(parse_state("cluster:n=3"), DomainError);
    CHECK_THROWS_AS(parse_state("gghz:n=3,y=1"), DomainError);
    CHECK(std::get<GGHZ>(with_state_param(parse_state("gghz:n=3,x=0.5"), "x", 0.6)).x == 0.6);
    CHECK_THROWS_AS(with_state_param(parse_state("bell"), "x", 0.6), DomainError);
}
