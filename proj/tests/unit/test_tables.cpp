#include "qdc/errors.hpp"
#include "qdc/tables.hpp"

#include <doctest.h>

using namespace qdc;

TEST_CASE("table ids and columns") {
    CHECK(parse_table_id("I") == TableId::Dephasing);
    CHECK(parse_table_id("II") == TableId::Depolarizing);
    CHECK(parse_table_id("III") == TableId::RandomDepolarizing);
    CHECK_THROWS_AS(parse_table_id("IV"), DomainError);
    const ChannelSpec ch{ChannelKind::Dephasing, 0.5, 0.1};
    const Problem p = table_problem("W 2S-2R", ch, OptimizerConfig{});
    CHECK(p.layout.two_receivers);
    CHECK(std::get<WUniform>(p.state).n_qubits == 4);
    CHECK(std::get<GGHZ>(table_problem("GHZ 3S-1R", ch, OptimizerConfig{}).state).n_qubits == 4);
    CHECK_THROWS_AS(table_problem("GHZ 4S-1R", ch, OptimizerConfig{}), DomainError);
}

TEST_CASE("depolarizing table structure") {
    const TableReport r = compute_table(TableId::Depolarizing, TableOptions{});
    CHECK(r.cells.size() == 30);
    for (const auto& c : r.cells) {
        CHECK(c.reference.has_value());
        CHECK(c.tolerance == 0.01);
        if (c.computed) CHECK(c.pass == (std::abs(*c.computed - *c.reference) <= 0.01));
    }
    const std::string csv = table_csv(r);
    CHECK(csv.starts_with("alpha,p_c GHZ 2S-1R computed,p_c GHZ 2S-1R reference,p_c GHZ 2S-1R pass"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
