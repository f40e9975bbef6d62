#pragma once

// Critical-strength tables for GHZ and W resources: computed values side by
// side with published reference values.

#include "qdc/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdc {

enum class TableId {
    /// p_c, p_r, p_a under deterministic dephasing.
    Dephasing,
    /// p_c under deterministic (covariant) depolarizing noise.
    Depolarizing,
    /// p_c of the quenched mean under random depolarizing noise.
    RandomDepolarizing,
};

/// Accepts "I", "II", "III" and the names dephasing, depolarizing, random.
TableId parse_table_id(std::string_view text);
std::string table_name(TableId id);

struct TableOptions {
    OptimizerConfig opt;
    ScanConfig scan;
    long realizations = 4000;
    std::uint64_t master_seed = 1;
    int threads = 1;
    /// Random table only: a six-cell subset at 500 realizations and +-0.03.
    bool fast = false;
};

struct TableCell {
    double alpha = 0.0;
    /// p_c, p_r or p_a.
    std::string quantity;
    /// Resource and layout, e.g. "GHZ 2S-1R".
    std::string column;
    std::optional<double> epsilon;
    std::optional<double> reference;
    std::optional<double> computed;
    double tolerance = 0.0;
    /// |computed - reference| <= tolerance, or both absent.
    bool pass = false;
};

struct TableReport {
    TableId id = TableId::Dephasing;
    long realizations = 0;
    std::vector<TableCell> cells;

    bool all_pass() const;
};

/// Cells in row-major order (alpha, then column).
TableReport compute_table(TableId id, const TableOptions& options);

/// Wide CSV: one row per alpha with computed, reference and pass columns per
/// cell key, and the tool version.
std::string table_csv(const TableReport& report);

/// Problem behind a table column ("GHZ 2S-1R", "W 2S-2R", ...) with the given
/// channel; throws DomainError for unknown names.
Problem table_problem(std::string_view column, const ChannelSpec& channel, const OptimizerConfig& opt);

}  // namespace qdc
