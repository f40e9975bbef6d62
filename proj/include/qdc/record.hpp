#pragma once

// Flat run records shared by every subcommand, with CSV (RFC 4180 quoting)
// and JSON forms. Inputs are written exactly (shortest round-trip text),
// outputs with 12 significant digits.

#include "qdc/analysis.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdc {

std::string tool_version();

struct RunRecord {
    // Inputs.
    std::string state;
    std::string state_params;
    int n_senders = 0;
    int receivers = 1;
    std::optional<int> split;
    std::string channel;
    double alpha = 0.0;
    std::optional<double> p;
    double epsilon = 0.0;
    std::string draw_policy;
    bool optimized = false;
    std::optional<long> realizations;
    std::optional<std::uint64_t> master_seed;
    std::uint64_t opt_seed = 0;
    int opt_population = 0;
    long opt_max_evals = 0;
    int opt_restarts = 0;
    double opt_tolerance = 0.0;
    std::string version;

    // Outputs.
    std::optional<double> capacity_bits;
    std::optional<double> classical_bound;
    std::optional<bool> dense_codeable;
    std::optional<double> std_error;
    std::optional<double> p_c;
    std::optional<double> p_r;
    std::optional<double> p_a;
    std::optional<double> bracket_resolution;
};

/// Record of the inputs of `problem` (outputs left empty). `optimized` is
/// whether the encoding is actually optimized for this problem.
RunRecord make_record(const Problem& problem);
RunRecord make_record(const Problem& problem, const CapacityResult& result);
RunRecord make_record(const Problem& problem, const QuenchConfig& qc, const QuenchedResult& result);
RunRecord make_record(const Problem& problem, const CriticalStrengths& cs, const std::optional<QuenchConfig>& qc);

/// Problem described by a record's inputs; p defaults to 0 when empty.
Problem problem_from_record(const RunRecord& record);
/// Quench settings of a record, if it has any.
std::optional<QuenchConfig> quench_from_record(const RunRecord& record);

const std::vector<std::string>& csv_header();
std::string csv_header_line();
std::string to_csv_row(const RunRecord& record);
/// Parses one row written by to_csv_row (field order of csv_header()).
RunRecord from_csv_row(std::string_view line);

std::string to_json(const RunRecord& record);
RunRecord from_json(std::string_view text);

/// RFC 4180 field quoting and line splitting.
std::string csv_escape(std::string_view field);
std::vector<std::string> csv_split(std::string_view line);

}  // namespace qdc
