#pragma once

// Box-constrained black-box minimization over per-sender encoding unitaries:
// an ISRES-style evolution strategy (no constraints, so stochastic ranking
// reduces to a plain sort) followed by a Nelder-Mead polish.

#include "qdc/channels.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qdc {

struct OptimizerConfig {
    /// 0 selects the default 20 * D, D = 3 * n_senders.
    int population = 0;
    long max_evaluations = 20000;
    /// Absolute objective change below which a phase counts as converged.
    double tolerance = 1e-6;
    std::uint64_t seed = 1;
    int restarts = 3;
    /// false evaluates the identity encoding only.
    bool enabled = true;

    int population_for(int n_senders) const { return population > 0 ? population : 20 * 3 * n_senders; }
};

/// Throws DomainError unless population >= 4 (when given), max_evaluations >=
/// population, tolerance > 0 and restarts >= 0.
void validate(const OptimizerConfig& config, int n_senders);

struct EncodingParams {
    std::vector<UnitaryParams> per_sender;

    static EncodingParams identity(int n_senders);
    /// Flattened (omega, theta, delta) per sender.
    std::vector<double> flatten() const;
    static EncodingParams unflatten(std::span<const double> flat);
    /// Per-sender 2x2 unitaries.
    std::vector<ComplexMatrix> unitaries() const;
};

/// Parameter box: omega, delta in [0, 4 pi], theta in [0, 2 pi].
double param_upper_bound(int component);

using EncodingObjective = std::function<double(const EncodingParams&)>;

struct OptimizationResult {
    double best_value = 0.0;
    EncodingParams best_params;
    long evaluations = 0;
    /// true when the schedule finished before the evaluation budget ran out.
    bool completed = false;
};

/// Deterministic for a fixed config. The sequence of evaluated points does not
/// depend on max_evaluations (the budget only truncates it), so a larger budget
/// never gives a worse result. The identity encoding is always evaluated first.
/// Throws NumericError if the objective returns a non-finite value.
OptimizationResult minimize(const EncodingObjective& objective, int n_senders, const OptimizerConfig& config);

}  // namespace qdc
