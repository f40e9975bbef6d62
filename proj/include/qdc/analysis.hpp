#pragma once

// Critical noise strengths (collapse, revival, non-Markovian advantage),
// parameter sweeps and quenched averages over random channels.

#include "qdc/capacity.hpp"
#include "qdc/channels.hpp"
#include "qdc/optimizer.hpp"
#include "qdc/states.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdc {

/// Everything needed for one capacity evaluation.
struct Problem {
    ResourceState state;
    PartyLayout layout;
    ChannelSpec channel;
    OptimizerConfig opt;
};

void validate(const Problem& problem);

/// Deterministic channels only; dispatches on the layout.
CapacityResult evaluate(const Problem& problem);

struct QuenchConfig {
    long realizations = 4000;
    std::uint64_t master_seed = 1;
    bool optimize_per_realization = false;
    int threads = 1;
};

struct QuenchedResult {
    double mean_capacity_bits = 0.0;
    double std_error_bits = 0.0;
    long realizations_used = 0;
    double classical_bound_bits = 0.0;
};

/// Stream key of realization k.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t k) noexcept;

/// Mean and standard error of the (clamped) capacity over independent draws
/// of the random channel. Realization k always uses the same draw, whatever
/// the thread count or p. Requires epsilon > 0.
QuenchedResult quenched_capacity(const Problem& problem, const QuenchConfig& qc);

/// Capacity as a function of p with the rest of the problem fixed. For random
/// channels the curve is the quenched mean. Values are cached per p.
class CapacityCurve {
public:
    explicit CapacityCurve(Problem base, std::optional<QuenchConfig> quench = std::nullopt);

    double classical_bound() const noexcept { return base_.layout.n_senders; }
    double p_max() const noexcept;
    const Problem& base() const noexcept { return base_; }

    /// Identity-encoding value: a lower bound on value(p).
    double lower(double p);
    /// Capacity (optimized where the problem asks for it); unclamped for
    /// deterministic channels.
    double value(double p);
    /// true when lower() already is the full value.
    bool lower_is_exact() const noexcept;
    /// value(p) > classical bound + slack, using lower() to skip the optimizer
    /// whenever possible.
    bool dense_codeable(double p);
    /// Clamped capacity max(N, value).
    double capacity(double p);

    long evaluations() const noexcept { return evaluations_; }

private:
    double compute(double p, bool optimize);

    Problem base_;
    std::optional<QuenchConfig> quench_;
    std::map<double, double> lower_cache_;
    std::map<double, double> value_cache_;
    long evaluations_ = 0;
};

struct ScanConfig {
    double scan_step = 1e-3;
    double refine = 1e-4;
};

struct CriticalStrengths {
    std::optional<double> p_c;
    std::optional<double> p_r;
    std::optional<double> p_a;
    double bracket_resolution = 0.0;
};

/// Smallest p at which the capacity has collapsed to the classical bound:
/// forward scan, then bisection on the first collapse. Points where the curve
/// only touches the bound between scan points are located by a golden-section
/// search around scan-local minima. None if the capacity never collapses or
/// does not exceed the bound at p = 0.
std::optional<double> find_pc(CapacityCurve& curve, const ScanConfig& scan = {});

/// Smallest p >= p_c at which the capacity rises above the bound again.
std::optional<double> find_pr(CapacityCurve& curve, double p_c, const ScanConfig& scan = {});

/// Smallest p at which the non-Markovian capacity exceeds the Markovian one
/// (both clamped) by more than the slack.
std::optional<double> find_pa(CapacityCurve& non_markovian, CapacityCurve& markovian, const ScanConfig& scan = {});

/// p_c, p_r and (for alpha > 0, when requested) p_a of `problem`; its p is
/// ignored.
CriticalStrengths critical_strengths(const Problem& problem, const ScanConfig& scan, bool with_pa,
                                     const std::optional<QuenchConfig>& quench = std::nullopt);

enum class SweepAxis { P, Alpha, StateParam };

struct SweepSpec {
    SweepAxis axis = SweepAxis::P;
    /// Key of the state parameter (e.g. "x", "b") for SweepAxis::StateParam.
    std::string state_key;
    double lo = 0.0;
    double hi = 0.5;
    /// Number of grid points, both ends included; 1 evaluates lo only.
    int steps = 51;
};

struct SweepRow {
    Problem problem;
    double axis_value = 0.0;
    CapacityResult result;
    std::optional<QuenchedResult> quenched;
};

/// One row per grid point, ordered by axis value. Grid point i uses optimizer
/// seed mix_seed(opt.seed, i). Random channels are quench-averaged with `quench`.
std::vector<SweepRow> sweep(const Problem& base, const SweepSpec& spec, const std::optional<QuenchConfig>& quench,
                            int threads);

}  // namespace qdc
