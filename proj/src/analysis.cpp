#include "qdc/analysis.hpp"

#include "qdc/errors.hpp"
#include "qdc/parallel.hpp"
#include "qdc/random.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

namespace {

// Scan-local minima whose surplus is below this are searched for a touch of
// the classical bound between scan points.
constexpr double kTouchBand = 1e-3;
constexpr double kTouchWidth = 1e-7;
constexpr double kInvPhi = 0.6180339887498949;

// Inclusive forward grid from `start` with the end point clipped to `stop`.
std::vector<double> scan_grid(double start, double stop, double step) {
    std::vector<double> grid;
    for (long i = 1;; ++i) {
        const double p = start + static_cast<double>(i) * step;
        if (p >= stop - 1e-12) {
            if (stop > start) grid.push_back(stop);
            break;
        }
        grid.push_back(p);
    }
    return grid;
}

// pred(lo) != pred(hi) = target; returns the smallest grid-free p within
// `refine` of the transition, i.e. the end of the final bracket with pred == target.
template <class Pred>
double bisect(Pred&& pred, double lo, double hi, double refine) {
    while (hi - lo > refine) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

// Minimizer of f on [a, b].
template <class F>
double golden_section(F&& f, double a, double b, double width) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > width) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

}  // namespace

void validate(const Problem& problem) {
    validate(problem.state);
    validate(problem.layout, qubit_count(problem.state));
    validate(problem.channel);
    validate(problem.opt, problem.layout.n_senders);
}

CapacityResult evaluate(const Problem& problem) {
    validate(problem);
    return noisy_capacity(build(problem.state), problem.layout, problem.channel, nullptr, problem.opt);
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t k) noexcept {
    return mix_seed(master_seed, k);
}

QuenchedResult quenched_capacity(const Problem& problem, const QuenchConfig& qc) {
    validate(problem);
    if (!problem.channel.is_random()) throw DomainError("quenched average needs epsilon > 0");
    if (qc.realizations < 1) throw DomainError("quenched average needs at least one realization");
    const DensityMatrix rho = build(problem.state);
    OptimizerConfig opt = problem.opt;
    opt.enabled = qc.optimize_per_realization;

    std::vector<double> values(static_cast<std::size_t>(qc.realizations));
    parallel_for(values.size(), qc.threads, [&](std::size_t k) {
        const RandomStream stream(realization_seed(qc.master_seed, k));
        const auto kraus = realize_channels(problem.channel, problem.layout.n_senders, stream);
        OptimizerConfig local = opt;
        local.seed = mix_seed(opt.seed, k);
        values[k] = noisy_capacity(rho, problem.layout, problem.channel, &kraus, local).capacity_bits;
    });

    // Ordered reduction keeps the result bit-identical for any thread count.
    double sum = 0.0;
    for (const double v : values) sum += v;
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    const double se = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return {mean, se, qc.realizations, static_cast<double>(problem.layout.n_senders)};
}

CapacityCurve::CapacityCurve(Problem base, std::optional<QuenchConfig> quench)
    : base_(std::move(base)), quench_(std::move(quench)) {
    validate(base_);
    if (base_.channel.is_random() && !quench_) throw DomainError("random channel curve needs a quench config");
    if (!base_.channel.is_random()) quench_.reset();
}

double CapacityCurve::p_max() const noexcept {
    return max_noise_strength(base_.channel.kind, base_.channel.alpha);
}

bool CapacityCurve::lower_is_exact() const noexcept {
    if (quench_) return !quench_->optimize_per_realization;
    return !base_.opt.enabled || base_.channel.is_covariant();
}

double CapacityCurve::compute(double p, bool optimize) {
    Problem pr = base_;
    pr.channel.p = p;
    if (quench_) {
        QuenchConfig qc = *quench_;
        qc.optimize_per_realization = qc.optimize_per_realization && optimize;
        evaluations_ += qc.realizations;
        return quenched_capacity(pr, qc).mean_capacity_bits;
    }
    pr.opt.enabled = pr.opt.enabled && optimize;
    const CapacityResult r = evaluate(pr);
    evaluations_ += r.evaluations;
    return r.unclamped_bits;
}

double CapacityCurve::lower(double p) {
    if (lower_is_exact()) return value(p);
    if (const auto it = lower_cache_.find(p); it != lower_cache_.end()) return it->second;
    return lower_cache_[p] = compute(p, false);
}

double CapacityCurve::value(double p) {
    if (const auto it = value_cache_.find(p); it != value_cache_.end()) return it->second;
    return value_cache_[p] = compute(p, true);
}

bool CapacityCurve::dense_codeable(double p) {
    const double bound = classical_bound() + kDenseCodingSlack;
    if (lower(p) > bound) return true;
    if (lower_is_exact()) return false;
    return value(p) > bound;
}

double CapacityCurve::capacity(double p) {
    return std::max(classical_bound(), value(p));
}

std::optional<double> find_pc(CapacityCurve& curve, const ScanConfig& scan) {
    if (!curve.dense_codeable(0.0)) return std::nullopt;
    const double bound = curve.classical_bound();
    auto collapsed = [&](double p) { return !curve.dense_codeable(p); };
    // Best cheap estimate of the surplus at a point already known to be alive.
    auto estimate = [&](double p) { return curve.lower(p) - bound; };

    double prev = 0.0, prev_prev = -1.0;
    double g_prev = estimate(0.0), g_prev_prev = 0.0;
    for (const double p : scan_grid(0.0, curve.p_max(), scan.scan_step)) {
        if (collapsed(p)) return bisect(collapsed, prev, p, scan.refine);
        const double g = estimate(p);
        if (prev_prev >= 0.0 && g_prev <= g_prev_prev && g_prev <= g && g_prev < kTouchBand) {
            auto surplus = [&](double q) { return curve.value(q) - bound; };
            const double p_min = golden_section(surplus, prev_prev, p, kTouchWidth);
            if (collapsed(p_min)) return bisect(collapsed, prev_prev, p_min, scan.refine);
        }
        prev_prev = prev;
        g_prev_prev = g_prev;
        prev = p;
        g_prev = g;
    }
    return std::nullopt;
}

std::optional<double> find_pr(CapacityCurve& curve, double p_c, const ScanConfig& scan) {
    auto revived = [&](double p) { return curve.dense_codeable(p); };
    double prev = p_c;
    for (const double p : scan_grid(p_c, curve.p_max(), scan.scan_step)) {
        if (revived(p)) return bisect(revived, prev, p, scan.refine);
        prev = p;
    }
    return std::nullopt;
}

std::optional<double> find_pa(CapacityCurve& non_markovian, CapacityCurve& markovian, const ScanConfig& scan) {
    if (non_markovian.base().channel.alpha <= 0.0) return std::nullopt;
    auto advantage = [&](double p) {
        const double reference = markovian.capacity(p) + kDenseCodingSlack;
        if (std::max(non_markovian.classical_bound(), non_markovian.lower(p)) > reference) return true;
        if (non_markovian.lower_is_exact()) return false;
        return non_markovian.capacity(p) > reference;
    };
    const double stop = std::min(non_markovian.p_max(), markovian.p_max());
    double prev = 0.0;
    for (const double p : scan_grid(0.0, stop, scan.scan_step)) {
        if (advantage(p)) return bisect(advantage, prev, p, scan.refine);
        prev = p;
    }
    return std::nullopt;
}

CriticalStrengths critical_strengths(const Problem& problem, const ScanConfig& scan, bool with_pa,
                                     const std::optional<QuenchConfig>& quench) {
    CriticalStrengths out;
    out.bracket_resolution = scan.refine;
    CapacityCurve curve(problem, quench);
    out.p_c = find_pc(curve, scan);
    if (out.p_c) out.p_r = find_pr(curve, *out.p_c, scan);
    if (with_pa && problem.channel.alpha > 0.0) {
        Problem markov = problem;
        markov.channel.alpha = 0.0;
        CapacityCurve reference(markov, quench);
        out.p_a = find_pa(curve, reference, scan);
    }
    return out;
}

std::vector<SweepRow> sweep(const Problem& base, const SweepSpec& spec, const std::optional<QuenchConfig>& quench,
                            int threads) {
    if (spec.steps < 1) throw DomainError("sweep: steps must be >= 1");
    if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || spec.hi < spec.lo)
        throw DomainError("sweep: need finite lo <= hi");
    if (base.channel.is_random() && !quench) throw DomainError("sweep: random channel needs a quench config");

    std::vector<SweepRow> rows(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double t = spec.steps == 1 ? 0.0 : static_cast<double>(i) / (spec.steps - 1);
        const double v = i == spec.steps - 1 && spec.steps > 1 ? spec.hi : spec.lo + t * (spec.hi - spec.lo);
        auto& row = rows[static_cast<std::size_t>(i)];
        row.axis_value = v;
        row.problem = base;
        switch (spec.axis) {
            case SweepAxis::P: row.problem.channel.p = v; break;
            case SweepAxis::Alpha: row.problem.channel.alpha = v; break;
            case SweepAxis::StateParam: row.problem.state = with_state_param(base.state, spec.state_key, v); break;
        }
        row.problem.opt.seed = mix_seed(base.opt.seed, static_cast<std::uint64_t>(i));
        validate(row.problem);
    }

    // Quenched rows parallelize inside; deterministic rows across grid points.
    if (quench) {
        for (auto& row : rows) {
            QuenchConfig qc = *quench;
            qc.threads = threads;
            row.quenched = quenched_capacity(row.problem, qc);
        }
    } else {
        parallel_for(rows.size(), threads, [&](std::size_t i) { rows[i].result = evaluate(rows[i].problem); });
    }
    return rows;
}

}  // namespace qdc
