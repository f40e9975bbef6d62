#include "qdc/optimizer.hpp"

#include "qdc/errors.hpp"
#include "qdc/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace qdc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ISRES constants (Runarsson & Yao): expected rate phi = 1, differential
// variation step gamma, step-size smoothing alpha, parent fraction 1/7.
constexpr double kGamma = 0.85;
constexpr double kSmoothing = 0.2;
constexpr int kParentDivisor = 7;
constexpr int kMutationRetries = 10;
// Budget-independent phase caps.
constexpr int kMaxGenerations = 600;
constexpr int kSimplexEvalsPerDim = 200;
constexpr double kSimplexStep = 0.05;

struct BudgetExhausted {};

using Point = std::vector<double>;

class Evaluator {
public:
    Evaluator(const EncodingObjective& f, long budget) : f_(f), budget_(budget) {}

    double operator()(const Point& x) {
        if (count_ >= budget_) throw BudgetExhausted{};
        ++count_;
        const double v = f_(EncodingParams::unflatten(x));
        if (!std::isfinite(v)) throw NumericError("optimizer: objective returned a non-finite value");
        if (v < best_value_) {
            best_value_ = v;
            best_ = x;
        }
        return v;
    }

    long count() const { return count_; }
    double best_value() const { return best_value_; }
    const Point& best() const { return best_; }

private:
    const EncodingObjective& f_;
    long budget_;
    long count_ = 0;
    double best_value_ = std::numeric_limits<double>::infinity();
    Point best_;
};

struct Box {
    Point lo, hi;

    explicit Box(int dim) : lo(static_cast<std::size_t>(dim), 0.0), hi(static_cast<std::size_t>(dim)) {
        for (int i = 0; i < dim; ++i) hi[static_cast<std::size_t>(i)] = param_upper_bound(i);
    }
    std::size_t size() const { return lo.size(); }
    bool contains(const Point& x) const {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
    void clamp(Point& x) const {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    }
};

struct Individual {
    Point x;
    Point sigma;
    double f = 0.0;
};

// One ES run; returns when the generation-to-generation change of both the
// best value and the parent mean drops below tol, or after kMaxGenerations.
void evolve(Evaluator& eval, const Box& box, int lambda, double tol, RandomStream& rng, const Point& seed_a,
            const Point* seed_b) {
    const std::size_t n = box.size();
    const int mu = std::max(1, lambda / kParentDivisor);
    const double tau = 1.0 / std::sqrt(2.0 * std::sqrt(static_cast<double>(n)));
    const double tau_prime = 1.0 / std::sqrt(2.0 * static_cast<double>(n));

    std::vector<Individual> pop(static_cast<std::size_t>(lambda));
    for (std::size_t k = 0; k < pop.size(); ++k) {
        auto& ind = pop[k];
        ind.x.resize(n);
        ind.sigma.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            ind.sigma[j] = (box.hi[j] - box.lo[j]) / std::sqrt(static_cast<double>(n));
            ind.x[j] = box.lo[j] + rng.uniform() * (box.hi[j] - box.lo[j]);
        }
    }
    pop[0].x = seed_a;
    if (seed_b != nullptr && pop.size() > 1) pop[1].x = *seed_b;

    double prev_best = std::numeric_limits<double>::infinity();
    double prev_mean = std::numeric_limits<double>::infinity();
    for (int gen = 0; gen < kMaxGenerations; ++gen) {
        for (auto& ind : pop) ind.f = eval(ind.x);
        std::stable_sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) { return a.f < b.f; });

        double mean = 0.0;
        for (int i = 0; i < mu; ++i) mean += pop[static_cast<std::size_t>(i)].f;
        mean /= mu;
        if (std::abs(prev_best - eval.best_value()) < tol && std::abs(prev_mean - mean) < tol) return;
        prev_best = eval.best_value();
        prev_mean = mean;

        std::vector<Individual> next(static_cast<std::size_t>(lambda));
        for (int k = 0; k < lambda; ++k) {
            auto& child = next[static_cast<std::size_t>(k)];
            const auto& parent = pop[static_cast<std::size_t>(k % mu)];
            if (k < mu - 1) {
                // Differential variation towards the best individual.
                child.sigma = parent.sigma;
                child.x.resize(n);
                const auto& best = pop[0].x;
                const auto& nxt = pop[static_cast<std::size_t>(k + 1)].x;
                for (std::size_t j = 0; j < n; ++j) child.x[j] = parent.x[j] + kGamma * (best[j] - nxt[j]);
                if (box.contains(child.x)) continue;
            }
            child.sigma.resize(n);
            const double global = tau_prime * rng.normal();
            for (std::size_t j = 0; j < n; ++j) child.sigma[j] = parent.sigma[j] * std::exp(global + tau * rng.normal());
            child.x.resize(n);
            for (int attempt = 0; attempt < kMutationRetries; ++attempt) {
                for (std::size_t j = 0; j < n; ++j) child.x[j] = parent.x[j] + child.sigma[j] * rng.normal();
                if (box.contains(child.x)) break;
            }
            box.clamp(child.x);
            for (std::size_t j = 0; j < n; ++j)
                child.sigma[j] = parent.sigma[j] + kSmoothing * (child.sigma[j] - parent.sigma[j]);
        }
        pop = std::move(next);
    }
}

// Nelder-Mead with standard coefficients; points are clamped to the box.
void polish(Evaluator& eval, const Box& box, const Point& start, double tol) {
    const std::size_t n = box.size();
    const long cap = eval.count() + kSimplexEvalsPerDim * static_cast<long>(n);
    std::vector<Point> simplex(n + 1, start);
    std::vector<double> f(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double step = kSimplexStep * (box.hi[i] - box.lo[i]);
        simplex[i + 1][i] += (start[i] + step <= box.hi[i]) ? step : -step;
    }
    for (std::size_t i = 0; i <= n; ++i) f[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto trial = [&](const Point& centroid, const Point& worst, double coef) {
        Point p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (worst[j] - centroid[j]);
        box.clamp(p);
        return p;
    };
    while (eval.count() < cap) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
        if (f[hi] - f[lo] < tol) return;

        Point centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == hi) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
        }
        const Point xr = trial(centroid, simplex[hi], -1.0);
        const double fr = eval(xr);
        if (fr < f[lo]) {
            const Point xe = trial(centroid, simplex[hi], -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[hi] = xe;
                f[hi] = fe;
            } else {
                simplex[hi] = xr;
                f[hi] = fr;
            }
        } else if (fr < f[second]) {
            simplex[hi] = xr;
            f[hi] = fr;
        } else {
            const bool outside = fr < f[hi];
            const Point xc = trial(centroid, outside ? xr : simplex[hi], 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, f[hi])) {
                simplex[hi] = xc;
                f[hi] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[lo][j] + 0.5 * (simplex[i][j] - simplex[lo][j]);
                    f[i] = eval(simplex[i]);
                }
            }
        }
    }
}

}  // namespace

void validate(const OptimizerConfig& config, int n_senders) {
    if (n_senders < 1) throw DomainError("optimizer: need at least one sender");
    const int pop = config.population_for(n_senders);
    if (pop < 4) throw DomainError("optimizer: population must be >= 4");
    if (config.max_evaluations < pop) throw DomainError("optimizer: max_evaluations must be >= population");
    if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance))
        throw DomainError("optimizer: tolerance must be positive");
    if (config.restarts < 0) throw DomainError("optimizer: restarts must be >= 0");
}

EncodingParams EncodingParams::identity(int n_senders) {
    return EncodingParams{std::vector<UnitaryParams>(static_cast<std::size_t>(n_senders))};
}

std::vector<double> EncodingParams::flatten() const {
    std::vector<double> out;
    out.reserve(per_sender.size() * 3);
    for (const auto& u : per_sender) {
        out.push_back(u.omega);
        out.push_back(u.theta);
        out.push_back(u.delta);
    }
    return out;
}

EncodingParams EncodingParams::unflatten(std::span<const double> flat) {
    if (flat.size() % 3 != 0) throw DomainError("encoding parameters must come in (omega, theta, delta) triples");
    EncodingParams p;
    for (std::size_t i = 0; i < flat.size(); i += 3) p.per_sender.push_back({flat[i], flat[i + 1], flat[i + 2]});
    return p;
}

std::vector<ComplexMatrix> EncodingParams::unitaries() const {
    std::vector<ComplexMatrix> out;
    out.reserve(per_sender.size());
    for (const auto& u : per_sender) out.push_back(unitary_from_params(u));
    return out;
}

double param_upper_bound(int component) {
    return component % 3 == 1 ? kTwoPi : 2.0 * kTwoPi;
}

OptimizationResult minimize(const EncodingObjective& objective, int n_senders, const OptimizerConfig& config) {
    validate(config, n_senders);
    const EncodingParams identity = EncodingParams::identity(n_senders);
    if (!config.enabled) {
        const double v = objective(identity);
        if (!std::isfinite(v)) throw NumericError("optimizer: objective returned a non-finite value");
        return {v, identity, 1, true};
    }

    const int dim = 3 * n_senders;
    const Box box(dim);
    Evaluator eval(objective, config.max_evaluations);
    const Point start = identity.flatten();
    bool completed = false;
    try {
        eval(start);
        const RandomStream root(config.seed);
        for (int r = 0; r <= config.restarts; ++r) {
            RandomStream rng = root.child(static_cast<std::uint64_t>(r));
            const Point incumbent = eval.best();
            evolve(eval, box, config.population_for(n_senders), config.tolerance, rng, start,
                   r > 0 ? &incumbent : nullptr);
            polish(eval, box, eval.best(), config.tolerance);
        }
        completed = true;
    } catch (const BudgetExhausted&) {
    }
    return {eval.best_value(), EncodingParams::unflatten(eval.best()), eval.count(), completed};
}

}  // namespace qdc
