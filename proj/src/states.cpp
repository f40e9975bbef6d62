#include "qdc/states.hpp"

#include "qdc/errors.hpp"
#include "qdc/textio.hpp"

#include <cmath>
#include <vector>

namespace qdc {

namespace {

// Slack for parameter sums like a + b <= 1 given as decimal text.
constexpr double kWeightSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

double clamp_weight(double w) { return w < 0.0 ? 0.0 : w; }

std::vector<Complex> single_excitations(std::span<const double> weights) {
    // weights[k] is the weight of the excitation on the k-th qubit from the
    // right, i.e. basis index 2^k.
    const std::size_t n = weights.size();
    std::vector<Complex> amp(std::size_t{1} << n, Complex{});
    for (std::size_t k = 0; k < n; ++k) amp[std::size_t{1} << k] = std::sqrt(clamp_weight(weights[k]));
    return amp;
}

}  // namespace

void validate(const ResourceState& state) {
    std::visit(Overloaded{
                   [](const GGHZ& s) {
                       require(s.n_qubits >= 3 && s.n_qubits <= 5, "gghz: n must be 3, 4 or 5");
                       require(std::isfinite(s.x) && s.x >= 0.0 && s.x <= 1.0, "gghz: x must lie in [0, 1]");
                   },
                   [](const GW3& s) {
                       require(std::isfinite(s.a) && std::isfinite(s.b), "gw3: non-finite weight");
                       require(s.a >= 0.0 && s.b >= 0.0, "gw3: weights must be nonnegative");
                       require(s.a + s.b <= 1.0 + kWeightSlack, "gw3: a + b must not exceed 1");
                   },
                   [](const GW4& s) {
                       require(std::isfinite(s.a) && std::isfinite(s.b) && std::isfinite(s.c),
                               "gw4: non-finite weight");
                       require(s.a >= 0.0 && s.b >= 0.0 && s.c >= 0.0, "gw4: weights must be nonnegative");
                       require(s.a + s.b + s.c <= 1.0 + kWeightSlack, "gw4: a + b + c must not exceed 1");
                   },
                   [](const WUniform& s) {
                       require(s.n_qubits == 3 || s.n_qubits == 4, "w: n must be 3 or 4");
                   },
                   [](const Bell&) {},
               },
               state);
}

int qubit_count(const ResourceState& state) {
    return std::visit(Overloaded{
                          [](const GGHZ& s) { return s.n_qubits; },
                          [](const GW3&) { return 3; },
                          [](const GW4&) { return 4; },
                          [](const WUniform& s) { return s.n_qubits; },
                          [](const Bell&) { return 2; },
                      },
                      state);
}

DensityMatrix build(const ResourceState& state) {
    validate(state);
    const std::vector<Complex> amp = std::visit(
        Overloaded{
            [](const GGHZ& s) {
                std::vector<Complex> v(std::size_t{1} << s.n_qubits, Complex{});
                v.front() = s.x;
                v.back() = std::sqrt(clamp_weight(1.0 - s.x * s.x));
                return v;
            },
            [](const GW3& s) {
                const double w[3] = {s.a, s.b, 1.0 - s.a - s.b};
                return single_excitations(w);
            },
            [](const GW4& s) {
                const double w[4] = {s.a, s.b, s.c, 1.0 - s.a - s.b - s.c};
                return single_excitations(w);
            },
            [](const WUniform& s) {
                const std::vector<double> w(static_cast<std::size_t>(s.n_qubits), 1.0 / s.n_qubits);
                return single_excitations(w);
            },
            [](const Bell&) {
                const double r = 1.0 / std::sqrt(2.0);
                return std::vector<Complex>{r, 0.0, 0.0, r};
            },
        },
        state);
    return DensityMatrix::pure(amp);
}

ResourceState w_half(int n_qubits, double b, double c) {
    ResourceState s;
    if (n_qubits == 3) {
        s = GW3{0.5, b};
    } else if (n_qubits == 4) {
        s = GW4{0.5, b, c};
    } else {
        throw DomainError("w_half: n must be 3 or 4");
    }
    if (b < 0.0 || c < 0.0 || b + c > 0.5 + kWeightSlack) {
        throw DomainError("w_half: remaining weights must be nonnegative and sum to at most 1/2");
    }
    validate(s);
    return s;
}

ResourceState parse_state(std::string_view text) {
    const KeyValueSpec spec = parse_kv_spec(text);
    ResourceState s;
    if (spec.kind == "gghz" || spec.kind == "ghz") {
        spec.allow_only({"n", "x"});
        s = GGHZ{static_cast<int>(spec.has("n") ? spec.integer("n") : 3),
                 spec.number_or("x", 1.0 / std::sqrt(2.0))};
    } else if (spec.kind == "gw3") {
        spec.allow_only({"a", "b"});
        s = GW3{spec.number("a"), spec.number("b")};
    } else if (spec.kind == "gw4") {
        spec.allow_only({"a", "b", "c"});
        s = GW4{spec.number("a"), spec.number("b"), spec.number("c")};
    } else if (spec.kind == "w") {
        spec.allow_only({"n"});
        s = WUniform{static_cast<int>(spec.has("n") ? spec.integer("n") : 3)};
    } else if (spec.kind == "whalf") {
        spec.allow_only({"n", "b", "c"});
        const int n = static_cast<int>(spec.has("n") ? spec.integer("n") : 3);
        s = w_half(n, spec.number("b"), n == 4 ? spec.number("c") : 0.0);
    } else if (spec.kind == "bell") {
        spec.allow_only({});
        s = Bell{};
    } else {
        throw DomainError("unknown state kind '" + spec.kind + "'");
    }
    validate(s);
    return s;
}

std::string state_name(const ResourceState& state) {
    return std::visit(Overloaded{
                          [](const GGHZ&) { return std::string("gghz"); },
                          [](const GW3&) { return std::string("gw3"); },
                          [](const GW4&) { return std::string("gw4"); },
                          [](const WUniform&) { return std::string("w"); },
                          [](const Bell&) { return std::string("bell"); },
                      },
                      state);
}

std::string state_params(const ResourceState& state) {
    return std::visit(
        Overloaded{
            [](const GGHZ& s) { return "n=" + std::to_string(s.n_qubits) + ",x=" + format_exact(s.x); },
            [](const GW3& s) { return "a=" + format_exact(s.a) + ",b=" + format_exact(s.b); },
            [](const GW4& s) {
                return "a=" + format_exact(s.a) + ",b=" + format_exact(s.b) + ",c=" + format_exact(s.c);
            },
            [](const WUniform& s) { return "n=" + std::to_string(s.n_qubits); },
            [](const Bell&) { return std::string(); },
        },
        state);
}

std::string format_state(const ResourceState& state) {
    const auto params = state_params(state);
    return params.empty() ? state_name(state) : state_name(state) + ":" + params;
}

ResourceState with_state_param(const ResourceState& state, std::string_view key, double value) {
    KeyValueSpec spec = parse_kv_spec(format_state(state));
    const auto it = spec.values.find(key);
    if (it == spec.values.end())
        throw DomainError("state " + spec.kind + " has no parameter '" + std::string(key) + "'");
    it->second = (key == "n") ? std::to_string(static_cast<long long>(std::llround(value))) : format_exact(value);
    std::string text = spec.kind + ":";
    for (const auto& [k, v] : spec.values) text += k + "=" + v + ",";
    text.pop_back();
    return parse_state(text);
}

}  // namespace qdc
