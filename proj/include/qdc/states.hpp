#pragma once

// Resource states shared between senders and receiver(s). Qubit order is
// senders first, receiver(s) last.

#include "qdc/qmath.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace qdc {

/// x|0...0> + sqrt(1-x^2)|1...1> on 3, 4 or 5 qubits.
struct GGHZ {
    int n_qubits = 3;
    double x = 0.70710678118654752;
};

/// sqrt(a)|001> + sqrt(b)|010> + sqrt(1-a-b)|100>
struct GW3 {
    double a = 1.0 / 3.0;
    double b = 1.0 / 3.0;
};

/// sqrt(a)|0001> + sqrt(b)|0010> + sqrt(c)|0100> + sqrt(1-a-b-c)|1000>
struct GW4 {
    double a = 0.25;
    double b = 0.25;
    double c = 0.25;
};

/// Equal-weight single-excitation state on 3 or 4 qubits.
struct WUniform {
    int n_qubits = 3;
};

/// (|00> + |11>)/sqrt(2)
struct Bell {};

using ResourceState = std::variant<GGHZ, GW3, GW4, WUniform, Bell>;

/// Throws DomainError if the parameters are out of range.
void validate(const ResourceState& state);

int qubit_count(const ResourceState& state);

DensityMatrix build(const ResourceState& state);

/// gW with the receiver weight a fixed to 1/2. n_qubits = 3 takes b; 4 takes b and c.
ResourceState w_half(int n_qubits, double b, double c = 0.0);

/// Parse `gghz:n=3,x=0.7071`, `gw3:a=0.5,b=0.25`, `gw4:a=..,b=..,c=..`,
/// `w:n=4`, `whalf:n=3,b=0.25`, `bell`. Throws DomainError on bad input.
ResourceState parse_state(std::string_view text);

/// Short family name: gghz, gw3, gw4, w, bell.
std::string state_name(const ResourceState& state);
/// Comma-separated key=value list that parse_state accepts back.
std::string state_params(const ResourceState& state);
/// name:params (or just name when there are no parameters).
std::string format_state(const ResourceState& state);

/// Copy of `state` with one named parameter (as in state_params) replaced.
/// Throws DomainError for unknown keys or out-of-range values.
ResourceState with_state_param(const ResourceState& state, std::string_view key, double value);

}  // namespace qdc
