#pragma once

// Non-Markovian dephasing / depolarizing Kraus sets, their Gaussian-randomized
// versions, and local application to sender qubits.

#include "qdc/qmath.hpp"
#include "qdc/random.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdc {

enum class ChannelKind { Dephasing, Depolarizing };
enum class DrawPolicy { IndependentPerQubit, SharedAcrossQubits };
enum class Pauli { X, Y, Z };

struct ChannelSpec {
    ChannelKind kind = ChannelKind::Dephasing;
    /// Non-Markovianity strength in [0, 1]; 0 is Markovian.
    double alpha = 0.0;
    /// Noise strength.
    double p = 0.0;
    /// Standard deviation of the Gaussian disorder on the unitary parameters.
    double epsilon = 0.0;
    DrawPolicy draw = DrawPolicy::IndependentPerQubit;

    bool is_random() const noexcept { return epsilon > 0.0; }
    /// The exact depolarizing channel commutes with the Pauli group.
    bool is_covariant() const noexcept { return kind == ChannelKind::Depolarizing && epsilon == 0.0; }
};

/// Upper end of the admissible p range: 1/2 for dephasing, min(1, 1/(3 alpha))
/// for depolarizing.
double max_noise_strength(ChannelKind kind, double alpha);

/// Throws DomainError when alpha, p or epsilon are out of range.
void validate(const ChannelSpec& spec);

/// Euler-angle parameters of a 2x2 unitary (global phase fixed to 0).
struct UnitaryParams {
    double omega = 0.0;
    double theta = 0.0;
    double delta = 0.0;
};

/// Parameter triples that reproduce the Pauli matrices up to a global phase.
UnitaryParams pauli_means(Pauli which);

/// diag(e^{i w/2}, e^{-i w/2}) * R(theta/2) * diag(e^{i d/2}, e^{-i d/2}).
ComplexMatrix unitary_from_params(const UnitaryParams& u);

struct KrausSet {
    std::vector<ComplexMatrix> operators;

    /// max entrywise |sum K^dagger K - I|
    double completeness_defect() const;
};

/// (identity weight, Pauli weight) = ((1 - a p)(1 - p), (1 + a(1 - p)) p).
std::pair<double, double> dephasing_weights(double alpha, double p);
/// (identity weight, weight of each of the three Paulis).
std::pair<double, double> depolarizing_weights(double alpha, double p);

/// {sqrt(w_I) I, sqrt(w_z) Uz}. Throws DomainError for p outside [0, 1/2].
KrausSet kraus_dephasing(double alpha, double p, const ComplexMatrix& uz);
/// {sqrt(w_I) I, sqrt(w) Ux, sqrt(w) Uy, sqrt(w) Uz}. Throws DomainError when
/// the identity weight would be negative.
KrausSet kraus_depolarizing(double alpha, double p, const ComplexMatrix& ux, const ComplexMatrix& uy,
                            const ComplexMatrix& uz);

/// Exact Pauli channel for `spec` (epsilon ignored).
KrausSet deterministic_kraus(const ChannelSpec& spec);

/// One disorder draw: each needed Pauli's (omega, theta, delta) sampled from
/// N(mean, epsilon). At epsilon = 0 this is the exact Pauli channel up to
/// global phases on the Kraus operators.
KrausSet sample_random_kraus(const ChannelSpec& spec, RandomStream& stream);

/// Kraus sets for `n_targets` sender qubits from one realization stream. With
/// IndependentPerQubit each qubit uses child stream q; SharedAcrossQubits
/// reuses child stream 0. Deterministic specs ignore the stream.
std::vector<KrausSet> realize_channels(const ChannelSpec& spec, int n_targets, const RandomStream& stream);

/// rho <- sum_k K_k rho K_k^dagger with K lifted to `qubit`.
void apply_kraus_in_place(ComplexMatrix& rho, const KrausSet& kraus, int qubit);

/// Applies per_qubit_kraus[i] to targets[i], in order. Throws DomainError on
/// size mismatch, duplicate or out-of-range targets.
DensityMatrix apply_local_channel(const DensityMatrix& rho, std::span<const KrausSet> per_qubit_kraus,
                                  std::span<const int> targets);

/// `dephasing:alpha=0.5,p=0.3,eps=0,draw=per-qubit`; p defaults to 0.
ChannelSpec parse_channel(std::string_view text);
std::string channel_name(ChannelKind kind);
std::string draw_policy_name(DrawPolicy draw);
std::string format_channel(const ChannelSpec& spec);

}  // namespace qdc
