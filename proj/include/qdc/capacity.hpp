#pragma once

// Dense-coding capacity with one receiver and the LOCC upper bound with two
// receivers, noiseless and with noise on the sender qubits.

#include "qdc/channels.hpp"
#include "qdc/optimizer.hpp"
#include "qdc/qmath.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qdc {

/// Slack for the strict "above the classical bound" test.
inline constexpr double kDenseCodingSlack = 1e-9;

/// Senders occupy qubits 0..n_senders-1, then receiver 1, then receiver 2.
/// With two receivers, senders 0..split-1 report to receiver 1 and the rest
/// to receiver 2.
struct PartyLayout {
    int n_senders = 2;
    bool two_receivers = false;
    int split = 1;

    int receiver_count() const noexcept { return two_receivers ? 2 : 1; }
    int total_qubits() const noexcept { return n_senders + receiver_count(); }
    std::vector<int> sender_qubits() const;
    /// Qubit index of receiver k (0 or 1).
    int receiver_qubit(int k) const noexcept { return n_senders + k; }
    /// Label such as "2S-1R".
    std::string label() const;
};

/// Throws DomainError if the layout is inconsistent or does not match the
/// state's qubit count (pass n_qubits < 0 to skip that check).
void validate(const PartyLayout& layout, int n_qubits = -1);

struct CapacityResult {
    double capacity_bits = 0.0;
    double classical_bound_bits = 0.0;
    /// N + S(rho_R) - S_min (one receiver) or N + S(R1) + S(R2) - max_x S_min^x,
    /// before the max with the classical bound.
    double unclamped_bits = 0.0;
    /// S(rho_R), or S(rho_R1), S(rho_R2).
    std::vector<double> receiver_entropy_terms;
    /// Minimized output entropy; for two receivers the larger block entropy.
    double channel_output_entropy = 0.0;
    /// Two receivers only: minimized S(xi~^1), S(xi~^2).
    std::vector<double> block_entropies;
    EncodingParams encoding;
    bool dense_codeable = false;
    bool optimized = false;
    long evaluations = 0;

    double surplus() const noexcept { return capacity_bits - classical_bound_bits; }
};

/// max[N, N + S(rho_R) - S(rho)] or the two-receiver analogue.
CapacityResult capacity_noiseless(const DensityMatrix& rho, const PartyLayout& layout);

/// One receiver: max[N, N + S(rho_R) - min_U S(Lambda(U rho U^dagger))].
/// `kraus_override` supplies one Kraus set per sender and replaces the channel
/// spec's own Kraus operators. Deterministic depolarizing noise is covariant,
/// so the minimization is skipped for it.
CapacityResult capacity_one_receiver(const DensityMatrix& rho, const PartyLayout& layout, const ChannelSpec& spec,
                                     const std::vector<KrausSet>* kraus_override, const OptimizerConfig& opt);

/// Two receivers: max[N, N + S(rho_R1) + S(rho_R2) - max_x min S(xi~^x)], the two
/// block entropies minimized independently over their own senders.
CapacityResult bound_two_receivers(const DensityMatrix& rho, const PartyLayout& layout, const ChannelSpec& spec,
                                   const std::vector<KrausSet>* kraus_override, const OptimizerConfig& opt);

/// Dispatches on layout.two_receivers.
CapacityResult noisy_capacity(const DensityMatrix& rho, const PartyLayout& layout, const ChannelSpec& spec,
                              const std::vector<KrausSet>* kraus_override, const OptimizerConfig& opt);

/// Lambda((U_1 x .. x U_k x I) rho (..)^dagger) where unitaries[i] and kraus[i]
/// act on qubits[i]. Returned as a matrix for entropy evaluation.
ComplexMatrix encoded_channel_output(const ComplexMatrix& rho, std::span<const int> qubits,
                                     std::span<const KrausSet> kraus, std::span<const ComplexMatrix> unitaries);

/// xi~^block (block 0 or 1) computed the long way: encode and apply noise to
/// every sender of the full state, then trace out the other block.
DensityMatrix two_receiver_block_state(const DensityMatrix& rho, const PartyLayout& layout,
                                       std::span<const KrausSet> kraus, const EncodingParams& encoding, int block);

}  // namespace qdc
