#include "qdc/capacity.hpp"

#include "qdc/errors.hpp"
#include "qdc/random.hpp"

#include <algorithm>
#include <numeric>

namespace qdc {

namespace {

CapacityResult finish(CapacityResult r, int n_senders) {
    r.classical_bound_bits = n_senders;
    r.capacity_bits = std::max(r.classical_bound_bits, r.unclamped_bits);
    r.dense_codeable = r.capacity_bits > r.classical_bound_bits + kDenseCodingSlack;
    return r;
}

std::vector<KrausSet> sender_kraus(const ChannelSpec& spec, const std::vector<KrausSet>* kraus_override,
                                   int n_senders) {
    if (kraus_override != nullptr) {
        if (static_cast<int>(kraus_override->size()) != n_senders)
            throw DomainError("kraus override must hold one Kraus set per sender");
        return *kraus_override;
    }
    validate(spec);
    if (spec.is_random())
        throw DomainError("random channels need pre-sampled Kraus sets (use the quenched average)");
    return std::vector<KrausSet>(static_cast<std::size_t>(n_senders), deterministic_kraus(spec));
}

bool skip_optimization(const ChannelSpec& spec, const std::vector<KrausSet>* kraus_override,
                       const OptimizerConfig& opt) {
    return !opt.enabled || (kraus_override == nullptr && spec.is_covariant());
}

struct BlockMinimum {
    double entropy = 0.0;
    EncodingParams encoding;
    long evaluations = 0;
};

bool is_zero_operator(const ComplexMatrix& k) {
    for (const Complex& z : k.entries())
        if (z != Complex{}) return false;
    return true;
}

// S(Lambda(U rho U^dagger)) with the noisy senders on the leading qubits. For a
// pure rho with fewer Kraus branches than dimensions the spectrum comes from
// the Gram matrix of the branch vectors.
class OutputEntropy {
public:
    OutputEntropy(const ComplexMatrix& rho, std::span<const KrausSet> kraus) : rho_(rho), kraus_(kraus) {
        for (int i = 0; i < static_cast<int>(kraus.size()); ++i) qubits_.push_back(i);
        std::size_t branches = 1;
        for (const auto& k : kraus) {
            std::size_t nonzero = 0;
            for (const auto& op : k.operators) nonzero += is_zero_operator(op) ? 0 : 1;
            branches *= nonzero;
        }
        if (branches < rho.dim()) psi_ = pure_state_vector(rho);
    }

    double operator()(std::span<const ComplexMatrix> unitaries) const {
        if (psi_.empty()) return von_neumann_entropy(encoded_channel_output(rho_, qubits_, kraus_, unitaries));
        const int n = rho_.qubits();
        std::vector<std::vector<Complex>> branches{psi_};
        for (std::size_t i = 0; i < kraus_.size(); ++i) {
            std::vector<std::vector<Complex>> next;
            for (const auto& op : kraus_[i].operators) {
                if (is_zero_operator(op)) continue;
                const ComplexMatrix combined = op * unitaries[i];
                for (const auto& v : branches) {
                    next.push_back(v);
                    apply_local(next.back(), combined, static_cast<int>(i), n);
                }
            }
            branches = std::move(next);
        }
        return spectrum_entropy(gram_spectrum(branches));
    }

private:
    const ComplexMatrix& rho_;
    std::span<const KrausSet> kraus_;
    std::vector<int> qubits_;
    std::vector<Complex> psi_;
};

// min over the block's sender unitaries of S(Lambda(U reduced U^dagger)); the
// block's senders are the first qubits of `reduced`.
BlockMinimum minimize_block(const ComplexMatrix& reduced, std::span<const KrausSet> kraus, bool optimize,
                            OptimizerConfig opt) {
    const int k = static_cast<int>(kraus.size());
    const OutputEntropy entropy(reduced, kraus);
    const EncodingObjective objective = [&](const EncodingParams& e) { return entropy(e.unitaries()); };
    opt.enabled = optimize;
    const OptimizationResult r = minimize(objective, k, opt);
    return {r.best_value, r.best_params, r.evaluations};
}

}  // namespace

std::vector<int> PartyLayout::sender_qubits() const {
    std::vector<int> q(static_cast<std::size_t>(n_senders));
    std::iota(q.begin(), q.end(), 0);
    return q;
}

std::string PartyLayout::label() const {
    return std::to_string(n_senders) + "S-" + std::to_string(receiver_count()) + "R";
}

void validate(const PartyLayout& layout, int n_qubits) {
    if (layout.n_senders < 1) throw DomainError("layout: need at least one sender");
    if (layout.total_qubits() > kMaxQubits) throw DomainError("layout: more than 5 qubits in total");
    if (layout.two_receivers && (layout.split < 1 || layout.split >= layout.n_senders))
        throw DomainError("layout: split r must satisfy 1 <= r < n_senders");
    if (n_qubits >= 0 && n_qubits != layout.total_qubits())
        throw DomainError("layout " + layout.label() + " needs a " + std::to_string(layout.total_qubits()) +
                          "-qubit state, got " + std::to_string(n_qubits));
}

ComplexMatrix encoded_channel_output(const ComplexMatrix& rho, std::span<const int> qubits,
                                     std::span<const KrausSet> kraus, std::span<const ComplexMatrix> unitaries) {
    if (kraus.size() != qubits.size() || unitaries.size() != qubits.size())
        throw DomainError("encoded_channel_output: one Kraus set and one unitary per qubit required");
    ComplexMatrix m = rho;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        KrausSet combined;
        combined.operators.reserve(kraus[i].operators.size());
        for (const auto& k : kraus[i].operators) combined.operators.push_back(k * unitaries[i]);
        apply_kraus_in_place(m, combined, qubits[i]);
    }
    return m;
}

CapacityResult capacity_noiseless(const DensityMatrix& rho, const PartyLayout& layout) {
    validate(layout, rho.qubits());
    CapacityResult r;
    r.encoding = EncodingParams::identity(layout.n_senders);
    const double n = layout.n_senders;
    if (!layout.two_receivers) {
        const int recv[] = {layout.receiver_qubit(0)};
        r.receiver_entropy_terms = {von_neumann_entropy(partial_trace(rho, recv))};
        r.channel_output_entropy = von_neumann_entropy(rho);
        r.unclamped_bits = n + r.receiver_entropy_terms[0] - r.channel_output_entropy;
        return finish(r, layout.n_senders);
    }
    const std::vector<KrausSet> identity_kraus(static_cast<std::size_t>(layout.n_senders),
                                               KrausSet{{ComplexMatrix::identity(2)}});
    for (int b = 0; b < 2; ++b)
        r.block_entropies.push_back(
            von_neumann_entropy(two_receiver_block_state(rho, layout, identity_kraus, r.encoding, b)));
    for (int k = 0; k < 2; ++k) {
        const int recv[] = {layout.receiver_qubit(k)};
        r.receiver_entropy_terms.push_back(von_neumann_entropy(partial_trace(rho, recv)));
    }
    r.channel_output_entropy = std::max(r.block_entropies[0], r.block_entropies[1]);
    r.unclamped_bits = n + r.receiver_entropy_terms[0] + r.receiver_entropy_terms[1] - r.channel_output_entropy;
    return finish(r, layout.n_senders);
}

CapacityResult capacity_one_receiver(const DensityMatrix& rho, const PartyLayout& layout, const ChannelSpec& spec,
                                     const std::vector<KrausSet>* kraus_override, const OptimizerConfig& opt) {
    validate(layout, rho.qubits());
    if (layout.two_receivers) throw DomainError("capacity_one_receiver called with a two-receiver layout");
    const auto kraus = sender_kraus(spec, kraus_override, layout.n_senders);
    const bool optimize = !skip_optimization(spec, kraus_override, opt);

    CapacityResult r;
    const int recv[] = {layout.receiver_qubit(0)};
    r.receiver_entropy_terms = {von_neumann_entropy(partial_trace(rho, recv))};
    const BlockMinimum m = minimize_block(rho.matrix(), kraus, optimize, opt);
    r.channel_output_entropy = m.entropy;
    r.encoding = m.encoding;
    r.evaluations = m.evaluations;
    r.optimized = optimize;
    r.unclamped_bits = layout.n_senders + r.receiver_entropy_terms[0] - m.entropy;
    return finish(r, layout.n_senders);
}

CapacityResult bound_two_receivers(const DensityMatrix& rho, const PartyLayout& layout, const ChannelSpec& spec,
                                   const std::vector<KrausSet>* kraus_override, const OptimizerConfig& opt) {
    validate(layout, rho.qubits());
    if (!layout.two_receivers) throw DomainError("bound_two_receivers called with a one-receiver layout");
    const auto kraus = sender_kraus(spec, kraus_override, layout.n_senders);
    const bool optimize = !skip_optimization(spec, kraus_override, opt);

    CapacityResult r;
    r.optimized = optimize;
    for (int k = 0; k < 2; ++k) {
        const int recv[] = {layout.receiver_qubit(k)};
        r.receiver_entropy_terms.push_back(von_neumann_entropy(partial_trace(rho, recv)));
    }
    // Noise and encoding on the other block's senders are local and trace
    // preserving, so they drop out of xi~^x: reduce first, then encode.
    for (int b = 0; b < 2; ++b) {
        std::vector<int> keep;
        const int first = b == 0 ? 0 : layout.split;
        const int last = b == 0 ? layout.split : layout.n_senders;
        for (int q = first; q < last; ++q) keep.push_back(q);
        keep.push_back(layout.receiver_qubit(b));
        const ComplexMatrix reduced = partial_trace(rho.matrix(), keep);
        const std::span<const KrausSet> block_kraus(kraus.data() + first, static_cast<std::size_t>(last - first));
        OptimizerConfig block_opt = opt;
        if (b == 1) block_opt.seed = mix_seed(opt.seed, 2);
        const BlockMinimum m = minimize_block(reduced, block_kraus, optimize, block_opt);
        r.block_entropies.push_back(m.entropy);
        r.evaluations += m.evaluations;
        r.encoding.per_sender.insert(r.encoding.per_sender.end(), m.encoding.per_sender.begin(),
                                     m.encoding.per_sender.end());
    }
    r.channel_output_entropy = std::max(r.block_entropies[0], r.block_entropies[1]);
    r.unclamped_bits = layout.n_senders + r.receiver_entropy_terms[0] + r.receiver_entropy_terms[1] -
                       r.channel_output_entropy;
    return finish(r, layout.n_senders);
}

CapacityResult noisy_capacity(const DensityMatrix& rho, const PartyLayout& layout, const ChannelSpec& spec,
                              const std::vector<KrausSet>* kraus_override, const OptimizerConfig& opt) {
    return layout.two_receivers ? bound_two_receivers(rho, layout, spec, kraus_override, opt)
                                : capacity_one_receiver(rho, layout, spec, kraus_override, opt);
}

DensityMatrix two_receiver_block_state(const DensityMatrix& rho, const PartyLayout& layout,
                                       std::span<const KrausSet> kraus, const EncodingParams& encoding, int block) {
    validate(layout, rho.qubits());
    if (!layout.two_receivers) throw DomainError("two_receiver_block_state needs a two-receiver layout");
    if (block != 0 && block != 1) throw DomainError("block must be 0 or 1");
    const auto senders = layout.sender_qubits();
    const auto us = encoding.unitaries();
    if (us.size() != senders.size()) throw DomainError("encoding must cover every sender");
    const ComplexMatrix out = encoded_channel_output(rho.matrix(), senders, kraus, us);
    std::vector<int> keep;
    const int first = block == 0 ? 0 : layout.split;
    const int last = block == 0 ? layout.split : layout.n_senders;
    for (int q = first; q < last; ++q) keep.push_back(q);
    keep.push_back(layout.receiver_qubit(block));
    return DensityMatrix(partial_trace(out, keep));
}

}  // namespace qdc
