#pragma once

#include <cstdint>

namespace qdc {

/// Stable 64-bit mix of two words (SplitMix64 finalizer over a combined key).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

/// Counter-based random stream: draw i is a pure function of (key, i), so a
/// stream derived from (master seed, index) gives the same numbers on any
/// thread in any order.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t position() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Standard normal (Box-Muller; the sine branch is kept for the next call).
    double normal() noexcept;
    /// Exactly `mean` when sd == 0.
    double normal(double mean, double sd) noexcept;

    /// Independent child stream keyed by (key, index).
    RandomStream child(std::uint64_t index) const noexcept { return RandomStream(mix_seed(key_, index)); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qdc
