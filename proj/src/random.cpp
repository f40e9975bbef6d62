#include "qdc/random.hpp"

#include <cmath>
#include <numbers>

namespace qdc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
    return finalize(finalize(a + kGolden) ^ (b * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

std::uint64_t RandomStream::next_u64() noexcept {
    ++counter_;
    return finalize(key_ + counter_ * kGolden);
}

double RandomStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phase);
    has_spare_ = true;
    return r * std::cos(phase);
}

double RandomStream::normal(double mean, double sd) noexcept {
    const double z = normal();
    return sd == 0.0 ? mean : mean + sd * z;
}

}  // namespace qdc
