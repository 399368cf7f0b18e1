#pragma once

#include <cstdint>
#include <random>

namespace hurdle {

/// Finalizer of the splitmix64 generator (Steele, Lea & Flood). Bijective
/// 64-bit avalanche mix; the basis of all seed derivation in this library.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/// splitmix64 state increment (golden-ratio gamma).
inline constexpr std::uint64_t splitmix64_gamma = 0x9E3779B97F4A7C15ull;

/// Seed for the sub-stream with the given index, i.e. the (index+1)-th output
/// of a splitmix64 generator seeded with `base`. Distinct indices give
/// distinct seeds because the mix is a bijection and the inputs differ.
/// This mapping is part of the external reproducibility contract.
constexpr std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64_mix(base + (index + 1) * splitmix64_gamma);
}

/// Deterministic, platform-stable random stream.
///
/// The engine is std::mt19937_64 seeded directly with the 64-bit seed; its
/// output sequence is fixed by the C++ standard, so identical seeds give
/// identical sequences on every platform. All sampling helpers below are
/// implemented here (not via std:: distributions, whose streams are
/// implementation-defined). Single-owner: one stream per run, never shared.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0,1), 53-bit resolution.
    double uniform_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform_double() < p; }

    /// Uniform in [0, bound); unbiased via rejection of the overhang.
    /// threshold = 2^64 mod bound, so accepted draws cover a whole number
    /// of copies of [0, bound).
    std::uint64_t uniform_index(std::uint64_t bound) {
        const std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace hurdle
