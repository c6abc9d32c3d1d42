#pragma once

#include <cstdint>
#include <random>

namespace ppso {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Seedable generator with a portable double mapping.
///
/// std::uniform_real_distribution is implementation-defined, so draws are
/// built from the top 53 bits of mt19937_64 output instead; the same seed
/// gives the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() noexcept { return engine_(); }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept {
        // Lemire's rejection on the 128-bit product keeps the draw unbiased.
        for (;;) {
            const unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
            const auto low = static_cast<std::uint64_t>(m);
            if (low >= n || low >= (-n) % n) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ppso
