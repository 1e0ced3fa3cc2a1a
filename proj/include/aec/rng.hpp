#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace aec {

/// SplitMix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a seed from a root seed and an ordered list of keys.
/// Different key tuples give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = mix64(root ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x3c6ef372fe94f82bULL));
    return h;
}

/// Small counter-based generator (SplitMix64 sequence). Cheap to construct, so
/// one stream per edge or per vertex-colour pair is affordable. Satisfies
/// UniformRandomBitGenerator.
class KeyedStream {
public:
    using result_type = std::uint64_t;

    explicit KeyedStream(std::uint64_t seed) noexcept : state_(seed) {}
    KeyedStream(std::uint64_t root, std::initializer_list<std::uint64_t> keys) noexcept
        : state_(derive_seed(root, keys)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound must be positive. Lemire's
    /// multiply-shift with rejection, so the result does not depend on the
    /// standard library's distribution implementation.
    std::uint64_t below(std::uint64_t bound) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by a KeyedStream.
template <typename Range>
void shuffle_with(Range& range, KeyedStream& rng) {
    using std::swap;
    const auto n = static_cast<std::uint64_t>(range.size());
    for (std::uint64_t i = n; i > 1; --i) {
        const auto j = rng.below(i);
        swap(range[i - 1], range[j]);
    }
}

}  // namespace aec
