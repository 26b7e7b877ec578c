#pragma once

#include <array>
#include <cstdint>

namespace optfwer {

/// splitmix64 finalizer; used to derive namespaced sub-seeds from a root seed.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                                                  std::uint64_t index = 0) noexcept {
    return mix64(root ^ mix64(tag ^ mix64(index)));
}

namespace seed_tags {
inline constexpr std::uint64_t kEvaluation = 0x6576616c7561746full;
inline constexpr std::uint64_t kOptimizer  = 0x6f7074696d697a65ull;
inline constexpr std::uint64_t kSlackness  = 0x736c61636b6e6573ull;
inline constexpr std::uint64_t kOracle     = 0x6f7261636c650000ull;
inline constexpr std::uint64_t kGroup      = 0x67726f7570000000ull;
inline constexpr std::uint64_t kTable      = 0x7461626c65000000ull;
}  // namespace seed_tags

/// Philox-4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by (seed, stream id); the j-th draw of a stream is a
/// pure function of (seed, stream, j), so batches can be filled in any order by
/// any number of workers and remain bit-identical.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    /// 64 random bits for draw index j.
    [[nodiscard]] std::uint64_t bits(std::uint64_t j) const noexcept {
        const std::array<std::uint32_t, 4> out = block(j >> 1);
        const std::size_t w = 2 * static_cast<std::size_t>(j & 1);
        return (static_cast<std::uint64_t>(out[w + 1]) << 32) | out[w];
    }

    /// Uniform double in the open interval (0, 1) for draw index j.
    [[nodiscard]] double uniform(std::uint64_t j) const noexcept {
        return (static_cast<double>(bits(j) >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    static void round(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) noexcept {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }

    [[nodiscard]] std::array<std::uint32_t, 4> block(std::uint64_t ctr_index) const noexcept {
        std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(ctr_index),
                                            static_cast<std::uint32_t>(ctr_index >> 32),
                                            stream_[0], stream_[1]};
        std::array<std::uint32_t, 2> key = key_;
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            round(ctr, key);
        }
        return ctr;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> stream_;
};

}  // namespace optfwer
