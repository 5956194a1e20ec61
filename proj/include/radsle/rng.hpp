#pragma once

// Counter-based random numbers (Philox4x32-10). A path is identified by
// (seed, stream); its variates depend only on that pair and on how many were
// drawn, so paths can be produced on any worker in any order.

#include <array>
#include <cmath>
#include <cstdint>

#include "radsle/common.hpp"

namespace radsle {

struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngSpec with_stream(std::uint64_t s) const { return {seed, s}; }
};

namespace detail {

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t m0 = 0xD2511F53u;
    constexpr std::uint32_t m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u;
    constexpr std::uint32_t w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{m0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{m1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += w0;
        key[1] += w1;
    }
    return ctr;
}

} // namespace detail

/// Sequential view of one (seed, stream) substream.
class RandomStream {
public:
    explicit RandomStream(RngSpec spec) : spec_(spec) {}

    const RngSpec& spec() const noexcept { return spec_; }
    std::uint64_t blocks_used() const noexcept { return block_; }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() {
        if (cursor_ == 2) refill();
        const std::uint64_t bits = words_[cursor_++];
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal deviate (Box-Muller, both outputs used).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = two_pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    void refill() {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(spec_.stream), static_cast<std::uint32_t>(spec_.stream >> 32)};
        const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(spec_.seed),
                                                  static_cast<std::uint32_t>(spec_.seed >> 32)};
        const auto out = detail::philox4x32(ctr, key);
        words_[0] = (std::uint64_t{out[0]} << 32) | out[1];
        words_[1] = (std::uint64_t{out[2]} << 32) | out[3];
        ++block_;
        cursor_ = 0;
    }

    RngSpec spec_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> words_{};
    int cursor_ = 2;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace radsle
