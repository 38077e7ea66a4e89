#pragma once

// 32-bit external-feedback (Fibonacci) LFSR for x^32 + x^22 + x^2 + x + 1,
// a maximal-length tap set (period 2^32 - 1).
//
// Register bit i holds sequence term a_(n+i). Each step emits bit 0, shifts
// right, and feeds a_(n+32) = a_(n+22) ^ a_(n+2) ^ a_(n+1) ^ a_n into bit 31.

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace hashguard {

inline constexpr std::uint32_t kLfsrTaps = (1u << 22) | (1u << 2) | (1u << 1) | 1u;

struct LfsrState {
    std::uint32_t reg = 1;
};

constexpr LfsrState lfsr_step(LfsrState s, unsigned& out_bit) noexcept {
    out_bit = s.reg & 1u;
    const std::uint32_t fb = static_cast<std::uint32_t>(__builtin_parity(s.reg & kLfsrTaps));
    s.reg = (s.reg >> 1) | (fb << 31);
    return s;
}

/// 32 steps; the first emitted bit lands in bit 0 of the word.
inline std::pair<LfsrState, std::uint32_t> lfsr_next(LfsrState s) {
    if (s.reg == 0) throw std::invalid_argument("lfsr: register must be nonzero");
    std::uint32_t word = 0;
    for (unsigned i = 0; i < 32; ++i) {
        unsigned bit = 0;
        s = lfsr_step(s, bit);
        word |= static_cast<std::uint32_t>(bit) << i;
    }
    return {s, word};
}

class Lfsr {
  public:
    explicit Lfsr(std::uint32_t seed) : state_{seed} {
        if (seed == 0) throw std::invalid_argument("lfsr: seed must be nonzero");
    }

    std::uint32_t next() {
        auto [s, w] = lfsr_next(state_);
        state_ = s;
        return w;
    }

    /// Uniform value in [0, bound) by rejection; bound must be nonzero.
    std::uint32_t below(std::uint32_t bound) {
        if (bound == 0) throw std::invalid_argument("lfsr: empty range");
        const std::uint32_t limit = static_cast<std::uint32_t>(-bound) % bound;  // 2^32 mod bound
        for (;;) {
            const std::uint32_t w = next();
            if (w >= limit) return w % bound;
        }
    }

    LfsrState state() const noexcept { return state_; }

  private:
    LfsrState state_;
};

/// Nonzero register for trial `index` of a campaign: the master seed and the
/// trial index are mixed, then the LFSR runs a short warm-up so that nearby
/// indices decorrelate.
inline std::uint32_t trial_seed(std::uint32_t master, std::uint64_t index) {
    std::uint32_t reg = master ^ static_cast<std::uint32_t>(index * 0x9E3779B1u) ^
                        static_cast<std::uint32_t>((index >> 32) * 0x85EBCA77u);
    if (reg == 0) reg = 0x1u;
    Lfsr mix(reg);
    std::uint32_t acc = 0;
    for (int i = 0; i < 3; ++i) acc = mix.next() ^ ((acc << 7) | (acc >> 25));
    return acc == 0 ? 1u : acc;
}

}  // namespace hashguard
