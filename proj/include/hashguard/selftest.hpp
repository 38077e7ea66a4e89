#pragma once

// Identity suites behind every check: field arithmetic, MixColumns column
// sums, the Super-Mix column-sum pattern and parity prediction, the Fugue
// TRC signature, and fault-free nullity of the ECHO checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hashguard/echo_guard.hpp"
#include "hashguard/fugue_guard.hpp"

namespace hashguard {

struct SuiteResult {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t failures = 0;

    bool passed() const noexcept { return failures == 0; }
};

struct SelftestOptions {
    std::uint64_t seed = 1;
    std::uint64_t random_trials = 100000;  // field, Super-Mix and TRC suites
    std::uint64_t compressions = 200;      // guarded ECHO suites
    /// Super-Mix matrix under test; a perturbed copy must fail.
    fugue::Matrix16 matrix = fugue::kSuperMix;
};

namespace selftest {

/// Schoolbook product: carry-less multiply, then reduce modulo x^8+x^4+x^3+x+1.
constexpr gf256::GfByte schoolbook_mul(gf256::GfByte a, gf256::GfByte b) noexcept {
    std::uint16_t p = 0;
    for (int i = 0; i < 8; ++i)
        if ((b >> i) & 1) p = static_cast<std::uint16_t>(p ^ (a << i));
    for (int i = 15; i >= 8; --i)
        if ((p >> i) & 1) p = static_cast<std::uint16_t>(p ^ (0x11B << (i - 8)));
    return static_cast<gf256::GfByte>(p);
}

inline fugue::Bytes16 matrix_vector(const fugue::Matrix16& n, const fugue::Bytes16& v) noexcept {
    fugue::Bytes16 out{};
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) out[r] ^= schoolbook_mul(n[r][c], v[c]);
    return out;
}

inline SuiteResult gf256_oracle() {
    SuiteResult r{"gf256_oracle", 65536, 0, 0};
    for (unsigned a = 0; a < 256; ++a)
        for (unsigned b = 0; b < 256; ++b)
            if (gf256::mul(static_cast<gf256::GfByte>(a), static_cast<gf256::GfByte>(b)) !=
                schoolbook_mul(static_cast<gf256::GfByte>(a), static_cast<gf256::GfByte>(b)))
                ++r.failures;
    return r;
}

inline SuiteResult mixcolumns_column_sum(const SelftestOptions& o) {
    SuiteResult r{"mixcolumns_column_sum", o.random_trials, o.seed, 0};
    std::mt19937_64 rng(o.seed);
    for (std::uint64_t t = 0; t < o.random_trials; ++t) {
        const std::uint64_t x = rng();
        const auto a = [&](int i) { return static_cast<gf256::GfByte>(x >> (8 * i)); };
        const auto out = aes::mix_column(a(0), a(1), a(2), a(3));
        if ((out[0] ^ out[1] ^ out[2] ^ out[3]) != (a(0) ^ a(1) ^ a(2) ^ a(3))) ++r.failures;
    }
    return r;
}

inline SuiteResult supermix_column_sums(const SelftestOptions& o) {
    SuiteResult r{"supermix_column_sums", 16, 0, 0};
    const auto sums = fugue::column_sums(o.matrix);
    for (std::size_t c = 0; c < 16; ++c) {
        const gf256::GfByte want = (c % 5 == 0) ? 0x03 : 0x00;
        if (sums[c] != want) ++r.failures;
    }
    return r;
}

inline SuiteResult supermix_parity(const SelftestOptions& o) {
    SuiteResult r{"supermix_parity", o.random_trials, o.seed + 1, 0};
    std::mt19937_64 rng(r.seed);
    for (std::uint64_t t = 0; t < o.random_trials; ++t) {
        fugue::Bytes16 in{};
        const std::uint64_t lo = rng(), hi = rng();
        for (std::size_t i = 0; i < 8; ++i) {
            in[i] = static_cast<gf256::GfByte>(lo >> (8 * i));
            in[8 + i] = static_cast<gf256::GfByte>(hi >> (8 * i));
        }
        if (!fugue::supermix_check(in, matrix_vector(o.matrix, in))) ++r.failures;
    }
    return r;
}

inline SuiteResult trc_identity(const SelftestOptions& o) {
    SuiteResult r{"trc_identity", o.random_trials, o.seed + 2, 0};
    std::mt19937 rng(static_cast<std::uint32_t>(r.seed));
    for (std::uint64_t t = 0; t < o.random_trials; ++t) {
        fugue::FugueState s;
        for (auto& w : s.words) w = static_cast<std::uint32_t>(rng());
        if (fugue::trc_check(s, static_cast<fugue::MessageWord>(rng())).raised) ++r.failures;
    }
    return r;
}

namespace detail {

inline void random_compression_input(std::mt19937_64& rng, echo::ChainingValue& v, echo::MessageBlock& m,
                                     echo::EchoParams& p) {
    auto fill = [&](echo::EchoWord& w) {
        for (auto& b : w.bytes) b = static_cast<gf256::GfByte>(rng());
    };
    for (auto& w : v) fill(w);
    for (auto& w : m) fill(w);
    for (auto& b : p.salt) b = static_cast<gf256::GfByte>(rng());
    p.counter = rng();
}

}  // namespace detail

/// Fault-free guarded compressions: no MixColumns/AddRoundKey or
/// BIG.MixColumns flag may be raised.
inline SuiteResult echo_flag_nullity(const SelftestOptions& o) {
    SuiteResult r{"echo_flag_nullity", o.compressions, o.seed + 3, 0};
    std::mt19937_64 rng(r.seed);
    for (std::uint64_t t = 0; t < o.compressions; ++t) {
        echo::ChainingValue v;
        echo::MessageBlock m;
        echo::EchoParams p;
        detail::random_compression_input(rng, v, m, p);
        const auto g = echo::guarded_compress512(v, m, p);
        if (g.report.raised(CheckKind::echo_mc_ark) || g.report.raised(CheckKind::echo_big_mix_columns)) ++r.failures;
    }
    return r;
}

inline SuiteResult echo_final_parity(const SelftestOptions& o) {
    SuiteResult r{"echo_final_parity", o.compressions, o.seed + 4, 0};
    std::mt19937_64 rng(r.seed);
    for (std::uint64_t t = 0; t < o.compressions; ++t) {
        echo::ChainingValue v;
        echo::MessageBlock m;
        echo::EchoParams p;
        detail::random_compression_input(rng, v, m, p);
        const auto g = echo::guarded_compress512(v, m, p);
        if (g.report.raised(CheckKind::echo_big_final)) ++r.failures;
    }
    return r;
}

}  // namespace selftest

inline std::vector<SuiteResult> run_selftest(const SelftestOptions& o = {}) {
    return {selftest::gf256_oracle(),         selftest::mixcolumns_column_sum(o), selftest::supermix_column_sums(o),
            selftest::supermix_parity(o),     selftest::trc_identity(o),          selftest::echo_flag_nullity(o),
            selftest::echo_final_parity(o)};
}

}  // namespace hashguard
