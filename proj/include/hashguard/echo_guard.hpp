#pragma once

// Predicted-signature error detection for ECHO-256.
//
// Every check rests on one identity of the AES MixColumns matrix circ(2,3,1,1):
// its columns XOR to 1, so for each state column the XOR of the output bytes
// equals the XOR of the input bytes. AddRoundKey adds the key bytes on top.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "hashguard/echo256.hpp"
#include "hashguard/signals.hpp"

namespace hashguard::echo {

/// One 8-bit flag per state column; bits 8c..8c+7 of value() hold column c.
struct ColumnFlag {
    std::array<GfByte, 4> bytes{};

    constexpr std::uint32_t value() const noexcept {
        return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
               (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
    }
    constexpr bool clear() const noexcept { return value() == 0; }

    friend constexpr bool operator==(const ColumnFlag&, const ColumnFlag&) = default;
};

/// XOR-folds a 32-bit flag into n bits: flag bit i lands on output bit i mod n.
inline std::uint32_t compress_flag(std::uint32_t flag, unsigned n) {
    if (n < 1 || n > 32) throw std::invalid_argument("compress_flag: width must be in 1..32");
    if (n == 32) return flag;
    std::uint32_t out = 0;
    for (unsigned i = 0; i < 32; ++i) out ^= ((flag >> i) & 1u) << (i % n);
    return out;
}

inline std::uint32_t compress_flag(const ColumnFlag& flag, unsigned n) { return compress_flag(flag.value(), n); }

/// Column flag over MixColumns followed by AddRoundKey: for each column c,
/// XOR over rows of (in ^ key ^ out). `input` is the MixColumns input,
/// `output` the AddRoundKey output.
constexpr ColumnFlag mc_ark_flag(const aes::AesState& input, const aes::RoundKey& key,
                                 const aes::AesState& output) noexcept {
    ColumnFlag flag;
    for (std::size_t c = 0; c < 4; ++c) {
        GfByte acc = 0;
        for (std::size_t r = 0; r < 4; ++r) acc ^= static_cast<GfByte>(input.at(r, c) ^ key.at(r, c) ^ output.at(r, c));
        flag.bytes[c] = acc;
    }
    return flag;
}

/// BIG.MixColumns flags, one per 4x4 sub-matrix j of the 4x64 byte view
/// (byte columns 4j..4j+3).
constexpr std::array<ColumnFlag, 16> big_mc_flags(const EchoState& input, const EchoState& output) noexcept {
    std::array<ColumnFlag, 16> flags{};
    for (std::size_t j = 0; j < 16; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
            const std::size_t c = 4 * j + k;
            GfByte acc = 0;
            for (std::size_t r = 0; r < 4; ++r) acc ^= static_cast<GfByte>(input.byte(r, c) ^ output.byte(r, c));
            flags[j].bytes[k] = acc;
        }
    }
    return flags;
}

namespace detail {

// Source index of each output position under a left rotation of row r by r,
// with index = 4*column + row. Written out rather than derived from
// shift_rows so the check does not share code with the transformation.
inline constexpr std::array<std::uint8_t, 16> kRowRotationSource{0, 5, 10, 15, 4, 9, 14, 3,
                                                                 8, 13, 2, 7, 12, 1, 6, 11};

}  // namespace detail

/// True when `output` is the ShiftRows permutation of `input`.
constexpr bool shiftrows_check(const aes::AesState& input, const aes::AesState& output) noexcept {
    for (std::size_t i = 0; i < 16; ++i)
        if (output.bytes[i] != input.bytes[detail::kRowRotationSource[i]]) return false;
    return true;
}

/// True when `output` is the BIG.ShiftRows permutation of `input`.
constexpr bool shiftrows_check(const EchoState& input, const EchoState& output) noexcept {
    for (std::size_t i = 0; i < 16; ++i)
        if (output.words[i] != input.words[detail::kRowRotationSource[i]]) return false;
    return true;
}

/// Parity granularity for the BIG.Final check.
enum class ParityMode : std::uint8_t {
    word,  // one parity bit per 128-bit word
    byte,  // sixteen parity bits per word, one per byte
};

/// Parity bits of one word; bit i of the result is the parity of byte i in
/// byte mode, bit 0 the parity of the whole word in word mode.
constexpr std::uint16_t parity(const EchoWord& w, ParityMode mode) noexcept {
    if (mode == ParityMode::word) {
        GfByte acc = 0;
        for (auto b : w.bytes) acc ^= b;
        return static_cast<std::uint16_t>(std::popcount(acc) & 1);
    }
    std::uint16_t bits = 0;
    for (std::size_t i = 0; i < 16; ++i)
        bits = static_cast<std::uint16_t>(bits | ((std::popcount(w.bytes[i]) & 1) << i));
    return bits;
}

using FinalParity = std::array<std::uint16_t, 4>;

/// Predicted parity of each new chaining word v_r from the compression
/// inputs and the eighth BIG.MixColumns output:
///   P(v_r) = P(v_prev_r ^ A_r) ^ sum_{c=1..3} P(A_{4c+r}) ^ sum_{c=0..2} P(M_{4c+r})
constexpr FinalParity predict_final_parity(const ChainingValue& v_prev, const MessageBlock& m,
                                           const std::array<EchoWord, 16>& a, ParityMode mode) noexcept {
    FinalParity p{};
    for (std::size_t r = 0; r < 4; ++r) {
        std::uint16_t acc = parity(v_prev[r] ^ a[r], mode);
        for (std::size_t c = 1; c < 4; ++c) acc ^= parity(a[4 * c + r], mode);
        for (std::size_t c = 0; c < 3; ++c) acc ^= parity(m[4 * c + r], mode);
        p[r] = acc;
    }
    return p;
}

constexpr FinalParity final_parity(const ChainingValue& v_next, ParityMode mode) noexcept {
    FinalParity p{};
    for (std::size_t r = 0; r < 4; ++r) p[r] = parity(v_next[r], mode);
    return p;
}

constexpr bool big_final_parity_check(const ChainingValue& v_prev, const MessageBlock& m,
                                      const std::array<EchoWord, 16>& a, const ChainingValue& v_next,
                                      ParityMode mode = ParityMode::word) noexcept {
    return predict_final_parity(v_prev, m, a, mode) == final_parity(v_next, mode);
}

struct GuardOptions {
    unsigned flag_bits = 8;  // folded width of each column flag
    ParityMode parity = ParityMode::word;
};

struct GuardedCompression {
    ChainingValue v{};
    SignatureReport report;
};

/// Compress_512 with every check evaluated at its boundary. The hook sees
/// each transformation output (and may overwrite it) before the consumer
/// and the check read it.
template <class Hook = NullHook>
GuardedCompression guarded_compress512(const ChainingValue& v_prev, const MessageBlock& m, const EchoParams& params,
                                       const GuardOptions& opts, Hook& hook, std::uint32_t block = 0) {
    if (opts.flag_bits < 1 || opts.flag_bits > 32) throw std::invalid_argument("guard: flag_bits must be in 1..32");

    GuardedCompression result;
    SignatureReport& report = result.report;
    auto emit = [&](const CheckId& id, bool raised) { report.record(id, hook.verdict(id, raised)); };
    auto site = [&](Stage stage, int round, int step, std::size_t word) {
        return Site{stage, block, static_cast<std::uint16_t>(round), static_cast<std::uint8_t>(step),
                    static_cast<std::uint16_t>(word)};
    };

    const EchoState initial = assemble(v_prev, m);
    EchoState s = initial;
    // The parity predictor taps the last BIG.MixColumns result as computed,
    // upstream of the signal that feeds BIG.Final.
    EchoState last_mixed;

    for (int round = 0; round < kBigRounds; ++round) {
        // BIG.SubWords: two AES rounds on each word, checked per AES round.
        for (std::size_t n = 0; n < 16; ++n) {
            const auto keys = round_keys(params, round, n);
            EchoWord w = s.words[n];
            for (int step = 0; step < 2; ++step) {
                EchoWord sb = EchoWord::from_aes(aes::sub_bytes(w.as_aes()));
                hook.signal(site(Stage::echo_sub_bytes, round, step, n), std::span<EchoWord>(&sb, 1));

                EchoWord sr = EchoWord::from_aes(aes::shift_rows(sb.as_aes()));
                hook.signal(site(Stage::echo_shift_rows, round, step, n), std::span<EchoWord>(&sr, 1));
                emit({CheckKind::echo_shift_rows, block, static_cast<std::uint16_t>(round),
                      static_cast<std::uint8_t>(step), static_cast<std::uint16_t>(n)},
                     !shiftrows_check(sb.as_aes(), sr.as_aes()));

                EchoWord mc = EchoWord::from_aes(aes::mix_columns(sr.as_aes()));
                hook.signal(site(Stage::echo_mix_columns, round, step, n), std::span<EchoWord>(&mc, 1));

                EchoWord ark = EchoWord::from_aes(aes::add_round_key(mc.as_aes(), keys[step]));
                hook.signal(site(Stage::echo_add_round_key, round, step, n), std::span<EchoWord>(&ark, 1));
                const ColumnFlag flag = mc_ark_flag(sr.as_aes(), keys[step], ark.as_aes());
                emit({CheckKind::echo_mc_ark, block, static_cast<std::uint16_t>(round),
                      static_cast<std::uint8_t>(step), static_cast<std::uint16_t>(n)},
                     compress_flag(flag, opts.flag_bits) != 0);
                w = ark;
            }
            s.words[n] = w;
        }

        EchoState shifted = big_shiftrows(s);
        hook.signal(site(Stage::echo_big_shift_rows, round, 0, 0), std::span<EchoWord>(shifted.words));
        emit({CheckKind::echo_big_shift_rows, block, static_cast<std::uint16_t>(round), 0, 0},
             !shiftrows_check(s, shifted));

        EchoState mixed = big_mixcolumns(shifted);
        if (round == kBigRounds - 1) last_mixed = mixed;
        hook.signal(site(Stage::echo_big_mix_columns, round, 0, 0), std::span<EchoWord>(mixed.words));
        const auto flags = big_mc_flags(shifted, mixed);
        for (std::size_t j = 0; j < 16; ++j)
            emit({CheckKind::echo_big_mix_columns, block, static_cast<std::uint16_t>(round), 0,
                  static_cast<std::uint16_t>(j)},
                 compress_flag(flags[j], opts.flag_bits) != 0);
        s = mixed;
    }

    ChainingValue v = big_final(initial, s);
    hook.signal(site(Stage::echo_big_final, kBigRounds - 1, 0, 0), std::span<EchoWord>(v));
    emit({CheckKind::echo_big_final, block, static_cast<std::uint16_t>(kBigRounds - 1), 0, 0},
         !big_final_parity_check(v_prev, m, last_mixed.words, v, opts.parity));

    result.v = v;
    return result;
}

inline GuardedCompression guarded_compress512(const ChainingValue& v_prev, const MessageBlock& m,
                                              const EchoParams& params, const GuardOptions& opts = {}) {
    NullHook hook;
    return guarded_compress512(v_prev, m, params, opts, hook);
}

struct GuardedDigest {
    Digest digest{};
    SignatureReport report;
};

template <class Hook = NullHook>
GuardedDigest guarded_echo_hash_bits(std::span<const GfByte> message, std::uint64_t bit_length, const Salt& salt,
                                     const GuardOptions& opts, Hook& hook) {
    GuardedDigest out;
    ChainingValue v = initial_chaining_value();
    std::uint32_t block = 0;
    for (const auto& padded : pad_and_split(message, bit_length)) {
        auto step = guarded_compress512(v, padded.words, EchoParams{salt, padded.counter}, opts, hook, block++);
        v = step.v;
        out.report.merge(step.report);
    }
    out.digest = truncate(v);
    return out;
}

inline GuardedDigest guarded_echo_hash(std::span<const GfByte> message, const Salt& salt = {},
                                       const GuardOptions& opts = {}) {
    NullHook hook;
    return guarded_echo_hash_bits(message, static_cast<std::uint64_t>(message.size()) * 8, salt, opts, hook);
}

}  // namespace hashguard::echo
