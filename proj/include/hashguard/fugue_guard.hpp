#pragma once

// Predicted-signature error detection for Fugue-256.
//
// Word-wide signature: sigma = XOR of the 30 state words. TIX moves it by
// exactly the pre-TIX S24; rotations and CMIX leave it unchanged. Super-Mix
// output bytes XOR to {3} * (I0 ^ I5 ^ I10 ^ I15), because the columns of N
// sum to {3} at 0, 5, 10, 15 and to zero elsewhere.

#include <array>
#include <cstdint>
#include <span>

#include "hashguard/fugue256.hpp"
#include "hashguard/signals.hpp"

namespace hashguard::fugue {

using WordSignature = std::uint32_t;
using ByteParity = GfByte;

constexpr WordSignature sigma(const FugueState& s) noexcept {
    WordSignature acc = 0;
    for (auto w : s.words) acc ^= w;
    return acc;
}

/// Predicted signature after TIX, ROR3, CMIX, from the state before TIX.
constexpr WordSignature trc_predict(const FugueState& pre_state) noexcept { return sigma(pre_state) ^ pre_state[24]; }

struct TrcResult {
    FugueState post_state;
    bool raised = false;
};

inline TrcResult trc_check(const FugueState& pre_state, MessageWord m) {
    TrcResult r;
    r.post_state = cmix(ror(tix(pre_state, m), 3));
    r.raised = sigma(r.post_state) != trc_predict(pre_state);
    return r;
}

constexpr ByteParity supermix_parity_predict(const Bytes16& input) noexcept {
    const GfByte diag = static_cast<GfByte>(input[0] ^ input[5] ^ input[10] ^ input[15]);
    return static_cast<GfByte>(diag ^ gf256::xtime(diag));
}

constexpr ByteParity byte_fold(const Bytes16& bytes) noexcept {
    GfByte acc = 0;
    for (auto b : bytes) acc ^= b;
    return acc;
}

/// True when the byte fold of `output` matches the prediction from `input`.
constexpr bool supermix_check(const Bytes16& input, const Bytes16& output) noexcept {
    return byte_fold(output) == supermix_parity_predict(input);
}

constexpr Bytes16 column_sums(const Matrix16& matrix) noexcept {
    Bytes16 sums{};
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) sums[c] ^= matrix[r][c];
    return sums;
}

namespace detail {

using Quad = std::array<std::uint32_t, 4>;

constexpr Quad to_quad(const Bytes16& b) noexcept {
    FugueState tmp;
    store_column_bytes(tmp, b);
    return {tmp[0], tmp[1], tmp[2], tmp[3]};
}

constexpr Bytes16 from_quad(const Quad& q) noexcept {
    FugueState tmp;
    for (std::size_t i = 0; i < 4; ++i) tmp[i] = q[i];
    return column_bytes(tmp);
}

/// Runs every guarded step of one Fugue-256 computation against a hook.
template <class Hook>
class Guard {
  public:
    Guard(Hook& hook, SignatureReport& report) : hook_(hook), report_(report) {}

    void signal(Stage stage, std::uint16_t round, std::uint8_t step, std::span<std::uint32_t> words) {
        hook_.signal(Site{stage, 0, round, step, 0}, words);
    }

    void emit(CheckKind kind, std::uint16_t round, std::uint8_t step, bool raised) {
        const CheckId id{kind, 0, round, step, 0};
        report_.record(id, hook_.verdict(id, raised));
    }

    void smix(FugueState& s, std::uint16_t round, std::uint8_t step) {
        Quad sboxed = to_quad(sbox_layer(column_bytes(s)));
        signal(Stage::fugue_sbox, round, step, sboxed);
        const Bytes16 mixin = from_quad(sboxed);
        Quad mixed = to_quad(super_mix(mixin));
        signal(Stage::fugue_super_mix, round, step, mixed);
        emit(CheckKind::fugue_super_mix, round, step, !supermix_check(mixin, from_quad(mixed)));
        for (std::size_t i = 0; i < 4; ++i) s[i] = mixed[i];
    }

    void ror(FugueState& s, unsigned r, Stage stage, std::uint16_t round, std::uint8_t step) {
        s = fugue::ror(s, r);
        signal(stage, round, step, s.words);
    }

    void cmix(FugueState& s, std::uint16_t round, std::uint8_t step) {
        s = fugue::cmix(s);
        signal(Stage::fugue_cmix, round, step, s.words);
    }

    void round(FugueState& s, MessageWord m, std::uint16_t index) {
        const WordSignature predicted = trc_predict(s);
        s = tix(s, m);
        signal(Stage::fugue_tix, index, 0, s.words);
        ror(s, 3, Stage::fugue_ror3, index, 0);
        cmix(s, index, 0);
        emit(CheckKind::fugue_trc, index, 0, sigma(s) != predicted);
        smix(s, index, 0);

        const WordSignature carried = sigma(s);
        ror(s, 3, Stage::fugue_ror3, index, 1);
        cmix(s, index, 1);
        emit(CheckKind::fugue_sigma, index, 1, sigma(s) != carried);
        smix(s, index, 1);
    }

    void fold(FugueState& s, std::size_t target, std::uint16_t round, std::uint8_t step) {
        s[4] ^= s[0];
        s[target] ^= s[0];
        signal(Stage::fugue_fold, round, step, s.words);
    }

    /// `first` is the global round index of the first finalization iteration.
    void finalize(FugueState& s, std::uint16_t first) {
        std::uint16_t round = first;
        for (int i = 0; i < kFinalMixIterations; ++i, ++round) {
            const WordSignature carried = sigma(s);
            ror(s, 3, Stage::fugue_ror3, round, 0);
            cmix(s, round, 0);
            emit(CheckKind::fugue_final_sigma, round, 0, sigma(s) != carried);
            smix(s, round, 0);
        }
        for (int i = 0; i < kFinalFoldIterations; ++i, ++round) {
            WordSignature carried = sigma(s);
            fold(s, 15, round, 0);
            ror(s, 15, Stage::fugue_ror15, round, 0);
            emit(CheckKind::fugue_final_sigma, round, 0, sigma(s) != carried);
            smix(s, round, 0);

            carried = sigma(s);
            fold(s, 16, round, 1);
            ror(s, 14, Stage::fugue_ror14, round, 1);
            emit(CheckKind::fugue_final_sigma, round, 1, sigma(s) != carried);
            smix(s, round, 1);
        }
        const WordSignature carried = sigma(s);
        fold(s, 15, round, 0);
        emit(CheckKind::fugue_final_sigma, round, 0, sigma(s) != carried);
    }

  private:
    Hook& hook_;
    SignatureReport& report_;
};

}  // namespace detail

/// Global round indices after `message_rounds` rounds: 10 mixing iterations,
/// 13 fold iterations, then the closing fold.
constexpr std::size_t finalization_rounds() noexcept { return kFinalMixIterations + kFinalFoldIterations + 1; }

struct GuardedRound {
    FugueState state;
    SignatureReport report;
};

template <class Hook = NullHook>
GuardedRound guarded_round(const FugueState& s, MessageWord m, Hook& hook, std::uint16_t index = 0) {
    GuardedRound out{s, {}};
    detail::Guard<Hook> guard(hook, out.report);
    guard.round(out.state, m, index);
    return out;
}

inline GuardedRound guarded_round(const FugueState& s, MessageWord m) {
    NullHook hook;
    return guarded_round(s, m, hook);
}

struct GuardedDigest {
    Digest digest{};
    SignatureReport report;
};

template <class Hook = NullHook>
GuardedDigest guarded_fugue_hash_bits(std::span<const GfByte> message, std::uint64_t bit_length, Hook& hook) {
    GuardedDigest out;
    detail::Guard<Hook> guard(hook, out.report);
    FugueState s = initial_state();
    const auto words = pad_message(message, bit_length);
    std::uint16_t index = 0;
    for (MessageWord m : words) guard.round(s, m, index++);
    guard.finalize(s, index);
    out.digest = extract_digest(s);
    return out;
}

inline GuardedDigest guarded_fugue_hash(std::span<const GfByte> message) {
    NullHook hook;
    return guarded_fugue_hash_bits(message, static_cast<std::uint64_t>(message.size()) * 8, hook);
}

}  // namespace hashguard::fugue
