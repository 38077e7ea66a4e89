#pragma once

// Fugue-256: a 30-word state absorbing one 32-bit message word per round.
//
// Round R = TIX, ROR3, CMIX, SMIX, ROR3, CMIX, SMIX. SMIX runs the AES S-box
// over the 16 bytes of S0..S3 and multiplies the result by the 16x16
// Super-Mix matrix N. Byte i of the Super-Mix vector is byte (i % 4) of
// word S_(i / 4), counting from the most significant byte.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hashguard/aes_core.hpp"

namespace hashguard::fugue {

using gf256::GfByte;

inline constexpr std::size_t kStateWords = 30;

struct FugueState {
    std::array<std::uint32_t, kStateWords> words{};

    constexpr std::uint32_t& operator[](std::size_t i) noexcept { return words[i]; }
    constexpr std::uint32_t operator[](std::size_t i) const noexcept { return words[i]; }

    friend constexpr bool operator==(const FugueState&, const FugueState&) = default;
};

using MessageWord = std::uint32_t;
using Bytes16 = std::array<GfByte, 16>;
using Matrix16 = std::array<std::array<GfByte, 16>, 16>;
using Digest = std::array<std::uint8_t, 32>;

/// The Super-Mix matrix N, row-major.
inline constexpr Matrix16 kSuperMix{{
    {1, 4, 7, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0},
    {0, 1, 0, 0, 1, 1, 4, 7, 0, 1, 0, 0, 0, 1, 0, 0},
    {0, 0, 1, 0, 0, 0, 1, 0, 7, 1, 1, 4, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 4, 7, 1, 1},
    {0, 0, 0, 0, 0, 4, 7, 1, 1, 0, 0, 0, 1, 0, 0, 0},
    {0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 4, 7, 0, 1, 0, 0},
    {0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 7, 1, 0, 4},
    {4, 7, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 7, 0, 0, 0, 6, 4, 7, 1, 7, 0, 0, 0},
    {0, 7, 0, 0, 0, 0, 0, 0, 0, 7, 0, 0, 1, 6, 4, 7},
    {7, 1, 6, 4, 0, 0, 7, 0, 0, 0, 0, 0, 0, 0, 7, 0},
    {0, 0, 0, 7, 4, 7, 1, 6, 0, 0, 0, 7, 0, 0, 0, 0},
    {0, 0, 0, 0, 4, 0, 0, 0, 4, 0, 0, 0, 5, 4, 7, 1},
    {1, 5, 4, 7, 0, 0, 0, 0, 0, 4, 0, 0, 0, 4, 0, 0},
    {0, 0, 4, 0, 7, 1, 5, 4, 0, 0, 0, 0, 0, 0, 4, 0},
    {0, 0, 0, 4, 0, 0, 0, 4, 4, 7, 1, 5, 0, 0, 0, 0},
}};

/// Fugue-256 IV, loaded into S22..S29.
inline constexpr std::array<std::uint32_t, 8> kIv256{0xe952bdde, 0x6671135f, 0xe0d4f668, 0xd2b0b594,
                                                     0xf96c621d, 0xfbf929de, 0x9149e899, 0x34f8c248};

constexpr FugueState initial_state() noexcept {
    FugueState s;
    for (std::size_t i = 0; i < kIv256.size(); ++i) s[22 + i] = kIv256[i];
    return s;
}

constexpr FugueState tix(FugueState s, MessageWord m) noexcept {
    s[10] ^= s[0];
    s[0] = m;
    s[8] ^= m;
    s[1] ^= s[24];
    return s;
}

/// Rotates right by r words: new S_(i+r mod 30) = old S_i.
inline FugueState ror(const FugueState& s, unsigned r) {
    if (r != 3 && r != 14 && r != 15) throw std::invalid_argument("fugue: rotation must be 3, 14 or 15");
    FugueState out;
    for (std::size_t i = 0; i < kStateWords; ++i) out[(i + r) % kStateWords] = s[i];
    return out;
}

constexpr FugueState cmix(FugueState s) noexcept {
    s[0] ^= s[4];
    s[1] ^= s[5];
    s[2] ^= s[6];
    s[15] ^= s[4];
    s[16] ^= s[5];
    s[17] ^= s[6];
    return s;
}

namespace detail {

struct SparseRow {
    std::array<std::uint8_t, 16> col{};
    std::array<GfByte, 16> coef{};
    std::size_t size = 0;
};

constexpr std::array<SparseRow, 16> sparse(const Matrix16& n) noexcept {
    std::array<SparseRow, 16> rows{};
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c)
            if (n[r][c] != 0) {
                rows[r].col[rows[r].size] = static_cast<std::uint8_t>(c);
                rows[r].coef[rows[r].size] = n[r][c];
                ++rows[r].size;
            }
    return rows;
}

inline constexpr auto kSuperMixSparse = sparse(kSuperMix);

}  // namespace detail

/// output_r = XOR over c of N[r][c] * input_c.
constexpr Bytes16 super_mix(const Bytes16& input) noexcept {
    Bytes16 out{};
    for (std::size_t r = 0; r < 16; ++r) {
        const auto& row = detail::kSuperMixSparse[r];
        GfByte acc = 0;
        for (std::size_t k = 0; k < row.size; ++k) acc ^= gf256::mul_small(row.coef[k], input[row.col[k]]);
        out[r] = acc;
    }
    return out;
}

constexpr Bytes16 column_bytes(const FugueState& s) noexcept {
    Bytes16 b{};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) b[4 * j + i] = static_cast<GfByte>(s[j] >> (24 - 8 * i));
    return b;
}

constexpr void store_column_bytes(FugueState& s, const Bytes16& b) noexcept {
    for (std::size_t j = 0; j < 4; ++j)
        s[j] = (static_cast<std::uint32_t>(b[4 * j]) << 24) | (static_cast<std::uint32_t>(b[4 * j + 1]) << 16) |
               (static_cast<std::uint32_t>(b[4 * j + 2]) << 8) | static_cast<std::uint32_t>(b[4 * j + 3]);
}

constexpr Bytes16 sbox_layer(Bytes16 b) noexcept {
    for (auto& x : b) x = aes::kSbox[x];
    return b;
}

/// S-box on S0..S3, then Super-Mix; S4..S29 untouched.
constexpr FugueState smix(FugueState s) noexcept {
    store_column_bytes(s, super_mix(sbox_layer(column_bytes(s))));
    return s;
}

inline FugueState round(FugueState s, MessageWord m) {
    s = tix(s, m);
    s = cmix(ror(s, 3));
    s = smix(s);
    s = cmix(ror(s, 3));
    return smix(s);
}

/// Message words followed by the two-word big-endian bit length. A trailing
/// partial word is zero-filled on the right.
inline std::vector<MessageWord> pad_message(std::span<const GfByte> message, std::uint64_t bit_length) {
    if ((bit_length + 7) / 8 > message.size())
        throw std::invalid_argument("fugue: bit length exceeds message buffer");
    const std::size_t nbytes = static_cast<std::size_t>((bit_length + 7) / 8);
    std::vector<MessageWord> words((nbytes + 3) / 4 + 2, 0);
    for (std::size_t i = 0; i < nbytes; ++i) {
        GfByte b = message[i];
        if (i == nbytes - 1 && bit_length % 8 != 0) b = static_cast<GfByte>(b & (0xFF00u >> (bit_length % 8)));
        words[i / 4] |= static_cast<std::uint32_t>(b) << (24 - 8 * (i % 4));
    }
    words[words.size() - 2] = static_cast<std::uint32_t>(bit_length >> 32);
    words[words.size() - 1] = static_cast<std::uint32_t>(bit_length);
    return words;
}

inline constexpr int kFinalMixIterations = 10;
inline constexpr int kFinalFoldIterations = 13;

inline FugueState finalize(FugueState s) {
    for (int i = 0; i < kFinalMixIterations; ++i) s = smix(cmix(ror(s, 3)));
    for (int i = 0; i < kFinalFoldIterations; ++i) {
        s[4] ^= s[0];
        s[15] ^= s[0];
        s = smix(ror(s, 15));
        s[4] ^= s[0];
        s[16] ^= s[0];
        s = smix(ror(s, 14));
    }
    s[4] ^= s[0];
    s[15] ^= s[0];
    return s;
}

inline constexpr std::array<std::size_t, 8> kOutputWords{1, 2, 3, 4, 15, 16, 17, 18};

constexpr Digest extract_digest(const FugueState& s) noexcept {
    Digest d{};
    for (std::size_t k = 0; k < kOutputWords.size(); ++k)
        for (std::size_t i = 0; i < 4; ++i) d[4 * k + i] = static_cast<std::uint8_t>(s[kOutputWords[k]] >> (24 - 8 * i));
    return d;
}

inline Digest fugue_hash_bits(std::span<const GfByte> message, std::uint64_t bit_length) {
    FugueState s = initial_state();
    for (MessageWord m : pad_message(message, bit_length)) s = round(s, m);
    return extract_digest(finalize(s));
}

inline Digest fugue_hash(std::span<const GfByte> message) {
    return fugue_hash_bits(message, static_cast<std::uint64_t>(message.size()) * 8);
}

}  // namespace hashguard::fugue
