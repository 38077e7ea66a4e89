#pragma once

// ECHO-256: Compress_512 over a 4x4 matrix of 128-bit words, chained over
// 1536-bit message blocks.
//
// Word n of the 4x4 word matrix sits at row n % 4, column n / 4. Column 0
// carries the chaining value, columns 1..3 the twelve message words.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hashguard/aes_core.hpp"

namespace hashguard::echo {

using gf256::GfByte;

struct EchoWord {
    std::array<GfByte, 16> bytes{};

    constexpr aes::AesState as_aes() const noexcept { return aes::AesState{bytes}; }
    static constexpr EchoWord from_aes(const aes::AesState& s) noexcept { return EchoWord{s.bytes}; }

    constexpr EchoWord& operator^=(const EchoWord& o) noexcept {
        for (std::size_t i = 0; i < 16; ++i) bytes[i] ^= o.bytes[i];
        return *this;
    }
    friend constexpr EchoWord operator^(EchoWord a, const EchoWord& b) noexcept { return a ^= b; }
    friend constexpr bool operator==(const EchoWord&, const EchoWord&) = default;
};

struct EchoState {
    std::array<EchoWord, 16> words{};

    constexpr EchoWord& at(std::size_t row, std::size_t col) noexcept { return words[4 * col + row]; }
    constexpr const EchoWord& at(std::size_t row, std::size_t col) const noexcept { return words[4 * col + row]; }

    /// Byte (row, column) of the 4-row, 64-column view used by BIG.MixColumns.
    constexpr GfByte& byte(std::size_t row, std::size_t col64) noexcept {
        return words[4 * (col64 / 16) + row].bytes[col64 % 16];
    }
    constexpr GfByte byte(std::size_t row, std::size_t col64) const noexcept {
        return words[4 * (col64 / 16) + row].bytes[col64 % 16];
    }

    friend constexpr bool operator==(const EchoState&, const EchoState&) = default;
};

using ByteMatrix = std::array<std::array<GfByte, 64>, 4>;

constexpr ByteMatrix to_byte_matrix(const EchoState& s) noexcept {
    ByteMatrix m{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 64; ++c) m[r][c] = s.byte(r, c);
    return m;
}

constexpr EchoState from_byte_matrix(const ByteMatrix& m) noexcept {
    EchoState s;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 64; ++c) s.byte(r, c) = m[r][c];
    return s;
}

using Salt = std::array<GfByte, 16>;
using ChainingValue = std::array<EchoWord, 4>;
using MessageBlock = std::array<EchoWord, 12>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr unsigned kDigestBits = 256;
inline constexpr std::size_t kBlockBits = 1536;
inline constexpr std::size_t kBlockBytes = kBlockBits / 8;
/// Padding needs one marker bit plus a 16-bit size and a 128-bit counter.
inline constexpr std::size_t kTrailerBits = 144;
inline constexpr int kBigRounds = 8;

struct EchoParams {
    Salt salt{};
    /// Message bits hashed up to and including the current block; zero for a
    /// block that carries no message bits.
    std::uint64_t counter = 0;
};

struct PaddedBlock {
    MessageBlock words{};
    std::uint64_t counter = 0;
};

/// Initial chaining value: each word holds the output size as a
/// little-endian integer.
constexpr ChainingValue initial_chaining_value() noexcept {
    ChainingValue v{};
    for (auto& w : v) {
        w.bytes[0] = static_cast<GfByte>(kDigestBits & 0xFF);
        w.bytes[1] = static_cast<GfByte>(kDigestBits >> 8);
    }
    return v;
}

namespace detail {

inline void store_le64(GfByte* out, std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<GfByte>(v >> (8 * i));
}

inline MessageBlock block_from_bytes(std::span<const GfByte, kBlockBytes> raw) noexcept {
    MessageBlock b{};
    for (std::size_t w = 0; w < 12; ++w)
        for (std::size_t i = 0; i < 16; ++i) b[w].bytes[i] = raw[16 * w + i];
    return b;
}

}  // namespace detail

/// Splits a message of `bit_length` bits (most significant bit first within
/// each byte) into padded 1536-bit blocks with their counter values.
inline std::vector<PaddedBlock> pad_and_split(std::span<const GfByte> message, std::uint64_t bit_length) {
    if ((bit_length + 7) / 8 > message.size())
        throw std::invalid_argument("echo: bit length exceeds message buffer");

    std::vector<PaddedBlock> blocks;
    std::array<GfByte, kBlockBytes> raw{};
    std::uint64_t consumed = 0;

    // Full blocks are compressed as soon as they fill.
    while (bit_length - consumed >= kBlockBits) {
        std::copy_n(message.begin() + static_cast<std::ptrdiff_t>(consumed / 8), kBlockBytes, raw.begin());
        consumed += kBlockBits;
        blocks.push_back({detail::block_from_bytes(raw), consumed});
    }

    const std::uint64_t tail_bits = bit_length - consumed;
    raw.fill(0);
    const std::size_t tail_bytes = static_cast<std::size_t>((tail_bits + 7) / 8);
    std::copy_n(message.begin() + static_cast<std::ptrdiff_t>(consumed / 8), tail_bytes, raw.begin());
    const std::size_t pos = static_cast<std::size_t>(tail_bits);
    raw[pos / 8] = static_cast<GfByte>((raw[pos / 8] | (0x80u >> (pos % 8))) & (0xFFu << (7 - pos % 8)));

    if (kBlockBits - tail_bits < kTrailerBits + 1) {
        blocks.push_back({detail::block_from_bytes(raw), bit_length});
        raw.fill(0);
    }
    // The trailing block's counter is zero when it carries no message bits.
    const std::uint64_t last_counter = (tail_bits > 0 && kBlockBits - tail_bits >= kTrailerBits + 1) ? bit_length : 0;
    constexpr std::size_t trailer = kBlockBytes - kTrailerBits / 8;
    raw[trailer] = static_cast<GfByte>(kDigestBits & 0xFF);
    raw[trailer + 1] = static_cast<GfByte>(kDigestBits >> 8);
    detail::store_le64(raw.data() + trailer + 2, bit_length);
    detail::store_le64(raw.data() + trailer + 10, 0);
    blocks.push_back({detail::block_from_bytes(raw), last_counter});
    return blocks;
}

/// Keys for word `word` of BIG.Round `round`: the first AES round uses the
/// running 128-bit counter, the second uses the salt.
inline std::array<aes::RoundKey, 2> round_keys(const EchoParams& params, int round, std::size_t word) noexcept {
    const std::uint64_t offset = static_cast<std::uint64_t>(16 * round) + word;
    const std::uint64_t low = params.counter + offset;
    aes::RoundKey k1;
    detail::store_le64(k1.bytes.data(), low);
    k1.bytes[8] = low < params.counter ? 1 : 0;
    aes::RoundKey k2{params.salt};
    return {k1, k2};
}

inline EchoState big_subwords(const EchoState& s, const EchoParams& params, int round) noexcept {
    EchoState out;
    for (std::size_t n = 0; n < 16; ++n) {
        const auto keys = round_keys(params, round, n);
        out.words[n] = EchoWord::from_aes(aes::aes_round(aes::aes_round(s.words[n].as_aes(), keys[0]), keys[1]));
    }
    return out;
}

/// Word-row r rotates left by r word positions.
constexpr EchoState big_shiftrows(const EchoState& s) noexcept {
    EchoState out;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) out.at(r, c) = s.at(r, (c + r) % 4);
    return out;
}

/// MixColumns applied to each of the 64 byte columns of the 4x64 view.
constexpr EchoState big_mixcolumns(const EchoState& s) noexcept {
    EchoState out;
    for (std::size_t c = 0; c < 64; ++c) {
        const auto col = aes::mix_column(s.byte(0, c), s.byte(1, c), s.byte(2, c), s.byte(3, c));
        for (std::size_t r = 0; r < 4; ++r) out.byte(r, c) = col[r];
    }
    return out;
}

/// Feed-forward and fold: v_r = XOR over columns c of (initial(r,c) ^ final(r,c)).
constexpr ChainingValue big_final(const EchoState& initial, const EchoState& final_state) noexcept {
    ChainingValue v{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) v[r] ^= initial.at(r, c) ^ final_state.at(r, c);
    return v;
}

constexpr EchoState assemble(const ChainingValue& v_prev, const MessageBlock& m) noexcept {
    EchoState s;
    for (std::size_t i = 0; i < 4; ++i) s.words[i] = v_prev[i];
    for (std::size_t i = 0; i < 12; ++i) s.words[4 + i] = m[i];
    return s;
}

inline ChainingValue compress512(const ChainingValue& v_prev, const MessageBlock& m, const EchoParams& params) noexcept {
    const EchoState initial = assemble(v_prev, m);
    EchoState s = initial;
    for (int round = 0; round < kBigRounds; ++round)
        s = big_mixcolumns(big_shiftrows(big_subwords(s, params, round)));
    return big_final(initial, s);
}

constexpr Digest truncate(const ChainingValue& v) noexcept {
    Digest d{};
    for (std::size_t i = 0; i < 16; ++i) {
        d[i] = v[0].bytes[i];
        d[16 + i] = v[1].bytes[i];
    }
    return d;
}

inline Digest echo_hash_bits(std::span<const GfByte> message, std::uint64_t bit_length, const Salt& salt = {}) {
    ChainingValue v = initial_chaining_value();
    for (const auto& block : pad_and_split(message, bit_length))
        v = compress512(v, block.words, EchoParams{salt, block.counter});
    return truncate(v);
}

inline Digest echo_hash(std::span<const GfByte> message, const Salt& salt = {}) {
    return echo_hash_bits(message, static_cast<std::uint64_t>(message.size()) * 8, salt);
}

}  // namespace hashguard::echo
