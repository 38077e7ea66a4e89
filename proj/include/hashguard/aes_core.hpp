#pragma once

// AES round transformations on a single 16-byte state.
//
// Byte layout is the AES column-major convention used everywhere in this
// library: byte (r, c) lives at index 4*c + r.

#include <array>
#include <cstddef>
#include <cstdint>

#include "hashguard/gf256.hpp"

namespace hashguard::aes {

using gf256::GfByte;

struct AesState {
    std::array<GfByte, 16> bytes{};

    constexpr GfByte& at(std::size_t row, std::size_t col) noexcept { return bytes[4 * col + row]; }
    constexpr GfByte at(std::size_t row, std::size_t col) const noexcept { return bytes[4 * col + row]; }

    friend constexpr bool operator==(const AesState&, const AesState&) = default;
};

struct RoundKey {
    std::array<GfByte, 16> bytes{};

    constexpr GfByte at(std::size_t row, std::size_t col) const noexcept { return bytes[4 * col + row]; }

    friend constexpr bool operator==(const RoundKey&, const RoundKey&) = default;
};

namespace detail {

constexpr GfByte rotl8(GfByte v, int n) noexcept {
    return static_cast<GfByte>((v << n) | (v >> (8 - n)));
}

constexpr GfByte inverse(GfByte a) noexcept {
    // a^254 = a^-1 for a != 0, and 0 -> 0.
    GfByte result = 1;
    GfByte power = a;
    for (int e = 254; e != 0; e >>= 1) {
        if (e & 1) result = gf256::mul(result, power);
        power = gf256::mul(power, power);
    }
    return result;
}

constexpr std::array<GfByte, 256> make_sbox() noexcept {
    std::array<GfByte, 256> box{};
    for (int x = 0; x < 256; ++x) {
        const GfByte b = inverse(static_cast<GfByte>(x));
        box[x] = static_cast<GfByte>(b ^ rotl8(b, 1) ^ rotl8(b, 2) ^ rotl8(b, 3) ^ rotl8(b, 4) ^ 0x63);
    }
    return box;
}

constexpr std::array<GfByte, 256> invert_table(const std::array<GfByte, 256>& box) noexcept {
    std::array<GfByte, 256> inv{};
    for (int x = 0; x < 256; ++x) inv[box[x]] = static_cast<GfByte>(x);
    return inv;
}

}  // namespace detail

/// Forward S-box as a 256-entry table (inversion followed by the affine map).
inline constexpr std::array<GfByte, 256> kSbox = detail::make_sbox();
inline constexpr std::array<GfByte, 256> kInvSbox = detail::invert_table(kSbox);

constexpr AesState sub_bytes(AesState s) noexcept {
    for (auto& b : s.bytes) b = kSbox[b];
    return s;
}

/// Row r rotates left by r positions.
constexpr AesState shift_rows(const AesState& s) noexcept {
    AesState out;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) out.at(r, c) = s.at(r, (c + r) % 4);
    return out;
}

/// One column times circ(2, 3, 1, 1).
constexpr std::array<GfByte, 4> mix_column(GfByte a0, GfByte a1, GfByte a2, GfByte a3) noexcept {
    using gf256::xtime;
    const GfByte all = static_cast<GfByte>(a0 ^ a1 ^ a2 ^ a3);
    return {static_cast<GfByte>(a0 ^ all ^ xtime(static_cast<GfByte>(a0 ^ a1))),
            static_cast<GfByte>(a1 ^ all ^ xtime(static_cast<GfByte>(a1 ^ a2))),
            static_cast<GfByte>(a2 ^ all ^ xtime(static_cast<GfByte>(a2 ^ a3))),
            static_cast<GfByte>(a3 ^ all ^ xtime(static_cast<GfByte>(a3 ^ a0)))};
}

constexpr AesState mix_columns(const AesState& s) noexcept {
    AesState out;
    for (std::size_t c = 0; c < 4; ++c) {
        const auto col = mix_column(s.at(0, c), s.at(1, c), s.at(2, c), s.at(3, c));
        for (std::size_t r = 0; r < 4; ++r) out.at(r, c) = col[r];
    }
    return out;
}

constexpr AesState add_round_key(AesState s, const RoundKey& k) noexcept {
    for (std::size_t i = 0; i < 16; ++i) s.bytes[i] ^= k.bytes[i];
    return s;
}

constexpr AesState aes_round(const AesState& s, const RoundKey& k) noexcept {
    return add_round_key(mix_columns(shift_rows(sub_bytes(s))), k);
}

}  // namespace hashguard::aes
