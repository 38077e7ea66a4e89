#pragma once

// Arithmetic in GF(2^8) modulo M(x) = x^8 + x^4 + x^3 + x + 1.

#include <cstdint>

namespace hashguard::gf256 {

using GfByte = std::uint8_t;

/// Low byte of M(x); x^8 reduces to this.
inline constexpr GfByte kReduction = 0x1B;

constexpr GfByte add(GfByte a, GfByte b) noexcept { return static_cast<GfByte>(a ^ b); }

/// a * x mod M(x), without a data-dependent branch.
constexpr GfByte xtime(GfByte a) noexcept {
    const auto carry = static_cast<GfByte>(0u - (a >> 7));
    return static_cast<GfByte>((a << 1) ^ (carry & kReduction));
}

/// Shift-and-add multiply; the loop count is fixed and every step is masked,
/// so timing does not depend on the operands.
constexpr GfByte mul(GfByte a, GfByte b) noexcept {
    GfByte acc = 0;
    for (int i = 0; i < 8; ++i) {
        const auto take = static_cast<GfByte>(0u - (b & 1u));
        acc ^= static_cast<GfByte>(a & take);
        a = xtime(a);
        b = static_cast<GfByte>(b >> 1);
    }
    return acc;
}

/// Multiplication by a small constant (c < 8) as an xtime chain:
/// c*a = c0*a + c1*(x a) + c2*(x^2 a).
template <GfByte C>
constexpr GfByte mul_const(GfByte a) noexcept {
    static_assert(C < 8, "xtime chains are only used for the Super-Mix coefficients");
    GfByte acc = 0;
    if constexpr ((C & 1) != 0) acc ^= a;
    if constexpr ((C & 2) != 0) acc ^= xtime(a);
    if constexpr ((C & 4) != 0) acc ^= xtime(xtime(a));
    return acc;
}

/// Runtime-dispatched form of mul_const for coefficients read from a table.
constexpr GfByte mul_small(GfByte c, GfByte a) noexcept {
    const GfByte a2 = xtime(a);
    const GfByte a4 = xtime(a2);
    const auto m1 = static_cast<GfByte>(0u - (c & 1u));
    const auto m2 = static_cast<GfByte>(0u - ((c >> 1) & 1u));
    const auto m4 = static_cast<GfByte>(0u - ((c >> 2) & 1u));
    return static_cast<GfByte>((a & m1) ^ (a2 & m2) ^ (a4 & m4));
}

}  // namespace hashguard::gf256
