#include <gtest/gtest.h>

#include <set>

#include "hashguard/aes_core.hpp"
#include "hashguard/hex.hpp"

using namespace hashguard;
using aes::AesState;

namespace {

AesState state_from_hex(const char* hex) {
    const auto raw = from_hex(hex);
    AesState s;
    std::copy(raw.begin(), raw.end(), s.bytes.begin());
    return s;
}

// AES-128 key expansion, used only to drive the round primitives through
// the published block-cipher vector.
std::array<aes::RoundKey, 11> expand_key(const AesState& key) {
    std::array<std::array<gf256::GfByte, 4>, 44> w{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w[i][j] = key.bytes[4 * i + j];
    gf256::GfByte rcon = 1;
    for (int i = 4; i < 44; ++i) {
        auto t = w[i - 1];
        if (i % 4 == 0) {
            t = {aes::kSbox[t[1]], aes::kSbox[t[2]], aes::kSbox[t[3]], aes::kSbox[t[0]]};
            t[0] ^= rcon;
            rcon = gf256::xtime(rcon);
        }
        for (int j = 0; j < 4; ++j) w[i][j] = w[i - 4][j] ^ t[j];
    }
    std::array<aes::RoundKey, 11> keys{};
    for (int r = 0; r < 11; ++r)
        for (int c = 0; c < 4; ++c)
            for (int j = 0; j < 4; ++j) keys[r].bytes[4 * c + j] = w[4 * r + c][j];
    return keys;
}

}  // namespace

TEST(AesCore, SboxKnownEntries) {
    EXPECT_EQ(aes::kSbox[0x00], 0x63);
    EXPECT_EQ(aes::kSbox[0x01], 0x7C);
    EXPECT_EQ(aes::kSbox[0x53], 0xED);
    EXPECT_EQ(aes::kSbox[0xFF], 0x16);
}

TEST(AesCore, SboxMatchesBruteForceInverseAndAffine) {
    for (unsigned a = 0; a < 256; ++a) {
        unsigned inv = 0;
        for (unsigned b = 1; b < 256 && a != 0; ++b)
            if (gf256::mul(static_cast<gf256::GfByte>(a), static_cast<gf256::GfByte>(b)) == 1) inv = b;
        unsigned out = 0x63;
        for (int i = 0; i < 8; ++i) {
            const unsigned bit = ((inv >> i) ^ (inv >> ((i + 4) % 8)) ^ (inv >> ((i + 5) % 8)) ^
                                  (inv >> ((i + 6) % 8)) ^ (inv >> ((i + 7) % 8))) & 1u;
            out ^= bit << i;
        }
        EXPECT_EQ(aes::kSbox[a], out) << a;
    }
}

TEST(AesCore, SboxIsBijectiveAndInverted) {
    std::set<unsigned> seen(aes::kSbox.begin(), aes::kSbox.end());
    EXPECT_EQ(seen.size(), 256u);
    for (unsigned a = 0; a < 256; ++a) EXPECT_EQ(aes::kInvSbox[aes::kSbox[a]], a);
}

TEST(AesCore, MixColumnKnownVectors) {
    EXPECT_EQ(aes::mix_column(0xDB, 0x13, 0x53, 0x45), (std::array<gf256::GfByte, 4>{0x8E, 0x4D, 0xA1, 0xBC}));
    EXPECT_EQ(aes::mix_column(0xF2, 0x0A, 0x22, 0x5C), (std::array<gf256::GfByte, 4>{0x9F, 0xDC, 0x58, 0x9D}));
    EXPECT_EQ(aes::mix_column(0x01, 0x01, 0x01, 0x01), (std::array<gf256::GfByte, 4>{0x01, 0x01, 0x01, 0x01}));
}

TEST(AesCore, ShiftRowsRotatesRowRByR) {
    AesState s;
    for (int i = 0; i < 16; ++i) s.bytes[i] = static_cast<gf256::GfByte>(i);
    const AesState t = aes::shift_rows(s);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(t.at(r, c), s.at(r, (c + r) % 4));
}

TEST(AesCore, EncryptsPublishedAes128Vector) {
    const auto keys = expand_key(state_from_hex("000102030405060708090a0b0c0d0e0f"));
    AesState s = aes::add_round_key(state_from_hex("00112233445566778899aabbccddeeff"), keys[0]);
    for (int r = 1; r < 10; ++r) s = aes::aes_round(s, keys[r]);
    s = aes::add_round_key(aes::shift_rows(aes::sub_bytes(s)), keys[10]);
    EXPECT_EQ(s, state_from_hex("69c4e0d86a7b0430d8cdb78070b4c55a"));
}
