#include <gtest/gtest.h>

#include <random>

#include "hashguard/fugue256.hpp"
#include "hashguard/hex.hpp"
#include "kat_files.hpp"

using namespace hashguard;
using namespace hashguard::fugue;

namespace {

FugueState indexed_state() {
    FugueState s;
    for (std::size_t i = 0; i < kStateWords; ++i) s[i] = 0x01010101u * static_cast<std::uint32_t>(i + 1);
    return s;
}

void expect_kat(const std::string& file) {
    const auto entries = load_kat(file);
    ASSERT_FALSE(entries.empty());
    for (const auto& e : entries) EXPECT_EQ(to_hex(fugue_hash_bits(e.msg, e.len)), to_hex(e.md)) << file << " Len=" << e.len;
}

unsigned slow_mul(unsigned a, unsigned b) {
    unsigned p = 0;
    for (int i = 0; i < 8; ++i)
        if ((b >> i) & 1u) p ^= a << i;
    for (int i = 14; i >= 8; --i)
        if ((p >> i) & 1u) p ^= 0x11Bu << (i - 8);
    return p;
}

}  // namespace

TEST(Fugue256, ShortMessageKat) { expect_kat("ShortMsgKAT_Fugue256.txt"); }

TEST(Fugue256, BitLengthKat) { expect_kat("BitMsgKAT_Fugue256.txt"); }

TEST(Fugue256, InitialStateHoldsIvInLastEightWords) {
    const FugueState s = initial_state();
    for (std::size_t i = 0; i < 22; ++i) EXPECT_EQ(s[i], 0u);
    EXPECT_EQ(s[22], 0xe952bddeu);
    EXPECT_EQ(s[29], 0x34f8c248u);
}

TEST(Fugue256, TixByHand) {
    const FugueState s = indexed_state();
    const FugueState t = tix(s, 0xCAFEBABEu);
    EXPECT_EQ(t[0], 0xCAFEBABEu);
    EXPECT_EQ(t[1], s[1] ^ s[24]);
    EXPECT_EQ(t[8], s[8] ^ 0xCAFEBABEu);
    EXPECT_EQ(t[10], s[10] ^ s[0]);
    for (std::size_t i : {2u, 3u, 9u, 11u, 24u, 29u}) EXPECT_EQ(t[i], s[i]);
}

TEST(Fugue256, CmixByHand) {
    const FugueState s = indexed_state();
    const FugueState t = cmix(s);
    EXPECT_EQ(t[0], s[0] ^ s[4]);
    EXPECT_EQ(t[1], s[1] ^ s[5]);
    EXPECT_EQ(t[2], s[2] ^ s[6]);
    EXPECT_EQ(t[15], s[15] ^ s[4]);
    EXPECT_EQ(t[16], s[16] ^ s[5]);
    EXPECT_EQ(t[17], s[17] ^ s[6]);
    for (std::size_t i : {3u, 4u, 5u, 6u, 14u, 18u}) EXPECT_EQ(t[i], s[i]);
}

TEST(Fugue256, RotationMovesWordsRight) {
    const FugueState s = indexed_state();
    for (unsigned r : {3u, 14u, 15u}) {
        const FugueState t = ror(s, r);
        for (std::size_t i = 0; i < kStateWords; ++i) EXPECT_EQ(t[(i + r) % kStateWords], s[i]);
    }
    EXPECT_THROW(ror(s, 4), std::invalid_argument);
}

TEST(Fugue256, SuperMixMatchesMatrixProduct) {
    std::mt19937 rng(3);
    for (int t = 0; t < 2000; ++t) {
        Bytes16 in{};
        for (auto& b : in) b = static_cast<GfByte>(rng());
        const Bytes16 out = super_mix(in);
        for (std::size_t r = 0; r < 16; ++r) {
            unsigned want = 0;
            for (std::size_t c = 0; c < 16; ++c) want ^= slow_mul(kSuperMix[r][c], in[c]);
            ASSERT_EQ(out[r], want);
        }
    }
}

TEST(Fugue256, ColumnBytesAreBigEndianPerWord) {
    FugueState s;
    s[0] = 0x00010203u;
    s[3] = 0x0C0D0E0Fu;
    const Bytes16 b = column_bytes(s);
    EXPECT_EQ(b[0], 0x00);
    EXPECT_EQ(b[3], 0x03);
    EXPECT_EQ(b[12], 0x0C);
    FugueState back;
    store_column_bytes(back, b);
    EXPECT_EQ(back[0], s[0]);
    EXPECT_EQ(back[3], s[3]);
}

TEST(Fugue256, SmixTouchesOnlyFirstFourWords) {
    const FugueState s = indexed_state();
    const FugueState t = smix(s);
    for (std::size_t i = 4; i < kStateWords; ++i) EXPECT_EQ(t[i], s[i]);
    EXPECT_NE(t[0], s[0]);
}

TEST(Fugue256, PaddingAppendsBigEndianBitLength) {
    const std::vector<GfByte> msg{0xAB, 0xCD, 0xEF, 0x12, 0x34, 0xFF};
    const auto w = pad_message(msg, 44);  // last byte keeps its top four bits
    ASSERT_EQ(w.size(), 4u);
    EXPECT_EQ(w[0], 0xABCDEF12u);
    EXPECT_EQ(w[1], 0x34F00000u);
    EXPECT_EQ(w[2], 0u);
    EXPECT_EQ(w[3], 44u);
    EXPECT_EQ(pad_message({}, 0).size(), 2u);
    EXPECT_THROW(pad_message(msg, 49), std::invalid_argument);
}
