#include <gtest/gtest.h>

#include <random>

#include "hashguard/fugue_guard.hpp"

using namespace hashguard;
using namespace hashguard::fugue;

namespace {

FugueState random_state(std::mt19937& rng) {
    FugueState s;
    for (auto& w : s.words) w = static_cast<std::uint32_t>(rng());
    return s;
}

// XORs `delta` into one word of one stage at one round and step.
struct XorHook {
    Stage stage;
    std::uint16_t round;
    std::uint8_t step;
    std::size_t word;
    std::uint32_t delta;
    template <class E>
    void signal(const Site& s, std::span<E> el) {
        if constexpr (std::is_same_v<E, std::uint32_t>)
            if (s.stage == stage && s.round == round && s.step == step && word < el.size()) el[word] ^= delta;
    }
    bool verdict(const CheckId&, bool raised) const { return raised; }
};

}  // namespace

TEST(FugueGuard, TrcIdentityOverRandomStates) {
    std::mt19937 rng(21);
    for (int t = 0; t < 100000; ++t) {
        const FugueState s = random_state(rng);
        const auto m = static_cast<MessageWord>(rng());
        const auto r = trc_check(s, m);
        ASSERT_FALSE(r.raised);
        ASSERT_EQ(sigma(r.post_state), sigma(s) ^ s[24]);
    }
}

TEST(FugueGuard, SuperMixParityOverRandomInputs) {
    std::mt19937 rng(22);
    for (int t = 0; t < 100000; ++t) {
        Bytes16 in{};
        for (auto& b : in) b = static_cast<GfByte>(rng());
        const GfByte d = in[0] ^ in[5] ^ in[10] ^ in[15];
        ASSERT_EQ(byte_fold(super_mix(in)), gf256::mul(3, d));
        ASSERT_TRUE(supermix_check(in, super_mix(in)));
    }
}

TEST(FugueGuard, ColumnSumsPattern) {
    const Bytes16 sums = column_sums(kSuperMix);
    for (std::size_t c = 0; c < 16; ++c) EXPECT_EQ(sums[c], (c == 0 || c == 5 || c == 10 || c == 15) ? 3 : 0) << c;
}

TEST(FugueGuard, PerturbedMatrixBreaksColumnSums) {
    Matrix16 n = kSuperMix;
    n[3][7] ^= 0x02;
    EXPECT_NE(column_sums(n), column_sums(kSuperMix));
}

TEST(FugueGuard, SuperMixCheckCatchesSingleByteCorruption) {
    Bytes16 in{};
    for (std::size_t i = 0; i < 16; ++i) in[i] = static_cast<GfByte>(i * 13 + 5);
    for (std::size_t i = 0; i < 16; ++i)
        for (unsigned bit = 0; bit < 8; ++bit) {
            Bytes16 out = super_mix(in);
            out[i] ^= static_cast<GfByte>(1u << bit);
            EXPECT_FALSE(supermix_check(in, out));
        }
}

TEST(FugueGuard, GuardedRoundMatchesPlainAndStaysClear) {
    std::mt19937 rng(23);
    for (int t = 0; t < 1000; ++t) {
        const FugueState s = random_state(rng);
        const auto m = static_cast<MessageWord>(rng());
        const auto g = guarded_round(s, m);
        EXPECT_EQ(g.state, round(s, m));
        EXPECT_FALSE(g.report.detected());
        EXPECT_EQ(g.report.evaluated(), 4u);  // TRC, sigma, two Super-Mix
    }
}

TEST(FugueGuard, GuardedHashMatchesPlain) {
    std::vector<GfByte> msg(77);
    for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = static_cast<GfByte>(i ^ 0x5A);
    const auto g = guarded_fugue_hash(msg);
    EXPECT_EQ(g.digest, fugue_hash(msg));
    EXPECT_FALSE(g.report.detected());
    // 20 message words + 2 length words, then 10 + 2*13 + 1 finalization checks
    // and one Super-Mix check per SMIX.
    EXPECT_EQ(g.report.evaluated(CheckKind::fugue_trc), 22u);
    EXPECT_EQ(g.report.evaluated(CheckKind::fugue_final_sigma), 37u);
    EXPECT_EQ(g.report.evaluated(CheckKind::fugue_super_mix), 2u * 22 + 10 + 26);
}

TEST(FugueGuard, CorruptedCmixRaisesTrc) {
    std::mt19937 rng(24);
    const FugueState s = random_state(rng);
    XorHook hook{Stage::fugue_cmix, 0, 0, 17, 0x00010000u};
    const auto g = guarded_round(s, 0x12345678u, hook);
    EXPECT_TRUE(g.report.raised(CheckKind::fugue_trc));
}

TEST(FugueGuard, CorruptedSuperMixRaisesParity) {
    std::mt19937 rng(25);
    const FugueState s = random_state(rng);
    XorHook hook{Stage::fugue_super_mix, 0, 1, 2, 0x00000080u};
    const auto g = guarded_round(s, 1u, hook);
    EXPECT_TRUE(g.report.raised(CheckKind::fugue_super_mix));
}

TEST(FugueGuard, CorruptedFinalizationRaisesFinalSigma) {
    const std::vector<GfByte> msg{1, 2, 3, 4};
    XorHook hook{Stage::fugue_ror15, static_cast<std::uint16_t>(3 + 10 + 4), 0, 20, 1u};
    const auto g = guarded_fugue_hash_bits(msg, 32, hook);
    EXPECT_TRUE(g.report.raised(CheckKind::fugue_final_sigma));
}

#include "hashguard/selftest.hpp"

TEST(Selftest, PristineBuildPassesEverySuite) {
    SelftestOptions o;
    o.random_trials = 5000;
    o.compressions = 20;
    for (const auto& s : run_selftest(o)) EXPECT_TRUE(s.passed()) << s.name;
}

TEST(Selftest, PerturbedSuperMixEntryFailsColumnSumSuites) {
    SelftestOptions o;
    o.random_trials = 2000;
    o.matrix[9][1] = 6;  // was 7
    EXPECT_FALSE(selftest::supermix_column_sums(o).passed());
    EXPECT_FALSE(selftest::supermix_parity(o).passed());
}
