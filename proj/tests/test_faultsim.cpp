#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "hashguard/faultsim.hpp"
#include "hashguard/report.hpp"

using namespace hashguard;

namespace {

Message sample_message(std::size_t n, std::uint8_t salt0 = 0) {
    std::vector<std::uint8_t> bytes(n);
    for (std::size_t i = 0; i < n; ++i) bytes[i] = static_cast<std::uint8_t>(i * 31 + 7);
    Message m = Message::from_bytes(bytes);
    m.salt[0] = salt0;
    return m;
}

auto key(const Site& s) { return std::tuple(s.stage, s.block, s.round, s.step, s.word); }

// Level of `bit` in the fault-free run, read through an observing hook.
struct Probe {
    Site target;
    unsigned bit;
    int level = -1;
    template <class E>
    void signal(const Site& s, std::span<E> el) {
        if (s.stage != target.stage || s.block != target.block || s.round != target.round || s.step != target.step)
            return;
        if (target.word < s.word || static_cast<std::size_t>(target.word - s.word) >= el.size()) return;
        const auto& e = el[target.word - s.word];
        if constexpr (std::is_same_v<E, std::uint32_t>)
            level = static_cast<int>((e >> bit) & 1u);
        else
            level = (e.bytes[bit / 8] >> (bit % 8)) & 1;
    }
    bool verdict(const CheckId&, bool r) const { return r; }
};

int fault_free_level(Algorithm alg, const Message& m, const Site& site, unsigned bit) {
    Probe p{site, bit};
    guarded_run(alg, m, p);
    return p.level;
}

}  // namespace

TEST(Targets, FugueRoundHasSevenTransformationOutputsPlusSboxBoundaries) {
    const auto sites = enumerate_targets(Algorithm::fugue256, 1);
    std::set<std::tuple<Stage, int>> outputs;
    for (const auto& s : sites)
        if (s.round == 0) outputs.insert({s.stage, s.step});
    // TIX, ROR3, CMIX, Super-Mix, ROR3, CMIX, Super-Mix, and two S-box layers.
    EXPECT_EQ(outputs.size(), 9u);
    EXPECT_EQ(outputs.count({Stage::fugue_sbox, 0}) + outputs.count({Stage::fugue_sbox, 1}), 2u);
}

TEST(Targets, EchoCompressionHasEightBigMixColumnsOutputs) {
    const auto sites = enumerate_targets(Algorithm::echo256, 1);
    std::set<int> rounds;
    for (const auto& s : sites)
        if (s.stage == Stage::echo_big_mix_columns) rounds.insert(s.round);
    EXPECT_EQ(rounds.size(), 8u);
    EXPECT_EQ(sites.size(), 8u * 16 * 2 * 4 + 8 * 32 + 4);
    EXPECT_EQ(TargetSpace(Algorithm::echo256, 1, true).size(), 8u * 16 * 2 * 3 + 8 * 32 + 4);
}

TEST(Targets, IdentifiersAreUniqueAndStable) {
    for (auto alg : {Algorithm::echo256, Algorithm::fugue256}) {
        const auto a = enumerate_targets(alg, 3);
        const auto b = enumerate_targets(alg, 3);
        EXPECT_EQ(a, b);
        std::set<decltype(key(a[0]))> uniq;
        for (const auto& s : a) uniq.insert(key(s));
        EXPECT_EQ(uniq.size(), a.size());
        const TargetSpace space(alg, 3, false);
        for (std::size_t i = 0; i < a.size(); i += 97) EXPECT_TRUE(space.contains(a[i]));
    }
}

TEST(Targets, FinalizationCanBeExcluded) {
    const TargetSpace with(Algorithm::fugue256, 5, true, true), without(Algorithm::fugue256, 5, true, false);
    EXPECT_GT(with.size(), without.size());
    EXPECT_EQ(without.size(), 5u * 158);
    EXPECT_FALSE(without.contains(Site{Stage::fugue_fold, 0, 6, 0, 0}));
    EXPECT_TRUE(with.contains(Site{Stage::fugue_fold, 0, 15, 0, 0}));
}

TEST(Inject, StuckAtMatchingLevelIsNotActivated) {
    const Message m = sample_message(40);
    const Site site{Stage::fugue_cmix, 0, 2, 1, 9};
    for (unsigned bit : {0u, 13u, 31u}) {
        const int level = fault_free_level(Algorithm::fugue256, m, site, bit);
        ASSERT_GE(level, 0);
        const StuckBit sb{bit, level == 1};
        const auto out = inject(m, FaultSpec::stuck_at(Algorithm::fugue256, site, {&sb, 1}));
        EXPECT_FALSE(out.activated);
        EXPECT_FALSE(out.report.detected());
        EXPECT_EQ(out.digest, reference_digest(Algorithm::fugue256, m));
    }
}

TEST(Inject, ActivatedBigMixColumnsBitIsDetected) {
    const Message m = sample_message(100, 3);
    for (unsigned word : {0u, 7u, 15u})
        for (unsigned bit : {0u, 64u, 127u}) {
            const Site site{Stage::echo_big_mix_columns, 0, 4, 0, static_cast<std::uint16_t>(word)};
            const int level = fault_free_level(Algorithm::echo256, m, site, bit);
            const StuckBit sb{bit, level == 0};
            const auto out = inject(m, FaultSpec::stuck_at(Algorithm::echo256, site, {&sb, 1}));
            EXPECT_TRUE(out.activated);
            EXPECT_TRUE(out.report.raised(CheckKind::echo_big_mix_columns));
        }
}

TEST(Inject, PermanentActivatesAtLeastAsOftenAsTransient) {
    const Message m = sample_message(300);  // two compressions
    const Site site{Stage::echo_add_round_key, 0, 3, 1, 5};
    const StuckBit bits[]{{3, true}, {77, false}};
    const auto t = inject(m, FaultSpec::stuck_at(Algorithm::echo256, site, bits, Persistence::transient));
    const auto p = inject(m, FaultSpec::stuck_at(Algorithm::echo256, site, bits, Persistence::permanent));
    EXPECT_EQ(t.evaluations, 1u);
    EXPECT_EQ(p.evaluations, 2u * 8);
    EXPECT_GE(p.activated, t.activated);
}

TEST(Inject, PermanentEqualsTransientWhenEvaluatedOnce) {
    const Message m = sample_message(10);  // one compression
    const Site site{Stage::echo_big_final, 0, 7, 0, 1};
    for (unsigned bit : {0u, 50u, 100u}) {
        const StuckBit bits[]{{bit, true}, {bit + 1, false}, {bit + 9, true}};
        const auto t = inject(m, FaultSpec::stuck_at(Algorithm::echo256, site, bits, Persistence::transient));
        const auto p = inject(m, FaultSpec::stuck_at(Algorithm::echo256, site, bits, Persistence::permanent));
        EXPECT_EQ(p.evaluations, 1u);
        EXPECT_EQ(t.report.detected(), p.report.detected());
        EXPECT_EQ(t.digest, p.digest);
    }
}

TEST(Inject, RejectsInvalidTargets) {
    const Message m = sample_message(10);
    const StuckBit sb{0, true};
    EXPECT_THROW(inject(m, FaultSpec::stuck_at(Algorithm::echo256, Site{Stage::fugue_tix, 0, 0, 0, 0}, {&sb, 1})),
                 std::invalid_argument);
    EXPECT_THROW(inject(m, FaultSpec::stuck_at(Algorithm::echo256, Site{Stage::echo_big_final, 1, 7, 0, 0}, {&sb, 1})),
                 std::invalid_argument);
    EXPECT_THROW(inject(m, FaultSpec::stuck_at(Algorithm::echo256, Site{Stage::echo_big_final, 0, 7, 0, 4}, {&sb, 1})),
                 std::invalid_argument);
    const StuckBit wide{40, true};
    EXPECT_THROW(inject(m, FaultSpec::stuck_at(Algorithm::fugue256, Site{Stage::fugue_tix, 0, 0, 0, 0}, {&wide, 1})),
                 std::invalid_argument);
    EXPECT_THROW(inject(m, FaultSpec{}), std::invalid_argument);  // no bits
}

TEST(Inject, ComparatorFaultForcesVerdict) {
    const Message m = sample_message(10);
    const CheckId id{CheckKind::fugue_super_mix, 0, 2, 1, 0};
    const auto out = inject(m, FaultSpec::on_comparator(Algorithm::fugue256, id, true));
    EXPECT_TRUE(out.activated);
    EXPECT_TRUE(out.report.detected());
    EXPECT_EQ(out.digest, reference_digest(Algorithm::fugue256, m));
}

TEST(Campaign, RejectsZeroCount) {
    CampaignConfig c;
    c.count = 0;
    EXPECT_THROW(run_campaign(c), std::invalid_argument);
}

TEST(Campaign, SingleTrialReport) {
    CampaignConfig c;
    c.count = 1;
    const auto r = run_campaign(c);
    EXPECT_EQ(r.totals.injected, 1u);
    EXPECT_LE(r.totals.activated, 1u);
}

TEST(Campaign, CounterInvariants) {
    for (auto alg : {Algorithm::echo256, Algorithm::fugue256})
        for (auto model : {FaultModel::single, FaultModel::multiple}) {
            CampaignConfig c;
            c.algorithm = alg;
            c.model = model;
            c.count = 400;
            c.seed = 77;
            c.comparator_faults = true;
            c.include_unchecked = true;
            const auto r = run_campaign(c);
            const auto& t = r.totals;
            EXPECT_EQ(t.injected, 400u);
            EXPECT_GE(t.injected, t.activated);
            EXPECT_GE(t.activated, t.effective);
            EXPECT_EQ(t.detected, t.detected_effective + t.false_alarms);
            EXPECT_EQ(t.effective, t.detected_effective + t.missed);
            if (auto cov = t.coverage()) {
                EXPECT_GE(*cov, 0.0);
                EXPECT_LE(*cov, 1.0);
            }
            EXPECT_LE(t.false_alarm_ratio(), 1.0);
            Counters sum;
            for (const auto& [_, v] : r.by_stage) sum += v;
            EXPECT_EQ(sum, t);
        }
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
    CampaignConfig c;
    c.algorithm = Algorithm::echo256;
    c.count = 300;
    c.seed = 4242;
    c.threads = 1;
    const auto a = run_campaign(c);
    c.threads = 3;
    const auto b = run_campaign(c);
    EXPECT_EQ(a, b);
    EXPECT_EQ(render(a), render(b));
    c.seed = 4243;
    EXPECT_NE(render(run_campaign(c)), render(a));
}

TEST(Inject, UnactivatedFaultsLeaveEveryDigestUntouched) {
    for (auto alg : {Algorithm::echo256, Algorithm::fugue256}) {
        const Message m = sample_message(20);
        const Digest256 expected = reference_digest(alg, m);
        const TargetSpace space(alg, run_units(alg, m.bit_length), false);
        std::uint64_t effective = 0, flagged = 0, activated = 0;
        for (std::size_t i = 0; i < space.size(); i += 41) {
            const Site site = space.at(i);
            const unsigned bit = static_cast<unsigned>(i % element_bits(site.stage));
            const StuckBit sb{bit, fault_free_level(alg, m, site, bit) == 1};
            const auto out = inject(m, FaultSpec::stuck_at(alg, site, {&sb, 1}));
            activated += out.activated;
            effective += out.digest != expected;
            flagged += out.report.detected();
        }
        EXPECT_EQ(activated, 0u);
        EXPECT_EQ(effective, 0u);
        EXPECT_EQ(flagged, 0u);
    }
}

TEST(Campaign, FixedMessageAndEvenWeightMisses) {
    // Multiple-bit faults on MixColumns outputs fold to 8-bit flags; some alias.
    CampaignConfig c;
    c.algorithm = Algorithm::echo256;
    c.count = 3000;
    c.seed = 5;
    c.fixed_message = std::vector<std::uint8_t>(32, 0x11);
    c.echo_options.flag_bits = 1;
    const auto r = run_campaign(c);
    EXPECT_GT(r.totals.missed, 0u);
    EXPECT_LT(*r.totals.coverage(), 1.0);
}

TEST(Campaign, ReportCarriesSchemaAndBothRatios) {
    CampaignConfig c;
    c.count = 50;
    const auto j = to_json(run_campaign(c));
    EXPECT_EQ(j["schema_version"], "hashguard.campaign/1");
    EXPECT_TRUE(j["totals"].contains("false_alarm_ratio"));
    EXPECT_TRUE(j["totals"].contains("false_alarm_ratio_activated"));
    EXPECT_TRUE(j["totals"].contains("coverage"));
    EXPECT_TRUE(j["per_check"].contains("fugue.trc"));
    EXPECT_FALSE(j["per_check"].contains("echo.mc_ark"));
    EXPECT_EQ(j["config"]["count"], 50);
}

TEST(Sweep, SingleBitFugueRoundIsFullyDetected) {
    const Message m = sample_message(12);
    const auto r = single_bit_sweep(Algorithm::fugue256, m,
                                    [](const Site& s) { return is_checked(s.stage) && s.round == 1; });
    EXPECT_EQ(r.targets, 158u);
    EXPECT_EQ(r.totals.activated, 158u * 32);
    EXPECT_TRUE(r.misses.empty());
    EXPECT_EQ(r.totals.detected_effective, r.totals.effective);
}
