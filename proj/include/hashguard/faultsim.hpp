#pragma once

// Stuck-at fault injection over the guarded ECHO-256 and Fugue-256 pipelines.
//
// A fault forces selected bits of one transformation-boundary element to a
// fixed level. Transient faults hit one evaluation (an exact Site); permanent
// faults hit every evaluation of the same stage, step and word across all
// rounds and blocks of the message.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hashguard/echo_guard.hpp"
#include "hashguard/fugue_guard.hpp"
#include "hashguard/lfsr.hpp"
#include "hashguard/signals.hpp"

namespace hashguard {

using Digest256 = std::array<std::uint8_t, 32>;

enum class FaultModel : std::uint8_t { single, multiple };
enum class Persistence : std::uint8_t { transient, permanent };

constexpr std::string_view to_string(FaultModel m) noexcept { return m == FaultModel::single ? "single" : "multiple"; }
constexpr std::string_view to_string(Persistence p) noexcept {
    return p == Persistence::transient ? "transient" : "permanent";
}

/// Up to 128 bits; bit i lives in word i / 32, position i % 32. For a
/// 128-bit ECHO word, bit i is bit (i % 8) of byte (i / 8).
using BitMask = std::array<std::uint32_t, 4>;

struct StuckBit {
    unsigned bit = 0;
    bool value = false;
};

struct FaultSpec {
    Algorithm algorithm = Algorithm::echo256;
    Site target{};
    BitMask mask{};   // forced bits
    BitMask level{};  // stuck level of each forced bit
    Persistence persistence = Persistence::transient;
    /// When set, the fault sits on this comparator's output instead of a
    /// data signal; level[0] bit 0 is the forced verdict.
    std::optional<CheckId> comparator;

    unsigned multiplicity() const noexcept {
        if (comparator) return 1;
        unsigned n = 0;
        for (auto w : mask) n += static_cast<unsigned>(std::popcount(w));
        return n;
    }

    std::vector<StuckBit> bits() const {
        std::vector<StuckBit> out;
        for (unsigned i = 0; i < 128; ++i)
            if ((mask[i / 32] >> (i % 32)) & 1u) out.push_back({i, ((level[i / 32] >> (i % 32)) & 1u) != 0});
        return out;
    }

    static FaultSpec stuck_at(Algorithm algorithm, const Site& target, std::span<const StuckBit> bits,
                              Persistence persistence = Persistence::transient) {
        FaultSpec f;
        f.algorithm = algorithm;
        f.target = target;
        f.persistence = persistence;
        for (const auto& b : bits) {
            if (b.bit >= 128) throw std::invalid_argument("fault: bit index out of range");
            f.mask[b.bit / 32] |= 1u << (b.bit % 32);
            if (b.value) f.level[b.bit / 32] |= 1u << (b.bit % 32);
        }
        return f;
    }

    static FaultSpec on_comparator(Algorithm algorithm, const CheckId& id, bool forced,
                                   Persistence persistence = Persistence::transient) {
        FaultSpec f;
        f.algorithm = algorithm;
        f.comparator = id;
        f.level[0] = forced ? 1u : 0u;
        f.persistence = persistence;
        return f;
    }
};

constexpr Algorithm algorithm_of(Stage s) noexcept {
    return static_cast<std::uint8_t>(s) <= static_cast<std::uint8_t>(Stage::echo_big_final) ? Algorithm::echo256
                                                                                              : Algorithm::fugue256;
}

constexpr Algorithm algorithm_of(CheckKind k) noexcept {
    return static_cast<std::uint8_t>(k) <= static_cast<std::uint8_t>(CheckKind::echo_big_final) ? Algorithm::echo256
                                                                                                  : Algorithm::fugue256;
}

// ---------------------------------------------------------------------------
// Injection points

/// Repetition units of a run: compressions for ECHO, message rounds for Fugue.
inline std::size_t run_units(Algorithm alg, std::uint64_t bit_length) noexcept {
    if (alg == Algorithm::echo256) {
        const std::uint64_t tail = bit_length % echo::kBlockBits;
        const std::uint64_t extra = echo::kBlockBits - tail < echo::kTrailerBits + 1 ? 2 : 1;
        return static_cast<std::size_t>(bit_length / echo::kBlockBits + extra);
    }
    const std::uint64_t bytes = (bit_length + 7) / 8;
    return static_cast<std::size_t>((bytes + 3) / 4 + 2);
}

namespace detail {

inline Site make_site(Stage stage, std::uint32_t block, int round, int step, std::size_t word) {
    return Site{stage, block, static_cast<std::uint16_t>(round), static_cast<std::uint8_t>(step),
                static_cast<std::uint16_t>(word)};
}

inline void push_words(std::vector<Site>& out, Stage stage, int round, int step, std::size_t count, bool checked_only) {
    if (checked_only && !is_checked(stage)) return;
    for (std::size_t w = 0; w < count; ++w) out.push_back(make_site(stage, 0, round, step, w));
}

/// Signals of one compression (block 0), in pipeline order.
inline std::vector<Site> echo_unit_sites(bool checked_only) {
    std::vector<Site> out;
    for (int round = 0; round < echo::kBigRounds; ++round) {
        for (std::size_t n = 0; n < 16; ++n)
            for (int step = 0; step < 2; ++step)
                for (Stage st : {Stage::echo_sub_bytes, Stage::echo_shift_rows, Stage::echo_mix_columns,
                                 Stage::echo_add_round_key})
                    if (!checked_only || is_checked(st)) out.push_back(make_site(st, 0, round, step, n));
        push_words(out, Stage::echo_big_shift_rows, round, 0, 16, checked_only);
        push_words(out, Stage::echo_big_mix_columns, round, 0, 16, checked_only);
    }
    push_words(out, Stage::echo_big_final, echo::kBigRounds - 1, 0, 4, checked_only);
    return out;
}

inline void push_smix(std::vector<Site>& out, int round, int step, bool checked_only) {
    push_words(out, Stage::fugue_sbox, round, step, 4, checked_only);
    push_words(out, Stage::fugue_super_mix, round, step, 4, checked_only);
}

/// Signals of one message round (round 0).
inline std::vector<Site> fugue_round_sites(bool checked_only) {
    std::vector<Site> out;
    push_words(out, Stage::fugue_tix, 0, 0, fugue::kStateWords, checked_only);
    for (int step = 0; step < 2; ++step) {
        push_words(out, Stage::fugue_ror3, 0, step, fugue::kStateWords, checked_only);
        push_words(out, Stage::fugue_cmix, 0, step, fugue::kStateWords, checked_only);
        push_smix(out, 0, step, checked_only);
    }
    return out;
}

/// Signals of the finalization, with rounds counted from 0.
inline std::vector<Site> fugue_final_sites(bool checked_only) {
    std::vector<Site> out;
    int round = 0;
    for (int i = 0; i < fugue::kFinalMixIterations; ++i, ++round) {
        push_words(out, Stage::fugue_ror3, round, 0, fugue::kStateWords, checked_only);
        push_words(out, Stage::fugue_cmix, round, 0, fugue::kStateWords, checked_only);
        push_smix(out, round, 0, checked_only);
    }
    for (int i = 0; i < fugue::kFinalFoldIterations; ++i, ++round) {
        push_words(out, Stage::fugue_fold, round, 0, fugue::kStateWords, checked_only);
        push_words(out, Stage::fugue_ror15, round, 0, fugue::kStateWords, checked_only);
        push_smix(out, round, 0, checked_only);
        push_words(out, Stage::fugue_fold, round, 1, fugue::kStateWords, checked_only);
        push_words(out, Stage::fugue_ror14, round, 1, fugue::kStateWords, checked_only);
        push_smix(out, round, 1, checked_only);
    }
    push_words(out, Stage::fugue_fold, round, 0, fugue::kStateWords, checked_only);
    return out;
}

inline const std::vector<Site>& cached_unit_sites(Algorithm alg, bool checked_only) {
    static const std::array<std::vector<Site>, 4> lists{echo_unit_sites(false), echo_unit_sites(true),
                                                        fugue_round_sites(false), fugue_round_sites(true)};
    return lists[(alg == Algorithm::fugue256 ? 2 : 0) + (checked_only ? 1 : 0)];
}

inline const std::vector<Site>& cached_final_sites(bool checked_only) {
    static const std::array<std::vector<Site>, 2> lists{fugue_final_sites(false), fugue_final_sites(true)};
    return lists[checked_only ? 1 : 0];
}

}  // namespace detail

/// Index space over every injection point of one run, without materializing
/// the whole list.
class TargetSpace {
  public:
    /// `with_finalization` adds Fugue's output-stage signals after the message rounds.
    TargetSpace(Algorithm alg, std::size_t units, bool checked_only = true, bool with_finalization = true)
        : alg_(alg),
          units_(units),
          unit_(&detail::cached_unit_sites(alg, checked_only)),
          final_(alg == Algorithm::fugue256 && with_finalization ? &detail::cached_final_sites(checked_only)
                                                                 : nullptr) {
        if (units == 0) throw std::invalid_argument("targets: a run has at least one unit");
    }

    std::size_t size() const noexcept { return units_ * unit_->size() + (final_ ? final_->size() : 0); }

    Site at(std::size_t index) const {
        if (index >= size()) throw std::out_of_range("targets: index out of range");
        const std::size_t per_unit = unit_->size();
        if (index < units_ * per_unit) {
            Site s = (*unit_)[index % per_unit];
            const std::size_t unit = index / per_unit;
            if (alg_ == Algorithm::echo256)
                s.block = static_cast<std::uint32_t>(unit);
            else
                s.round = static_cast<std::uint16_t>(unit);
            return s;
        }
        Site s = (*final_)[index - units_ * per_unit];
        s.round = static_cast<std::uint16_t>(s.round + units_);
        return s;
    }

    bool contains(const Site& site) const {
        if (algorithm_of(site.stage) != alg_) return false;
        Site probe = site;
        if (alg_ == Algorithm::echo256) {
            if (site.block >= units_) return false;
            probe.block = 0;
            return std::find(unit_->begin(), unit_->end(), probe) != unit_->end();
        }
        if (site.block != 0) return false;
        if (site.round < units_) {
            probe.round = 0;
            return std::find(unit_->begin(), unit_->end(), probe) != unit_->end();
        }
        if (!final_) return false;
        probe.round = static_cast<std::uint16_t>(site.round - units_);
        return std::find(final_->begin(), final_->end(), probe) != final_->end();
    }

    Algorithm algorithm() const noexcept { return alg_; }
    std::size_t units() const noexcept { return units_; }

  private:
    Algorithm alg_;
    std::size_t units_;
    const std::vector<Site>* unit_;
    const std::vector<Site>* final_;
};

/// Every transformation-boundary signal of a run over `units` units, checked
/// and unchecked, in pipeline order.
inline std::vector<Site> enumerate_targets(Algorithm alg, std::size_t units = 1) {
    const TargetSpace space(alg, units, false);
    std::vector<Site> out;
    out.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
    return out;
}

// ---------------------------------------------------------------------------
// Injection

/// Hook that forces the fault's bits whenever the pipeline emits its target.
class FaultInjector {
  public:
    explicit FaultInjector(const FaultSpec& fault) : fault_(fault) {}

    template <class Element>
    void signal(const Site& site, std::span<Element> elements) {
        if (fault_.comparator || !matches(site)) return;
        if (fault_.target.word < site.word) return;
        const std::size_t i = fault_.target.word - site.word;
        if (i >= elements.size()) return;
        ++evaluations_;
        if (force(elements[i])) activated_ = true;
    }

    bool verdict(const CheckId& id, bool raised) {
        if (!fault_.comparator || !matches(id)) return raised;
        ++evaluations_;
        const bool forced = (fault_.level[0] & 1u) != 0;
        if (forced != raised) activated_ = true;
        return forced;
    }

    bool activated() const noexcept { return activated_; }
    /// Number of times the target was evaluated during the run.
    unsigned evaluations() const noexcept { return evaluations_; }

  private:
    bool matches(const Site& s) const noexcept {
        const Site& t = fault_.target;
        if (s.stage != t.stage || s.step != t.step) return false;
        return fault_.persistence == Persistence::permanent || (s.block == t.block && s.round == t.round);
    }

    bool matches(const CheckId& id) const noexcept {
        const CheckId& t = *fault_.comparator;
        if (id.kind != t.kind || id.step != t.step || id.index != t.index) return false;
        return fault_.persistence == Persistence::permanent || (id.block == t.block && id.round == t.round);
    }

    bool force(std::uint32_t& w) const noexcept {
        const std::uint32_t next = (w & ~fault_.mask[0]) | (fault_.level[0] & fault_.mask[0]);
        const bool changed = next != w;
        w = next;
        return changed;
    }

    bool force(echo::EchoWord& w) const noexcept {
        bool changed = false;
        for (std::size_t b = 0; b < 16; ++b) {
            const auto m = static_cast<std::uint8_t>(fault_.mask[b / 4] >> (8 * (b % 4)));
            const auto v = static_cast<std::uint8_t>(fault_.level[b / 4] >> (8 * (b % 4)));
            const auto next = static_cast<std::uint8_t>((w.bytes[b] & ~m) | (v & m));
            changed |= next != w.bytes[b];
            w.bytes[b] = next;
        }
        return changed;
    }

    FaultSpec fault_;
    bool activated_ = false;
    unsigned evaluations_ = 0;
};

/// Message under test. The salt is used by ECHO only.
struct Message {
    std::vector<std::uint8_t> bytes;
    std::uint64_t bit_length = 0;
    echo::Salt salt{};

    static Message from_bytes(std::span<const std::uint8_t> data) {
        return Message{{data.begin(), data.end()}, static_cast<std::uint64_t>(data.size()) * 8, {}};
    }
};

inline Digest256 reference_digest(Algorithm alg, const Message& msg) {
    return alg == Algorithm::echo256 ? echo::echo_hash_bits(msg.bytes, msg.bit_length, msg.salt)
                                     : fugue::fugue_hash_bits(msg.bytes, msg.bit_length);
}

template <class Hook>
std::pair<Digest256, SignatureReport> guarded_run(Algorithm alg, const Message& msg, Hook& hook,
                                                  const echo::GuardOptions& opts = {}) {
    if (alg == Algorithm::echo256) {
        auto r = echo::guarded_echo_hash_bits(msg.bytes, msg.bit_length, msg.salt, opts, hook);
        return {r.digest, std::move(r.report)};
    }
    auto r = fugue::guarded_fugue_hash_bits(msg.bytes, msg.bit_length, hook);
    return {r.digest, std::move(r.report)};
}

struct InjectionOutcome {
    Digest256 digest{};
    SignatureReport report;
    bool activated = false;
    unsigned evaluations = 0;
};

/// Throws std::invalid_argument when the fault does not name a valid point of
/// this run or its bits exceed the element width.
inline void validate(const FaultSpec& fault, const Message& msg) {
    if (fault.comparator) {
        if (algorithm_of(fault.comparator->kind) != fault.algorithm)
            throw std::invalid_argument("fault: comparator belongs to the other algorithm");
        return;
    }
    if (fault.multiplicity() == 0) throw std::invalid_argument("fault: no bits selected");
    const unsigned width = element_bits(fault.target.stage);
    for (unsigned i = width; i < 128; ++i)
        if ((fault.mask[i / 32] >> (i % 32)) & 1u) throw std::invalid_argument("fault: bit index exceeds element width");
    const TargetSpace space(fault.algorithm, run_units(fault.algorithm, msg.bit_length), false);
    if (!space.contains(fault.target)) throw std::invalid_argument("fault: target is not a signal of this run");
}

inline InjectionOutcome inject(const Message& msg, const FaultSpec& fault, const echo::GuardOptions& opts = {}) {
    validate(fault, msg);
    FaultInjector injector(fault);
    auto [digest, report] = guarded_run(fault.algorithm, msg, injector, opts);
    return {digest, std::move(report), injector.activated(), injector.evaluations()};
}

/// Records every check evaluated during a run.
struct CheckRecorder {
    std::vector<CheckId> ids;
    template <class Element>
    void signal(const Site&, std::span<Element>) noexcept {}
    bool verdict(const CheckId& id, bool raised) {
        ids.push_back(id);
        return raised;
    }
};

// ---------------------------------------------------------------------------
// Campaigns

struct CampaignConfig {
    Algorithm algorithm = Algorithm::fugue256;
    FaultModel model = FaultModel::multiple;
    Persistence persistence = Persistence::transient;
    std::uint64_t count = 1000;
    std::uint32_t seed = 1;
    /// Random messages of 0..max_message_bytes bytes unless a fixed message is given.
    std::size_t max_message_bytes = 255;
    std::optional<std::vector<std::uint8_t>> fixed_message;
    bool include_unchecked = false;     // also target S-box outputs
    bool include_finalization = false;  // also target Fugue's output stage
    bool comparator_faults = false;     // also target check comparators
    unsigned threads = 1;               // 0 = hardware concurrency
    echo::GuardOptions echo_options{};
};

struct Counters {
    std::uint64_t injected = 0;
    std::uint64_t activated = 0;
    std::uint64_t effective = 0;
    std::uint64_t detected = 0;            // any flag raised
    std::uint64_t detected_effective = 0;  // flag raised and digest corrupted
    std::uint64_t missed = 0;              // digest corrupted, no flag
    std::uint64_t false_alarms = 0;        // flag raised, digest correct

    Counters& operator+=(const Counters& o) noexcept {
        injected += o.injected;
        activated += o.activated;
        effective += o.effective;
        detected += o.detected;
        detected_effective += o.detected_effective;
        missed += o.missed;
        false_alarms += o.false_alarms;
        return *this;
    }
    friend bool operator==(const Counters&, const Counters&) = default;

    std::optional<double> coverage() const noexcept {
        if (effective == 0) return std::nullopt;
        return static_cast<double>(detected_effective) / static_cast<double>(effective);
    }
    double false_alarm_ratio() const noexcept {
        return injected == 0 ? 0.0 : static_cast<double>(false_alarms) / static_cast<double>(injected);
    }
    std::optional<double> false_alarm_ratio_activated() const noexcept {
        if (activated == 0) return std::nullopt;
        return static_cast<double>(false_alarms) / static_cast<double>(activated);
    }
};

struct CheckTally {
    std::uint64_t raised = 0;            // trials in which this check raised
    std::uint64_t raised_effective = 0;  // ... and the digest was corrupted
    std::uint64_t sole_detector = 0;     // effective faults caught by this check alone

    friend bool operator==(const CheckTally&, const CheckTally&) = default;
};

struct CampaignReport {
    CampaignConfig config;
    Counters totals;
    std::map<std::string, Counters> by_stage;  // stage name, or "comparator"
    std::array<CheckTally, kCheckKindCount> by_check{};

    friend bool operator==(const CampaignReport& a, const CampaignReport& b) {
        return a.totals == b.totals && a.by_stage == b.by_stage && a.by_check == b.by_check;
    }
};

struct TrialResult {
    std::string_view bucket;
    bool activated = false;
    bool effective = false;
    bool detected = false;
    std::uint16_t raised_kinds = 0;  // bit k: CheckKind k raised
};

namespace detail {

inline Message random_message(Lfsr& rng, std::size_t max_bytes) {
    Message m;
    const std::size_t len = rng.below(static_cast<std::uint32_t>(max_bytes + 1));
    m.bytes.resize(len);
    for (std::size_t i = 0; i < len; i += 4) {
        const std::uint32_t w = rng.next();
        for (std::size_t k = 0; k < 4 && i + k < len; ++k) m.bytes[i + k] = static_cast<std::uint8_t>(w >> (8 * k));
    }
    m.bit_length = static_cast<std::uint64_t>(len) * 8;
    return m;
}

inline void draw_bits(Lfsr& rng, FaultModel model, unsigned width, FaultSpec& f) {
    const unsigned chunks = (width + 31) / 32;
    if (model == FaultModel::single) {
        const unsigned bit = rng.below(width);
        f.mask[bit / 32] = 1u << (bit % 32);
    } else {
        // Each bit of the element is faulted with probability 1/2; at least two.
        for (;;) {
            f.mask = {};
            for (unsigned c = 0; c < chunks; ++c) f.mask[c] = rng.next();
            if (width < 32) f.mask[0] &= (1u << width) - 1u;
            if (f.multiplicity() >= 2) break;
        }
    }
    for (unsigned c = 0; c < chunks; ++c) f.level[c] = rng.next() & f.mask[c];
}

inline TrialResult run_trial(const CampaignConfig& cfg, std::uint64_t index) {
    Lfsr rng(trial_seed(cfg.seed, index));
    const Message msg = cfg.fixed_message ? Message::from_bytes(*cfg.fixed_message)
                                          : random_message(rng, cfg.max_message_bytes);
    const Digest256 expected = reference_digest(cfg.algorithm, msg);

    const TargetSpace space(cfg.algorithm, run_units(cfg.algorithm, msg.bit_length), !cfg.include_unchecked,
                            cfg.include_finalization);
    FaultSpec fault;
    fault.algorithm = cfg.algorithm;
    fault.persistence = cfg.persistence;

    std::vector<CheckId> checks;
    if (cfg.comparator_faults) {
        CheckRecorder rec;
        guarded_run(cfg.algorithm, msg, rec, cfg.echo_options);
        checks = std::move(rec.ids);
    }
    const std::size_t pick = rng.below(static_cast<std::uint32_t>(space.size() + checks.size()));
    if (pick < space.size()) {
        fault.target = space.at(pick);
        draw_bits(rng, cfg.model, element_bits(fault.target.stage), fault);
    } else {
        fault.comparator = checks[pick - space.size()];
        fault.level[0] = rng.next() & 1u;
    }

    FaultInjector injector(fault);
    const auto [digest, report] = guarded_run(cfg.algorithm, msg, injector, cfg.echo_options);

    TrialResult t;
    t.bucket = fault.comparator ? std::string_view("comparator") : to_string(fault.target.stage);
    t.activated = injector.activated();
    t.effective = digest != expected;
    t.detected = report.detected();
    for (const auto& id : report.raised()) t.raised_kinds |= static_cast<std::uint16_t>(1u << static_cast<unsigned>(id.kind));
    return t;
}

inline void tally(CampaignReport& rep, const TrialResult& t) {
    Counters c;
    c.injected = 1;
    c.activated = t.activated;
    c.effective = t.effective;
    c.detected = t.detected;
    c.detected_effective = t.detected && t.effective;
    c.missed = t.effective && !t.detected;
    c.false_alarms = t.detected && !t.effective;
    rep.totals += c;
    rep.by_stage[std::string(t.bucket)] += c;
    for (std::size_t k = 0; k < kCheckKindCount; ++k) {
        if (!((t.raised_kinds >> k) & 1u)) continue;
        auto& ct = rep.by_check[k];
        ++ct.raised;
        if (t.effective) {
            ++ct.raised_effective;
            if (t.raised_kinds == (1u << k)) ++ct.sole_detector;
        }
    }
}

}  // namespace detail

/// Runs `count` independent trials. Each trial draws its message, target,
/// bits and levels from its own LFSR stream, so the report does not depend
/// on the thread count.
inline CampaignReport run_campaign(const CampaignConfig& cfg) {
    if (cfg.count == 0) throw std::invalid_argument("campaign: count must be at least 1");
    if (!cfg.fixed_message && cfg.max_message_bytes > (1u << 24))
        throw std::invalid_argument("campaign: max_message_bytes too large");

    std::vector<TrialResult> trials(cfg.count);
    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.count));

    auto worker = [&](unsigned id) {
        for (std::uint64_t i = id; i < cfg.count; i += threads) trials[i] = detail::run_trial(cfg, i);
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }

    CampaignReport rep;
    rep.config = cfg;
    for (const auto& t : trials) detail::tally(rep, t);
    return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive single-bit sweep

struct SweepMiss {
    Site site;
    StuckBit bit;
};

struct SweepReport {
    std::uint64_t targets = 0;
    Counters totals;
    std::vector<SweepMiss> misses;  // effective but undetected
};

/// Every bit of every selected signal forced to 0 and to 1 as a transient
/// stuck-at. `select` picks which sites of the run to sweep.
template <class Select>
SweepReport single_bit_sweep(Algorithm alg, const Message& msg, Select select, const echo::GuardOptions& opts = {}) {
    SweepReport out;
    const Digest256 expected = reference_digest(alg, msg);
    const TargetSpace space(alg, run_units(alg, msg.bit_length), false);
    for (std::size_t i = 0; i < space.size(); ++i) {
        const Site site = space.at(i);
        if (!select(site)) continue;
        ++out.targets;
        const unsigned width = element_bits(site.stage);
        for (unsigned bit = 0; bit < width; ++bit)
            for (bool level : {false, true}) {
                const StuckBit sb{bit, level};
                const FaultSpec fault = FaultSpec::stuck_at(alg, site, std::span<const StuckBit>(&sb, 1));
                FaultInjector injector(fault);
                const auto [digest, report] = guarded_run(alg, msg, injector, opts);
                Counters c;
                c.injected = 1;
                c.activated = injector.activated();
                c.effective = digest != expected;
                c.detected = report.detected();
                c.detected_effective = c.detected && c.effective;
                c.missed = c.effective && !c.detected;
                c.false_alarms = c.detected && !c.effective;
                out.totals += c;
                if (c.missed) out.misses.push_back({site, sb});
            }
    }
    return out;
}

}  // namespace hashguard
