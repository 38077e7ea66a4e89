#pragma once

// Vocabulary shared by the guarded pipelines and the fault simulator:
// where a signal lives (Site), which check raised (CheckId), and the
// per-computation SignatureReport.

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace hashguard {

enum class Algorithm : std::uint8_t { echo256, fugue256 };

constexpr std::string_view to_string(Algorithm a) noexcept {
    return a == Algorithm::echo256 ? "echo256" : "fugue256";
}

/// Transformation whose output is the observable signal.
enum class Stage : std::uint8_t {
    // ECHO, per 128-bit word inside BIG.SubWords
    echo_sub_bytes,
    echo_shift_rows,
    echo_mix_columns,
    echo_add_round_key,
    // ECHO, whole-state transformations
    echo_big_shift_rows,
    echo_big_mix_columns,
    echo_big_final,
    // Fugue
    fugue_tix,
    fugue_ror3,
    fugue_cmix,
    fugue_sbox,
    fugue_super_mix,
    fugue_fold,
    fugue_ror15,
    fugue_ror14,
};

inline constexpr std::size_t kStageCount = 15;

constexpr std::string_view to_string(Stage s) noexcept {
    constexpr std::array<std::string_view, kStageCount> names{
        "echo.sub_bytes",     "echo.shift_rows",      "echo.mix_columns", "echo.add_round_key",
        "echo.big_shift_rows", "echo.big_mix_columns", "echo.big_final",   "fugue.tix",
        "fugue.ror3",         "fugue.cmix",           "fugue.sbox",       "fugue.super_mix",
        "fugue.fold",         "fugue.ror15",          "fugue.ror14"};
    return names[static_cast<std::size_t>(s)];
}

/// Signals that feed no predicted-signature check. S-box outputs belong here:
/// S-box-internal detection is outside this library.
constexpr bool is_checked(Stage s) noexcept {
    return s != Stage::echo_sub_bytes && s != Stage::fugue_sbox;
}

/// Bit width of one addressable element at a stage.
constexpr unsigned element_bits(Stage s) noexcept {
    return static_cast<std::uint8_t>(s) <= static_cast<std::uint8_t>(Stage::echo_big_final) ? 128u : 32u;
}

/// Location of one evaluation of a signal.
///
/// ECHO: block = compression index, round = BIG.Round (0..7), step = AES
/// round inside BIG.SubWords (0..1), word = 0..15 (BIG.Final: 0..3).
/// Fugue: block = 0, round = global round counter (message rounds first,
/// then finalization iterations), step = sub-round, word = state word.
struct Site {
    Stage stage{};
    std::uint32_t block = 0;
    std::uint16_t round = 0;
    std::uint8_t step = 0;
    std::uint16_t word = 0;

    friend constexpr bool operator==(const Site&, const Site&) = default;
};

enum class CheckKind : std::uint8_t {
    echo_shift_rows,      // ShiftRows re-wiring check per AES round
    echo_mc_ark,          // column flag over MixColumns + AddRoundKey
    echo_big_shift_rows,  // BIG.ShiftRows permutation check
    echo_big_mix_columns, // per-sub-matrix column flags
    echo_big_final,       // BIG.Final predicted parity
    fugue_trc,            // TIX, ROR3, CMIX word-wide signature
    fugue_sigma,          // ROR3, CMIX of the second sub-round
    fugue_final_sigma,    // sigma preservation during finalization
    fugue_super_mix,      // Super-Mix predicted byte parity
};

inline constexpr std::size_t kCheckKindCount = 9;

constexpr std::string_view to_string(CheckKind k) noexcept {
    constexpr std::array<std::string_view, kCheckKindCount> names{
        "echo.shift_rows",      "echo.mc_ark",       "echo.big_shift_rows",
        "echo.big_mix_columns", "echo.big_final",    "fugue.trc",
        "fugue.sigma",          "fugue.final_sigma", "fugue.super_mix"};
    return names[static_cast<std::size_t>(k)];
}

struct CheckId {
    CheckKind kind{};
    std::uint32_t block = 0;
    std::uint16_t round = 0;
    std::uint8_t step = 0;
    std::uint16_t index = 0;  // word, sub-matrix j, or Super-Mix instance

    friend constexpr bool operator==(const CheckId&, const CheckId&) = default;
};

/// Flags raised during one guarded computation. Any raised flag marks the
/// whole computation as detected-faulty.
class SignatureReport {
  public:
    void record(const CheckId& id, bool raised) {
        ++evaluated_;
        ++evaluated_by_kind_[static_cast<std::size_t>(id.kind)];
        if (raised) raised_.push_back(id);
    }

    void merge(const SignatureReport& other) {
        evaluated_ += other.evaluated_;
        for (std::size_t k = 0; k < kCheckKindCount; ++k) evaluated_by_kind_[k] += other.evaluated_by_kind_[k];
        raised_.insert(raised_.end(), other.raised_.begin(), other.raised_.end());
    }

    bool detected() const noexcept { return !raised_.empty(); }
    std::span<const CheckId> raised() const noexcept { return raised_; }
    std::size_t evaluated() const noexcept { return evaluated_; }
    std::size_t evaluated(CheckKind k) const noexcept { return evaluated_by_kind_[static_cast<std::size_t>(k)]; }

    bool raised(CheckKind k) const noexcept {
        for (const auto& id : raised_)
            if (id.kind == k) return true;
        return false;
    }

  private:
    std::vector<CheckId> raised_;
    std::size_t evaluated_ = 0;
    std::array<std::size_t, kCheckKindCount> evaluated_by_kind_{};
};

/// Observation/injection hook threaded through the guarded pipelines.
///
/// `signal` sees every checked and unchecked transformation output. `first`
/// names the site of elements[0]; element i is word first.word + i. The hook
/// may overwrite elements in place. `verdict` sees each check's comparator
/// output and returns the value that reaches the report.
template <class H, class Element>
concept SignalHook = requires(H& h, const Site& site, std::span<Element> elements, const CheckId& id, bool raised) {
    { h.signal(site, elements) };
    { h.verdict(id, raised) } -> std::convertible_to<bool>;
};

/// Hook that observes nothing; guarded runs with it are pure.
struct NullHook {
    template <class Element>
    constexpr void signal(const Site&, std::span<Element>) noexcept {}
    constexpr bool verdict(const CheckId&, bool raised) const noexcept { return raised; }
};

}  // namespace hashguard
