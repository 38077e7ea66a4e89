#pragma once

// JSON form of a campaign report. Field names are fixed; the schema version
// changes whenever a field is renamed or its meaning changes.

#include <string>

#include "hashguard/faultsim.hpp"
#include "hashguard/hex.hpp"
#include "json.hpp"

namespace hashguard {

inline constexpr std::string_view kReportSchema = "hashguard.campaign/1";

namespace detail {

inline nlohmann::ordered_json counters_json(const Counters& c) {
    nlohmann::ordered_json j;
    j["injected"] = c.injected;
    j["activated"] = c.activated;
    j["effective"] = c.effective;
    j["detected"] = c.detected;
    j["detected_effective"] = c.detected_effective;
    j["missed"] = c.missed;
    j["false_alarms"] = c.false_alarms;
    const auto cov = c.coverage();
    j["coverage"] = cov ? nlohmann::ordered_json(*cov) : nlohmann::ordered_json(nullptr);
    j["false_alarm_ratio"] = c.false_alarm_ratio();
    const auto fa = c.false_alarm_ratio_activated();
    j["false_alarm_ratio_activated"] = fa ? nlohmann::ordered_json(*fa) : nlohmann::ordered_json(nullptr);
    return j;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const CampaignReport& r) {
    const auto& cfg = r.config;
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchema;

    auto& c = j["config"];
    c["algorithm"] = to_string(cfg.algorithm);
    c["model"] = to_string(cfg.model);
    c["persistence"] = to_string(cfg.persistence);
    c["count"] = cfg.count;
    c["seed"] = cfg.seed;
    if (cfg.fixed_message) {
        c["message_source"] = {{"kind", "fixed"}, {"hex", to_hex(*cfg.fixed_message)}};
    } else {
        c["message_source"] = {{"kind", "random"}, {"max_bytes", cfg.max_message_bytes}};
    }
    c["include_unchecked"] = cfg.include_unchecked;
    c["include_finalization"] = cfg.include_finalization;
    c["comparator_faults"] = cfg.comparator_faults;
    if (cfg.algorithm == Algorithm::echo256) {
        c["echo_flag_bits"] = cfg.echo_options.flag_bits;
        c["echo_parity"] = cfg.echo_options.parity == echo::ParityMode::word ? "word" : "byte";
    }

    j["totals"] = detail::counters_json(r.totals);

    auto& checks = j["per_check"];
    checks = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < kCheckKindCount; ++k) {
        const auto kind = static_cast<CheckKind>(k);
        if (algorithm_of(kind) != cfg.algorithm) continue;
        const auto& t = r.by_check[k];
        checks[std::string(to_string(kind))] = {
            {"raised", t.raised}, {"raised_effective", t.raised_effective}, {"sole_detector", t.sole_detector}};
    }

    auto& stages = j["per_stage"];
    stages = nlohmann::ordered_json::object();
    for (const auto& [name, counters] : r.by_stage) stages[name] = detail::counters_json(counters);
    return j;
}

inline std::string render(const CampaignReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace hashguard
