// Hash a string with both guarded pipelines, then corrupt one signal and
// watch the checks react.

#include <cstdio>
#include <string_view>

#include "hashguard/faultsim.hpp"
#include "hashguard/hex.hpp"

int main() {
    using namespace hashguard;
    constexpr std::string_view text = "The quick brown fox jumps over the lazy dog";
    const Message msg = Message::from_bytes({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});

    for (Algorithm alg : {Algorithm::echo256, Algorithm::fugue256}) {
        NullHook clean;
        const auto [digest, report] = guarded_run(alg, msg, clean);
        std::printf("%-8s %s  checks=%zu raised=%zu\n", to_string(alg).data(), to_hex(digest).c_str(),
                    report.evaluated(), report.raised().size());

        // Force bit 5 of one mid-pipeline word to the opposite level.
        const Site site = alg == Algorithm::echo256 ? Site{Stage::echo_big_mix_columns, 0, 3, 0, 6}
                                                    : Site{Stage::fugue_super_mix, 0, 4, 1, 2};
        for (bool level : {false, true}) {
            const StuckBit bit{5, level};
            const auto out = inject(msg, FaultSpec::stuck_at(alg, site, {&bit, 1}));
            if (!out.activated) continue;
            std::printf("         stuck-at-%d -> %s  first flag: %s\n", level, to_hex(out.digest).c_str(),
                        out.report.detected() ? to_string(out.report.raised()[0].kind).data() : "none");
        }
    }
}
