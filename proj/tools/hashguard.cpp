// hashguard: hash, verify known answers, run identity suites, and run fault
// campaigns from the command line.
//
// Exit codes: 0 success, 1 data failure (mismatch, failed suite, I/O error),
// 2 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hashguard/faultsim.hpp"
#include "hashguard/hex.hpp"
#include "hashguard/kat.hpp"
#include "hashguard/report.hpp"
#include "hashguard/selftest.hpp"

namespace {

using namespace hashguard;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, Algorithm> kAlgorithms{{"echo256", Algorithm::echo256}, {"fugue256", Algorithm::fugue256}};

std::vector<std::uint8_t> read_all(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_hash(Algorithm alg, const std::string& path, const std::string& salt_hex) {
    echo::Salt salt{};
    if (!salt_hex.empty()) {
        if (alg != Algorithm::echo256) throw UsageError("--salt applies to echo256 only");
        std::vector<std::uint8_t> raw;
        try {
            raw = from_hex(salt_hex);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--salt: ") + e.what());
        }
        if (raw.size() != salt.size()) throw UsageError("--salt must be 16 bytes (32 hex digits)");
        std::copy(raw.begin(), raw.end(), salt.begin());
    }

    std::vector<std::uint8_t> data;
    if (path.empty() || path == "-") {
        data = read_all(std::cin);
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "hashguard: cannot read " << path << "\n";
            return kExitData;
        }
        data = read_all(in);
    }
    Message m = Message::from_bytes(data);
    m.salt = salt;
    std::cout << to_hex(reference_digest(alg, m)) << "\n";
    return kExitOk;
}

int cmd_kat(Algorithm alg, const std::string& path, bool quiet) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "hashguard: cannot read " << path << "\n";
        return kExitData;
    }
    std::vector<KatEntry> entries;
    try {
        entries = parse_kat(in);
    } catch (const KatParseError& e) {
        std::cerr << "hashguard: " << path << ": " << e.what() << "\n";
        return kExitData;
    }
    if (entries.empty()) {
        std::cerr << "warning: " << path << " contains no entries\n";
        std::cout << "total 0 passed 0 failed 0\n";
        return kExitOk;
    }
    std::size_t failed = 0;
    for (const auto& r : verify_kat(alg, entries)) {
        if (!r.pass) ++failed;
        if (!quiet || !r.pass) {
            std::cout << (r.pass ? "pass" : "FAIL") << " Len=" << r.entry->len << " (line " << r.entry->line << ")";
            if (!r.pass) std::cout << " got " << to_hex(r.actual);
            std::cout << "\n";
        }
    }
    std::cout << "total " << entries.size() << " passed " << entries.size() - failed << " failed " << failed << "\n";
    return failed == 0 ? kExitOk : kExitData;
}

int cmd_selftest(const SelftestOptions& opts) {
    bool ok = true;
    for (const auto& s : run_selftest(opts)) {
        ok = ok && s.passed();
        std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << " trials=" << s.trials << " seed=" << s.seed
                  << " failures=" << s.failures << "\n";
    }
    return ok ? kExitOk : kExitData;
}

std::string ratio(std::optional<double> v) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
}

int cmd_campaign(const CampaignConfig& cfg, const std::string& output) {
    std::ofstream out;
    if (!output.empty() && output != "-") {
        out.open(output, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "hashguard: cannot write " << output << "\n";
            return kExitData;
        }
    }
    const auto start = std::chrono::steady_clock::now();
    const CampaignReport rep = run_campaign(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string doc = render(rep);
    if (out.is_open()) {
        out << doc;
        out.close();
        if (!out) {
            std::cerr << "hashguard: write to " << output << " failed\n";
            return kExitData;
        }
    } else {
        std::cout << doc;
    }
    const auto& t = rep.totals;
    std::cerr << to_string(cfg.algorithm) << ": injected " << t.injected << ", activated " << t.activated
              << ", effective " << t.effective << ", missed " << t.missed << ", false alarms " << t.false_alarms << "\n"
              << "coverage " << ratio(t.coverage()) << ", false-alarm ratio " << ratio(t.false_alarm_ratio())
              << " per injected, " << ratio(t.false_alarm_ratio_activated()) << " per activated (" << secs
              << " s)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ECHO-256 / Fugue-256 with predicted-signature checks and stuck-at fault campaigns"};
    app.require_subcommand(1);

    std::string alg_name;
    auto add_algorithm = [&](CLI::App* sub) {
        sub->add_option("algorithm", alg_name, "echo256 or fugue256")
            ->required()
            ->check(CLI::IsMember({"echo256", "fugue256"}));
    };

    auto* hash = app.add_subcommand("hash", "Print the digest of a file or stdin");
    add_algorithm(hash);
    std::string input, salt;
    hash->add_option("input", input, "Input file; '-' or omitted reads stdin");
    hash->add_option("--salt", salt, "ECHO salt, 32 hex digits (default all-zero)");

    auto* kat = app.add_subcommand("kat", "Verify a Len/Msg/MD known-answer file");
    add_algorithm(kat);
    std::string kat_path;
    bool quiet = false;
    kat->add_option("file", kat_path, "Known-answer file")->required();
    kat->add_flag("-q,--quiet", quiet, "Print failures and the total only");

    auto* self = app.add_subcommand("selftest", "Run the identity suites");
    SelftestOptions st;
    self->add_option("--seed", st.seed, "Base seed")->capture_default_str();
    self->add_option("--trials", st.random_trials, "Random trials per identity suite")->capture_default_str();
    self->add_option("--compressions", st.compressions, "Guarded compressions per ECHO suite")->capture_default_str();

    auto* camp = app.add_subcommand("campaign", "Run a stuck-at fault campaign and write a JSON report");
    add_algorithm(camp);
    CampaignConfig cfg;
    std::string output, message_hex;
    std::string model = "multiple", persistence = "transient", parity = "word";
    camp->add_option("--model", model, "single or multiple")
        ->check(CLI::IsMember({"single", "multiple"}))
        ->capture_default_str();
    camp->add_option("--persistence", persistence, "transient or permanent")
        ->check(CLI::IsMember({"transient", "permanent"}))
        ->capture_default_str();
    camp->add_option("--count", cfg.count, "Number of faults")->check(CLI::PositiveNumber)->capture_default_str();
    camp->add_option("--seed", cfg.seed, "Master seed (nonzero)")->check(CLI::PositiveNumber)->capture_default_str();
    camp->add_option("-o,--output", output, "Report path; '-' or omitted writes stdout");
    camp->add_option("--max-bytes", cfg.max_message_bytes, "Longest random message")
        ->check(CLI::Range(0, 1 << 20))
        ->capture_default_str();
    camp->add_option("--message", message_hex, "Use this fixed message (hex) for every trial");
    camp->add_flag("--include-unchecked", cfg.include_unchecked, "Also target S-box outputs");
    camp->add_flag("--include-finalization", cfg.include_finalization, "Also target Fugue's output stage");
    camp->add_flag("--comparator-faults", cfg.comparator_faults, "Also target check comparators");
    camp->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores")->capture_default_str();
    camp->add_option("--flag-bits", cfg.echo_options.flag_bits, "ECHO flag width after folding")
        ->check(CLI::Range(1, 32))
        ->capture_default_str();
    camp->add_option("--parity", parity, "ECHO final parity: word or byte")
        ->check(CLI::IsMember({"word", "byte"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const Algorithm alg = kAlgorithms.at(alg_name.empty() ? "echo256" : alg_name);
    try {
        if (*hash) return cmd_hash(alg, input, salt);
        if (*kat) return cmd_kat(alg, kat_path, quiet);
        if (*self) return cmd_selftest(st);
        if (*camp) {
            cfg.algorithm = alg;
            cfg.model = model == "single" ? FaultModel::single : FaultModel::multiple;
            cfg.persistence = persistence == "permanent" ? Persistence::permanent : Persistence::transient;
            cfg.echo_options.parity = parity == "byte" ? echo::ParityMode::byte : echo::ParityMode::word;
            if (!message_hex.empty()) {
                try {
                    cfg.fixed_message = from_hex(message_hex);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(std::string("--message: ") + e.what());
                }
            }
            return cmd_campaign(cfg, output);
        }
    } catch (const UsageError& e) {
        std::cerr << "hashguard: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "hashguard: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
