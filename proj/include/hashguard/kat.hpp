#pragma once

// Known-answer files: "Len = <bits>", "Msg = <hex>", "MD = <hex>" records.
// Lines starting with '#' or '[' and blank lines are ignored.

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hashguard/faultsim.hpp"
#include "hashguard/hex.hpp"

namespace hashguard {

struct KatEntry {
    std::uint64_t len = 0;  // message length in bits
    std::vector<std::uint8_t> msg;
    std::vector<std::uint8_t> md;
    std::size_t line = 0;  // line of the MD field
};

class KatParseError : public std::runtime_error {
  public:
    KatParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

inline std::vector<KatEntry> parse_kat(std::istream& in) {
    std::vector<KatEntry> entries;
    KatEntry cur;
    bool have_len = false, have_msg = false;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = detail::trim(raw);
        if (text.empty() || text[0] == '#' || text[0] == '[') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw KatParseError(line, "expected 'Key = value'");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        try {
            if (key == "Len") {
                if (have_len) throw KatParseError(line, "Len without a preceding MD");
                std::size_t used = 0;
                cur.len = std::stoull(value, &used);
                if (used != value.size()) throw KatParseError(line, "Len is not a decimal number");
                have_len = true;
            } else if (key == "Msg") {
                if (!have_len || have_msg) throw KatParseError(line, "Msg must follow Len");
                cur.msg = from_hex(value);
                // The zero-length entry carries a placeholder byte.
                if (cur.msg.size() < (cur.len + 7) / 8) throw KatParseError(line, "Msg shorter than Len");
                have_msg = true;
            } else if (key == "MD") {
                if (!have_msg) throw KatParseError(line, "MD must follow Msg");
                cur.md = from_hex(value);
                if (cur.md.size() != 32) throw KatParseError(line, "MD must be 32 bytes");
                cur.line = line;
                entries.push_back(std::move(cur));
                cur = {};
                have_len = have_msg = false;
            } else {
                throw KatParseError(line, "unknown field '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw KatParseError(line, e.what());
        } catch (const std::out_of_range&) {
            throw KatParseError(line, "number out of range");
        }
    }
    if (have_len || have_msg) throw KatParseError(line, "incomplete record at end of file");
    return entries;
}

struct KatResult {
    const KatEntry* entry = nullptr;
    Digest256 actual{};
    bool pass = false;
};

inline std::vector<KatResult> verify_kat(Algorithm alg, const std::vector<KatEntry>& entries) {
    std::vector<KatResult> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        Message m{e.msg, e.len, {}};
        KatResult r{&e, reference_digest(alg, m), false};
        r.pass = std::equal(r.actual.begin(), r.actual.end(), e.md.begin(), e.md.end());
        out.push_back(r);
    }
    return out;
}

}  // namespace hashguard
