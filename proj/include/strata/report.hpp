// Deterministic command reports: an ordered key/value tree with a stable
// machine-readable rendering and an input digest.

#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace strata {

/// FNV-1a 64-bit digest of the raw input bytes.
inline std::uint64_t input_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

/// Entries render in insertion order; `to_kv` is byte-stable for identical
/// inputs.  Section rows group subsequent entries in the human rendering and
/// prefix keys in the machine rendering.
class report {
  public:
    report(std::string command, const std::string& input_bytes) {
        add("command", std::move(command));
        add("input_digest", hex64(input_digest(input_bytes)));
        add("version", version_string);
    }

    void add(std::string key, std::string value) {
        entries_.push_back({std::move(key), std::move(value), false});
    }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    void add(std::string key, bool value) { add(std::move(key), value ? "true" : "false"); }
    template <typename I>
        requires std::is_integral_v<I>
    void add(std::string key, I value) {
        add(std::move(key), std::to_string(value));
    }

    void section(std::string name) { entries_.push_back({std::move(name), "", true}); }

    /// `key = value` lines; section names become `key.` prefixes.
    std::string to_kv() const {
        std::ostringstream out;
        std::string prefix;
        for (const auto& e : entries_) {
            if (e.is_section) {
                prefix = e.key.empty() ? "" : e.key + ".";
                continue;
            }
            out << prefix << e.key << " = " << e.value << "\n";
        }
        return out.str();
    }

    std::string to_text() const {
        std::ostringstream out;
        for (const auto& e : entries_) {
            if (e.is_section) {
                out << "\n[" << e.key << "]\n";
                continue;
            }
            out << "  " << e.key << ": " << e.value << "\n";
        }
        return out.str();
    }

  private:
    struct entry {
        std::string key;
        std::string value;
        bool is_section;
    };
    std::vector<entry> entries_;
};

}  // namespace strata
