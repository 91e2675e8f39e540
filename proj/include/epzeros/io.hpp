#pragma once

// Experiment configuration (INI-style key-value file with [section] nesting,
// flag overrides), the content-addressed result cache, and JSON serialization
// of the arithmetic tables.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "epzeros/forms.hpp"

namespace epz {

inline constexpr const char* kVersion = "1.0.0";

struct Config {
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, Entry> kv; // "section.key" -> entry

    static Config parse_file(const std::filesystem::path& p);
    void apply_override(const std::string& keyval); // "section.key=value"

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    std::string get_str(const std::string& key, const std::string& dflt) const;
    std::string require_str(const std::string& key) const;
    double get_num(const std::string& key, double dflt) const;
    long long get_int(const std::string& key, long long dflt) const;
    double require_num(const std::string& key) const;

    nlohmann::json resolved() const; // full key/value dump for provenance
};

// 128-bit FNV-1a, hex string
std::string fnv128_hex(const std::string& data);

// content-addressed cache: entries are keyed by the canonical JSON of the
// request plus the code version; corrupt entries are ignored with a warning
std::optional<nlohmann::json> cache_get(const std::filesystem::path& dir,
                                        const nlohmann::json& key);
void cache_put(const std::filesystem::path& dir, const nlohmann::json& key,
               const nlohmann::json& payload);

nlohmann::json to_json(const BinaryQuadraticForm& f);
nlohmann::json to_json(const ClassGroup& g);
nlohmann::json to_json(const CharacterSystem& s);
nlohmann::json to_json(const EulerTable& t);

// deterministic float formatting for result files
std::string fmt_g17(double v);

void write_file_atomic(const std::filesystem::path& p, const std::string& contents);

} // namespace epz
