#include "epzeros/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "epzeros/errors.hpp"

namespace epz {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open config file: " + p.string());
    Config cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(p.string() + ":" + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(p.string() + ":" + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(p.string() + ":" + std::to_string(lineno) + ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        cfg.kv[full] = {val, lineno};
    }
    return cfg;
}

void Config::apply_override(const std::string& keyval) {
    size_t eq = keyval.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: " + keyval);
    kv[trim(keyval.substr(0, eq))] = {trim(keyval.substr(eq + 1)), 0};
}

std::string Config::get_str(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second.value;
}

std::string Config::require_str(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required config field: " + key);
    return it->second.value;
}

double Config::get_num(const std::string& key, double dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
        size_t pos = 0;
        double v = std::stod(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("field " + key + " (line " + std::to_string(it->second.line) +
                          "): not a number: " + it->second.value);
    }
}

double Config::require_num(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required config field: " + key);
    return get_num(key, 0);
}

long long Config::get_int(const std::string& key, long long dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
        size_t pos = 0;
        long long v = std::stoll(it->second.value, &pos);
        if (pos != it->second.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("field " + key + " (line " + std::to_string(it->second.line) +
                          "): not an integer: " + it->second.value);
    }
}

nlohmann::json Config::resolved() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, e] : kv) j[k] = e.value;
    return j;
}

std::string fnv128_hex(const std::string& data) {
    // two independent 64-bit FNV-1a passes (different offset bases)
    auto pass = [&](std::uint64_t h, std::uint64_t prime) {
        for (unsigned char c : data) {
            h ^= c;
            h *= prime;
        }
        return h;
    };
    std::uint64_t a = pass(14695981039346656037ull, 1099511628211ull);
    std::uint64_t b = pass(0x9e3779b97f4a7c15ull, 0x100000001b3ull);
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(a),
                  static_cast<unsigned long long>(b));
    return buf;
}

std::optional<nlohmann::json> cache_get(const std::filesystem::path& dir,
                                        const nlohmann::json& key) {
    std::string h = fnv128_hex(key.dump() + "|" + kVersion);
    std::filesystem::path p = dir / (h + ".json");
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("version") != kVersion || j.at("key") != key) return std::nullopt;
        return j.at("payload");
    } catch (const std::exception& e) {
        std::cerr << "warning: ignoring corrupt cache entry " << p << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

void write_file_atomic(const std::filesystem::path& p, const std::string& contents) {
    std::filesystem::path tmp = p;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << contents;
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, p, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("rename failed for " + p.string() + ": " + ec.message());
    }
}

void cache_put(const std::filesystem::path& dir, const nlohmann::json& key,
               const nlohmann::json& payload) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string h = fnv128_hex(key.dump() + "|" + kVersion);
    nlohmann::json j;
    j["version"] = kVersion;
    j["key"] = key;
    j["payload"] = payload;
    write_file_atomic(dir / (h + ".json"), j.dump(1));
}

nlohmann::json to_json(const BinaryQuadraticForm& f) {
    return nlohmann::json::array({f.a, f.b, f.c});
}

nlohmann::json to_json(const ClassGroup& g) {
    nlohmann::json j;
    j["discriminant"] = g.D;
    j["h"] = g.h();
    auto forms = nlohmann::json::array();
    for (const auto& f : g.classes) forms.push_back(to_json(f));
    j["forms"] = forms;
    j["composition_table"] = g.composition_table;
    j["generator_indices"] = g.generator_indices;
    j["cyclic_orders"] = g.cyclic_orders;
    return j;
}

nlohmann::json to_json(const CharacterSystem& s) {
    nlohmann::json j;
    j["group"] = to_json(s.group);
    j["anchor_class"] = s.anchor_class;
    j["w_D"] = s.w_D;
    j["J"] = s.J;
    auto chars = nlohmann::json::array();
    for (const auto& chi : s.chars) {
        auto row = nlohmann::json::array();
        for (const auto& ang : chi) row.push_back(nlohmann::json::array({ang.num, ang.den}));
        chars.push_back(row);
    }
    j["character_angles"] = chars;
    j["is_real"] = s.is_real;
    auto cj = nlohmann::json::array();
    for (double c : s.coeffs) cj.push_back(fmt_g17(c));
    j["coefficients"] = cj;
    return j;
}

nlohmann::json to_json(const EulerTable& t) {
    nlohmann::json j;
    j["discriminant"] = t.system.group.D;
    j["P_max"] = t.P_max;
    j["Y_max"] = t.Y_max;
    auto rows = nlohmann::json::array();
    for (const auto& pd : t.primes) {
        nlohmann::json r;
        r["p"] = pd.p;
        r["kind"] = (pd.kind == SplittingType::Split)   ? "split"
                    : (pd.kind == SplittingType::Inert) ? "inert"
                                                        : "ramified";
        if (pd.kind != SplittingType::Inert) {
            r["class"] = pd.prime_class;
            auto ch = nlohmann::json::array();
            for (const auto& a : pd.chi) ch.push_back(nlohmann::json::array({a.num, a.den}));
            r["chi_angles"] = ch;
        }
        r["n_max"] = pd.n_max;
        rows.push_back(r);
    }
    j["primes"] = rows;
    return j;
}

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace epz
