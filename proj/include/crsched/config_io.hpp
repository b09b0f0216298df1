#pragma once

// Plain-text scenario files: one `key = value` pair per line, arrays in
// brackets, `#` comments. Errors carry the offending line number and field
// name. serialize_config emits a canonical form that round-trips exactly
// (doubles printed with 17 significant digits).
//
//   N = 3
//   tau = 1
//   rho = 0.1
//   P0 = 1
//   g11 = [100, 420, 200]
//   g21 = [1, 1, 1]
//   alpha = [0.0125, 0.033333333333333333, 0.5]
//   Ea0 = 12
//   Ea = [20, 25, 18]
//   Da = [1, 1, 3]
//   Q0 = 1
//
// Channel data may be alpha directly or the g22/g12/P0/N0 quadruple; when
// both appear alpha wins and a warning is reported. `relaxed = true` drops
// the ISR constraint and its fields.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crsched/model.hpp"

namespace crsched {

struct ConfigError : std::runtime_error {
    int line;  // 0 when the error is not tied to a single line
    ConfigError(int line_, const std::string& what)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what
                                       : what),
          line(line_) {}
};

struct ParsedConfig {
    ScenarioConfig cfg;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline double parse_number(std::string_view tok, int line, const std::string& key) {
    const std::string buf(tok);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str() || *end != '\0')
        throw ConfigError(line, "bad number for " + key + ": '" + buf + "'");
    return v;
}

struct RawValue {
    std::string text;
    int line = 0;
};

}  // namespace detail

inline ParsedConfig parse_config(std::string_view text) {
    std::map<std::string, detail::RawValue> raw;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string value{detail::trim(line.substr(eq + 1))};
        if (key.empty()) throw ConfigError(line_no, "empty key");
        if (raw.count(key)) throw ConfigError(line_no, "duplicate key " + key);
        raw[key] = {value, line_no};
    }

    auto take = [&](const std::string& key) -> std::optional<detail::RawValue> {
        auto it = raw.find(key);
        if (it == raw.end()) return std::nullopt;
        detail::RawValue v = it->second;
        raw.erase(it);
        return v;
    };
    auto require = [&](const std::string& key) {
        auto v = take(key);
        if (!v) throw ConfigError(0, "missing field: " + key);
        return *v;
    };
    auto as_scalar = [&](const detail::RawValue& v, const std::string& key) {
        return detail::parse_number(v.text, v.line, key);
    };
    auto as_array = [&](const detail::RawValue& v, const std::string& key) {
        std::string_view s = detail::trim(v.text);
        if (s.size() < 2 || s.front() != '[' || s.back() != ']')
            throw ConfigError(v.line, key + ": expected [a, b, ...]");
        s = s.substr(1, s.size() - 2);
        std::vector<double> out;
        std::size_t start = 0;
        while (start <= s.size()) {
            std::size_t comma = s.find(',', start);
            if (comma == std::string_view::npos) comma = s.size();
            const std::string_view tok = detail::trim(s.substr(start, comma - start));
            if (!tok.empty()) out.push_back(detail::parse_number(tok, v.line, key));
            start = comma + 1;
        }
        return out;
    };
    auto as_bool = [&](const detail::RawValue& v, const std::string& key) {
        if (v.text == "true") return true;
        if (v.text == "false") return false;
        throw ConfigError(v.line, key + ": expected true or false");
    };

    ParsedConfig out;
    ScenarioConfig& cfg = out.cfg;

    const detail::RawValue n_raw = require("N");
    const double n_val = as_scalar(n_raw, "N");
    if (n_val < 1 || n_val != static_cast<double>(static_cast<std::size_t>(n_val)))
        throw ConfigError(n_raw.line, "N must be a positive integer");
    cfg.N = static_cast<std::size_t>(n_val);

    auto check_nonneg = [&](double v, const std::string& key, int line) {
        if (v < 0.0) throw ConfigError(line, "negative value for " + key);
    };
    auto scalar_field = [&](const char* key, bool required, double fallback) {
        auto v = required ? std::optional<detail::RawValue>(require(key)) : take(key);
        if (!v) return fallback;
        const double val = as_scalar(*v, key);
        check_nonneg(val, key, v->line);
        return val;
    };
    cfg.tau = scalar_field("tau", false, 1.0);
    cfg.log_base = scalar_field("log_base", false, cfg.log_base);
    cfg.Q0 = scalar_field("Q0", true, 0.0);
    cfg.Ea0 = scalar_field("Ea0", true, 0.0);
    if (auto v = take("relaxed")) cfg.relaxed = as_bool(*v, "relaxed");

    auto check_len = [&](const std::vector<double>& vec, const std::string& key,
                         int line) {
        if (vec.size() != cfg.N)
            throw ConfigError(line, "trace length mismatch: " + key + " has " +
                                        std::to_string(vec.size()) +
                                        " entries, N = " + std::to_string(cfg.N));
    };
    auto trace = [&](const std::string& key, bool required) {
        auto v = required ? std::optional<detail::RawValue>(require(key)) : take(key);
        std::vector<double> vec;
        if (v) {
            vec = as_array(*v, key);
            check_len(vec, key, v->line);
            for (double x : vec) check_nonneg(x, key, v->line);
        }
        return vec;
    };
    cfg.Ea = trace("Ea", true);
    cfg.Da = trace("Da", true);
    cfg.alpha_direct = trace("alpha", false);
    cfg.g11 = trace("g11", false);
    cfg.g12 = trace("g12", false);
    cfg.g21 = trace("g21", false);
    cfg.g22 = trace("g22", false);
    if (auto v = take("P0")) {
        cfg.P0 = as_scalar(*v, "P0");
        check_nonneg(*cfg.P0, "P0", v->line);
    }
    if (auto v = take("N0")) {
        cfg.N0 = as_scalar(*v, "N0");
        check_nonneg(*cfg.N0, "N0", v->line);
    }
    if (auto v = take("rho")) {
        cfg.rho = as_scalar(*v, "rho");
        check_nonneg(*cfg.rho, "rho", v->line);
    }

    if (!raw.empty()) {
        const auto& first = *raw.begin();
        throw ConfigError(first.second.line, "unknown key " + first.first);
    }

    if (!cfg.alpha_direct.empty() && !cfg.g22.empty())
        out.warnings.push_back(
            "alpha given directly; g22/g12/P0/N0 channel data ignored");

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    return out;
}

inline std::string serialize_config(const ScenarioConfig& cfg) {
    std::string out;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    auto scalar = [&](const char* key, double v) {
        out += key;
        out += " = ";
        out += num(v);
        out += '\n';
    };
    auto array = [&](const char* key, const std::vector<double>& v) {
        if (v.empty()) return;
        out += key;
        out += " = [";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            out += num(v[i]);
        }
        out += "]\n";
    };
    scalar("N", static_cast<double>(cfg.N));
    scalar("tau", cfg.tau);
    scalar("log_base", cfg.log_base);
    scalar("Q0", cfg.Q0);
    scalar("Ea0", cfg.Ea0);
    array("Ea", cfg.Ea);
    array("Da", cfg.Da);
    array("alpha", cfg.alpha_direct);
    if (cfg.P0) scalar("P0", *cfg.P0);
    if (cfg.N0) scalar("N0", *cfg.N0);
    array("g11", cfg.g11);
    array("g12", cfg.g12);
    array("g21", cfg.g21);
    array("g22", cfg.g22);
    if (cfg.rho) scalar("rho", *cfg.rho);
    if (cfg.relaxed) out += "relaxed = true\n";
    return out;
}

}  // namespace crsched
