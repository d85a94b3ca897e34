// Copyright 2026 The qtedopa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dynamics.hpp"
#include "encoding.hpp"
#include "error.hpp"

namespace qtedopa {

struct OutputSpec {
    /// CSV destination; empty means standard output.
    std::string path;
    /// Optional whitespace-separated mirror of the dynamics table.
    std::string dat_path;
    bool full_precision = false;
};

struct ResourceSpec {
    /// 0 means one chain per site.
    std::size_t n_chains = 0;
    /// 0 means one qubit per site.
    std::size_t system_qubits = 0;
};

/// Everything a run needs. Defaults reproduce the two-site benchmark.
struct RunConfig {
    DynamicsConfig dynamics;
    bool oracle_enabled = false;
    OracleMode oracle_mode = OracleMode::SameD;
    ResourceSpec resources;
    OutputSpec output;

    /// Dynamics settings with the oracle switch applied.
    [[nodiscard]] DynamicsConfig effective_dynamics() const {
        DynamicsConfig d = dynamics;
        d.oracle = oracle_enabled ? oracle_mode : OracleMode::None;
        return d;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

/// Shortest text that reads back to the same double.
inline std::string shortest(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

class ConfigBinder {
  public:
    using Setter = std::function<void(const std::string &)>;
    using Getter = std::function<std::string()>;

    explicit ConfigBinder(RunConfig &cfg) : cfg_(cfg) { bind_all(); }

    [[nodiscard]] bool has(const std::string &key) const { return setters_.contains(key); }

    void set(const std::string &key, const std::string &value, const std::string &where) {
        const auto it = setters_.find(key);
        if (it == setters_.end()) {
            fail(ErrorCode::ParseError, where + ": unknown key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const Error &e) {
            fail(ErrorCode::ParseError, where + ": key '" + key + "': " + e.what());
        }
    }

    /// `key = value` lines in declaration order, grouped by section.
    [[nodiscard]] std::string dump() const {
        std::ostringstream os;
        std::string section;
        for (const auto &key : order_) {
            const auto dot = key.find('.');
            const std::string sec = key.substr(0, dot);
            if (sec != section) {
                os << '[' << sec << "]\n";
                section = sec;
            }
            os << key.substr(dot + 1) << " = " << getters_.at(key)() << '\n';
        }
        return os.str();
    }

  private:
    void bind(const std::string &key, Setter s, Getter g) {
        order_.push_back(key);
        setters_[key] = std::move(s);
        getters_[key] = std::move(g);
    }

    static double parse_real(const std::string &v) {
        double x = 0.0;
        const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
        if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size() || !std::isfinite(x)) {
            fail(ErrorCode::InvalidInput, "expected a real number, got '" + v + "'");
        }
        return x;
    }

    static std::size_t parse_count(const std::string &v) {
        std::size_t x = 0;
        const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
        if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size()) {
            fail(ErrorCode::InvalidInput, "expected a non-negative integer, got '" + v + "'");
        }
        return x;
    }

    static bool parse_flag(const std::string &v) {
        if (v == "true" || v == "1" || v == "yes") {
            return true;
        }
        if (v == "false" || v == "0" || v == "no") {
            return false;
        }
        fail(ErrorCode::InvalidInput, "expected true or false, got '" + v + "'");
    }

    static std::string flag_text(bool b) { return b ? "true" : "false"; }

    void bind_real(const std::string &key, double &target) {
        bind(key, [&target](const std::string &v) { target = parse_real(v); },
             [&target] { return shortest(target); });
    }

    void bind_count(const std::string &key, std::size_t &target) {
        bind(key, [&target](const std::string &v) { target = parse_count(v); },
             [&target] { return std::to_string(target); });
    }

    void bind_flag(const std::string &key, bool &target) {
        bind(key, [&target](const std::string &v) { target = parse_flag(v); },
             [&target] { return flag_text(target); });
    }

    void bind_text(const std::string &key, std::string &target) {
        bind(key, [&target](const std::string &v) { target = v; }, [&target] { return target; });
    }

    void bind_all() {
        auto &d = cfg_.dynamics;
        bind("system.site_energies",
             [&d](const std::string &v) {
                 std::vector<double> e;
                 for (const auto &item : split(v, ',')) {
                     e.push_back(parse_real(item));
                 }
                 d.system.site_energies = std::move(e);
             },
             [&d] {
                 std::string s;
                 for (double e : d.system.site_energies) {
                     s += (s.empty() ? "" : ", ") + shortest(e);
                 }
                 return s;
             });
        bind("system.couplings",
             [&d](const std::string &v) {
                 std::vector<SiteCoupling> cs;
                 if (!v.empty() && v != "none") {
                     for (const auto &item : split(v, ',')) {
                         const auto parts = split(item, ':');
                         if (parts.size() != 3) {
                             fail(ErrorCode::InvalidInput,
                                  "couplings are 'a:b:g' triples, got '" + item + "'");
                         }
                         cs.push_back({parse_count(parts[0]), parse_count(parts[1]),
                                       parse_real(parts[2])});
                     }
                 }
                 d.system.couplings = std::move(cs);
             },
             [&d] {
                 std::string s;
                 for (const auto &c : d.system.couplings) {
                     s += (s.empty() ? "" : ", ") + std::to_string(c.a) + ":" + std::to_string(c.b) +
                          ":" + shortest(c.g);
                 }
                 return s.empty() ? std::string("none") : s;
             });
        bind_count("system.excited_site", d.excited_site);
        bind_count("system.observed_site", d.observed_site);

        bind_real("bath.alpha", d.bath.alpha);
        bind_real("bath.omega_c", d.bath.omega_c);
        bind_real("bath.omega_min", d.bath.omega_min);
        bind_real("bath.omega_max", d.bath.omega_max);
        bind("bath.temperature_K",
             [&d](const std::string &v) {
                 if (v == "none" || v.empty()) {
                     d.bath.temperature_K.reset();
                 } else {
                     d.bath.temperature_K = parse_real(v);
                 }
             },
             [&d] { return d.bath.temperature_K ? shortest(*d.bath.temperature_K) : "none"; });
        bind_flag("bath.measure_pi_normalization", d.bath.pi_normalization);

        bind_count("chain.length", d.chain_length);
        bind_count("chain.d", d.d);
        bind("chain.encoding",
             [&d](const std::string &v) {
                 if (v == "binary") {
                     d.encoding = EncodingScheme::Binary;
                 } else if (v == "unary") {
                     d.encoding = EncodingScheme::Unary;
                 } else {
                     fail(ErrorCode::InvalidInput, "expected 'binary' or 'unary', got '" + v + "'");
                 }
             },
             [&d] { return to_string(d.encoding); });

        bind_real("evolution.dt_ps", d.dt_ps);
        bind_count("evolution.n_steps", d.n_steps);

        bind_flag("oracle.enabled", cfg_.oracle_enabled);
        bind("oracle.mode",
             [this](const std::string &v) {
                 const OracleMode m = oracle_mode_from_string(v);
                 require(m != OracleMode::None, "use oracle.enabled = false to disable the oracle");
                 cfg_.oracle_mode = m;
             },
             [this] { return to_string(cfg_.oracle_mode); });
        bind_count("oracle.d", d.oracle_d);
        bind_count("oracle.reference_length", d.reference_length);
        bind_count("oracle.max_qubits", d.oracle_max_qubits);

        bind_count("resources.n_chains", cfg_.resources.n_chains);
        bind_count("resources.system_qubits", cfg_.resources.system_qubits);

        bind_text("output.path", cfg_.output.path);
        bind_text("output.dat_path", cfg_.output.dat_path);
        bind_flag("output.full_precision", cfg_.output.full_precision);
    }

    RunConfig &cfg_;
    std::vector<std::string> order_;
    std::map<std::string, Setter> setters_;
    std::map<std::string, Getter> getters_;
};

} // namespace detail

/// Applies `key = value` assignments in order. `where[i]` labels the source
/// of assignment i in error messages.
inline void apply_settings(RunConfig &cfg,
                           const std::vector<std::pair<std::string, std::string>> &settings,
                           const std::vector<std::string> &where) {
    detail::ConfigBinder binder(cfg);
    std::map<std::string, std::string> seen;
    for (std::size_t i = 0; i < settings.size(); ++i) {
        binder.set(settings[i].first, settings[i].second, where[i]);
        seen[settings[i].first] = where[i];
    }
    const auto locate = [&](const std::string &key) {
        const auto it = seen.find(key);
        return it == seen.end() ? std::string("config") : it->second;
    };
    const auto check = [&](const std::string &key, const auto &fn) {
        try {
            fn();
        } catch (const Error &e) {
            fail(ErrorCode::ParseError, locate(key) + ": key '" + key + "': " + e.what());
        }
    };
    auto &d = cfg.dynamics;
    check("chain.d", [&] { (void)BosonEncoding::make(d.encoding, d.d); });
    check(seen.contains("system.couplings") ? "system.couplings" : "system.site_energies",
          [&] { d.system.validate(); });
    check("bath.alpha", [&] { require(d.bath.alpha >= 0.0, "must be >= 0"); });
    check("bath.omega_c", [&] { require(d.bath.omega_c > 0.0, "must be > 0"); });
    check("bath.omega_max",
          [&] { require(d.bath.omega_max > d.bath.omega_min, "must exceed bath.omega_min"); });
    check("bath.omega_min", [&] { require(d.bath.omega_min >= 0.0, "must be >= 0"); });
    check("bath.temperature_K", [&] {
        require(!d.bath.temperature_K || *d.bath.temperature_K > 0.0, "must be > 0 or none");
    });
    check("chain.length", [&] { require(d.chain_length >= 1, "must be >= 1"); });
    check("evolution.dt_ps", [&] { require(d.dt_ps > 0.0, "must be > 0"); });
    check("evolution.n_steps", [&] { require(d.n_steps >= 1, "must be >= 1"); });
    check("system.excited_site",
          [&] { require(d.excited_site < d.system.n_sites(), "must name an existing site"); });
    check("system.observed_site",
          [&] { require(d.observed_site < d.system.n_sites(), "must name an existing site"); });
    if (cfg.oracle_enabled) {
        check("oracle.d", [&] {
            if (cfg.oracle_mode == OracleMode::HigherD) {
                require(d.oracle_d > d.d, "must exceed chain.d");
                (void)BosonEncoding::make(d.encoding, d.oracle_d);
            }
        });
        check("oracle.reference_length", [&] {
            if (cfg.oracle_mode == OracleMode::LongChain) {
                require(d.reference_length > d.chain_length, "must exceed chain.length");
            }
        });
    }
}

/// Parses the sectioned key-value format:
///
///     # comment
///     [chain]
///     length = 5     # trailing comments are allowed
///
/// Keys are addressed as `section.key`. Unknown keys and malformed values
/// are rejected with their line number.
inline RunConfig parse_config(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> settings;
    std::vector<std::string> where;
    std::string section;
    std::map<std::string, std::size_t> first_line;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view raw = text.substr(pos, end == std::string_view::npos ? end : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        const std::string here = "line " + std::to_string(line_no);
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string line = detail::trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                fail(ErrorCode::ParseError, here + ": malformed section header '" + line + "'");
            }
            section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(ErrorCode::ParseError, here + ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        if (key.empty()) {
            fail(ErrorCode::ParseError, here + ": missing key");
        }
        const std::string path = section.empty() ? key : section + "." + key;
        if (const auto it = first_line.find(path); it != first_line.end()) {
            fail(ErrorCode::ParseError, here + ": key '" + path + "' already set on line " +
                                            std::to_string(it->second));
        }
        first_line[path] = line_no;
        settings.emplace_back(path, detail::trim(std::string_view(line).substr(eq + 1)));
        where.push_back(here);
    }
    RunConfig cfg;
    apply_settings(cfg, settings, where);
    return cfg;
}

/// Applies `section.key=value` overrides on top of a parsed config.
inline void apply_overrides(RunConfig &cfg, const std::vector<std::string> &assignments) {
    std::vector<std::pair<std::string, std::string>> settings;
    std::vector<std::string> where;
    for (const auto &a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            fail(ErrorCode::ParseError, "override '" + a + "': expected section.key=value");
        }
        settings.emplace_back(detail::trim(std::string_view(a).substr(0, eq)),
                              detail::trim(std::string_view(a).substr(eq + 1)));
        where.push_back("override '" + a + "'");
    }
    apply_settings(cfg, settings, where);
}

/// The fully resolved configuration in the input format.
inline std::string effective_config(const RunConfig &cfg) {
    RunConfig copy = cfg;
    return detail::ConfigBinder(copy).dump();
}

} // namespace qtedopa
