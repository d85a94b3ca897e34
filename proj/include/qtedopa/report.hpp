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

#include <cstdio>
#include <sstream>
#include <string>

#include "chain_mapping.hpp"
#include "config.hpp"
#include "dynamics.hpp"
#include "trotter.hpp"

#ifndef QTEDOPA_VERSION
#define QTEDOPA_VERSION "unknown"
#endif

namespace qtedopa {

inline constexpr const char *version = QTEDOPA_VERSION;

/// 6 significant digits, or 17 with `full`.
inline std::string format_real(double v, bool full) {
    char buf[64];
    std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.6g", v);
    return buf;
}

/// Tool, version, subcommand and the resolved configuration, one item per
/// line and without comment markers.
inline std::string config_echo(const std::string &subcommand, const RunConfig &cfg) {
    return std::string("qtedopa ") + version + " " + subcommand + "\n" + effective_config(cfg);
}

/// `config_echo` with every line prefixed by `# `.
inline std::string comment_header(const std::string &subcommand, const RunConfig &cfg) {
    std::ostringstream os;
    std::istringstream lines(config_echo(subcommand, cfg));
    for (std::string line; std::getline(lines, line);) {
        os << "# " << line << "\n";
    }
    return os.str();
}

/// Rows n, w_n, t_{n+1,n}; a leading `t0` row carries the system coupling
/// in the hopping column.
inline std::string chain_csv(const ChainCoefficients &c, bool full) {
    std::ostringstream os;
    os << "n,w_n_cm1,t_np1_n_cm1\n";
    os << "t0,," << format_real(c.t0, full) << "\n";
    for (std::size_t n = 0; n < c.length(); ++n) {
        os << n << "," << format_real(c.w[n], full) << ",";
        if (n < c.t.size()) {
            os << format_real(c.t[n], full);
        }
        os << "\n";
    }
    return os.str();
}

struct ResourceRow {
    EncodingScheme scheme;
    ResourceEstimate estimate;
};

/// `encoding,qubits,cnot_gates` plus the leading-order CNOT model and the
/// synthesized Pauli-term count.
inline std::string resources_csv(const std::vector<ResourceRow> &rows, bool full) {
    std::ostringstream os;
    os << "encoding,qubits,cnot_gates,cnot_leading_order,pauli_terms,depth\n";
    for (const auto &r : rows) {
        os << to_string(r.scheme) << "," << r.estimate.qubits << "," << r.estimate.cnot_count << ","
           << format_real(r.estimate.cnot_leading_order, full) << ","
           << r.estimate.pauli_term_count << "," << r.estimate.depth_estimate << "\n";
    }
    return os.str();
}

/// One row per step boundary. With `dat` the table is space separated for
/// plotting tools.
inline std::string dynamics_table(const DynamicsResult &r, bool full, bool dat = false) {
    const char sep = dat ? ' ' : ',';
    std::ostringstream os;
    if (dat) {
        os << "# ";
    }
    os << "step" << sep << "time_ps";
    for (std::size_t m = 0; m < (r.p_site.empty() ? 0 : r.p_site[0].size()); ++m) {
        os << sep << "P" << m;
    }
    os << sep << "sector_mass";
    if (r.has_oracle()) {
        os << sep << "epsilon";
    }
    os << "\n";
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        os << k << sep << format_real(r.times[k], full);
        for (double p : r.p_site[k]) {
            os << sep << format_real(p, full);
        }
        os << sep << format_real(r.norm_in_sector[k], full);
        if (r.has_oracle()) {
            os << sep << format_real(r.epsilon[k], full);
        }
        os << "\n";
    }
    return os.str();
}

} // namespace qtedopa
