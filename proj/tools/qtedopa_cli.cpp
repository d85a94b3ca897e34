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

// Command-line front end: chain coefficients, resource estimates, Trotter
// dynamics, QASM export and commutator norms from one config file.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtedopa/config.hpp"
#include "qtedopa/dynamics.hpp"
#include "qtedopa/report.hpp"
#include "qtedopa/trotter.hpp"

namespace {

using namespace qtedopa;

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output;
    bool full_precision = false;
};

void add_common(CLI::App &sub, Common &c) {
    sub.add_option("-c,--config", c.config_path, "Config file (sectioned key = value)");
    sub.add_option("--set", c.overrides, "Override one key, e.g. --set chain.d=4")
        ->type_name("KEY=VALUE");
    sub.add_option("-o,--output", c.output, "Output file (default: output.path or stdout)");
    sub.add_flag("--full-precision", c.full_precision, "Write 17 significant digits");
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot open config file '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunConfig load(const Common &c, std::vector<std::string> extra = {}) {
    RunConfig cfg = c.config_path.empty() ? parse_config("") : parse_config(read_file(c.config_path));
    std::vector<std::string> all = c.overrides;
    all.insert(all.end(), extra.begin(), extra.end());
    if (c.full_precision) {
        all.emplace_back("output.full_precision=true");
    }
    if (!c.output.empty()) {
        all.push_back("output.path=" + c.output);
    }
    if (!all.empty()) {
        apply_overrides(cfg, all);
    }
    return cfg;
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
        fail(ErrorCode::Io, "cannot write '" + path + "'");
    }
}

void apply_thread_env() {
    const char *env = std::getenv("QTEDOPA_NUM_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    char *end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 0) {
        fail(ErrorCode::InvalidInput, "QTEDOPA_NUM_THREADS must be a non-negative integer");
    }
    set_thread_count(static_cast<std::size_t>(n));
}

int report_error(ErrorCode code, const std::string &message) {
    std::string flat = message;
    for (char &ch : flat) {
        if (ch == '\n' || ch == '\r') {
            ch = ' ';
        }
    }
    std::cerr << "error: code=" << to_string(code) << " exit=" << static_cast<int>(code)
              << " message=" << flat << '\n';
    return static_cast<int>(code);
}

void cmd_chain_coeffs(const Common &c) {
    const RunConfig cfg = load(c);
    const auto &d = cfg.dynamics;
    ChainOptions opts;
    opts.pi_normalization = d.bath.pi_normalization;
    const auto coeffs = chain_coefficients(d.bath.density(), d.chain_length, opts);
    write_text(cfg.output.path, comment_header("chain-coeffs", cfg) +
                                    chain_csv(coeffs, cfg.output.full_precision));
}

void cmd_resources(const Common &c, const std::string &encoding) {
    const RunConfig cfg = load(c);
    const auto &d = cfg.dynamics;
    const std::size_t chains =
        cfg.resources.n_chains ? cfg.resources.n_chains : d.system.n_sites();
    const std::size_t sys =
        cfg.resources.system_qubits ? cfg.resources.system_qubits : d.system.n_sites();
    std::vector<ResourceRow> rows;
    for (const auto scheme : {EncodingScheme::Binary, EncodingScheme::Unary}) {
        if (encoding != "both" && encoding != to_string(scheme)) {
            continue;
        }
        rows.push_back({scheme, estimate_resources(d.d, d.chain_length, d.n_steps, scheme, chains, sys)});
    }
    write_text(cfg.output.path, comment_header("resources", cfg) +
                                    resources_csv(rows, cfg.output.full_precision));
}

void cmd_simulate(const Common &c, bool oracle, const std::string &mode) {
    std::vector<std::string> extra;
    if (oracle) {
        extra.emplace_back("oracle.enabled=true");
    }
    if (!mode.empty()) {
        extra.push_back("oracle.mode=" + mode);
    }
    const RunConfig cfg = load(c, extra);
    const DynamicsResult r = run_dynamics(cfg.effective_dynamics());
    std::ostringstream meta;
    meta << "# qubits = " << r.n_qubits << "\n# cnot_gates = " << r.cnot_count
         << "\n# dropped_constant_cm1 = " << format_real(r.dropped_constant, cfg.output.full_precision)
         << "\n";
    if (r.has_oracle()) {
        meta << "# oracle_qubits = " << r.oracle_qubits << "\n";
    }
    const std::string header = comment_header("simulate", cfg) + meta.str();
    write_text(cfg.output.path, header + dynamics_table(r, cfg.output.full_precision));
    if (!cfg.output.dat_path.empty()) {
        write_text(cfg.output.dat_path, header + dynamics_table(r, cfg.output.full_precision, true));
    }
}

HamiltonianTerms terms_for(const RunConfig &cfg, ChainCoefficients *chain_out = nullptr) {
    const auto &d = cfg.dynamics;
    const auto enc = BosonEncoding::make(d.encoding, d.d);
    const auto layout = make_layout(d.system.n_sites(), d.chain_length, enc);
    ChainOptions opts;
    opts.pi_normalization = d.bath.pi_normalization;
    const auto chain = chain_coefficients(d.bath.density(), d.chain_length, opts);
    if (chain_out != nullptr) {
        *chain_out = chain;
    }
    return assemble(d.system, {chain}, layout);
}

void cmd_export_qasm(const Common &c) {
    const RunConfig cfg = load(c);
    const auto &d = cfg.dynamics;
    const Circuit circuit = build_trotter_circuit(terms_for(cfg), d.dt_ps, d.n_steps);
    write_text(cfg.output.path, to_qasm(circuit, config_echo("export-qasm", cfg)));
}

void cmd_commutator(const Common &c) {
    const RunConfig cfg = load(c);
    const auto &d = cfg.dynamics;
    const HamiltonianTerms terms = terms_for(cfg);
    const double alpha = commutator_norm(terms);
    const double horizon = d.dt_ps * static_cast<double>(d.n_steps);
    nlohmann::ordered_json j;
    j["tool"] = "qtedopa";
    j["version"] = version;
    j["subcommand"] = "commutator";
    j["effective_config"] = effective_config(cfg);
    j["n_qubits"] = terms.n_qubits;
    j["n_groups"] = terms.groups.size();
    j["alpha_comm_cm2"] = alpha;
    j["horizon_ps"] = horizon;
    j["n_steps"] = d.n_steps;
    j["trotter_error_bound"] = trotter_error_bound(alpha, horizon, d.n_steps);
    write_text(cfg.output.path, j.dump(2) + "\n");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Chain-mapped open-system dynamics: coefficients, circuits and resources"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("qtedopa ") + qtedopa::version);

    Common chain_c, res_c, sim_c, qasm_c, comm_c;
    auto *chain = app.add_subcommand("chain-coeffs", "Chain coefficients t0, w_n, t_{n+1,n} as CSV");
    add_common(*chain, chain_c);

    auto *res = app.add_subcommand("resources", "Qubit and CNOT counts for the chain evolution");
    add_common(*res, res_c);
    std::string encoding = "both";
    res->add_option("--encoding", encoding, "binary, unary or both")
        ->check(CLI::IsMember({"both", "binary", "unary"}));

    auto *sim = app.add_subcommand("simulate", "Trotter dynamics of the site populations");
    add_common(*sim, sim_c);
    bool oracle = false;
    std::string mode;
    sim->add_flag("--oracle", oracle, "Add the error column against an exact propagator");
    sim->add_option("--oracle-mode", mode, "same-d, higher-d or long-chain");

    auto *qasm = app.add_subcommand("export-qasm", "Trotter circuit as OpenQASM 2.0");
    add_common(*qasm, qasm_c);

    auto *comm = app.add_subcommand("commutator", "Layer commutator norm and Trotter bound as JSON");
    add_common(*comm, comm_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return report_error(qtedopa::ErrorCode::ParseError, e.what());
    }

    try {
        apply_thread_env();
        if (chain->parsed()) {
            cmd_chain_coeffs(chain_c);
        } else if (res->parsed()) {
            cmd_resources(res_c, encoding);
        } else if (sim->parsed()) {
            cmd_simulate(sim_c, oracle, mode);
        } else if (qasm->parsed()) {
            cmd_export_qasm(qasm_c);
        } else if (comm->parsed()) {
            cmd_commutator(comm_c);
        }
    } catch (const qtedopa::Error &e) {
        return report_error(e.code(), e.what());
    } catch (const std::exception &e) {
        return report_error(qtedopa::ErrorCode::NumericalFailure, e.what());
    }
    return 0;
}
