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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qtedopa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(const std::string &args) {
        const fs::path out = dir_ / "stdout";
        const fs::path err = dir_ / "stderr";
        const std::string cmd = std::string("\"") + QTEDOPA_CLI_PATH + "\" " + args + " >\"" +
                                out.string() + "\" 2>\"" + err.string() + "\"";
        const int status = std::system(cmd.c_str());
        Outcome r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    fs::path write(const std::string &name, const std::string &text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }

    fs::path dir_;
};

std::vector<std::string> data_lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        if (!line.empty() && line[0] != '#') {
            out.push_back(line);
        }
    }
    return out;
}

std::vector<std::string> fields(const std::string &line, char sep = ',') {
    std::vector<std::string> out;
    std::istringstream is(line);
    for (std::string f; std::getline(is, f, sep);) {
        out.push_back(f);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

} // namespace

TEST_F(Cli, ChainCoefficientsTable) {
    const Outcome r = run("chain-coeffs");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("# qtedopa ", 0), 0u);
    const auto rows = data_lines(r.out);
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(rows[0], "n,w_n_cm1,t_np1_n_cm1");
    EXPECT_NEAR(std::stod(fields(rows[1])[2]), 70.693, 0.01);
    const double w[] = {199.546, 385.144, 495.814, 514.134, 507.848};
    const double t[] = {139.968, 222.932, 253.558, 253.633};
    for (std::size_t n = 0; n < 5; ++n) {
        const auto f = fields(rows[n + 2]);
        ASSERT_EQ(f.size(), 3u) << rows[n + 2];
        EXPECT_EQ(f[0], std::to_string(n));
        EXPECT_NEAR(std::stod(f[1]), w[n], 0.01);
        if (n < 4) {
            EXPECT_NEAR(std::stod(f[2]), t[n], 0.01);
        } else {
            EXPECT_TRUE(f[2].empty());
        }
    }
}

TEST_F(Cli, ResourcesQubitColumn) {
    const Outcome r = run("resources --set chain.d=8 --set chain.length=49 --set evolution.n_steps=188");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = data_lines(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(fields(rows[1])[0], "binary");
    EXPECT_EQ(fields(rows[1])[1], "296");
    EXPECT_EQ(fields(rows[2])[0], "unary");
    EXPECT_EQ(fields(rows[2])[1], "786");
    const Outcome only = run("resources --encoding unary");
    ASSERT_EQ(only.code, 0) << only.err;
    EXPECT_EQ(data_lines(only.out).size(), 2u);
}

TEST_F(Cli, SimulateWithOracleAndDatMirror) {
    const fs::path cfg = write("run.cfg", "[evolution]\nn_steps = 3\n[oracle]\nenabled = true\n");
    const fs::path csv = dir_ / "out.csv";
    const fs::path dat = dir_ / "out.dat";
    const Outcome r = run("simulate -c \"" + cfg.string() + "\" -o \"" + csv.string() +
                      "\" --set output.dat_path=" + dat.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = data_lines(slurp(csv));
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], "step,time_ps,P0,P1,sector_mass,epsilon");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        EXPECT_LT(std::stod(fields(rows[k])[5]), 0.05);
    }
    const std::string d = slurp(dat);
    EXPECT_NE(d.find("# step time_ps P0 P1 sector_mass epsilon\n"), std::string::npos);
    EXPECT_NE(d.find("# n_steps = 3\n"), std::string::npos);
}

TEST_F(Cli, RerunsAreByteIdentical) {
    const Outcome a = run("simulate --set evolution.n_steps=4 --full-precision");
    const Outcome b = run("simulate --set evolution.n_steps=4 --full-precision");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const Outcome q1 = run("export-qasm --set chain.length=2 --set evolution.n_steps=2");
    const Outcome q2 = run("export-qasm --set chain.length=2 --set evolution.n_steps=2");
    ASSERT_EQ(q1.code, 0) << q1.err;
    EXPECT_EQ(q1.out, q2.out);
    EXPECT_NE(q1.out.find("OPENQASM 2.0;\n"), std::string::npos);
    EXPECT_EQ(q1.out.rfind("// qtedopa ", 0), 0u);
}

TEST_F(Cli, CommutatorJson) {
    const Outcome r = run("commutator --set chain.length=2");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"alpha_comm_cm2\""), std::string::npos);
    EXPECT_NE(r.out.find("\"trotter_error_bound\""), std::string::npos);
    EXPECT_NE(r.out.find("\"n_qubits\": 6"), std::string::npos);
}

TEST_F(Cli, ErrorsUseDocumentedExitCodes) {
    const Outcome bad_d = run("resources --set chain.d=3");
    EXPECT_EQ(bad_d.code, 5);
    EXPECT_EQ(bad_d.err.rfind("error: code=parse-error exit=5 message=", 0), 0u) << bad_d.err;
    EXPECT_NE(bad_d.err.find("power of two"), std::string::npos);
    EXPECT_TRUE(bad_d.out.empty());

    const fs::path cfg = write("bad.cfg", "[chain]\nfoo = 1\n");
    const Outcome unknown = run("chain-coeffs -c \"" + cfg.string() + "\"");
    EXPECT_EQ(unknown.code, 5);
    EXPECT_NE(unknown.err.find("line 2: unknown key 'chain.foo'"), std::string::npos) << unknown.err;

    const Outcome missing = run("chain-coeffs -c \"" + (dir_ / "missing.cfg").string() + "\"");
    EXPECT_EQ(missing.code, 6);
    EXPECT_EQ(missing.err.rfind("error: code=io exit=6", 0), 0u) << missing.err;

    const Outcome too_big = run("simulate --set oracle.enabled=true --set chain.length=7");
    EXPECT_EQ(too_big.code, 4);
    EXPECT_NE(too_big.err.find("code=unsupported-size"), std::string::npos) << too_big.err;

    EXPECT_EQ(run("").code, 5);
    EXPECT_EQ(run("simulate --no-such-flag").code, 5);
}

TEST_F(Cli, VersionFlag) {
    const Outcome r = run("--version");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}
