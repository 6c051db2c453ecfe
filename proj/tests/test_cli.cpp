// End-to-end CLI behavior: exit codes, determinism, verify parity
// Copyright (c) 2026 blockopt contributors
// Licensed under Apache 2.0

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

const char* kCli = BLOCKOPT_CLI_PATH;

struct CmdResult {
    int exit_code;
    std::string output;
};

CmdResult run_cmd(const std::string& args) {
    std::string out_path = std::string(::testing::TempDir()) + "cli_out.txt";
    std::string cmd = std::string(kCli) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_path.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& stem) { return std::string(::testing::TempDir()) + stem; }

}  // namespace

TEST(Cli, ListProblemsShowsTheLibrary) {
    CmdResult r = run_cmd("list-problems");
    EXPECT_EQ(r.exit_code, 0);
    for (const char* name :
         {"quadratic", "lasso-bcd", "consensus-lasso", "basis-pursuit", "rank-deficient"}) {
        EXPECT_NE(r.output.find(name), std::string::npos) << r.output;
    }
}

TEST(Cli, CertifiedRunExitsZeroOnPass) {
    std::string report = tmp("quad_report.json");
    CmdResult r = run_cmd("run-bcd --problem quadratic --certify --report " + report);
    EXPECT_EQ(r.exit_code, 0) << r.output;
    std::string text = slurp(report);
    EXPECT_NE(text.find("\"overall\": \"pass\""), std::string::npos);
    EXPECT_NE(text.find("sufficient_descent"), std::string::npos);
    std::remove(report.c_str());
}

TEST(Cli, TauGateExitsTwoAndCitesBound) {
    CmdResult r = run_cmd("run-admm --problem consensus-lasso --tau 1.7");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.output.find("1.6180339887"), std::string::npos) << r.output;
}

TEST(Cli, GammaGateExitsTwo) {
    CmdResult r = run_cmd("run-bcd --problem quadratic --gamma 0.9");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.output.find("gamma"), std::string::npos) << r.output;
}

TEST(Cli, MalformedProblemFileExitsTwoWithFieldName) {
    std::string path = tmp("bad_problem.json");
    std::ofstream(path) << R"({"algorithm":"admm","name":"bad",
        "f1":{"atom":"zero"},"f2":{"atom":"l1","lambda":1.0},
        "A1":{"rows":1,"cols":1,"data":[1.0]},
        "A2":{"rows":1,"cols":1,"data":[-1.0]},
        "b":[0.0],
        "config":{"rho":-1.0}})";
    CmdResult r = run_cmd("run-admm --problem " + path);
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.output.find("rho"), std::string::npos) << r.output;
    std::remove(path.c_str());
}

TEST(Cli, SameSeedGivesByteIdenticalTraces) {
    std::string t1 = tmp("det1.csv"), t2 = tmp("det2.csv");
    ASSERT_EQ(run_cmd("run-bcd --problem lasso-bcd --max-iters 300 --seed 7 --trace " + t1)
                  .exit_code,
              0);
    ASSERT_EQ(run_cmd("run-bcd --problem lasso-bcd --max-iters 300 --seed 7 --trace " + t2)
                  .exit_code,
              0);
    std::string a = slurp(t1), b = slurp(t2);
    ASSERT_FALSE(a.empty());
    EXPECT_EQ(a, b);
    std::remove(t1.c_str());
    std::remove(t2.c_str());
}

TEST(Cli, EnvSeedIsDefaultFlagsWin) {
    std::string t1 = tmp("env1.csv"), t2 = tmp("env2.csv"), t3 = tmp("env3.csv");
    setenv("BLOCKOPT_SEED", "1234", 1);
    ASSERT_EQ(run_cmd("run-bcd --problem quadratic --max-iters 20 --trace " + t1).exit_code, 0);
    unsetenv("BLOCKOPT_SEED");
    ASSERT_EQ(
        run_cmd("run-bcd --problem quadratic --max-iters 20 --seed 1234 --trace " + t2).exit_code,
        0);
    EXPECT_EQ(slurp(t1), slurp(t2));

    setenv("BLOCKOPT_SEED", "1234", 1);
    ASSERT_EQ(
        run_cmd("run-bcd --problem quadratic --max-iters 20 --seed 9 --trace " + t3).exit_code,
        0);
    unsetenv("BLOCKOPT_SEED");
    EXPECT_NE(slurp(t3), slurp(t1));
    std::remove(t1.c_str());
    std::remove(t2.c_str());
    std::remove(t3.c_str());
}

TEST(Cli, VerifyReproducesTheRunReport) {
    std::string trace = tmp("verify_trace.csv");
    std::string rep1 = tmp("verify_rep1.json");
    std::string rep2 = tmp("verify_rep2.json");
    ASSERT_EQ(run_cmd("run-bcd --problem quadratic --certify --trace " + trace + " --report " +
                      rep1)
                  .exit_code,
              0);
    ASSERT_EQ(run_cmd("verify --trace " + trace + " --problem quadratic --report " + rep2)
                  .exit_code,
              0);
    EXPECT_EQ(slurp(rep1), slurp(rep2));
    std::remove(trace.c_str());
    std::remove(rep1.c_str());
    std::remove(rep2.c_str());
}

TEST(Cli, CorruptedTraceRowIsDetectedWithItsIndex) {
    std::string trace = tmp("corrupt_trace.csv");
    ASSERT_EQ(run_cmd("run-bcd --problem quadratic --max-iters 50 --trace " + trace).exit_code,
              0);

    // bump psi at row 20 upward: sufficient descent must break at k=19 or 20
    std::ifstream in(trace);
    std::stringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("20,", 0) == 0) {
            std::size_t comma = line.find(',');
            std::size_t comma2 = line.find(',', comma + 1);
            out << "20,1.5" << line.substr(comma2) << "\n";
        } else {
            out << line << "\n";
        }
    }
    in.close();
    std::ofstream(trace) << out.str();

    CmdResult r = run_cmd("verify --trace " + trace + " --problem quadratic --checks descent");
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.output.find("fail"), std::string::npos);
    EXPECT_NE(r.output.find("19"), std::string::npos) << r.output;
    std::remove(trace.c_str());
}

TEST(Cli, VerifyKlOnQuadraticFitsExponentHalf) {
    std::string trace = tmp("kl_trace.csv");
    ASSERT_EQ(run_cmd("run-bcd --problem quadratic --trace " + trace).exit_code, 0);
    CmdResult r =
        run_cmd("verify --trace " + trace + " --problem quadratic --checks kl --theta 0.5");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("kl_inequality: pass"), std::string::npos) << r.output;
    std::remove(trace.c_str());
}

TEST(Cli, OracleProxPrintsBothRoutes) {
    CmdResult r = run_cmd("oracle prox --atom l1 --lambda 1 --t 1 --x 3");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.output.find("analytic: 2"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("grid:"), std::string::npos);
}

TEST(Cli, OracleGradReportsSmallError) {
    CmdResult r = run_cmd("oracle grad --builtin quadratic");
    EXPECT_EQ(r.exit_code, 0);
    double err = -1.0;
    std::size_t pos = r.output.find("error: ");
    ASSERT_NE(pos, std::string::npos) << r.output;
    err = std::strtod(r.output.c_str() + pos + 7, nullptr);
    EXPECT_GE(err, 0.0);
    EXPECT_LT(err, 1e-9);
}

TEST(Cli, UnsupportedOracleAtomExitsTwo) {
    CmdResult r = run_cmd("oracle prox --atom nuclear --x 1");
    EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, ConcurrentJobsCertifyIndependentProblems) {
    std::string trace_base = tmp("jobs.csv");
    CmdResult r = run_cmd("run-admm --problem consensus-lasso --problem basis-pursuit --jobs 2 "
                          "--certify --trace " + trace_base);
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("consensus-lasso"), std::string::npos);
    EXPECT_NE(r.output.find("basis-pursuit"), std::string::npos);
    std::string t1 = tmp("jobs-consensus-lasso.csv"), t2 = tmp("jobs-basis-pursuit.csv");
    EXPECT_FALSE(slurp(t1).empty());
    EXPECT_FALSE(slurp(t2).empty());
    std::remove(t1.c_str());
    std::remove(t2.c_str());
}

TEST(Cli, SolverFailureExitsThree) {
    // inner budget too small for the requested tolerance
    std::string path = tmp("stall_problem.json");
    std::ofstream(path) << R"({"algorithm":"admm","name":"stall",
        "f1":{"atom":"sq_l2","lambda":0.5},"f2":{"atom":"l1","lambda":0.4},
        "A1":{"rows":3,"cols":2,"data":[1.0,0.2,0.1,1.0,0.3,0.4]},
        "A2":{"rows":3,"cols":2,"data":[0.9,0.1,0.2,1.1,0.5,0.3]},
        "b":[1.0,0.5,0.2],
        "config":{"rho":1.0,"tau":1.0,"max_iters":50,"inner_tol":1e-13,"max_inner":2}})";
    CmdResult r = run_cmd("run-admm --problem " + path);
    EXPECT_EQ(r.exit_code, 3) << r.output;
    EXPECT_NE(r.output.find("inner solver"), std::string::npos) << r.output;
    std::remove(path.c_str());
}

TEST(Cli, DowngradedCertificateIsNotAPass) {
    // the rank-deficient built-in certifies Phi descent against two
    // references but its convergence check downgrades to inconclusive,
    // which must not count as a pass for the exit code
    CmdResult r = run_cmd("run-admm --problem rank-deficient --certify");
    EXPECT_EQ(r.exit_code, 1) << r.output;
    EXPECT_NE(r.output.find("phi_descent=pass"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("phi_descent_ref2=pass"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("kkt_convergence=inconclusive"), std::string::npos) << r.output;
}

TEST(Cli, ScalarKernelLaneRunsAndIsRecorded) {
    std::string report = tmp("scalar_report.json");
    setenv("BLOCKOPT_KERNELS", "scalar", 1);
    CmdResult r =
        run_cmd("run-bcd --problem quadratic --certify --max-iters 2000 --report " + report);
    unsetenv("BLOCKOPT_KERNELS");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    std::string text = slurp(report);
    EXPECT_NE(text.find("\"kernel_lane\": \"scalar\""), std::string::npos);
    std::remove(report.c_str());
}
