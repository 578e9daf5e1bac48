#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "c4/cli.hpp"

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("c4sweep");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = c4::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("factorizing subcommand") {
    std::string out;
    CHECK(run_cli({"factorizing", "--gamma", "0.6"}, &out) == 0);
    CHECK(out == "1.25\n");
}

TEST_CASE("measure c4 on the GHZ/W family") {
    std::string out;
    CHECK(run_cli({"measure", "c4", "--family", "ghz-w", "--p", "0.3"}, &out) == 0);
    CHECK(std::stod(out) == doctest::Approx(0.3).epsilon(1e-8));

    // pure-W two-site concurrence is 1/2, so the pair product is 1/4
    CHECK(run_cli({"measure", "c2prod", "--family", "ghz-w", "--p", "0"}, &out) == 0);
    CHECK(std::stod(out) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("usage errors exit with 2") {
    std::string err;
    CHECK(run_cli({"scan"}, nullptr, &err) == 2);             // missing --out
    CHECK(run_cli({"bogus-subcommand"}, nullptr, &err) == 2);
    CHECK(run_cli({"measure", "c4"}, nullptr, &err) == 2);    // neither family nor lambda
}

TEST_CASE("help succeeds") {
    std::string out;
    CHECK(run_cli({"--help"}, &out) == 0);
    CHECK(out.find("measure") != std::string::npos);
    CHECK(out.find("factorizing") != std::string::npos);
}

TEST_CASE("validate subcommand gates on the tolerance") {
    std::string out;
    CHECK(run_cli({"validate", "--gamma", "1", "--lambda", "0.5", "--n", "8", "--quad", "1,1,1"},
                  &out) == 0);
    CHECK(std::stod(out) <= 1e-8);
}

TEST_CASE("measure on the chain via both backends") {
    std::string ff, ed;
    CHECK(run_cli({"measure", "c4", "--gamma", "1", "--lambda", "1.2", "--n", "10", "--quad",
                   "1,1,1"},
                  &ff) == 0);
    CHECK(run_cli({"measure", "c4", "--gamma", "1", "--lambda", "1.2", "--n", "10", "--quad",
                   "1,1,1", "--backend", "ed"},
                  &ed) == 0);
    CHECK(std::stod(ff) == doctest::Approx(std::stod(ed)).epsilon(1e-7));

    std::string tau;
    CHECK(run_cli({"measure", "tau1", "--gamma", "1", "--lambda", "1.0", "--n", "64"}, &tau) == 0);
    CHECK(std::stod(tau) >= 0.0);
    CHECK(std::stod(tau) <= 1.0);
}

TEST_CASE("residual subcommand writes the two curves") {
    const std::string path = "/tmp/c4_cli_residual.csv";
    CHECK(run_cli({"residual", "--gamma", "1", "--lambda-start", "0.8", "--lambda-stop", "1.0",
                   "--lambda-step", "0.1", "--n", "64", "--out", path}) == 0);
    const std::string body = slurp(path);
    CHECK(body.find("lambda,gamma,tau1,sum_c2sq,residual") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("scan writes byte-identical CSV twice") {
    const std::string path1 = "/tmp/c4_cli_test_a.csv";
    const std::string path2 = "/tmp/c4_cli_test_b.csv";
    const std::vector<std::string> base = {"scan",     "--mode",  "mixture-rank2", "--family",
                                           "ghz-w",    "--p-start", "0",           "--p-stop",
                                           "1",        "--p-step", "0.2"};
    auto with_out = [&](const std::string& p) {
        auto v = base;
        v.push_back("--out");
        v.push_back(p);
        return v;
    };
    CHECK(run_cli(with_out(path1)) == 0);
    CHECK(run_cli(with_out(path2)) == 0);
    const std::string a = slurp(path1), b = slurp(path2);
    CHECK(!a.empty());
    CHECK(a == b);
    std::remove(path1.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("unwritable output paths are a numerical failure, not a crash") {
    std::string err;
    CHECK(run_cli({"scan", "--mode", "mixture-rank2", "--family", "ghz-w", "--p-step", "0.5",
                   "--out", "/nonexistent-dir/x.csv"},
                  nullptr, &err) == 1);
    CHECK(err.find("cannot open") != std::string::npos);
}

TEST_CASE("plan files seed scans and flags override them") {
    const std::string plan_path = "/tmp/c4_cli_test_plan.txt";
    {
        std::ofstream f(plan_path);
        f << "mode=mixture-rank2\nfamily=ghz-w\np_start=0\np_stop=1\np_step=0.5\n";
    }
    const std::string out_a = "/tmp/c4_cli_plan_a.csv";
    const std::string out_b = "/tmp/c4_cli_plan_b.csv";
    CHECK(run_cli({"scan", "--plan", plan_path, "--out", out_a}) == 0);
    CHECK(slurp(out_a).find("family=ghz-w") != std::string::npos);

    // flag overrides the family in the file
    CHECK(run_cli({"scan", "--plan", plan_path, "--family", "bellbell-w", "--out", out_b}) == 0);
    CHECK(slurp(out_b).find("family=bellbell-w") != std::string::npos);
    std::remove(plan_path.c_str());
    std::remove(out_a.c_str());
    std::remove(out_b.c_str());
}
