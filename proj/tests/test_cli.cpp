#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace {

std::string g_cli;

struct RunResult {
    int code;
    std::string out;  // stdout and stderr merged
};

RunResult run(const std::string& args) {
    std::string cmd = "\"" + g_cli + "\" " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed: " + cmd);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return {code, out};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("eval text output") {
    auto r = run("eval j --tau 2i");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "2.87496000000000000000000000000000000000"));
    CHECK(contains(r.out, "[base 10, precision 512 bits, guard 64]"));

    r = run("eval h --m 6 --n 1 --tau 2i");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "1.00000000000000000000000000000000000000"));
}

TEST_CASE("eval json at a cm point") {
    auto r = run("eval j --tau-cm -23 --prec 256 --format json");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["function"] == "j");
    CHECK(j["precision_bits"] == 256);
    CHECK(j["guard_bits"] == 64);
    std::string re = j["value_re"].get<std::string>();
    CHECK(re.substr(0, 20) == "-3.49322569996993336");
    CHECK(re ==
          "-3.4932256999699333682055047385473297033961841797256116567546438853173239419280709e+"
          "06");
}

TEST_CASE("eval argument validation") {
    CHECK(run("eval zeta --tau 2i").code == 2);
    CHECK(run("eval j --tau 2i --tau-cm -23").code == 2);
    CHECK(run("eval j").code == 2);
    CHECK(run("eval wp --tau 2i").code == 2);          // --v required
    CHECK(run("eval j --tau 0").code == 2);            // not in upper half plane
    CHECK(run("eval h --m 6 --tau 2i").code == 2);     // --n required
    CHECK(run("eval j --tau 2i --format yaml").code == 2);
    CHECK(run("eval siegel --v 1,4,12 --tau 2i").code == 0);
}

TEST_CASE("verify exit codes and certificates") {
    std::string bad = temp_path("wunits_cli_c43.json");
    auto r = run("verify -d -23 -m 4 -n 3 -o " + bad);
    CHECK(r.code == 2);
    CHECK(contains(r.out, "invalid instance"));
    CHECK(contains(r.out, "hypothesis (i)"));
    auto cert = load_json(bad);
    CHECK(cert["verdict"] == "fail");
    CHECK(cert["ell"] == 0);
    CHECK(cert["checks"].size() == 2);
    CHECK(cert["checks"][0]["name"] == "hypothesis_i");
    CHECK(cert["checks"][0]["status"] == "fail");
    std::remove(bad.c_str());

    std::string ok = temp_path("wunits_cli_c61.json");
    r = run("verify -d -23 -m 6 -n 1 -o " + ok);
    CHECK(r.code == 0);
    auto trivial = load_json(ok);
    CHECK(trivial["verdict"] == "pass");
    CHECK(trivial["ell"] == 1);
    CHECK(trivial["galois_reps"] == nlohmann::json::array({1}));
    CHECK(trivial["format_version"] == "1");
    CHECK(trivial["inputs"]["d_K"] == -23);
    std::remove(ok.c_str());

    CHECK(run("verify -m 6 -n 1").code == 2);                  // -d required
    CHECK(run("verify -d -23 -m 6 -n 1 --format csv").code == 2);
}

TEST_CASE("scan skips inadmissible rows") {
    auto r = run("scan --d -7 --m 6 --n 1 --prec 256");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "d,m,n,status,ell,verdict,max_residual,detail"));
    CHECK(contains(r.out, "-7,6,1,skipped"));
    CHECK(contains(r.out, "hypothesis (ii)"));
}

TEST_CASE("selftest subcommand") {
    auto r = run("selftest --suite wcount");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "PASS wcount"));
    CHECK(run("selftest --suite nosuchsuite").code == 2);
}

TEST_CASE("precision precedence") {
    std::string cfg = temp_path("wunits_cli_prec.conf");
    {
        std::ofstream out(cfg);
        out << "prec = 256\n";
    }
    auto r = run("eval j --tau 2i --config " + cfg + " --format json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["precision_bits"] == 256);

    // explicit flag beats the config file
    r = run("eval j --tau 2i --config " + cfg + " --prec 192 --format json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["precision_bits"] == 192);
    std::remove(cfg.c_str());

    // environment fallback
    std::string cmd = "env WUNITS_PREC=320 \"" + g_cli + "\" eval j --tau 2i --format json 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    pclose(p);
    CHECK(nlohmann::json::parse(out)["precision_bits"] == 320);
}

TEST_CASE("unknown command") {
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
}

int main(int argc, char** argv) {
    if (argc < 2 || argv[1][0] == '-') {
        std::fprintf(stderr, "usage: test_cli <wunits-binary> [doctest options]\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx(argc - 1, argv + 1);
    return ctx.run();
}
