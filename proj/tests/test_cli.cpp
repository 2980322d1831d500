#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("FIBSEQ_CLI");
    REQUIRE_MESSAGE(p != nullptr, "FIBSEQ_CLI must point at the built binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("fib subcommand") {
    auto r = run("fib --n 6");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"] == "13");
    CHECK(j["config"]["subcommand"] == "fib");
}

TEST_CASE("transform subcommand matches the unit example") {
    auto r = run(R"(transform --x '{"prefix":["1"],"tail":{"kind":"zero"}}' --n 2)");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"] == nlohmann::json::array({"1", "-2", "0"}));
}

TEST_CASE("identities subcommand aggregates checks") {
    auto r = run("identities --cassini-max 100 --prefix-sum-max 100 --inverse-check 16");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["cassini"] == "ok");
    CHECK(j["result"]["prefix_sum"] == "ok");
    CHECK(j["result"]["inverse_identity"] == "ok");
}

TEST_CASE("byte-identical output for identical invocations") {
    const std::string args =
        R"(paranorm --x '{"prefix":["1","-1"],"tail":{"kind":"zero"}}' --p 1 --kind g --trunc 32)";
    auto r1 = run(args);
    auto r2 = run(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    auto j = nlohmann::json::parse(r1.out);
    CHECK(j["result"]["paranorm"]["precision_bits"] == 128);
    const std::string val = j["result"]["paranorm"]["value"].get<std::string>();
    CHECK(val.substr(0, 3) == "2.5");
}

TEST_CASE("schema violations exit 2 with structured errors") {
    auto bad = run(R"(transform --x '{"prefix":["2/0"],"tail":{"kind":"zero"}}' --n 2)");
    CHECK(bad.exit_code == 2);
    auto unsupported = run("matmap --builtin fhat --source lp --target linf --p 1 --q 1");
    CHECK(unsupported.exit_code == 2);
    CHECK(run("fib --n -1").exit_code == 2);
    CHECK(run("fib --n 5 --precision 16").exit_code == 2);
    CHECK(run(R"(classify --x '{"prefix":[]}' --p '-1' --space c0 --layer fib)").exit_code == 2);
}

TEST_CASE("strict flag maps inconclusive to exit 1") {
    // Decaying exponents make the B^{1/p_k} weights unbounded, so the
    // residual-vanishing set has no certificate for a geometric tail.
    auto r = run(
        R"(dual --a '{"prefix":[],"tail":{"kind":"geometric","c":"1","r":"1/4"}}' --p '{"prefix":[],"tail":{"kind":"geometric","c":"1","r":"1/2"}}' --set f10 --trunc 24 --strict)");
    CHECK(r.exit_code == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["verdict"]["status"] == "inconclusive");
}

TEST_CASE("classify subcommand reports membership JSON") {
    auto r = run(
        R"(classify --x '{"prefix":["1"],"tail":{"kind":"zero"}}' --p 1 --space c0 --layer fib --trunc 32)");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["verdict"]["status"] == "holds_at_truncation");
    CHECK(j["result"]["space"] == "c0_fib");
}
