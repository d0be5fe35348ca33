// End-to-end checks of the CLI binary: exit codes, determinism, format
// parity.  The binary path arrives via GAMMASEQ_CLI_PATH.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(GAMMASEQ_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string csv_cell(const std::string& csv, std::size_t row, std::size_t col) {
    std::size_t pos = 0;
    for (std::size_t r = 0; r < row; ++r) pos = csv.find('\n', pos) + 1;
    for (std::size_t c = 0; c < col; ++c) pos = csv.find(',', pos) + 1;
    const std::size_t end = std::min(csv.find(',', pos), csv.find('\n', pos));
    return csv.substr(pos, end - pos);
}

}  // namespace

TEST_CASE("eval: exact anchors") {
    const RunResult g1 = run("eval --x 1 --fields G");
    CHECK(g1.exit_code == 0);
    CHECK(csv_cell(g1.out, 1, 3) == "1");
    const RunResult g2 = run("eval --x 2 --fields G");
    CHECK(csv_cell(g2.out, 1, 3) == "1.4142135623730951");
    const RunResult gp = run("eval --x 10000 --fields Gp");
    const double v = std::strtod(csv_cell(gp.out, 1, 3).c_str(), nullptr);
    CHECK(std::fabs(v - 0.36787944117144233) < 1e-3);
}

TEST_CASE("exit code 2 on usage and domain errors") {
    CHECK(run("eval --x nope --fields G").exit_code == 2);
    CHECK(run("eval --x -3 --fields G").exit_code == 2);
    CHECK(run("eval --x 1 --fields bogus").exit_code == 2);
    CHECK(run("na --a 0.5").exit_code == 2);
    CHECK(run("na --a 1").exit_code == 2);
    CHECK(run("verify nosuchsuite").exit_code == 2);
    CHECK(run("seq sigma 5 2").exit_code == 2);
    CHECK(run("seq bogus 1 2").exit_code == 2);
    CHECK(run("nosuchcommand").exit_code == 2);
}

TEST_CASE("sequences through the pipe") {
    const RunResult d = run("seq D 1 1");
    CHECK(d.exit_code == 0);
    CHECK(csv_cell(d.out, 1, 2) == "1");

    const RunResult s = run("seq S 1 1");
    const double s1 = std::strtod(csv_cell(s.out, 1, 2).c_str(), nullptr);
    CHECK(s1 < 1.15);
    CHECK(s1 > 1.0);

    const RunResult sig = run("seq sigma 1 3");
    const double v1 = std::strtod(csv_cell(sig.out, 1, 2).c_str(), nullptr);
    const double v2 = std::strtod(csv_cell(sig.out, 2, 2).c_str(), nullptr);
    const double v3 = std::strtod(csv_cell(sig.out, 3, 2).c_str(), nullptr);
    CHECK(v1 > v2);
    CHECK(v2 > v3);
}

TEST_CASE("roots and na") {
    const RunResult roots = run("roots");
    CHECK(roots.exit_code == 0);
    const double a_lo = std::strtod(csv_cell(roots.out, 1, 2).c_str(), nullptr);
    const double a_hi = std::strtod(csv_cell(roots.out, 1, 3).c_str(), nullptr);
    CHECK(a_lo > 7.61316);
    CHECK(a_hi < 7.61317);
    const double c_lo = std::strtod(csv_cell(roots.out, 2, 2).c_str(), nullptr);
    const double c_hi = std::strtod(csv_cell(roots.out, 2, 3).c_str(), nullptr);
    CHECK(c_lo > 17.11650);
    CHECK(c_hi < 17.11651);
    CHECK(run("roots --tol 0.5").exit_code == 0);

    CHECK(csv_cell(run("na --a 2").out, 1, 2) == "4");
    CHECK(csv_cell(run("na --a 1.4142135623730951").out, 1, 2) == "2");
    CHECK(csv_cell(run("na --a 1.4142135623730951 --exact").out, 1, 2) == "3");
}

TEST_CASE("verify suites exit clean") {
    CHECK(run("verify euler --m-max 2000").exit_code == 0);
    CHECK(run("verify monotone --n-max 300").exit_code == 0);
    CHECK(run("verify bounds").exit_code == 0);
    CHECK(run("verify bounds --threads 2").exit_code == 0);
}

TEST_CASE("byte-identical reruns and format parity") {
    const std::string invocation = "eval --x 3.5 --fields G,Gp,g,h,d";
    const RunResult first = run(invocation);
    const RunResult second = run(invocation);
    CHECK(first.out == second.out);
    CHECK(first.out.find('\r') == std::string::npos);

    const RunResult parallel1 = run("verify bounds");
    const RunResult parallel2 = run("verify bounds --threads 2");
    CHECK(parallel1.out == parallel2.out);

    // identical key sets and values across formats
    const RunResult js = run(invocation + " --format json");
    const auto parsed = nlohmann::ordered_json::parse(js.out);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 5);
    std::string header = first.out.substr(0, first.out.find('\n'));
    std::string rebuilt = "kind";
    for (auto it = parsed[0].begin(); it != parsed[0].end(); ++it)
        if (it.key() != "kind") rebuilt += "," + it.key();
    CHECK(header == rebuilt);
    CHECK(parsed[0]["value"].get<double>() ==
          std::strtod(csv_cell(first.out, 1, 3).c_str(), nullptr));
}

TEST_CASE("meta header is opt-in and marked") {
    const RunResult plain = run("seq D 1 2");
    CHECK(plain.out.rfind("kind,", 0) == 0);
    const RunResult meta = run("seq D 1 2 --meta");
    CHECK(meta.out.rfind("# gammaseq", 0) == 0);
}

TEST_CASE("environment configuration is honored but flags win") {
    const std::string base = std::string(GAMMASEQ_CLI_PATH) + " eval --x 1 --fields g";
    RunResult env_only;
    {
        FILE* pipe = popen(("GAMMASEQ_TARGET_ERR=1e-6 " + base + " 2>/dev/null").c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 4096> buf;
        std::size_t got = 0;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            env_only.out.append(buf.data(), got);
        env_only.exit_code = WEXITSTATUS(pclose(pipe));
    }
    CHECK(env_only.exit_code == 0);
    const double env_err = std::strtod(csv_cell(env_only.out, 1, 4).c_str(), nullptr);
    const RunResult strict = run("eval --x 1 --fields g --target-err 1e-13");
    const double strict_err = std::strtod(csv_cell(strict.out, 1, 4).c_str(), nullptr);
    CHECK(env_err > strict_err);  // looser target -> visibly looser radius

    // a flag beats the environment in the same invocation
    RunResult both;
    {
        FILE* pipe = popen(("GAMMASEQ_TARGET_ERR=1e-6 " + base +
                            " --target-err 1e-13 2>/dev/null")
                               .c_str(),
                           "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 4096> buf;
        std::size_t got = 0;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            both.out.append(buf.data(), got);
        both.exit_code = WEXITSTATUS(pclose(pipe));
    }
    CHECK(both.exit_code == 0);
    CHECK(std::strtod(csv_cell(both.out, 1, 4).c_str(), nullptr) == strict_err);

    // a starved term budget from the environment surfaces as a larger
    // radius on the series-backed field
    RunResult starved;
    {
        const std::string cmd = std::string("GAMMASEQ_MAX_TERMS=64 ") + GAMMASEQ_CLI_PATH +
                                " eval --x 1 --fields fpp 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 4096> buf;
        std::size_t got = 0;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            starved.out.append(buf.data(), got);
        starved.exit_code = WEXITSTATUS(pclose(pipe));
    }
    CHECK(starved.exit_code == 0);
    const double starved_err = std::strtod(csv_cell(starved.out, 1, 4).c_str(), nullptr);
    const RunResult normal = run("eval --x 1 --fields fpp");
    CHECK(starved_err > std::strtod(csv_cell(normal.out, 1, 4).c_str(), nullptr) * 100.0);
}
