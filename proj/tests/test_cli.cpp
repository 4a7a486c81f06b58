#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int status = -1;
    std::string output;
};

// capture stdout+stderr and the exit status of a CLI invocation
RunResult run(const std::string& args) {
    const std::string cmd = std::string(ARCHVOL_CLI_PATH) + " " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
        result.output.append(buf, n);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

const std::string kClayton1 = "--generator '{\"family\":\"clayton\",\"theta\":1.0}'";
const std::string kIndependence = "--generator '{\"family\":\"independence\"}'";

} // namespace

TEST_CASE("witness command emits the bracketing JSON") {
    const RunResult r = run("witness " + kClayton1 + " --u 0.5 --v 0.3");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"N\":3") != std::string::npos);
    CHECK(r.output.find("\"f_prev\":0.3333333333333333") != std::string::npos);
    CHECK(r.output.find("\"f_at\":0.25") != std::string::npos);

    const RunResult csv =
        run("witness --format csv " + kClayton1 + " --u 0.5 --v 0.3");
    CHECK(csv.status == 0);
    CHECK(csv.output.find("u,v,N,f_prev,f_at") != std::string::npos);
}

TEST_CASE("power command prints f_n with 17 significant digits") {
    const RunResult r = run("power " + kIndependence + " --u 0.5 --n 3");
    CHECK(r.status == 0);
    CHECK(r.output.substr(0, 5) == "0.125");

    const RunResult t = run("power --trace --epsilon 1e-6 " + kIndependence +
                            " --u 0.5");
    CHECK(t.status == 0);
    CHECK(t.output.find("\"stop_reason\":\"below_epsilon\"") !=
          std::string::npos);
    CHECK(t.output.find("\"steps\":20") != std::string::npos);
}

TEST_CASE("witness at an idempotent is a usage error") {
    const RunResult r = run("witness " + kClayton1 + " --u 1.0 --v 0.5");
    CHECK(r.status == 1);
    CHECK(r.output.find("idempotent") != std::string::npos);
}

TEST_CASE("eval and volume commands") {
    const RunResult e = run("eval " + kClayton1 + " --point '[0.5,0.5]'");
    CHECK(e.status == 0);
    CHECK(std::fabs(std::stod(e.output) - 1.0 / 3.0) <= 1e-15);

    const RunResult v = run("volume " + kIndependence +
                            " --box '[[0.2,0.1],[0.5,0.4]]'");
    CHECK(v.status == 0);
    CHECK(std::fabs(std::stod(v.output) - 0.09) <= 1e-15);

    // d-increasing check: valid boxes pass...
    const RunResult ok = run(
        "volume " + kClayton1 +
        " --boxes '[[[0.1,0.1],[0.6,0.7]],[[0.3,0.2],[0.9,0.4]]]'");
    CHECK(ok.status == 0);
    CHECK(ok.output.find("0 violations") != std::string::npos);
}

TEST_CASE("partition command telescopes") {
    const RunResult r = run("partition " + kClayton1 +
                            " --u-cuts '[0,0.3,0.6]' --v-cuts '[0,0.3,0.6]'");
    CHECK(r.status == 0);
    CHECK(r.output.find("0.42857142857142") != std::string::npos);
}

TEST_CASE("margins command writes the table and summary") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const fs::path m1 = dir / "archvol_cli_margin1.csv";
    const fs::path m2 = dir / "archvol_cli_margin2.json";
    const fs::path table = dir / "archvol_cli_table.csv";
    {
        std::ofstream f(m1);
        f << "x,F\n0,0.5\n1,1.0\n";
        std::ofstream g(m2);
        g << R"({"jumps": [[0, 0.5], [1, 1.0]]})";
    }
    const RunResult r = run("margins " + kClayton1 + " --margin " +
                            m1.string() + " --margin " + m2.string() +
                            " --boxes 500 --table " + table.string());
    CHECK(r.status == 0);
    CHECK(r.output.find("\"certified\":true") != std::string::npos);
    CHECK(r.output.find("\"total_mass\":1") != std::string::npos);

    std::ifstream in(table);
    std::string header;
    std::getline(in, header);
    CHECK(header == "i0,i1,x0,x1,prob");
    std::string row;
    std::getline(in, row);
    CHECK(row.find("0,0,0,0,0.333333333333333") == 0);

    fs::remove(m1);
    fs::remove(m2);
    fs::remove(table);
}

TEST_CASE("verify passes on a reduced grid and is deterministic") {
    const std::string args =
        "verify --families clayton,independence --u-grid 9 --boxes 200 "
        "--partitions 2 --seed 42";
    const RunResult a = run(args);
    CHECK(a.status == 0);
    CHECK(a.output.find("ALL PASS") != std::string::npos);
    CHECK(a.output.find("FAIL") == std::string::npos);

    const RunResult b = run(args);
    CHECK(b.output == a.output); // seeded runs are byte-identical
}

TEST_CASE("verify passes on the full default grid") {
    const RunResult r = run("verify --seed 7");
    CHECK(r.status == 0);
    CHECK(r.output.find("ALL PASS") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("verify detects an injected phi(1) fault") {
    const RunResult r = run(
        "verify --families clayton --u-grid 5 --boxes 50 --partitions 1 "
        "--inject-fault phi-at-one");
    CHECK(r.status == 2);
    CHECK(r.output.find("FAIL generator/phi_at_one_is_zero") !=
          std::string::npos);
}

TEST_CASE("usage errors exit with status 1") {
    CHECK(run("witness " + kClayton1 + " --u 0.5").status == 1); // missing --v
    CHECK(run("frobnicate").status == 1);
    CHECK(run("eval --generator 'nonsense' --point '[0.5,0.5]'").status == 1);
    CHECK(run("eval " + kClayton1 + " --point '[0.5]'").status == 1);

    const RunResult r =
        run("witness --generator '{\"family\":\"gumbel\",\"theta\":0.2}' "
            "--u 0.5 --v 0.3");
    CHECK(r.status == 1);
    CHECK(r.output.find("theta >= 1") != std::string::npos);
}

TEST_CASE("ARCHVOL_NMAX bounds the witness search") {
    const RunResult r = run("--help");
    CHECK(r.status == 0);

    const std::string cmd = std::string("ARCHVOL_NMAX=10 ") + ARCHVOL_CLI_PATH +
                            " witness " + kClayton1 + " --u 0.5 --v 1e-6 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe))
        output.append(buf, n);
    const int rc = pclose(pipe);
    CHECK(WEXITSTATUS(rc) == 1);
    CHECK(output.find("exhausted") != std::string::npos);
}
