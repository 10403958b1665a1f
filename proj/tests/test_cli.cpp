#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fracstab/stability.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACSTAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("classify emits a verdict object") {
    // Coefficient analog of the neuron linearization near v* = 0: the
    // verdict and the independent root count agree on instability.
    const RunResult r = run_cli(
        "classify --a11 1 --a12 -1 --a21 0.08 --a22 -0.064 --q1 0.58 --q2 0.8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"kind\":\"UnstableAtOrders\"") != std::string::npos);
    CHECK(r.out.find("\"rule\":\"Cor-2b\"") != std::string::npos);
    CHECK(r.out.find("\"decay_order\":null") != std::string::npos);

    const RunResult count = run_cli("rhp-count --a -1 --b 0.064 --c 0.016 --q1 0.58 --q2 0.8");
    CHECK(count.exit_code == 0);
    CHECK(count.out.find("\"count\":2") != std::string::npos);

    const RunResult stable = run_cli(
        "classify --a11 0.36 --a12 -1 --a21 0.08 --a22 -0.064 --q1 0.58 --q2 0.8");
    CHECK(stable.exit_code == 0);
    CHECK(stable.out.find("\"kind\":\"StableAtOrders\"") != std::string::npos);
    CHECK(stable.out.find("\"decay_order\":0.58") != std::string::npos);
}

TEST_CASE("csv artifacts have a header and the requested row count") {
    const RunResult r = run_cli("curve --c 4 --q1 0.4 --q2 0.8 --omega-min 0.05 --omega-max 20 --n 400");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 401);
    CHECK(lines[0] == "omega,b,a");
    CHECK(lines[1].rfind("0.05,", 0) == 0);
    CHECK(lines.back().rfind("20,", 0) == 0);
    for (const auto& line : lines) {
        CHECK(line.back() != ',');
    }
}

TEST_CASE("identical invocations produce byte-identical artifacts") {
    const std::string args = "curve --c 4 --q1 0.4 --q2 0.8 --omega-min 0.05 --omega-max 20 --n 50";
    CHECK(run_cli(args).out == run_cli(args).out);
    const std::string st = "selftest --systems 40 --seed 7";
    CHECK(run_cli(st).out == run_cli(st).out);
}

TEST_CASE("regions labels agree with the classifier") {
    const RunResult r = run_cli(
        "regions --c 4 --a-min -8 --a-max 4 --b-min -8 --b-max 4 --n 9");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 1 + 9 * 9);
    CHECK(lines[0] == "a,b,label");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string a_txt, b_txt, label;
        std::getline(row, a_txt, ',');
        std::getline(row, b_txt, ',');
        std::getline(row, label, ',');
        const double a = std::stod(a_txt);
        const double b = std::stod(b_txt);
        const auto verdict = fracstab::classify_coeffs(a, b, 4.0, 0.3, 0.7);
        if (label == "stable-all") {
            CHECK(verdict.kind == fracstab::VerdictKind::StableAllOrders);
        } else if (label == "unstable-all") {
            CHECK(verdict.kind == fracstab::VerdictKind::UnstableAllOrders);
        } else {
            CHECK(label == "order-dependent");
        }
    }
}

TEST_CASE("hopf trace contains the reference threshold") {
    const RunResult r = run_cli("hopf --r 0.08 --c 0.7 --d 0.8 --I 1.24567 --grid 50");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() > 1);
    CHECK(lines[0] == "q1,q2");
    bool anchor = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream row(lines[i]);
        std::string q1_txt, q2_txt;
        std::getline(row, q1_txt, ',');
        std::getline(row, q2_txt, ',');
        const double q1 = std::stod(q1_txt);
        const double q2 = std::stod(q2_txt);
        CHECK(q1 < q2);
        if (std::abs(q1 - 0.599) < 0.01 && std::abs(q2 - 0.8) < 1e-9) {
            anchor = true;
        }
    }
    CHECK(anchor);
}

TEST_CASE("branch and simulate emit well-formed tables") {
    const RunResult branch = run_cli("branch --r 0.08 --c 0.7 --d 0.8 --I-min 0 --I-max 2 --n 21");
    CHECK(branch.exit_code == 0);
    const auto blines = lines_of(branch.out);
    REQUIRE(blines.size() == 22);
    CHECK(blines[0] == "I,v_star,order_robust");

    const RunResult sim = run_cli(
        "simulate --r 0.08 --c 0.7 --d 0.8 --I 1.24567 --q1 0.63 --q2 0.8 "
        "--t-end 2 --step 0.01 --v0 0.81 --w0 1.875");
    CHECK(sim.exit_code == 0);
    const auto slines = lines_of(sim.out);
    REQUIRE(slines.size() == 202);
    CHECK(slines[0] == "t,v,w");
    CHECK(slines[1].rfind("0,", 0) == 0);

    // --step defaults to the reproduction grid spacing 0.01
    const RunResult defaulted = run_cli(
        "simulate --r 0.08 --c 0.7 --d 0.8 --I 1.24567 --q1 0.63 --q2 0.8 "
        "--t-end 2 --v0 0.81 --w0 1.875");
    CHECK(lines_of(defaulted.out).size() == 202);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("classify --help").exit_code == 0);
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run_cli("classify --a11 1 --a12 -1 --a21 0.08 --a22 -0.064 --q1 0.58").exit_code == 2);
    CHECK(run_cli("curve --c 4 --q1 0.4 --q2 0.8 --omega-min -1 --omega-max 20 --n 10").exit_code == 2);
    CHECK(run_cli("curve --c 4 --q1 0.9 --q2 0.4 --omega-min 1 --omega-max 2 --n 10").exit_code == 2);
    CHECK(run_cli("rhp-count --a 1 --b 1 --c 0 --q1 0.4 --q2 0.8").exit_code == 2);
    CHECK(run_cli("nonsense-command").exit_code == 2);
}

TEST_CASE("boundary roots are a numerical failure, exit code 3") {
    // (b, a) exactly on the critical curve for c = 4, q = (0.4, 0.8).
    const RunResult r = run_cli(
        "rhp-count --a 2.381966011250105 --b -5.472135954999580 --c 4 --q1 0.4 --q2 0.8");
    CHECK(r.exit_code == 3);
}

TEST_CASE("config file supplies defaults and flags win") {
    const std::string path = "/tmp/fracstab_cli_test_config.json";
    {
        std::ofstream cfg(path);
        cfg << R"({"a11": 0.36, "a12": -1, "a21": 0.08, "a22": -0.064, "q1": 0.99, "q2": 0.8})";
    }
    const RunResult defaults = run_cli("classify --config " + path + " --q1 0.58");
    CHECK(defaults.exit_code == 0);
    CHECK(defaults.out.find("\"kind\":\"StableAtOrders\"") != std::string::npos);

    const std::string bad = "/tmp/fracstab_cli_test_config_bad.json";
    {
        std::ofstream cfg(bad);
        cfg << R"({"a11": 0.36, "frequency": 2.0})";
    }
    CHECK(run_cli("classify --config " + bad + " --q1 0.58").exit_code == 2);
    std::remove(path.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("selftest reports and exits cleanly") {
    const RunResult r = run_cli("selftest --systems 60 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("oracle-agreement:") != std::string::npos);
    CHECK(r.out.find("selftest:") != std::string::npos);
    CHECK(r.out.find(" 0 failed") != std::string::npos);
}

TEST_CASE("precision flag shapes the rendered floats") {
    const RunResult wide = run_cli("astar --c 4 --q1 0.4 --q2 0.8 --b -5.472135954999580");
    CHECK(wide.exit_code == 0);
    CHECK(wide.out.find("\"a_star\":2.38196601125") != std::string::npos);
    const RunResult narrow = run_cli("astar --c 4 --q1 0.4 --q2 0.8 --b -5.472135954999580 --precision 4");
    CHECK(narrow.out.find("\"a_star\":2.382") != std::string::npos);
    const RunResult csv = run_cli("astar --c 4 --q1 0.4 --q2 0.8 --b -5.4721 --format csv");
    CHECK(lines_of(csv.out)[0] == "b,a_star,omega");
}
