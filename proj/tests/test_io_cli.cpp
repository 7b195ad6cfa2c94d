#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "hqst/io.hpp"

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI with stdout+stderr captured.
CommandResult run_cli(const std::string& args) {
    const std::string cmd = std::string(HQST_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    CommandResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
        res.output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

int count_lines_with_prefix(const std::string& text, const std::string& prefix) {
    std::istringstream is(text);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        if (line.rfind(prefix, 0) == 0) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("table rendering") {
    hqst::io::Table t("demo", {"a", "b"});
    t.set_meta("key", "value");
    t.add_row({"1", "2"});
    t.add_comment("note");
    const std::string csv = t.to_csv(false);
    CHECK(csv.find("# demo\n") == 0);
    CHECK(csv.find("# key: value\n") != std::string::npos);
    CHECK(csv.find("a,b\n1,2\n") != std::string::npos);
    CHECK(csv.find("# note\n") != std::string::npos);
    CHECK(csv.find("generated") == std::string::npos);
    CHECK(t.to_csv(true).find("# generated: ") != std::string::npos);
    CHECK_THROWS_AS(t.add_row({"only-one"}), std::invalid_argument);

    const std::string json = t.to_json(false);
    CHECK(json.find("\"columns\"") != std::string::npos);
    CHECK(json.find("\"value\"") != std::string::npos);
}

TEST_CASE("format_double is stable and terse") {
    CHECK(hqst::io::format_double(0.5) == "0.5");
    CHECK(hqst::io::format_double(2e-8) == "2e-08");
    CHECK(hqst::io::format_double(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("svg rendering basics") {
    hqst::io::Series s{"series", {1.0, 2.0, 3.0}, {1.0, 0.5, 0.25}};
    hqst::io::PlotOptions opt;
    opt.title = "plot";
    opt.log_y = true;
    const std::string svg = hqst::io::render_svg({s}, opt);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("series") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("topology --d 99").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("fig2 --zeta-max 0.2").exit_code == 2);
    CHECK(run_cli("program --d 3 --a 00 --b 111").exit_code == 2);
    CHECK(run_cli("topology --d 3").exit_code == 0);
}

TEST_CASE("cli: topology emits the fixture adjacency") {
    auto res = run_cli("topology --d 1 --no-timestamp");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("0,1\n1,0\n") != std::string::npos);
    CHECK(res.output.find("k,eigenvalue,multiplicity") != std::string::npos);

    auto res10 = run_cli("topology --d 10 --no-timestamp");
    CHECK(res10.exit_code == 0);
    // C(10, k) multiplicities on the spectrum table.
    CHECK(res10.output.find("0,-10,1") != std::string::npos);
    CHECK(res10.output.find("5,0,252") != std::string::npos);
    CHECK(res10.output.find("10,10,1") != std::string::npos);
}

TEST_CASE("cli: reruns are byte identical without the timestamp") {
    const std::string args =
        "fig4 --d 5 --delta-zeta 0.3 --relative-delta --trials 32 --seed 9 --no-timestamp";
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    // Thread count must not leak into the bytes.
    auto c = run_cli(args + " --threads 3");
    CHECK(a.output == c.output);
    // Seed changes the data.
    auto d = run_cli(
        "fig4 --d 5 --delta-zeta 0.3 --relative-delta --trials 32 --seed 10 --no-timestamp");
    CHECK(a.output != d.output);
}

TEST_CASE("cli: config file with flag precedence") {
    const std::string path = "/tmp/hqst_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"d": 2, "zeta": 0.004, "omega_ghz": 5.0, "t1_ns": 100.0})";
    }
    auto res = run_cli("bound --config " + path + " --no-timestamp");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("2,0.004,5,100") != std::string::npos);
    // A flag overrides the file.
    auto res2 = run_cli("bound --config " + path + " --t1-ns 120 --no-timestamp");
    CHECK(res2.exit_code == 0);
    CHECK(res2.output.find("2,0.004,5,120") != std::string::npos);
}

TEST_CASE("cli: circuit-parameter route derives zeta and omega") {
    const std::string path = "/tmp/hqst_test_circuit.json";
    {
        std::ofstream f(path);
        // Junction values; zeta = 60/6240, zero bias.
        f << R"({"junction_capacitance_f": 6e-12, "coupling_capacitance_f": 60e-15,
                 "critical_current_a": 21e-6})";
    }
    auto res = run_cli("bound --d 4 --config " + path + " --no-timestamp");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("4,0.00961538") != std::string::npos);
    CHECK(res.output.find(",16.09") != std::string::npos);  // zero-bias plasma, GHz

    // Supplying both routes is a validation error.
    auto bad = run_cli("bound --d 4 --zeta 0.005 --config " + path);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: svg output is self-contained") {
    auto res = run_cli("fig2 --d 4 --zeta-points 3 --format svg --no-timestamp");
    CHECK(res.exit_code == 0);
    CHECK(res.output.rfind("<svg", 0) == 0);
    CHECK(res.output.find("</svg>") != std::string::npos);
    // Four series (sim + model, two variants) rendered as polylines.
    CHECK(count_lines_with_prefix(res.output, "<polyline") == 4);

    CHECK(run_cli("bound --format svg").exit_code == 2);
}

TEST_CASE("cli: json echoes the resolved parameters") {
    auto res = run_cli("fig3 --d 1 --time-points 5 --format json --no-timestamp");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"zeta\": \"0.005\"") != std::string::npos);
    CHECK(res.output.find("\"rows\"") != std::string::npos);
}

TEST_CASE("cli: program rejects mismatched labels and reports fidelity") {
    auto res = run_cli("program --d 3 --a 000 --b 011 --no-timestamp");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("simulated_fidelity=0.99") != std::string::npos);
    CHECK(res.output.find("node,bits,row,inside,frequency_ghz") != std::string::npos);
    CHECK(run_cli("program --d 3 --a 0a0 --b 011").exit_code == 2);
}
