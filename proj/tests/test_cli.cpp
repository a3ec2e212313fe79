#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_support.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(FUNK_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        result.output.append(buf.data(), got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string data_file(const std::string& name) {
    return std::string(FUNK_DATA_DIR) + "/" + name;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("dist prints both orientations and the exit points") {
    auto r = run_cli("dist " + data_file("bodies/disk.json") + " --from 0,0 --to 0.5,0");
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.output) == "0.693147180560 / 0.405465108108");
    CHECK(r.output.find("a+(x,y): (1, ") != std::string::npos);

    r = run_cli("dist " + data_file("bodies/disk.json") + " --from 0.3,0.1 --to 0.3,0.1");
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.output) == "0 / 0");

    r = run_cli("dist " + data_file("bodies/halfplane.json") + " --from 0,2 --to 0,1");
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.output) == "0.693147180560 / 0");
}

TEST_CASE("exit codes follow the contract") {
    CHECK(run_cli("dist " + data_file("bodies/disk.json") + " --from 0,0 --to 3,0").exit_code ==
          3);
    CHECK(run_cli("dist " + data_file("bodies/missing.json") + " --from 0,0 --to 0.5,0")
              .exit_code == 2);
    CHECK(run_cli("dist " + data_file("bodies/disk.json") + " --from 0,zebra --to 0.5,0")
              .exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    auto tmp = std::filesystem::temp_directory_path() / "funk_cli_bad_body.json";
    std::ofstream(tmp) << R"({"dimension": 2, "body": {"type": "ball"}})";
    CHECK(run_cli("dist " + tmp.string() + " --from 0,0 --to 0.5,0").exit_code == 2);

    CHECK(run_cli("sphere " + data_file("bodies/disk.json") +
                  " --center 0,0 --delta 0.2 --format csv --out /nonexistent-dir/out.csv")
              .exit_code == 4);
}

TEST_CASE("gauge and length subcommands") {
    auto r = run_cli("gauge " + data_file("bodies/disk.json") + " --at 0.5,0 --dir 1,0");
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.output) == "2.00000000000");

    r = run_cli("gauge " + data_file("bodies/disk.json") + " --at 0.5,0 --dir 0,0");
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.output) == "0");

    r = run_cli("length " + data_file("bodies/disk.json") + " --path " +
                data_file("paths/polyline_log2.json"));
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(first_line(r.output)) - std::log(2.0)) < 1e-6);
}

TEST_CASE("sphere emission formats and determinism") {
    std::string base = "sphere " + data_file("bodies/disk.json") +
                       " --center 0,0 --delta 0.6931471805599453 --side fwd --dirs 720";
    auto csv = run_cli(base + " --format csv");
    CHECK(csv.exit_code == 0);
    int rows = 0;
    std::stringstream ss(csv.output);
    std::string row;
    while (std::getline(ss, row)) {
        ++rows;
        auto comma = row.find(',');
        double x = std::stod(row.substr(0, comma));
        double y = std::stod(row.substr(comma + 1));
        CHECK(std::abs(std::hypot(x, y) - 0.5) < 1e-9);
    }
    CHECK(rows == 720);
    CHECK(run_cli(base + " --format csv").output == csv.output);

    auto json_run = run_cli(base + " --format json");
    CHECK(json_run.exit_code == 0);
    auto doc = nlohmann::json::parse(json_run.output);
    CHECK(doc["kind"] == "sphere");
    CHECK(doc["points"].size() == 720);

    auto zero = run_cli("sphere " + data_file("bodies/disk.json") +
                        " --center 0.2,0.1 --delta 0 --dirs 8 --format json");
    auto zero_doc = nlohmann::json::parse(zero.output);
    for (const auto& p : zero_doc["points"]) {
        CHECK(p[0].get<double>() == 0.2);
        CHECK(p[1].get<double>() == 0.1);
    }

    auto ball = run_cli("ball " + data_file("bodies/disk.json") +
                        " --center 0,0 --delta 0.5 --format svg");
    CHECK(ball.exit_code == 0);
    CHECK(ball.output.find("fill=\"#cc333333\"") != std::string::npos);
}

TEST_CASE("svg output is byte-stable against the golden file") {
    std::string golden_path = std::string(FUNK_GOLDEN_DIR) + "/square_sphere.svg";
    auto r = run_cli("sphere " + data_file("bodies/square.json") +
                     " --center 0.5,0.5 --delta 0.6931471805599453 --side fwd --dirs 64 "
                     "--format svg");
    CHECK(r.exit_code == 0);
    CHECK(r.output == read_file(golden_path));
}

TEST_CASE("slice compares induced and ambient distances") {
    auto r = run_cli("slice " + data_file("bodies/ball3.json") +
                     " --base 0,0,0 --frame \"1,0,0;0,1,0\" --from 0.1,0 --to 0.3,0.2");
    CHECK(r.exit_code == 0);
    auto pos = r.output.find("difference: ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.output.substr(pos + 12)) < 1e-9);
}

TEST_CASE("verify runs the suites and reports") {
    auto r = run_cli("verify " + data_file("bodies/disk.json") +
                     " --suite axioms --samples 500 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("ALL PASS") != std::string::npos);
    CHECK(r.output.find("triangle inequality") != std::string::npos);
    CHECK(r.output.find("seed:     7") != std::string::npos);

    r = run_cli("verify " + data_file("bodies/square.json") +
                " --suite geodesics --samples 300 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("polygonal flat-facet geodesics") != std::string::npos);
    CHECK(r.output.find("ALL PASS") != std::string::npos);

    r = run_cli("verify " + data_file("bodies/ellipse.json") +
                " --suite axioms --samples 300 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("strict triangle inequality") != std::string::npos);
}
