#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isolab/cli.hpp"
#include "isolab/serialize.hpp"

using namespace isolab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const Json& j) {
    const fs::path dir = fs::temp_directory_path() / "isogeny_lab_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << j.dump();
    return p;
}

}  // namespace

TEST_CASE("counterexample subcommand") {
    auto o = run_cli({"counterexample", "--paper"});
    CHECK(o.code == cli::kExitClean);
    CHECK(o.json().at("claims").at("counterexample-v2-w1") == "verified");
    o = run_cli({"counterexample", "--abstract"});
    CHECK(o.code == cli::kExitClean);
    CHECK(o.json().at("claims").at("necessity-abstract") == "verified");
    o = run_cli({"--format", "text", "counterexample"});
    CHECK(o.out.find("claim counterexample-v2-w1: verified") != std::string::npos);
}

TEST_CASE("field subcommands") {
    auto o = run_cli({"theorem1", "--q", "7", "--ell", "3", "--threads", "1"});
    CHECK(o.code == cli::kExitClean);
    const Json j = o.json();
    CHECK(j.at("violations").empty());
    CHECK(j.at("tool") == "isogeny_lab");
    CHECK(j.at("parameters").at("q") == 7);
    CHECK(run_cli({"lemmas", "--q", "13", "--ell", "3", "--threads", "1"}).code == cli::kExitClean);
    CHECK(run_cli({"theorem2", "--q", "13", "--ell", "3", "--n", "2", "--threads", "1"}).code == cli::kExitClean);
    CHECK(run_cli({"sweep", "--ell-list", "3,5", "--q-max", "20", "--threads", "1"}).code == cli::kExitClean);
}

TEST_CASE("equal configurations give identical reports apart from timing") {
    auto a = run_cli({"theorem1", "--q", "13", "--ell", "3", "--seed", "4", "--threads", "1"}).json();
    auto b = run_cli({"theorem1", "--q", "13", "--ell", "3", "--seed", "4", "--threads", "1"}).json();
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("usage and capability errors exit with 1") {
    CHECK(run_cli({}).code == cli::kExitError);
    CHECK(run_cli({"theorem1", "--q", "7"}).code == cli::kExitError);
    CHECK(run_cli({"theorem1", "--q", "49", "--ell", "3"}).code == cli::kExitError);
    const auto cap = run_cli({"theorem1", "--q", "1009", "--ell", "3"});
    CHECK(cap.code == cli::kExitError);
    CHECK(cap.err.find("--max-q") != std::string::npos);
    CHECK(run_cli({"--format", "xml", "counterexample"}).code == cli::kExitError);
    CHECK(run_cli({"module", "--input", "/nonexistent/file.json", "--op", "fixed"}).code == cli::kExitError);
    CHECK(run_cli({"--help"}).code == cli::kExitClean);
}

TEST_CASE("module queries") {
    const Json trivial{{"ell", 3},
                       {"dim", 4},
                       {"generators", {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}},
                       {"hyperplanes", {{1, 0, 0, 0}, {0, 1, 0, 0}}}};
    const auto path = write_temp("trivial.json", trivial).string();
    auto o = run_cli({"module", "--input", path, "--op", "fixed"});
    CHECK(o.code == cli::kExitClean);
    CHECK(o.json().at("result").at("dimension") == 4);
    CHECK(o.json().at("result").at("basis").size() == 4);
    CHECK(run_cli({"module", "--input", path, "--op", "semisimple"}).json().at("result").at("semisimple") == true);
    CHECK(run_cli({"module", "--input", path, "--op", "order"}).json().at("result").at("order") == 2);
    o = run_cli({"module", "--input", path, "--op", "construct"});
    CHECK(o.code == cli::kExitClean);
    CHECK(o.json().at("result").at("vectors").size() == 2);

    const Json witness{{"ell", 3},
                       {"dim", 4},
                       {"generators",
                        {{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}},
                         {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}}},
                       {"hyperplanes", {{0, 1, 0, 0}, {0, 0, 0, 1}}}};
    const auto wpath = write_temp("witness.json", witness).string();
    CHECK(run_cli({"module", "--input", wpath, "--op", "semisimple"}).json().at("result").at("semisimple") == false);
    CHECK(run_cli({"module", "--input", wpath, "--op", "fixed"}).json().at("result").at("dimension") == 0);
    CHECK(run_cli({"module", "--input", wpath, "--op", "construct"}).code == cli::kExitError);
    CHECK(run_cli({"module", "--input", wpath, "--op", "invert"}).code == cli::kExitError);
}

TEST_CASE("replay exit codes and round trip") {
    const Json bad{{"kind", "lattice"}, {"ell", 3}, {"dim", 2}, {"hyperplanes", {{1, 0}, {2, 0}}}};
    const auto bad_path = write_temp("bad.json", bad).string();
    auto o = run_cli({"replay", bad_path});
    CHECK(o.code == cli::kExitViolation);
    const Json report = o.json();
    REQUIRE(report.at("violations").size() == 1);
    const std::string claim = report.at("violations")[0].at("claim");

    // a whole report replays each recorded violation
    const auto report_path = write_temp("report.json", report).string();
    o = run_cli({"replay", report_path});
    CHECK(o.code == cli::kExitViolation);
    CHECK(o.json().at("violations")[0].at("claim") == claim);

    const Json good{{"kind", "lattice"}, {"ell", 3}, {"dim", 2}, {"hyperplanes", {{1, 0}, {0, 1}}}};
    CHECK(run_cli({"replay", write_temp("good.json", good).string()}).code == cli::kExitClean);
    CHECK(run_cli({"replay", write_temp("junk.json", Json{{"x", 1}}).string()}).code == cli::kExitError);
}

TEST_CASE("output file and thread environment") {
    const fs::path out = fs::temp_directory_path() / "isogeny_lab_tests" / "out.json";
    fs::create_directories(out.parent_path());
    auto o = run_cli({"--output", out.string(), "counterexample"});
    CHECK(o.code == cli::kExitClean);
    CHECK(o.out.empty());
    std::ifstream in(out);
    CHECK(Json::parse(in).at("command") == "counterexample");

    setenv("ISOGENY_LAB_THREADS", "2", 1);
    o = run_cli({"theorem1", "--q", "7", "--ell", "3"});
    CHECK(o.json().at("parameters").at("threads") == 2);
    setenv("ISOGENY_LAB_THREADS", "zero", 1);
    CHECK(run_cli({"theorem1", "--q", "7", "--ell", "3"}).code == cli::kExitError);
    unsetenv("ISOGENY_LAB_THREADS");
}
