#include <doctest.h>

#include <sstream>

#include "test_support.hpp"
#include "vids/cli.hpp"

using namespace vids;
using vids::testing::TempDir;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string last_line(const std::string& s) {
    auto end = s.find_last_not_of('\n');
    auto start = s.rfind('\n', end);
    return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST_CASE("validate exit codes") {
    TempDir tmp;
    const auto ds = (tmp / "ds").string();
    REQUIRE(run({"scaffold", ds, "--subjects", "4", "--profile", "full", "--readers", "3"}).code == 0);

    auto r = run({"validate", ds, "--profile", "full"});
    CHECK(r.code == 0);
    CHECK(last_line(r.out) == "  VALIDATION PASSED (21/21 rules)");

    std::filesystem::remove(tmp / "ds/README.md");
    r = run({"validate", ds});
    CHECK(r.code == 1);
    CHECK(last_line(r.out) == "  VALIDATION FAILED (1 of 21 rules failed)");

    r = run({"validate", ds, "--profile", "bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.out.empty());

    CHECK(run({"validate", (tmp / "absent").string()}).code == 3);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json output is one document") {
    TempDir tmp;
    const auto ds = (tmp / "ds").string();
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"scaffold", ds, "--subjects", "3", "--profile", "full", "--json"},
             {"validate", ds, "--json"},
             {"quality", ds, "--json"},
             {"splits", ds, "--seed", "7", "--ratios", "0.6,0.2,0.2", "--json"},
             {"score", std::string(VIDS_SCORECARD_DIR) + "/msd.json", "--json"},
             {"export", ds, (tmp / "out").string(), "--layout", "training", "--task", "T", "--json"},
             {"mutate", ds, (tmp / "m").string(), "--rule", "D001", "--json"},
         }) {
        CAPTURE(args[0]);
        const auto r = run(args);
        CHECK(r.code == 0);
        CHECK(json::accept(r.out));
    }
    const auto splits = json::parse(vids::testing::slurp(tmp / "ds/ml/splits.json"));
    CHECK(splits["Seed"] == 7);
    CHECK(splits["Test"].size() + splits["Val"].size() + splits["Train"].size() == 3);
}

TEST_CASE("operational errors exit 3") {
    TempDir tmp;
    const auto ds = (tmp / "ds").string();
    REQUIRE(run({"scaffold", ds, "--subjects", "2"}).code == 0);
    CHECK(run({"scaffold", ds, "--subjects", "2"}).code == 3);  // not empty
    CHECK(run({"export", ds, (tmp / "o").string(), "--layout", "training"}).code == 3);  // no splits
    CHECK(run({"mutate", ds, (tmp / "m").string(), "--rule", "Z009"}).code == 3);
    CHECK(run({"score", (tmp / "nope.json").string()}).code == 3);
    CHECK(run({"splits", ds, "--seed", "1", "--ratios", "0.5,0.5,0.5"}).code == 3);
    CHECK(run({"export", ds, (tmp / "o").string(), "--layout", "zip"}).code == 2);
    CHECK(run({"scaffold", (tmp / "z").string()}).code == 2);  // --subjects missing
}

TEST_CASE("score prints the row") {
    const auto r = run({"score", std::string(VIDS_SCORECARD_DIR) + "/brats.json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Total (22)         8.5") != std::string::npos);
    CHECK(r.out.find("Percentage         39%") != std::string::npos);
}
