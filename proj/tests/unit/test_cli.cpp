#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "sas/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = sas::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("sas_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

bool row(const std::string& table, const std::string& agent, const std::string& cls, const std::string& state) {
    return std::regex_search(table, std::regex("(^|\\n)" + agent + " +" + cls + " +\\d+ +\\d+ +" + state + " "));
}

} // namespace

TEST_CASE("classify richard") {
    const auto r = cli({"classify", "richard_iii"});
    CHECK(r.code == 0);
    CHECK(row(r.out, "richard", "goods", "scarcity"));
    CHECK(row(r.out, "richard", "status", "abundance"));
}

TEST_CASE("emitted protestant classifies as abundant in goods") {
    const auto dir = scratch("emit");
    const auto emitted = cli({"fixtures", "emit", "protestant"});
    REQUIRE(emitted.code == 0);
    std::ofstream(dir / "protestant.json") << emitted.out;
    const auto r = cli({"classify", (dir / "protestant.json").string()});
    CHECK(r.code == 0);
    CHECK(std::regex_search(r.out, std::regex("protestant +goods +2 +3 +abundance")));
}

TEST_CASE("run twice with the same seed gives identical files") {
    const auto a = scratch("run_a");
    const auto b = scratch("run_b");
    REQUIRE(cli({"run", "famine", "--ticks", "1", "--seed", "7", "--out", a.string()}).code == 0);
    REQUIRE(cli({"run", "famine", "--ticks", "1", "--seed", "7", "--out", b.string()}).code == 0);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(a / "states.csv") == slurp(b / "states.csv"));
    CHECK(slurp(a / "states.csv").rfind("tick,agent,class,", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"validate", "no_such_thing.json"}).code == 1);
    CHECK(cli({"fixtures", "emit", "atlantis"}).code == 1);
    CHECK(cli({"fixtures", "emit", "famine", "--variant", "drought"}).code == 1);
    CHECK(cli({"run", "richard_iii", "--ticks", "0"}).code == 1);
    CHECK(cli({"run", "richard_iii", "--mode", "fuzzy"}).code == 1);
    CHECK(cli({"fixtures", "list"}).code == 0);
    CHECK(cli({"validate", "famine", "--variant", "food-coupons"}).code == 0);

    const auto dir = scratch("bad");
    std::ofstream(dir / "broken.json") << "{ not json";
    const auto r = cli({"validate", (dir / "broken.json").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("SchemaError") != std::string::npos);

    // The output directory path is a file: a runtime failure, not a validation one.
    std::ofstream(dir / "occupied") << "x";
    CHECK(cli({"run", "richard_iii", "--out", (dir / "occupied").string()}).code == 2);
}

TEST_CASE("seed comes from the environment unless given") {
    const auto with_env = [](const char* value, std::vector<std::string> args) {
        ::setenv("SAS_SIM_SEED", value, 1);
        auto r = cli(std::move(args));
        ::unsetenv("SAS_SIM_SEED");
        return r;
    };
    const auto env = with_env("41", {"run", "richard_iii"});
    CHECK(env.code == 0);
    CHECK(env.out.find("\"seed\": 41") != std::string::npos);
    const auto flag = with_env("41", {"run", "richard_iii", "--seed", "5"});
    CHECK(flag.out.find("\"seed\": 5") != std::string::npos);
    CHECK(with_env("many", {"run", "richard_iii"}).code == 1);
}
