// Process-level checks of the CLI: subcommands, exit codes, emitted files.
// The binary path and the shipped-config directory come from the
// environment (set by CTest).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("SBW_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SBW_CLI must point at the built binary");
    return p;
}

std::string config_dir() {
    const char* p = std::getenv("SBW_CONFIG_DIR");
    REQUIRE_MESSAGE(p != nullptr, "SBW_CONFIG_DIR must point at the shipped configs");
    return p;
}

int run(const std::string& args) {
    const std::string cmd = "'" + cli_path() + "' " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    REQUIRE(st != -1);
    return WIFEXITED(st) ? WEXITSTATUS(st) : -2;
}

fs::path sandbox(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("sbw_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
}

json slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), (p.string() + " missing"));
    return json::parse(in);
}

} // namespace

TEST_CASE("simulate: happy path writes trace and metrics") {
    const fs::path dir = sandbox("simulate");
    write(dir / "cfg.json", R"({
        "dt": 0.001, "duration": 2.0,
        "controller": {"type": "proposed"}
    })");
    CHECK(run("simulate '" + (dir / "cfg.json").string() + "' --out '" + dir.string() + "'") == 0);
    CHECK(fs::exists(dir / "trace.csv"));
    const json m = slurp(dir / "metrics.json");
    CHECK(m.at("controller") == "proposed");
    CHECK(m.at("rms_error_deg").get<double>() > 0.0);
    CHECK(m.at("samples").get<std::size_t>() == 2001);
    CHECK_FALSE(m.at("gain_ceiling_hit").get<bool>());
}

TEST_CASE("simulate: json trace format and downsampling") {
    const fs::path dir = sandbox("simjson");
    write(dir / "cfg.json", R"({
        "dt": 0.001, "duration": 1.0,
        "controller": {"type": "asmc"}
    })");
    CHECK(run("simulate '" + (dir / "cfg.json").string() + "' --out '" + dir.string() +
              "' --format json --every 10") == 0);
    const json t = slurp(dir / "trace.json");
    CHECK(t.at("columns").size() == 9);
    CHECK(t.at("samples").size() == 101);
}

TEST_CASE("simulate: config errors exit 1") {
    const fs::path dir = sandbox("simbad");
    write(dir / "bad_dt.json", R"({"dt": 0, "controller": {"type": "proposed"}})");
    CHECK(run("simulate '" + (dir / "bad_dt.json").string() + "'") == 1);

    write(dir / "bad_nominal.json", R"({
        "nominal": {"inertia": 0.42},
        "controller": {"type": "artdc"}
    })");
    CHECK(run("simulate '" + (dir / "bad_nominal.json").string() + "'") == 1);

    write(dir / "not_json.json", "{nope");
    CHECK(run("simulate '" + (dir / "not_json.json").string() + "'") == 1);
    CHECK(run("simulate '" + (dir / "missing.json").string() + "'") == 1);
}

TEST_CASE("simulate: detected instability exits 2") {
    const fs::path dir = sandbox("simunstable");
    write(dir / "cfg.json", R"({
        "dt": 0.01, "duration": 1.0,
        "controller": {"type": "proposed", "lambda": 1e6}
    })");
    CHECK(run("simulate '" + (dir / "cfg.json").string() + "' --out '" + dir.string() + "'") == 2);
}

TEST_CASE("compare: two variants on identical inputs") {
    const fs::path dir = sandbox("compare");
    write(dir / "cfg.json", R"({
        "dt": 0.001, "duration": 2.0,
        "baseline": "asmc",
        "variants": [
            {"name": "asmc", "controller": {"type": "asmc"}},
            {"name": "prop", "controller": {"type": "proposed"}}
        ]
    })");
    CHECK(run("compare '" + (dir / "cfg.json").string() + "' --out '" + dir.string() + "'") == 0);
    CHECK(fs::exists(dir / "asmc.csv"));
    CHECK(fs::exists(dir / "prop.csv"));
    const json r = slurp(dir / "compare.json");
    CHECK(r.at("baseline") == "asmc");
    CHECK_FALSE(r.at("partial").get<bool>());
    REQUIRE(r.at("results").size() == 2);
    CHECK(r.at("results").at(1).contains("improvement_error_pct"));
}

TEST_CASE("compare: an unstable variant flags partial results and exits 2") {
    const fs::path dir = sandbox("comparepartial");
    write(dir / "cfg.json", R"({
        "dt": 0.01, "duration": 1.0,
        "variants": [
            {"name": "asmc", "controller": {"type": "asmc"}},
            {"name": "runaway", "controller": {"type": "proposed", "lambda": 1e6}}
        ]
    })");
    CHECK(run("compare '" + (dir / "cfg.json").string() + "' --out '" + dir.string() + "'") == 2);
    const json r = slurp(dir / "compare.json");
    CHECK(r.at("partial").get<bool>());
    CHECK_FALSE(r.at("results").at(0).at("failed").get<bool>());
    CHECK(r.at("results").at(1).at("failed").get<bool>());
}

TEST_CASE("compare: a single variant is rejected") {
    const fs::path dir = sandbox("comparesingle");
    write(dir / "cfg.json", R"({
        "variants": [{"name": "only", "controller": {"type": "asmc"}}]
    })");
    CHECK(run("compare '" + (dir / "cfg.json").string() + "'") == 1);
}

TEST_CASE("delay-bound: golden report") {
    const fs::path dir = sandbox("delaybound");
    const std::string cfg = config_dir() + "/delay_margin.json";
    REQUIRE(fs::exists(cfg));
    CHECK(run("delay-bound '" + cfg + "' --out '" + dir.string() + "'") == 0);
    const json r = slurp(dir / "delay_bound.json");
    CHECK(r.at("max_delay").get<double>() == doctest::Approx(0.179148899796181).epsilon(1e-12));
    CHECK(r.at("max_delay_arolc").get<double>() ==
          doctest::Approx(0.126674786622034).epsilon(1e-12));
    CHECK(r.at("max_delay").get<double>() > r.at("max_delay_arolc").get<double>());
    CHECK(r.at("gain_conditions").at("pass").get<bool>());
    CHECK(r.at("P").at(0).at(0).get<double>() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(r.at("P_inv").at(0).at(0).get<double>() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("delay-bound: non-Hurwitz and non-SPD inputs exit 1") {
    const fs::path dir = sandbox("delaybad");
    write(dir / "neg_k.json", R"({"K": -1.0, "Omega": 0.5})");
    CHECK(run("delay-bound '" + (dir / "neg_k.json").string() + "'") == 1);
    write(dir / "bad_q.json", R"({"K": 1.0, "Omega": 0.5, "Q": [[1, 0], [0, -1]]})");
    CHECK(run("delay-bound '" + (dir / "bad_q.json").string() + "'") == 1);
}

TEST_CASE("shipped configs parse and validate") {
    const std::string dir = config_dir();
    for (const char* name : {"ch2_table2.json", "ch3_artdc.json"}) {
        std::ifstream in(dir + "/" + name);
        REQUIRE_MESSAGE(in.good(), name);
        const json j = json::parse(in);
        CHECK(j.at("variants").size() >= 2);
    }
}
