#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hermosc/io.hpp"
#include "hermosc/run_setup.hpp"

using namespace hermosc;

TEST_CASE("config parser") {
    std::stringstream ss(R"(# comment line
epsilon = 1e-3
omega = 1.4142135623730951 1.7320508075688772
s_list = 0 1 2   # trailing comment
N = 64

[mode]
k = 1.0
a.const = 0.25
a.term = cos 1 0 0.5
b.term = sin 0 1 0.3

[mode]
kint = 1 -1
b.const = 1.0
)");
    const RunConfig cfg = parse_config(ss);
    CHECK(cfg.top.get_double("epsilon") == 1e-3);
    CHECK(cfg.top.get_doubles("omega").size() == 2);
    CHECK(cfg.top.get_doubles("s_list") == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(cfg.top.get_long("N") == 64);
    CHECK(cfg.top.get_long("missing", 7) == 7);
    REQUIRE(cfg.modes.size() == 2);

    const WSpec spec = wspec_from_config(cfg);
    CHECK(spec.modes[0].k == 1.0);
    CHECK(spec.modes[0].a.constant == 0.25);
    REQUIRE(spec.modes[0].a.terms.size() == 1);
    CHECK(spec.modes[0].a.terms[0].cos_c == 0.5);
    CHECK(spec.modes[0].a.terms[0].l == std::vector<int>{1, 0});
    CHECK(spec.modes[1].kint == std::vector<int>{1, -1});

    SimConfig sim = simconfig_from_config(cfg);
    CHECK(sim.N == 64);
    CHECK(sim.epsilon == 1e-3);
    // a_1(theta) evaluation: 0.25 + 0.5 cos(theta_1)
    CHECK(spec.modes[0].a.eval({0.0, 0.0}) == Catch::Approx(0.75));

    std::stringstream bad("key_without_value\n");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
}

TEST_CASE("csv writer/reader round trip and deterministic formatting") {
    const std::string path = "test_io_roundtrip.csv";
    {
        CsvWriter w(path, {"a", "b"});
        w.row({fmt_double(0.1), fmt_double(-1.0 / 3.0)});
        w.row({fmt_double(1e-300), fmt_double(12345.6789)});
    }
    const CsvTable t = read_csv(path);
    REQUIRE(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 2);
    // %.17g round-trips doubles exactly
    CHECK(std::stod(t.rows[0][0]) == 0.1);
    CHECK(std::stod(t.rows[0][1]) == -1.0 / 3.0);
    CHECK(std::stod(t.rows[1][0]) == 1e-300);
    CHECK(t.column("b") == 1);
    CHECK(t.column("zzz") == -1);
    std::remove(path.c_str());
    // identical values format identically
    CHECK(fmt_double(0.30000000000000004) == fmt_double(0.1 + 0.2));
}

TEST_CASE("manifest fields") {
    RunManifest man;
    man.command = "matel one";
    man.params = {{"k", "2"}, {"mu", "0"}};
    man.outputs = {"x.csv"};
    const std::string path = "test_io_manifest.json";
    man.write(path);
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    CHECK(j["command"] == "matel one");
    CHECK(j["params"]["k"] == "2");
    CHECK(j["version"] == kVersion);
    CHECK(j["outputs"].size() == 1);
    CHECK(j.contains("started_at"));
    CHECK(j.contains("duration_s"));
    std::remove(path.c_str());
}
