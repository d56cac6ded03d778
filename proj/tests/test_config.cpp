#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fog2c/config.hpp"
#include "fog2c/errors.hpp"
#include "fog2c/units.hpp"

using namespace fog2c;
namespace u = fog2c::units;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream f(std::string(FOG2C_SOURCE_DIR) + "/configs/" + name);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> issues_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& what) {
  for (const auto& i : issues) {
    if (i.find(what) != std::string::npos) return true;
  }
  return false;
}

const char* kMinimal = R"({
  "topology": {
    "nodes": [
      {"id": "d", "tier": "device"},
      {"id": "a", "tier": "access_point", "collocated": "f"},
      {"id": "f", "tier": "fog", "compute": {"f_max": "3 GHz", "f_min": "100 MHz",
        "p_static": "10 W", "kappa": "1e-27 W/Hz^alpha"}}
    ],
    "links": [
      {"from": "d", "to": "a", "wireless_catalog": {"eps_tx": "4.5e4 pJ/b", "eps_rx": "3.9e4 pJ/b",
        "rate": "54 Mb/s"}}
    ]
  },
  "workload": {
    "requests": 10,
    "size": {"dist": "constant", "value": "1 MB"},
    "intensity": {"dist": "uniform", "min": "71 Flop/B", "max": "220 Flop/B"},
    "deadline": {"dist": "lognormal", "median": "500 ms", "sigma": 0.3},
    "sources": [{"device": "d"}]
  },
  "experiment": {"scenario": "a", "seed": 5}
})";

}  // namespace

TEST_CASE("unit strings convert to SI") {
  CHECK(u::parse("4.5e4 pJ/b", u::Quantity::energy_per_bit) == doctest::Approx(4.5e-8));
  CHECK(u::parse(" 2 MB ", u::Quantity::data_size) == 16e6);
  CHECK(u::parse("71 Flop/B", u::Quantity::intensity) == doctest::Approx(8.875));
  CHECK(u::parse("0.9 /ms", u::Quantity::request_rate) == doctest::Approx(900));
  CHECK(u::parse("-174 dBm/Hz", u::Quantity::noise_density) ==
        doctest::Approx(3.98e-21).epsilon(1e-3));
  CHECK(u::parse("2038 TFlop/s", u::Quantity::flop_rate) == doctest::Approx(2.038e15));
  CHECK(u::parse("31 kW", u::Quantity::power) == 31e3);
  CHECK(u::parse("1 min", u::Quantity::time) == 60);
  CHECK_THROWS_AS(u::parse("12", u::Quantity::time), ConfigError);
  CHECK_THROWS_AS(u::parse("12 MHz", u::Quantity::time), ConfigError);
  CHECK_THROWS_AS(u::parse("fast ms", u::Quantity::time), ConfigError);
  for (double v : {1.0, 0.1, 1.0 / 3.0, 4.5e-8, 1e300, 123456789.123}) {
    CHECK(u::parse(u::format(v, u::Quantity::bit_rate), u::Quantity::bit_rate) == v);
  }
}

TEST_CASE("minimal config parses with SI values") {
  const ScenarioConfig c = parse_config(kMinimal);
  const auto& link = c.topology.links()[c.topology.link_between("d", "a").value()];
  const auto& m = std::get<WirelessCatalogModel>(link.model);
  CHECK(m.eps_tx == doctest::Approx(4.5e-8));
  CHECK(m.rate == 54e6);
  CHECK(c.workload.request_count == 10);
  CHECK(c.workload.distribution->size.a == 8e6);
  CHECK(c.experiment.seed == 5);
  CHECK(c.experiment.strategies.size() == 3);
  CHECK(c.experiment.scope == AccountingScope::fog_cloud());
  CHECK(c.output.directory == "out");
}

TEST_CASE("empty input reports missing sections") {
  const auto issues = issues_of("");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("missing required sections") != std::string::npos);
  CHECK(mentions(issues_of("{}"), "topology: missing required key"));
  CHECK(mentions(issues_of("{}"), "experiment: missing required key"));
}

TEST_CASE("syntax errors carry a position") {
  const auto issues = issues_of("{\n  \"topology\": [1,,]\n}");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("line 2") != std::string::npos);
}

TEST_CASE("unknown keys and unit mismatches are all reported") {
  std::string text = kMinimal;
  text.replace(text.find("\"p_static\""), 10, "\"p_statik\"");
  text.replace(text.find("54 Mb/s"), 7, "54 MHz");
  text.replace(text.find("\"seed\": 5"), 9, "\"seed\": 5, \"sead\": 1");
  const auto issues = issues_of(text);
  CHECK(mentions(issues, "topology.nodes[2].compute.p_statik: unknown key"));
  CHECK(mentions(issues, "topology.nodes[2].compute.p_static: missing required key"));
  CHECK(mentions(issues, "topology.links[0].wireless_catalog.rate: unit mismatch"));
  CHECK(mentions(issues, "experiment.sead: unknown key"));
  CHECK(issues.size() >= 4);
}

TEST_CASE("invariant violations are reported with context") {
  std::string text = kMinimal;
  text.replace(text.find("\"collocated\": \"f\""), 17, "\"collocated\": \"g\"");
  text.replace(text.find("{\"device\": \"d\"}"), 15, "{\"device\": \"a\"}");
  const auto issues = issues_of(text);
  CHECK(mentions(issues, "topology: node 'a': collocated node 'g' does not exist"));
  CHECK(mentions(issues, "workload.sources[0].device: 'a' is not a device node"));
}

TEST_CASE("scenario sections must match the scenario kind") {
  std::string text = kMinimal;
  text.replace(text.find("\"scenario\": \"a\""), 15, "\"scenario\": \"b\"");
  CHECK(mentions(issues_of(text), "experiment.size_grid: missing required key"));
  text = kMinimal;
  text.replace(text.find("\"scenario\": \"a\""), 15, "\"scenario\": \"c\"");
  const auto c = issues_of(text);
  CHECK(mentions(c, "experiment.rate_grid: missing required key"));
  CHECK(mentions(c, "scenario c needs workload.periodic"));
}

TEST_CASE("shipped configs parse") {
  const ScenarioConfig fig2 = parse_config(slurp("fig2.cfg"));
  int fogs = 0, clouds = 0;
  for (const auto& n : fig2.topology.nodes()) {
    fogs += n.tier == Tier::fog;
    clouds += n.tier == Tier::cloud;
  }
  CHECK(fogs == 10);
  CHECK(clouds == 1);
  CHECK(fig2.workload.request_count == 10000);

  const ScenarioConfig fig3 = parse_config(slurp("fig3.cfg"));
  CHECK(fig3.experiment.scenario == ScenarioKind::b);
  CHECK(fig3.experiment.size_grid.front() == 16e6);
  CHECK(fig3.experiment.scope == AccountingScope::all());

  const ScenarioConfig fig4 = parse_config(slurp("fig4.cfg"));
  const AoiScenario s = build_aoi_scenario(fig4);
  CHECK(s.wired.empty());
  CHECK(s.slot_duration == 1e-3);
  CHECK(s.size == 1e4);
  CHECK(s.compute.p_static == 2);
}

TEST_CASE("emit round trips with an equal digest") {
  for (const char* name : {"fig2.cfg", "fig3.cfg", "fig4.cfg"}) {
    CAPTURE(name);
    const ScenarioConfig a = parse_config(slurp(name));
    const std::string text = emit_config(a);
    const ScenarioConfig b = parse_config(text);
    CHECK(config_digest(a) == config_digest(b));
    CHECK(emit_config(b) == text);
    CHECK(config_digest(a).size() == 16);
  }
}

TEST_CASE("digest tracks semantic changes only") {
  ScenarioConfig a = parse_config(kMinimal);
  const std::string d0 = config_digest(a);
  a.output.directory = "elsewhere";
  a.output.plot = true;
  CHECK(config_digest(a) == d0);
  std::string text = kMinimal;
  text.replace(text.find("\"seed\": 5"), 9, "\"seed\": 6");
  CHECK(config_digest(parse_config(text)) != d0);
  // Same quantity written in other units.
  text = kMinimal;
  text.replace(text.find("3 GHz"), 5, "3000 MHz");
  CHECK(config_digest(parse_config(text)) == d0);
}

TEST_CASE("presets fill in catalog values") {
  std::string text = kMinimal;
  const std::string old = R"("wireless_catalog": {"eps_tx": "4.5e4 pJ/b", "eps_rx": "3.9e4 pJ/b",
        "rate": "54 Mb/s"})";
  text.replace(text.find(old), old.size(), R"("wireless_catalog": {"preset": "wifi"})");
  const ScenarioConfig c = parse_config(text);
  const auto& m = std::get<WirelessCatalogModel>(c.topology.links()[c.topology.link_between("d", "a").value()].model);
  CHECK(m.eps_rx == doctest::Approx(3.9e-8));
  text.replace(text.find("\"wifi\""), 6, "\"wimax\"");
  CHECK(mentions(issues_of(text), "unknown wireless preset 'wimax'"));
}
