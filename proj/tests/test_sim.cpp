#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "groom/errors.hpp"
#include "groom/sim.hpp"

using namespace groom;

namespace {

CampaignConfig small_config(std::vector<std::uint64_t> seeds) {
  CampaignConfig c;
  c.compilers = {CompilerKind::sap(), CompilerKind::jml(), CompilerKind::ldjml()};
  c.seeds = std::move(seeds);
  c.demand.aggregate_gbps = 3000;
  return c;
}

}  // namespace

TEST_CASE("demand generation") {
  const Topology t = fixtures::nobel_germany();
  const DemandMatrix a = generate_demands(t, 9, {});
  CHECK(a == generate_demands(t, 9, {}));
  CHECK_FALSE(a == generate_demands(t, 10, {}));
  CHECK(a.entries.size() == 17 * 16);
  CHECK(std::abs(a.total_gbps() - 62000.0) <= 62.0);
  for (const auto& d : a.entries) {
    CHECK(d.rate_gbps >= 0.0);
    CHECK(d.source != d.destination);
  }
  for (std::size_t i = 1; i < a.entries.size(); ++i) {
    CHECK(std::tie(a.entries[i - 1].source, a.entries[i - 1].destination) <
          std::tie(a.entries[i].source, a.entries[i].destination));
  }
  DemandParams p;
  p.aggregate_gbps = 5000;
  p.mean_gbps = 10;
  p.stddev_gbps = 30;
  CHECK(std::abs(generate_demands(t, 1, p).total_gbps() - 5000.0) <= 5.0);
}

TEST_CASE("zero demands") {
  DemandMatrix none;
  const RunMetrics m = run_one(fixtures::toy_topology(), default_catalog(), CompilerKind::jml(), none);
  CHECK(m.total_cost() == 0.0);
  CHECK(m.blocking_count == 0);
  CHECK(m.installed_latencies().empty());
}

TEST_CASE("one 100G demand costs two modules and two ports") {
  const Topology t = fixtures::toy_topology();
  DemandMatrix one;
  one.entries.push_back({t.node_index("A"), t.node_index("F"), 100});
  for (const auto& kind : {CompilerKind::sap(), CompilerKind::jml(), CompilerKind::ldjml()}) {
    const RunMetrics m = run_one(t, default_catalog(), kind, one);
    CHECK(m.lightpath_count == 1);
    CHECK(m.total_cost() == 2 * 3.0 + 2 * 1.0);
    CHECK(m.ip_cost == 2.0);
    CHECK(m.optics_cost == 6.0);
    REQUIRE(m.intents.size() == 1);
    REQUIRE(m.intents[0].latency_us);
    // JML sees A-B-E-F and A-C-D-F at equal cost; the other two take the shorter one.
    if (!(kind == CompilerKind::jml())) CHECK(*m.intents[0].latency_us == doctest::Approx(650.0 * 5.0));
  }
}

TEST_CASE("median") {
  CHECK(std::isnan(median({})));
  CHECK(median({3}) == 3.0);
  CHECK(median({4, 1, 3}) == 3.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
}

TEST_CASE("campaign rows, ordering and thread independence") {
  const Topology t = fixtures::toy_topology();
  CampaignConfig c = small_config({1, 2, 3, 4});
  const CampaignResult serial = run_campaign(t, default_catalog(), c);
  CHECK(serial.failures.empty());
  REQUIRE(serial.runs.size() == 12);
  CHECK(serial.runs[0].seed == 1);
  CHECK(serial.runs[1].compiler == CompilerKind::jml());
  c.jobs = 3;
  const CampaignResult parallel = run_campaign(t, default_catalog(), c);
  std::ostringstream a, b;
  write_results_csv(a, serial, t);
  write_results_csv(b, parallel, t);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("seed,compiler,src,dst,rate_gbps,status,latency_us,new_lightpaths,groomed_hops\n", 0) == 0);
  CHECK(summarize(serial, c.compilers) == summarize(parallel, c.compilers));
}

TEST_CASE("single seed summary equals the run") {
  const Topology t = fixtures::toy_topology();
  CampaignConfig c = small_config({7});
  c.compilers = {CompilerKind::jml()};
  const CampaignResult r = run_campaign(t, default_catalog(), c);
  REQUIRE(r.runs.size() == 1);
  const auto s = summarize(r, c.compilers).at("compilers").at(0);
  CHECK(s.at("median_total_cost").get<double>() == r.runs[0].total_cost());
  CHECK(s.at("blocked").get<std::size_t>() == r.runs[0].blocking_count);
  CHECK(s.at("median_latency_us").get<double>() == median(r.runs[0].installed_latencies()));
}

TEST_CASE("shuffled order is deterministic per seed") {
  const Topology t = fixtures::toy_topology();
  const DemandMatrix d = generate_demands(t, 3, {3000.0, {}, {}});
  RunOptions o;
  o.shuffle = true;
  const RunMetrics a = run_one(t, default_catalog(), CompilerKind::jml(), d, o);
  const RunMetrics b = run_one(t, default_catalog(), CompilerKind::jml(), d, o);
  REQUIRE(a.intents.size() == b.intents.size());
  bool reordered = false;
  for (std::size_t i = 0; i < a.intents.size(); ++i) {
    CHECK(a.intents[i].source == b.intents[i].source);
    CHECK(a.intents[i].destination == b.intents[i].destination);
    reordered = reordered || a.intents[i].source != d.entries[i].source ||
                a.intents[i].destination != d.entries[i].destination;
  }
  CHECK(reordered);
}

TEST_CASE("config parsing") {
  const nlohmann::json ok = {{"topology", "t.txt"}, {"compilers", {"sap", "jml"}}, {"seeds", {1, 2}}, {"sap_k", 5}};
  const CampaignConfig c = campaign_config_from_json(ok, "/base");
  CHECK(c.topology_path == "/base/t.txt");
  CHECK(c.compilers == std::vector<CompilerKind>{CompilerKind::sap(5), CompilerKind::jml()});
  CHECK(c.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(c.catalog_path.empty());

  auto bad = [&](const char* key, nlohmann::json value) {
    nlohmann::json j = ok;
    j[key] = std::move(value);
    return j;
  };
  CHECK_THROWS_AS(campaign_config_from_json(bad("seeds", nlohmann::json::array())), ParseError);
  CHECK_THROWS_AS(campaign_config_from_json(bad("compilers", {"bogus"})), ParseError);
  CHECK_THROWS_AS(campaign_config_from_json(bad("colour", "red")), ParseError);
  CHECK_THROWS_AS(campaign_config_from_json(bad("jobs", "many")), ParseError);
  nlohmann::json missing = ok;
  missing.erase("topology");
  CHECK_THROWS_AS(campaign_config_from_json(missing), ParseError);
}

TEST_CASE("shipped configs load") {
  for (const char* name : {"configs/quick.json", "configs/full.json"}) {
    const CampaignConfig c = load_campaign_config(fixtures::source_path(name));
    CHECK(std::filesystem::exists(c.topology_path));
    CHECK(c.compilers.size() == 3);
  }
  CHECK(load_campaign_config(fixtures::source_path("configs/full.json")).seeds.size() == 40);
}

TEST_CASE("outputs on disk are byte-identical across reruns") {
  const Topology t = fixtures::toy_topology();
  const auto dir = std::filesystem::temp_directory_path() / "groom_sim_test";
  std::filesystem::remove_all(dir);
  CampaignConfig c = small_config({1, 2});
  c.dump_dag = true;
  auto run = [&](const std::string& sub) {
    c.output_dir = (dir / sub).string();
    std::vector<RunArtifacts> artifacts;
    const CampaignResult r = run_campaign(t, default_catalog(), c, &artifacts);
    write_campaign_outputs(c, r, t, artifacts);
  };
  run("a");
  run("b");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "a")) {
    ++files;
    CHECK(slurp(e.path()) == slurp(dir / "b" / e.path().filename()));
  }
  CHECK(files >= 4);
  CHECK(std::filesystem::exists(dir / "a" / "results.csv"));
  CHECK(std::filesystem::exists(dir / "a" / "summary.json"));
  CHECK(std::filesystem::exists(dir / "a" / "plot.csv"));
  std::filesystem::remove_all(dir);
}
