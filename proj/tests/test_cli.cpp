#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "groom/cli.hpp"

using namespace groom;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "groom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("groom_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

const std::string toy = fixtures::source_path("data/toy-af.txt");
const std::string toy_catalog = fixtures::source_path("data/toy-af-catalog.json");

std::vector<std::string> toy_compile(std::vector<std::string> extra = {}) {
  std::vector<std::string> a{"compile", "--topology", toy, "--catalog", toy_catalog, "--src", "A", "--dst", "F",
                             "--rate", "100"};
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

}  // namespace

TEST_CASE("compile on the toy network") {
  const Run r = cli(toy_compile());
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("status") == "Installed");
  const auto& hop = j.at("routes").at(0).at("lightpaths").at(0);
  CHECK(hop.at("nodes") == nlohmann::json{"A", "C", "D", "F"});
  CHECK(hop.at("spectrum").at("length") == 5);
  CHECK(hop.at("spectrum").at("start") == 0);
  CHECK(j.at("created_intents").size() == 9);
}

TEST_CASE("prior demands shift the spectrum") {
  const Run r = cli(toy_compile({"--prior", fixtures::source_path("data/toy-af-prior.json")}));
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("routes").at(0).at("lightpaths").at(0).at("spectrum").at("start") == 5);
}

TEST_CASE("grooming is visible with a prior demand") {
  TempDir d;
  spit(d.file("prior.json"), R"({"demands":[{"src":"A","dst":"F","rate_gbps":100}]})");
  const Run r = cli({"compile", "--topology", toy, "--src", "A", "--dst", "F", "--rate", "100", "--prior",
                     d.file("prior.json")});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("grooming_edges").size() == 1);
  CHECK(j.at("created_intents").empty());
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"compile", "--topology", toy, "--src", "A", "--dst", "Z", "--rate", "100"}).code == kExitUsage);
  CHECK(cli({"compile", "--topology", toy, "--src", "A", "--dst", "A", "--rate", "100"}).code == kExitUsage);
  CHECK(cli({"compile", "--topology", toy, "--src", "A", "--dst", "F", "--rate", "-5"}).code == kExitUsage);
  CHECK(cli(toy_compile({"--compiler", "nope"})).code == kExitUsage);
  CHECK(cli({"compile", "--topology", "/nonexistent", "--src", "A", "--dst", "F", "--rate", "1"}).code == kExitUsage);
  CHECK(cli({"compile"}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("blocked demand exits 3") {
  const Run r = cli({"compile", "--topology", toy, "--catalog", toy_catalog, "--src", "A", "--dst", "F", "--rate",
                     "5000", "--max-splits", "4"});
  CHECK(r.code == kExitBlocked);
  CHECK(nlohmann::json::parse(r.out).at("status") == "Blocked");
  CHECK(r.err.find("blocked") != std::string::npos);
}

TEST_CASE("verify clean, corrupted and truncated dumps") {
  TempDir d;
  REQUIRE(cli(toy_compile({"--prior", fixtures::source_path("data/toy-af-prior.json"), "--dump-dag", d.file("dag.json"),
                           "--dump-state", d.file("state.json")}))
              .code == kExitOk);
  const Run clean = cli({"verify", "--dag", d.file("dag.json"), "--state", d.file("state.json")});
  CHECK(clean.code == kExitOk);
  CHECK(clean.out.rfind("ok:", 0) == 0);

  auto state = nlohmann::json::parse(slurp(d.file("state.json")));
  std::string occ = state.at("fibers").at(14).at("occupied");  // B to E, never used
  occ[20] = '1';
  state["fibers"][14]["occupied"] = occ;
  spit(d.file("bad_state.json"), state.dump());
  const Run bad = cli({"verify", "--dag", d.file("dag.json"), "--state", d.file("bad_state.json")});
  CHECK(bad.code == kExitDomain);
  CHECK(std::count(bad.out.begin(), bad.out.end(), '\n') == 1);

  const std::string dag = slurp(d.file("dag.json"));
  spit(d.file("cut.json"), dag.substr(0, dag.size() / 2));
  CHECK(cli({"verify", "--dag", d.file("cut.json"), "--state", d.file("state.json")}).code == kExitUsage);
  CHECK(cli({"verify", "--dag", d.file("missing.json"), "--state", d.file("state.json")}).code == kExitUsage);
}

TEST_CASE("simulate validates its config") {
  TempDir d;
  spit(d.file("empty.json"),
       R"({"topology": ")" + toy + R"(", "compilers": ["jml"], "seeds": []})");
  CHECK(cli({"simulate", "--config", d.file("empty.json")}).code == kExitUsage);
  CHECK(cli({"simulate", "--config", d.file("none.json")}).code == kExitUsage);
}

TEST_CASE("simulate writes deterministic outputs") {
  TempDir d;
  auto config = [&](const std::string& out) {
    return nlohmann::json{{"topology", toy},
                          {"compilers", {"sap", "jml", "ldjml"}},
                          {"seeds", {1, 2}},
                          {"demand", {{"aggregate_gbps", 2000}}},
                          {"output_dir", d.file(out)}}
        .dump();
  };
  spit(d.file("a.json"), config("a"));
  spit(d.file("b.json"), config("b"));
  const Run a = cli({"simulate", "--config", d.file("a.json")});
  REQUIRE(a.code == kExitOk);
  REQUIRE(cli({"simulate", "--config", d.file("b.json"), "--jobs", "2"}).code == kExitOk);
  CHECK(slurp(d.file("a/results.csv")) == slurp(d.file("b/results.csv")));
  CHECK(slurp(d.file("a/summary.json")) == slurp(d.file("b/summary.json")));
  CHECK(nlohmann::json::parse(a.out).at("compilers").size() == 3);
}

TEST_CASE("the installed binary reports the same exit codes") {
  const char* bin = std::getenv("GROOM_CLI");
  if (!bin) return;
  const std::string base = std::string(bin) + " compile --topology " + toy + " --src A --dst ";
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(base + "F --rate 100") == 0);
  CHECK(status(base + "Z --rate 100") == 2);
  CHECK(status(base + "F --rate 100000 --max-splits 2") == 3);
}
