#include "groom/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "groom/catalog.hpp"
#include "groom/compilers.hpp"
#include "groom/errors.hpp"
#include "groom/intent_dag.hpp"
#include "groom/multilayer.hpp"
#include "groom/network_state.hpp"
#include "groom/sim.hpp"
#include "groom/topology.hpp"

namespace groom {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, fmt::format("{}: {}", path, e.what()));
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(1) << '\n';
}

Catalog catalog_or_default(const std::string& path) { return path.empty() ? default_catalog() : load_catalog_file(path); }

std::string node_name(const Topology& t, NodeIndex n) { return t.nodes()[n].name; }

nlohmann::json node_names(const Topology& t, const std::vector<NodeIndex>& nodes) {
  nlohmann::json j = nlohmann::json::array();
  for (auto n : nodes) j.push_back(node_name(t, n));
  return j;
}

nlohmann::json outcome_json(const CompilationOutcome& out, const IntentDag& dag, const NetworkState& state) {
  const auto& topo = state.topology();
  const auto& catalog = state.catalog();
  nlohmann::json j;
  j["status"] = to_string(out.status);
  j["label_cap_hits"] = out.cap_hits;
  if (out.status != LifecycleState::Installed) {
    j["reason"] = out.reason;
    return j;
  }
  auto& routes = j["routes"] = nlohmann::json::array();
  for (const auto& r : out.routes) {
    nlohmann::json jr{{"rate_gbps", r.rate_gbps}, {"length_km", r.length_km}};
    auto& hops = jr["lightpaths"] = nlohmann::json::array();
    for (IntentId id : r.lightpaths) {
      const auto& lp = dag.at(id).as<LightpathIntent>();
      nlohmann::json jh{{"intent", id.value},
                        {"nodes", node_names(topo, lp.nodes)},
                        {"module", catalog.modules[lp.module_type].name},
                        {"mode", {{"rate_gbps", lp.mode.rate_gbps}, {"reach_km", lp.mode.reach_km}, {"slots", lp.mode.slots}}},
                        {"length_km", lp.length_km},
                        {"new", false}};
      for (const auto& [nid, iv] : r.new_lightpaths) {
        if (nid == id) {
          jh["new"] = true;
          jh["spectrum"] = {{"start", iv.start}, {"length", iv.length}};
        }
      }
      hops.push_back(std::move(jh));
    }
    if (r.winner) {
      nlohmann::json path = nlohmann::json::array();
      for (auto v : r.winner->vertices) {
        path.push_back(fmt::format("{}/{}", node_name(topo, node_of(v)),
                                   layer_of(v) == Layer::Router ? "router" : "oxc"));
      }
      jr["winner"] = {{"vertices", path},
                      {"module_cost", r.winner->module_cost},
                      {"port_cost", r.winner->port_cost},
                      {"length_km", r.winner->length_km},
                      {"uses_virtual", r.winner->uses_virtual}};
    }
    routes.push_back(std::move(jr));
  }
  auto& created = j["created_intents"] = nlohmann::json::array();
  for (IntentId id : out.created) created.push_back({{"id", id.value}, {"kind", kind_name(dag.at(id).kind)}});
  auto& grooming = j["grooming_edges"] = nlohmann::json::array();
  for (const auto& g : out.grooming_edges) {
    grooming.push_back({{"parent", g.parent.value}, {"lightpath", g.lightpath.value}, {"rate_gbps", g.rate_gbps}});
  }
  return j;
}

struct UsageError : Error {
  using Error::Error;
};

void load_prior(const std::string& path, const CompilerKind& fallback, NetworkState& state, IntentDag& dag,
                const CompileOptions& options) {
  nlohmann::json j = read_json(path);
  const nlohmann::json& list = j.is_object() && j.contains("demands") ? j.at("demands") : j;
  if (!list.is_array()) throw ParseError(0, path + ": expected a list of demands");
  const auto& topo = state.topology();
  for (const auto& d : list) {
    try {
      auto src = topo.find_node(d.at("src").get<std::string>());
      auto dst = topo.find_node(d.at("dst").get<std::string>());
      if (!src || !dst) throw UsageError(path + ": unknown node in prior demand");
      const CompilerKind kind =
          d.contains("compiler") ? parse_compiler_kind(d.at("compiler").get<std::string>()) : fallback;
      const IntentId id = dag.add_user_intent(*src, *dst, d.at("rate_gbps").get<double>());
      compile(kind, id, state, dag, options);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(0, fmt::format("{}: {}", path, e.what()));
    }
  }
}

}  // namespace

int cmd_simulate(const std::string& config_path, std::optional<std::size_t> jobs, std::ostream& out,
                 std::ostream& err) {
  CampaignConfig config;
  Topology topo;
  Catalog catalog;
  try {
    config = load_campaign_config(config_path);
    if (jobs) config.jobs = std::max<std::size_t>(1, *jobs);
    topo = load_sndlib_file(config.topology_path);
    catalog = catalog_or_default(config.catalog_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << fmt::format("simulating {} seeds x {} compilers on {} nodes, {} links\n", config.seeds.size(),
                     config.compilers.size(), topo.node_count(), topo.link_count());
  try {
    std::vector<RunArtifacts> artifacts;
    const bool dumps = config.dump_dag || config.dump_multigraph;
    const CampaignResult result = run_campaign(topo, catalog, config, dumps ? &artifacts : nullptr);
    write_campaign_outputs(config, result, topo, artifacts);
    for (const auto& f : result.failures) err << "run failed: " << f << '\n';
    out << summarize(result, config.compilers).dump(2) << '\n';
    return result.failures.empty() ? kExitOk : kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

int cmd_compile(const CompileRequest& req, std::ostream& out, std::ostream& err) {
  std::optional<NetworkState> state;
  IntentDag dag;
  NodeIndex src = 0, dst = 0;
  CompilerKind kind;
  CompileOptions options;
  options.label_cap = req.label_cap;
  options.max_splits = req.max_splits;
  try {
    Topology topo = load_sndlib_file(req.topology_path);
    Catalog catalog = catalog_or_default(req.catalog_path);
    auto s = topo.find_node(req.source);
    auto d = topo.find_node(req.destination);
    if (!s) throw UsageError("unknown node '" + req.source + "'");
    if (!d) throw UsageError("unknown node '" + req.destination + "'");
    if (*s == *d) throw UsageError("source and destination must differ");
    if (!(req.rate_gbps > 0.0)) throw UsageError("rate must be positive");
    src = *s;
    dst = *d;
    kind = parse_compiler_kind(req.compiler);
    state.emplace(std::move(topo), std::move(catalog));
    if (!req.prior_path.empty()) load_prior(req.prior_path, kind, *state, dag, options);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!req.dump_multigraph.empty()) {
      write_json(req.dump_multigraph, multigraph_to_json(build_multilayer_graph(*state, dag, req.rate_gbps), *state));
    }
    const IntentId id = dag.add_user_intent(src, dst, req.rate_gbps);
    options.check_invariants = true;
    const CompilationOutcome outcome = compile(kind, id, *state, dag, options);
    nlohmann::json j = outcome_json(outcome, dag, *state);
    j["compiler"] = to_string(kind);
    j["intent"] = id.value;
    j["demand"] = {{"src", req.source}, {"dst", req.destination}, {"rate_gbps", req.rate_gbps}};
    out << j.dump(2) << '\n';
    if (!req.dump_dag.empty()) write_json(req.dump_dag, dag_to_json(dag, *state));
    if (!req.dump_state.empty()) write_json(req.dump_state, state_to_json(*state));
    if (outcome.status != LifecycleState::Installed) {
      err << "blocked: " << outcome.reason << '\n';
      return kExitBlocked;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

int cmd_verify(const std::string& dag_path, const std::string& state_path, std::ostream& out, std::ostream& err) {
  std::optional<NetworkState> state;
  IntentDag dag;
  try {
    state.emplace(state_from_json(read_json(state_path)));
    dag = dag_from_json(read_json(dag_path), *state);
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed dump: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto problems = verify_dag(dag, *state);
  for (const auto& p : problems) out << p << '\n';
  if (problems.empty()) {
    out << fmt::format("ok: {} intents, {} occupied slots\n", dag.size(), state->occupied_slot_count());
    return kExitOk;
  }
  return kExitDomain;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intent compiler for IP-optical networks with traffic grooming"};
  app.require_subcommand(1);

  std::string config_path;
  std::size_t jobs = 0;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded campaign from a JSON config");
  simulate->add_option("--config", config_path, "Campaign config file")->required();
  simulate->add_option("--jobs", jobs, "Worker threads (overrides the config)");

  CompileRequest req;
  auto* compile_cmd = app.add_subcommand("compile", "Compile one connectivity intent and print the result");
  compile_cmd->add_option("--topology", req.topology_path, "SNDlib topology file")->required();
  compile_cmd->add_option("--catalog", req.catalog_path, "Equipment catalog JSON (default: built-in)");
  compile_cmd->add_option("--src", req.source, "Source node")->required();
  compile_cmd->add_option("--dst", req.destination, "Destination node")->required();
  compile_cmd->add_option("--rate", req.rate_gbps, "Demand in Gbps")->required();
  compile_cmd->add_option("--compiler", req.compiler, "sap, sap:K, jml or ldjml")->default_val("jml");
  compile_cmd->add_option("--prior", req.prior_path, "Demands to compile first (JSON)");
  compile_cmd->add_option("--dump-dag", req.dump_dag, "Write the DAG dump here");
  compile_cmd->add_option("--dump-state", req.dump_state, "Write the resource state dump here");
  compile_cmd->add_option("--dump-multigraph", req.dump_multigraph, "Write the multilayer graph here");
  compile_cmd->add_option("--label-cap", req.label_cap, "Per-vertex label cap (0 = none)")->default_val(64);
  compile_cmd->add_option("--max-splits", req.max_splits, "Most channels per demand")->default_val(16);

  std::string dag_path, state_path;
  auto* verify = app.add_subcommand("verify", "Audit a DAG dump against a state dump");
  verify->add_option("--dag", dag_path, "DAG dump")->required();
  verify->add_option("--state", state_path, "State dump")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  if (simulate->parsed()) {
    return cmd_simulate(config_path, jobs ? std::optional<std::size_t>(jobs) : std::nullopt, out, err);
  }
  if (compile_cmd->parsed()) return cmd_compile(req, out, err);
  return cmd_verify(dag_path, state_path, out, err);
}

}  // namespace groom
