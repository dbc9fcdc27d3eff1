#include "groom/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "groom/errors.hpp"
#include "groom/intent_dag.hpp"
#include "groom/multilayer.hpp"
#include "groom/network_state.hpp"

namespace groom {

double DemandMatrix::total_gbps() const {
  double s = 0.0;
  for (const auto& d : entries) s += d.rate_gbps;
  return s;
}

namespace {

double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform53(rng);  // (0, 1]
  const double u2 = uniform53(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

DemandMatrix generate_demands(const Topology& topology, std::uint64_t seed, const DemandParams& params) {
  const std::size_t n = topology.node_count();
  const std::size_t pairs = n * (n - 1);
  if (!(params.aggregate_gbps > 0.0)) throw ContractViolation("aggregate demand must be positive");
  DemandMatrix m;
  m.seed = seed;
  if (pairs == 0) return m;
  const double mean = params.mean_gbps.value_or(params.aggregate_gbps / static_cast<double>(pairs));
  const double stddev = params.stddev_gbps.value_or(mean / 2.0);
  if (!(stddev > 0.0)) throw ContractViolation("demand stddev must be positive");

  std::mt19937_64 rng(seed);
  double sum = 0.0;
  for (NodeIndex s = 0; s < n; ++s) {
    for (NodeIndex d = 0; d < n; ++d) {
      if (s == d) continue;
      double x;
      do {
        x = mean + stddev * standard_normal(rng);
      } while (x < 0.0);
      m.entries.push_back({s, d, x});
      sum += x;
    }
  }
  if (sum > 0.0) {
    const double scale = params.aggregate_gbps / sum;
    for (auto& e : m.entries) e.rate_gbps *= scale;
  }
  std::erase_if(m.entries, [](const Demand& d) { return d.rate_gbps <= 0.0; });
  return m;
}

std::vector<double> RunMetrics::installed_latencies() const {
  std::vector<double> out;
  for (const auto& r : intents) {
    if (r.latency_us) out.push_back(*r.latency_us);
  }
  return out;
}

RunMetrics run_one(const Topology& topology, const Catalog& catalog, const CompilerKind& kind,
                   const DemandMatrix& demands, const RunOptions& options, RunArtifacts* artifacts) {
  NetworkState state(topology, catalog);
  IntentDag dag;
  RunMetrics metrics;
  metrics.seed = demands.seed;
  metrics.compiler = kind;

  std::vector<Demand> order = demands.entries;
  if (options.shuffle) {
    std::mt19937_64 rng(demands.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[j]);
    }
  }

  for (const auto& d : order) {
    const IntentId id = dag.add_user_intent(d.source, d.destination, d.rate_gbps);
    const CompilationOutcome out = compile(kind, id, state, dag, options.compile);
    IntentRecord rec{d.source, d.destination, d.rate_gbps, out.status, std::nullopt, 0, 0};
    metrics.label_cap_hits += out.cap_hits;
    if (out.status == LifecycleState::Installed) {
      rec.latency_us = out.length_km() * options.us_per_km;
      rec.new_lightpaths = out.new_lightpath_count();
      rec.groomed_hops = out.grooming_edges.size();
      metrics.grooming_edge_count += out.grooming_edges.size();
      metrics.lightpath_count += rec.new_lightpaths;
    } else {
      ++metrics.blocking_count;
    }
    metrics.intents.push_back(rec);
  }

  if (options.audit) {
    const auto problems = verify_dag(dag, state);
    if (!problems.empty()) {
      throw InvariantViolation(fmt::format("{} seed {}: {}", to_string(kind), demands.seed, problems.front()));
    }
  }

  for (NodeIndex n = 0; n < topology.node_count(); ++n) {
    const auto& eq = state.equipment(n);
    metrics.ip_cost += eq.router_ports.in_use * catalog.router_port_cost;
    for (std::size_t m = 0; m < catalog.modules.size(); ++m) {
      metrics.optics_cost += eq.transmodules[m].in_use * catalog.modules[m].cost;
    }
  }

  if (artifacts) {
    artifacts->dag = dag_to_json(dag, state);
    artifacts->state = state_to_json(state);
    artifacts->multigraph = multigraph_to_json(build_multilayer_graph(state, dag, 0.0), state);
  }
  return metrics;
}

namespace {

std::string resolve(const std::string& base, const std::string& path) {
  if (path.empty() || base.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base) / path).lexically_normal().string();
}

template <class T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(0, fmt::format("config: missing '{}'", key));
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(0, fmt::format("config: '{}' has the wrong type", key));
  }
}

template <class T>
T optional_field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(0, fmt::format("config: '{}' has the wrong type", key));
  }
}

}  // namespace

CampaignConfig campaign_config_from_json(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ParseError(0, "config: expected a JSON object");
  static const std::vector<std::string> known{"topology", "catalog",     "compilers",     "seeds",   "demand",
                                              "output_dir", "label_cap", "sap_k",         "max_splits",
                                              "propagation_us_per_km",   "shuffle",       "dump_dag",
                                              "dump_multigraph",         "jobs",          "audit"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError(0, fmt::format("config: unknown key '{}'", key));
    }
  }

  CampaignConfig c;
  c.topology_path = resolve(base_dir, required<std::string>(j, "topology"));
  c.catalog_path = resolve(base_dir, optional_field<std::string>(j, "catalog", ""));
  const auto sap_k = optional_field<std::size_t>(j, "sap_k", 3);
  if (sap_k == 0) throw ParseError(0, "config: sap_k must be at least 1");
  for (const auto& name : required<std::vector<std::string>>(j, "compilers")) {
    CompilerKind k;
    try {
      k = parse_compiler_kind(name);
    } catch (const ContractViolation& e) {
      throw ParseError(0, fmt::format("config: {}", e.what()));
    }
    if (k.strategy == CompilerKind::Strategy::Sap && name == "sap") k.k = sap_k;
    c.compilers.push_back(k);
  }
  if (c.compilers.empty()) throw ParseError(0, "config: compiler list is empty");
  c.seeds = required<std::vector<std::uint64_t>>(j, "seeds");
  if (c.seeds.empty()) throw ParseError(0, "config: seed list is empty");

  if (j.contains("demand")) {
    const auto& d = j.at("demand");
    if (!d.is_object()) throw ParseError(0, "config: 'demand' must be an object");
    c.demand.aggregate_gbps = optional_field<double>(d, "aggregate_gbps", c.demand.aggregate_gbps);
    if (d.contains("mean_gbps") && !d.at("mean_gbps").is_null()) c.demand.mean_gbps = d.at("mean_gbps").get<double>();
    if (d.contains("stddev_gbps") && !d.at("stddev_gbps").is_null()) {
      c.demand.stddev_gbps = d.at("stddev_gbps").get<double>();
    }
    if (!(c.demand.aggregate_gbps > 0.0)) throw ParseError(0, "config: aggregate_gbps must be positive");
    if (c.demand.stddev_gbps && !(*c.demand.stddev_gbps > 0.0)) {
      throw ParseError(0, "config: stddev_gbps must be positive");
    }
  }

  c.output_dir = resolve(base_dir, optional_field<std::string>(j, "output_dir", c.output_dir));
  c.run.compile.label_cap = optional_field<std::size_t>(j, "label_cap", c.run.compile.label_cap);
  c.run.compile.max_splits = optional_field<std::size_t>(j, "max_splits", c.run.compile.max_splits);
  c.run.us_per_km = optional_field<double>(j, "propagation_us_per_km", c.run.us_per_km);
  c.run.shuffle = optional_field<bool>(j, "shuffle", false);
  c.run.audit = optional_field<bool>(j, "audit", true);
  c.dump_dag = optional_field<bool>(j, "dump_dag", false);
  c.dump_multigraph = optional_field<bool>(j, "dump_multigraph", false);
  c.jobs = optional_field<std::size_t>(j, "jobs", 1);
  if (c.jobs == 0) throw ParseError(0, "config: jobs must be at least 1");
  return c;
}

CampaignConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, fmt::format("config {}: {}", path, e.what()));
  }
  return campaign_config_from_json(j, std::filesystem::path(path).parent_path().string());
}

CampaignResult run_campaign(const Topology& topology, const Catalog& catalog, const CampaignConfig& config,
                            std::vector<RunArtifacts>* artifacts) {
  if (config.seeds.empty()) throw ContractViolation("campaign needs at least one seed");
  const std::size_t runs = config.seeds.size() * config.compilers.size();
  std::vector<std::optional<RunMetrics>> slots(runs);
  std::vector<std::string> errors(runs);
  std::vector<RunArtifacts> dumps(artifacts ? runs : 0);

  std::vector<DemandMatrix> matrices;
  for (auto seed : config.seeds) matrices.push_back(generate_demands(topology, seed, config.demand));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs; i = next++) {
      const std::size_t s = i / config.compilers.size();
      const CompilerKind& kind = config.compilers[i % config.compilers.size()];
      try {
        slots[i] = run_one(topology, catalog, kind, matrices[s], config.run, artifacts ? &dumps[i] : nullptr);
      } catch (const std::exception& e) {
        errors[i] = fmt::format("seed {} {}: {}", config.seeds[s], to_string(kind), e.what());
      }
    }
  };
  const std::size_t threads = std::min(config.jobs, runs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  CampaignResult result;
  for (std::size_t i = 0; i < runs; ++i) {
    if (slots[i]) {
      result.runs.push_back(std::move(*slots[i]));
      if (artifacts) artifacts->push_back(std::move(dumps[i]));
    } else {
      result.failures.push_back(errors[i]);
    }
  }
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

nlohmann::json summarize(const CampaignResult& result, const std::vector<CompilerKind>& compilers) {
  nlohmann::json j;
  j["cost_scope"] = "installed intents only";
  j["failures"] = result.failures;
  auto& per = j["compilers"] = nlohmann::json::array();
  for (const auto& kind : compilers) {
    std::vector<double> latencies, totals, ip, optics;
    std::size_t blocked = 0, intents = 0, grooming = 0, cap_hits = 0, lightpaths = 0, runs = 0;
    nlohmann::json blocking_per_seed = nlohmann::json::object();
    for (const auto& r : result.runs) {
      if (!(r.compiler == kind)) continue;
      ++runs;
      const auto l = r.installed_latencies();
      latencies.insert(latencies.end(), l.begin(), l.end());
      totals.push_back(r.total_cost());
      ip.push_back(r.ip_cost);
      optics.push_back(r.optics_cost);
      blocked += r.blocking_count;
      intents += r.intents.size();
      grooming += r.grooming_edge_count;
      cap_hits += r.label_cap_hits;
      lightpaths += r.lightpath_count;
      blocking_per_seed[std::to_string(r.seed)] = r.blocking_count;
    }
    auto num = [](double v) { return std::isnan(v) ? nlohmann::json() : nlohmann::json(v); };
    per.push_back({{"compiler", to_string(kind)},
                   {"runs", runs},
                   {"intents", intents},
                   {"blocked", blocked},
                   {"blocking_per_seed", blocking_per_seed},
                   {"median_latency_us", num(median(latencies))},
                   {"median_total_cost", num(median(totals))},
                   {"median_ip_cost", num(median(ip))},
                   {"median_optics_cost", num(median(optics))},
                   {"lightpaths", lightpaths},
                   {"grooming_edges", grooming},
                   {"label_cap_hits", cap_hits}});
  }
  return j;
}

void write_results_csv(std::ostream& out, const CampaignResult& result, const Topology& topology) {
  out << "seed,compiler,src,dst,rate_gbps,status,latency_us,new_lightpaths,groomed_hops\n";
  for (const auto& r : result.runs) {
    const std::string compiler = to_string(r.compiler);
    for (const auto& i : r.intents) {
      out << fmt::format("{},{},{},{},{},{},{},{},{}\n", r.seed, compiler, topology.nodes()[i.source].name,
                         topology.nodes()[i.destination].name, i.rate_gbps, to_string(i.status),
                         i.latency_us ? fmt::format("{}", *i.latency_us) : std::string(), i.new_lightpaths,
                         i.groomed_hops);
    }
  }
}

void write_plot_csv(std::ostream& out, const CampaignResult& result) {
  out << "seed,compiler,metric,value\n";
  for (const auto& r : result.runs) {
    const std::string c = to_string(r.compiler);
    out << fmt::format("{},{},ip_cost,{}\n", r.seed, c, r.ip_cost);
    out << fmt::format("{},{},optics_cost,{}\n", r.seed, c, r.optics_cost);
    out << fmt::format("{},{},total_cost,{}\n", r.seed, c, r.total_cost());
    out << fmt::format("{},{},blocked,{}\n", r.seed, c, r.blocking_count);
    out << fmt::format("{},{},grooming_edges,{}\n", r.seed, c, r.grooming_edge_count);
    for (double l : r.installed_latencies()) out << fmt::format("{},{},latency_us,{}\n", r.seed, c, l);
  }
}

void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result, const Topology& topology,
                            const std::vector<RunArtifacts>& artifacts) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("results.csv");
    write_results_csv(f, result, topology);
  }
  {
    auto f = open("plot.csv");
    write_plot_csv(f, result);
  }
  {
    auto f = open("summary.json");
    f << summarize(result, config.compilers).dump(2) << '\n';
  }
  for (std::size_t i = 0; i < artifacts.size() && i < result.runs.size(); ++i) {
    const auto& r = result.runs[i];
    const std::string stem = fmt::format("{}-seed{}", to_string(r.compiler), r.seed);
    if (config.dump_dag && artifacts[i].dag) {
      auto f = open("dag-" + stem + ".json");
      f << artifacts[i].dag->dump(1) << '\n';
      auto g = open("state-" + stem + ".json");
      g << artifacts[i].state->dump(1) << '\n';
    }
    if (config.dump_multigraph && artifacts[i].multigraph) {
      auto f = open("multigraph-" + stem + ".json");
      f << artifacts[i].multigraph->dump(1) << '\n';
    }
  }
}

std::optional<double> scale_until_sap_blocks(const Topology& topology, const Catalog& catalog,
                                             const std::vector<std::uint64_t>& seeds, double start_gbps,
                                             double step, std::size_t max_steps, const RunOptions& options) {
  double load = start_gbps;
  for (std::size_t i = 0; i < max_steps; ++i, load *= 1.0 + step) {
    DemandParams params;
    params.aggregate_gbps = load;
    bool all_block = true;
    for (auto seed : seeds) {
      const auto m = run_one(topology, catalog, CompilerKind::sap(), generate_demands(topology, seed, params), options);
      if (m.blocking_count == 0) {
        all_block = false;
        break;
      }
    }
    if (all_block) return load;
  }
  return std::nullopt;
}

}  // namespace groom
