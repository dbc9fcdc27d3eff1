#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groom/catalog.hpp"
#include "groom/compilers.hpp"
#include "groom/topology.hpp"

namespace groom {

struct DemandParams {
  double aggregate_gbps = 62000.0;
  /// Defaults: mean = aggregate / ordered pairs, stddev = mean / 2.
  std::optional<double> mean_gbps;
  std::optional<double> stddev_gbps;
};

struct Demand {
  NodeIndex source = 0;
  NodeIndex destination = 0;
  double rate_gbps = 0.0;
  friend bool operator==(const Demand&, const Demand&) = default;
};

struct DemandMatrix {
  std::uint64_t seed = 0;
  std::vector<Demand> entries;  // sorted by (source, destination)
  double total_gbps() const;
  friend bool operator==(const DemandMatrix&, const DemandMatrix&) = default;
};

/// One normal sample per ordered pair from mt19937_64 (Box-Muller on 53-bit
/// uniforms), redrawn while negative, then rescaled so the entries sum to
/// the aggregate.
DemandMatrix generate_demands(const Topology& topology, std::uint64_t seed, const DemandParams& params);

struct IntentRecord {
  NodeIndex source = 0;
  NodeIndex destination = 0;
  double rate_gbps = 0.0;
  LifecycleState status = LifecycleState::Uncompiled;
  std::optional<double> latency_us;  // installed intents only
  std::size_t new_lightpaths = 0;
  std::size_t groomed_hops = 0;
};

struct RunMetrics {
  std::uint64_t seed = 0;
  CompilerKind compiler;
  std::vector<IntentRecord> intents;  // compilation order
  double ip_cost = 0.0;               // router ports
  double optics_cost = 0.0;           // transmission modules
  std::size_t blocking_count = 0;
  std::size_t grooming_edge_count = 0;
  std::size_t label_cap_hits = 0;
  std::size_t lightpath_count = 0;

  double total_cost() const noexcept { return ip_cost + optics_cost; }
  std::vector<double> installed_latencies() const;
};

struct RunOptions {
  CompileOptions compile;
  double us_per_km = 5.0;
  /// Compile in a seed-derived random order instead of sorted pair order.
  bool shuffle = false;
  /// Run verify_dag at the end and throw on any finding.
  bool audit = true;
};

struct RunArtifacts {
  std::optional<nlohmann::json> dag;
  std::optional<nlohmann::json> state;
  std::optional<nlohmann::json> multigraph;
};

RunMetrics run_one(const Topology& topology, const Catalog& catalog, const CompilerKind& kind,
                   const DemandMatrix& demands, const RunOptions& options = {}, RunArtifacts* artifacts = nullptr);

struct CampaignConfig {
  std::string topology_path;
  std::string catalog_path;  // empty: built-in default catalog
  std::vector<CompilerKind> compilers;
  std::vector<std::uint64_t> seeds;
  DemandParams demand;
  std::string output_dir = "results";
  RunOptions run;
  bool dump_dag = false;
  bool dump_multigraph = false;
  std::size_t jobs = 1;
};

/// Parses and validates a campaign config. Relative paths resolve against
/// `base_dir`. Throws ParseError on schema violations.
CampaignConfig campaign_config_from_json(const nlohmann::json& j, const std::string& base_dir = "");
CampaignConfig load_campaign_config(const std::string& path);

struct CampaignResult {
  std::vector<RunMetrics> runs;       // seed-major, compilers in config order
  std::vector<std::string> failures;  // one line per failed (seed, compiler)
};

/// Runs every (seed, compiler) pair on `jobs` worker threads. Output order
/// does not depend on scheduling. Per-run artifacts go to `artifacts` when
/// non-null, indexed like `runs`.
CampaignResult run_campaign(const Topology& topology, const Catalog& catalog, const CampaignConfig& config,
                            std::vector<RunArtifacts>* artifacts = nullptr);

double median(std::vector<double> values);

/// Per-compiler medians and totals. Costs cover installed intents only.
nlohmann::json summarize(const CampaignResult& result, const std::vector<CompilerKind>& compilers);

void write_results_csv(std::ostream& out, const CampaignResult& result, const Topology& topology);
/// Long format: seed, compiler, metric, value.
void write_plot_csv(std::ostream& out, const CampaignResult& result);

/// Writes results.csv, summary.json, plot.csv and requested dumps into the
/// config's output directory.
void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result, const Topology& topology,
                            const std::vector<RunArtifacts>& artifacts);

/// Raises the aggregate by `step` (relative) from `start_gbps` until SAP
/// blocks at least one intent in every seed. Returns the first such load, or
/// nullopt after `max_steps`.
std::optional<double> scale_until_sap_blocks(const Topology& topology, const Catalog& catalog,
                                             const std::vector<std::uint64_t>& seeds, double start_gbps,
                                             double step, std::size_t max_steps, const RunOptions& options = {});

}  // namespace groom
