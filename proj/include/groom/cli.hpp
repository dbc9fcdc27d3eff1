#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace groom {

/// Process exit codes shared by every command.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2, kExitBlocked = 3 };

int cmd_simulate(const std::string& config_path, std::optional<std::size_t> jobs, std::ostream& out,
                 std::ostream& err);

struct CompileRequest {
  std::string topology_path;
  std::string catalog_path;  // empty: default catalog
  std::string source;
  std::string destination;
  double rate_gbps = 0.0;
  std::string compiler = "jml";
  std::string prior_path;  // JSON list of demands compiled first
  std::string dump_dag;
  std::string dump_state;
  std::string dump_multigraph;
  std::size_t label_cap = 64;
  std::size_t max_splits = 16;
};

int cmd_compile(const CompileRequest& request, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& dag_path, const std::string& state_path, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace groom
