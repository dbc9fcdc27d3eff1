#pragma once

#include <string>

#include "groom/catalog.hpp"
#include "groom/compilers.hpp"
#include "groom/intent_dag.hpp"
#include "groom/network_state.hpp"
#include "groom/topology.hpp"

namespace fixtures {

inline std::string source_path(const std::string& rel) { return std::string(GROOM_SOURCE_DIR) + "/" + rel; }

inline groom::Topology toy_topology() { return groom::load_sndlib_file(source_path("data/toy-af.txt")); }
inline groom::Catalog toy_catalog() { return groom::load_catalog_file(source_path("data/toy-af-catalog.json")); }
inline groom::Topology nobel_germany() { return groom::load_sndlib_file(source_path("data/nobel-germany.txt")); }

/// Toy network where a first A->F demand (SAP) takes slots 0-4 of
/// A-C-D-F and a second one is then compiled with `kind`.
struct ToyScenario {
  groom::NetworkState state{toy_topology(), toy_catalog()};
  groom::IntentDag dag;
  groom::IntentId first{};
  groom::IntentId second{};
  groom::CompilationOutcome outcome;

  explicit ToyScenario(const groom::CompilerKind& kind = groom::CompilerKind::jml()) {
    const auto& t = state.topology();
    first = dag.add_user_intent(t.node_index("A"), t.node_index("F"), 100.0);
    groom::compile(groom::CompilerKind::sap(), first, state, dag);
    second = dag.add_user_intent(t.node_index("A"), t.node_index("F"), 100.0);
    outcome = groom::compile(kind, second, state, dag);
  }
};

}  // namespace fixtures
