#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "persist/graph.hpp"
#include "persist/rigidity.hpp"

namespace persist {

// Remaining directional freedom per vertex: max(0, 2 - out-degree).  In a
// minimally persistent graph the total is always 3, split as 2+1 or 1+1+1.
struct DofAllocation {
  std::map<VertexId, int> per_vertex;
  int total() const;
  bool operator==(const DofAllocation&) const = default;
};

enum class ViolationKind {
  OutDegree,     // some vertex has out-degree > 2
  LamanSubset,   // an edge subset breaks |E''| <= 2|V(E'')| - 3
};

struct PersistenceViolation {
  ViolationKind kind{};
  VertexId vertex = -1;             // set for OutDegree
  std::vector<DirectedEdge> edges;  // set for LamanSubset
  std::string reason;
};

struct PersistenceReport {
  RigidityVerdict rigidity;
  int max_out_degree = 0;
  bool is_minimally_persistent = false;
  DofAllocation dof;
  std::optional<PersistenceViolation> violation;
};

DofAllocation dof_allocation(const DirectedGraph& g);

// Minimal persistence = minimally rigid underlying graph + every
// out-degree at most 2.  The embedded rigidity verdict counts directed
// edges for minimality, so an anti-parallel pair (which the underlying
// view would collapse) is reported as a Laman violation on its two edges.
// Violation preference when several apply: out-degree first, then the
// offending edge subset.  Under-constrained graphs (rank below 2|V| - 3)
// carry no witness; the verdict's rank tells the story.
PersistenceReport check_min_persistent(const DirectedGraph& g);

// Throws PreconditionError with the report's violation reason when g is
// not minimally persistent.  `context` names the caller in the message.
void require_min_persistent(const DirectedGraph& g, const std::string& context);

}  // namespace persist
