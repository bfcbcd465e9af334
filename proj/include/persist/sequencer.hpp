#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persist/graph.hpp"
#include "persist/ops.hpp"
#include "persist/persistence.hpp"

namespace persist {

// Vertex relabeling applied between two steps of a plan, used when a
// transformation stitches the deconstruction of one graph to the
// construction of another and the two seeds disagree on ids.
struct SeedRename {
  int after_step = 0;  // applied once this many steps have run
  std::map<VertexId, VertexId> mapping;
  bool operator==(const SeedRename&) const = default;
};

// A reproducible operation sequence.  `snapshots[t]` is the graph after
// steps[t] (with the seed rename folded in when it sits at that boundary);
// plans parsed from the wire carry no snapshots, only initial/steps/final.
struct Plan {
  DirectedGraph initial;
  std::vector<Operation> steps;
  std::optional<SeedRename> seed_rename;
  std::vector<DirectedGraph> snapshots;
  DirectedGraph final;
};

struct ReplayResult {
  bool ok = true;
  int failed_step = -1;  // index into steps, -1 when the failure is global
  std::string reason;
  DirectedGraph final;
};

// Re-executes a plan from its initial graph: every step must apply, every
// intermediate graph must be minimally persistent, stored snapshots must
// match exactly, and the result must equal the plan's final graph.
ReplayResult replay(const Plan& plan);

// Peels a minimally persistent graph down to a single-edge seed in exactly
// |V| - 2 reverse operations (reverse vertex additions and reverse edge
// splittings, atypical ones included).  Vertex choice prefers degree
// pattern (in,out) = (0,2), then (1,1), then (1,2), smallest id within a
// class; at a (1,2) vertex the standard reverse splitting is tried before
// the atypical one.
Plan decompose_A(const DirectedGraph& g);

// Like decompose_A but restricted to reverse standard operations plus edge
// reversals: a (1,1) vertex is first turned into a (0,2) vertex by one
// reversal, and where only the atypical reverse splitting would apply the
// plan detours through a same-underlying reorientation so that the standard
// one becomes applicable.
Plan decompose_T(const DirectedGraph& g);

// Forward construction of `target` from a single-edge seed, obtained by
// inverting its decomposition; the final snapshot equals `target` exactly.
Plan construct_from_seed(const DirectedGraph& target);

// Moves the three degrees of freedom to the target allocation using at
// most 3 path reversals.  The target must use the same vertex set, keep
// every value at most 2 and sum to 3.
Plan reposition_dof(const DirectedGraph& g, const DofAllocation& target);

// Reorients `a` into `b` (same underlying graph, same freedom allocation)
// using at most floor(|E|/3) cycle reversals: the mismatched edges always
// decompose into directed cycles of length at least 3.
Plan align_orientations(const DirectedGraph& a, const DirectedGraph& b);

// reposition_dof followed by align_orientations, lowered to single edge
// reversals; turns `a` into `b` whenever they share the underlying graph.
Plan transform_same_underlying(const DirectedGraph& a, const DirectedGraph& b);

enum class OpSet { A, T };

// Arbitrary minimally persistent `a` to arbitrary minimally persistent
// `b`: deconstruct `a`, rename/flip the seed if needed, reconstruct `b`.
// In mode A the deconstruction/ construction steps number exactly
// |V_a| + |V_b| - 4; the optional seed-aligning edge reversal sits outside
// that count.
Plan transform_general(const DirectedGraph& a, const DirectedGraph& b,
                       OpSet mode = OpSet::A);

// Orients a minimally rigid graph into a minimally persistent one by
// replaying its (undirected) reduction history with standard vertex
// additions and edge splittings from a single-edge seed.  Returns the
// oriented graph together with the construction plan that builds it.
std::pair<DirectedGraph, Plan> orient_min_rigid(const UndirectedView& view);

}  // namespace persist
