#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "persist/graph.hpp"

namespace persist {

// The eleven operation kinds.  Forward operations grow or rewire a graph;
// Rev* operations undo their namesakes.  Field names follow the wire
// format ("new" is spelled vnew because of the keyword).

// Adds vertex `vnew` with out-edges to j and k.
struct StdVertexAdd {
  VertexId vnew{}, j{}, k{};
  bool operator==(const StdVertexAdd&) const = default;
};

// Splits edge (j,k): removes it, adds vertex `vnew` with edges
// (j,vnew), (vnew,k), (vnew,l).
struct StdEdgeSplit {
  VertexId vnew{}, j{}, k{}, l{};
  bool operator==(const StdEdgeSplit&) const = default;
};

// Replaces edge (i,j) by (j,i); j must have a spare degree of freedom.
struct EdgeReversal {
  VertexId i{}, j{};
  bool operator==(const EdgeReversal&) const = default;
};

// Reverses every edge along a directed path, last edge first, so each
// intermediate graph stays minimally persistent.  The path may close on
// itself (first == last), which reverses a cycle anchored at a vertex
// with a spare degree of freedom.
struct PathReversal {
  std::vector<VertexId> path;
  bool operator==(const PathReversal&) const = default;
};

// Reverses a directed cycle (distinct vertices, closing edge implied).
// Unlike the closed-path form this works even when no cycle vertex has a
// spare degree of freedom, by borrowing one through an off-cycle path.
struct CycleReversal {
  std::vector<VertexId> cycle;
  bool operator==(const CycleReversal&) const = default;
};

// Adds vertex `vnew` with in-edge from j and out-edge to k; j spends one
// degree of freedom.
struct AtypVertexAdd {
  VertexId vnew{}, j{}, k{};
  bool operator==(const AtypVertexAdd&) const = default;
};

// Splits edge (k,l) while re-routing freedom from j: removes (k,l), adds
// vertex `vnew` with edges (j,vnew), (vnew,k), (vnew,l), and reverses the
// given directed path from j to k.  Applied atomically; only the start and
// end graphs are checked.
struct AtypEdgeSplit {
  VertexId vnew{}, j{}, k{}, l{};
  std::vector<VertexId> path;
  bool operator==(const AtypEdgeSplit&) const = default;
};

// Removes vertex i, which must have in-degree 0 and out-degree 2.
struct RevStdVertexAdd {
  VertexId i{};
  bool operator==(const RevStdVertexAdd&) const = default;
};

// Removes vertex i (in-degree 1 from j, out-degree 2 to k and l) and
// restores one of the candidate split edges (j,k) or (j,l).  The restored
// pair must be neither an explicit edge nor implicitly rigid once i is
// gone, otherwise the result would not be minimally rigid.
struct RevStdEdgeSplit {
  VertexId i{};
  std::pair<VertexId, VertexId> add_pair{};
  bool operator==(const RevStdEdgeSplit&) const = default;
};

// Removes vertex i, which must have in-degree 1 and out-degree 1.
struct RevAtypVertexAdd {
  VertexId i{};
  bool operator==(const RevAtypVertexAdd&) const = default;
};

// Removes vertex i (in-degree 1 from j, out-degree 2 to k and l), reverses
// `path` (a directed path from one of k,l back to j that avoids i) and
// restores the split edge add_pair, which must leave the path's start
// vertex.  The pair {k,l} must be neither explicit nor implicit without i.
struct RevAtypEdgeSplit {
  VertexId i{};
  std::vector<VertexId> path;
  std::pair<VertexId, VertexId> add_pair{};
  bool operator==(const RevAtypEdgeSplit&) const = default;
};

using Operation =
    std::variant<StdVertexAdd, StdEdgeSplit, EdgeReversal, PathReversal,
                 CycleReversal, AtypVertexAdd, AtypEdgeSplit, RevStdVertexAdd,
                 RevStdEdgeSplit, RevAtypVertexAdd, RevAtypEdgeSplit>;

// Wire-format name of the operation's kind, e.g. "StdVertexAdd".
std::string op_kind(const Operation& op);

struct OpOutcome {
  DirectedGraph graph;
  // How many single edge reversals the operation expanded into (macro
  // reversals only; structural operations report 0).
  int applied_edge_reversals = 0;
};

// Every apply_* checks that the input is minimally persistent, validates
// the operation's own preconditions (throwing PreconditionError), and
// returns a new graph.  There is no unchecked fast path.

DirectedGraph apply_std_vertex_add(const DirectedGraph& g, VertexId vnew,
                                   VertexId j, VertexId k);
DirectedGraph apply_std_edge_split(const DirectedGraph& g, VertexId vnew,
                                   VertexId j, VertexId k, VertexId l);
DirectedGraph apply_edge_reversal(const DirectedGraph& g, VertexId i,
                                  VertexId j);
OpOutcome apply_path_reversal(const DirectedGraph& g,
                              const std::vector<VertexId>& path);
OpOutcome apply_cycle_reversal(const DirectedGraph& g,
                               const std::vector<VertexId>& cycle);
DirectedGraph apply_atyp_vertex_add(const DirectedGraph& g, VertexId vnew,
                                    VertexId j, VertexId k);
DirectedGraph apply_atyp_edge_split(const DirectedGraph& g, VertexId vnew,
                                    VertexId j, VertexId k, VertexId l,
                                    const std::vector<VertexId>& path);
// Convenience form: uses the BFS path from j to k.
DirectedGraph apply_atyp_edge_split(const DirectedGraph& g, VertexId vnew,
                                    VertexId j, VertexId k, VertexId l);

// Expands a macro reversal into the exact sequence of single edge
// reversals that apply_* would perform, in order.
std::vector<Operation> lower_path_reversal(const DirectedGraph& g,
                                           const std::vector<VertexId>& path);
std::vector<Operation> lower_cycle_reversal(const DirectedGraph& g,
                                            const std::vector<VertexId>& cycle);

struct ReverseCheck {
  bool ok = false;
  std::string reason;  // set when !ok
};

// Decides whether a Rev* operation applies to g, with a human-readable
// reason on refusal.  Never throws: inapplicable, malformed and
// wrong-kind operations all come back as !ok.
ReverseCheck validate_reverse(const DirectedGraph& g, const Operation& op);

// Applies a Rev* operation; throws PreconditionError with the
// validate_reverse reason when it does not apply.
DirectedGraph apply_reverse(const DirectedGraph& g, const Operation& op);

// Uniform dispatcher over all operation kinds.
OpOutcome apply_operation(const DirectedGraph& g, const Operation& op);

// Inverse of an operation.  The plain form works for every kind that
// carries enough parameters (all forward kinds and RevAtypEdgeSplit);
// RevStdVertexAdd, RevStdEdgeSplit and RevAtypVertexAdd lose the removed
// vertex's neighborhood, so their inverses must be resolved against the
// graph the operation applies to.
Operation invert(const Operation& op);
Operation invert(const Operation& op, const DirectedGraph& pre);

}  // namespace persist
