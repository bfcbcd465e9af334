#pragma once

#include <map>
#include <set>
#include <vector>

#include "persist/graph.hpp"

namespace persist {

struct RigidityVerdict {
  int rank = 0;
  bool is_rigid = false;
  bool is_minimally_rigid = false;
  bool operator==(const RigidityVerdict&) const = default;
};

// Incremental (2,3)-pebble game.  Every vertex starts with two pebbles; an
// undirected edge {u,v} is accepted when four pebbles can be gathered on u
// and v together, at which point one pebble of u is consumed and the edge
// is recorded oriented u -> v.  Accepted edges are exactly an independent
// set in the generic 2-D rigidity matroid, so the number of accepted edges
// is the rank of the inserted edge set.
//
// Gathering walks the current orientation depth-first (ascending neighbor
// ids, so runs are reproducible) and reverses the path to the pebble it
// finds.  A rejected insert leaves the pebble counts intact; pebbles may
// have moved, which is harmless because placement is only ever compared
// through counts and reachability.
class PebbleState {
 public:
  explicit PebbleState(const std::set<VertexId>& vertices);

  // True when the edge was accepted (and the state mutated accordingly).
  bool try_insert(VertexId u, VertexId v);

  int pebbles(VertexId v) const;
  int total_pebbles() const;
  int accepted_count() const { return static_cast<int>(accepted_.size()); }
  const std::set<VertexPair>& accepted() const { return accepted_; }
  const std::map<VertexId, std::set<VertexId>>& orientation() const {
    return orient_;
  }

  // pebbles(v) + out-degree(v) == 2 for every vertex, and the number of
  // accepted edges equals 2|V| minus the total pebble count.
  bool invariant_holds() const;

  // After try_insert(u,v) returned false: the accepted edges induced on the
  // orientation-closure of {u,v}, plus {u,v} itself.  That subset E'' always
  // violates |E''| <= 2|V(E'')| - 3, which is what made the insert fail.
  std::vector<VertexPair> rejection_witness(VertexId u, VertexId v) const;

 private:
  bool gather(VertexId root, VertexId blocked);
  bool dfs(VertexId v, std::set<VertexId>& visited);

  std::map<VertexId, int> pebbles_;
  std::map<VertexId, std::set<VertexId>> orient_;
  std::set<VertexPair> accepted_;
};

// Rank of the edge set via the pebble game; rigid when the rank reaches
// 2|V| - 3, minimally rigid when additionally no edge was redundant.
// Requires at least two vertices.
RigidityVerdict check_rigidity(const UndirectedView& view);

// True when the pair {u,v} (not an edge of the view) is already rigidly
// constrained by the view's edges, i.e. inserting it into the pebble game
// after all existing edges would be rejected.  Meaningful when the view's
// edge set is independent, which is the only way it is used here.
bool defines_implicit_edge(const UndirectedView& view, VertexId u, VertexId v);

// Definition-level check used to cross-validate the pebble game: the edge
// count must be exactly 2|V| - 3 and every non-empty edge subset E'' must
// satisfy |E''| <= 2|V(E'')| - 3.  Exhaustive over all subsets, so it
// refuses views with more than 10 vertices.
bool oracle_minimally_rigid(const UndirectedView& view);

}  // namespace persist
