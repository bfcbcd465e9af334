#pragma once

#include <cstdint>
#include <vector>

#include "persist/graph.hpp"

namespace persist {

// All labeled minimally rigid graphs spanning {1..n}, 2 <= n <= 6, in a
// stable (edge-list lexicographic) order.  Generated by growing smaller
// minimally rigid graphs through vertex additions and edge splits where
// the new vertex may take any unused label; growing by ascending label
// only would miss graphs whose largest label has degree above 3.
std::vector<UndirectedView> enumerate_min_rigid(int n);

// All labeled minimally persistent graphs on {1..n}: every orientation of
// every minimally rigid graph that keeps out-degrees at most 2.  Stable
// order (underlying graphs in enumeration order, orientations by
// ascending flip mask).
std::vector<DirectedGraph> enumerate_min_persistent(int n);

// Deterministic pseudo-random minimally persistent graph on {1..n}: grows
// the single-edge seed with n-2 uniformly chosen admissible operations
// (vertex additions and edge splits, atypical ones included).  The same
// seed always yields the same graph, on any platform.
DirectedGraph random_min_persistent(int n, std::uint64_t seed);

// True when no reverse standard operation applies anywhere: no vertex has
// degree pattern (in,out) = (0,2), and no (1,2) vertex admits a reverse
// standard edge splitting.  Such graphs still decompose once the
// atypical operations or edge reversals join the toolbox.
bool is_s_inverse_stuck(const DirectedGraph& g);

// The members of enumerate_min_persistent(n) that are stuck in the above
// sense.  For n = 3 these are exactly the two directed triangles.
std::vector<DirectedGraph> find_s_inverse_stuck(int n);

}  // namespace persist
