#include "persist/enumerate.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "persist/ops.hpp"
#include "persist/persistence.hpp"

namespace persist {

namespace {

using EdgeSet = std::set<VertexPair>;

std::set<VertexId> touched(const EdgeSet& edges) {
  std::set<VertexId> vs;
  for (const VertexPair& e : edges) {
    vs.insert(e.a);
    vs.insert(e.b);
  }
  return vs;
}

}  // namespace

std::vector<UndirectedView> enumerate_min_rigid(int n) {
  if (n < 2 || n > 6)
    throw PreconditionError("enumeration supports 2 to 6 vertices, got " +
                            std::to_string(n));

  // Graphs are carried as bare edge sets; a minimally rigid graph has no
  // isolated vertex, so the edge set pins down the vertex set.
  std::set<EdgeSet> level;
  for (VertexId a = 1; a <= n; ++a)
    for (VertexId b = a + 1; b <= n; ++b) level.insert({VertexPair(a, b)});

  for (int size = 2; size < n; ++size) {
    std::set<EdgeSet> next;
    for (const EdgeSet& edges : level) {
      const std::set<VertexId> vs = touched(edges);
      for (VertexId v = 1; v <= n; ++v) {
        if (vs.count(v)) continue;
        // vertex addition: connect v to any two existing vertices
        for (VertexId a : vs)
          for (VertexId b : vs) {
            if (a >= b) continue;
            EdgeSet grown = edges;
            grown.insert(VertexPair(v, a));
            grown.insert(VertexPair(v, b));
            next.insert(std::move(grown));
          }
        // edge splitting: subdivide an edge and brace v to a third vertex
        for (const VertexPair& e : edges)
          for (VertexId c : vs) {
            if (c == e.a || c == e.b) continue;
            EdgeSet grown = edges;
            grown.erase(e);
            grown.insert(VertexPair(v, e.a));
            grown.insert(VertexPair(v, e.b));
            grown.insert(VertexPair(v, c));
            next.insert(std::move(grown));
          }
      }
    }
    level = std::move(next);
  }

  std::vector<UndirectedView> views;
  std::set<VertexId> all;
  for (VertexId v = 1; v <= n; ++v) all.insert(v);
  for (const EdgeSet& edges : level)
    views.push_back(UndirectedView::from_parts(all, edges));
  return views;
}

std::vector<DirectedGraph> enumerate_min_persistent(int n) {
  std::vector<DirectedGraph> graphs;
  for (const UndirectedView& view : enumerate_min_rigid(n)) {
    const std::vector<VertexPair> edges(view.edges().begin(),
                                        view.edges().end());
    const int m = static_cast<int>(edges.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::set<DirectedEdge> directed;
      std::map<VertexId, int> out;
      bool ok = true;
      for (int t = 0; t < m && ok; ++t) {
        const VertexId from = (mask >> t) & 1u ? edges[t].b : edges[t].a;
        const VertexId to = (mask >> t) & 1u ? edges[t].a : edges[t].b;
        directed.insert(DirectedEdge{from, to});
        ok = ++out[from] <= 2;
      }
      if (ok)
        graphs.push_back(
            DirectedGraph::from_parts(view.vertices(), std::move(directed)));
    }
  }
  return graphs;
}

DirectedGraph random_min_persistent(int n, std::uint64_t seed) {
  if (n < 2)
    throw PreconditionError("random generation needs at least 2 vertices");
  std::mt19937_64 rng(seed);
  DirectedGraph g =
      DirectedGraph::from_parts({1, 2}, {DirectedEdge{2, 1}});
  while (g.vertex_count() < n) {
    const VertexId vnew = g.fresh_id();
    std::vector<Operation> candidates;
    const auto& vs = g.vertices();
    for (VertexId j : vs)
      for (VertexId k : vs)
        if (j < k) candidates.push_back(StdVertexAdd{vnew, j, k});
    for (const DirectedEdge& e : g.edges())
      for (VertexId l : vs)
        if (l != e.from && l != e.to)
          candidates.push_back(StdEdgeSplit{vnew, e.from, e.to, l});
    for (VertexId j : vs) {
      if (dof(g, j) < 1) continue;
      for (VertexId k : vs)
        if (k != j) candidates.push_back(AtypVertexAdd{vnew, j, k});
    }
    for (const DirectedEdge& e : g.edges())
      for (VertexId j : vs) {
        if (j == e.from || j == e.to) continue;
        auto path = directed_path(g, j, e.from);
        if (path)
          candidates.push_back(
              AtypEdgeSplit{vnew, j, e.from, e.to, *path});
      }
    g = apply_operation(g, candidates[rng() % candidates.size()]).graph;
  }
  return g;
}

bool is_s_inverse_stuck(const DirectedGraph& g) {
  require_min_persistent(g, "stuck check");
  for (VertexId v : g.vertices()) {
    if (g.in_degree(v) == 0 && g.out_degree(v) == 2) return false;
    if (g.in_degree(v) != 1 || g.out_degree(v) != 2) continue;
    const VertexId j = g.in_neighbors(v).front();
    for (VertexId x : g.out_neighbors(v))
      if (validate_reverse(g, RevStdEdgeSplit{v, {j, x}}).ok) return false;
  }
  return true;
}

std::vector<DirectedGraph> find_s_inverse_stuck(int n) {
  std::vector<DirectedGraph> stuck;
  for (const DirectedGraph& g : enumerate_min_persistent(n))
    if (is_s_inverse_stuck(g)) stuck.push_back(g);
  return stuck;
}

}  // namespace persist
