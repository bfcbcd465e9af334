#include "persist/rigidity.hpp"

#include <string>

namespace persist {

PebbleState::PebbleState(const std::set<VertexId>& vertices) {
  for (VertexId v : vertices) {
    pebbles_[v] = 2;
    orient_[v];
  }
}

int PebbleState::pebbles(VertexId v) const {
  auto it = pebbles_.find(v);
  if (it == pebbles_.end())
    throw PreconditionError("vertex " + std::to_string(v) +
                            " is not part of this pebble game");
  return it->second;
}

int PebbleState::total_pebbles() const {
  int total = 0;
  for (const auto& [v, p] : pebbles_) total += p;
  return total;
}

bool PebbleState::invariant_holds() const {
  for (const auto& [v, p] : pebbles_) {
    if (p + static_cast<int>(orient_.at(v).size()) != 2) return false;
  }
  return accepted_count() ==
         2 * static_cast<int>(pebbles_.size()) - total_pebbles();
}

// Depth-first search along the orientation for a vertex with a free pebble.
// On success the pebble is handed back along the reversed path, so the
// caller's root ends up with one more pebble and every intermediate vertex
// is unchanged.
bool PebbleState::dfs(VertexId v, std::set<VertexId>& visited) {
  const std::set<VertexId> out = orient_.at(v);  // copy: mutated on success
  for (VertexId w : out) {
    if (visited.count(w)) continue;
    if (pebbles_.at(w) > 0) {
      pebbles_[w] -= 1;
      orient_[v].erase(w);
      orient_[w].insert(v);
      pebbles_[v] += 1;
      return true;
    }
    visited.insert(w);
    if (dfs(w, visited)) {
      // w just regained a pebble from deeper in the search; pass it on.
      pebbles_[w] -= 1;
      orient_[v].erase(w);
      orient_[w].insert(v);
      pebbles_[v] += 1;
      return true;
    }
  }
  return false;
}

bool PebbleState::gather(VertexId root, VertexId blocked) {
  std::set<VertexId> visited{root, blocked};
  return dfs(root, visited);
}

bool PebbleState::try_insert(VertexId u, VertexId v) {
  if (u == v)
    throw PreconditionError("self-loop (" + std::to_string(u) + "," +
                            std::to_string(v) + ") cannot be inserted");
  if (!pebbles_.count(u) || !pebbles_.count(v))
    throw PreconditionError("edge endpoints must be part of the pebble game");

  while (pebbles_[u] + pebbles_[v] < 4) {
    if (pebbles_[u] < 2 && gather(u, v)) continue;
    if (pebbles_[v] < 2 && gather(v, u)) continue;
    return false;
  }
  pebbles_[u] -= 1;
  orient_[u].insert(v);
  accepted_.insert(VertexPair(u, v));
  return true;
}

std::vector<VertexPair> PebbleState::rejection_witness(VertexId u,
                                                       VertexId v) const {
  // Closure of {u,v} under the orientation.  After a failed insert every
  // vertex in the closure other than u and v holds no pebble, so the edges
  // induced on it number 2|closure| - pebbles(u) - pebbles(v), and together
  // with {u,v} they exceed the density bound.
  std::set<VertexId> closure;
  std::vector<VertexId> stack{u, v};
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    if (!closure.insert(x).second) continue;
    for (VertexId y : orient_.at(x)) stack.push_back(y);
  }
  std::vector<VertexPair> witness;
  for (const auto& [x, outs] : orient_) {
    if (!closure.count(x)) continue;
    for (VertexId y : outs) witness.push_back(VertexPair(x, y));
  }
  witness.push_back(VertexPair(u, v));
  return witness;
}

RigidityVerdict check_rigidity(const UndirectedView& view) {
  if (view.vertex_count() < 2)
    throw PreconditionError("rigidity is defined for graphs with at least 2 "
                            "vertices");
  PebbleState state(view.vertices());
  for (const VertexPair& e : view.edges()) state.try_insert(e.a, e.b);
  const int target = 2 * view.vertex_count() - 3;
  RigidityVerdict verdict;
  verdict.rank = state.accepted_count();
  verdict.is_rigid = verdict.rank == target;
  verdict.is_minimally_rigid =
      verdict.is_rigid && view.edge_count() == target;
  return verdict;
}

bool defines_implicit_edge(const UndirectedView& view, VertexId u,
                           VertexId v) {
  if (u == v)
    throw PreconditionError("implicit-edge query needs two distinct vertices");
  if (!view.has_vertex(u) || !view.has_vertex(v))
    throw PreconditionError("implicit-edge query references an unknown "
                            "vertex");
  if (view.has_edge(u, v))
    throw PreconditionError("pair (" + std::to_string(u) + "," +
                            std::to_string(v) + ") is an explicit edge");
  PebbleState state(view.vertices());
  for (const VertexPair& e : view.edges()) state.try_insert(e.a, e.b);
  return !state.try_insert(u, v);
}

bool oracle_minimally_rigid(const UndirectedView& view) {
  const int n = view.vertex_count();
  if (n < 2)
    throw PreconditionError("rigidity is defined for graphs with at least 2 "
                            "vertices");
  if (n > 10)
    throw PreconditionError("exhaustive rigidity oracle refuses more than 10 "
                            "vertices");
  if (view.edge_count() != 2 * n - 3) return false;

  const std::vector<VertexPair> edges(view.edges().begin(),
                                      view.edges().end());
  const int m = static_cast<int>(edges.size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::set<VertexId> touched;
    int count = 0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        touched.insert(edges[i].a);
        touched.insert(edges[i].b);
        ++count;
      }
    }
    if (count > 2 * static_cast<int>(touched.size()) - 3) return false;
  }
  return true;
}

}  // namespace persist
