#include "persist/sequencer.hpp"

#include <algorithm>
#include <set>

#include "persist/rigidity.hpp"

namespace persist {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Decomposition step for the current graph, preferring cheap removals:
// a (0,2) vertex goes directly, then a (1,1) vertex, then a (1,2) vertex
// via reverse standard edge splitting and, failing that, the atypical one.
// Every minimally persistent graph on 3+ vertices has a vertex in one of
// those three patterns (all other vertices have in-degree >= 2, and
// 2|V| - 3 in-edges cannot give everyone two), and each (1,2) vertex
// admits one of the two reverse splittings.
Operation pick_peel_op(const DirectedGraph& g) {
  for (VertexId v : g.vertices())
    if (g.in_degree(v) == 0 && g.out_degree(v) == 2)
      return RevStdVertexAdd{v};
  for (VertexId v : g.vertices())
    if (g.in_degree(v) == 1 && g.out_degree(v) == 1)
      return RevAtypVertexAdd{v};
  for (VertexId v : g.vertices()) {
    if (g.in_degree(v) != 1 || g.out_degree(v) != 2) continue;
    const VertexId j = g.in_neighbors(v).front();
    const auto outs = g.out_neighbors(v);
    for (VertexId x : outs) {
      Operation op = RevStdEdgeSplit{v, {j, x}};
      if (validate_reverse(g, op).ok) return op;
    }
    const DirectedGraph rest = g.without_vertex(v);
    for (VertexId s : outs) {
      auto path = directed_path(rest, s, j);
      if (!path) continue;
      Operation op =
          RevAtypEdgeSplit{v, *path, {s, s == outs[0] ? outs[1] : outs[0]}};
      if (validate_reverse(g, op).ok) return op;
    }
  }
  throw std::logic_error("decomposition found no removable vertex in a "
                         "minimally persistent graph");
}

}  // namespace

ReplayResult replay(const Plan& plan) {
  DirectedGraph current = plan.initial;
  int step = -1;
  try {
    if (!check_min_persistent(current).is_minimally_persistent)
      return {false, -1, "initial graph is not minimally persistent",
              current};
    if (plan.seed_rename && plan.seed_rename->after_step == 0)
      current = current.renamed(plan.seed_rename->mapping);
    for (step = 0; step < static_cast<int>(plan.steps.size()); ++step) {
      current = apply_operation(current, plan.steps[step]).graph;
      if (plan.seed_rename && plan.seed_rename->after_step == step + 1)
        current = current.renamed(plan.seed_rename->mapping);
      if (!check_min_persistent(current).is_minimally_persistent)
        return {false, step,
                "graph after step " + std::to_string(step) +
                    " is not minimally persistent",
                current};
      if (step < static_cast<int>(plan.snapshots.size()) &&
          !(current == plan.snapshots[step]))
        return {false, step,
                "snapshot mismatch after step " + std::to_string(step),
                current};
    }
  } catch (const PreconditionError& e) {
    return {false, step, e.what(), current};
  }
  if (!(current == plan.final))
    return {false, -1, "replayed result does not match the plan's final "
            "graph", current};
  return {true, -1, "", current};
}

Plan decompose_A(const DirectedGraph& g) {
  require_min_persistent(g, "decomposition");
  Plan plan;
  plan.initial = g;
  DirectedGraph current = g;
  while (current.vertex_count() > 2) {
    const Operation op = pick_peel_op(current);
    current = apply_reverse(current, op);
    plan.steps.push_back(op);
    plan.snapshots.push_back(current);
  }
  plan.final = current;
  return plan;
}

Plan decompose_T(const DirectedGraph& g) {
  require_min_persistent(g, "decomposition");
  Plan plan;
  plan.initial = g;
  DirectedGraph current = g;
  auto emit = [&](const Operation& op) {
    current = apply_operation(current, op).graph;
    plan.steps.push_back(op);
    plan.snapshots.push_back(current);
  };

  while (current.vertex_count() > 2) {
    VertexId v02 = -1, v11 = -1;
    for (VertexId v : current.vertices()) {
      if (v02 < 0 && current.in_degree(v) == 0 && current.out_degree(v) == 2)
        v02 = v;
      if (v11 < 0 && current.in_degree(v) == 1 && current.out_degree(v) == 1)
        v11 = v;
    }
    if (v02 >= 0) {
      emit(RevStdVertexAdd{v02});
      continue;
    }
    if (v11 >= 0) {
      // One reversal turns the (1,1) vertex into a removable (0,2) one.
      emit(EdgeReversal{current.in_neighbors(v11).front(), v11});
      emit(RevStdVertexAdd{v11});
      continue;
    }

    bool peeled = false;
    for (VertexId v : current.vertices()) {
      if (current.in_degree(v) != 1 || current.out_degree(v) != 2) continue;
      const VertexId j = current.in_neighbors(v).front();
      for (VertexId x : current.out_neighbors(v)) {
        Operation op = RevStdEdgeSplit{v, {j, x}};
        if (validate_reverse(current, op).ok) {
          emit(op);
          peeled = true;
          break;
        }
      }
      if (peeled) break;
    }
    if (peeled) continue;

    // Only the atypical reverse splitting applies.  It is not part of this
    // operation set, so detour: compute the smaller graph it would give,
    // re-add the vertex there by a standard split of the restored edge,
    // reorient the current graph into that shape with edge reversals, and
    // remove the vertex with the now-admissible standard reverse split.
    RevAtypEdgeSplit atyp{};
    bool found = false;
    for (VertexId v : current.vertices()) {
      if (current.in_degree(v) != 1 || current.out_degree(v) != 2) continue;
      const VertexId j = current.in_neighbors(v).front();
      const auto outs = current.out_neighbors(v);
      const DirectedGraph rest = current.without_vertex(v);
      for (VertexId s : outs) {
        auto path = directed_path(rest, s, j);
        if (!path) continue;
        RevAtypEdgeSplit candidate{
            v, *path, {s, s == outs[0] ? outs[1] : outs[0]}};
        if (validate_reverse(current, Operation{candidate}).ok) {
          atyp = candidate;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found)
      throw std::logic_error("decomposition found no removable vertex in a "
                             "minimally persistent graph");

    const DirectedGraph small = apply_reverse(current, Operation{atyp});
    const VertexId oldIn = atyp.path.back();
    const DirectedGraph bridge =
        apply_std_edge_split(small, atyp.i, atyp.add_pair.first,
                             atyp.add_pair.second, oldIn);
    const Plan reorient = transform_same_underlying(current, bridge);
    for (const Operation& op : reorient.steps) emit(op);
    emit(RevStdEdgeSplit{atyp.i,
                         {atyp.add_pair.first, atyp.add_pair.second}});
  }
  plan.final = current;
  return plan;
}

Plan construct_from_seed(const DirectedGraph& target) {
  const Plan down = decompose_A(target);
  Plan up;
  up.initial = down.final;
  for (int t = static_cast<int>(down.steps.size()) - 1; t >= 0; --t) {
    const DirectedGraph& pre = t == 0 ? down.initial : down.snapshots[t - 1];
    up.steps.push_back(invert(down.steps[t], pre));
    up.snapshots.push_back(pre);
  }
  up.final = target;
  return up;
}

Plan reposition_dof(const DirectedGraph& g, const DofAllocation& target) {
  const std::string what = "freedom repositioning";
  require_min_persistent(g, what);
  int total = 0;
  for (const auto& [v, d] : target.per_vertex) {
    if (!g.has_vertex(v))
      throw PreconditionError(what + ": target names unknown vertex " +
                              std::to_string(v));
    if (d < 0 || d > 2)
      throw PreconditionError(what + ": freedom of vertex " +
                              std::to_string(v) + " must be between 0 and 2");
    total += d;
  }
  if (target.per_vertex.size() != g.vertices().size())
    throw PreconditionError(what + ": target must cover every vertex");
  if (total != 3)
    throw PreconditionError(what + ": total freedom must be 3, got " +
                            std::to_string(total));

  Plan plan;
  plan.initial = g;
  DirectedGraph current = g;
  while (true) {
    const DofAllocation have = dof_allocation(current);
    VertexId deficit = -1, surplus = -1;
    for (const auto& [v, want] : target.per_vertex) {
      const int got = have.per_vertex.at(v);
      if (deficit < 0 && want > got) deficit = v;
      if (surplus < 0 && want < got) surplus = v;
    }
    if (deficit < 0) break;
    // Every freedom carrier lives in the out-closure of any vertex (the
    // closure holds all three units), so the surplus vertex is reachable.
    const auto path = directed_path(current, deficit, surplus);
    if (!path)
      throw std::logic_error(what + ": freedom carrier out of reach");
    const OpOutcome out = apply_path_reversal(current, *path);
    plan.steps.push_back(PathReversal{*path});
    plan.snapshots.push_back(out.graph);
    current = out.graph;
  }
  plan.final = current;
  return plan;
}

Plan align_orientations(const DirectedGraph& a, const DirectedGraph& b) {
  const std::string what = "orientation alignment";
  require_min_persistent(a, what);
  require_min_persistent(b, what);
  if (a.vertices() != b.vertices())
    throw PreconditionError(what + ": graphs must share their vertex set");
  if (!(underlying(a) == underlying(b)))
    throw PreconditionError(what +
                            ": graphs must share their underlying graph");
  if (!(dof_allocation(a) == dof_allocation(b)))
    throw PreconditionError(what + ": freedom allocations differ; "
                            "reposition first");

  Plan plan;
  plan.initial = a;
  DirectedGraph current = a;
  while (!(current == b)) {
    // Walk edges pointing the wrong way until a vertex repeats; since a and
    // b agree on every out-degree, wrong-way in- and out-degrees balance at
    // every vertex and such a walk closes into a cycle (length >= 3, as
    // anti-parallel pairs cannot occur).
    DirectedEdge seed{-1, -1};
    for (const DirectedEdge& e : current.edges()) {
      if (!b.has_edge(e.from, e.to)) {
        seed = e;
        break;
      }
    }
    if (seed.from < 0)
      throw std::logic_error(what + ": graphs differ but no edge mismatches");
    auto wrong_way_next = [&](VertexId v) -> VertexId {
      for (VertexId w : current.out_neighbors(v))
        if (!b.has_edge(v, w)) return w;
      return -1;
    };
    std::vector<VertexId> walk{seed.from};
    std::map<VertexId, int> seen{{seed.from, 0}};
    while (true) {
      const VertexId next = wrong_way_next(walk.back());
      if (next < 0)
        throw std::logic_error(what + ": wrong-way degrees out of balance");
      const auto hit = seen.find(next);
      if (hit != seen.end()) {
        const std::vector<VertexId> cycle(walk.begin() + hit->second,
                                          walk.end());
        const OpOutcome out = apply_cycle_reversal(current, cycle);
        plan.steps.push_back(CycleReversal{cycle});
        plan.snapshots.push_back(out.graph);
        current = out.graph;
        break;
      }
      seen[next] = static_cast<int>(walk.size());
      walk.push_back(next);
    }
  }
  plan.final = current;
  return plan;
}

Plan transform_same_underlying(const DirectedGraph& a,
                               const DirectedGraph& b) {
  const std::string what = "same-underlying transformation";
  require_min_persistent(a, what);
  require_min_persistent(b, what);
  if (a.vertices() != b.vertices())
    throw PreconditionError(what + ": graphs must share their vertex set");
  if (!(underlying(a) == underlying(b)))
    throw PreconditionError(what +
                            ": graphs must share their underlying graph");

  Plan plan;
  plan.initial = a;
  DirectedGraph current = a;
  auto lower_into = [&](const Plan& macros) {
    for (size_t t = 0; t < macros.steps.size(); ++t) {
      const DirectedGraph& pre =
          t == 0 ? macros.initial : macros.snapshots[t - 1];
      const std::vector<Operation> steps = std::visit(
          overloaded{
              [&](const PathReversal& p) {
                return lower_path_reversal(pre, p.path);
              },
              [&](const CycleReversal& c) {
                return lower_cycle_reversal(pre, c.cycle);
              },
              [&](const auto&) -> std::vector<Operation> {
                throw std::logic_error(what + ": unexpected macro step");
              },
          },
          macros.steps[t]);
      for (const Operation& op : steps) {
        current = apply_operation(current, op).graph;
        plan.steps.push_back(op);
        plan.snapshots.push_back(current);
      }
    }
  };
  lower_into(reposition_dof(a, dof_allocation(b)));
  lower_into(align_orientations(current, b));
  if (!(current == b))
    throw std::logic_error(what + " did not reach the target graph");
  plan.final = current;
  return plan;
}

Plan transform_general(const DirectedGraph& a, const DirectedGraph& b,
                       OpSet mode) {
  const std::string what = "transformation";
  require_min_persistent(a, what);
  require_min_persistent(b, what);

  Plan plan;
  plan.initial = a;
  if (a == b) {
    plan.final = b;
    return plan;
  }

  const Plan down = mode == OpSet::A ? decompose_A(a) : decompose_T(a);
  const Plan target = mode == OpSet::A ? decompose_A(b) : decompose_T(b);
  const DirectedGraph seedB = target.final;

  DirectedGraph current = a;
  auto emit = [&](const Operation& op) {
    current = apply_operation(current, op).graph;
    plan.steps.push_back(op);
    plan.snapshots.push_back(current);
  };
  for (const Operation& op : down.steps) emit(op);

  // Rename the seed's survivors onto seedB's ids: keep shared ids in
  // place; with two fresh ids, map follower to follower and leader to
  // leader so no extra reversal is needed.
  const std::set<VertexId>& va = current.vertices();
  const std::set<VertexId>& vb = seedB.vertices();
  std::map<VertexId, VertexId> mapping;
  std::vector<VertexId> shared;
  for (VertexId v : va)
    if (vb.count(v)) shared.push_back(v);
  if (shared.size() == 1) {
    const VertexId c = shared.front();
    const VertexId xa = *va.begin() == c ? *va.rbegin() : *va.begin();
    const VertexId xb = *vb.begin() == c ? *vb.rbegin() : *vb.begin();
    mapping[xa] = xb;
  } else if (shared.empty()) {
    const DirectedEdge ea = *current.edges().begin();
    const DirectedEdge eb = *seedB.edges().begin();
    mapping[ea.from] = eb.from;
    mapping[ea.to] = eb.to;
  }
  if (!mapping.empty()) {
    plan.seed_rename =
        SeedRename{static_cast<int>(plan.steps.size()), mapping};
    current = current.renamed(mapping);
    if (!plan.snapshots.empty()) plan.snapshots.back() = current;
  }
  if (!(current == seedB)) {
    const DirectedEdge e = *current.edges().begin();
    emit(EdgeReversal{e.from, e.to});
  }
  if (!(current == seedB))
    throw std::logic_error(what + ": seed alignment failed");

  for (int t = static_cast<int>(target.steps.size()) - 1; t >= 0; --t) {
    const DirectedGraph& pre =
        t == 0 ? target.initial : target.snapshots[t - 1];
    emit(invert(target.steps[t], pre));
  }
  if (!(current == b))
    throw std::logic_error(what + ": reconstruction missed the target");
  plan.final = current;
  return plan;
}

std::pair<DirectedGraph, Plan> orient_min_rigid(const UndirectedView& view) {
  const std::string what = "orientation";
  if (view.vertex_count() < 2)
    throw PreconditionError(what + ": need at least 2 vertices");
  if (!check_rigidity(view).is_minimally_rigid)
    throw PreconditionError(what + ": graph is not minimally rigid");

  struct Removal {
    VertexId v{};
    std::vector<VertexId> nbs;
    std::optional<VertexPair> added;  // reinsertion edge of a degree-3 peel
  };
  std::vector<Removal> removals;
  UndirectedView cur = view;
  while (cur.vertex_count() > 2) {
    VertexId v2 = -1, v3 = -1;
    for (VertexId v : cur.vertices()) {
      const int d = cur.degree(v);
      if (d == 2 && v2 < 0) v2 = v;
      if (d == 3 && v3 < 0) v3 = v;
    }
    if (v2 >= 0) {
      removals.push_back({v2, cur.neighbors(v2), std::nullopt});
      cur = cur.without_vertex(v2);
      continue;
    }
    if (v3 < 0)
      throw std::logic_error(what + ": minimally rigid graph without a "
                             "degree-2 or degree-3 vertex");
    const auto nbs = cur.neighbors(v3);
    const UndirectedView rest = cur.without_vertex(v3);
    bool placed = false;
    for (size_t p = 0; p < nbs.size() && !placed; ++p) {
      for (size_t q = p + 1; q < nbs.size() && !placed; ++q) {
        if (rest.has_edge(nbs[p], nbs[q])) continue;
        if (defines_implicit_edge(rest, nbs[p], nbs[q])) continue;
        removals.push_back({v3, nbs, VertexPair(nbs[p], nbs[q])});
        cur = rest.with_edge(nbs[p], nbs[q]);
        placed = true;
      }
    }
    if (!placed)
      throw std::logic_error(what + ": degree-3 vertex without an "
                             "admissible reinsertion edge");
  }

  const VertexId lo = *cur.vertices().begin();
  const VertexId hi = *cur.vertices().rbegin();
  DirectedGraph g =
      DirectedGraph::from_parts({lo, hi}, {DirectedEdge{hi, lo}});
  Plan plan;
  plan.initial = g;
  for (auto it = removals.rbegin(); it != removals.rend(); ++it) {
    Operation op;
    if (!it->added) {
      op = StdVertexAdd{it->v, it->nbs[0], it->nbs[1]};
    } else {
      const VertexId from = g.has_edge(it->added->a, it->added->b)
                                ? it->added->a
                                : it->added->b;
      const VertexId to = from == it->added->a ? it->added->b : it->added->a;
      VertexId third = -1;
      for (VertexId nb : it->nbs)
        if (nb != it->added->a && nb != it->added->b) third = nb;
      op = StdEdgeSplit{it->v, from, to, third};
    }
    g = apply_operation(g, op).graph;
    plan.steps.push_back(op);
    plan.snapshots.push_back(g);
  }
  plan.final = g;
  return {g, plan};
}

}  // namespace persist
