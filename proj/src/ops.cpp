#include "persist/ops.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "persist/persistence.hpp"
#include "persist/rigidity.hpp"

namespace persist {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string pair_text(VertexId a, VertexId b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string pattern_text(const DirectedGraph& g, VertexId v) {
  return "(in,out)=(" + std::to_string(g.in_degree(v)) + "," +
         std::to_string(g.out_degree(v)) + ")";
}

// Post-condition guard: every operation must hand back a minimally
// persistent graph.  A failure here is a bug in the operation itself, not
// bad caller input, hence logic_error.
DirectedGraph checked(DirectedGraph g, const std::string& what) {
  if (!check_min_persistent(g).is_minimally_persistent)
    throw std::logic_error(what +
                           " produced a graph that is not minimally "
                           "persistent");
  return g;
}

void require_fresh(const DirectedGraph& g, VertexId vnew,
                   const std::string& what) {
  if (vnew < 0)
    throw PreconditionError(what + ": new vertex id " +
                            std::to_string(vnew) + " is negative");
  if (g.has_vertex(vnew))
    throw PreconditionError(what + ": vertex " + std::to_string(vnew) +
                            " already exists");
}

void require_vertex(const DirectedGraph& g, VertexId v,
                    const std::string& what) {
  if (!g.has_vertex(v))
    throw PreconditionError(what + ": vertex " + std::to_string(v) +
                            " does not exist");
}

// Shape checks shared by open and closed path reversals: at least one
// vertex, no revisits (other than the closing one), consecutive edges all
// present.
void validate_path_shape(const DirectedGraph& g,
                         const std::vector<VertexId>& path,
                         const std::string& what) {
  if (path.empty())
    throw PreconditionError(what + ": path must contain at least one vertex");
  for (VertexId v : path) require_vertex(g, v, what);
  const bool closed = path.size() >= 2 && path.front() == path.back();
  if (closed && path.size() < 4)
    throw PreconditionError(what + ": closed path needs at least 3 edges");
  const size_t unique_len = closed ? path.size() - 1 : path.size();
  std::set<VertexId> seen;
  for (size_t t = 0; t < unique_len; ++t)
    if (!seen.insert(path[t]).second)
      throw PreconditionError(what + ": path revisits vertex " +
                              std::to_string(path[t]));
  for (size_t t = 0; t + 1 < path.size(); ++t)
    if (!g.has_edge(path[t], path[t + 1]))
      throw PreconditionError(what + ": edge " +
                              pair_text(path[t], path[t + 1]) +
                              " is not present");
}

// The edge reversals a path reversal expands into.  Reversing the last
// edge first is essential: each vertex loses its on-path out-edge before
// gaining the reversed one, so no out-degree ever exceeds 2 in between.
std::vector<EdgeReversal> path_reversal_steps(
    const std::vector<VertexId>& path) {
  std::vector<EdgeReversal> steps;
  for (int t = static_cast<int>(path.size()) - 2; t >= 0; --t)
    steps.push_back(EdgeReversal{path[t], path[t + 1]});
  return steps;
}

std::optional<std::string> min_persistent_reason(const DirectedGraph& g) {
  const PersistenceReport report = check_min_persistent(g);
  if (report.is_minimally_persistent) return std::nullopt;
  if (report.violation) return report.violation->reason;
  return "underlying graph is not rigid (rank " +
         std::to_string(report.rigidity.rank) + " of " +
         std::to_string(2 * g.vertex_count() - 3) + ")";
}

}  // namespace

std::string op_kind(const Operation& op) {
  return std::visit(
      overloaded{
          [](const StdVertexAdd&) { return "StdVertexAdd"; },
          [](const StdEdgeSplit&) { return "StdEdgeSplit"; },
          [](const EdgeReversal&) { return "EdgeReversal"; },
          [](const PathReversal&) { return "PathReversal"; },
          [](const CycleReversal&) { return "CycleReversal"; },
          [](const AtypVertexAdd&) { return "AtypVertexAdd"; },
          [](const AtypEdgeSplit&) { return "AtypEdgeSplit"; },
          [](const RevStdVertexAdd&) { return "RevStdVertexAdd"; },
          [](const RevStdEdgeSplit&) { return "RevStdEdgeSplit"; },
          [](const RevAtypVertexAdd&) { return "RevAtypVertexAdd"; },
          [](const RevAtypEdgeSplit&) { return "RevAtypEdgeSplit"; },
      },
      op);
}

DirectedGraph apply_std_vertex_add(const DirectedGraph& g, VertexId vnew,
                                   VertexId j, VertexId k) {
  const std::string what = "standard vertex addition";
  require_min_persistent(g, what);
  require_fresh(g, vnew, what);
  require_vertex(g, j, what);
  require_vertex(g, k, what);
  if (j == k)
    throw PreconditionError(what + ": j and k must be distinct");
  return checked(g.with_vertex(vnew).with_edge(vnew, j).with_edge(vnew, k),
                 what);
}

DirectedGraph apply_std_edge_split(const DirectedGraph& g, VertexId vnew,
                                   VertexId j, VertexId k, VertexId l) {
  const std::string what = "standard edge splitting";
  require_min_persistent(g, what);
  require_fresh(g, vnew, what);
  require_vertex(g, l, what);
  if (!g.has_edge(j, k))
    throw PreconditionError(what + ": edge " + pair_text(j, k) +
                            " is not present");
  if (l == j || l == k)
    throw PreconditionError(what + ": l must differ from the split edge's "
                            "endpoints");
  return checked(g.without_edge(j, k)
                     .with_vertex(vnew)
                     .with_edge(j, vnew)
                     .with_edge(vnew, k)
                     .with_edge(vnew, l),
                 what);
}

DirectedGraph apply_edge_reversal(const DirectedGraph& g, VertexId i,
                                  VertexId j) {
  const std::string what = "edge reversal";
  require_min_persistent(g, what);
  if (!g.has_edge(i, j))
    throw PreconditionError(what + ": edge " + pair_text(i, j) +
                            " is not present");
  if (dof(g, j) < 1)
    throw PreconditionError(what + ": vertex " + std::to_string(j) +
                            " has no spare degree of freedom to absorb " +
                            pair_text(j, i));
  return checked(g.with_reversed_edge(i, j), what);
}

std::vector<Operation> lower_path_reversal(const DirectedGraph& g,
                                           const std::vector<VertexId>& path) {
  const std::string what = "path reversal";
  require_min_persistent(g, what);
  validate_path_shape(g, path, what);
  if (path.size() >= 2 && dof(g, path.back()) < 1)
    throw PreconditionError(what + ": destination vertex " +
                            std::to_string(path.back()) +
                            " has no spare degree of freedom");
  std::vector<Operation> ops;
  for (const EdgeReversal& step : path_reversal_steps(path)) ops.push_back(step);
  return ops;
}

OpOutcome apply_path_reversal(const DirectedGraph& g,
                              const std::vector<VertexId>& path) {
  OpOutcome outcome{g, 0};
  for (const Operation& step : lower_path_reversal(g, path)) {
    const auto& er = std::get<EdgeReversal>(step);
    outcome.graph = apply_edge_reversal(outcome.graph, er.i, er.j);
    outcome.applied_edge_reversals += 1;
  }
  return outcome;
}

namespace {

void validate_cycle_shape(const DirectedGraph& g,
                          const std::vector<VertexId>& cycle,
                          const std::string& what) {
  if (cycle.size() < 3)
    throw PreconditionError(what + ": cycle needs at least 3 vertices");
  std::set<VertexId> seen;
  for (VertexId v : cycle) {
    require_vertex(g, v, what);
    if (!seen.insert(v).second)
      throw PreconditionError(what + ": cycle revisits vertex " +
                              std::to_string(v));
  }
  for (size_t t = 0; t < cycle.size(); ++t) {
    VertexId a = cycle[t];
    VertexId b = cycle[(t + 1) % cycle.size()];
    if (!g.has_edge(a, b))
      throw PreconditionError(what + ": edge " + pair_text(a, b) +
                              " is not present");
  }
}

// Cycle rotated to start at `anchor` and closed: [anchor, ..., anchor].
std::vector<VertexId> rotate_closed(const std::vector<VertexId>& cycle,
                                    VertexId anchor) {
  std::vector<VertexId> out;
  const size_t k = cycle.size();
  size_t start = 0;
  while (cycle[start] != anchor) ++start;
  for (size_t t = 0; t <= k; ++t) out.push_back(cycle[(start + t) % k]);
  return out;
}

}  // namespace

std::vector<Operation> lower_cycle_reversal(
    const DirectedGraph& g, const std::vector<VertexId>& cycle) {
  const std::string what = "cycle reversal";
  require_min_persistent(g, what);
  validate_cycle_shape(g, cycle, what);

  // Easy case: some cycle vertex can absorb the closing reversal itself.
  std::set<VertexId> on_cycle(cycle.begin(), cycle.end());
  for (VertexId v : on_cycle) {
    if (dof(g, v) >= 1) {
      std::vector<Operation> ops;
      for (const EdgeReversal& step :
           path_reversal_steps(rotate_closed(cycle, v)))
        ops.push_back(step);
      return ops;
    }
  }

  // Every cycle vertex is saturated, so borrow freedom from outside: a
  // vertex with spare freedom is always reachable (otherwise the out-closure
  // R of the cycle would carry 2|R| > 2|R|-3 edges).  Reverse a path to it,
  // which frees its cycle-side endpoint, reverse the cycle there, then put
  // the path back.
  std::map<VertexId, VertexId> parent;
  std::deque<VertexId> queue;
  for (VertexId v : on_cycle) {
    parent[v] = v;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : g.out_neighbors(v)) {
      if (parent.count(w)) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  VertexId lender = -1;
  for (const auto& [v, p] : parent) {
    if (!on_cycle.count(v) && dof(g, v) >= 1) {
      lender = v;
      break;  // parent is id-ordered, so this is the smallest candidate
    }
  }
  if (lender < 0)
    throw std::logic_error(what + ": no spare degree of freedom reachable "
                           "from a saturated cycle");

  std::vector<VertexId> borrow{lender};
  while (!on_cycle.count(borrow.back())) borrow.push_back(parent.at(borrow.back()));
  std::reverse(borrow.begin(), borrow.end());  // cycle vertex ... lender
  std::vector<VertexId> give_back(borrow.rbegin(), borrow.rend());

  std::vector<Operation> ops;
  for (const EdgeReversal& step : path_reversal_steps(borrow))
    ops.push_back(step);
  for (const EdgeReversal& step :
       path_reversal_steps(rotate_closed(cycle, borrow.front())))
    ops.push_back(step);
  for (const EdgeReversal& step : path_reversal_steps(give_back))
    ops.push_back(step);
  return ops;
}

OpOutcome apply_cycle_reversal(const DirectedGraph& g,
                               const std::vector<VertexId>& cycle) {
  OpOutcome outcome{g, 0};
  for (const Operation& step : lower_cycle_reversal(g, cycle)) {
    const auto& er = std::get<EdgeReversal>(step);
    outcome.graph = apply_edge_reversal(outcome.graph, er.i, er.j);
    outcome.applied_edge_reversals += 1;
  }
  return outcome;
}

DirectedGraph apply_atyp_vertex_add(const DirectedGraph& g, VertexId vnew,
                                    VertexId j, VertexId k) {
  const std::string what = "atypical vertex addition";
  require_min_persistent(g, what);
  require_fresh(g, vnew, what);
  require_vertex(g, j, what);
  require_vertex(g, k, what);
  if (j == k)
    throw PreconditionError(what + ": j and k must be distinct");
  if (dof(g, j) < 1)
    throw PreconditionError(what + ": vertex " + std::to_string(j) +
                            " has no spare degree of freedom to donate");
  return checked(g.with_vertex(vnew).with_edge(j, vnew).with_edge(vnew, k),
                 what);
}

DirectedGraph apply_atyp_edge_split(const DirectedGraph& g, VertexId vnew,
                                    VertexId j, VertexId k, VertexId l,
                                    const std::vector<VertexId>& path) {
  const std::string what = "atypical edge splitting";
  require_min_persistent(g, what);
  require_fresh(g, vnew, what);
  require_vertex(g, j, what);
  if (j == k || j == l || k == l)
    throw PreconditionError(what + ": j, k and l must be three distinct "
                            "vertices");
  if (!g.has_edge(k, l))
    throw PreconditionError(what + ": edge " + pair_text(k, l) +
                            " is not present");
  validate_path_shape(g, path, what);
  if (path.front() != j || path.back() != k)
    throw PreconditionError(what + ": path must run from j=" +
                            std::to_string(j) + " to k=" + std::to_string(k));

  // Composite surgery; intermediate states are intentionally unchecked.
  // Removing (k,l) first frees k, which is exactly what lets the path
  // reversal end there.
  DirectedGraph work = g.without_edge(k, l);
  for (const EdgeReversal& step : path_reversal_steps(path))
    work = work.with_reversed_edge(step.i, step.j);
  work = work.with_vertex(vnew)
             .with_edge(j, vnew)
             .with_edge(vnew, k)
             .with_edge(vnew, l);
  return checked(std::move(work), what);
}

DirectedGraph apply_atyp_edge_split(const DirectedGraph& g, VertexId vnew,
                                    VertexId j, VertexId k, VertexId l) {
  const std::string what = "atypical edge splitting";
  require_vertex(g, j, what);
  require_vertex(g, k, what);
  auto path = directed_path(g, j, k);
  if (!path)
    throw PreconditionError(what + ": no directed path from " +
                            std::to_string(j) + " to " + std::to_string(k));
  return apply_atyp_edge_split(g, vnew, j, k, l, *path);
}

namespace {

ReverseCheck refuse(std::string reason) { return {false, std::move(reason)}; }

ReverseCheck check_rev_std_vertex_add(const DirectedGraph& g,
                                      const RevStdVertexAdd& op) {
  if (!g.has_vertex(op.i))
    return refuse("vertex " + std::to_string(op.i) + " does not exist");
  if (g.in_degree(op.i) != 0 || g.out_degree(op.i) != 2)
    return refuse("vertex " + std::to_string(op.i) + " has degree pattern " +
                  pattern_text(g, op.i) + ", need (0,2)");
  return {true, {}};
}

ReverseCheck check_rev_std_edge_split(const DirectedGraph& g,
                                      const RevStdEdgeSplit& op) {
  if (!g.has_vertex(op.i))
    return refuse("vertex " + std::to_string(op.i) + " does not exist");
  if (g.in_degree(op.i) != 1 || g.out_degree(op.i) != 2)
    return refuse("vertex " + std::to_string(op.i) + " has degree pattern " +
                  pattern_text(g, op.i) + ", need (1,2)");
  const VertexId j = g.in_neighbors(op.i).front();
  const auto outs = g.out_neighbors(op.i);
  const auto [pj, px] = op.add_pair;
  if (pj != j)
    return refuse("addPair must start at the in-neighbor " +
                  std::to_string(j));
  if (px != outs[0] && px != outs[1])
    return refuse("addPair must end at one of the out-neighbors " +
                  std::to_string(outs[0]) + " or " + std::to_string(outs[1]));
  const DirectedGraph rest = g.without_vertex(op.i);
  if (rest.has_edge(pj, px) || rest.has_edge(px, pj))
    return refuse("pair " + pair_text(pj, px) + " is already an edge "
                  "without vertex " + std::to_string(op.i));
  if (defines_implicit_edge(underlying(rest), pj, px))
    return refuse("pair " + pair_text(pj, px) + " is implicitly rigid "
                  "without vertex " + std::to_string(op.i));
  return {true, {}};
}

ReverseCheck check_rev_atyp_vertex_add(const DirectedGraph& g,
                                       const RevAtypVertexAdd& op) {
  if (!g.has_vertex(op.i))
    return refuse("vertex " + std::to_string(op.i) + " does not exist");
  if (g.in_degree(op.i) != 1 || g.out_degree(op.i) != 1)
    return refuse("vertex " + std::to_string(op.i) + " has degree pattern " +
                  pattern_text(g, op.i) + ", need (1,1)");
  return {true, {}};
}

ReverseCheck check_rev_atyp_edge_split(const DirectedGraph& g,
                                       const RevAtypEdgeSplit& op) {
  if (!g.has_vertex(op.i))
    return refuse("vertex " + std::to_string(op.i) + " does not exist");
  if (g.in_degree(op.i) != 1 || g.out_degree(op.i) != 2)
    return refuse("vertex " + std::to_string(op.i) + " has degree pattern " +
                  pattern_text(g, op.i) + ", need (1,2)");
  const VertexId j = g.in_neighbors(op.i).front();
  const auto outs = g.out_neighbors(op.i);
  const auto [s, o] = op.add_pair;
  if (!((s == outs[0] && o == outs[1]) || (s == outs[1] && o == outs[0])))
    return refuse("addPair must join the out-neighbors " +
                  std::to_string(outs[0]) + " and " + std::to_string(outs[1]));
  if (op.path.size() < 2)
    return refuse("path must contain at least one edge");
  if (op.path.front() != s)
    return refuse("path must start at addPair's first vertex " +
                  std::to_string(s));
  if (op.path.back() != j)
    return refuse("path must end at the in-neighbor " + std::to_string(j));
  const DirectedGraph rest = g.without_vertex(op.i);
  try {
    validate_path_shape(rest, op.path, "reverse atypical edge splitting");
  } catch (const PreconditionError& e) {
    return refuse(e.what());
  }
  if (rest.has_edge(outs[0], outs[1]) || rest.has_edge(outs[1], outs[0]))
    return refuse("pair " + pair_text(outs[0], outs[1]) +
                  " is already an edge without vertex " +
                  std::to_string(op.i));
  if (defines_implicit_edge(underlying(rest), outs[0], outs[1]))
    return refuse("pair " + pair_text(outs[0], outs[1]) +
                  " is implicitly rigid without vertex " +
                  std::to_string(op.i));
  return {true, {}};
}

}  // namespace

ReverseCheck validate_reverse(const DirectedGraph& g, const Operation& op) {
  if (auto why = min_persistent_reason(g))
    return refuse("graph is not minimally persistent: " + *why);
  return std::visit(
      overloaded{
          [&](const RevStdVertexAdd& r) { return check_rev_std_vertex_add(g, r); },
          [&](const RevStdEdgeSplit& r) { return check_rev_std_edge_split(g, r); },
          [&](const RevAtypVertexAdd& r) { return check_rev_atyp_vertex_add(g, r); },
          [&](const RevAtypEdgeSplit& r) { return check_rev_atyp_edge_split(g, r); },
          [&](const auto&) { return refuse("not a reverse operation"); },
      },
      op);
}

DirectedGraph apply_reverse(const DirectedGraph& g, const Operation& op) {
  const ReverseCheck check = validate_reverse(g, op);
  if (!check.ok)
    throw PreconditionError(op_kind(op) + ": " + check.reason);
  return std::visit(
      overloaded{
          [&](const RevStdVertexAdd& r) {
            return checked(g.without_vertex(r.i), "reverse standard vertex "
                           "addition");
          },
          [&](const RevStdEdgeSplit& r) {
            return checked(g.without_vertex(r.i).with_edge(r.add_pair.first,
                                                           r.add_pair.second),
                           "reverse standard edge splitting");
          },
          [&](const RevAtypVertexAdd& r) {
            return checked(g.without_vertex(r.i), "reverse atypical vertex "
                           "addition");
          },
          [&](const RevAtypEdgeSplit& r) {
            DirectedGraph work = g.without_vertex(r.i);
            for (const EdgeReversal& step : path_reversal_steps(r.path))
              work = work.with_reversed_edge(step.i, step.j);
            return checked(
                work.with_edge(r.add_pair.first, r.add_pair.second),
                "reverse atypical edge splitting");
          },
          [&](const auto&) -> DirectedGraph {
            throw std::logic_error("apply_reverse reached a forward "
                                   "operation after validation");
          },
      },
      op);
}

OpOutcome apply_operation(const DirectedGraph& g, const Operation& op) {
  return std::visit(
      overloaded{
          [&](const StdVertexAdd& o) {
            return OpOutcome{apply_std_vertex_add(g, o.vnew, o.j, o.k), 0};
          },
          [&](const StdEdgeSplit& o) {
            return OpOutcome{apply_std_edge_split(g, o.vnew, o.j, o.k, o.l),
                             0};
          },
          [&](const EdgeReversal& o) {
            return OpOutcome{apply_edge_reversal(g, o.i, o.j), 1};
          },
          [&](const PathReversal& o) { return apply_path_reversal(g, o.path); },
          [&](const CycleReversal& o) {
            return apply_cycle_reversal(g, o.cycle);
          },
          [&](const AtypVertexAdd& o) {
            return OpOutcome{apply_atyp_vertex_add(g, o.vnew, o.j, o.k), 0};
          },
          [&](const AtypEdgeSplit& o) {
            if (o.path.empty())
              return OpOutcome{
                  apply_atyp_edge_split(g, o.vnew, o.j, o.k, o.l), 0};
            return OpOutcome{
                apply_atyp_edge_split(g, o.vnew, o.j, o.k, o.l, o.path), 0};
          },
          [&](const auto&) { return OpOutcome{apply_reverse(g, op), 0}; },
      },
      op);
}

Operation invert(const Operation& op) {
  return std::visit(
      overloaded{
          [](const StdVertexAdd& o) -> Operation {
            return RevStdVertexAdd{o.vnew};
          },
          [](const StdEdgeSplit& o) -> Operation {
            return RevStdEdgeSplit{o.vnew, {o.j, o.k}};
          },
          [](const EdgeReversal& o) -> Operation {
            return EdgeReversal{o.j, o.i};
          },
          [](const PathReversal& o) -> Operation {
            return PathReversal{{o.path.rbegin(), o.path.rend()}};
          },
          [](const CycleReversal& o) -> Operation {
            std::vector<VertexId> back{o.cycle.front()};
            back.insert(back.end(), o.cycle.rbegin(), o.cycle.rend() - 1);
            return CycleReversal{std::move(back)};
          },
          [](const AtypVertexAdd& o) -> Operation {
            return RevAtypVertexAdd{o.vnew};
          },
          [](const AtypEdgeSplit& o) -> Operation {
            if (o.path.empty())
              throw PreconditionError("AtypEdgeSplit without an explicit "
                                      "path cannot be inverted");
            return RevAtypEdgeSplit{
                o.vnew, {o.path.rbegin(), o.path.rend()}, {o.k, o.l}};
          },
          [](const RevAtypEdgeSplit& o) -> Operation {
            return AtypEdgeSplit{o.i,
                                 o.path.back(),
                                 o.add_pair.first,
                                 o.add_pair.second,
                                 {o.path.rbegin(), o.path.rend()}};
          },
          [&](const auto&) -> Operation {
            throw PreconditionError(
                op_kind(op) + " does not carry enough parameters to invert; "
                "use invert(op, graph)");
          },
      },
      op);
}

Operation invert(const Operation& op, const DirectedGraph& pre) {
  auto require_valid = [&](const char* kind) {
    const ReverseCheck check = validate_reverse(pre, op);
    if (!check.ok)
      throw PreconditionError(std::string(kind) +
                              " cannot be inverted here: " + check.reason);
  };
  return std::visit(
      overloaded{
          [&](const RevStdVertexAdd& o) -> Operation {
            require_valid("RevStdVertexAdd");
            const auto outs = pre.out_neighbors(o.i);
            return StdVertexAdd{o.i, outs[0], outs[1]};
          },
          [&](const RevStdEdgeSplit& o) -> Operation {
            require_valid("RevStdEdgeSplit");
            const auto outs = pre.out_neighbors(o.i);
            const VertexId other =
                outs[0] == o.add_pair.second ? outs[1] : outs[0];
            return StdEdgeSplit{o.i, o.add_pair.first, o.add_pair.second,
                                other};
          },
          [&](const RevAtypVertexAdd& o) -> Operation {
            require_valid("RevAtypVertexAdd");
            return AtypVertexAdd{o.i, pre.in_neighbors(o.i).front(),
                                 pre.out_neighbors(o.i).front()};
          },
          [&](const auto&) -> Operation { return invert(op); },
      },
      op);
}

}  // namespace persist
