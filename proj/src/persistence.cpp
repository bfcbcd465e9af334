#include "persist/persistence.hpp"

#include <algorithm>

namespace persist {

int DofAllocation::total() const {
  int sum = 0;
  for (const auto& [v, d] : per_vertex) sum += d;
  return sum;
}

DofAllocation dof_allocation(const DirectedGraph& g) {
  DofAllocation alloc;
  for (VertexId v : g.vertices()) alloc.per_vertex[v] = dof(g, v);
  return alloc;
}

namespace {

// Maps an undirected witness pair back to the directed edge(s) of g.
void append_directed(const DirectedGraph& g, const VertexPair& p,
                     std::vector<DirectedEdge>& out) {
  if (g.has_edge(p.a, p.b)) out.push_back(DirectedEdge{p.a, p.b});
  if (g.has_edge(p.b, p.a)) out.push_back(DirectedEdge{p.b, p.a});
}

PersistenceViolation laman_violation(std::vector<DirectedEdge> edges,
                                     std::string reason) {
  PersistenceViolation v;
  v.kind = ViolationKind::LamanSubset;
  v.edges = std::move(edges);
  v.reason = std::move(reason);
  std::sort(v.edges.begin(), v.edges.end());
  v.edges.erase(std::unique(v.edges.begin(), v.edges.end()), v.edges.end());
  return v;
}

}  // namespace

PersistenceReport check_min_persistent(const DirectedGraph& g) {
  if (g.vertex_count() < 2)
    throw PreconditionError("persistence is defined for graphs with at least "
                            "2 vertices");

  PersistenceReport report;
  report.dof = dof_allocation(g);
  for (VertexId v : g.vertices())
    report.max_out_degree = std::max(report.max_out_degree, g.out_degree(v));

  const UndirectedView view = underlying(g);
  const int target = 2 * g.vertex_count() - 3;
  report.rigidity = check_rigidity(view);
  // Minimality counts directed edges: an anti-parallel pair inflates the
  // directed edge count without showing up in the collapsed view.
  report.rigidity.is_minimally_rigid =
      report.rigidity.is_rigid && g.edge_count() == target;

  report.is_minimally_persistent =
      report.rigidity.is_minimally_rigid && report.max_out_degree <= 2;
  if (report.is_minimally_persistent) return report;

  if (report.max_out_degree > 2) {
    for (VertexId v : g.vertices()) {
      if (g.out_degree(v) > 2) {
        PersistenceViolation violation;
        violation.kind = ViolationKind::OutDegree;
        violation.vertex = v;
        violation.reason = "vertex " + std::to_string(v) +
                           " has out-degree " +
                           std::to_string(g.out_degree(v)) +
                           ", more than the 2 allowed";
        report.violation = std::move(violation);
        return report;
      }
    }
  }

  for (const DirectedEdge& e : g.edges()) {
    if (e.from < e.to && g.has_edge(e.to, e.from)) {
      report.violation = laman_violation(
          {DirectedEdge{e.from, e.to}, DirectedEdge{e.to, e.from}},
          "anti-parallel pair between " + std::to_string(e.from) + " and " +
              std::to_string(e.to) +
              ": 2 edges on 2 vertices exceed 2*2-3 = 1");
      return report;
    }
  }

  // Re-run the insertion sequence to locate the first rejected edge and
  // extract the over-braced subset around it.
  if (report.rigidity.rank < view.edge_count()) {
    PebbleState state(view.vertices());
    for (const VertexPair& e : view.edges()) {
      if (state.try_insert(e.a, e.b)) continue;
      std::vector<DirectedEdge> subset;
      for (const VertexPair& w : state.rejection_witness(e.a, e.b))
        append_directed(g, w, subset);
      report.violation = laman_violation(
          std::move(subset), "edge subset around (" + std::to_string(e.a) +
                                 "," + std::to_string(e.b) +
                                 ") exceeds the 2|V|-3 density bound");
      return report;
    }
  }

  // Under-constrained: rank below 2|V|-3 with nothing rejected.  No finite
  // witness exists, so none is attached.
  return report;
}

void require_min_persistent(const DirectedGraph& g,
                            const std::string& context) {
  const PersistenceReport report = check_min_persistent(g);
  if (report.is_minimally_persistent) return;
  std::string why;
  if (report.violation) {
    why = report.violation->reason;
  } else {
    why = "underlying graph is not rigid (rank " +
          std::to_string(report.rigidity.rank) + " of " +
          std::to_string(2 * g.vertex_count() - 3) + ")";
  }
  throw PreconditionError(context + ": graph is not minimally persistent: " +
                          why);
}

}  // namespace persist
