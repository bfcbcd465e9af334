#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace persist {

using VertexId = int;

// Thrown whenever a caller violates a documented precondition: malformed
// graphs, unknown vertex ids, operations applied to graphs that do not
// admit them.  The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DirectedEdge {
  VertexId from{};
  VertexId to{};
  auto operator<=>(const DirectedEdge&) const = default;
};

// Unordered vertex pair, normalized so that a <= b holds after construction.
struct VertexPair {
  VertexId a{};
  VertexId b{};
  VertexPair() = default;
  VertexPair(VertexId x, VertexId y) : a(x < y ? x : y), b(x < y ? y : x) {}
  auto operator<=>(const VertexPair&) const = default;
};

// Finite directed graph over non-negative integer vertex ids.  Value
// semantics throughout: the with_*/without_* builders return a modified
// copy and never touch the receiver, so callers can keep every
// intermediate graph of a plan without defensive copying.  Self-loops are
// rejected at construction; anti-parallel pairs (u,v),(v,u) are
// representable (and queryable) so that checkers can reject them with a
// proper diagnostic instead of silently collapsing them.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(std::initializer_list<VertexId> vertices,
                std::initializer_list<DirectedEdge> edges);
  static DirectedGraph from_parts(std::set<VertexId> vertices,
                                  std::set<DirectedEdge> edges);

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::set<DirectedEdge>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_vertex(VertexId v) const;
  bool has_edge(VertexId from, VertexId to) const;
  bool has_antiparallel_pair() const;

  std::vector<VertexId> out_neighbors(VertexId v) const;  // ascending
  std::vector<VertexId> in_neighbors(VertexId v) const;   // ascending
  int out_degree(VertexId v) const;
  int in_degree(VertexId v) const;

  // Proposes an id for a vertex about to be added: max existing id + 1.
  VertexId fresh_id() const;

  DirectedGraph with_vertex(VertexId v) const;
  DirectedGraph without_vertex(VertexId v) const;  // drops incident edges
  DirectedGraph with_edge(VertexId from, VertexId to) const;
  DirectedGraph without_edge(VertexId from, VertexId to) const;
  DirectedGraph with_reversed_edge(VertexId from, VertexId to) const;

  // Relabels vertices through `mapping` (identity where a vertex has no
  // entry).  The result must again have distinct ids.
  DirectedGraph renamed(const std::map<VertexId, VertexId>& mapping) const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  void require_vertex(VertexId v) const;

  std::set<VertexId> vertices_;
  std::set<DirectedEdge> edges_;
};

// Direction-erased companion of DirectedGraph, used by the rigidity layer
// (rigidity is a property of the underlying graph only).
class UndirectedView {
 public:
  UndirectedView() = default;
  UndirectedView(std::initializer_list<VertexId> vertices,
                 std::initializer_list<VertexPair> edges);
  static UndirectedView from_parts(std::set<VertexId> vertices,
                                   std::set<VertexPair> edges);

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::set<VertexPair>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_vertex(VertexId v) const;
  bool has_edge(VertexId a, VertexId b) const;
  std::vector<VertexId> neighbors(VertexId v) const;  // ascending
  int degree(VertexId v) const;

  UndirectedView with_vertex(VertexId v) const;
  UndirectedView without_vertex(VertexId v) const;
  UndirectedView with_edge(VertexId a, VertexId b) const;
  UndirectedView without_edge(VertexId a, VertexId b) const;

  bool operator==(const UndirectedView&) const = default;

 private:
  void require_vertex(VertexId v) const;

  std::set<VertexId> vertices_;
  std::set<VertexPair> edges_;
};

// Erases edge directions.  Anti-parallel pairs collapse to one undirected
// edge, which is why persistence checks must test has_antiparallel_pair()
// explicitly instead of trusting the view's edge count.
UndirectedView underlying(const DirectedGraph& g);

// Number of directional constraints vertex v can still accept:
// max(0, 2 - out_degree(v)).
int dof(const DirectedGraph& g, VertexId v);

// Shortest directed path from `from` to `to` as a vertex sequence, BFS with
// ascending neighbor order so results are reproducible.  from == to yields
// the single-vertex path.  Returns nullopt when `to` is unreachable.
std::optional<std::vector<VertexId>> directed_path(const DirectedGraph& g,
                                                   VertexId from, VertexId to);

std::string to_string(const DirectedEdge& e);
std::string to_string(const DirectedGraph& g);

}  // namespace persist
