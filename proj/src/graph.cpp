#include "persist/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace persist {

namespace {

std::string edge_text(VertexId from, VertexId to) {
  std::ostringstream os;
  os << "(" << from << "," << to << ")";
  return os.str();
}

}  // namespace

DirectedGraph::DirectedGraph(std::initializer_list<VertexId> vertices,
                             std::initializer_list<DirectedEdge> edges) {
  *this = from_parts(std::set<VertexId>(vertices),
                     std::set<DirectedEdge>(edges));
}

DirectedGraph DirectedGraph::from_parts(std::set<VertexId> vertices,
                                        std::set<DirectedEdge> edges) {
  for (VertexId v : vertices) {
    if (v < 0)
      throw PreconditionError("vertex id " + std::to_string(v) +
                              " is negative");
  }
  for (const DirectedEdge& e : edges) {
    if (e.from == e.to)
      throw PreconditionError("self-loop " + edge_text(e.from, e.to) +
                              " is not allowed");
    if (!vertices.count(e.from) || !vertices.count(e.to))
      throw PreconditionError("edge " + edge_text(e.from, e.to) +
                              " references an unknown vertex");
  }
  DirectedGraph g;
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  return g;
}

bool DirectedGraph::has_vertex(VertexId v) const {
  return vertices_.count(v) != 0;
}

bool DirectedGraph::has_edge(VertexId from, VertexId to) const {
  return edges_.count(DirectedEdge{from, to}) != 0;
}

bool DirectedGraph::has_antiparallel_pair() const {
  for (const DirectedEdge& e : edges_)
    if (e.from < e.to && has_edge(e.to, e.from)) return true;
  return false;
}

std::vector<VertexId> DirectedGraph::out_neighbors(VertexId v) const {
  require_vertex(v);
  std::vector<VertexId> out;
  // edges_ is ordered by (from, to), so the slice starting at {v, 0} is
  // already ascending in the target id.
  for (auto it = edges_.lower_bound(DirectedEdge{v, 0});
       it != edges_.end() && it->from == v; ++it)
    out.push_back(it->to);
  return out;
}

std::vector<VertexId> DirectedGraph::in_neighbors(VertexId v) const {
  require_vertex(v);
  std::set<VertexId> in;
  for (const DirectedEdge& e : edges_)
    if (e.to == v) in.insert(e.from);
  return {in.begin(), in.end()};
}

int DirectedGraph::out_degree(VertexId v) const {
  return static_cast<int>(out_neighbors(v).size());
}

int DirectedGraph::in_degree(VertexId v) const {
  return static_cast<int>(in_neighbors(v).size());
}

VertexId DirectedGraph::fresh_id() const {
  return vertices_.empty() ? 1 : *vertices_.rbegin() + 1;
}

DirectedGraph DirectedGraph::with_vertex(VertexId v) const {
  if (v < 0)
    throw PreconditionError("vertex id " + std::to_string(v) + " is negative");
  if (has_vertex(v))
    throw PreconditionError("vertex " + std::to_string(v) + " already exists");
  DirectedGraph g(*this);
  g.vertices_.insert(v);
  return g;
}

DirectedGraph DirectedGraph::without_vertex(VertexId v) const {
  require_vertex(v);
  DirectedGraph g;
  g.vertices_ = vertices_;
  g.vertices_.erase(v);
  for (const DirectedEdge& e : edges_)
    if (e.from != v && e.to != v) g.edges_.insert(e);
  return g;
}

DirectedGraph DirectedGraph::with_edge(VertexId from, VertexId to) const {
  require_vertex(from);
  require_vertex(to);
  if (from == to)
    throw PreconditionError("self-loop " + edge_text(from, to) +
                            " is not allowed");
  if (has_edge(from, to))
    throw PreconditionError("edge " + edge_text(from, to) +
                            " already present");
  DirectedGraph g(*this);
  g.edges_.insert(DirectedEdge{from, to});
  return g;
}

DirectedGraph DirectedGraph::without_edge(VertexId from, VertexId to) const {
  if (!has_edge(from, to))
    throw PreconditionError("edge " + edge_text(from, to) + " not present");
  DirectedGraph g(*this);
  g.edges_.erase(DirectedEdge{from, to});
  return g;
}

DirectedGraph DirectedGraph::with_reversed_edge(VertexId from,
                                                VertexId to) const {
  if (!has_edge(from, to))
    throw PreconditionError("edge " + edge_text(from, to) + " not present");
  if (has_edge(to, from))
    throw PreconditionError("reversing " + edge_text(from, to) +
                            " would duplicate " + edge_text(to, from));
  DirectedGraph g(*this);
  g.edges_.erase(DirectedEdge{from, to});
  g.edges_.insert(DirectedEdge{to, from});
  return g;
}

DirectedGraph DirectedGraph::renamed(
    const std::map<VertexId, VertexId>& mapping) const {
  auto rename = [&mapping](VertexId v) {
    auto it = mapping.find(v);
    return it == mapping.end() ? v : it->second;
  };
  std::set<VertexId> vertices;
  for (VertexId v : vertices_) {
    if (!vertices.insert(rename(v)).second)
      throw PreconditionError("renaming maps two vertices to id " +
                              std::to_string(rename(v)));
  }
  std::set<DirectedEdge> edges;
  for (const DirectedEdge& e : edges_)
    edges.insert(DirectedEdge{rename(e.from), rename(e.to)});
  return from_parts(std::move(vertices), std::move(edges));
}

void DirectedGraph::require_vertex(VertexId v) const {
  if (!has_vertex(v))
    throw PreconditionError("vertex " + std::to_string(v) + " does not exist");
}

UndirectedView::UndirectedView(std::initializer_list<VertexId> vertices,
                               std::initializer_list<VertexPair> edges) {
  *this = from_parts(std::set<VertexId>(vertices),
                     std::set<VertexPair>(edges));
}

UndirectedView UndirectedView::from_parts(std::set<VertexId> vertices,
                                          std::set<VertexPair> edges) {
  for (VertexId v : vertices) {
    if (v < 0)
      throw PreconditionError("vertex id " + std::to_string(v) +
                              " is negative");
  }
  for (const VertexPair& e : edges) {
    if (e.a == e.b)
      throw PreconditionError("self-loop " + edge_text(e.a, e.b) +
                              " is not allowed");
    if (!vertices.count(e.a) || !vertices.count(e.b))
      throw PreconditionError("edge " + edge_text(e.a, e.b) +
                              " references an unknown vertex");
  }
  UndirectedView u;
  u.vertices_ = std::move(vertices);
  u.edges_ = std::move(edges);
  return u;
}

bool UndirectedView::has_vertex(VertexId v) const {
  return vertices_.count(v) != 0;
}

bool UndirectedView::has_edge(VertexId a, VertexId b) const {
  return edges_.count(VertexPair(a, b)) != 0;
}

std::vector<VertexId> UndirectedView::neighbors(VertexId v) const {
  require_vertex(v);
  std::set<VertexId> out;
  for (const VertexPair& e : edges_) {
    if (e.a == v) out.insert(e.b);
    if (e.b == v) out.insert(e.a);
  }
  return {out.begin(), out.end()};
}

int UndirectedView::degree(VertexId v) const {
  return static_cast<int>(neighbors(v).size());
}

UndirectedView UndirectedView::with_vertex(VertexId v) const {
  if (v < 0)
    throw PreconditionError("vertex id " + std::to_string(v) + " is negative");
  if (has_vertex(v))
    throw PreconditionError("vertex " + std::to_string(v) + " already exists");
  UndirectedView u(*this);
  u.vertices_.insert(v);
  return u;
}

UndirectedView UndirectedView::without_vertex(VertexId v) const {
  require_vertex(v);
  UndirectedView u;
  u.vertices_ = vertices_;
  u.vertices_.erase(v);
  for (const VertexPair& e : edges_)
    if (e.a != v && e.b != v) u.edges_.insert(e);
  return u;
}

UndirectedView UndirectedView::with_edge(VertexId a, VertexId b) const {
  require_vertex(a);
  require_vertex(b);
  if (a == b)
    throw PreconditionError("self-loop " + edge_text(a, b) +
                            " is not allowed");
  if (has_edge(a, b))
    throw PreconditionError("edge " + edge_text(a, b) + " already present");
  UndirectedView u(*this);
  u.edges_.insert(VertexPair(a, b));
  return u;
}

UndirectedView UndirectedView::without_edge(VertexId a, VertexId b) const {
  if (!has_edge(a, b))
    throw PreconditionError("edge " + edge_text(a, b) + " not present");
  UndirectedView u(*this);
  u.edges_.erase(VertexPair(a, b));
  return u;
}

void UndirectedView::require_vertex(VertexId v) const {
  if (!has_vertex(v))
    throw PreconditionError("vertex " + std::to_string(v) + " does not exist");
}

UndirectedView underlying(const DirectedGraph& g) {
  std::set<VertexPair> edges;
  for (const DirectedEdge& e : g.edges()) edges.insert(VertexPair(e.from, e.to));
  return UndirectedView::from_parts(g.vertices(), std::move(edges));
}

int dof(const DirectedGraph& g, VertexId v) {
  return std::max(0, 2 - g.out_degree(v));
}

std::optional<std::vector<VertexId>> directed_path(const DirectedGraph& g,
                                                   VertexId from,
                                                   VertexId to) {
  if (!g.has_vertex(from))
    throw PreconditionError("vertex " + std::to_string(from) +
                            " does not exist");
  if (!g.has_vertex(to))
    throw PreconditionError("vertex " + std::to_string(to) +
                            " does not exist");
  if (from == to) return std::vector<VertexId>{from};

  std::map<VertexId, VertexId> parent;
  parent[from] = from;
  std::deque<VertexId> queue{from};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : g.out_neighbors(v)) {
      if (parent.count(w)) continue;
      parent[w] = v;
      if (w == to) {
        std::vector<VertexId> path{to};
        while (path.back() != from) path.push_back(parent.at(path.back()));
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

std::string to_string(const DirectedEdge& e) {
  return edge_text(e.from, e.to);
}

std::string to_string(const DirectedGraph& g) {
  std::ostringstream os;
  os << "V={";
  bool first = true;
  for (VertexId v : g.vertices()) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  os << "} E={";
  first = true;
  for (const DirectedEdge& e : g.edges()) {
    if (!first) os << ",";
    os << to_string(e);
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace persist
