#include "persist/json_io.hpp"

#include <cctype>
#include <sstream>

namespace persist {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ordered_json id_array(const std::vector<VertexId>& ids) {
  ordered_json arr = ordered_json::array();
  for (VertexId v : ids) arr.push_back(v);
  return arr;
}

ordered_json pair_array(VertexId a, VertexId b) {
  return ordered_json::array({a, b});
}

VertexId int_field(const json& args, const char* name,
                   const std::string& kind) {
  if (!args.contains(name) || !args[name].is_number_integer())
    throw PreconditionError(kind + " args need integer field \"" +
                            name + "\"");
  return args[name].get<VertexId>();
}

std::vector<VertexId> path_field(const json& args, const char* name,
                                 const std::string& kind) {
  if (!args.contains(name) || !args[name].is_array())
    throw PreconditionError(kind + " args need array field \"" + name +
                            "\"");
  std::vector<VertexId> path;
  for (const auto& v : args[name]) {
    if (!v.is_number_integer())
      throw PreconditionError(kind + " field \"" + name +
                              "\" must hold integers");
    path.push_back(v.get<VertexId>());
  }
  return path;
}

std::pair<VertexId, VertexId> pair_field(const json& args, const char* name,
                                         const std::string& kind) {
  if (!args.contains(name) || !args[name].is_array() ||
      args[name].size() != 2 || !args[name][0].is_number_integer() ||
      !args[name][1].is_number_integer())
    throw PreconditionError(kind + " args need a two-integer field \"" +
                            name + "\"");
  return {args[name][0].get<VertexId>(), args[name][1].get<VertexId>()};
}

}  // namespace

ordered_json graph_to_json(const DirectedGraph& g) {
  ordered_json j;
  ordered_json vertices = ordered_json::array();
  for (VertexId v : g.vertices()) vertices.push_back(v);
  ordered_json edges = ordered_json::array();
  for (const DirectedEdge& e : g.edges()) edges.push_back(pair_array(e.from, e.to));
  j["vertices"] = std::move(vertices);
  j["edges"] = std::move(edges);
  return j;
}

ordered_json view_to_json(const UndirectedView& view) {
  ordered_json j;
  ordered_json vertices = ordered_json::array();
  for (VertexId v : view.vertices()) vertices.push_back(v);
  ordered_json edges = ordered_json::array();
  for (const VertexPair& e : view.edges()) edges.push_back(pair_array(e.a, e.b));
  j["vertices"] = std::move(vertices);
  j["edges"] = std::move(edges);
  return j;
}

DirectedGraph graph_from_json(const json& j) {
  if (!j.is_object())
    throw PreconditionError("graph must be a JSON object");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw PreconditionError("graph needs a \"vertices\" array");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw PreconditionError("graph needs an \"edges\" array");
  std::set<VertexId> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_number_integer())
      throw PreconditionError("vertex ids must be integers");
    if (!vertices.insert(v.get<VertexId>()).second)
      throw PreconditionError("duplicate vertex id " +
                              std::to_string(v.get<VertexId>()));
  }
  std::set<DirectedEdge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw PreconditionError("edges must be [from,to] integer pairs");
    const DirectedEdge de{e[0].get<VertexId>(), e[1].get<VertexId>()};
    if (!edges.insert(de).second)
      throw PreconditionError("duplicate edge " + to_string(de));
  }
  return DirectedGraph::from_parts(std::move(vertices), std::move(edges));
}

ordered_json op_to_json(const Operation& op) {
  ordered_json args;
  std::visit(
      overloaded{
          [&](const StdVertexAdd& o) {
            args["new"] = o.vnew;
            args["j"] = o.j;
            args["k"] = o.k;
          },
          [&](const StdEdgeSplit& o) {
            args["new"] = o.vnew;
            args["j"] = o.j;
            args["k"] = o.k;
            args["l"] = o.l;
          },
          [&](const EdgeReversal& o) {
            args["i"] = o.i;
            args["j"] = o.j;
          },
          [&](const PathReversal& o) { args["path"] = id_array(o.path); },
          [&](const CycleReversal& o) { args["cycle"] = id_array(o.cycle); },
          [&](const AtypVertexAdd& o) {
            args["new"] = o.vnew;
            args["j"] = o.j;
            args["k"] = o.k;
          },
          [&](const AtypEdgeSplit& o) {
            args["new"] = o.vnew;
            args["j"] = o.j;
            args["k"] = o.k;
            args["l"] = o.l;
            args["path"] = id_array(o.path);
          },
          [&](const RevStdVertexAdd& o) { args["i"] = o.i; },
          [&](const RevStdEdgeSplit& o) {
            args["i"] = o.i;
            args["addPair"] =
                pair_array(o.add_pair.first, o.add_pair.second);
          },
          [&](const RevAtypVertexAdd& o) { args["i"] = o.i; },
          [&](const RevAtypEdgeSplit& o) {
            args["i"] = o.i;
            args["path"] = id_array(o.path);
            args["addPair"] =
                pair_array(o.add_pair.first, o.add_pair.second);
          },
      },
      op);
  ordered_json j;
  j["op"] = op_kind(op);
  j["args"] = std::move(args);
  return j;
}

Operation op_from_json(const json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
    throw PreconditionError("operation needs an \"op\" kind string");
  if (!j.contains("args") || !j["args"].is_object())
    throw PreconditionError("operation needs an \"args\" object");
  const std::string kind = j["op"].get<std::string>();
  const json& args = j["args"];
  if (kind == "StdVertexAdd")
    return StdVertexAdd{int_field(args, "new", kind), int_field(args, "j", kind),
                        int_field(args, "k", kind)};
  if (kind == "StdEdgeSplit")
    return StdEdgeSplit{int_field(args, "new", kind), int_field(args, "j", kind),
                        int_field(args, "k", kind), int_field(args, "l", kind)};
  if (kind == "EdgeReversal")
    return EdgeReversal{int_field(args, "i", kind), int_field(args, "j", kind)};
  if (kind == "PathReversal")
    return PathReversal{path_field(args, "path", kind)};
  if (kind == "CycleReversal")
    return CycleReversal{path_field(args, "cycle", kind)};
  if (kind == "AtypVertexAdd")
    return AtypVertexAdd{int_field(args, "new", kind), int_field(args, "j", kind),
                         int_field(args, "k", kind)};
  if (kind == "AtypEdgeSplit")
    return AtypEdgeSplit{int_field(args, "new", kind),
                         int_field(args, "j", kind), int_field(args, "k", kind),
                         int_field(args, "l", kind),
                         path_field(args, "path", kind)};
  if (kind == "RevStdVertexAdd")
    return RevStdVertexAdd{int_field(args, "i", kind)};
  if (kind == "RevStdEdgeSplit")
    return RevStdEdgeSplit{int_field(args, "i", kind),
                           pair_field(args, "addPair", kind)};
  if (kind == "RevAtypVertexAdd")
    return RevAtypVertexAdd{int_field(args, "i", kind)};
  if (kind == "RevAtypEdgeSplit")
    return RevAtypEdgeSplit{int_field(args, "i", kind),
                            path_field(args, "path", kind),
                            pair_field(args, "addPair", kind)};
  throw PreconditionError("unknown operation kind \"" + kind + "\"");
}

ordered_json plan_to_json(const Plan& plan) {
  ordered_json j;
  j["initial"] = graph_to_json(plan.initial);
  ordered_json steps = ordered_json::array();
  for (const Operation& op : plan.steps) steps.push_back(op_to_json(op));
  j["steps"] = std::move(steps);
  if (plan.seed_rename) {
    ordered_json rename;
    rename["afterStep"] = plan.seed_rename->after_step;
    ordered_json mapping = ordered_json::array();
    for (const auto& [from, to] : plan.seed_rename->mapping)
      mapping.push_back(pair_array(from, to));
    rename["map"] = std::move(mapping);
    j["seedRename"] = std::move(rename);
  }
  j["final"] = graph_to_json(plan.final);
  return j;
}

Plan plan_from_json(const json& j) {
  if (!j.is_object())
    throw PreconditionError("plan must be a JSON object");
  if (!j.contains("initial") || !j.contains("steps") || !j.contains("final"))
    throw PreconditionError("plan needs \"initial\", \"steps\" and "
                            "\"final\"");
  if (!j["steps"].is_array())
    throw PreconditionError("plan \"steps\" must be an array");
  Plan plan;
  plan.initial = graph_from_json(j["initial"]);
  for (const auto& step : j["steps"]) plan.steps.push_back(op_from_json(step));
  plan.final = graph_from_json(j["final"]);
  if (j.contains("seedRename")) {
    const json& r = j["seedRename"];
    if (!r.is_object() || !r.contains("afterStep") ||
        !r["afterStep"].is_number_integer() || !r.contains("map") ||
        !r["map"].is_array())
      throw PreconditionError("seedRename needs \"afterStep\" and \"map\"");
    SeedRename rename;
    rename.after_step = r["afterStep"].get<int>();
    for (const auto& entry : r["map"]) {
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number_integer() || !entry[1].is_number_integer())
        throw PreconditionError("seedRename map entries must be [from,to] "
                                "pairs");
      rename.mapping[entry[0].get<VertexId>()] = entry[1].get<VertexId>();
    }
    plan.seed_rename = std::move(rename);
  }
  return plan;
}

ordered_json report_to_json(const PersistenceReport& report) {
  ordered_json j;
  j["rank"] = report.rigidity.rank;
  j["isRigid"] = report.rigidity.is_rigid;
  j["isMinimallyRigid"] = report.rigidity.is_minimally_rigid;
  j["maxOutDegree"] = report.max_out_degree;
  j["isMinimallyPersistent"] = report.is_minimally_persistent;
  ordered_json dof = ordered_json::object();
  for (const auto& [v, d] : report.dof.per_vertex)
    dof[std::to_string(v)] = d;
  j["dof"] = std::move(dof);
  if (report.violation) {
    ordered_json v;
    v["kind"] = report.violation->kind == ViolationKind::OutDegree
                    ? "outDegree"
                    : "lamanSubset";
    if (report.violation->kind == ViolationKind::OutDegree) {
      v["vertex"] = report.violation->vertex;
    } else {
      ordered_json edges = ordered_json::array();
      for (const DirectedEdge& e : report.violation->edges)
        edges.push_back(pair_array(e.from, e.to));
      v["edges"] = std::move(edges);
    }
    v["reason"] = report.violation->reason;
    j["violation"] = std::move(v);
  }
  return j;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("invalid JSON: ") + e.what());
  }
}

DirectedGraph parse_graph_text(const std::string& text) {
  size_t first = 0;
  while (first < text.size() &&
         std::isspace(static_cast<unsigned char>(text[first])))
    ++first;
  if (first == text.size())
    throw PreconditionError("empty graph input");
  if (text[first] == '{')
    return graph_from_json(parse_json_text(text));

  std::set<VertexId> vertices;
  std::set<DirectedEdge> edges;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    VertexId from = 0, to = 0;
    if (!(fields >> from)) continue;  // blank line
    if (!(fields >> to))
      throw PreconditionError("edge list line " + std::to_string(lineno) +
                              " must hold two vertex ids");
    std::string extra;
    if (fields >> extra)
      throw PreconditionError("edge list line " + std::to_string(lineno) +
                              " has trailing content \"" + extra + "\"");
    vertices.insert(from);
    vertices.insert(to);
    if (!edges.insert(DirectedEdge{from, to}).second)
      throw PreconditionError("duplicate edge " +
                              to_string(DirectedEdge{from, to}));
  }
  if (edges.empty())
    throw PreconditionError("edge list holds no edges");
  return DirectedGraph::from_parts(std::move(vertices), std::move(edges));
}

std::string graph_line(const DirectedGraph& g) {
  return graph_to_json(g).dump();
}

}  // namespace persist
