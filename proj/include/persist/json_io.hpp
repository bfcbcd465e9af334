#pragma once

#include <json.hpp>
#include <string>

#include "persist/graph.hpp"
#include "persist/ops.hpp"
#include "persist/persistence.hpp"
#include "persist/sequencer.hpp"

namespace persist {

// Serialization uses ordered_json throughout so output is byte-stable:
// fixed field order, vertices ascending, edges lexicographic.

nlohmann::ordered_json graph_to_json(const DirectedGraph& g);
nlohmann::ordered_json view_to_json(const UndirectedView& view);
nlohmann::ordered_json op_to_json(const Operation& op);
nlohmann::ordered_json plan_to_json(const Plan& plan);
nlohmann::ordered_json report_to_json(const PersistenceReport& report);

DirectedGraph graph_from_json(const nlohmann::json& j);
Operation op_from_json(const nlohmann::json& j);
Plan plan_from_json(const nlohmann::json& j);

// json::parse with parse errors (position info included) rethrown as
// PreconditionError, so the CLI maps them to the invalid-input exit code.
nlohmann::json parse_json_text(const std::string& text);

// Reads either the JSON object form or a plain edge list with one "from
// to" pair per line; the first non-space byte decides which.
DirectedGraph parse_graph_text(const std::string& text);

// Compact one-line JSON form, suitable for corpus records.
std::string graph_line(const DirectedGraph& g);

}  // namespace persist
