#include <doctest.h>

#include <set>
#include <vector>

#include "persist/enumerate.hpp"
#include "persist/json_io.hpp"
#include "persist/sequencer.hpp"

using namespace persist;

namespace {

DirectedGraph seed_edge() {
  return DirectedGraph::from_parts({1, 2}, {{2, 1}});
}

DirectedGraph directed_triangle() {
  return DirectedGraph::from_parts({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
}

DirectedGraph chain4() {
  return DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}});
}

bool minimally_persistent(const DirectedGraph& g) {
  return check_min_persistent(g).is_minimally_persistent;
}

template <class Kind>
bool is_kind(const Operation& op) {
  return std::holds_alternative<Kind>(op);
}

}  // namespace

TEST_CASE("replay accepts an empty plan and rejects a wrong final graph") {
  Plan plan;
  plan.initial = seed_edge();
  plan.final = seed_edge();
  CHECK(replay(plan).ok);

  plan.final = DirectedGraph({1, 2}, {{1, 2}});
  const ReplayResult r = replay(plan);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_step == -1);
  CHECK(r.reason.find("final") != std::string::npos);
}

TEST_CASE("replay pinpoints the failing step") {
  Plan plan;
  plan.initial = seed_edge();
  plan.steps.push_back(StdVertexAdd{3, 1, 2});
  plan.steps.push_back(StdVertexAdd{3, 1, 2});  // id 3 already taken
  plan.final = seed_edge();
  const ReplayResult r = replay(plan);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_step == 1);
  CHECK(r.reason.find("already exists") != std::string::npos);
}

TEST_CASE("replay compares stored snapshots exactly") {
  Plan plan;
  plan.initial = seed_edge();
  plan.steps.push_back(StdVertexAdd{3, 1, 2});
  plan.snapshots.push_back(directed_triangle());  // wrong graph on purpose
  plan.final = DirectedGraph({1, 2, 3}, {{2, 1}, {3, 1}, {3, 2}});
  const ReplayResult r = replay(plan);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_step == 0);
  CHECK(r.reason.find("snapshot") != std::string::npos);
}

TEST_CASE("replay refuses a non-persistent initial graph") {
  Plan plan;
  plan.initial = DirectedGraph({1, 2, 3}, {{2, 1}, {3, 2}});
  plan.final = plan.initial;
  const ReplayResult r = replay(plan);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_step == -1);
  CHECK(r.reason.find("initial") != std::string::npos);
}

TEST_CASE("replay applies a seed rename at the recorded boundary") {
  Plan plan;
  plan.initial = seed_edge();
  plan.seed_rename = SeedRename{0, {{1, 7}, {2, 8}}};
  plan.steps.push_back(StdVertexAdd{3, 7, 8});
  plan.final = DirectedGraph({3, 7, 8}, {{8, 7}, {3, 7}, {3, 8}});
  CHECK(replay(plan).ok);
}

TEST_CASE("decomposition peels the triangle in one step") {
  const Plan plan = decompose_A(directed_triangle());
  REQUIRE(plan.steps.size() == 1);
  CHECK(is_kind<RevAtypVertexAdd>(plan.steps[0]));
  CHECK(plan.final.vertex_count() == 2);
  CHECK(replay(plan).ok);
}

TEST_CASE("decomposition takes |V| - 2 steps and stays persistent") {
  for (const DirectedGraph& g :
       {chain4(), DirectedGraph({1, 2, 3, 4, 5},
                                {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4},
                                 {3, 5}, {4, 5}})}) {
    const Plan plan = decompose_A(g);
    CHECK(static_cast<int>(plan.steps.size()) == g.vertex_count() - 2);
    for (const DirectedGraph& snap : plan.snapshots)
      CHECK(minimally_persistent(snap));
    CHECK(plan.final.vertex_count() == 2);
    CHECK(replay(plan).ok);
  }
  CHECK_THROWS_AS(decompose_A(DirectedGraph({1, 2, 3}, {{2, 1}, {3, 2}})),
                  PreconditionError);
}

TEST_CASE("decomposition prefers cheap vertex removals") {
  // chain4's vertex 1 has pattern (2,0)...(not removable); vertex 2 is
  // (2,1), vertex 3 is (1,2), vertex 4 is (0,2): the (0,2) vertex wins.
  const Plan plan = decompose_A(chain4());
  REQUIRE(plan.steps.size() == 2);
  CHECK(std::get<RevStdVertexAdd>(plan.steps[0]) == RevStdVertexAdd{4});
  // after removing 4, vertex 3 has pattern (0,2)
  CHECK(std::get<RevStdVertexAdd>(plan.steps[1]) == RevStdVertexAdd{3});
}

TEST_CASE("restricted decomposition uses only standard removals and "
          "reversals") {
  const std::vector<DirectedGraph> graphs = {
      directed_triangle(), chain4(),
      DirectedGraph({1, 2, 3, 4, 5},
                    {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 5},
                     {4, 5}})};
  for (const DirectedGraph& g : graphs) {
    const Plan plan = decompose_T(g);
    for (const Operation& op : plan.steps) {
      const bool allowed = is_kind<RevStdVertexAdd>(op) ||
                           is_kind<RevStdEdgeSplit>(op) ||
                           is_kind<EdgeReversal>(op);
      CHECK(allowed);
    }
    CHECK(plan.final.vertex_count() == 2);
    CHECK(replay(plan).ok);
  }
}

TEST_CASE("restricted decomposition detours around stuck graphs") {
  // Every graph that the unrestricted scheme can only peel atypically must
  // still come apart with standard removals plus edge reversals.
  for (const DirectedGraph& g : find_s_inverse_stuck(4)) {
    const Plan plan = decompose_T(g);
    bool sawReversal = false;
    for (const Operation& op : plan.steps) {
      const bool allowed = is_kind<RevStdVertexAdd>(op) ||
                           is_kind<RevStdEdgeSplit>(op) ||
                           is_kind<EdgeReversal>(op);
      CHECK(allowed);
      sawReversal = sawReversal || is_kind<EdgeReversal>(op);
    }
    CHECK(sawReversal);
    CHECK(plan.final.vertex_count() == 2);
    CHECK(replay(plan).ok);
  }
}

TEST_CASE("construction from the seed rebuilds the exact graph") {
  for (const DirectedGraph& g : {directed_triangle(), chain4()}) {
    const Plan plan = construct_from_seed(g);
    CHECK(plan.initial.vertex_count() == 2);
    CHECK(plan.final == g);
    const ReplayResult r = replay(plan);
    CHECK(r.ok);
    CHECK(r.final == g);
  }
}

TEST_CASE("freedom repositioning hits the target allocation") {
  const DirectedGraph g = chain4();  // freedom sits at 1 (2) and 2 (1)
  DofAllocation target;
  target.per_vertex = {{1, 0}, {2, 1}, {3, 0}, {4, 2}};
  const Plan plan = reposition_dof(g, target);
  CHECK(plan.steps.size() <= 3);
  CHECK(dof_allocation(plan.final) == target);
  CHECK(underlying(plan.final) == underlying(g));
  CHECK(replay(plan).ok);

  // already in place: nothing to do
  CHECK(reposition_dof(g, dof_allocation(g)).steps.empty());
}

TEST_CASE("freedom repositioning validates the target") {
  const DirectedGraph g = chain4();
  DofAllocation bad;
  bad.per_vertex = {{1, 2}, {2, 1}, {3, 0}};  // vertex 4 missing
  CHECK_THROWS_AS(reposition_dof(g, bad), PreconditionError);
  bad.per_vertex = {{1, 2}, {2, 1}, {3, 0}, {4, 1}};  // total 4
  CHECK_THROWS_AS(reposition_dof(g, bad), PreconditionError);
  bad.per_vertex = {{1, 3}, {2, 0}, {3, 0}, {4, 0}};  // per-vertex cap
  CHECK_THROWS_AS(reposition_dof(g, bad), PreconditionError);
  bad.per_vertex = {{1, 2}, {2, 0}, {3, 0}, {9, 1}};  // unknown vertex
  CHECK_THROWS_AS(reposition_dof(g, bad), PreconditionError);
}

TEST_CASE("orientation alignment reverses mismatched cycles") {
  const DirectedGraph a = directed_triangle();
  const DirectedGraph b = DirectedGraph({1, 2, 3}, {{2, 1}, {3, 2}, {1, 3}});
  const Plan plan = align_orientations(a, b);
  CHECK(plan.steps.size() == 1);  // floor(3/3)
  CHECK(is_kind<CycleReversal>(plan.steps[0]));
  CHECK(plan.final == b);
  CHECK(replay(plan).ok);

  CHECK(align_orientations(a, a).steps.empty());
}

TEST_CASE("orientation alignment requires matching freedom") {
  const DirectedGraph a = seed_edge();
  const DirectedGraph b = DirectedGraph({1, 2}, {{1, 2}});
  CHECK_THROWS_AS(align_orientations(a, b), PreconditionError);
}

TEST_CASE("same-underlying transformation lowers to edge reversals") {
  const DirectedGraph a = seed_edge();
  const DirectedGraph b = DirectedGraph({1, 2}, {{1, 2}});
  const Plan plan = transform_same_underlying(a, b);
  REQUIRE(plan.steps.size() == 1);
  CHECK(std::get<EdgeReversal>(plan.steps[0]) == EdgeReversal{2, 1});
  CHECK(plan.final == b);
  CHECK(replay(plan).ok);
}

TEST_CASE("same-underlying transformation handles freedom and orientation") {
  // same underlying graph as chain4 but with the freedom parked at 4 and
  // the 1-2-3 block oriented differently
  const DirectedGraph a = chain4();
  const DirectedGraph b = DirectedGraph(
      {1, 2, 3, 4}, {{1, 2}, {1, 3}, {3, 2}, {2, 4}, {3, 4}});
  REQUIRE(underlying(a) == underlying(b));
  const Plan plan = transform_same_underlying(a, b);
  for (const Operation& op : plan.steps) CHECK(is_kind<EdgeReversal>(op));
  for (const DirectedGraph& snap : plan.snapshots)
    CHECK(minimally_persistent(snap));
  CHECK(plan.final == b);
  CHECK(replay(plan).ok);

  const DirectedGraph other = directed_triangle();
  CHECK_THROWS_AS(transform_same_underlying(a, other), PreconditionError);
}

TEST_CASE("general transformation flips the seed when needed") {
  const DirectedGraph a = seed_edge();
  const DirectedGraph b = DirectedGraph({1, 2}, {{1, 2}});
  const Plan plan = transform_general(a, b);
  REQUIRE(plan.steps.size() == 1);
  CHECK(is_kind<EdgeReversal>(plan.steps[0]));
  CHECK_FALSE(plan.seed_rename.has_value());
  CHECK(plan.final == b);
  CHECK(replay(plan).ok);

  // identical graphs transform with an empty plan
  CHECK(transform_general(a, a).steps.empty());
}

TEST_CASE("general transformation renames disjoint seeds") {
  const DirectedGraph a = directed_triangle();
  const DirectedGraph b =
      DirectedGraph({4, 5, 6}, {{4, 5}, {5, 6}, {6, 4}});
  const Plan plan = transform_general(a, b);
  REQUIRE(plan.seed_rename.has_value());
  CHECK(plan.seed_rename->after_step == 1);
  // one removal, no flip, one re-addition
  REQUIRE(plan.steps.size() == 2);
  CHECK(is_kind<RevAtypVertexAdd>(plan.steps[0]));
  CHECK(is_kind<AtypVertexAdd>(plan.steps[1]));
  CHECK(plan.final == b);
  CHECK(replay(plan).ok);
}

TEST_CASE("general transformation bridges partially shared seeds") {
  const DirectedGraph a = directed_triangle();  // peels to seed {2,3}
  const DirectedGraph b =
      DirectedGraph({1, 3, 4}, {{1, 3}, {3, 4}, {4, 1}});  // seed {3,4}
  const Plan plan = transform_general(a, b);
  REQUIRE(plan.seed_rename.has_value());
  CHECK(plan.seed_rename->mapping == std::map<VertexId, VertexId>{{2, 4}});
  CHECK(plan.final == b);
  CHECK(replay(plan).ok);
  // two structural steps plus at most one alignment reversal
  int structural = 0;
  for (const Operation& op : plan.steps)
    if (!is_kind<EdgeReversal>(op)) ++structural;
  CHECK(structural == a.vertex_count() + b.vertex_count() - 4);
  CHECK(static_cast<int>(plan.steps.size()) <= structural + 1);
}

TEST_CASE("general transformation in the restricted operation set") {
  const DirectedGraph a = chain4();
  const DirectedGraph b = DirectedGraph(
      {1, 2, 3, 4}, {{1, 2}, {1, 3}, {3, 2}, {2, 4}, {3, 4}});
  const Plan plan = transform_general(a, b, OpSet::T);
  for (const Operation& op : plan.steps) {
    const bool allowed =
        is_kind<StdVertexAdd>(op) || is_kind<StdEdgeSplit>(op) ||
        is_kind<RevStdVertexAdd>(op) || is_kind<RevStdEdgeSplit>(op) ||
        is_kind<EdgeReversal>(op);
    CHECK(allowed);
  }
  CHECK(plan.final == b);
  CHECK(replay(plan).ok);
}

TEST_CASE("orienting a minimally rigid graph") {
  const UndirectedView triangle({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
  const auto [oriented, plan] = orient_min_rigid(triangle);
  CHECK(underlying(oriented) == triangle);
  CHECK(minimally_persistent(oriented));
  CHECK(plan.final == oriented);
  CHECK(replay(plan).ok);

  // a single undirected edge orients higher id -> lower id
  const auto [two, p2] = orient_min_rigid(UndirectedView({1, 2}, {{1, 2}}));
  CHECK(two == seed_edge());
  CHECK(p2.steps.empty());
}

TEST_CASE("orienting needs the degree-3 fallback on 3-regular graphs") {
  // K_{3,3} is minimally rigid and 3-regular, so no degree-2 peel exists.
  std::set<VertexPair> edges;
  for (VertexId a : {1, 2, 3})
    for (VertexId b : {4, 5, 6}) edges.insert(VertexPair(a, b));
  const UndirectedView k33 =
      UndirectedView::from_parts({1, 2, 3, 4, 5, 6}, std::move(edges));
  const auto [oriented, plan] = orient_min_rigid(k33);
  CHECK(underlying(oriented) == k33);
  CHECK(minimally_persistent(oriented));
  bool sawSplit = false;
  for (const Operation& op : plan.steps)
    sawSplit = sawSplit || is_kind<StdEdgeSplit>(op);
  CHECK(sawSplit);
  CHECK(replay(plan).ok);
}

TEST_CASE("orienting refuses graphs that are not minimally rigid") {
  const UndirectedView path({1, 2, 3}, {{1, 2}, {2, 3}});
  CHECK_THROWS_AS(orient_min_rigid(path), PreconditionError);
  std::set<VertexPair> k4;
  for (VertexId a = 1; a <= 4; ++a)
    for (VertexId b = a + 1; b <= 4; ++b) k4.insert(VertexPair(a, b));
  CHECK_THROWS_AS(orient_min_rigid(
                      UndirectedView::from_parts({1, 2, 3, 4}, std::move(k4))),
                  PreconditionError);
}
