#include <doctest.h>

#include <vector>

#include "persist/ops.hpp"
#include "persist/persistence.hpp"

using namespace persist;

namespace {

DirectedGraph seed_edge() {
  return DirectedGraph::from_parts({1, 2}, {{2, 1}});
}

DirectedGraph directed_triangle() {
  return DirectedGraph::from_parts({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
}

// Leader-follower graph on 4 vertices: 1 is free, 2 half-constrained.
DirectedGraph chain4() {
  return DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}});
}

bool minimally_persistent(const DirectedGraph& g) {
  return check_min_persistent(g).is_minimally_persistent;
}

}  // namespace

TEST_CASE("standard vertex addition") {
  const DirectedGraph g = apply_std_vertex_add(seed_edge(), 3, 1, 2);
  CHECK(g == DirectedGraph({1, 2, 3}, {{2, 1}, {3, 1}, {3, 2}}));
  CHECK(minimally_persistent(g));

  CHECK_THROWS_AS(apply_std_vertex_add(seed_edge(), 2, 1, 2),
                  PreconditionError);  // id taken
  CHECK_THROWS_AS(apply_std_vertex_add(seed_edge(), 3, 1, 1),
                  PreconditionError);  // j == k
  CHECK_THROWS_AS(apply_std_vertex_add(seed_edge(), 3, 1, 9),
                  PreconditionError);  // unknown anchor
}

TEST_CASE("standard edge splitting") {
  const DirectedGraph g = apply_std_edge_split(chain4(), 5, 3, 2, 1);
  CHECK_FALSE(g.has_edge(3, 2));
  CHECK(g.has_edge(3, 5));
  CHECK(g.has_edge(5, 2));
  CHECK(g.has_edge(5, 1));
  CHECK(minimally_persistent(g));

  CHECK_THROWS_AS(apply_std_edge_split(chain4(), 5, 2, 3, 1),
                  PreconditionError);  // (2,3) is not an edge
  CHECK_THROWS_AS(apply_std_edge_split(chain4(), 5, 3, 2, 3),
                  PreconditionError);  // l collides with an endpoint
}

TEST_CASE("edge reversal moves one degree of freedom") {
  const DirectedGraph g = apply_edge_reversal(directed_triangle(), 1, 2);
  CHECK(g == DirectedGraph({1, 2, 3}, {{2, 1}, {2, 3}, {3, 1}}));
  CHECK(minimally_persistent(g));

  // vertex 3 is saturated in chain4, so (4,3) cannot be reversed
  CHECK_THROWS_AS(apply_edge_reversal(chain4(), 4, 3), PreconditionError);
  CHECK_THROWS_AS(apply_edge_reversal(chain4(), 1, 2), PreconditionError);
}

TEST_CASE("path reversal must run back to front") {
  // Reversing [3,4,2] works only because (4,2) flips before (3,4): vertex 4
  // is saturated until its own out-edge is gone.
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 4}, {4, 1}, {4, 2}});
  REQUIRE(minimally_persistent(g));
  CHECK_THROWS_AS(apply_edge_reversal(g, 3, 4), PreconditionError);

  const OpOutcome out = apply_path_reversal(g, {3, 4, 2});
  CHECK(out.applied_edge_reversals == 2);
  CHECK(out.graph == DirectedGraph({1, 2, 3, 4},
                                   {{2, 1}, {2, 4}, {3, 1}, {4, 1}, {4, 3}}));
  CHECK(minimally_persistent(out.graph));
}

TEST_CASE("lowering a path reversal lists last edge first") {
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 4}, {4, 1}, {4, 2}});
  const std::vector<Operation> steps = lower_path_reversal(g, {3, 4, 2});
  REQUIRE(steps.size() == 2);
  CHECK(std::get<EdgeReversal>(steps[0]) == EdgeReversal{4, 2});
  CHECK(std::get<EdgeReversal>(steps[1]) == EdgeReversal{3, 4});
}

TEST_CASE("path reversal validates shape and freedom") {
  const DirectedGraph g = chain4();
  CHECK_THROWS_AS(apply_path_reversal(g, {}), PreconditionError);
  CHECK_THROWS_AS(apply_path_reversal(g, {3, 9}), PreconditionError);
  CHECK_THROWS_AS(apply_path_reversal(g, {2, 3}), PreconditionError);
  // destination 3 is saturated
  CHECK_THROWS_AS(apply_path_reversal(g, {4, 3}), PreconditionError);
  // single-vertex path is a no-op
  CHECK(apply_path_reversal(g, {4}).graph == g);
}

TEST_CASE("closed path reversal turns a cycle around in place") {
  const OpOutcome out = apply_path_reversal(directed_triangle(), {1, 2, 3, 1});
  CHECK(out.applied_edge_reversals == 3);
  CHECK(out.graph == DirectedGraph({1, 2, 3}, {{2, 1}, {3, 2}, {1, 3}}));
  // closed paths shorter than 3 edges are malformed
  CHECK_THROWS_AS(apply_path_reversal(seed_edge(), {2, 1, 2}),
                  PreconditionError);
}

TEST_CASE("cycle reversal with spare freedom on the cycle") {
  const OpOutcome out = apply_cycle_reversal(directed_triangle(), {1, 2, 3});
  CHECK(out.applied_edge_reversals == 3);
  CHECK(out.graph == DirectedGraph({1, 2, 3}, {{2, 1}, {3, 2}, {1, 3}}));
}

TEST_CASE("cycle reversal borrows freedom when the cycle is saturated") {
  // 1,2,3 form a cycle and each carries a second out-edge; the spare
  // freedom sits at 4 and 5 and must be borrowed and returned.
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4, 5},
      {{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 5}, {4, 5}});
  REQUIRE(minimally_persistent(g));
  for (VertexId v : {1, 2, 3}) CHECK(dof(g, v) == 0);

  const OpOutcome out = apply_cycle_reversal(g, {1, 2, 3});
  CHECK(out.graph ==
        DirectedGraph({1, 2, 3, 4, 5},
                      {{2, 1}, {3, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 5},
                       {4, 5}}));
  // borrow path, three cycle edges, give-back path
  CHECK(out.applied_edge_reversals == 5);
  CHECK_THROWS_AS(apply_cycle_reversal(g, {1, 2}), PreconditionError);
  CHECK_THROWS_AS(apply_cycle_reversal(g, {1, 3, 2}), PreconditionError);
}

TEST_CASE("atypical vertex addition spends the donor's freedom") {
  const DirectedGraph g = apply_atyp_vertex_add(chain4(), 5, 2, 4);
  CHECK(g.has_edge(2, 5));
  CHECK(g.has_edge(5, 4));
  CHECK(minimally_persistent(g));
  CHECK(g.in_degree(5) == 1);
  CHECK(g.out_degree(5) == 1);

  // vertex 3 has no freedom to donate
  CHECK_THROWS_AS(apply_atyp_vertex_add(chain4(), 5, 3, 1),
                  PreconditionError);
  CHECK_THROWS_AS(apply_atyp_vertex_add(chain4(), 5, 2, 2),
                  PreconditionError);
}

TEST_CASE("atypical edge splitting re-routes freedom along a path") {
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}});
  const DirectedGraph h = apply_atyp_edge_split(g, 5, 4, 3, 2, {4, 3});
  CHECK(h == DirectedGraph({1, 2, 3, 4, 5},
                           {{2, 1}, {3, 1}, {3, 4}, {4, 2}, {4, 5}, {5, 3},
                            {5, 2}}));
  CHECK(minimally_persistent(h));
  // the convenience overload finds the same (unique) path itself
  CHECK(apply_atyp_edge_split(g, 5, 4, 3, 2) == h);

  // j, k and l must be three distinct vertices
  CHECK_THROWS_AS(apply_atyp_edge_split(g, 5, 3, 3, 2, {3}),
                  PreconditionError);
  CHECK_THROWS_AS(apply_atyp_edge_split(g, 5, 2, 3, 2, {2, 1}),
                  PreconditionError);
  // the path must run from j to k
  CHECK_THROWS_AS(apply_atyp_edge_split(g, 5, 4, 3, 2, {4, 2}),
                  PreconditionError);
  // (2,3) is not an edge, only (3,2) is
  CHECK_THROWS_AS(apply_atyp_edge_split(g, 5, 4, 2, 3, {4, 2}),
                  PreconditionError);
}

TEST_CASE("reverse standard vertex addition") {
  const DirectedGraph g = DirectedGraph({1, 2, 3}, {{2, 1}, {3, 1}, {3, 2}});
  CHECK(validate_reverse(g, RevStdVertexAdd{3}).ok);
  CHECK(apply_reverse(g, RevStdVertexAdd{3}) == seed_edge());

  const ReverseCheck wrong = validate_reverse(g, RevStdVertexAdd{2});
  CHECK_FALSE(wrong.ok);
  CHECK(wrong.reason.find("(1,1)") != std::string::npos);
  CHECK_FALSE(validate_reverse(g, RevStdVertexAdd{9}).ok);
}

TEST_CASE("reverse standard edge splitting restores an admissible edge") {
  // vertex 6 has pattern (1,2): in from 2, out to 4 and 5.  Restoring
  // (2,5) is fine; restoring (2,4) would over-brace {1,2,3,4}, whose pairs
  // are all pinned already.
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4, 5, 6},
      {{1, 2}, {2, 3}, {3, 1}, {4, 1}, {4, 3}, {5, 3}, {2, 6}, {6, 4},
       {6, 5}});
  REQUIRE(minimally_persistent(g));

  CHECK(validate_reverse(g, RevStdEdgeSplit{6, {2, 5}}).ok);
  const DirectedGraph h = apply_reverse(g, RevStdEdgeSplit{6, {2, 5}});
  CHECK_FALSE(h.has_vertex(6));
  CHECK(h.has_edge(2, 5));
  CHECK(minimally_persistent(h));

  const ReverseCheck implicit = validate_reverse(g, RevStdEdgeSplit{6, {2, 4}});
  CHECK_FALSE(implicit.ok);
  CHECK(implicit.reason.find("implicitly rigid") != std::string::npos);

  const ReverseCheck start = validate_reverse(g, RevStdEdgeSplit{6, {4, 5}});
  CHECK_FALSE(start.ok);
  CHECK(start.reason.find("in-neighbor") != std::string::npos);

  const ReverseCheck end = validate_reverse(g, RevStdEdgeSplit{6, {2, 1}});
  CHECK_FALSE(end.ok);
  CHECK(end.reason.find("out-neighbor") != std::string::npos);
}

TEST_CASE("reverse standard edge splitting refuses an explicit edge") {
  // vertex 4 points at 1 and 2 with in-edge from 3, but (3,1) and (3,2)
  // both exist already, so neither candidate can be restored
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 2}, {3, 4}, {4, 1}, {4, 2}});
  // (this graph is not even minimally persistent: 6 edges on 4 vertices)
  CHECK_FALSE(validate_reverse(g, RevStdEdgeSplit{4, {3, 1}}).ok);

  const DirectedGraph h = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {4, 1}, {4, 2}, {3, 4}});
  REQUIRE(minimally_persistent(h));
  // 4 has in from 3, out to {1,2}; (3,1) is explicit in h minus 4
  const ReverseCheck c = validate_reverse(h, RevStdEdgeSplit{4, {3, 1}});
  CHECK_FALSE(c.ok);
  CHECK(c.reason.find("already an edge") != std::string::npos);
  CHECK(validate_reverse(h, RevStdEdgeSplit{4, {3, 2}}).ok);
}

TEST_CASE("reverse atypical vertex addition") {
  const DirectedGraph g = apply_atyp_vertex_add(chain4(), 5, 2, 4);
  CHECK(validate_reverse(g, RevAtypVertexAdd{5}).ok);
  CHECK(apply_reverse(g, RevAtypVertexAdd{5}) == chain4());
  CHECK_FALSE(validate_reverse(g, RevAtypVertexAdd{4}).ok);
}

TEST_CASE("reverse atypical edge splitting undoes the path reversal") {
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}});
  const DirectedGraph h = apply_atyp_edge_split(g, 5, 4, 3, 2, {4, 3});

  const RevAtypEdgeSplit rev{5, {3, 4}, {3, 2}};
  CHECK(validate_reverse(h, rev).ok);
  CHECK(apply_reverse(h, rev) == g);

  // path must start at the restored edge's tail and end at the in-neighbor
  CHECK_FALSE(validate_reverse(h, RevAtypEdgeSplit{5, {2, 4}, {3, 2}}).ok);
  CHECK_FALSE(validate_reverse(h, RevAtypEdgeSplit{5, {3, 4}, {2, 3}}).ok);
  CHECK_FALSE(validate_reverse(h, RevAtypEdgeSplit{5, {3}, {3, 2}}).ok);
}

TEST_CASE("validate_reverse refuses forward kinds and bad inputs") {
  const ReverseCheck c =
      validate_reverse(directed_triangle(), StdVertexAdd{4, 1, 2});
  CHECK_FALSE(c.ok);
  CHECK(c.reason == "not a reverse operation");

  const DirectedGraph sparse({1, 2, 3}, {{2, 1}, {3, 2}});
  CHECK_FALSE(validate_reverse(sparse, RevStdVertexAdd{3}).ok);
}

TEST_CASE("apply dispatcher covers every kind and counts reversals") {
  CHECK(apply_operation(seed_edge(), Operation{StdVertexAdd{3, 1, 2}}).graph ==
        DirectedGraph({1, 2, 3}, {{2, 1}, {3, 1}, {3, 2}}));
  CHECK(apply_operation(directed_triangle(), Operation{EdgeReversal{1, 2}})
            .applied_edge_reversals == 1);
  CHECK(apply_operation(directed_triangle(), Operation{PathReversal{{1, 2, 3, 1}}})
            .applied_edge_reversals == 3);
  CHECK(apply_operation(directed_triangle(), Operation{CycleReversal{{1, 2, 3}}})
            .applied_edge_reversals == 3);
  // AtypEdgeSplit with an empty path resolves the path itself
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}});
  CHECK(apply_operation(g, Operation{AtypEdgeSplit{5, 4, 3, 2, {}}}).graph ==
        apply_atyp_edge_split(g, 5, 4, 3, 2));

  const DirectedGraph grown =
      apply_operation(seed_edge(), Operation{StdVertexAdd{3, 1, 2}}).graph;
  CHECK(apply_operation(grown, Operation{RevStdVertexAdd{3}}).graph == seed_edge());
}

TEST_CASE("op_kind names match the wire format") {
  CHECK(op_kind(Operation{StdVertexAdd{}}) == "StdVertexAdd");
  CHECK(op_kind(Operation{RevAtypEdgeSplit{}}) == "RevAtypEdgeSplit");
  CHECK(op_kind(Operation{CycleReversal{}}) == "CycleReversal");
}

TEST_CASE("invert round-trips forward operations") {
  const DirectedGraph g = chain4();

  SUBCASE("vertex additions") {
    const Operation op{StdVertexAdd{5, 1, 3}};
    const DirectedGraph h = apply_operation(g, op).graph;
    CHECK(apply_operation(h, invert(op)).graph == g);

    const Operation atyp{AtypVertexAdd{5, 2, 4}};
    const DirectedGraph h2 = apply_operation(g, atyp).graph;
    CHECK(apply_operation(h2, invert(atyp)).graph == g);
  }

  SUBCASE("edge splits") {
    const Operation op{StdEdgeSplit{5, 3, 2, 1}};
    const DirectedGraph h = apply_operation(g, op).graph;
    CHECK(apply_operation(h, invert(op)).graph == g);

    const Operation atyp{AtypEdgeSplit{5, 4, 3, 2, {4, 3}}};
    const DirectedGraph h2 = apply_operation(g, atyp).graph;
    CHECK(apply_operation(h2, invert(atyp)).graph == g);
    CHECK_THROWS_AS(invert(Operation{AtypEdgeSplit{5, 4, 3, 2, {}}}),
                    PreconditionError);
  }

  SUBCASE("reversals") {
    const Operation op{EdgeReversal{2, 1}};
    const DirectedGraph h = apply_operation(g, op).graph;
    CHECK(apply_operation(h, invert(op)).graph == g);

    const Operation path{PathReversal{{4, 2, 1}}};
    const DirectedGraph h2 = apply_operation(g, path).graph;
    CHECK(apply_operation(h2, invert(path)).graph == g);

    const Operation cycle{CycleReversal{{1, 2, 3}}};
    const DirectedGraph t = directed_triangle();
    const DirectedGraph h3 = apply_operation(t, cycle).graph;
    CHECK(apply_operation(h3, invert(cycle)).graph == t);
  }
}

TEST_CASE("invert resolves remove-only operations against their input") {
  const DirectedGraph g = DirectedGraph({1, 2, 3}, {{2, 1}, {3, 1}, {3, 2}});

  const Operation rsva{RevStdVertexAdd{3}};
  const Operation fwd = invert(rsva, g);
  CHECK(std::get<StdVertexAdd>(fwd) == StdVertexAdd{3, 1, 2});
  CHECK(apply_operation(apply_reverse(g, rsva), fwd).graph == g);
  CHECK_THROWS_AS(invert(rsva), PreconditionError);

  const DirectedGraph h = apply_atyp_vertex_add(chain4(), 5, 2, 4);
  const Operation rava{RevAtypVertexAdd{5}};
  CHECK(std::get<AtypVertexAdd>(invert(rava, h)) == AtypVertexAdd{5, 2, 4});
  CHECK_THROWS_AS(invert(rava), PreconditionError);

  const DirectedGraph split = apply_std_edge_split(chain4(), 5, 3, 2, 1);
  const Operation rses{RevStdEdgeSplit{5, {3, 2}}};
  CHECK(std::get<StdEdgeSplit>(invert(rses, split)) ==
        StdEdgeSplit{5, 3, 2, 1});
  CHECK(apply_operation(apply_reverse(split, rses), invert(rses, split)).graph ==
        split);
  CHECK_THROWS_AS(invert(rses), PreconditionError);

  // the pre-graph must actually admit the reverse operation
  CHECK_THROWS_AS(invert(rsva, chain4()), PreconditionError);
}

TEST_CASE("invert of a reverse atypical split needs no graph") {
  const DirectedGraph g = DirectedGraph::from_parts(
      {1, 2, 3, 4}, {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}});
  const Operation op{AtypEdgeSplit{5, 4, 3, 2, {4, 3}}};
  const DirectedGraph h = apply_operation(g, op).graph;

  const Operation rev = invert(op);
  const auto& r = std::get<RevAtypEdgeSplit>(rev);
  CHECK(r.i == 5);
  CHECK(r.path == std::vector<VertexId>{3, 4});
  CHECK(r.add_pair == std::pair<VertexId, VertexId>{3, 2});
  CHECK(std::get<AtypEdgeSplit>(invert(rev)) == std::get<AtypEdgeSplit>(op));
  CHECK(apply_operation(h, rev).graph == g);
}
