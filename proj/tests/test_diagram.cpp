#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "knotcalc/diagram.hpp"

using namespace knotcalc;

namespace {

std::set<std::set<Port>> face_sets(const Diagram& d) {
  std::set<std::set<Port>> out;
  for (const Face& f : compute_faces(d))
    out.insert(std::set<Port>(f.boundary.begin(), f.boundary.end()));
  return out;
}

}  // namespace

TEST_CASE("U validates and has one implicit face") {
  Diagram u;
  CHECK(validate(u).ok());
  auto fs = compute_faces(u);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].boundary.empty());
  CHECK(knot_walk(u).has_value());
  CHECK(knot_walk(u)->empty());
}

TEST_CASE("figure example validates") {
  Diagram d = fixtures::figure_example();
  auto rep = validate(d);
  INFO(rep.to_string());
  CHECK(rep.ok());
  CHECK(d.edges().size() == 4);
}

TEST_CASE("figure example faces match the published classes") {
  Diagram d = fixtures::figure_example();
  auto fs = face_sets(d);
  REQUIRE(fs.size() == 4);
  // (x,x,3,4) alone
  CHECK(fs.count({Port{0, 3}}));
  // (x,y,1,1) with (y,x,4,2)
  CHECK(fs.count({Port{0, 1}, Port{1, 4}}));
  // (y,y,2,3) alone
  CHECK(fs.count({Port{1, 2}}));
  // unbounded: (x,x,4,3), (y,x,1,1), (y,y,3,2), (x,y,2,4)
  CHECK(fs.count({Port{0, 4}, Port{1, 1}, Port{1, 3}, Port{0, 2}}));
  CHECK(d.is_outer_face_port(Port{0, 4}));
  CHECK(d.is_outer_face_port(Port{1, 3}));
  CHECK_FALSE(d.is_outer_face_port(Port{0, 3}));
}

TEST_CASE("single kink counts") {
  Diagram d = fixtures::single_kink();
  auto rep = validate(d);
  INFO(rep.to_string());
  CHECK(rep.ok());
  auto fs = compute_faces(d);
  CHECK(fs.size() == 3);
  bool has_monogon = false;
  for (const auto& f : fs) has_monogon |= f.boundary.size() == 1;
  CHECK(has_monogon);
  auto walk = knot_walk(d);
  REQUIRE(walk.has_value());
  CHECK(walk->size() == 2);
}

TEST_CASE("knot walk covers every edge once for the figure example") {
  Diagram d = fixtures::figure_example();
  auto walk = knot_walk(d);
  REQUIRE(walk.has_value());
  CHECK(walk->size() == 4);
  std::set<Edge> walked;
  for (const Port& p : *walk) {
    Port q = d.other_end(p);
    walked.insert(Edge(p.v, p.slot, q.v, q.slot));
  }
  CHECK(walked.size() == 4);
}

TEST_CASE("two disjoint kinks are rejected as a link") {
  Diagram d;
  d.adj[0] = {};
  d.adj[1] = {};
  d.link(0, 1, 0, 2);
  d.link(0, 3, 0, 4);
  d.link(1, 1, 1, 2);
  d.link(1, 3, 1, 4);
  d.outer = Port{0, 2};
  CHECK_FALSE(knot_walk(d).has_value());
  auto rep = validate(d);
  CHECK_FALSE(rep.ok());
  bool mentions_walk = false;
  for (const auto& v : rep.violations) mentions_walk |= v.code == "knot-walk";
  CHECK(mentions_walk);
}

TEST_CASE("broken slot coverage is reported") {
  Diagram d = fixtures::figure_example();
  // delete edge [x,y,1,1] by pointing both ports at themselves-ish
  d.adj[0][0] = Port{0, 1};
  auto rep = validate(d);
  CHECK_FALSE(rep.ok());
  bool mentions_cov = false;
  for (const auto& v : rep.violations) mentions_cov |= v.code == "slot-coverage";
  CHECK(mentions_cov);
}

TEST_CASE("validation report text is deterministic") {
  Diagram d;
  d.adj[0] = {};
  d.link(0, 1, 0, 2);
  d.link(0, 3, 0, 4);
  // missing outer marker
  auto r1 = validate(d).to_string();
  auto r2 = validate(d).to_string();
  CHECK(r1 == r2);
  CHECK(r1.find("outer-missing") != std::string::npos);
}
