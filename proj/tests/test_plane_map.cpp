#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mapgraph/embedding.hpp"
#include "mapgraph/plane_map.hpp"
#include "test_util.hpp"

using namespace mapgraph;

namespace {

// hub 4 inside rim cycle 0-1-2-3; outer face is the 4-point
PlaneMap wheel_map() {
  PlaneMap k;
  k.n = 5;
  k.ends = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 1}, {4, 2}, {4, 3}};
  k.rot = {{0, 4, 3}, {1, 5, 0}, {2, 6, 1}, {3, 7, 2}, {4, 5, 6, 7}};
  return k;
}

// nations 1,2 share two border segments; 0 and 3 sit on either side
PlaneMap lens_map() {
  PlaneMap k;
  k.n = 4;
  k.ends = {{1, 2}, {1, 2}, {0, 1}, {0, 2}, {1, 3}, {2, 3}};
  k.rot = {{2, 3}, {4, 0, 2, 1}, {3, 0, 5, 1}, {4, 5}};
  return k;
}

PlaneMap triangle_map() {
  PlaneMap k;
  k.n = 3;
  k.ends = {{0, 1}, {1, 2}, {0, 2}};
  k.rot = {{0, 2}, {1, 0}, {2, 1}};
  return k;
}

std::vector<int> identity_labels(int n) {
  std::vector<int> l(n);
  for (int i = 0; i < n; ++i) l[i] = i;
  return l;
}

}  // namespace

TEST_CASE("two-hemisphere map") {
  PlaneMap k = PlaneMap::single_edge();
  std::string why;
  CHECK(valid_plane_map(k, &why));
  auto fs = map_faces(k);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].size() == 2);
  MarkedGraph g = map_closure(k);
  CHECK(g.same_graph(complete_graph(2)));
  Witness h = map_to_witness(k, identity_labels(2));
  CHECK(h.points.size() == 1);
  CHECK(verify_atlas(h, g));
}

TEST_CASE("triangle map") {
  PlaneMap k = triangle_map();
  CHECK(valid_plane_map(k));
  auto fs = map_faces(k);
  REQUIRE(fs.size() == 2);
  for (const auto& f : fs) CHECK(f.size() == 3);
  CHECK(map_closure(k).same_graph(complete_graph(3)));
  Witness h = map_to_witness(k, identity_labels(3));
  CHECK(h.points.size() == 2);
  CHECK(verify_atlas(h, complete_graph(3)));
  WitnessProfile p = profile(h, complete_graph(3));
  CHECK(p.k == 3);
  CHECK(p.hole_free);
}

TEST_CASE("wheel map gives the complete graph on five nations") {
  PlaneMap k = wheel_map();
  std::string why;
  REQUIRE_MESSAGE(valid_plane_map(k, &why), why);
  MarkedGraph g = map_closure(k);
  CHECK(g.same_graph(complete_graph(5)));
  Witness h = map_to_witness(k, identity_labels(5));
  CHECK(verify_atlas(h, g));
  WitnessProfile p = profile(h, g);
  CHECK(p.k == 4);
  CHECK(p.hole_free);

  // rim pairs are true borders, hub-to-rim too; rim diagonals only meet at
  // the 4-point, so marking a diagonal breaks the atlas
  MarkedGraph border = g;
  border.set_mark(0, 1);
  border.set_mark(4, 2);
  CHECK(verify_atlas(h, border));
  MarkedGraph diag = g;
  diag.set_mark(0, 2);
  CHECK_FALSE(verify_atlas(h, diag));
}

TEST_CASE("lens map with parallel borders") {
  PlaneMap k = lens_map();
  std::string why;
  REQUIRE_MESSAGE(valid_plane_map(k, &why), why);
  REQUIRE(map_faces(k).size() == 4);
  MarkedGraph diamond = complete_graph(4);
  diamond.remove_edge(0, 3);
  CHECK(map_closure(k).same_graph(diamond));
  CHECK(k.edge_copies(1, 2).size() == 2);
  CHECK(k.has_edge(1, 2));
  CHECK_FALSE(k.has_edge(0, 3));

  Witness h = map_to_witness(k, identity_labels(4));
  CHECK(verify_atlas(h, diamond));
  WitnessProfile p = profile(h, diamond);
  CHECK(p.hole_free);
  CHECK(p.segment_faces[{1, 2}].size() == 2);
  CHECK_FALSE(p.well_formed);
}

TEST_CASE("invalid maps are rejected") {
  std::string why;

  PlaneMap loop;
  loop.n = 2;
  loop.ends = {{0, 1}, {0, 0}};
  loop.rot = {{0, 1, 1}, {0}};
  CHECK_FALSE(valid_plane_map(loop, &why));
  CHECK(why == "loop edge");

  PlaneMap dbl;  // two nations, two borders: a pair of 2-point faces
  dbl.n = 2;
  dbl.ends = {{0, 1}, {0, 1}};
  dbl.rot = {{0, 1}, {0, 1}};
  CHECK_FALSE(valid_plane_map(dbl, &why));
  CHECK(why == "two-nation map must be the single border");

  PlaneMap pinched;  // parallel pair plus a pendant nation
  pinched.n = 3;
  pinched.ends = {{0, 1}, {0, 1}, {1, 2}};
  pinched.rot = {{0, 1}, {0, 2, 1}, {2}};
  CHECK_FALSE(valid_plane_map(pinched, &why));
  CHECK(why == "face visits a nation twice");

  PlaneMap path;
  path.n = 3;
  path.ends = {{0, 1}, {1, 2}};
  path.rot = {{0}, {0, 1}, {1}};
  CHECK_FALSE(valid_plane_map(path, &why));
  CHECK(why == "face visits a nation twice");

  PlaneMap torus;  // K4 with the rotation that closes up on a torus
  torus.n = 4;
  torus.ends = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  torus.rot = {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}};
  CHECK_FALSE(valid_plane_map(torus, &why));
  CHECK(why == "rotation not genus 0");

  PlaneMap iso;
  iso.n = 3;
  iso.ends = {{0, 1}};
  iso.rot = {{0}, {0}, {}};
  CHECK_FALSE(valid_plane_map(iso, &why));
  CHECK(why == "isolated nation");

  PlaneMap half = triangle_map();
  half.rot[0] = {0};  // edge 2 dropped from one side only
  CHECK_FALSE(valid_plane_map(half, &why));
  CHECK(why == "edge missing from an endpoint rotation");

  PlaneMap dead = triangle_map();
  dead.kill_edge(0);
  dead.rot[0].push_back(0);
  CHECK_FALSE(valid_plane_map(dead, &why));
  CHECK(why == "rotation lists a dead edge");
}

TEST_CASE("edge bookkeeping") {
  PlaneMap k = triangle_map();
  CHECK(k.m() == 3);
  k.kill_edge(1);
  CHECK(k.m() == 2);
  CHECK_FALSE(k.live(1));
  CHECK(k.rot[1] == std::vector<int>{0});
  CHECK(k.rot[2] == std::vector<int>{2});
  int e = k.new_edge(1, 2);
  CHECK(e == 3);
  CHECK(k.other(e, 1) == 2);
}

TEST_CASE("canonical codes ignore edge naming but see reflection") {
  PlaneMap w = wheel_map();
  std::string base = map_canonical_code(w);

  // rename every edge id and shift each rotation list: same map
  PlaneMap shuffled;
  shuffled.n = w.n;
  shuffled.ends.resize(w.ends.size());
  auto pi = [&](int e) { return (e + 3) % (int)w.ends.size(); };
  for (int e = 0; e < (int)w.ends.size(); ++e) shuffled.ends[pi(e)] = w.ends[e];
  shuffled.rot.resize(w.n);
  for (int v = 0; v < w.n; ++v) {
    int d = (int)w.rot[v].size();
    for (int i = 0; i < d; ++i) shuffled.rot[v].push_back(pi(w.rot[v][(i + v) % d]));
  }
  REQUIRE(valid_plane_map(shuffled));
  CHECK(map_canonical_code(shuffled) == base);

  PlaneMap mirror = w;
  for (auto& r : mirror.rot) std::reverse(r.begin(), r.end());
  REQUIRE(valid_plane_map(mirror));
  CHECK(map_canonical_code(mirror) != base);

  PlaneMap lens = lens_map();
  PlaneMap lens2 = lens;
  for (auto& r : lens2.rot)
    for (int& e : r) e = (e == 0) ? 1 : (e == 1) ? 0 : e;
  std::swap(lens2.ends[0], lens2.ends[1]);
  CHECK(map_canonical_code(lens2) == map_canonical_code(lens));
}

TEST_CASE("radial witness matches the triangulation dual") {
  MarkedGraph g = testutil::octahedron();
  auto r = test_planarity(g);
  REQUIRE(r);
  PlaneMap k = map_from_rotation(g, *r);
  REQUIRE(valid_plane_map(k));
  CHECK(map_closure(k).same_graph(g));

  Witness via_map = map_to_witness(k, g.label);
  auto via_dual = triangulated_dual(g);
  REQUIRE(via_dual);
  CHECK(via_map.nations == via_dual->nations);
  CHECK(via_map.points == via_dual->points);
  CHECK(via_map.rot == via_dual->rot);
}
