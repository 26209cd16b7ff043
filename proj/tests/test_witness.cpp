#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mapgraph/embedding.hpp"
#include "mapgraph/witness.hpp"
#include "test_util.hpp"

using namespace mapgraph;
using namespace mapgraph::testutil;

namespace {

Witness star_witness_k4() {
  Witness h;
  h.nations = {0, 1, 2, 3};
  h.points = {4};
  h.rot[4] = {0, 1, 2, 3};
  for (int v = 0; v < 4; ++v) h.rot[v] = {4};
  return h;
}

Witness path_witness() {  // a - p - b
  Witness h;
  h.nations = {0, 1};
  h.points = {2};
  h.rot[2] = {0, 1};
  h.rot[0] = {2};
  h.rot[1] = {2};
  return h;
}

// The cube graph embedded, with its even-parity side as nations.
Witness cube_witness() {
  MarkedGraph q = cube_graph();
  auto r = test_planarity(q);
  REQUIRE(r);
  Witness h;
  for (int v = 0; v < 8; ++v)
    (__builtin_popcount(v) % 2 == 0 ? h.nations : h.points).push_back(v);
  for (int v = 0; v < 8; ++v) h.rot[v] = r->rot[v];
  return h;
}

}  // namespace

TEST_CASE("half_square on fixed witnesses") {
  CHECK(half_square(star_witness_k4()).same_graph(complete_graph(4)));

  MarkedGraph hs = half_square(path_witness());
  CHECK(hs.n == 2);
  CHECK(hs.has_edge(0, 1));

  // distance-2 brute force on the cube: every same-side pair has a common
  // neighbor, so the half-square on one side is complete
  MarkedGraph q = cube_graph();
  std::vector<int> evens;
  for (int v = 0; v < 8; ++v)
    if (__builtin_popcount(v) % 2 == 0) evens.push_back(v);
  MarkedGraph expect((int)evens.size());
  expect.label = evens;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      bool common = false;
      for (int w : q.adj[evens[i]]) common |= q.has_edge(w, evens[j]);
      if (common) expect.add_edge(i, j);
    }
  CHECK(expect.same_graph(complete_graph(4)));
  CHECK(half_square(cube_witness()).same_graph(expect));
}

TEST_CASE("verify_witness") {
  CHECK(verify_witness(star_witness_k4(), complete_graph(4)));

  // nations of the cube witness are the even-parity cube vertices
  Witness cw = cube_witness();
  MarkedGraph k4 = complete_graph(4);
  k4.label = {0, 3, 5, 6};
  CHECK(verify_witness(cw, k4));

  MarkedGraph c4 = cycle_graph(4);
  c4.label = {0, 3, 5, 6};
  CHECK(!verify_witness(cw, c4));

  // id mismatch is a structural error, not a false
  CHECK_THROWS(verify_witness(cw, complete_graph(4)));
}

TEST_CASE("valid_witness rejects broken structures") {
  std::string why;

  Witness asym = path_witness();
  asym.rot[0] = {2, 2};
  CHECK(!valid_witness(asym, &why));

  Witness pp;  // point adjacent to point
  pp.nations = {0};
  pp.points = {1, 2};
  pp.rot[1] = {2};
  pp.rot[2] = {1};
  CHECK(!valid_witness(pp, &why));

  Witness iso = path_witness();
  iso.points.push_back(9);
  CHECK(!valid_witness(iso, &why));
  CHECK(why == "isolated point");

  // K3,3 has no planar embedding, so every rotation system fails the genus
  // check
  Witness t;
  t.nations = {0, 1, 2};
  t.points = {3, 4, 5};
  for (int u = 0; u < 3; ++u) t.rot[u] = {3, 4, 5};
  for (int p = 3; p < 6; ++p) t.rot[p] = {0, 1, 2};
  CHECK(!valid_witness(t, &why));
  CHECK(why == "rotation not genus 0");

  Witness dup = path_witness();
  dup.nations.push_back(0);
  CHECK(!valid_witness(dup, &why));
}

TEST_CASE("reduce_redundant") {
  // two degree-2 points both joining {0,1}: one goes
  Witness h;
  h.nations = {0, 1};
  h.points = {2, 3};
  h.rot[2] = {0, 1};
  h.rot[3] = {1, 0};
  h.rot[0] = {2, 3};
  h.rot[1] = {3, 2};
  Witness r = reduce_redundant(h);
  CHECK(r.points.size() == 1);
  CHECK(half_square(r).same_graph(half_square(h)));

  // star witness is already reduced
  Witness s = star_witness_k4();
  CHECK(reduce_redundant(s).points.size() == 1);

  // path witness keeps its only point
  CHECK(reduce_redundant(path_witness()).points.size() == 1);
}

TEST_CASE("profile on fixed witnesses") {
  WitnessProfile st = profile(star_witness_k4(), complete_graph(4));
  CHECK(st.k == 4);
  CHECK(!st.hole_free);
  CHECK(st.well_formed);

  Witness cw = cube_witness();
  MarkedGraph k4 = complete_graph(4);
  k4.label = {0, 3, 5, 6};
  WitnessProfile cp = profile(cw, k4);
  CHECK(cp.k == 3);
  CHECK(cp.hole_free);
  CHECK(cp.well_formed);
  CHECK(cp.segment_faces.size() == 6);  // one border per K4 pair
  CHECK(cp.point_meets.empty());
}

TEST_CASE("triangulated_dual of the octahedron") {
  MarkedGraph octa = octahedron();
  auto atlas = triangulated_dual(octa);
  REQUIRE(atlas);
  CHECK(atlas->nations.size() == 6);
  CHECK(atlas->points.size() == 8);
  for (int p : atlas->points) CHECK(atlas->deg(p) == 3);
  CHECK(verify_atlas(*atlas, octa));

  WitnessProfile pr = profile(*atlas, octa);
  CHECK(pr.k == 3);
  CHECK(pr.hole_free);

  CHECK(!triangulated_dual(cube_graph()));  // faces are quadrilaterals
  CHECK(!triangulated_dual(k33()));        // not planar
}

TEST_CASE("verify_atlas") {
  std::string why;
  MarkedGraph octa = octahedron();
  CHECK(verify_atlas(*triangulated_dual(octa), octa));

  // marked edges need segment-faces; in the cube witness every pair has one
  Witness cw = cube_witness();
  MarkedGraph k4m = complete_graph(4);
  k4m.label = {0, 3, 5, 6};
  for (auto [u, v] : k4m.edges()) k4m.set_mark(u, v);
  CHECK(verify_atlas(cw, k4m));

  CHECK(!verify_atlas(star_witness_k4(), complete_graph(4), &why));
  CHECK(why == "face not 4-sided");

  // single marked edge on the two-nation map
  MarkedGraph k2 = complete_graph(2);
  k2.set_mark(0, 1);
  CHECK(verify_atlas(path_witness(), k2));
}

TEST_CASE("normalize_atlas splits long faces") {
  // one 3-point with three degree-1 nations traces a single 6-face
  Witness h;
  h.nations = {0, 1, 2};
  h.points = {3};
  h.rot[3] = {0, 1, 2};
  h.rot[0] = {3};
  h.rot[1] = {3};
  h.rot[2] = {3};
  Witness norm = normalize_atlas(h);
  CHECK(half_square(norm).same_graph(half_square(h)));
  for (const auto& f : witness_faces(norm)) CHECK(f.size() == 4);
  CHECK(verify_atlas(norm, complete_graph(3)));
}

TEST_CASE("witness json round-trip") {
  Witness h = star_witness_k4();
  std::string s = witness_to_json(h);
  Witness back = witness_from_json(s);
  CHECK(back.nations == h.nations);
  CHECK(back.points == h.points);
  CHECK(back.rot == h.rot);

  CHECK_THROWS(witness_from_json("{}"));
  CHECK_THROWS(witness_from_json("not json"));
}
