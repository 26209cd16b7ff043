#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <vector>

#include "mapgraph/cliques.hpp"
#include "mapgraph/embedding.hpp"
#include "mapgraph/generator.hpp"
#include "mapgraph/oracle.hpp"
#include "mapgraph/plane_map.hpp"
#include "mapgraph/witness.hpp"
#include "test_util.hpp"

using namespace mapgraph;
using namespace mapgraph::testutil;

namespace {

std::vector<std::vector<int>> brute_max_cliques(const MarkedGraph& g) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << g.n); ++mask) {
    std::vector<int> c;
    for (int v = 0; v < g.n; ++v)
      if (mask >> v & 1) c.push_back(v);
    bool clique = true;
    for (size_t i = 0; i < c.size() && clique; ++i)
      for (size_t j = i + 1; j < c.size(); ++j)
        if (!g.has_edge(c[i], c[j])) clique = false;
    if (!clique) continue;
    bool maximal = true;
    for (int v = 0; v < g.n && maximal; ++v) {
      if (mask >> v & 1) continue;
      bool all = true;
      for (int u : c)
        if (!g.has_edge(u, v)) all = false;
      if (all) maximal = false;
    }
    if (maximal) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<int, 4> cycle_key(int u, int v, int x, int y) {
  if (u > v) std::swap(u, v);
  if (x > y) std::swap(x, y);
  return std::min<std::array<int, 4>>({u, v, x, y}, {x, y, u, v});
}

// every 4-cycle as its diagonal-pair key
std::set<std::array<int, 4>> brute_4cycles(const MarkedGraph& g) {
  std::set<std::array<int, 4>> out;
  for (int a = 0; a < g.n; ++a)
    for (int b : g.neighbors(a))
      for (int c : g.neighbors(b)) {
        if (c == a) continue;
        for (int d : g.neighbors(c))
          if (d != b && d != a && g.has_edge(d, a))
            out.insert(cycle_key(a, c, b, d));
      }
  return out;
}

std::set<std::array<int, 4>> covered_4cycles(
    const std::vector<FourCycleTriple>& rows) {
  std::set<std::array<int, 4>> out;
  for (const auto& row : rows)
    for (size_t i = 0; i < row.common.size(); ++i)
      for (size_t j = i + 1; j < row.common.size(); ++j)
        out.insert(cycle_key(row.u, row.v, row.common[i], row.common[j]));
  return out;
}

PlaneMap two_quad_map() {
  PlaneMap k;
  k.n = 4;
  k.ends = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  k.rot = {{0, 3}, {1, 0}, {2, 1}, {3, 2}};
  return k;
}

Witness atlas_of(const MarkedGraph& g) {
  auto rs = test_planarity(g);
  REQUIRE(rs.has_value());
  PlaneMap k = map_from_rotation(g, *rs);
  std::string why;
  REQUIRE_MESSAGE(valid_plane_map(k, &why), why);
  std::vector<int> label(g.n);
  for (int v = 0; v < g.n; ++v) label[v] = v;
  return map_to_witness(k, label);
}

void check_record(const CliqueRecord& rec, const Witness& h) {
  std::set<int> members(rec.vertices.begin(), rec.vertices.end());
  auto touches = [&](int p, int v) {
    const auto& r = h.rot.at(p);
    return std::find(r.begin(), r.end(), v) != r.end();
  };
  switch (rec.cls) {
    case CliqueClass::pizza: {
      REQUIRE(rec.anchors.size() == 1);
      for (int v : rec.vertices) CHECK(touches(rec.anchors[0], v));
      break;
    }
    case CliqueClass::pizza_with_crust: {
      REQUIRE(rec.anchors.size() == 1);
      REQUIRE(members.count(rec.crust) == 1);
      for (int v : rec.vertices)
        CHECK(touches(rec.anchors[0], v) == (v != rec.crust));
      break;
    }
    case CliqueClass::hamantasch: {
      REQUIRE(rec.anchors.size() == 3);
      for (int v : rec.vertices) {
        int on = 0;
        for (int p : rec.anchors)
          if (touches(p, v)) ++on;
        CHECK(on >= 2);
      }
      break;
    }
    case CliqueClass::rice_ball: {
      CHECK(rec.vertices.size() == 4);
      CHECK(!rec.anchors.empty());
      for (int p : rec.anchors) {
        int on = 0;
        for (int v : rec.vertices)
          if (touches(p, v)) ++on;
        CHECK(on == 2);
      }
      break;
    }
    default:
      FAIL("unclassified clique in a verified atlas");
  }
}

}  // namespace

TEST_CASE("maximal cliques on the standard examples") {
  auto k4 = enumerate_maximal_cliques(complete_graph(4));
  REQUIRE(k4.has_value());
  CHECK(*k4 == std::vector<std::vector<int>>{{0, 1, 2, 3}});

  auto c4 = enumerate_maximal_cliques(cycle_graph(4));
  REQUIRE(c4.has_value());
  CHECK(*c4 == std::vector<std::vector<int>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

  MarkedGraph chorded = cycle_graph(5);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v)
      if (!chorded.has_edge(u, v)) chorded.add_edge(u, v);
  auto k5 = enumerate_maximal_cliques(chorded);
  REQUIRE(k5.has_value());
  CHECK(*k5 == std::vector<std::vector<int>>{{0, 1, 2, 3, 4}});

  auto k1 = enumerate_maximal_cliques(MarkedGraph(1));
  REQUIRE(k1.has_value());
  CHECK(*k1 == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("enumeration agrees with the definitional search") {
  std::vector<MarkedGraph> pool = {complete_graph(5), cycle_graph(7),
                                   octahedron(),      cube_graph(),
                                   k33(),             path_graph(6)};
  for (int t = 0; t < 200; ++t)
    pool.push_back(random_graph(1 + t % 9, 0.2 + 0.08 * (t % 8), 300 + t));
  for (size_t i = 0; i < pool.size(); ++i) {
    CAPTURE(i);
    auto fast = enumerate_maximal_cliques(pool[i], 1 << 20);
    REQUIRE(fast.has_value());
    CHECK(*fast == brute_max_cliques(pool[i]));
  }
}

TEST_CASE("the clique budget trips as a verdict, not an error") {
  // complement of a perfect matching: one clique per transversal
  MarkedGraph g(20);
  for (int u = 0; u < 20; ++u)
    for (int v = u + 1; v < 20; ++v)
      if (v != u + 10 || u >= 10) g.add_edge(u, v);
  CHECK(!enumerate_maximal_cliques(g).has_value());
  CHECK(!enumerate_maximal_cliques(g, 1023).has_value());
  auto all = enumerate_maximal_cliques(g, 1024);
  REQUIRE(all.has_value());
  CHECK(all->size() == 1024);
}

TEST_CASE("triangle listing") {
  CHECK(list_triangles(complete_graph(4)).size() == 4);
  CHECK(list_triangles(cycle_graph(4)).empty());
  CHECK(list_triangles(complete_graph(5)).size() == 10);
  CHECK(list_triangles(octahedron()).size() == 8);
  MarkedGraph g = random_graph(9, 0.5, 17);
  std::vector<std::array<int, 3>> brute;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      for (int w = v + 1; w < g.n; ++w)
        if (g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w))
          brute.push_back({u, v, w});
  CHECK(list_triangles(g) == brute);
}

TEST_CASE("4-cycle rows cover every 4-cycle exactly") {
  auto c4 = list_4cycle_triples(cycle_graph(4));
  REQUIRE(c4.size() == 1);
  CHECK(c4[0].u == 0);
  CHECK(c4[0].v == 2);
  CHECK(c4[0].common == std::vector<int>{1, 3});

  CHECK(list_4cycle_triples(complete_graph(4)).size() == 3);

  // the 6 face cycles are the only 4-cycles of the cube
  auto cube_rows = list_4cycle_triples(cube_graph());
  CHECK(cube_rows.size() == 6);
  CHECK(brute_4cycles(cube_graph()).size() == 6);
  CHECK(covered_4cycles(cube_rows) == brute_4cycles(cube_graph()));

  for (int t = 0; t < 60; ++t) {
    MarkedGraph g = random_graph(8, 0.2 + 0.1 * (t % 6), 900 + t);
    CAPTURE(t);
    CHECK(covered_4cycles(list_4cycle_triples(g)) == brute_4cycles(g));
  }
}

TEST_CASE("k_sharing") {
  CHECK(k_sharing({0, 1, 2, 3, 4}, {0, 2, 3, 4, 5}) == 4);
  CHECK(k_sharing({0, 1}, {2, 3}) == 0);
  CHECK(k_sharing({3, 1, 2}, {1, 2, 3}) == 3);
}

TEST_CASE("pizza at a shared point") {
  PlaneMap k = two_quad_map();
  std::string why;
  REQUIRE_MESSAGE(valid_plane_map(k, &why), why);
  Witness h = map_to_witness(k, {0, 1, 2, 3});
  auto rec = classify_clique({0, 1, 2, 3}, h);
  CHECK(rec.cls == CliqueClass::pizza);
  check_record(rec, h);

  auto lune = oracle_recognize(complete_graph(3));
  REQUIRE(lune.has_value());
  auto tri = classify_clique({0, 1, 2}, *lune);
  CHECK(tri.cls == CliqueClass::pizza);
  check_record(tri, *lune);
}

TEST_CASE("crust layouts name the odd nation out") {
  Witness h = atlas_of(complete_graph(4));
  auto rec = classify_clique({0, 1, 2, 3}, h);
  CHECK(rec.cls == CliqueClass::pizza_with_crust);
  check_record(rec, h);

  auto k5 = oracle_recognize(complete_graph(5));
  REQUIRE(k5.has_value());
  auto big = classify_clique({0, 1, 2, 3, 4}, *k5);
  CHECK(big.cls == CliqueClass::pizza_with_crust);
  check_record(big, *k5);
}

TEST_CASE("a six-clique needs all three hamantasch corners") {
  auto k6 = oracle_recognize(complete_graph(6));
  REQUIRE(k6.has_value());
  auto rec = classify_clique({0, 1, 2, 3, 4, 5}, *k6);
  CHECK(rec.cls == CliqueClass::hamantasch);
  check_record(rec, *k6);
}

TEST_CASE("the cube tetrad is a rice-ball") {
  Witness h = atlas_of(cube_graph());
  auto rec = classify_clique({0, 3, 5, 6}, h);
  CHECK(rec.cls == CliqueClass::rice_ball);
  CHECK(rec.anchors.size() == 6);
  check_record(rec, h);

  // the face tetrad of the same atlas sits on one point instead
  auto face = classify_clique({0, 1, 2, 3}, h);
  CHECK(face.cls == CliqueClass::pizza);
}

TEST_CASE("non-cliques are a contract violation") {
  Witness h = atlas_of(cube_graph());
  CHECK_THROWS_AS(classify_clique({0, 7}, h), std::logic_error);
  CHECK_THROWS_AS(classify_clique({0, 1, 7}, h), std::logic_error);
  CHECK_THROWS_AS(classify_clique({}, h), std::logic_error);
}

TEST_CASE("some draws carry a rice-ball tetrad") {
  struct Pin {
    int n;
    unsigned seed;
    double face, point;
  };
  for (Pin pin : {Pin{71, 20574, 1.0, 0.875}, Pin{73, 21160, 0.0, 1.0},
                  Pin{32, 23163, 0.75, 0.5}}) {
    GenConfig cfg;
    cfg.n = pin.n;
    cfg.seed = pin.seed;
    cfg.face_split = pin.face;
    cfg.point_split = pin.point;
    auto [g, h] = gen_random_atlas(cfg);
    auto cliques = enumerate_maximal_cliques(g);
    REQUIRE(cliques.has_value());
    int rice = 0;
    for (const auto& c : *cliques) {
      auto rec = classify_clique(c, h);
      if (rec.cls == CliqueClass::rice_ball) {
        check_record(rec, h);
        ++rice;
      }
    }
    CAPTURE(pin.seed);
    CHECK(rice > 0);
  }
}

TEST_CASE("generated maps respect the clique bounds") {
  for (int t = 0; t < 80; ++t) {
    GenConfig cfg;
    cfg.n = 4 + t % 57;
    cfg.seed = 7000 + (unsigned)t;
    cfg.point_split = (t % 5) / 4.0;
    auto [g, h] = gen_random_atlas(cfg);
    CAPTURE(t);
    auto cliques = enumerate_maximal_cliques(g);
    REQUIRE(cliques.has_value());
    REQUIRE((long long)cliques->size() <= 27LL * g.n);
    long long rows_total = 0;
    for (const auto& row : list_4cycle_triples(g))
      rows_total += (long long)row.common.size();
    CHECK(rows_total <= 40LL * g.n);
    for (const auto& c : *cliques) {
      REQUIRE(c.size() <= 6);
      auto rec = classify_clique(c, h);
      REQUIRE(rec.cls != CliqueClass::unclassified);
      check_record(rec, h);
    }
  }
}
