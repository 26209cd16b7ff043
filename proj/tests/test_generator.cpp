#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "mapgraph/generator.hpp"
#include "mapgraph/oracle.hpp"
#include "mapgraph/witness.hpp"

using namespace mapgraph;

namespace {

GenConfig varied(int t) {
  GenConfig cfg;
  cfg.n = 2 + t % 59;
  cfg.seed = 1000 + (unsigned)t;
  cfg.face_split = (t % 5) / 4.0;
  cfg.point_split = (t % 7) / 6.0;
  cfg.marks = (t % 3 == 0) ? 0.5 : 0.0;
  return cfg;
}

int edit_distance(const MarkedGraph& a, const MarkedGraph& b) {
  std::set<std::pair<int, int>> ea, eb;
  for (auto e : a.edges()) ea.insert(e);
  for (auto e : b.edges()) eb.insert(e);
  int d = 0;
  for (auto e : ea)
    if (!eb.count(e)) ++d;
  for (auto e : eb)
    if (!ea.count(e)) ++d;
  for (auto e : ea)
    if (eb.count(e) &&
        a.is_marked(e.first, e.second) != b.is_marked(e.first, e.second))
      ++d;
  return d;
}

}  // namespace

TEST_CASE("too few nations is refused") {
  GenConfig cfg;
  cfg.n = 1;
  CHECK_THROWS_AS(gen_random_atlas(cfg), std::invalid_argument);
}

TEST_CASE("two nations give the hemisphere map") {
  GenConfig cfg;
  cfg.n = 2;
  auto [g, h] = gen_random_atlas(cfg);
  CHECK(g.same_graph(complete_graph(2)));
  CHECK(h.nations.size() == 2);
  REQUIRE(h.points.size() == 1);
  CHECK(h.deg(h.points[0]) == 2);
  CHECK(verify_atlas(h, g));
}

TEST_CASE("a single mid-sized draw is a valid atlas") {
  GenConfig cfg;
  cfg.n = 50;
  cfg.seed = 7;
  auto [g, h] = gen_random_atlas(cfg);
  std::string why;
  CHECK_MESSAGE(verify_atlas(h, g, &why), why);
  CHECK(g.n == 50);
}

TEST_CASE("every draw in a varied batch is a valid hole-free atlas") {
  int four_point = 0;
  int over_4n = 0;
  for (int t = 0; t < 240; ++t) {
    GenConfig cfg = varied(t);
    auto [g, h] = gen_random_atlas(cfg);
    CAPTURE(t);
    REQUIRE(g.n == cfg.n);
    std::string why;
    REQUIRE_MESSAGE(verify_atlas(h, g, &why), why);
    auto prof = profile(h, g);
    REQUIRE(prof.hole_free);
    REQUIRE(prof.k <= 4);
    if (prof.k == 4) ++four_point;
    if (cfg.n >= 3) {
      REQUIRE(g.m() <= 6 * (3 * cfg.n - 6));
      if (g.m() > 4 * cfg.n - 8) ++over_4n;
    }
  }
  CHECK(four_point > 0);
  // drawn maps stay well under the generic edge cap in practice
  WARN_MESSAGE(over_4n == 0, "draws beyond 4n-8 edges: ", over_4n);
}

TEST_CASE("draws are deterministic per seed") {
  GenConfig cfg;
  cfg.n = 30;
  cfg.seed = 99;
  cfg.marks = 0.3;
  auto [g1, h1] = gen_random_atlas(cfg);
  auto [g2, h2] = gen_random_atlas(cfg);
  CHECK(g1.same_graph(g2));
  CHECK(witness_canonical_code(h1) == witness_canonical_code(h2));
  cfg.seed = 100;
  auto [g3, h3] = gen_random_atlas(cfg);
  CHECK(witness_canonical_code(h1) != witness_canonical_code(h3));
}

TEST_CASE("full marking keeps the atlas checkable") {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    GenConfig cfg;
    cfg.n = 12;
    cfg.seed = seed;
    cfg.marks = 1.0;
    auto [g, h] = gen_random_atlas(cfg);
    CHECK(!g.marked_edges().empty());
    std::string why;
    CHECK_MESSAGE(verify_atlas(h, g, &why), why);
  }
}

TEST_CASE("small draws pass the exhaustive search") {
  for (int t = 0; t < 36; ++t) {
    GenConfig cfg;
    cfg.n = 2 + t % 6;
    cfg.seed = 500 + (unsigned)t;
    cfg.marks = (t % 2) ? 0.4 : 0.0;
    auto [g, h] = gen_random_atlas(cfg);
    CAPTURE(t);
    CHECK(oracle_recognize(g).has_value());
  }
}

TEST_CASE("mutate makes exactly one edit, deterministically") {
  GenConfig cfg;
  cfg.n = 15;
  cfg.seed = 4;
  cfg.marks = 0.3;
  auto [g, h] = gen_random_atlas(cfg);
  int changed = 0;
  for (unsigned seed = 0; seed < 25; ++seed) {
    MarkedGraph out = mutate(g, seed);
    CHECK(out.n == g.n);
    CHECK(edit_distance(g, out) <= 1);
    if (edit_distance(g, out) == 1) ++changed;
    CHECK(out.same_graph(mutate(g, seed)));
  }
  CHECK(changed > 0);
}
