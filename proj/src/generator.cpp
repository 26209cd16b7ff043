#include "mapgraph/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mapgraph/plane_map.hpp"

namespace mapgraph {

namespace {

void check(const PlaneMap& k) {
  std::string why;
  if (!valid_plane_map(k, &why)) throw std::logic_error("generator broke the map: " + why);
}

// replace the unique occurrence of e in rot[v] with seq
void splice_rot(PlaneMap& k, int v, int e, const std::vector<int>& seq) {
  auto& r = k.rot[v];
  int p = k.pos_in_rot(v, e);
  r.erase(r.begin() + p);
  r.insert(r.begin() + p, seq.begin(), seq.end());
}

// new nation in a lens beside border e: two fresh 3-points, closure grows by
// one nation touching exactly e's two ends
void grow_lens(PlaneMap& k, int e) {
  int u = k.ends[e][0], v = k.ends[e][1];
  int w = k.add_vertex();
  int e2 = k.new_edge(u, v);
  int f1 = k.new_edge(u, w);
  int f2 = k.new_edge(w, v);
  k.rot[w] = {f1, f2};
  splice_rot(k, u, e, {e, f1, e2});
  splice_rot(k, v, e, {e2, f2, e});
}

// new nation astride border e, which must have 3-points on both sides; they
// become 4-points and the new nation touches four others
void grow_subdivide(PlaneMap& k, int e) {
  int u = k.ends[e][0], v = k.ends[e][1];
  int w = k.add_vertex();
  int g1 = k.new_edge(u, w);
  int g2 = k.new_edge(w, v);
  k.rot[w] = {g1, g2};
  splice_rot(k, u, e, {g1});
  splice_rot(k, v, e, {g2});
  k.kill_edge(e);
}

// erase a border whose two 3-points have different third nations; the points
// merge into a 4-point
void merge_faces(PlaneMap& k, int e) { k.kill_edge(e); }

// split a 4-point: two opposite nations of the face walk gain a border
// through it, cutting the face into two 3-points
void split_face(PlaneMap& k, const MapFace& f, int off) {
  int a = f[off].first, c = f[off + 2].first;
  int e_a_out = f[off].second, e_c_out = f[off + 2].second;
  int h = k.new_edge(a, c);
  splice_rot(k, a, e_a_out, {h, e_a_out});
  splice_rot(k, c, e_c_out, {h, e_c_out});
}

std::vector<int> live_edges(const PlaneMap& k) {
  std::vector<int> out;
  for (int e = 0; e < (int)k.ends.size(); ++e)
    if (k.live(e)) out.push_back(e);
  return out;
}

// for each live edge, the sizes and third/fourth corners of its two faces
struct EdgeFaces {
  std::vector<std::array<int, 2>> size;   // per edge: sizes of both faces
  std::vector<std::array<int, 2>> third;  // per edge: remaining corner of a triangle, else -1
};

EdgeFaces edge_faces(const PlaneMap& k, const std::vector<MapFace>& fs) {
  EdgeFaces ef;
  ef.size.assign(k.ends.size(), {0, 0});
  ef.third.assign(k.ends.size(), {-1, -1});
  std::vector<int> cnt(k.ends.size(), 0);
  for (const auto& f : fs)
    for (auto [vtx, e] : f) {
      (void)vtx;
      int slot = cnt[e]++;
      ef.size[e][slot] = (int)f.size();
      if (f.size() == 3)
        for (auto [w, e2] : f) {
          (void)e2;
          if (w != k.ends[e][0] && w != k.ends[e][1]) ef.third[e][slot] = w;
        }
    }
  return ef;
}

}  // namespace

std::pair<MarkedGraph, Witness> gen_random_atlas(const GenConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("atlas needs at least two nations");
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  PlaneMap k = PlaneMap::single_edge();
  if (cfg.n >= 3) {
    // the unique three-nation atlas: three lunes pole to pole
    k = PlaneMap();
    k.n = 3;
    k.ends = {{0, 1}, {1, 2}, {0, 2}};
    k.rot = {{0, 2}, {1, 0}, {2, 1}};
  }
  check(k);

  while (k.n < cfg.n) {
    auto fs = map_faces(k);
    auto ef = edge_faces(k, fs);
    auto live = live_edges(k);
    bool subdivided = false;
    if (coin(rng) < cfg.face_split) {
      std::vector<int> both_tri;
      for (int e : live)
        if (ef.size[e][0] == 3 && ef.size[e][1] == 3) both_tri.push_back(e);
      if (!both_tri.empty()) {
        grow_subdivide(k, both_tri[rng() % both_tri.size()]);
        subdivided = true;
      }
    }
    if (!subdivided) grow_lens(k, live[rng() % live.size()]);
    check(k);

    if (coin(rng) < cfg.point_split) {
      fs = map_faces(k);
      ef = edge_faces(k, fs);
      if (rng() % 2 == 0) {
        std::vector<int> mergeable;
        for (int e : live_edges(k))
          if (ef.size[e][0] == 3 && ef.size[e][1] == 3 && ef.third[e][0] >= 0 &&
              ef.third[e][1] >= 0 && ef.third[e][0] != ef.third[e][1])
            mergeable.push_back(e);
        if (!mergeable.empty()) {
          merge_faces(k, mergeable[rng() % mergeable.size()]);
          check(k);
        }
      } else {
        std::vector<const MapFace*> quads;
        for (const auto& f : fs)
          if (f.size() == 4) quads.push_back(&f);
        if (!quads.empty()) {
          split_face(k, *quads[rng() % quads.size()], rng() % 2);
          check(k);
        }
      }
    }
  }

  MarkedGraph g = map_closure(k);
  if (cfg.marks > 0.0)
    for (auto [u, v] : g.edges())
      if (k.has_edge(u, v) && coin(rng) < cfg.marks) g.set_mark(u, v);
  return {g, map_to_witness(k, g.label)};
}

MarkedGraph mutate(const MarkedGraph& g, std::mt19937& rng) {
  MarkedGraph out = g;
  auto es = g.edges();
  std::vector<std::pair<int, int>> non;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (!g.has_edge(u, v)) non.push_back({u, v});
  for (int tries = 0; tries < 8; ++tries) {
    switch (rng() % 3) {
      case 0:
        if (es.empty()) continue;
        {
          auto [u, v] = es[rng() % es.size()];
          out.remove_edge(u, v);
        }
        return out;
      case 1:
        if (non.empty()) continue;
        {
          auto [u, v] = non[rng() % non.size()];
          out.add_edge(u, v);
        }
        return out;
      default:
        if (es.empty()) continue;
        {
          auto [u, v] = es[rng() % es.size()];
          out.set_mark(u, v, !out.is_marked(u, v));
        }
        return out;
    }
  }
  return out;
}

MarkedGraph mutate(const MarkedGraph& g, unsigned seed) {
  std::mt19937 rng(seed);
  return mutate(g, rng);
}

}  // namespace mapgraph
