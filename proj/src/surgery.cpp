#include "mapgraph/surgery.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

namespace mapgraph {

namespace {

// Faces plus, per edge id, the (at most two) faces bordering it.
struct FaceIndex {
  std::vector<MapFace> faces;
  std::vector<std::array<int, 2>> of_edge;
};

FaceIndex face_index(const PlaneMap& k) {
  FaceIndex fi;
  fi.faces = map_faces(k);
  fi.of_edge.assign(k.ends.size(), {-1, -1});
  for (int f = 0; f < (int)fi.faces.size(); ++f)
    for (auto [v, e] : fi.faces[f]) {
      (void)v;
      auto& slot = fi.of_edge[e];
      (slot[0] < 0 ? slot[0] : slot[1]) = f;
    }
  return fi;
}

std::vector<int> face_corners(const MapFace& f) {
  std::vector<int> c;
  c.reserve(f.size());
  for (auto [v, e] : f) {
    (void)e;
    c.push_back(v);
  }
  std::sort(c.begin(), c.end());
  return c;
}

// The face holding the dart (v, e), i.e. the walk that leaves v along e.
int face_of_dart(const FaceIndex& fi, int v, int e) {
  for (int f : fi.of_edge[e]) {
    if (f < 0) continue;
    for (auto [w, d] : fi.faces[f])
      if (w == v && d == e) return f;
  }
  return -1;
}

void insert_at(std::vector<int>& rot, int pos, int e) {
  rot.insert(rot.begin() + pos, e);
}

std::pair<int, int> pr(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

bool map_matches(const PlaneMap& k, const MarkedGraph& g, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (k.n != g.n) return fail("nation count differs");
  std::string sub;
  if (!valid_plane_map(k, &sub)) return fail("invalid map: " + sub);
  if (map_closure(k).edges() != g.edges()) return fail("closure mismatch");
  for (auto [u, v] : g.marked_edges())
    if (!k.has_edge(u, v)) return fail("marked pair without border");
  return true;
}

bool well_form(PlaneMap& k) {
  for (;;) {
    auto faces = map_faces(k);
    // Realizations per pair: border copies and 4-points (with one face
    // realizing the point remembered for the split).
    std::map<std::pair<int, int>, int> segs;
    std::map<std::pair<int, int>, int> pts;
    std::map<std::pair<int, int>, std::pair<int, int>> at;  // pair -> (face, diag pos)
    for (int e = 0; e < (int)k.ends.size(); ++e)
      if (k.live(e)) segs[pr(k.ends[e][0], k.ends[e][1])]++;
    for (int f = 0; f < (int)faces.size(); ++f) {
      if (faces[f].size() != 4) continue;
      for (int d = 0; d < 2; ++d) {
        auto key = pr(faces[f][d].first, faces[f][d + 2].first);
        pts[key]++;
        at.emplace(key, std::make_pair(f, d));
      }
    }
    std::pair<int, int> bad{-1, -1};
    for (auto& [key, s] : segs) {
      int p = pts.count(key) ? pts[key] : 0;
      if (s >= 2) return false;
      if (s == 1 && p >= 1 && (bad.first < 0 || key < bad)) bad = key;
    }
    for (auto& [key, p] : pts) {
      if (segs.count(key)) continue;
      if (p >= 2 && (bad.first < 0 || key < bad)) bad = key;
    }
    if (bad.first < 0) return true;
    // Split the first offending 4-point along its other diagonal. The two
    // new faces are the triangles on either side of the inserted border.
    auto [f, d] = at[bad];
    int x = faces[f][d + 1].first, ex = faces[f][d + 1].second;
    int y = faces[f][(d + 3) % 4].first, ey = faces[f][(d + 3) % 4].second;
    if (x == y) return false;
    int e = k.new_edge(x, y);
    insert_at(k.rot[x], k.pos_in_rot(x, ex), e);
    insert_at(k.rot[y], k.pos_in_rot(y, ey), e);
  }
}

bool create_point(PlaneMap& k, const MarkedGraph& target, int u, int v) {
  auto fi = face_index(k);
  for (int e = 0; e < (int)k.ends.size(); ++e) {
    if (!k.live(e)) continue;
    int x = k.ends[e][0], y = k.ends[e][1];
    if (x == u || x == v || y == u || y == v) continue;
    auto [f1, f2] = fi.of_edge[e];
    if (f1 < 0 || f2 < 0 || f1 == f2) continue;
    if (fi.faces[f1].size() != 3 || fi.faces[f2].size() != 3) continue;
    int t1 = -1, t2 = -1;
    for (auto [w, d] : fi.faces[f1]) {
      (void)d;
      if (w != x && w != y) t1 = w;
    }
    for (auto [w, d] : fi.faces[f2]) {
      (void)d;
      if (w != x && w != y) t2 = w;
    }
    if (!((t1 == u && t2 == v) || (t1 == v && t2 == u))) continue;
    if (target.is_marked(x, y) && (int)k.edge_copies(x, y).size() == 1) continue;
    k.kill_edge(e);
    return true;
  }
  return false;
}

bool contract_to_point(PlaneMap& k, const MarkedGraph& target, int p0, int p1, int p2,
                       int p3) {
  auto fi = face_index(k);
  std::vector<int> a{p0, p1, p3}, b{p1, p2, p3};
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (int e : k.edge_copies(p1, p3)) {
    auto [f1, f2] = fi.of_edge[e];
    if (f1 < 0 || f2 < 0 || f1 == f2) continue;
    if (fi.faces[f1].size() != 3 || fi.faces[f2].size() != 3) continue;
    auto c1 = face_corners(fi.faces[f1]), c2 = face_corners(fi.faces[f2]);
    if (!((c1 == a && c2 == b) || (c1 == b && c2 == a))) continue;
    if (target.is_marked(p1, p3) && (int)k.edge_copies(p1, p3).size() == 1) continue;
    k.kill_edge(e);
    return true;
  }
  return false;
}

namespace {

enum class End { corner, split };

struct StripPlace {
  int w = -1, start = 0, len = 1;
  End left = End::corner, right = End::corner;
};

// Carves nation f out of base w along the captured run of w's borders.
// False when the placement is structurally impossible on this map.
bool apply_strip(PlaneMap& k, int f, const StripPlace& p) {
  int w = p.w;
  int d = k.deg(w);
  if (d < 2 || p.len < 1 || p.len > d - 1) return false;
  if (!k.rot[f].empty()) return false;
  auto at = [&](int i) { return k.rot[w][((i % d) + d) % d]; };
  int bl = at(p.start - 1);
  int br = at(p.start + p.len);
  if (p.left == End::split && p.right == End::split && bl == br) return false;
  std::vector<int> captured;
  for (int t = 0; t < p.len; ++t) captured.push_back(at(p.start + t));

  if (p.left == End::corner || p.right == End::corner) {
    auto fi = face_index(k);
    if (p.left == End::corner) {
      int fc = face_of_dart(fi, w, captured.front());
      if (fc < 0 || fi.faces[fc].size() != 3) return false;
    }
    if (p.right == End::corner) {
      int fc = face_of_dart(fi, w, br);
      if (fc < 0 || fi.faces[fc].size() != 3) return false;
    }
  }

  int wf = k.new_edge(w, f);
  std::vector<int> rw{wf};
  for (int t = 0; t < d - p.len; ++t) rw.push_back(at(p.start + p.len + t));
  std::vector<int> rf{wf};
  if (p.left == End::split) {
    int y = k.other(bl, w);
    int fy = k.new_edge(f, y);
    rf.push_back(fy);
    insert_at(k.rot[y], k.pos_in_rot(y, bl), fy);
  }
  for (int e : captured) {
    rf.push_back(e);
    k.ends[e][k.ends[e][0] == w ? 0 : 1] = f;
  }
  if (p.right == End::split) {
    int z = k.other(br, w);
    int fz = k.new_edge(f, z);
    rf.push_back(fz);
    insert_at(k.rot[z], k.pos_in_rot(z, br) + 1, fz);
  }
  k.rot[w] = std::move(rw);
  k.rot[f] = std::move(rf);
  return true;
}

// All placements of f on k. With `strict`, the base and every new strong
// neighbor of f must be neighbors of f in `target`; that is sound only for
// the last nation inserted (an earlier nation can have borders captured
// away again by a later one), so earlier insertions enumerate loosely.
std::vector<StripPlace> strip_places(const PlaneMap& k, const MarkedGraph& target, int f,
                                     bool strict) {
  std::vector<StripPlace> out;
  int fdeg = target.degree(f);
  std::vector<int> bases;
  if (strict) {
    bases = target.neighbors(f);
  } else {
    for (int w = 0; w < k.n; ++w)
      if (w != f && !k.rot[w].empty()) bases.push_back(w);
  }
  for (int w : bases) {
    int d = k.deg(w);
    if (d < 2) continue;
    auto at = [&](int i) { return k.rot[w][((i % d) + d) % d]; };
    int cap = std::min(d - 1, std::max(1, fdeg + (strict ? 0 : 2)));
    for (int start = 0; start < d; ++start)
      for (int len = 1; len <= cap; ++len) {
        if (strict) {
          bool ok = true;
          for (int t = 0; t < len && ok; ++t)
            ok = target.has_edge(f, k.other(at(start + t), w));
          if (!ok) continue;
        }
        for (End le : {End::corner, End::split})
          for (End re : {End::corner, End::split}) {
            if (strict) {
              if (le == End::split && !target.has_edge(f, k.other(at(start - 1), w)))
                continue;
              if (re == End::split && !target.has_edge(f, k.other(at(start + len), w)))
                continue;
            }
            out.push_back({w, start, len, le, re});
          }
      }
  }
  return out;
}

std::optional<PlaneMap> finish_lift(const PlaneMap& k, const MarkedGraph& target) {
  MarkedGraph c = map_closure(k);
  std::vector<std::pair<int, int>> missing;
  for (auto [u, v] : target.edges())
    if (!c.has_edge(u, v)) missing.push_back({u, v});
  for (auto [u, v] : c.edges())
    if (!target.has_edge(u, v)) return std::nullopt;
  PlaneMap fixed = k;
  for (auto [u, v] : missing)
    if (!create_point(fixed, target, u, v)) return std::nullopt;
  if (!map_matches(fixed, target)) return std::nullopt;
  if (!well_form(fixed)) return std::nullopt;
  return fixed;
}

std::optional<PlaneMap> lift_search(const PlaneMap& k, const MarkedGraph& target,
                                    const std::vector<int>& order, size_t idx,
                                    long long* fuel) {
  if (idx == order.size()) return finish_lift(k, target);
  int f = order[idx];
  bool last = idx + 1 == order.size();
  for (const StripPlace& p : strip_places(k, target, f, last)) {
    if (fuel) {
      if (*fuel <= 0) return std::nullopt;
      --*fuel;
    }
    PlaneMap next = k;
    if (!apply_strip(next, f, p)) continue;
    if (auto got = lift_search(next, target, order, idx + 1, fuel)) return got;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PlaneMap> lift_atlas(const PlaneMap& k, const MarkedGraph& target,
                                   const std::vector<int>& missing, long long* fuel) {
  if (k.n != target.n || missing.size() > 2) return std::nullopt;
  for (int f : missing)
    if (f < 0 || f >= k.n || !k.rot[f].empty()) return std::nullopt;
  std::vector<int> order = missing;
  std::sort(order.begin(), order.end());
  if (auto got = lift_search(k, target, order, 0, fuel)) return got;
  if (order.size() == 2) {
    std::swap(order[0], order[1]);
    return lift_search(k, target, order, 0, fuel);
  }
  return std::nullopt;
}

namespace {

bool cyclic_form_of(const std::vector<int>& seq, const std::vector<int>& cyc) {
  int s = (int)seq.size();
  if ((int)cyc.size() != s) return false;
  for (int r = 0; r < s; ++r) {
    bool ok = true;
    for (int i = 0; i < s && ok; ++i) ok = seq[(r + i) % s] == cyc[i];
    if (ok) return true;
  }
  return false;
}

// First face whose walk runs along `cycle` (either direction).
int find_cycle_face(const FaceIndex& fi, const std::vector<int>& cycle) {
  std::vector<int> rev(cycle.rbegin(), cycle.rend());
  for (int f = 0; f < (int)fi.faces.size(); ++f) {
    if (fi.faces[f].size() != cycle.size()) continue;
    std::vector<int> seq;
    for (auto [v, e] : fi.faces[f]) {
      (void)e;
      seq.push_back(v);
    }
    if (cyclic_form_of(seq, cycle) || cyclic_form_of(seq, rev)) return f;
  }
  return -1;
}

}  // namespace

std::optional<PlaneMap> glue_at_face(const PlaneMap& k1, const PlaneMap& k2in,
                                     const std::vector<int>& cycle) {
  int s = (int)cycle.size();
  if (k1.n != k2in.n || s < 3) return std::nullopt;
  auto fi1 = face_index(k1);
  int f1 = find_cycle_face(fi1, cycle);
  if (f1 < 0) return std::nullopt;
  const MapFace& F1 = fi1.faces[f1];
  std::vector<int> seq1;
  for (auto [v, e] : F1) {
    (void)e;
    seq1.push_back(v);
  }

  PlaneMap k2 = k2in;
  auto fi2 = face_index(k2);
  int f2 = find_cycle_face(fi2, cycle);
  if (f2 < 0) return std::nullopt;
  {
    std::vector<int> seq2;
    for (auto [v, e] : fi2.faces[f2]) {
      (void)e;
      seq2.push_back(v);
    }
    if (cyclic_form_of(seq2, seq1)) {
      // Same spin on both sides: flip the second map so the walks oppose.
      for (auto& r : k2.rot) std::reverse(r.begin(), r.end());
      fi2 = face_index(k2);
      f2 = find_cycle_face(fi2, cycle);
      if (f2 < 0) return std::nullopt;
    }
  }
  const MapFace& F2 = fi2.faces[f2];

  std::set<int> corners(cycle.begin(), cycle.end());
  if ((int)corners.size() != s) return std::nullopt;
  for (int v = 0; v < k1.n; ++v) {
    bool in1 = !k1.rot[v].empty(), in2 = !k2.rot[v].empty();
    if (corners.count(v) ? !(in1 && in2) : (in1 && in2)) return std::nullopt;
  }

  // Side borders by nation pair, on both maps.
  std::map<std::pair<int, int>, int> side1, side2;
  for (int i = 0; i < s; ++i) {
    side1[pr(seq1[i], seq1[(i + 1) % s])] = F1[i].second;
    side2[pr(F2[i].first, F2[(i + 1) % s].first)] = F2[i].second;
  }

  PlaneMap out = k1;
  std::map<int, int> remap;  // k2 edge id -> out edge id
  for (auto& [pr, e] : side2) remap[e] = side1[pr];
  for (int e = 0; e < (int)k2.ends.size(); ++e) {
    if (!k2.live(e) || remap.count(e)) continue;
    remap[e] = out.new_edge(k2.ends[e][0], k2.ends[e][1]);
  }
  for (int v = 0; v < k2.n; ++v) {
    if (k2.rot[v].empty() || corners.count(v)) continue;
    for (int e : k2.rot[v]) out.rot[v].push_back(remap[e]);
  }
  for (int i = 0; i < s; ++i) {
    int a = seq1[i];
    int gprev = side1[pr(seq1[(i + s - 1) % s], a)];
    int gnext = F1[i].second;
    // k2's fan at a: its rotation between the two sides, read from the
    // gprev side toward the gnext side.
    int hA = side2[pr(a, seq1[(i + 1) % s])];
    int hB = side2[pr(seq1[(i + s - 1) % s], a)];
    int d2 = k2.deg(a);
    int pa = k2.pos_in_rot(a, hA);
    if (k2.rot[a][(pa + 1) % d2] != hB) return std::nullopt;
    std::vector<int> fan;
    for (int t = 2; t < d2; ++t) fan.push_back(remap[k2.rot[a][(pa + t) % d2]]);
    int pos = out.pos_in_rot(a, gnext);
    if (out.rot[a][(pos + out.deg(a) - 1) % out.deg(a)] != gprev) return std::nullopt;
    out.rot[a].insert(out.rot[a].begin() + pos, fan.begin(), fan.end());
  }
  return out;
}

std::optional<PlaneMap> chain_at_pair(const std::vector<PlaneMap>& parts, int u, int v) {
  if (parts.size() < 2) return std::nullopt;
  int n = parts[0].n;
  for (const PlaneMap& p : parts)
    if (p.n != n) return std::nullopt;
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) return std::nullopt;

  PlaneMap out;
  out.n = n;
  out.rot.resize(n);
  std::vector<std::vector<int>> fan_u, fan_v;
  std::vector<int> filled(n, -1);
  for (int i = 0; i < (int)parts.size(); ++i) {
    const PlaneMap& p = parts[i];
    auto copies = p.edge_copies(u, v);
    if (copies.empty()) return std::nullopt;
    int cut = copies.front();
    std::map<int, int> remap;
    for (int e = 0; e < (int)p.ends.size(); ++e) {
      if (!p.live(e) || e == cut) continue;
      remap[e] = out.new_edge(p.ends[e][0], p.ends[e][1]);
    }
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v || p.rot[w].empty()) continue;
      if (filled[w] >= 0) return std::nullopt;
      filled[w] = i;
      for (int e : p.rot[w]) out.rot[w].push_back(remap[e]);
    }
    auto fan = [&](int w) {
      int d = p.deg(w);
      int pc = p.pos_in_rot(w, cut);
      std::vector<int> f;
      for (int t = 1; t < d; ++t) f.push_back(remap[p.rot[w][(pc + t) % d]]);
      return f;
    };
    fan_u.push_back(fan(u));
    fan_v.push_back(fan(v));
    if (fan_u.back().empty() || fan_v.back().empty()) return std::nullopt;
  }
  std::vector<int> seam;
  for (size_t i = 0; i < parts.size(); ++i) seam.push_back(out.new_edge(u, v));
  for (size_t i = 0; i < parts.size(); ++i) {
    for (int e : fan_u[i]) out.rot[u].push_back(e);
    out.rot[u].push_back(seam[i]);
  }
  for (int i = (int)parts.size() - 1; i >= 0; --i) {
    out.rot[v].push_back(seam[i]);
    for (int e : fan_v[i]) out.rot[v].push_back(e);
  }
  return out;
}

}  // namespace mapgraph
