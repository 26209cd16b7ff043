#include "mapgraph/witness.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mapgraph {
namespace {

using Dart = std::pair<int, int>;  // (id, position in rot[id])

struct Indexed {
  std::set<int> nation_set, point_set;
  bool ok = false;
  std::string why;
};

Indexed index_ids(const Witness& h) {
  Indexed ix;
  for (int id : h.nations)
    if (!ix.nation_set.insert(id).second) {
      ix.why = "duplicate nation id";
      return ix;
    }
  for (int id : h.points) {
    if (ix.nation_set.count(id)) {
      ix.why = "id is both nation and point";
      return ix;
    }
    if (!ix.point_set.insert(id).second) {
      ix.why = "duplicate point id";
      return ix;
    }
  }
  ix.ok = true;
  return ix;
}

// position in rot[v] of the reverse of dart (u,i); occurrence-paired
int reverse_pos(const Witness& h, int u, int i) {
  int v = h.rot.at(u)[i];
  const auto& ru = h.rot.at(u);
  int occ = 0;
  for (int t = 0; t < i; ++t)
    if (ru[t] == v) ++occ;
  const auto& rv = h.rot.at(v);
  for (int j = 0; j < (int)rv.size(); ++j)
    if (rv[j] == u && occ-- == 0) return j;
  throw std::runtime_error("witness rotation: dart missing reverse");
}

}  // namespace

bool Witness::is_nation(int id) const {
  return std::find(nations.begin(), nations.end(), id) != nations.end();
}

bool Witness::is_point(int id) const {
  return std::find(points.begin(), points.end(), id) != points.end();
}

int Witness::deg(int id) const {
  auto it = rot.find(id);
  return it == rot.end() ? 0 : (int)it->second.size();
}

std::vector<WitnessFace> witness_faces(const Witness& h) {
  std::map<int, std::vector<char>> used;
  for (const auto& [id, r] : h.rot) used[id].assign(r.size(), 0);
  std::vector<WitnessFace> out;
  for (const auto& [id, r] : h.rot)
    for (int i = 0; i < (int)r.size(); ++i) {
      if (used[id][i]) continue;
      WitnessFace f;
      int cu = id, ci = i;
      do {
        used[cu][ci] = 1;
        f.push_back(cu);
        int cv = h.rot.at(cu)[ci];
        int j = reverse_pos(h, cu, ci);
        ci = (j + 1) % (int)h.rot.at(cv).size();
        cu = cv;
      } while (!(cu == id && ci == i));
      out.push_back(std::move(f));
    }
  return out;
}

bool valid_witness(const Witness& h, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  Indexed ix = index_ids(h);
  if (!ix.ok) return fail(ix.why);
  for (const auto& [id, r] : h.rot) {
    bool n_side = ix.nation_set.count(id), p_side = ix.point_set.count(id);
    if (!n_side && !p_side) return fail("rotation for unknown id");
    for (int nb : r) {
      if (n_side && !ix.point_set.count(nb)) return fail("nation adjacent to non-point");
      if (p_side && !ix.nation_set.count(nb)) return fail("point adjacent to non-nation");
    }
  }
  // occurrence symmetry
  for (const auto& [id, r] : h.rot)
    for (int nb : r) {
      auto cnt = [&](int a, int b) {
        auto it = h.rot.find(a);
        if (it == h.rot.end()) return (std::size_t)0;
        return (std::size_t)std::count(it->second.begin(), it->second.end(), b);
      };
      if (cnt(id, nb) != cnt(nb, id)) return fail("asymmetric rotation");
    }
  for (int p : h.points)
    if (h.deg(p) == 0) return fail("isolated point");
  // genus 0 on every component: V - E + F == 2, darts traced per component
  std::vector<WitnessFace> fs;
  try {
    fs = witness_faces(h);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  // component find over ids
  std::map<int, int> comp;
  int nc = 0;
  for (int id : h.nations) comp[id] = -1;
  for (int id : h.points) comp[id] = -1;
  for (auto& [id, c] : comp) {
    if (c >= 0) continue;
    std::vector<int> stack{id};
    c = nc;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      auto it = h.rot.find(v);
      if (it == h.rot.end()) continue;
      for (int w : it->second)
        if (comp[w] < 0) {
          comp[w] = nc;
          stack.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<long long> V(nc, 0), D(nc, 0), F(nc, 0);
  for (auto& [id, c] : comp) {
    V[c] += 1;
    D[c] += h.deg(id);
  }
  for (const auto& f : fs) F[comp[f[0]]] += 1;
  for (int c = 0; c < nc; ++c) {
    if (D[c] == 0) continue;  // isolated vertex: trivially planar
    if (V[c] - D[c] / 2 + F[c] != 2) return fail("rotation not genus 0");
  }
  return true;
}

MarkedGraph half_square(const Witness& h) {
  std::vector<int> ids = h.nations;
  std::sort(ids.begin(), ids.end());
  std::map<int, int> dense;
  for (int i = 0; i < (int)ids.size(); ++i) dense[ids[i]] = i;
  MarkedGraph g((int)ids.size());
  g.label = ids;
  for (int p : h.points) {
    auto it = h.rot.find(p);
    if (it == h.rot.end()) continue;
    const auto& r = it->second;
    for (int a = 0; a < (int)r.size(); ++a)
      for (int b = a + 1; b < (int)r.size(); ++b)
        if (r[a] != r[b]) g.add_edge(dense[r[a]], dense[r[b]]);
  }
  return g;
}

bool verify_witness(const Witness& h, const MarkedGraph& g) {
  std::vector<int> hn = h.nations, gl = g.label;
  std::sort(hn.begin(), hn.end());
  std::sort(gl.begin(), gl.end());
  if (hn != gl) throw std::runtime_error("witness nations do not match graph vertices");
  if (!valid_witness(h)) return false;
  MarkedGraph hs = half_square(h);
  auto lab_edges = [](const MarkedGraph& x) {
    std::set<std::pair<int, int>> es;
    for (auto [u, v] : x.edges()) {
      int a = x.label[u], b = x.label[v];
      es.insert({std::min(a, b), std::max(a, b)});
    }
    return es;
  };
  return lab_edges(hs) == lab_edges(g);
}

Witness reduce_redundant(const Witness& h) {
  Witness w = h;
  bool again = true;
  while (again) {
    again = false;
    // pair -> covering points
    std::map<std::pair<int, int>, std::set<int>> cover;
    for (int p : w.points) {
      auto it = w.rot.find(p);
      if (it == w.rot.end()) continue;
      const auto& r = it->second;
      for (int a = 0; a < (int)r.size(); ++a)
        for (int b = a + 1; b < (int)r.size(); ++b)
          if (r[a] != r[b])
            cover[{std::min(r[a], r[b]), std::max(r[a], r[b])}].insert(p);
    }
    for (int p : w.points) {
      const auto& r = w.rot[p];
      bool redundant = true;
      for (int a = 0; a < (int)r.size() && redundant; ++a)
        for (int b = a + 1; b < (int)r.size() && redundant; ++b) {
          if (r[a] == r[b]) continue;
          auto key = std::make_pair(std::min(r[a], r[b]), std::max(r[a], r[b]));
          if (cover[key].size() < 2) redundant = false;
        }
      if (redundant) {
        w.points.erase(std::find(w.points.begin(), w.points.end(), p));
        w.rot.erase(p);
        for (int nid : w.nations) {
          auto it = w.rot.find(nid);
          if (it == w.rot.end()) continue;
          auto& rr = it->second;
          rr.erase(std::remove(rr.begin(), rr.end(), p), rr.end());
        }
        again = true;
        break;
      }
    }
  }
  return w;
}

WitnessProfile profile(const Witness& h, const MarkedGraph& g) {
  WitnessProfile pr;
  for (int p : h.points) pr.k = std::max(pr.k, h.deg(p));
  auto fs = witness_faces(h);
  pr.hole_free = !fs.empty();
  for (const auto& f : fs)
    if (f.size() != 4) pr.hole_free = false;
  for (const auto& f : fs) {
    if (f.size() != 4) continue;
    int n1, p1, n2, p2;
    if (h.is_nation(f[0])) {
      n1 = f[0], p1 = f[1], n2 = f[2], p2 = f[3];
    } else {
      p1 = f[0], n1 = f[1], p2 = f[2], n2 = f[3];
    }
    if (n1 == n2) continue;  // degenerate face (single-edge map)
    auto key = std::make_pair(std::min(n1, n2), std::max(n1, n2));
    pr.segment_faces[key].push_back({n1, p1, n2, p2});
  }
  for (int p : h.points) {
    if (h.deg(p) != 4) continue;
    const auto& r = h.rot.at(p);
    for (auto [a, b] : {std::pair{r[0], r[2]}, std::pair{r[1], r[3]}}) {
      if (a == b) continue;
      pr.point_meets[{std::min(a, b), std::max(a, b)}].push_back(p);
    }
  }
  // all shared points per pair, for the with-holes fallback below
  std::map<std::pair<int, int>, std::set<int>> shared;
  for (int p : h.points) {
    auto it = h.rot.find(p);
    if (it == h.rot.end()) continue;
    const auto& r = it->second;
    for (int a = 0; a < (int)r.size(); ++a)
      for (int b = a + 1; b < (int)r.size(); ++b)
        if (r[a] != r[b]) shared[{std::min(r[a], r[b]), std::max(r[a], r[b])}].insert(p);
  }
  pr.well_formed = true;
  for (auto [u, v] : g.edges()) {
    auto key = std::make_pair(std::min(g.label[u], g.label[v]), std::max(g.label[u], g.label[v]));
    std::size_t segs = pr.segment_faces.count(key) ? pr.segment_faces[key].size() : 0;
    std::size_t pts = pr.point_meets.count(key) ? pr.point_meets[key].size() : 0;
    bool good;
    if (pr.hole_free) {
      // intersection pieces are exactly segment-faces plus opposite meets
      good = (segs == 1 && pts == 0) || (segs == 0 && pts == 1);
    } else {
      // with holes a segment may end in the open; fall back to counting
      // shared points
      good = shared[key].size() == 1 || segs == 1;
    }
    if (!good) pr.well_formed = false;
  }
  return pr;
}

bool verify_atlas(const Witness& h, const MarkedGraph& g, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  try {
    if (!verify_witness(h, g)) return fail("not a witness for the graph");
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  // connectivity over all ids
  std::size_t total = h.nations.size() + h.points.size();
  if (total == 0) return fail("empty witness");
  std::set<int> seen;
  std::vector<int> stack{h.nations.empty() ? h.points[0] : h.nations[0]};
  seen.insert(stack[0]);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    auto it = h.rot.find(v);
    if (it == h.rot.end()) continue;
    for (int w : it->second)
      if (seen.insert(w).second) stack.push_back(w);
  }
  if (seen.size() != total) return fail("witness not connected");
  for (int p : h.points) {
    int d = h.deg(p);
    if (d < 2 || d > 4) return fail("point degree out of range");
  }
  for (const auto& f : witness_faces(h))
    if (f.size() != 4) return fail("face not 4-sided");
  WitnessProfile pr = profile(h, g);
  for (auto [u, v] : g.marked_edges()) {
    auto key = std::make_pair(std::min(g.label[u], g.label[v]), std::max(g.label[u], g.label[v]));
    if (!pr.segment_faces.count(key) || pr.segment_faces[key].empty())
      return fail("marked edge has no segment");
  }
  return true;
}

Witness normalize_atlas(const Witness& h) {
  Witness w = h;
  // drop points of degree 0/1: they witness no adjacency
  for (bool again = true; again;) {
    again = false;
    for (int p : w.points)
      if (w.deg(p) <= 1) {
        w.points.erase(std::find(w.points.begin(), w.points.end(), p));
        w.rot.erase(p);
        for (auto& [id, r] : w.rot) r.erase(std::remove(r.begin(), r.end(), p), r.end());
        again = true;
        break;
      }
  }
  int next_id = 0;
  for (int id : w.nations) next_id = std::max(next_id, id + 1);
  for (int id : w.points) next_id = std::max(next_id, id + 1);
  // A 6-sided face (u,p,v,q,w,r) becomes three 4-sided ones by inserting a
  // degree-3 point adjacent to u,v,w. Only consecutive face pairs are
  // joined, and the face's own points already cover those, so the insertion
  // is redundant and the half-square is unchanged. Longer faces have no such
  // pair-safe split and are left alone.
  for (bool again = true; again;) {
    again = false;
    std::map<int, std::vector<char>> used;
    for (const auto& [id, r] : w.rot) used[id].assign(r.size(), 0);
    for (const auto& [id0, r0] : w.rot) {
      for (int i0 = 0; i0 < (int)r0.size() && !again; ++i0) {
        if (used[id0][i0]) continue;
        std::vector<Dart> walk;
        int cu = id0, ci = i0;
        do {
          used[cu][ci] = 1;
          walk.push_back({cu, ci});
          int cv = w.rot.at(cu)[ci];
          int j = reverse_pos(w, cu, ci);
          ci = (j + 1) % (int)w.rot.at(cv).size();
          cu = cv;
        } while (!(cu == id0 && ci == i0));
        if (walk.size() != 6) continue;
        int start = w.is_nation(walk[0].first) ? 0 : 1;
        int x = next_id++;
        w.points.push_back(x);
        // nation darts of the walk, in walk order
        std::vector<Dart> at;
        for (int t = start; t < (int)walk.size(); t += 2) at.push_back(walk[t]);
        std::vector<int>& rx = w.rot[x];
        for (auto it = at.rbegin(); it != at.rend(); ++it) rx.push_back(it->first);
        // insert x right before each nation's outgoing face dart; descending
        // positions per nation keep earlier recorded positions valid
        std::sort(at.begin(), at.end(), [](const Dart& a, const Dart& b) {
          return a.first != b.first ? a.first < b.first : a.second > b.second;
        });
        for (auto [nid, pos] : at) w.rot[nid].insert(w.rot[nid].begin() + pos, x);
        again = true;
      }
      if (again) break;
    }
  }
  return w;
}

std::string witness_to_json(const Witness& h) {
  nlohmann::json j;
  j["nations"] = h.nations;
  j["points"] = h.points;
  nlohmann::json r = nlohmann::json::object();
  for (const auto& [id, lst] : h.rot) r[std::to_string(id)] = lst;
  j["rot"] = r;
  return j.dump(2);
}

Witness witness_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Witness h;
  if (!j.contains("nations") || !j.contains("points") || !j.contains("rot"))
    throw std::runtime_error("witness json: missing nations/points/rot");
  h.nations = j["nations"].get<std::vector<int>>();
  h.points = j["points"].get<std::vector<int>>();
  for (auto& [key, val] : j["rot"].items())
    h.rot[std::stoi(key)] = val.get<std::vector<int>>();
  return h;
}

Witness witness_from_json_stream(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return witness_from_json(ss.str());
}

}  // namespace mapgraph
