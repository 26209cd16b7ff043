#include "mapgraph/plane_map.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace mapgraph {

PlaneMap PlaneMap::single_edge() {
  PlaneMap k;
  k.n = 2;
  k.ends.push_back({0, 1});
  k.rot = {{0}, {0}};
  return k;
}

int PlaneMap::add_vertex() {
  rot.emplace_back();
  return n++;
}

int PlaneMap::new_edge(int u, int v) {
  ends.push_back({u, v});
  return (int)ends.size() - 1;
}

void PlaneMap::kill_edge(int e) {
  for (int v : {ends[e][0], ends[e][1]}) {
    auto& rv = rot[v];
    rv.erase(std::remove(rv.begin(), rv.end(), e), rv.end());
  }
  ends[e] = {-1, -1};
}

int PlaneMap::m() const {
  int c = 0;
  for (const auto& e : ends)
    if (e[0] >= 0) ++c;
  return c;
}

int PlaneMap::pos_in_rot(int v, int e) const {
  for (int i = 0; i < (int)rot[v].size(); ++i)
    if (rot[v][i] == e) return i;
  return -1;
}

bool PlaneMap::has_edge(int u, int v) const {
  for (int e : rot[u])
    if (other(e, u) == v) return true;
  return false;
}

std::vector<int> PlaneMap::edge_copies(int u, int v) const {
  std::vector<int> out;
  for (int e : rot[u])
    if (other(e, u) == v) out.push_back(e);
  return out;
}

std::vector<MapFace> map_faces(const PlaneMap& k) {
  std::vector<MapFace> out;
  std::set<std::pair<int, int>> seen;  // dart (vertex, rotation position)
  for (int v = 0; v < k.n; ++v)
    for (int i = 0; i < (int)k.rot[v].size(); ++i) {
      if (seen.count({v, i})) continue;
      MapFace f;
      int cu = v, ci = i;
      do {
        seen.insert({cu, ci});
        int e = k.rot[cu][ci];
        f.push_back({cu, e});
        int w = k.other(e, cu);
        ci = (k.pos_in_rot(w, e) + 1) % (int)k.rot[w].size();
        cu = w;
      } while (!(cu == v && ci == i));
      out.push_back(f);
    }
  return out;
}

static bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool valid_plane_map(const PlaneMap& k, std::string* why) {
  if (k.n < 2) return fail(why, "fewer than two nations");
  if ((int)k.rot.size() != k.n) return fail(why, "rotation table size mismatch");
  std::vector<int> count(k.ends.size(), 0);
  for (int v = 0; v < k.n; ++v) {
    if (k.rot[v].empty()) return fail(why, "isolated nation");
    for (int e : k.rot[v]) {
      if (e < 0 || e >= (int)k.ends.size() || !k.live(e))
        return fail(why, "rotation lists a dead edge");
      if (k.ends[e][0] != v && k.ends[e][1] != v)
        return fail(why, "rotation lists a foreign edge");
      ++count[e];
    }
  }
  for (int e = 0; e < (int)k.ends.size(); ++e) {
    if (!k.live(e)) continue;
    if (k.ends[e][0] == k.ends[e][1]) return fail(why, "loop edge");
    if (k.ends[e][0] >= k.n || k.ends[e][1] >= k.n || k.ends[e][1] < 0)
      return fail(why, "edge endpoint out of range");
    if (count[e] != 2) return fail(why, "edge missing from an endpoint rotation");
    if (k.pos_in_rot(k.ends[e][0], e) < 0 || k.pos_in_rot(k.ends[e][1], e) < 0)
      return fail(why, "edge missing from an endpoint rotation");
  }
  // connectivity over live edges
  {
    std::vector<char> vis(k.n, 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : k.rot[v]) {
        int w = k.other(e, v);
        if (!vis[w]) {
          vis[w] = 1;
          ++reached;
          q.push(w);
        }
      }
    }
    if (reached != k.n) return fail(why, "map not connected");
  }
  auto fs = map_faces(k);
  long long verts = k.n, edges = k.m(), faces = (long long)fs.size();
  if (verts - edges + faces != 2) return fail(why, "rotation not genus 0");
  if (k.n == 2) {
    if (edges != 1 || faces != 1 || fs[0].size() != 2)
      return fail(why, "two-nation map must be the single border");
    return true;
  }
  for (const auto& f : fs) {
    if (f.size() != 3 && f.size() != 4) return fail(why, "face not a 3- or 4-point");
    std::set<int> corners;
    for (auto [u, e] : f) {
      (void)e;
      if (!corners.insert(u).second) return fail(why, "face visits a nation twice");
    }
  }
  return true;
}

MarkedGraph map_closure(const PlaneMap& k) {
  MarkedGraph g(k.n);
  for (const auto& f : map_faces(k))
    for (int i = 0; i < (int)f.size(); ++i)
      for (int j = i + 1; j < (int)f.size(); ++j) {
        int a = f[i].first, b = f[j].first;
        if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
      }
  return g;
}

Witness map_to_witness(const PlaneMap& k, const std::vector<int>& label) {
  auto fs = map_faces(k);
  int base = 0;
  for (int v = 0; v < k.n; ++v) base = std::max(base, label[v] + 1);
  Witness h;
  h.nations = label;
  for (int i = 0; i < (int)fs.size(); ++i) h.points.push_back(base + i);
  // face id of every dart, so nation rotations list their points in map order
  std::map<std::pair<int, int>, int> face_of;
  for (int i = 0; i < (int)fs.size(); ++i) {
    for (auto [u, e] : fs[i]) {
      face_of[{u, k.pos_in_rot(u, e)}] = i;
    }
  }
  for (int v = 0; v < k.n; ++v) {
    std::vector<int>& rv = h.rot[label[v]];
    for (int i = 0; i < (int)k.rot[v].size(); ++i) rv.push_back(base + face_of[{v, i}]);
  }
  for (int i = 0; i < (int)fs.size(); ++i) {
    std::vector<int>& rp = h.rot[base + i];
    for (auto [u, e] : fs[i]) {
      (void)e;
      rp.push_back(label[u]);
    }
    std::reverse(rp.begin(), rp.end());
  }
  return h;
}

PlaneMap map_from_rotation(const MarkedGraph& g, const RotationSystem& r) {
  PlaneMap k;
  k.n = g.n;
  k.rot.resize(g.n);
  std::map<std::pair<int, int>, int> id;
  for (auto [u, v] : g.edges()) {
    id[{u, v}] = k.new_edge(u, v);
  }
  for (int v = 0; v < g.n; ++v)
    for (int w : r.rot[v]) k.rot[v].push_back(id[{std::min(v, w), std::max(v, w)}]);
  return k;
}

std::string map_canonical_code(const PlaneMap& k) {
  // Vertices are labeled; only edge-copy names and the cyclic cut of each
  // rotation list are arbitrary. Root the traversal at every dart of vertex 0
  // and keep the lexicographically smallest transcript.
  std::string best;
  for (int s = 0; s < (int)k.rot[0].size(); ++s) {
    std::map<int, int> cnum;
    std::vector<int> start(k.n, -1);
    std::vector<char> seen(k.n, 0);
    std::vector<int> order;
    start[0] = s;
    seen[0] = 1;
    std::queue<int> q;
    q.push(0);
    int next = 0;
    std::ostringstream code;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      int d = (int)k.rot[v].size();
      code << 'v' << v << ':';
      for (int i = 0; i < d; ++i) {
        int e = k.rot[v][(start[v] + i) % d];
        if (!cnum.count(e)) cnum[e] = next++;
        int w = k.other(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          start[w] = k.pos_in_rot(w, e);
          q.push(w);
        }
        code << '(' << w << ',' << cnum[e] << ')';
      }
      code << ';';
    }
    std::string c = code.str();
    if (best.empty() || c < best) best = c;
  }
  return best;
}

std::optional<PlaneMap> map_from_witness(const Witness& h,
                                         const std::vector<int>& nation_ids) {
  std::map<int, int> dense;
  for (int v = 0; v < (int)nation_ids.size(); ++v)
    if (!dense.emplace(nation_ids[v], v).second) return std::nullopt;
  if (dense.size() != h.nations.size()) return std::nullopt;
  for (int id : h.nations)
    if (!dense.count(id)) return std::nullopt;

  auto reverse_pos = [&](int u, int i) -> int {
    int v = h.rot.at(u)[i];
    const auto& ru = h.rot.at(u);
    int occ = 0;
    for (int t = 0; t < i; ++t)
      if (ru[t] == v) ++occ;
    const auto& rv = h.rot.at(v);
    for (int j = 0; j < (int)rv.size(); ++j)
      if (rv[j] == u && occ-- == 0) return j;
    return -1;
  };

  PlaneMap k;
  k.n = (int)nation_ids.size();
  k.rot.resize(k.n);
  for (int v = 0; v < k.n; ++v) {
    auto it = h.rot.find(nation_ids[v]);
    if (it == h.rot.end() || it->second.empty()) return std::nullopt;
    k.rot[v].assign(it->second.size(), -1);
  }
  // Walk each face; a border is one 4-walk (u, p, v, q). The face entered
  // from the nation dart (u, i) fills rotation slot i of u.
  for (int u = 0; u < k.n; ++u) {
    int uid = nation_ids[u];
    for (int i = 0; i < (int)k.rot[u].size(); ++i) {
      if (k.rot[u][i] >= 0) continue;
      int cu = uid, ci = i;
      std::vector<std::pair<int, int>> walk;
      do {
        walk.push_back({cu, ci});
        if (walk.size() > 4) return std::nullopt;
        int cv = h.rot.at(cu)[ci];
        int j = reverse_pos(cu, ci);
        if (j < 0) return std::nullopt;
        ci = (j + 1) % (int)h.rot.at(cv).size();
        cu = cv;
      } while (!(cu == uid && ci == i));
      if (walk.size() != 4) return std::nullopt;
      auto vd = dense.find(walk[2].first);
      if (vd == dense.end() || dense.count(walk[1].first) || dense.count(walk[3].first))
        return std::nullopt;
      int e = k.new_edge(u, vd->second);
      if (k.rot[u][i] >= 0 || k.rot[vd->second][walk[2].second] >= 0) return std::nullopt;
      k.rot[u][i] = e;
      k.rot[vd->second][walk[2].second] = e;
    }
  }
  for (int v = 0; v < k.n; ++v)
    for (int e : k.rot[v])
      if (e < 0) return std::nullopt;
  return k;
}

}  // namespace mapgraph
