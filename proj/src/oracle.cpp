#include "mapgraph/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mapgraph {

namespace {

struct Copy {
  int u, v;
  int filled;
};

struct CFace {
  std::vector<int> verts;   // corner cycle
  std::vector<int> copies;  // copies[i] joins verts[i] and verts[i+1]
};

// Exhaustive builder of candidate maps: faces go into the lowest open edge
// slot one at a time, so each partial state has a forced frontier. Corners of
// a face must be pairwise adjacent in the constraint graph, which keeps the
// closure inside it; `exact` additionally requires equality at the end.
struct MapSearch {
  const MarkedGraph& g;
  bool exact;
  int max_copies, max_faces;
  bool triangles, quads;
  std::function<bool(const PlaneMap&)> sink;

  int forbid_below = 0;  // no copy (0, y) with y below the seed's far end
  bool stop = false;
  std::vector<Copy> copies;
  std::vector<CFace> faces;
  std::vector<int> cover_count;
  int uncovered = 0;
  int filled_total = 0;
  std::map<std::pair<int, int>, int> support;  // simple underlying edge -> copy count
  std::vector<std::vector<int>> pair_cap;      // max simultaneous copies per pair

  MapSearch(const MarkedGraph& g_, bool exact_, int max_copies_, int max_faces_,
            int max_point_degree)
      : g(g_),
        exact(exact_),
        max_copies(max_copies_),
        max_faces(max_faces_),
        triangles(max_point_degree >= 3),
        quads(max_point_degree >= 4) {}

  void run() {
    // k parallel copies of a border pair slice the sphere into k regions, each
    // holding other nations, and nations in different regions cannot touch; so
    // in exact mode a pair carries at most as many copies as G minus the pair
    // has components, and never more than n-2 regardless
    pair_cap.assign(g.n, std::vector<int>(g.n, g.n - 2));
    if (exact) {
      for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
          if (!g.has_edge(u, v)) continue;
          MarkedGraph rest = remove(g, {u, v}, {});
          int comps = rest.n == 0 ? 0 : (int)connected_components(rest).size();
          pair_cap[u][v] = pair_cap[v][u] = std::min(g.n - 2, std::max(1, comps));
        }
    }
    for (int x : g.adj[0]) {
      copies.assign(1, {0, x, 0});
      faces.clear();
      cover_count.assign(g.n, 0);
      cover_count[0] = cover_count[x] = 1;
      uncovered = g.n - 2;
      filled_total = 0;
      support.clear();
      support[{0, x}] = 1;
      forbid_below = x;
      expand();
      if (stop) return;
    }
  }

  // the simple graph under the copies must stay planar; the finished map is a
  // plane multigraph and partial states only ever grow into it
  bool support_planar() const {
    if (support.size() <= 8) return true;
    MarkedGraph s(g.n);
    for (const auto& [e, cnt] : support) {
      (void)cnt;
      s.add_edge(e.first, e.second);
    }
    return test_planarity(s).has_value();
  }

  int anchor() const {
    for (int i = 0; i < (int)copies.size(); ++i)
      if (copies[i].filled < 2) return i;
    return -1;
  }

  // existing open copies joining a and b, then -1 if a fresh copy is allowed;
  // untouched copies of one pair are interchangeable, so only the first is
  // offered, and a fresh copy is redundant while an untouched one exists
  std::vector<int> side_options(int a, int b) const {
    std::vector<int> out;
    bool have_blank = false;
    for (int i = 0; i < (int)copies.size(); ++i) {
      const Copy& c = copies[i];
      if (c.filled >= 2 || !((c.u == a && c.v == b) || (c.u == b && c.v == a))) continue;
      if (c.filled == 0) {
        if (have_blank) continue;
        have_blank = true;
      }
      out.push_back(i);
    }
    bool fresh = !have_blank && (int)copies.size() < max_copies;
    auto it = support.find({std::min(a, b), std::max(a, b)});
    if (it != support.end() && it->second >= pair_cap[a][b]) fresh = false;
    if ((a == 0 && b < forbid_below) || (b == 0 && a < forbid_below)) fresh = false;
    if (fresh) out.push_back(-1);
    return out;
  }

  void expand() {
    if (stop) return;
    int a = anchor();
    if (a < 0) {
      finish();
      return;
    }
    int room = max_faces - (int)faces.size();
    if (room <= 0) return;
    if (uncovered > 2 * room) return;
    if (2 * (int)copies.size() - filled_total > 4 * room) return;
    int u = copies[a].u, v = copies[a].v;
    if (triangles) {
      for (int x = 0; x < g.n && !stop; ++x) {
        if (x == u || x == v || !g.has_edge(x, u) || !g.has_edge(x, v)) continue;
        for (int c1 : side_options(v, x)) {
          for (int c2 : side_options(x, u)) {
            if (c1 >= 0 && c1 == c2) continue;
            place({u, v, x}, {a, c1, c2});
            if (stop) return;
          }
        }
      }
    }
    if (!quads) return;
    for (int x = 0; x < g.n && !stop; ++x) {
      if (x == u || x == v || !g.has_edge(x, u) || !g.has_edge(x, v)) continue;
      for (int y = 0; y < g.n && !stop; ++y) {
        if (y == u || y == v || y == x || !g.has_edge(y, u) || !g.has_edge(y, v) ||
            !g.has_edge(y, x))
          continue;
        for (int c1 : side_options(v, x)) {
          for (int c2 : side_options(x, y)) {
            if (c1 >= 0 && c1 == c2) continue;
            for (int c3 : side_options(y, u)) {
              if (c3 >= 0 && (c3 == c1 || c3 == c2)) continue;
              place({u, v, x, y}, {a, c1, c2, c3});
              if (stop) return;
            }
          }
        }
      }
    }
  }

  void place(std::vector<int> vs, std::vector<int> side) {
    int s = (int)vs.size();
    std::vector<int> created;
    bool ok = true;
    bool support_grew = false;
    for (int i = 0; i < s && ok; ++i) {
      if (side[i] >= 0) continue;
      if ((int)copies.size() >= max_copies) {
        ok = false;
        break;
      }
      int a = vs[i], b = vs[(i + 1) % s];
      copies.push_back({a, b, 0});
      side[i] = (int)copies.size() - 1;
      created.push_back(side[i]);
      for (int w : {a, b})
        if (cover_count[w]++ == 0) --uncovered;
      if (support[{std::min(a, b), std::max(a, b)}]++ == 0) support_grew = true;
    }
    if (ok && support_grew && !support_planar()) ok = false;
    if (ok) {
      for (int i = 0; i < s; ++i) ++copies[side[i]].filled;
      filled_total += s;
      faces.push_back({vs, side});
      expand();
      faces.pop_back();
      filled_total -= s;
      for (int i = 0; i < s; ++i) --copies[side[i]].filled;
    }
    for (auto it = created.rbegin(); it != created.rend(); ++it) {
      int a = copies[*it].u, b = copies[*it].v;
      for (int w : {a, b})
        if (--cover_count[w] == 0) ++uncovered;
      auto se = support.find({std::min(a, b), std::max(a, b)});
      if (--se->second == 0) support.erase(se);
      copies.pop_back();
    }
  }

  // true when face f with direction d walks side i from the copy's u to its v
  bool walks_u_to_v(int f, int i, int d) const {
    const CFace& cf = faces[f];
    int s = (int)cf.verts.size();
    int a = cf.verts[i], b = cf.verts[(i + 1) % s];
    const Copy& c = copies[cf.copies[i]];
    return d > 0 ? a == c.u : b == c.u;
  }

  void finish() {
    if (uncovered > 0) return;
    if (g.n - (int)copies.size() + (int)faces.size() != 2) return;

    // pair up the two faces at every copy
    std::vector<std::array<std::pair<int, int>, 2>> fillers(copies.size());
    std::vector<int> fcount(copies.size(), 0);
    for (int f = 0; f < (int)faces.size(); ++f)
      for (int i = 0; i < (int)faces[f].copies.size(); ++i) {
        int c = faces[f].copies[i];
        fillers[c][fcount[c]++] = {f, i};
      }

    // orient faces so shared copies are walked in opposite directions
    std::vector<int> dir(faces.size(), 0);
    for (int seed = 0; seed < (int)faces.size(); ++seed) {
      if (dir[seed] != 0) continue;
      dir[seed] = 1;
      std::queue<int> q;
      q.push(seed);
      while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int i = 0; i < (int)faces[f].copies.size(); ++i) {
          int c = faces[f].copies[i];
          auto [f2, i2] = fillers[c][0] == std::pair<int, int>{f, i} ? fillers[c][1]
                                                                     : fillers[c][0];
          bool mine = walks_u_to_v(f, i, dir[f]);
          int want = walks_u_to_v(f2, i2, 1) == !mine ? 1 : -1;
          if (dir[f2] == 0) {
            dir[f2] = want;
            q.push(f2);
          } else if (dir[f2] != want) {
            return;
          }
        }
      }
    }

    // corner successors must close into one rotation cycle per vertex
    std::vector<std::map<int, int>> succ(g.n);
    for (int f = 0; f < (int)faces.size(); ++f) {
      int s = (int)faces[f].verts.size();
      for (int p = 0; p < s; ++p) {
        int vtx = faces[f].verts[p];
        int cin = faces[f].copies[(p + s - 1) % s];
        int cout = faces[f].copies[p];
        if (dir[f] < 0) std::swap(cin, cout);
        if (!succ[vtx].emplace(cin, cout).second) return;
      }
    }
    PlaneMap km;
    km.n = g.n;
    km.rot.resize(g.n);
    for (const Copy& c : copies) km.new_edge(c.u, c.v);
    for (int v = 0; v < g.n; ++v) {
      if (succ[v].empty()) return;
      int c0 = succ[v].begin()->first, c = c0;
      do {
        km.rot[v].push_back(c);
        auto it = succ[v].find(c);
        if (it == succ[v].end()) return;
        c = it->second;
      } while (c != c0 && km.rot[v].size() <= succ[v].size());
      if (km.rot[v].size() != succ[v].size() || c != c0) return;
    }
    if (!valid_plane_map(km)) return;
    if (exact) {
      if (map_closure(km).edges() != g.edges()) return;
      for (auto [mu, mv] : g.marked_edges())
        if (!km.has_edge(mu, mv)) return;
    }
    if (!sink(km)) stop = true;
  }
};

std::vector<int> identity_labels(int n) {
  std::vector<int> l(n);
  for (int i = 0; i < n; ++i) l[i] = i;
  return l;
}

}  // namespace

void enumerate_atlases(int n, const EnumerationBounds& bounds,
                       const std::function<bool(const Witness&)>& emit) {
  if (n > bounds.max_nations || n > 8)
    throw std::out_of_range("atlas enumeration is capped at 8 nations");
  if (n <= 1) return;
  if (n == 2) {
    if (bounds.max_points != 0) emit(map_to_witness(PlaneMap::single_edge(), {0, 1}));
    return;
  }
  int max_points = bounds.max_points >= 0 ? bounds.max_points : 3 * n - 6;
  MarkedGraph all = complete_graph(n);
  MapSearch search(all, false, 3 * n - 6, std::min(max_points, 2 * n - 4),
                   bounds.max_point_degree);
  std::set<std::string> seen;
  search.sink = [&](const PlaneMap& km) {
    Witness h = map_to_witness(km, identity_labels(n));
    if (seen.insert(witness_canonical_code(h)).second) return emit(h);
    return true;
  };
  search.run();
}

std::vector<Witness> enumerate_atlases(int n, const EnumerationBounds& bounds) {
  std::vector<Witness> out;
  enumerate_atlases(n, bounds, [&](const Witness& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

std::optional<PlaneMap> oracle_recognize_map(const MarkedGraph& g) {
  if (g.n > 8) throw std::out_of_range("exhaustive recognition is capped at 8 vertices");
  if (g.n <= 1) return std::nullopt;
  if (!is_connected(g)) return std::nullopt;
  if (g.n == 2) {
    if (!g.has_edge(0, 1)) return std::nullopt;
    return PlaneMap::single_edge();
  }

  std::ostringstream key;
  key << g.n;
  for (auto [u, v] : g.edges()) key << ' ' << u << ',' << v;
  key << '|';
  auto marks = g.marked_edges();
  std::sort(marks.begin(), marks.end());
  for (auto [u, v] : marks) key << ' ' << u << ',' << v;

  static std::map<std::string, std::optional<PlaneMap>> cache;
  auto hit = cache.find(key.str());
  if (hit != cache.end()) return hit->second;

  MapSearch search(g, true, 3 * g.n - 6, 2 * g.n - 4, 4);
  std::optional<PlaneMap> found;
  search.sink = [&](const PlaneMap& km) {
    found = km;
    return false;
  };
  search.run();
  cache[key.str()] = found;
  return found;
}

std::optional<Witness> oracle_recognize(const MarkedGraph& g) {
  auto km = oracle_recognize_map(g);
  if (!km) return std::nullopt;
  return map_to_witness(*km, g.label);
}

std::string witness_canonical_code(const Witness& h) {
  if (h.nations.empty()) return "empty";
  int s0 = *std::min_element(h.nations.begin(), h.nations.end());
  std::set<int> nation_set(h.nations.begin(), h.nations.end());
  auto it0 = h.rot.find(s0);
  if (it0 == h.rot.end() || it0->second.empty()) return "empty";
  int d0 = (int)it0->second.size();

  std::string best;
  for (int s = 0; s < d0; ++s) {
    std::map<int, int> pid;      // point -> discovery number
    std::map<int, int> start;    // vertex -> rotation start position
    std::set<int> queued;
    std::queue<int> q;
    std::ostringstream code;
    auto token = [&](int w) {
      if (nation_set.count(w)) return 'n' + std::to_string(w);
      auto ins = pid.emplace(w, (int)pid.size());
      return 'p' + std::to_string(ins.first->second);
    };
    start[s0] = s;
    queued.insert(s0);
    q.push(s0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      const auto& rv = h.rot.at(v);
      int d = (int)rv.size();
      code << token(v) << ':';
      for (int i = 0; i < d; ++i) {
        int p = (start[v] + i) % d;
        int w = rv[p];
        code << token(w) << ' ';
        if (!queued.count(w)) {
          // pair the occurrence of w here with the matching occurrence of v
          int occ = 0;
          for (int j = 0; j < p; ++j)
            if (rv[j] == w) ++occ;
          const auto& rw = h.rot.at(w);
          for (int j = 0; j < (int)rw.size(); ++j)
            if (rw[j] == v && occ-- == 0) {
              start[w] = j;
              break;
            }
          queued.insert(w);
          q.push(w);
        }
      }
      code << ';';
    }
    size_t total = h.nations.size() + h.points.size();
    if (queued.size() != total) code << "|cut" << total - queued.size();
    std::string c = code.str();
    if (best.empty() || c < best) best = c;
  }
  return best;
}

}  // namespace mapgraph
