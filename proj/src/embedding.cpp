#include "mapgraph/embedding.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace mapgraph {

std::optional<RotationSystem> test_planarity(const MarkedGraph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                   boost::no_property,
                                   boost::property<boost::edge_index_t, int>>;
  BG bg(g.n);
  int ei = 0;
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, ei++, bg);
  using Edge = boost::graph_traits<BG>::edge_descriptor;
  std::vector<std::vector<Edge>> emb(g.n);
  auto emb_map = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg));
  if (!boost::boyer_myrvold_planarity_test(
          boost::boyer_myrvold_params::graph = bg,
          boost::boyer_myrvold_params::embedding = emb_map))
    return std::nullopt;
  RotationSystem r;
  r.rot.resize(g.n);
  for (int v = 0; v < g.n; ++v)
    for (const Edge& e : emb[v]) {
      int a = (int)boost::source(e, bg), b = (int)boost::target(e, bg);
      r.rot[v].push_back(a == v ? b : a);
    }
  return r;
}

std::vector<Face> faces(const RotationSystem& r) {
  int n = r.n();
  auto index_in = [&](int v, int u) {
    const auto& rv = r.rot[v];
    auto it = std::find(rv.begin(), rv.end(), u);
    if (it == rv.end()) throw std::runtime_error("rotation system: dart missing reverse");
    return (int)(it - rv.begin());
  };
  std::vector<std::vector<char>> used(n);
  for (int v = 0; v < n; ++v) used[v].assign(r.rot[v].size(), 0);
  std::vector<Face> fs;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < (int)r.rot[v].size(); ++i) {
      if (used[v][i]) continue;
      Face f;
      int cu = v, ci = i;
      do {
        used[cu][ci] = 1;
        int cw = r.rot[cu][ci];
        f.push_back({cu, cw});
        int j = index_in(cw, cu);
        ci = (j + 1) % (int)r.rot[cw].size();
        cu = cw;
      } while (!(cu == v && ci == i));
      fs.push_back(std::move(f));
    }
  return fs;
}

bool euler_check(const RotationSystem& r) {
  int V = r.n();
  long long E2 = 0;
  for (const auto& rv : r.rot) E2 += (long long)rv.size();
  long long F = (long long)faces(r).size();
  return V - E2 / 2 + F == 2;
}

namespace {

// Searches for internally vertex-disjoint paths joining the given terminal
// pairs, one pair at a time.
bool link_pairs(const MarkedGraph& g, std::vector<std::pair<int, int>>& pairs,
                std::size_t idx, std::vector<char>& used) {
  if (idx == pairs.size()) return true;
  auto [s, t] = pairs[idx];
  // DFS over simple paths from s to t through unused interior vertices
  std::function<bool(int)> walk = [&](int v) -> bool {
    for (int w : g.adj[v]) {
      if (w == t) {
        if (link_pairs(g, pairs, idx + 1, used)) return true;
        continue;
      }
      if (used[w]) continue;
      used[w] = 1;
      if (walk(w)) return true;
      used[w] = 0;
    }
    return false;
  };
  return walk(s);
}

bool has_subdivision(const MarkedGraph& g, const std::vector<int>& branch,
                     const std::vector<std::pair<int, int>>& need) {
  std::vector<char> used(g.n, 0);
  for (int b : branch) used[b] = 1;
  auto pairs = need;
  return link_pairs(g, pairs, 0, used);
}

}  // namespace

std::optional<Witness> triangulated_dual(const MarkedGraph& g) {
  if (g.n < 3 || !is_connected(g)) return std::nullopt;
  auto r = test_planarity(g);
  if (!r) return std::nullopt;
  auto fs = faces(*r);
  for (const auto& f : fs)
    if (f.size() != 3) return std::nullopt;
  int base = 0;
  for (int v = 0; v < g.n; ++v) base = std::max(base, g.label[v] + 1);
  Witness h;
  h.nations = g.label;
  for (int i = 0; i < (int)fs.size(); ++i) h.points.push_back(base + i);
  // face id of each dart, so nation rotations list incident faces in order
  std::map<std::pair<int, int>, int> face_of;  // dart (u, position) -> face
  {
    // repeat the trace with the same successor rule as faces()
    std::vector<std::vector<int>> fid(g.n);
    for (int v = 0; v < g.n; ++v) fid[v].assign(r->rot[v].size(), -1);
    int next_face = 0;
    for (int v = 0; v < g.n; ++v)
      for (int i = 0; i < (int)r->rot[v].size(); ++i) {
        if (fid[v][i] >= 0) continue;
        int cu = v, ci = i;
        do {
          fid[cu][ci] = next_face;
          int cw = r->rot[cu][ci];
          auto it = std::find(r->rot[cw].begin(), r->rot[cw].end(), cu);
          ci = (int)(it - r->rot[cw].begin() + 1) % (int)r->rot[cw].size();
          cu = cw;
        } while (!(cu == v && ci == i));
        ++next_face;
      }
    for (int v = 0; v < g.n; ++v)
      for (int i = 0; i < (int)r->rot[v].size(); ++i) face_of[{v, i}] = fid[v][i];
  }
  for (int v = 0; v < g.n; ++v) {
    std::vector<int>& rv = h.rot[g.label[v]];
    for (int i = 0; i < (int)r->rot[v].size(); ++i) rv.push_back(base + face_of[{v, i}]);
  }
  for (int i = 0; i < (int)fs.size(); ++i) {
    std::vector<int>& rp = h.rot[base + i];
    for (auto [u, w] : fs[i]) {
      (void)w;
      rp.push_back(g.label[u]);
    }
    std::reverse(rp.begin(), rp.end());
  }
  return h;
}

bool planar_by_kuratowski(const MarkedGraph& g) {
  int n = g.n;
  // K5 subdivisions
  std::vector<int> vs(n);
  for (int v = 0; v < n; ++v) vs[v] = v;
  std::vector<int> pick;
  std::function<bool(int, int, int)> choose = [&](int from, int want, int kind) -> bool {
    if ((int)pick.size() == want) {
      std::vector<std::pair<int, int>> need;
      if (kind == 5) {
        for (int i = 0; i < 5; ++i)
          for (int j = i + 1; j < 5; ++j) need.push_back({pick[i], pick[j]});
      } else {
        for (int i = 0; i < 3; ++i)
          for (int j = 3; j < 6; ++j) need.push_back({pick[i], pick[j]});
      }
      return has_subdivision(g, pick, need);
    }
    for (int v = from; v < n; ++v) {
      pick.push_back(v);
      if (choose(v + 1, want, kind)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (n >= 5 && choose(0, 5, 5)) return false;
  // K3,3: choose 6 then split into sides; iterate over 3-subsets of the 6
  if (n >= 6) {
    std::vector<int> six;
    std::function<bool(int)> choose6 = [&](int from) -> bool {
      if (six.size() == 6) {
        for (int mask = 0; mask < 64; ++mask) {
          if (__builtin_popcount(mask) != 3) continue;
          std::vector<int> a, b;
          for (int i = 0; i < 6; ++i) (mask >> i & 1 ? a : b).push_back(six[i]);
          std::vector<std::pair<int, int>> need;
          for (int x : a)
            for (int y : b) need.push_back({x, y});
          if (has_subdivision(g, six, need)) return true;
        }
        return false;
      }
      for (int v = from; v < n; ++v) {
        six.push_back(v);
        if (choose6(v + 1)) return true;
        six.pop_back();
      }
      return false;
    };
    if (choose6(0)) return false;
  }
  return true;
}

}  // namespace mapgraph
