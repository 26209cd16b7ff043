#include "mapgraph/cuts.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace mapgraph {
namespace {

// Components of g with the vertices in `dropped` removed.
std::vector<std::vector<int>> components_without(const MarkedGraph& g,
                                                 const std::vector<int>& dropped) {
  std::vector<char> skip(g.n, 0);
  for (int v : dropped) skip[v] = 1;
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.n, 0);
  for (int s = 0; s < g.n; ++s) {
    if (skip[s] || seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : g.adj[v])
        if (!skip[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::optional<Cut> cut_if_disconnecting(const MarkedGraph& g, std::vector<int> vs) {
  auto comps = components_without(g, vs);
  if (comps.size() < 2) return std::nullopt;
  std::sort(vs.begin(), vs.end());
  return Cut{std::move(vs), std::move(comps)};
}

// Unit-vertex-capacity flow network: node v splits into 2v (in) and 2v+1
// (out). Returns min(s,t) vertex connectivity capped at `cap`, and if below
// cap fills `cut` with the separating vertices.
int st_cut_below(const MarkedGraph& g, int s, int t, int cap, std::vector<int>* cut) {
  int nn = 2 * g.n;
  // adjacency with residual capacities, rebuilt per call; fine at this scale
  std::vector<std::vector<std::pair<int, int>>> arcs(nn);  // (to, index of reverse)
  std::vector<std::vector<int>> rescap(nn);
  auto add = [&](int a, int b, int c) {
    arcs[a].push_back({b, (int)arcs[b].size()});
    rescap[a].push_back(c);
    arcs[b].push_back({a, (int)arcs[a].size() - 1});
    rescap[b].push_back(0);
  };
  const int INF = 1 << 28;
  for (int v = 0; v < g.n; ++v) add(2 * v, 2 * v + 1, v == s || v == t ? INF : 1);
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) add(2 * u + 1, 2 * v, INF);
  int source = 2 * s + 1, sink = 2 * t;
  int flow = 0;
  while (flow < cap) {
    std::vector<std::pair<int, int>> pred(nn, {-1, -1});  // (node, arc index)
    std::vector<int> queue{source};
    pred[source] = {source, 0};
    for (std::size_t qi = 0; qi < queue.size() && pred[sink].first < 0; ++qi) {
      int a = queue[qi];
      for (int i = 0; i < (int)arcs[a].size(); ++i) {
        int b = arcs[a][i].first;
        if (rescap[a][i] > 0 && pred[b].first < 0) {
          pred[b] = {a, i};
          queue.push_back(b);
        }
      }
    }
    if (pred[sink].first < 0) break;
    for (int b = sink; b != source;) {
      auto [a, i] = pred[b];
      rescap[a][i] -= 1;
      rescap[b][arcs[a][i].second] += 1;
      b = a;
    }
    ++flow;
  }
  if (flow < cap && cut) {
    // residual-reachable side; cut = split arcs crossing it
    std::vector<char> reach(nn, 0);
    std::vector<int> queue{source};
    reach[source] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int a = queue[qi];
      for (int i = 0; i < (int)arcs[a].size(); ++i)
        if (rescap[a][i] > 0 && !reach[arcs[a][i].first]) {
          reach[arcs[a][i].first] = 1;
          queue.push_back(arcs[a][i].first);
        }
    }
    cut->clear();
    for (int v = 0; v < g.n; ++v)
      if (reach[2 * v] && !reach[2 * v + 1]) cut->push_back(v);
    assert((int)cut->size() == flow);
  }
  return flow;
}

}  // namespace

std::optional<Cut> find_cut_brute(const MarkedGraph& g, int k) {
  std::vector<int> pick(k);
  std::function<std::optional<Cut>(int, int)> go = [&](int idx, int from) -> std::optional<Cut> {
    if (idx == k) return cut_if_disconnecting(g, pick);
    for (int v = from; v < g.n; ++v) {
      pick[idx] = v;
      if (auto c = go(idx + 1, v + 1)) return c;
    }
    return std::nullopt;
  };
  return go(0, 0);
}

std::vector<int> articulation_points(const MarkedGraph& g) {
  std::vector<int> disc(g.n, -1), low(g.n, 0), parent(g.n, -1);
  std::vector<char> artic(g.n, 0);
  int timer = 0;
  // iterative DFS so deep paths don't overflow the stack
  for (int root = 0; root < g.n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<std::pair<int, int>> stack{{root, 0}};  // (vertex, next child index)
    disc[root] = low[root] = timer++;
    int root_children = 0;
    while (!stack.empty()) {
      auto& [v, ci] = stack.back();
      if (ci < (int)g.adj[v].size()) {
        int w = g.adj[v][ci++];
        if (disc[w] < 0) {
          parent[w] = v;
          disc[w] = low[w] = timer++;
          if (v == root) ++root_children;
          stack.push_back({w, 0});
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        int p = parent[v];
        if (p >= 0) {
          low[p] = std::min(low[p], low[v]);
          if (p != root && low[v] >= disc[p]) artic[p] = 1;
        }
      }
    }
    if (root_children >= 2) artic[root] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v)
    if (artic[v]) out.push_back(v);
  return out;
}

bool is_2connected(const MarkedGraph& g) {
  return g.n >= 2 && is_connected(g) && articulation_points(g).empty();
}

std::optional<std::vector<int>> vertex_cut_atmost(const MarkedGraph& g, int k) {
  if (g.n > 0 && !is_connected(g)) return std::vector<int>{};
  if (k <= 0 || g.n <= 2) return std::nullopt;
  // Cuts avoiding vertex 0: flow from 0 to every non-neighbor. Cuts through
  // vertex 0: a cut of size k-1 in G-0, plus 0.
  std::vector<char> nbr(g.n, 0);
  nbr[0] = 1;
  for (int w : g.adj[0]) nbr[w] = 1;
  for (int t = 1; t < g.n; ++t) {
    if (nbr[t]) continue;
    std::vector<int> cut;
    if (st_cut_below(g, 0, t, k + 1, &cut) <= k) return cut;
  }
  std::vector<int> keep;
  for (int v = 1; v < g.n; ++v) keep.push_back(v);
  MarkedGraph h = induced_subgraph(g, keep);
  if (auto sub = vertex_cut_atmost(h, k - 1)) {
    std::vector<int> cut{0};
    for (int v : *sub) cut.push_back(keep[v]);  // keep is sorted, position = id
    std::sort(cut.begin(), cut.end());
    return cut;
  }
  return std::nullopt;
}

std::optional<Cut> find_cut(const MarkedGraph& g, int k) {
  assert(k >= 1 && k <= 3);
  if (g.n < k + 2) return std::nullopt;
  if (k == 1) {
    auto aps = articulation_points(g);
    if (aps.empty()) return std::nullopt;
    return cut_if_disconnecting(g, {aps[0]});
  }
  if (k == 2) {
    for (int u = 0; u < g.n; ++u) {
      // candidates v > u: either v cuts G-u, or G-u is already disconnected
      std::vector<int> rest;
      for (int v = 0; v < g.n; ++v)
        if (v != u) rest.push_back(v);
      MarkedGraph h = induced_subgraph(g, rest);
      bool h_disc = !is_connected(h);
      std::vector<char> cand(g.n, 0);
      if (h_disc) {
        for (int v = u + 1; v < g.n; ++v) cand[v] = 1;
      } else {
        for (int a : articulation_points(h)) cand[rest[a]] = 1;
      }
      for (int v = u + 1; v < g.n; ++v)
        if (cand[v])
          if (auto c = cut_if_disconnecting(g, {u, v})) return c;
    }
    return std::nullopt;
  }
  // k == 3: strict lexicographic scan while affordable, flow check first so
  // 4-connected graphs (the common case by this recognizer stage) exit fast.
  auto some = vertex_cut_atmost(g, 3);
  if (!some) return std::nullopt;
  if (g.n <= 160) {
    for (int u = 0; u < g.n; ++u)
      for (int v = u + 1; v < g.n; ++v) {
        std::vector<int> rest;
        for (int w = 0; w < g.n; ++w)
          if (w != u && w != v) rest.push_back(w);
        MarkedGraph h = induced_subgraph(g, rest);
        std::vector<char> cand(g.n, 0);
        if (!is_connected(h)) {
          for (int w = v + 1; w < g.n; ++w) cand[w] = 1;
        } else {
          for (int a : articulation_points(h)) cand[rest[a]] = 1;
        }
        for (int w = v + 1; w < g.n; ++w)
          if (cand[w])
            if (auto c = cut_if_disconnecting(g, {u, v, w})) return c;
      }
    return std::nullopt;
  }
  // pad a flow-found cut of size < 3 up to exactly three vertices; removing a
  // vertex from a component of size >= 2 keeps the graph disconnected
  std::vector<int> base = *some;
  while (base.size() < 3) {
    bool grown = false;
    for (int w = 0; w < g.n && !grown; ++w) {
      if (std::find(base.begin(), base.end(), w) != base.end()) continue;
      std::vector<int> trial = base;
      trial.push_back(w);
      if (components_without(g, trial).size() >= 2) {
        base = std::move(trial);
        grown = true;
      }
    }
    if (!grown) return std::nullopt;
  }
  return cut_if_disconnecting(g, base);
}

}  // namespace mapgraph
