#include "mapgraph/separators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mapgraph/cliques.hpp"

namespace mapgraph {

namespace {

using EdgeSet = std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>;

std::pair<int, int> norm(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

const std::vector<std::pair<int, int>>& lookup(const EdgeSet& idx, int a, int b) {
  static const std::vector<std::pair<int, int>> none;
  auto it = idx.find(norm(a, b));
  return it == idx.end() ? none : it->second;
}

// components of g minus the given vertices and edges, in g's own ids;
// empty deletions leave the graph alone, a one-piece result means no split
std::vector<std::vector<int>> split_components(
    const MarkedGraph& g, const std::vector<int>& drop_vertices,
    const std::vector<std::pair<int, int>>& drop_edges) {
  MarkedGraph self = g;
  std::iota(self.label.begin(), self.label.end(), 0);
  MarkedGraph rest = remove(self, drop_vertices, drop_edges);
  auto comps = connected_components(rest);
  for (auto& comp : comps)
    for (int& v : comp) v = rest.label[v];
  return comps;
}

struct Finder {
  const MarkedGraph& g;
  EdgeSet idx;

  explicit Finder(const MarkedGraph& g_) : g(g_) {
    auto mcs = enumerate_maximal_cliques(g, 1LL << 40);
    idx = crossable_index(g, *mcs);
  }

  std::optional<Separator> hit(SeparatorKind kind, std::vector<int> verts,
                               const std::vector<int>& drop_vertices,
                               const std::vector<std::pair<int, int>>& drop_edges,
                               bool need_singleton = false) const {
    auto comps = split_components(g, drop_vertices, drop_edges);
    if (comps.size() < 2) return std::nullopt;
    if (need_singleton &&
        std::none_of(comps.begin(), comps.end(),
                     [](const auto& c) { return c.size() == 1; }))
      return std::nullopt;
    return Separator{kind, std::move(verts), std::move(comps)};
  }

  // induced 4-cycles in cycle order <u,x,v,y>, lexicographically by that list
  std::vector<std::array<int, 4>> induced_4cycles() const {
    std::set<std::array<int, 4>> seen;
    std::vector<std::array<int, 4>> out;
    for (const auto& row : list_4cycle_triples(g)) {
      if (g.has_edge(row.u, row.v)) continue;
      for (size_t i = 0; i < row.common.size(); ++i)
        for (size_t j = i + 1; j < row.common.size(); ++j) {
          int x = row.common[i], y = row.common[j];
          if (g.has_edge(x, y)) continue;
          std::array<int, 4> key{row.u, row.v, x, y};
          std::sort(key.begin(), key.end());
          if (seen.insert(key).second) out.push_back({row.u, x, row.v, y});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace

const char* separator_kind_name(SeparatorKind k) {
  switch (k) {
    case SeparatorKind::edge: return "separating-edge";
    case SeparatorKind::four_cycle: return "separating-4-cycle";
    case SeparatorKind::triple: return "separating-triple";
    case SeparatorKind::quadruple: return "separating-quadruple";
    case SeparatorKind::triangle: return "separating-triangle";
    default: return "strongly-separating-triangle";
  }
}

EdgeSet crossable_index(const MarkedGraph& g,
                        const std::vector<std::vector<int>>& maximal_cliques) {
  EdgeSet idx;
  for (const auto& c : maximal_cliques) {
    if (c.size() != 4) continue;
    for (int i = 0; i < 3; ++i) {
      static const int split[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
      auto one = norm(c[split[i][0]], c[split[i][1]]);
      auto two = norm(c[split[i][2]], c[split[i][3]]);
      if (g.is_marked(one.first, one.second) ||
          g.is_marked(two.first, two.second))
        continue;
      idx[one].push_back(two);
      idx[two].push_back(one);
    }
  }
  for (auto& [edge, members] : idx) std::sort(members.begin(), members.end());
  return idx;
}

CrossableSet crossable_edges(const MarkedGraph& g, int a, int b) {
  auto mcs = enumerate_maximal_cliques(g, 1LL << 40);
  auto idx = crossable_index(g, *mcs);
  CrossableSet out;
  out.base = {std::min(a, b), std::max(a, b)};
  out.members = lookup(idx, a, b);
  return out;
}

std::optional<Separator> find_separating_edge(const MarkedGraph& g) {
  Finder f(g);
  for (auto [a, b] : g.edges())
    if (auto s = f.hit(SeparatorKind::edge, {a, b}, {a, b}, lookup(f.idx, a, b)))
      return s;
  return std::nullopt;
}

std::optional<Separator> find_separating_4cycle(const MarkedGraph& g) {
  Finder f(g);
  for (const auto& c : f.induced_4cycles())
    if (auto s = f.hit(SeparatorKind::four_cycle, {c[0], c[1], c[2], c[3]},
                       {c[0], c[1], c[2], c[3]}, {}))
      return s;
  return std::nullopt;
}

std::optional<Separator> find_separating_triple(const MarkedGraph& g) {
  Finder f(g);
  for (const auto& t : list_triangles(g)) {
    int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& p : perm) {
      int a = t[p[0]], b = t[p[1]], c = t[p[2]];
      if (auto s = f.hit(SeparatorKind::triple, {a, b, c}, {a, b, c},
                         lookup(f.idx, a, b)))
        return s;
    }
  }
  return std::nullopt;
}

std::optional<Separator> find_separating_quadruple(const MarkedGraph& g) {
  Finder f(g);
  for (const auto& c : f.induced_4cycles()) {
    // each listing starts with one of the four cycle edges
    int turn[8][4] = {{0, 1, 2, 3}, {0, 3, 2, 1}, {1, 2, 3, 0}, {1, 0, 3, 2},
                      {2, 3, 0, 1}, {2, 1, 0, 3}, {3, 0, 1, 2}, {3, 2, 1, 0}};
    std::vector<std::array<int, 4>> lists;
    for (auto& p : turn)
      lists.push_back({c[p[0]], c[p[1]], c[p[2]], c[p[3]]});
    std::sort(lists.begin(), lists.end());
    for (auto& q : lists)
      if (auto s = f.hit(SeparatorKind::quadruple, {q[0], q[1], q[2], q[3]},
                         {q[0], q[1], q[2], q[3]}, lookup(f.idx, q[0], q[1])))
        return s;
  }
  return std::nullopt;
}

std::optional<Separator> find_separating_triangle(const MarkedGraph& g,
                                                  bool strong_only) {
  Finder f(g);
  for (const auto& t : list_triangles(g)) {
    int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& p : perm) {
      int a = t[p[0]], b = t[p[1]], c = t[p[2]];
      std::vector<std::pair<int, int>> both = lookup(f.idx, a, b);
      for (auto e : lookup(f.idx, a, c)) both.push_back(e);
      auto kind = strong_only ? SeparatorKind::strong_triangle
                              : SeparatorKind::triangle;
      if (auto s = f.hit(kind, {a, b, c}, {a, b, c}, both, strong_only))
        return s;
    }
  }
  return std::nullopt;
}

}  // namespace mapgraph
