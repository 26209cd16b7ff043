#include "mapgraph/cliques.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace mapgraph {

namespace {

std::vector<int> inter(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// min-degree peeling; ties broken by smallest id for determinism
std::vector<int> degeneracy_order(const MarkedGraph& g) {
  std::vector<int> deg(g.n), order;
  std::vector<char> gone(g.n, 0);
  for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  for (int round = 0; round < g.n; ++round) {
    int best = -1;
    for (int v = 0; v < g.n; ++v)
      if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
    gone[best] = 1;
    order.push_back(best);
    for (int w : g.neighbors(best))
      if (!gone[w]) --deg[w];
  }
  return order;
}

struct CliqueSearch {
  const MarkedGraph& g;
  long long budget;
  bool tripped = false;
  std::vector<int> r;
  std::vector<std::vector<int>> out;

  void record() {
    if ((long long)out.size() >= budget) {
      tripped = true;
      return;
    }
    std::vector<int> c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }

  void run(std::vector<int> p, std::vector<int> x) {
    if (tripped) return;
    if (p.empty() && x.empty()) {
      record();
      return;
    }
    int pivot = -1, gain = -1;
    for (const auto* side : {&p, &x})
      for (int q : *side) {
        int hits = (int)inter(p, g.neighbors(q)).size();
        if (hits > gain) gain = hits, pivot = q;
      }
    std::vector<int> tries;
    std::set_difference(p.begin(), p.end(), g.neighbors(pivot).begin(),
                        g.neighbors(pivot).end(), std::back_inserter(tries));
    for (int v : tries) {
      r.push_back(v);
      run(inter(p, g.neighbors(v)), inter(x, g.neighbors(v)));
      r.pop_back();
      if (tripped) return;
      p.erase(std::find(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }
};

}  // namespace

const char* clique_class_name(CliqueClass c) {
  switch (c) {
    case CliqueClass::pizza: return "pizza";
    case CliqueClass::pizza_with_crust: return "pizza-with-crust";
    case CliqueClass::hamantasch: return "hamantasch";
    case CliqueClass::rice_ball: return "rice-ball";
    default: return "unclassified";
  }
}

std::optional<std::vector<std::vector<int>>> enumerate_maximal_cliques(
    const MarkedGraph& g, long long budget) {
  if (budget < 0) budget = 27LL * g.n;
  CliqueSearch search{g, budget};
  std::vector<int> order = degeneracy_order(g);
  std::vector<int> pos(g.n);
  for (int i = 0; i < (int)order.size(); ++i) pos[order[i]] = i;
  for (int v : order) {
    std::vector<int> p, x;
    for (int w : g.neighbors(v)) (pos[w] > pos[v] ? p : x).push_back(w);
    search.r = {v};
    search.run(std::move(p), std::move(x));
    if (search.tripped) return std::nullopt;
  }
  std::sort(search.out.begin(), search.out.end());
  return std::move(search.out);
}

std::vector<std::array<int, 3>> list_triangles(const MarkedGraph& g) {
  std::vector<std::array<int, 3>> out;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      for (int w : inter(g.neighbors(u), g.neighbors(v)))
        if (w > v) out.push_back({u, v, w});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FourCycleTriple> list_4cycle_triples(const MarkedGraph& g) {
  std::vector<FourCycleTriple> out;
  std::set<std::array<int, 4>> covered;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      std::vector<int> common = inter(g.neighbors(u), g.neighbors(v));
      if ((int)common.size() < 2) continue;
      bool fresh = false;
      for (size_t i = 0; i < common.size(); ++i)
        for (size_t j = i + 1; j < common.size(); ++j) {
          int x = common[i], y = common[j];
          std::array<int, 4> key = std::min<std::array<int, 4>>(
              {u, v, x, y}, {x, y, u, v});
          if (covered.insert(key).second) fresh = true;
        }
      if (fresh) out.push_back({u, v, std::move(common)});
    }
  return out;
}

CliqueRecord classify_clique(const std::vector<int>& c, const Witness& h) {
  CliqueRecord rec;
  rec.vertices = c;
  std::sort(rec.vertices.begin(), rec.vertices.end());
  int size = (int)rec.vertices.size();
  if (size == 0) throw std::logic_error("not a clique in the atlas");

  // points each member touches, and how many members each point touches
  std::map<int, std::set<int>> of_member;
  std::map<int, int> touch;
  for (int v : rec.vertices) {
    if (!h.is_nation(v)) throw std::logic_error("not a clique in the atlas");
    for (int p : h.rot.at(v)) of_member[v].insert(p);
    for (int p : of_member[v]) ++touch[p];
  }
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      const auto& a = of_member[rec.vertices[i]];
      const auto& b = of_member[rec.vertices[j]];
      bool share = std::any_of(a.begin(), a.end(),
                               [&](int p) { return b.count(p); });
      if (!share) throw std::logic_error("not a clique in the atlas");
    }

  for (auto [p, t] : touch)
    if (t == size) {
      rec.cls = CliqueClass::pizza;
      rec.anchors = {p};
      return rec;
    }
  for (auto [p, t] : touch)
    if (t == size - 1) {
      rec.cls = CliqueClass::pizza_with_crust;
      rec.anchors = {p};
      for (int v : rec.vertices)
        if (!of_member[v].count(p)) rec.crust = v;
      return rec;
    }

  std::vector<int> cand;
  for (auto [p, t] : touch)
    if (t >= 2 && h.deg(p) >= 3) cand.push_back(p);
  for (size_t i = 0; i < cand.size(); ++i)
    for (size_t j = i + 1; j < cand.size(); ++j)
      for (size_t l = j + 1; l < cand.size(); ++l) {
        bool ok = true;
        for (int v : rec.vertices) {
          int on = (int)of_member[v].count(cand[i]) +
                   (int)of_member[v].count(cand[j]) +
                   (int)of_member[v].count(cand[l]);
          if (on < 2) ok = false;
        }
        if (ok) {
          rec.cls = CliqueClass::hamantasch;
          rec.anchors = {cand[i], cand[j], cand[l]};
          return rec;
        }
      }

  if (size == 4) {
    bool flat = true;
    for (auto [p, t] : touch)
      if (t > 2) flat = false;
    if (flat) {
      rec.cls = CliqueClass::rice_ball;
      for (auto [p, t] : touch)
        if (t == 2) rec.anchors.push_back(p);
      return rec;
    }
  }
  return rec;
}

int k_sharing(const std::vector<int>& c1, const std::vector<int>& c2) {
  std::vector<int> a = c1, b = c2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return (int)inter(a, b).size();
}

}  // namespace mapgraph
