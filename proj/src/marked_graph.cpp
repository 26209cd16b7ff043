#include "mapgraph/marked_graph.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mapgraph {

MarkedGraph::MarkedGraph(int n_) : n(n_), adj(n_), label(n_) {
  for (int v = 0; v < n; ++v) label[v] = v;
}

std::uint64_t MarkedGraph::ekey(int u, int v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t)u << 32 | (std::uint32_t)v;
}

int MarkedGraph::m() const {
  std::size_t d = 0;
  for (const auto& a : adj) d += a.size();
  return (int)(d / 2);
}

bool MarkedGraph::has_edge(int u, int v) const {
  if (u == v) return false;
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

void MarkedGraph::add_edge(int u, int v) {
  assert(u != v && u >= 0 && v >= 0 && u < n && v < n);
  if (has_edge(u, v)) return;
  adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
  adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
}

void MarkedGraph::remove_edge(int u, int v) {
  auto drop = [](std::vector<int>& a, int x) {
    auto it = std::lower_bound(a.begin(), a.end(), x);
    if (it != a.end() && *it == x) a.erase(it);
  };
  drop(adj[u], v);
  drop(adj[v], u);
  marked_.erase(ekey(u, v));
}

bool MarkedGraph::is_marked(int u, int v) const {
  return marked_.count(ekey(u, v)) > 0;
}

void MarkedGraph::set_mark(int u, int v, bool on) {
  assert(has_edge(u, v));
  if (on)
    marked_.insert(ekey(u, v));
  else
    marked_.erase(ekey(u, v));
}

std::vector<std::pair<int, int>> MarkedGraph::edges() const {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n; ++u)
    for (int v : adj[u])
      if (u < v) es.push_back({u, v});
  return es;
}

std::vector<std::pair<int, int>> MarkedGraph::marked_edges() const {
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : edges())
    if (is_marked(u, v)) es.push_back({u, v});
  return es;
}

bool MarkedGraph::same_graph(const MarkedGraph& o) const {
  return n == o.n && adj == o.adj && marked_ == o.marked_;
}

std::vector<std::vector<int>> connected_components(const MarkedGraph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.n, 0);
  for (int s = 0; s < g.n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : g.adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected(const MarkedGraph& g) {
  return g.n == 0 || connected_components(g).size() == 1;
}

MarkedGraph induced_subgraph(const MarkedGraph& g, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> pos(g.n, -1);
  for (int i = 0; i < (int)keep.size(); ++i) pos[keep[i]] = i;
  MarkedGraph h((int)keep.size());
  for (int i = 0; i < (int)keep.size(); ++i) h.label[i] = g.label[keep[i]];
  for (int i = 0; i < (int)keep.size(); ++i)
    for (int w : g.adj[keep[i]])
      if (pos[w] > i) {
        h.add_edge(i, pos[w]);
        if (g.is_marked(keep[i], w)) h.set_mark(i, pos[w]);
      }
  return h;
}

MarkedGraph remove(const MarkedGraph& g, const std::vector<int>& drop_vertices,
                   const std::vector<std::pair<int, int>>& drop_edges) {
  std::vector<char> dropped(g.n, 0);
  for (int v : drop_vertices) dropped[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < g.n; ++v)
    if (!dropped[v]) keep.push_back(v);
  MarkedGraph h = induced_subgraph(g, keep);
  // keep[] is sorted, so position lookup works on the result
  std::vector<int> pos(g.n, -1);
  for (int i = 0; i < (int)keep.size(); ++i) pos[keep[i]] = i;
  for (auto [u, v] : drop_edges)
    if (!dropped[u] && !dropped[v]) h.remove_edge(pos[u], pos[v]);
  return h;
}

MarkedGraph read_edge_list(std::istream& in) {
  auto next_line = [&in](std::string& line) {
    while (std::getline(in, line)) {
      auto h = line.find('#');
      if (h != std::string::npos) line.erase(h);
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok) return true;
    }
    return false;
  };
  std::string line;
  if (!next_line(line)) throw std::runtime_error("edge list: missing header");
  long long n, m;
  {
    std::istringstream hd(line);
    if (!(hd >> n >> m) || n < 0 || m < 0)
      throw std::runtime_error("edge list: bad header '" + line + "'");
  }
  std::vector<std::pair<long long, long long>> raw;
  std::vector<bool> starred;
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) throw std::runtime_error("edge list: fewer edges than header says");
    std::istringstream ls(line);
    long long u, v;
    std::string star;
    if (!(ls >> u >> v) || u < 0 || v < 0)
      throw std::runtime_error("edge list: bad edge line '" + line + "'");
    bool mk = false;
    if (ls >> star) {
      if (star != "*") throw std::runtime_error("edge list: bad trailer '" + star + "'");
      mk = true;
    }
    if (u == v) throw std::runtime_error("edge list: self loop");
    raw.push_back({u, v});
    starred.push_back(mk);
  }
  // densify labels: sorted distinct ids that appear, padded with fresh ids if
  // the header promises more vertices than the edges mention
  std::map<long long, int> id;
  for (auto [u, v] : raw) {
    id.emplace(u, 0);
    id.emplace(v, 0);
  }
  if ((long long)id.size() > n)
    throw std::runtime_error("edge list: more vertices used than declared");
  int next = 0;
  for (auto& [orig, dense] : id) dense = next++;
  MarkedGraph g((int)n);
  for (auto& [orig, dense] : id) g.label[dense] = (int)orig;
  // isolated vertices get labels after the used ids
  long long fresh = id.empty() ? 0 : id.rbegin()->first + 1;
  for (int v = next; v < g.n; ++v) g.label[v] = (int)fresh++;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    int u = id[raw[i].first], v = id[raw[i].second];
    if (g.has_edge(u, v)) throw std::runtime_error("edge list: duplicate edge");
    g.add_edge(u, v);
    if (starred[i]) g.set_mark(u, v);
  }
  return g;
}

void write_edge_list(std::ostream& out, const MarkedGraph& g) {
  out << g.n << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) {
    out << g.label[u] << ' ' << g.label[v];
    if (g.is_marked(u, v)) out << " *";
    out << '\n';
  }
}

MarkedGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                             const std::vector<std::pair<int, int>>& marks) {
  MarkedGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  for (auto [u, v] : marks) g.set_mark(u, v);
  return g;
}

MarkedGraph complete_graph(int n) {
  MarkedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

MarkedGraph cycle_graph(int n) {
  MarkedGraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

MarkedGraph path_graph(int n) {
  MarkedGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

}  // namespace mapgraph
