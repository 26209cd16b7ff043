#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mapgraph {

// Undirected simple graph with dense vertex ids 0..n-1, an optional "marked"
// flag per edge, and a label map back to the caller's original ids.
// Neighbor lists are kept sorted so iteration order is deterministic.
struct MarkedGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::unordered_set<std::uint64_t> marked_;
  std::vector<int> label;  // label[v] = original id of vertex v

  MarkedGraph() = default;
  explicit MarkedGraph(int n_);

  static std::uint64_t ekey(int u, int v);

  int m() const;
  int size() const { return n + m(); }

  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  bool is_marked(int u, int v) const;
  void set_mark(int u, int v, bool on = true);

  int degree(int v) const { return (int)adj[v].size(); }
  const std::vector<int>& neighbors(int v) const { return adj[v]; }

  // Edges as (u,v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<std::pair<int, int>> marked_edges() const;

  bool same_graph(const MarkedGraph& o) const;  // ignores labels
};

// Connected components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const MarkedGraph& g);
bool is_connected(const MarkedGraph& g);

// Induced subgraph on `keep` (any order, deduplicated); labels are composed
// so the result still refers to the original input ids.
MarkedGraph induced_subgraph(const MarkedGraph& g, std::vector<int> keep);

// G - drop_vertices - drop_edges, as a fresh dense instance.
MarkedGraph remove(const MarkedGraph& g, const std::vector<int>& drop_vertices,
                   const std::vector<std::pair<int, int>>& drop_edges);

// Edge-list format: first line "n m", then one "u v" or "u v *" line per edge
// (the star marks the edge), '#' starts a comment. Vertex ids in the file are
// arbitrary non-negative ints; they are densified and kept in `label`.
MarkedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const MarkedGraph& g);
MarkedGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                             const std::vector<std::pair<int, int>>& marks = {});

// Convenience builders used all over the tests.
MarkedGraph complete_graph(int n);
MarkedGraph cycle_graph(int n);
MarkedGraph path_graph(int n);

}  // namespace mapgraph
