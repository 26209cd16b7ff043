#pragma once

#include <optional>
#include <vector>

#include "mapgraph/marked_graph.hpp"

namespace mapgraph {

struct Cut {
  std::vector<int> vertices;                 // sorted, size 1..3
  std::vector<std::vector<int>> components;  // components of G - vertices
};

// Smallest-id k-cut of a connected graph, or nullopt if (k+1)-connected in the
// vertex sense. k=1,2 scan in strict lexicographic order; k=3 scans pairs plus
// a max-flow fallback on large inputs (see find_cut in cuts.cpp).
std::optional<Cut> find_cut(const MarkedGraph& g, int k);

// Definitional version: tries every C(n,k) subset in lexicographic order.
std::optional<Cut> find_cut_brute(const MarkedGraph& g, int k);

// Connected, n >= 2, and no articulation vertex. K2 counts as 2-connected.
bool is_2connected(const MarkedGraph& g);

std::vector<int> articulation_points(const MarkedGraph& g);

// Some vertex cut of size <= k (not necessarily lexicographically first),
// via unit-capacity vertex flows. Used where only existence matters.
std::optional<std::vector<int>> vertex_cut_atmost(const MarkedGraph& g, int k);

}  // namespace mapgraph
