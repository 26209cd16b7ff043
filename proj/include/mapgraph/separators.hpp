#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mapgraph/marked_graph.hpp"

namespace mapgraph {

// The edges crossable with a base edge: both unmarked and together a
// maximal 4-clique. Empty whenever the base edge is marked.
struct CrossableSet {
  std::array<int, 2> base{-1, -1};
  std::vector<std::pair<int, int>> members;
};

enum class SeparatorKind {
  edge,
  four_cycle,
  triple,
  quadruple,
  triangle,
  strong_triangle,
};

const char* separator_kind_name(SeparatorKind k);

// vertices is the defining ordered list (cycle order for four_cycle and
// quadruple); witness_components partitions what is left after the
// defining deletion, in the input graph's own vertex ids.
struct Separator {
  SeparatorKind kind = SeparatorKind::edge;
  std::vector<int> vertices;
  std::vector<std::vector<int>> witness_components;
};

// Every crossable set at once, keyed by edge (u < v), built from a full
// maximal-clique list. Edges with an empty set are omitted.
std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>
crossable_index(const MarkedGraph& g,
                const std::vector<std::vector<int>>& maximal_cliques);

CrossableSet crossable_edges(const MarkedGraph& g, int a, int b);

// The five finders of the reduction pipeline, each deterministic
// first-found in lexicographic candidate order, nullopt when absent.
std::optional<Separator> find_separating_edge(const MarkedGraph& g);
std::optional<Separator> find_separating_4cycle(const MarkedGraph& g);
std::optional<Separator> find_separating_triple(const MarkedGraph& g);
std::optional<Separator> find_separating_quadruple(const MarkedGraph& g);
std::optional<Separator> find_separating_triangle(const MarkedGraph& g,
                                                  bool strong_only);

}  // namespace mapgraph
