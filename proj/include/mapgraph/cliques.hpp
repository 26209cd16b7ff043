#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mapgraph/marked_graph.hpp"
#include "mapgraph/witness.hpp"

namespace mapgraph {

enum class CliqueClass {
  pizza,            // one point touches every member
  pizza_with_crust, // one point touches all but one member (the crust)
  hamantasch,       // three points, every member on at least two of them
  rice_ball,        // four members, every shared point touches exactly two
  unclassified,
};

const char* clique_class_name(CliqueClass c);

// A maximal clique plus the layout it realizes in a particular atlas.
// anchors are the supporting point ids: one for (crustless or crusted)
// pizzas, three for a hamantasch, all shared points for a rice-ball.
struct CliqueRecord {
  std::vector<int> vertices;
  CliqueClass cls = CliqueClass::unclassified;
  std::vector<int> anchors;
  int crust = -1;
};

// All maximal cliques, each sorted ascending and the list sorted
// lexicographically, unless there are more than budget of them; nullopt
// reports the budget tripped. budget < 0 means the default 27n.
std::optional<std::vector<std::vector<int>>> enumerate_maximal_cliques(
    const MarkedGraph& g, long long budget = -1);

// All triangles, each once, lexicographic.
std::vector<std::array<int, 3>> list_triangles(const MarkedGraph& g);

// One row per diagonal pair that covers a 4-cycle no earlier row covers:
// common holds every shared neighbor of {u,v}, so each 4-cycle <u,x,v,y>
// of g appears in some row with x,y in common. Induced-cycle consumers
// additionally filter rows by nonadjacency of u,v (and of x,y).
struct FourCycleTriple {
  int u = -1;
  int v = -1;
  std::vector<int> common;
};

std::vector<FourCycleTriple> list_4cycle_triples(const MarkedGraph& g);

// The layout c (given as nation ids, pairwise adjacent in half_square(h))
// realizes in h, tested pizza first, then crust, hamantasch, rice-ball.
// Throws std::logic_error if c is not a clique there.
CliqueRecord classify_clique(const std::vector<int>& c, const Witness& h);

int k_sharing(const std::vector<int>& c1, const std::vector<int>& c2);

}  // namespace mapgraph
