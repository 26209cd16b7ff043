#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mapgraph/marked_graph.hpp"
#include "mapgraph/plane_map.hpp"
#include "mapgraph/witness.hpp"

namespace mapgraph {

// Caps for exhaustive atlas generation. max_points defaults to 3n-6 (the
// witness point bound); point degree is capped at 4 everywhere.
struct EnumerationBounds {
  int max_nations = 8;
  int max_points = -1;
  int max_point_degree = 4;
};

// Exhaustive search over atlases on n labeled nations, deduplicated by
// canonical code (points unlabeled). The callback may return false to stop.
// Throws std::out_of_range beyond max_nations.
void enumerate_atlases(int n, const EnumerationBounds& bounds,
                       const std::function<bool(const Witness&)>& emit);
std::vector<Witness> enumerate_atlases(int n, const EnumerationBounds& bounds = {});

// Decides small instances by exhaustive atlas search: returns an atlas whose
// closure is exactly g with every marked edge border-realized, or nullopt.
// Throws std::out_of_range for more than 8 vertices. Results are memoized.
std::optional<Witness> oracle_recognize(const MarkedGraph& g);

// Same decision returned as the plane map itself (nation ids = g's dense
// ids), which is the form reductions splice on. Shares the memo table.
std::optional<PlaneMap> oracle_recognize_map(const MarkedGraph& g);

// Labeled-map canonical form of a witness: equal iff the witnesses differ
// only by renaming points (nation labels and rotations preserved).
std::string witness_canonical_code(const Witness& h);

}  // namespace mapgraph
