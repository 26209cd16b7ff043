#pragma once

#include <random>
#include <utility>

#include "mapgraph/marked_graph.hpp"
#include "mapgraph/witness.hpp"

namespace mapgraph {

// Knobs for random atlas growth. Each growth step adds one nation, either as
// a lens on an existing border or by subdividing a border whose two endpoints
// are 3-points (face_split chooses the latter). After each growth step,
// point_split is the chance of one local reshuffle: merging two 3-points into
// a 4-point or splitting a 4-point along a new border. marks is the chance of
// marking each border-realized adjacency of the result.
struct GenConfig {
  int n = 10;
  unsigned seed = 1;
  double face_split = 0.4;
  double point_split = 0.4;
  double marks = 0.0;
};

// Grows a random atlas from the two-hemisphere seed and returns its graph
// (with sampled marks) together with the witness. Every intermediate map is
// re-validated; cfg.n must be at least 2.
std::pair<MarkedGraph, Witness> gen_random_atlas(const GenConfig& cfg);

// One random edit: delete an edge, add a non-edge, or toggle a mark.
MarkedGraph mutate(const MarkedGraph& g, std::mt19937& rng);
MarkedGraph mutate(const MarkedGraph& g, unsigned seed);

}  // namespace mapgraph
