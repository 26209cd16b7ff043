#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapgraph/marked_graph.hpp"
#include "mapgraph/plane_map.hpp"

namespace mapgraph {

// Local rewrites on plane maps. Every function here keeps nation ids fixed
// and works on maps whose id space matches a target graph, so results can be
// checked against it directly. Edge ids are renumbered freely.

// closure(k) == g, k valid, and every marked pair of g backed by at least
// one border. The correctness check run between reconstruction steps.
bool map_matches(const PlaneMap& k, const MarkedGraph& g, std::string* why = nullptr);

// Splits redundant 4-points by a border across their other diagonal until
// every adjacent pair is realized exactly once. The closure never changes.
// False when some pair holds two parallel borders, which no split can
// repair; only graphs with a 2-cut produce that shape.
bool well_form(PlaneMap& k);

// Deletes a border {x,y} whose two faces are triangles, one holding u and
// the other v, merging them into the 4-point <x,u,y,v>. This is the one
// move that adds the weak pair {u,v} without touching anything else.
// Candidates go in edge order; a marked pair never loses its last border.
bool create_point(PlaneMap& k, const MarkedGraph& target, int u, int v);

// create_point pinned to a pizza: the border {p1,p3} between the 3-points
// {p0,p1,p3} and {p1,p2,p3} becomes the 4-point <p0,p1,p2,p3>, restoring
// the weak pair {p0,p2}.
bool contract_to_point(PlaneMap& k, const MarkedGraph& target, int p0, int p1, int p2,
                       int p3);

// Re-inserts the nations of `missing` into k (their rotations must be empty
// and their ids below target.n) so that closure(k) == target with marks
// backed. Each nation is carved out of some base nation as a strip along a
// run of the base's borders; leftover weak pairs are realized afterwards by
// create_point. All placements are enumerated and the first fully checked
// one wins. fuel, when given, bounds the number of candidate placements
// tried across the whole call; nullopt on exhaustion or no placement.
std::optional<PlaneMap> lift_atlas(const PlaneMap& k, const MarkedGraph& target,
                                   const std::vector<int>& missing,
                                   long long* fuel = nullptr);

// Connected sum: both maps contain a face on exactly the nations of
// `cycle`; the faces are removed and the border pairs along matching sides
// fused. The maps must agree on ids and share only the cycle nations.
// Nullopt when either side lacks the face.
std::optional<PlaneMap> glue_at_face(const PlaneMap& k1, const PlaneMap& k2,
                                     const std::vector<int>& cycle);

// Radial chaining for a marked pair {u,v}: every part is cut open along one
// of its u-v borders and the sectors are laid around the sphere, fusing
// neighboring border copies into shared seams. Parts must pairwise share
// only u and v. Requires at least two parts, each holding a u-v border.
std::optional<PlaneMap> chain_at_pair(const std::vector<PlaneMap>& parts, int u, int v);

}  // namespace mapgraph
