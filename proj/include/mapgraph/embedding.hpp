#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mapgraph/marked_graph.hpp"
#include "mapgraph/witness.hpp"

namespace mapgraph {

// Combinatorial sphere embedding of a simple graph: per-vertex cyclic order
// of neighbors, all in the same rotational sense.
struct RotationSystem {
  std::vector<std::vector<int>> rot;
  int n() const { return (int)rot.size(); }
};

// A face as its cyclic dart sequence; darts[i] = (u, v) is followed by a dart
// leaving v. Length equals the number of sides.
using Face = std::vector<std::pair<int, int>>;

// Sphere embedding if g is planar, nullopt otherwise. Deterministic for a
// fixed input.
std::optional<RotationSystem> test_planarity(const MarkedGraph& g);

// All faces of the embedding by standard dart tracing; every dart lies in
// exactly one face. Throws on malformed rotations (dart missing an endpoint).
std::vector<Face> faces(const RotationSystem& r);

// V - E + F == 2 over the faces the rotation induces (g connected).
bool euler_check(const RotationSystem& r);

// Slow planarity by searching for a K5 or K3,3 subdivision; for cross-checks
// on small graphs only.
bool planar_by_kuratowski(const MarkedGraph& g);

// The recognizer's base case: if g is planar and every face of its embedding
// is a triangle, the planar dual is a map and the corresponding atlas is
// returned (nations = vertices of g by label, one 3-point per face).
// Returns nullopt otherwise.
std::optional<Witness> triangulated_dual(const MarkedGraph& g);

}  // namespace mapgraph
