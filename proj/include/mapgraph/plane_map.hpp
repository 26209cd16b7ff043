#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapgraph/embedding.hpp"
#include "mapgraph/marked_graph.hpp"
#include "mapgraph/witness.hpp"

namespace mapgraph {

// A map as a plane multigraph on the nations: vertices = nations, edges =
// border segments, faces = meeting points (face length = point degree).
// Normalized atlases have every face a vertex-simple cycle of length 3 or 4;
// the single-edge map on two nations (one face of length 2) is the n=2
// special case. Edge ids are stable; deleted ids keep a {-1,-1} tombstone.
struct PlaneMap {
  int n = 0;
  std::vector<std::array<int, 2>> ends;
  std::vector<std::vector<int>> rot;

  static PlaneMap single_edge();  // the two-hemisphere map

  int add_vertex();
  int new_edge(int u, int v);  // allocates the id only; caller places it in rot
  void kill_edge(int e);
  bool live(int e) const { return e >= 0 && e < (int)ends.size() && ends[e][0] >= 0; }
  int other(int e, int v) const { return ends[e][0] == v ? ends[e][1] : ends[e][0]; }
  int m() const;
  int deg(int v) const { return (int)rot[v].size(); }
  int pos_in_rot(int v, int e) const;
  bool has_edge(int u, int v) const;
  std::vector<int> edge_copies(int u, int v) const;
};

// A face as its dart walk: (vertex, edge leaving it along the walk).
using MapFace = std::vector<std::pair<int, int>>;

std::vector<MapFace> map_faces(const PlaneMap& k);

// Full atlas-shape validation as described on PlaneMap.
bool valid_plane_map(const PlaneMap& k, std::string* why = nullptr);

// The graph of the map: every pair of nations sharing a face is adjacent
// (consecutive pairs share a border, 4-face diagonals share the point).
MarkedGraph map_closure(const PlaneMap& k);

// The atlas witness of the map: one point per face, incidences from the
// radial construction. Nation ids come from `label` (vertex v -> label[v]);
// point ids follow after the largest label.
Witness map_to_witness(const PlaneMap& k, const std::vector<int>& label);

// Canonical string for a labeled plane map; equal iff the maps have the same
// rotation structure (dart-rooted traversal minimum).
std::string map_canonical_code(const PlaneMap& k);

// View a simple embedded graph as a plane map (edge ids in g.edges() order).
PlaneMap map_from_rotation(const MarkedGraph& g, const RotationSystem& r);

// Inverse of map_to_witness: rebuild the plane map of a quadrangulation
// witness. nation_ids[v] gives the witness id of map nation v. Nullopt when
// some face is not a 4-walk alternating nation/point.
std::optional<PlaneMap> map_from_witness(const Witness& h,
                                         const std::vector<int>& nation_ids);

}  // namespace mapgraph
