#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapgraph/marked_graph.hpp"

namespace mapgraph {

// Planar bipartite witness H: nations on one side, points on the other, with
// a rotation system over arbitrary (disjoint) integer ids. Parallel edges are
// permitted; the i-th occurrence of v in rot[u] pairs with the i-th
// occurrence of u in rot[v].
struct Witness {
  std::vector<int> nations;
  std::vector<int> points;
  std::map<int, std::vector<int>> rot;

  bool is_nation(int id) const;
  bool is_point(int id) const;
  int deg(int id) const;
};

// An atlas is a Witness whose embedding is a connected quadrangulation with
// point degrees 2..4; verify_atlas is the gate, the type is the same.
using AtlasWitness = Witness;

// A face of H as its dart cycle, listing the visited ids in order
// (nation, point, nation, point, ...) for quadrangulations.
using WitnessFace = std::vector<int>;

struct WitnessProfile {
  int k = 0;
  bool hole_free = false;
  bool well_formed = false;
  // faces (u,p,v,q) keyed by the nation pair {u,v} sharing the border
  std::map<std::pair<int, int>, std::vector<std::array<int, 4>>> segment_faces;
  // shared points where the pair meets without a shared border: degree-4
  // points with u and v opposite in the rotation
  std::map<std::pair<int, int>, std::vector<int>> point_meets;
};

// Structural validity: ids distinct and bipartite, rotations mutually
// consistent, no isolated points, genus 0 on every component.
bool valid_witness(const Witness& h, std::string* why = nullptr);

// Faces by dart tracing. Throws on rotation inconsistencies.
std::vector<WitnessFace> witness_faces(const Witness& h);

// Graph on the nations: u,v adjacent iff they share a point. Vertex order is
// ascending nation id, kept in the label map.
MarkedGraph half_square(const Witness& h);

// True iff h is valid and half_square(h) matches g's edges (marks ignored).
// Throws if the nation ids and g's labels differ as sets.
bool verify_witness(const Witness& h, const MarkedGraph& g);

// Deletes redundant points (every pair they cover is covered elsewhere) until
// none remain; half-square is unchanged.
Witness reduce_redundant(const Witness& h);

WitnessProfile profile(const Witness& h, const MarkedGraph& g);

// Full atlas gate: verify_witness, connected, every face 4-sided, point
// degrees 2..4, and every marked edge of g backed by a segment-face.
bool verify_atlas(const Witness& h, const MarkedGraph& g, std::string* why = nullptr);

// Drops degree-0/1 points and splits 6-sided faces by inserting a degree-3
// point (the only pair-safe split); half-square unchanged.
Witness normalize_atlas(const Witness& h);

std::string witness_to_json(const Witness& h);
Witness witness_from_json(const std::string& text);
Witness witness_from_json_stream(std::istream& in);

}  // namespace mapgraph
