#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapgraph/marked_graph.hpp"
#include "mapgraph/plane_map.hpp"
#include "mapgraph/separators.hpp"
#include "mapgraph/surgery.hpp"
#include "mapgraph/witness.hpp"

namespace mapgraph {

// The pizza cycle <a,b,c,d>: removal deletes the diagonal {a,c} and marks
// the four sides plus {b,d}. Extraction sites guarantee all six pairs are
// edges beforehand.
struct CorrectPizza {
  std::array<int, 4> cycle{-1, -1, -1, -1};
};

// One reduction step: the subinstances to solve (labels point back into the
// parent) plus what the glue needs.
struct Reduction {
  enum class Kind { split2, split3, split4cycle, pizza_removal, mc5_surgery, mc4_surgery };
  Kind kind;
  std::vector<MarkedGraph> subinstances;
  std::vector<int> shared;              // cut pair / clique / cycle, parent ids
  std::vector<CorrectPizza> pizzas;     // removal batches, in removal order
  std::vector<int> inserted;            // nations a surgery deleted, to lift back
  std::string note;
};

// Elementary-step allowance c.N^3; runs that exhaust it reject.
struct StepBudget {
  long long max_steps = 0;
  long long consumed = 0;
  bool charge(long long cost) {
    consumed += cost;
    return consumed <= max_steps;
  }
};

struct RecognizerOptions {
  double budget_c = 8.0;
  bool want_trace = false;
};

struct Verdict {
  bool accepted = false;
  std::optional<AtlasWitness> atlas;
  std::string reject_stage;  // empty on accept
  std::vector<Reduction> trace;
  long long steps = 0;
};

// Decision result of the five-clique step.
struct Mc5Result {
  enum class Kind { none, pizza, reduce, reject };
  Kind kind = Kind::none;
  CorrectPizza pizza{};
  std::vector<int> drop_vertices;
  std::vector<std::pair<int, int>> drop_edges;
  std::vector<std::pair<int, int>> add_edges;
  std::vector<std::pair<int, int>> set_marks;
  std::string detail;
};

// Decision result of the four-clique pizza/crust procedure.
struct Mc4Decision {
  enum class Kind { pizza_only, crust, reject };
  Kind kind = Kind::pizza_only;
  std::vector<CorrectPizza> pizzas;  // the three crust pizzas when kind == crust
  std::string detail;
};

// Full recognition: accepted iff g has an atlas realizing every marked edge
// as a border. Accepts always carry an atlas that re-verifies against g; a
// 3-connected accepted input gets a well-formed atlas.
Verdict recognize(const MarkedGraph& g, const RecognizerOptions& opt = {});

// Exact answer for n <= 8 by exhaustive search.
Verdict exhaustive_small(const MarkedGraph& g);

// Accept iff g is planar with every face a triangle; the dual map is then
// the atlas. Runs after all 4-cliques are gone.
Verdict base_case(const MarkedGraph& g);

// Splits at a 2-cut {u,v}: one subinstance per component of g-{u,v}, each
// with {u,v} marked. Nullopt when {u,v} is not an edge (no atlas exists);
// throws std::logic_error when it is not a cut.
std::optional<Reduction> reduce_2cut(const MarkedGraph& g, std::pair<int, int> uv);

// Chains verified sub-atlases of a 2-cut reduction around the shared pair.
// Throws std::logic_error when a sub-atlas lacks a (u,v) border.
AtlasWitness glue_2cut(const std::vector<AtlasWitness>& subs, const Reduction& r);

// Splits at a separating triangle clique {a,b,c}: the two sides, each with
// the triangle marked. Nullopt when the component count is not two or the
// cut is not a clique (reject); throws when it is not a cut.
std::optional<Reduction> reduce_3cut(const MarkedGraph& g, const std::vector<int>& abc);

AtlasWitness glue_3cut(const std::vector<AtlasWitness>& subs, const Reduction& r);

// Splits at a separating 4-cycle <a,b,c,d>: both sides get the diagonal
// {a,c} added and the five pairs marked. Nullopt when the component count
// is not two.
std::optional<Reduction> reduce_separating_4cycle(const MarkedGraph& g,
                                                  const Separator& sep);

AtlasWitness glue_separating_4cycle(const std::vector<AtlasWitness>& subs,
                                    const Reduction& r);

// Pizza extraction at the separator stages. Nullopt means the structure the
// lemma asserts is absent, which certifies reject.
CorrectPizza pizza_from_separating_edge(const MarkedGraph& g, const Separator& sep);
std::optional<CorrectPizza> pizza_from_triple(const MarkedGraph& g, const Separator& sep);
std::optional<CorrectPizza> pizza_from_quadruple(const MarkedGraph& g,
                                                 const Separator& sep);
std::optional<std::array<CorrectPizza, 2>> pizzas_from_strong_triangle(
    const MarkedGraph& g, const Separator& sep);
std::optional<std::array<CorrectPizza, 2>> pizzas_from_triangle(const MarkedGraph& g,
                                                                const Separator& sep);

// g minus the pizza diagonal {a,c}, with the sides and {b,d} marked. Throws
// std::logic_error when an edge the pizza shape requires is absent, in
// particular when the same pizza is removed twice.
MarkedGraph remove_4pizza(const MarkedGraph& g, const CorrectPizza& p);

// Undoes one pizza removal on an atlas of the reduced graph: contracts the
// (b,d) border between the forced 3-points <a,b,d> and <b,c,d> into the
// 4-point <a,b,c,d>. Throws std::logic_error when no such border exists.
AtlasWitness reinsert_4pizza(const AtlasWitness& a, const CorrectPizza& p);

// The five-clique step: picks the doubly 4-sharing five-clique and runs its
// case analysis. none = no five-clique present.
Mc5Result mc5_step(const MarkedGraph& g, const std::vector<std::vector<int>>& mcliques);

// Rice-ball test for a four-clique C: on success, the six pizzas covering
// the ball, in removal order.
std::optional<std::vector<CorrectPizza>> mc4_riceball_test(
    const MarkedGraph& g, const std::vector<int>& c,
    const std::vector<std::vector<int>>& mcliques);

// Pizza vs pizza-with-crust for a four-clique C.
Mc4Decision mc4_decide(const MarkedGraph& g, const std::vector<int>& c,
                       const std::vector<std::vector<int>>& mcliques);

// When every four-clique is a plain pizza: the cyclic order of each, read
// off the outside witnesses. Nullopt when an order is not unique (reject).
std::optional<std::vector<CorrectPizza>> find_all_pizzas(
    const MarkedGraph& g, const std::vector<std::vector<int>>& mcliques);

}  // namespace mapgraph
