#include "mapgraph/recognizer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mapgraph/cliques.hpp"
#include "mapgraph/cuts.hpp"
#include "mapgraph/embedding.hpp"
#include "mapgraph/oracle.hpp"

namespace mapgraph {

namespace {

std::pair<int, int> pr(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// Widens a dense piece map into a larger id space; ids[v] is the wide slot
// of piece nation v. Edge ids and tombstones carry over unchanged.
PlaneMap widen(const PlaneMap& k, const std::vector<int>& ids, int width) {
  PlaneMap out;
  out.n = width;
  out.rot.assign(width, {});
  out.ends.reserve(k.ends.size());
  for (const auto& e : k.ends) {
    if (e[0] < 0)
      out.ends.push_back({-1, -1});
    else
      out.ends.push_back({ids[e[0]], ids[e[1]]});
  }
  for (int v = 0; v < k.n; ++v)
    if (!k.rot[v].empty()) out.rot[ids[v]] = k.rot[v];
  return out;
}

// Drops empty nation slots; second return lists the wide id of each kept
// nation, ascending.
std::pair<PlaneMap, std::vector<int>> shrink(const PlaneMap& k) {
  std::vector<int> keep;
  for (int v = 0; v < k.n; ++v)
    if (!k.rot[v].empty()) keep.push_back(v);
  std::vector<int> pos(k.n, -1);
  for (int i = 0; i < (int)keep.size(); ++i) pos[keep[i]] = i;
  PlaneMap out;
  out.n = (int)keep.size();
  out.rot.resize(out.n);
  for (int i = 0; i < out.n; ++i) out.rot[i] = k.rot[keep[i]];
  out.ends.reserve(k.ends.size());
  for (const auto& e : k.ends) {
    if (e[0] < 0)
      out.ends.push_back({-1, -1});
    else
      out.ends.push_back({pos[e[0]], pos[e[1]]});
  }
  return {out, keep};
}

// The plane map of an atlas over its own sorted nation ids.
std::pair<PlaneMap, std::vector<int>> dense_map(const AtlasWitness& h) {
  std::vector<int> ids = h.nations;
  std::sort(ids.begin(), ids.end());
  auto k = map_from_witness(h, ids);
  if (!k) throw std::logic_error("atlas is not a quadrangulation");
  return {*k, ids};
}

MarkedGraph no_marks(const MarkedGraph& g) {
  MarkedGraph out(g.n);
  out.label = g.label;
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  return out;
}

int rank_of(const std::vector<int>& sorted_ids, int id) {
  auto it = std::lower_bound(sorted_ids.begin(), sorted_ids.end(), id);
  if (it == sorted_ids.end() || *it != id)
    throw std::logic_error("id missing from the shared list");
  return (int)(it - sorted_ids.begin());
}

// Components of g minus some vertices and edges, in g's own dense ids.
std::vector<std::vector<int>> comps_after(
    const MarkedGraph& g, const std::vector<int>& drop_vertices,
    const std::vector<std::pair<int, int>>& drop_edges) {
  MarkedGraph self = g;
  for (int v = 0; v < self.n; ++v) self.label[v] = v;
  MarkedGraph rest = remove(self, drop_vertices, drop_edges);
  auto comps = connected_components(rest);
  for (auto& comp : comps)
    for (int& v : comp) v = rest.label[v];
  return comps;
}

bool nbhd_inside(const MarkedGraph& g, int v, const std::set<int>& u) {
  for (int w : g.neighbors(v))
    if (!u.count(w)) return false;
  return true;
}

bool three_connected(const MarkedGraph& g) {
  if (!is_connected(g)) return false;
  if (find_cut(g, 1)) return false;
  return !find_cut(g, 2).has_value();
}

// Small-instance atlas that admits well-forming, found by rescanning the
// enumeration when the memoized first hit does not. Memoized separately.
std::string small_key(const MarkedGraph& g) {
  std::ostringstream os;
  os << g.n;
  for (auto [u, v] : g.edges())
    os << ' ' << u << '-' << v << (g.is_marked(u, v) ? '!' : '.');
  return os.str();
}

std::optional<PlaneMap> wf_small_map(const MarkedGraph& g) {
  static std::map<std::string, std::optional<PlaneMap>> cache;
  auto key = small_key(g);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::optional<PlaneMap> found;
  enumerate_atlases(g.n, {}, [&](const Witness& h) {
    std::vector<int> ids(g.n);
    for (int i = 0; i < g.n; ++i) ids[i] = i;
    auto k = map_from_witness(h, ids);
    if (!k) return true;
    if (!map_matches(*k, g)) return true;
    PlaneMap w = *k;
    if (!well_form(w)) return true;
    found = w;
    return false;
  });
  cache[key] = found;
  return found;
}

// Reject reasons a pizza removal site must rule out first.
const char* pizza_block(const MarkedGraph& g, const CorrectPizza& p) {
  auto [a, b, c, d] = p.cycle;
  int side[6][2] = {{a, b}, {b, c}, {c, d}, {d, a}, {a, c}, {b, d}};
  for (auto& s : side)
    if (!g.has_edge(s[0], s[1])) return "pizza pair not an edge";
  if (g.is_marked(a, c) || g.is_marked(b, d)) return "pizza diagonal marked";
  return nullptr;
}

CorrectPizza center_pizza(int b, int d, const std::vector<int>& trio, int crust) {
  std::vector<int> xy;
  for (int t : trio)
    if (t != crust) xy.push_back(t);
  std::sort(xy.begin(), xy.end());
  return {{b, xy[0], d, xy[1]}};
}

// ---- the five-clique case analysis ----

Mc5Result mc5_case3(const MarkedGraph& g, const std::set<int>& u_set, int a, int c,
                    int e, int b, int d, int f, int g2,
                    const std::vector<std::vector<int>>& mcliques,
                    const std::vector<int>& trio) {
  auto reject = [&](const std::string& why) {
    return Mc5Result{Mc5Result::Kind::reject, {}, {}, {}, {}, {}, why};
  };
  auto crust = [&](int w) {
    return Mc5Result{Mc5Result::Kind::pizza, center_pizza(b, d, trio, w),
                     {},         {},         {},     {},  "center"};
  };
  std::vector<int> dside, bside;
  for (int v = 0; v < g.n; ++v) {
    if (u_set.count(v)) continue;
    bool rim = g.has_edge(v, a) || g.has_edge(v, e);
    if (!rim) continue;
    if (g.has_edge(v, d)) dside.push_back(v);
    if (g.has_edge(v, b)) bside.push_back(v);
  }
  if (dside.empty()) {
    Mc5Result r{Mc5Result::Kind::reduce, {}, {}, {}, {}, {}, "cut tip border"};
    r.drop_edges = {pr(c, f)};
    r.set_marks = {pr(b, c), pr(c, d), pr(a, d), pr(e, d),
                   pr(a, f), pr(e, f), pr(d, f)};
    return r;
  }
  if (bside.empty()) {
    Mc5Result r{Mc5Result::Kind::reduce, {}, {}, {}, {}, {}, "cut tip border"};
    r.drop_edges = {pr(c, g2)};
    r.set_marks = {pr(c, d), pr(b, c), pr(a, b), pr(e, b),
                   pr(a, g2), pr(e, g2), pr(b, g2)};
    return r;
  }
  int h = dside[0], i = bside[0];
  if (h == i) return reject("one nation flanks both tips");
  int ha = g.has_edge(h, a), he = g.has_edge(h, e);
  if (ha + he == 1) return crust(ha ? e : a);
  int ia = g.has_edge(i, a), ie = g.has_edge(i, e);
  if (ia + ie == 1) return crust(ia ? e : a);
  std::vector<int> q1{a, d, e, f, h}, q2{a, b, e, g2, i};
  std::sort(q1.begin(), q1.end());
  std::sort(q2.begin(), q2.end());
  if (!std::binary_search(mcliques.begin(), mcliques.end(), q1) ||
      !std::binary_search(mcliques.begin(), mcliques.end(), q2))
    return reject("flank cliques absent");
  if (g.has_edge(g2, h)) return reject("flank touches far tip");
  if (g.has_edge(f, i)) return reject("flank touches far tip");
  std::set<int> uh = u_set;
  uh.insert(h);
  if (g.is_marked(d, h) || !nbhd_inside(g, d, uh)) {
    std::vector<int> others;
    for (int v = 0; v < g.n; ++v) {
      if (uh.count(v)) continue;
      if (!g.has_edge(v, d)) continue;
      if (g.has_edge(v, a) || g.has_edge(v, e)) others.push_back(v);
    }
    if (!others.empty()) {
      int o = others[0];
      int oa = g.has_edge(o, a), oe = g.has_edge(o, e);
      if (oa + oe != 1) return reject("outer flank on both rims");
      return crust(oa ? e : a);
    }
    if (g.is_marked(a, f)) return crust(a);
    if (g.is_marked(e, f)) return crust(e);
    if (g.is_marked(a, h)) return crust(e);
    if (g.is_marked(e, h)) return crust(a);
    Mc5Result r{Mc5Result::Kind::reduce, {}, {}, {}, {}, {}, "cut tip flank border"};
    r.drop_edges = {pr(f, h)};
    r.set_marks = {pr(b, c), pr(c, d), pr(a, e), pr(a, d), pr(e, d)};
    return r;
  }
  std::vector<int> fside;
  for (int v = 0; v < g.n; ++v) {
    if (uh.count(v)) continue;
    if (!g.has_edge(v, f)) continue;
    if (g.has_edge(v, a) || g.has_edge(v, e)) fside.push_back(v);
  }
  if (fside.empty()) {
    if (g.is_marked(a, f)) return crust(a);
    if (g.is_marked(e, f)) return crust(e);
    Mc5Result r{Mc5Result::Kind::reduce, {}, {}, {}, {}, {}, "drop tip"};
    r.drop_vertices = {f};
    r.set_marks = {pr(b, c), pr(c, d), pr(a, d), pr(e, d),
                   pr(a, h), pr(e, h), pr(d, h)};
    return r;
  }
  int j = fside[0];
  int ja = g.has_edge(j, a), je = g.has_edge(j, e);
  if (ja + je == 1) return crust(ja ? a : e);
  if (j == i) return reject("tip flank meets far flank");
  if (g.is_marked(a, c)) return crust(a);
  if (g.is_marked(e, c)) return crust(e);
  Mc5Result r{Mc5Result::Kind::reduce, {}, {}, {}, {}, {}, "drop hinge pair"};
  r.drop_vertices = {std::min(c, d), std::max(c, d)};
  for (auto [x, y] : {pr(g2, f), pr(b, f), pr(h, b)})
    if (!g.has_edge(x, y)) r.add_edges.push_back({x, y});
  r.set_marks = {pr(b, f), pr(f, h)};
  return r;
}

}  // namespace

// ---- pizza removal ----

MarkedGraph remove_4pizza(const MarkedGraph& g, const CorrectPizza& p) {
  auto [a, b, c, d] = p.cycle;
  int need[6][2] = {{a, b}, {b, c}, {c, d}, {d, a}, {a, c}, {b, d}};
  for (auto& s : need)
    if (!g.has_edge(s[0], s[1]))
      throw std::logic_error("pizza removal needs all six pairs adjacent");
  MarkedGraph out = g;
  out.remove_edge(a, c);
  out.set_mark(a, b);
  out.set_mark(b, c);
  out.set_mark(c, d);
  out.set_mark(d, a);
  out.set_mark(b, d);
  return out;
}

AtlasWitness reinsert_4pizza(const AtlasWitness& atlas, const CorrectPizza& p) {
  auto [k, ids] = dense_map(atlas);
  auto [a, b, c, d] = p.cycle;
  int da = rank_of(ids, a), db = rank_of(ids, b), dc = rank_of(ids, c),
      dd = rank_of(ids, d);
  MarkedGraph free_target((int)ids.size());
  if (!contract_to_point(k, free_target, da, db, dc, dd))
    throw std::logic_error("no border to contract into the pizza point");
  return map_to_witness(k, ids);
}

// ---- separator pizzas ----

CorrectPizza pizza_from_separating_edge(const MarkedGraph& g, const Separator& sep) {
  int a = sep.vertices[0], b = sep.vertices[1];
  std::vector<int> comp_of(g.size(), -1);
  for (int i = 0; i < (int)sep.witness_components.size(); ++i)
    for (int v : sep.witness_components[i]) comp_of[v] = i;
  for (auto [x, y] : crossable_edges(g, a, b).members)
    if (comp_of[x] >= 0 && comp_of[y] >= 0 && comp_of[x] != comp_of[y])
      return {{a, x, b, y}};
  throw std::logic_error("separating edge without a crossing pair");
}

static std::optional<CorrectPizza> bridge_pizza(const MarkedGraph& g, int a, int b,
                                                const Separator& sep) {
  if (sep.witness_components.size() != 2) return std::nullopt;
  const auto& c1 = sep.witness_components[0];
  const auto& c2 = sep.witness_components[1];
  std::set<int> side2(c2.begin(), c2.end());
  std::set<int> side1(c1.begin(), c1.end());
  std::vector<int> us, vs;
  for (int v : c1)
    for (int w : g.neighbors(v))
      if (side2.count(w)) {
        us.push_back(v);
        break;
      }
  for (int v : c2)
    for (int w : g.neighbors(v))
      if (side1.count(w)) {
        vs.push_back(v);
        break;
      }
  if (us.size() != 1 || vs.size() != 1) return std::nullopt;
  if (!g.has_edge(us[0], vs[0])) return std::nullopt;
  return CorrectPizza{{a, us[0], b, vs[0]}};
}

std::optional<CorrectPizza> pizza_from_triple(const MarkedGraph& g,
                                              const Separator& sep) {
  return bridge_pizza(g, sep.vertices[0], sep.vertices[1], sep);
}

std::optional<CorrectPizza> pizza_from_quadruple(const MarkedGraph& g,
                                                 const Separator& sep) {
  return bridge_pizza(g, sep.vertices[0], sep.vertices[1], sep);
}

std::optional<std::array<CorrectPizza, 2>> pizzas_from_strong_triangle(
    const MarkedGraph& g, const Separator& sep) {
  int a = sep.vertices[0], b = sep.vertices[1], c = sep.vertices[2];
  int d = -1;
  for (const auto& comp : sep.witness_components)
    if (comp.size() == 1 && (d < 0 || comp[0] < d)) d = comp[0];
  if (d < 0) return std::nullopt;
  auto partner = [&](int u, int v) {
    std::vector<int> hits;
    for (auto [x, y] : crossable_edges(g, u, v).members) {
      if (x == d) hits.push_back(y);
      if (y == d) hits.push_back(x);
    }
    return hits;
  };
  auto xs = partner(a, b);
  auto ys = partner(a, c);
  if (xs.size() != 1 || ys.size() != 1) return std::nullopt;
  return std::array<CorrectPizza, 2>{CorrectPizza{{a, d, b, xs[0]}},
                                     CorrectPizza{{a, d, c, ys[0]}}};
}

std::optional<std::array<CorrectPizza, 2>> pizzas_from_triangle(
    const MarkedGraph& g, const Separator& sep) {
  int a = sep.vertices[0], b = sep.vertices[1], c = sep.vertices[2];
  if (sep.witness_components.size() != 2) return std::nullopt;
  std::vector<int> comp_of(g.size(), -1);
  for (int i = 0; i < 2; ++i)
    for (int v : sep.witness_components[i]) comp_of[v] = i;
  auto crossers = [&](int u, int v) {
    std::vector<std::pair<int, int>> out;
    for (auto [x, y] : crossable_edges(g, u, v).members)
      if (comp_of[x] >= 0 && comp_of[y] >= 0 && comp_of[x] != comp_of[y])
        out.push_back(pr(x, y));
    return out;
  };
  auto ab = crossers(a, b);
  auto ac = crossers(a, c);
  if (ab.size() != 1 || ac.size() != 1) return std::nullopt;
  if (ab[0] == ac[0]) return std::nullopt;
  auto in_both = [&](std::pair<int, int> e) {
    auto mab = crossable_edges(g, a, b).members;
    auto mac = crossable_edges(g, a, c).members;
    return std::count(mab.begin(), mab.end(), e) &&
           std::count(mac.begin(), mac.end(), e);
  };
  if (in_both(ab[0]) || in_both(ac[0])) return std::nullopt;
  return std::array<CorrectPizza, 2>{
      CorrectPizza{{a, ab[0].first, b, ab[0].second}},
      CorrectPizza{{a, ac[0].first, c, ac[0].second}}};
}

// ---- splits ----

std::optional<Reduction> reduce_2cut(const MarkedGraph& g, std::pair<int, int> uv) {
  auto [u, v] = uv;
  if (!g.has_edge(u, v)) return std::nullopt;
  auto comps = comps_after(g, {u, v}, {});
  if (comps.size() < 2) throw std::logic_error("pair does not separate");
  Reduction r;
  r.kind = Reduction::Kind::split2;
  r.shared = {g.label[u], g.label[v]};
  for (const auto& comp : comps) {
    std::vector<int> keep = comp;
    keep.push_back(u);
    keep.push_back(v);
    std::sort(keep.begin(), keep.end());
    MarkedGraph sub = induced_subgraph(g, keep);
    sub.set_mark(rank_of(keep, u), rank_of(keep, v));
    r.subinstances.push_back(std::move(sub));
  }
  return r;
}

AtlasWitness glue_2cut(const std::vector<AtlasWitness>& subs, const Reduction& r) {
  if (r.shared.size() != 2) throw std::logic_error("shared pair missing");
  int width = r.shared[0] + 1;
  for (const auto& h : subs)
    for (int id : h.nations) width = std::max(width, id + 1);
  width = std::max(width, r.shared[1] + 1);
  std::vector<PlaneMap> parts;
  for (const auto& h : subs) {
    auto [k, ids] = dense_map(h);
    parts.push_back(widen(k, ids, width));
  }
  auto got = chain_at_pair(parts, r.shared[0], r.shared[1]);
  if (!got) throw std::logic_error("a sub-atlas lacks the shared border");
  auto [k, labels] = shrink(*got);
  return map_to_witness(k, labels);
}

std::optional<Reduction> reduce_3cut(const MarkedGraph& g,
                                     const std::vector<int>& abc) {
  if (abc.size() != 3) throw std::logic_error("triangle cut needs three vertices");
  int a = abc[0], b = abc[1], c = abc[2];
  auto comps = comps_after(g, abc, {});
  if (comps.size() < 2) throw std::logic_error("triple does not separate");
  if (!g.has_edge(a, b) || !g.has_edge(a, c) || !g.has_edge(b, c))
    return std::nullopt;
  if (comps.size() != 2) return std::nullopt;
  Reduction r;
  r.kind = Reduction::Kind::split3;
  r.shared = {g.label[a], g.label[b], g.label[c]};
  for (const auto& comp : comps) {
    std::vector<int> keep = comp;
    keep.insert(keep.end(), abc.begin(), abc.end());
    std::sort(keep.begin(), keep.end());
    MarkedGraph sub = induced_subgraph(g, keep);
    sub.set_mark(rank_of(keep, a), rank_of(keep, b));
    sub.set_mark(rank_of(keep, a), rank_of(keep, c));
    sub.set_mark(rank_of(keep, b), rank_of(keep, c));
    r.subinstances.push_back(std::move(sub));
  }
  return r;
}

AtlasWitness glue_3cut(const std::vector<AtlasWitness>& subs, const Reduction& r) {
  if (subs.size() != 2 || r.shared.size() != 3)
    throw std::logic_error("triangle glue needs two pieces and three shared");
  int width = 0;
  for (const auto& h : subs)
    for (int id : h.nations) width = std::max(width, id + 1);
  std::vector<PlaneMap> parts;
  for (const auto& h : subs) {
    auto [k, ids] = dense_map(h);
    if (!well_form(k)) throw std::logic_error("piece atlas does not well-form");
    parts.push_back(widen(k, ids, width));
  }
  auto got = glue_at_face(parts[0], parts[1], r.shared);
  if (!got) throw std::logic_error("no piece face realizes the shared triangle");
  auto [k, labels] = shrink(*got);
  return map_to_witness(k, labels);
}

std::optional<Reduction> reduce_separating_4cycle(const MarkedGraph& g,
                                                  const Separator& sep) {
  const auto& cyc = sep.vertices;
  if (cyc.size() != 4) throw std::logic_error("not a 4-cycle separator");
  if (sep.witness_components.size() != 2) return std::nullopt;
  int a = cyc[0], b = cyc[1], c = cyc[2], d = cyc[3];
  Reduction r;
  r.kind = Reduction::Kind::split4cycle;
  r.shared = {g.label[a], g.label[b], g.label[c], g.label[d]};
  for (const auto& comp : sep.witness_components) {
    std::vector<int> keep = comp;
    keep.insert(keep.end(), cyc.begin(), cyc.end());
    std::sort(keep.begin(), keep.end());
    MarkedGraph sub = induced_subgraph(g, keep);
    int la = rank_of(keep, a), lb = rank_of(keep, b), lc = rank_of(keep, c),
        ld = rank_of(keep, d);
    if (!sub.has_edge(la, lc)) sub.add_edge(la, lc);
    sub.set_mark(la, lb);
    sub.set_mark(lb, lc);
    sub.set_mark(lc, ld);
    sub.set_mark(ld, la);
    sub.set_mark(la, lc);
    r.subinstances.push_back(std::move(sub));
  }
  return r;
}

AtlasWitness glue_separating_4cycle(const std::vector<AtlasWitness>& subs,
                                    const Reduction& r) {
  if (subs.size() != 2 || r.shared.size() != 4)
    throw std::logic_error("cycle glue needs two pieces and four shared");
  int a = r.shared[0], b = r.shared[1], c = r.shared[2], d = r.shared[3];
  int width = 0;
  for (const auto& h : subs)
    for (int id : h.nations) width = std::max(width, id + 1);
  std::vector<PlaneMap> parts;
  for (int i = 0; i < 2; ++i) {
    auto [k, ids] = dense_map(subs[i]);
    if (!well_form(k)) throw std::logic_error("piece atlas does not well-form");
    MarkedGraph free_target((int)ids.size());
    if (!contract_to_point(k, free_target, rank_of(ids, b), rank_of(ids, a),
                           rank_of(ids, d), rank_of(ids, c)))
      throw std::logic_error("piece diagonal border is not contractible");
    parts.push_back(widen(k, ids, width));
  }
  auto got = glue_at_face(parts[0], parts[1], {a, b, c, d});
  if (!got) throw std::logic_error("no piece face realizes the shared cycle");
  auto [k, labels] = shrink(*got);
  return map_to_witness(k, labels);
}

// ---- the five-clique step ----

Mc5Result mc5_step(const MarkedGraph& g,
                   const std::vector<std::vector<int>>& mcliques) {
  auto reject = [&](const std::string& why) {
    return Mc5Result{Mc5Result::Kind::reject, {}, {}, {}, {}, {}, why};
  };
  std::vector<const std::vector<int>*> fives;
  for (const auto& c : mcliques)
    if (c.size() == 5) fives.push_back(&c);
  if (fives.empty()) return {};

  const std::vector<int>* pick = nullptr;
  std::vector<const std::vector<int>*> partners;
  for (auto* c : fives) {
    std::vector<const std::vector<int>*> ps;
    for (auto* o : fives)
      if (o != c && k_sharing(*c, *o) == 4) ps.push_back(o);
    if (ps.size() > 2) return reject("a five-clique shares four nations thrice");
    if (pick || ps.size() != 2) continue;
    std::vector<int> m1, m2;
    std::set_difference(c->begin(), c->end(), ps[0]->begin(), ps[0]->end(),
                        std::back_inserter(m1));
    std::set_difference(c->begin(), c->end(), ps[1]->begin(), ps[1]->end(),
                        std::back_inserter(m2));
    if (m1 == m2) continue;
    pick = c;
    partners = ps;
  }
  if (!pick) return reject("no five-clique with two distinct overlaps");
  if (*partners[1] < *partners[0]) std::swap(partners[0], partners[1]);
  const auto& c5 = *pick;
  const auto& p1 = *partners[0];
  const auto& p2 = *partners[1];
  auto minus = [](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> out;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(),
                        std::back_inserter(out));
    return out;
  };
  int b = minus(c5, p1)[0];
  int d = minus(c5, p2)[0];
  int f = minus(p1, c5)[0];
  int g2 = minus(p2, c5)[0];
  if (g.has_edge(f, g2)) return reject("overlap tips adjacent");
  std::vector<int> trio = minus(c5, std::vector<int>{std::min(b, d), std::max(b, d)});
  std::set<int> u_set(c5.begin(), c5.end());
  u_set.insert(f);
  u_set.insert(g2);
  std::vector<int> inner;
  for (int t : trio)
    if (nbhd_inside(g, t, u_set)) inner.push_back(t);
  if (inner.size() >= 2) return reject("two enclosed rim nations");

  if (inner.empty()) {
    std::vector<int> hs, is;
    for (int v = 0; v < g.n; ++v) {
      if (u_set.count(v)) continue;
      int on_trio = 0;
      for (int t : trio) on_trio += g.has_edge(v, t);
      if (on_trio < 2) continue;
      if (g.has_edge(v, b) && g.has_edge(v, g2)) hs.push_back(v);
      if (g.has_edge(v, d) && g.has_edge(v, f)) is.push_back(v);
    }
    if (hs.size() != 1 || is.size() != 1) return reject("caps not unique");
    std::vector<int> cr;
    for (int t : trio)
      if (g.has_edge(hs[0], t) && g.has_edge(is[0], t)) cr.push_back(t);
    if (cr.size() != 1) return reject("caps disagree on the crust");
    return {Mc5Result::Kind::pizza, center_pizza(b, d, trio, cr[0]),
            {},                     {},
            {},                     {},
            "center"};
  }

  int cmid = inner[0];
  std::vector<int> rim;
  for (int t : trio)
    if (t != cmid) rim.push_back(t);
  std::sort(rim.begin(), rim.end());
  int a = rim[0], e = rim[1];
  bool mark_a = g.is_marked(a, d) || g.is_marked(a, b);
  bool mark_e = g.is_marked(e, d) || g.is_marked(e, b);
  if (mark_a && mark_e) return reject("both rims pinned by borders");
  if (mark_a)
    return {Mc5Result::Kind::pizza, center_pizza(b, d, trio, e), {}, {}, {}, {},
            "center"};
  if (mark_e)
    return {Mc5Result::Kind::pizza, center_pizza(b, d, trio, a), {}, {}, {}, {},
            "center"};

  auto enclosed = [&](std::initializer_list<int> vs) {
    for (int v : vs)
      if (!nbhd_inside(g, v, u_set)) return false;
    return true;
  };
  auto case_one = [&](int b_, int d_, int f_, int g_) -> Mc5Result {
    (void)g_;
    if (g.is_marked(cmid, f_)) {
      if (g.is_marked(a, f_))
        return {Mc5Result::Kind::pizza, center_pizza(b, d, trio, a),
                {},         {},         {},     {},  "center"};
      if (g.is_marked(e, f_))
        return {Mc5Result::Kind::pizza, center_pizza(b, d, trio, e),
                {},         {},         {},     {},  "center"};
    }
    Mc5Result r{Mc5Result::Kind::reduce, {}, {}, {}, {}, {}, "drop tip"};
    r.drop_vertices = {f_};
    r.set_marks = {pr(b_, cmid), pr(cmid, d_), pr(a, e), pr(a, d_), pr(e, d_)};
    return r;
  };
  if (enclosed({cmid, d, f})) return case_one(b, d, f, g2);
  if (enclosed({b, cmid, g2})) return case_one(d, b, g2, f);
  return mc5_case3(g, u_set, a, cmid, e, b, d, f, g2, mcliques, trio);
}

// ---- the four-clique steps ----

std::optional<std::vector<CorrectPizza>> mc4_riceball_test(
    const MarkedGraph& g, const std::vector<int>& c,
    const std::vector<std::vector<int>>& mcliques) {
  std::vector<int> core = c;
  std::sort(core.begin(), core.end());
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (g.is_marked(core[i], core[j])) return std::nullopt;
  auto idx = crossable_index(g, mcliques);
  std::set<std::pair<int, int>> ball_edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      auto it = idx.find(pr(core[i], core[j]));
      if (it == idx.end()) continue;
      for (auto e : it->second) ball_edges.insert(e);
    }
  std::vector<std::pair<int, int>> drops(ball_edges.begin(), ball_edges.end());
  auto comps = comps_after(g, core, drops);

  std::vector<std::vector<int>> contact3;
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<int> s;
    for (int i = 0; i < 4; ++i)
      if (i != skip) s.push_back(core[i]);
    contact3.push_back(s);
  }
  std::map<std::vector<int>, std::vector<int>> by_contact;
  for (const auto& comp : comps) {
    std::set<int> touched;
    for (int v : comp)
      for (int w : g.neighbors(v))
        if (std::binary_search(core.begin(), core.end(), w)) touched.insert(w);
    std::vector<int> s(touched.begin(), touched.end());
    if (s.size() != 3) return std::nullopt;
    if (by_contact.count(s)) return std::nullopt;
    by_contact[s] = comp;
  }
  if (by_contact.size() != 4) return std::nullopt;

  std::map<std::pair<int, int>, int> link;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const auto& vs = by_contact[contact3[i]];
      const auto& vt = by_contact[contact3[j]];
      std::set<int> tset(vt.begin(), vt.end());
      std::vector<int> hits;
      for (int v : vs) {
        for (int w : g.neighbors(v))
          if (tset.count(w)) {
            hits.push_back(v);
            break;
          }
      }
      if (hits.size() != 1) return std::nullopt;
      link[{i, j}] = hits[0];
    }
  std::vector<CorrectPizza> out;
  std::vector<int> order(4);
  for (int i = 0; i < 4; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return contact3[x] < contact3[y]; });
  for (int oi = 0; oi < 4; ++oi)
    for (int oj = oi + 1; oj < 4; ++oj) {
      int i = order[oi], j = order[oj];
      std::vector<int> shared;
      std::set_intersection(contact3[i].begin(), contact3[i].end(),
                            contact3[j].begin(), contact3[j].end(),
                            std::back_inserter(shared));
      int ust = link[{i, j}], uts = link[{j, i}];
      std::vector<int> quad = shared;
      quad.push_back(ust);
      quad.push_back(uts);
      std::sort(quad.begin(), quad.end());
      if (!std::binary_search(mcliques.begin(), mcliques.end(), quad))
        return std::nullopt;
      out.push_back({{shared[0], ust, shared[1], uts}});
    }
  return out;
}

namespace {

enum class CaVerdict { pizza, crust, reject };

struct CaArgs {
  int a, b, c, e, f, g2;
};

CaVerdict ca_decide(const MarkedGraph& g, CaArgs t, std::set<int> exclude,
                    std::string* why) {
  auto fail = [&](const char* m) {
    *why = m;
    return CaVerdict::reject;
  };
  std::set<int> u = exclude;
  for (int v : {t.a, t.b, t.c, t.e, t.f, t.g2}) u.insert(v);
  std::vector<int> hs, is;
  for (int v = 0; v < g.n; ++v) {
    if (u.count(v)) continue;
    if (g.has_edge(v, t.a) && g.has_edge(v, t.b) && g.has_edge(v, t.e))
      hs.push_back(v);
    if (g.has_edge(v, t.b) && g.has_edge(v, t.c) && g.has_edge(v, t.g2))
      is.push_back(v);
  }
  if (hs.empty() || is.empty()) return CaVerdict::crust;
  if (hs.size() != 1 || is.size() != 1) return fail("side cap not unique");
  int h = hs[0], i = is[0];
  if (h == i) return fail("side caps collide");
  if (!g.has_edge(t.f, h) || !g.has_edge(t.f, i)) return CaVerdict::pizza;
  std::set<int> ui = u;
  ui.insert(h);
  ui.insert(i);
  if (g.has_edge(h, i)) {
    bool nf = nbhd_inside(g, t.f, ui), nb = nbhd_inside(g, t.b, ui);
    if (nf && nb) return fail("both poles enclosed");
    if (nf) return CaVerdict::crust;
    if (nb) return CaVerdict::pizza;
    std::vector<int> js, ks;
    for (int v : g.neighbors(t.e))
      if (!ui.count(v)) js.push_back(v);
    for (int v : g.neighbors(t.g2))
      if (!ui.count(v)) ks.push_back(v);
    if (js.size() != 1 || ks.size() != 1) return fail("outer ring not unique");
    int j = js[0], kk = ks[0];
    if (!g.has_edge(t.f, j) || !g.has_edge(t.f, kk)) return CaVerdict::crust;
    if (!g.has_edge(t.b, j) || !g.has_edge(t.b, kk)) return CaVerdict::pizza;
    if (j != kk) return fail("outer ring splits");
    std::set<int> all = ui;
    all.insert(j);
    if ((int)all.size() != g.n) return fail("nations outside the shell");
    for (auto [x, y] : {pr(t.a, t.b), pr(t.b, t.c), pr(t.b, h), pr(t.b, i),
                        pr(t.e, t.f), pr(t.f, t.g2), pr(t.f, j)})
      if (g.is_marked(x, y)) return CaVerdict::pizza;
    return CaVerdict::crust;
  }
  std::vector<int> js, ks;
  for (int v = 0; v < g.n; ++v) {
    if (ui.count(v)) continue;
    if (g.has_edge(v, t.e) && g.has_edge(v, t.f) && g.has_edge(v, h))
      js.push_back(v);
    if (g.has_edge(v, t.f) && g.has_edge(v, t.g2) && g.has_edge(v, i))
      ks.push_back(v);
  }
  if (js.empty() || ks.empty()) return CaVerdict::crust;
  if (js.size() != 1 || ks.size() != 1) return fail("far cap not unique");
  int j = js[0], kk = ks[0];
  if (!g.has_edge(t.b, j) || !g.has_edge(t.b, kk)) return CaVerdict::pizza;
  if (j == kk) return fail("far caps collide");
  std::set<int> uk = ui;
  uk.insert(j);
  uk.insert(kk);
  if (g.has_edge(j, kk)) {
    bool nf = nbhd_inside(g, t.f, uk), nb = nbhd_inside(g, t.b, uk);
    if (nf && nb) return fail("both poles enclosed");
    if (nf) return CaVerdict::crust;
    if (nb) return CaVerdict::pizza;
    std::vector<int> ls, ms;
    for (int v : g.neighbors(j))
      if (!uk.count(v)) ls.push_back(v);
    for (int v : g.neighbors(kk))
      if (!uk.count(v)) ms.push_back(v);
    if (ls.size() != 1 || ms.size() != 1) return fail("outer ring not unique");
    int l = ls[0], mm = ms[0];
    if (!g.has_edge(t.f, l) || !g.has_edge(t.f, mm)) return CaVerdict::crust;
    if (!g.has_edge(t.b, l) || !g.has_edge(t.b, mm)) return CaVerdict::pizza;
    if (l != mm) return fail("outer ring splits");
    std::set<int> all = uk;
    all.insert(l);
    if ((int)all.size() != g.n) return fail("nations outside the shell");
    for (auto [x, y] : {pr(h, t.b), pr(t.b, i), pr(t.b, j), pr(t.b, kk),
                        pr(j, t.f), pr(t.f, kk), pr(t.f, l)})
      if (g.is_marked(x, y)) return CaVerdict::pizza;
    return CaVerdict::crust;
  }
  bool pz = g.is_marked(t.a, t.b) || g.is_marked(t.e, t.f) ||
            g.is_marked(t.c, t.b) || g.is_marked(t.g2, t.f);
  bool cr = g.is_marked(t.a, t.f) || g.is_marked(t.e, t.b) ||
            g.is_marked(t.c, t.f) || g.is_marked(t.g2, t.b);
  if (pz && cr) return fail("border hints conflict");
  if (pz) return CaVerdict::pizza;
  if (cr) return CaVerdict::crust;
  for (int v : {t.a, t.c, t.e, t.g2}) exclude.insert(v);
  return ca_decide(g, {h, t.b, i, j, t.f, kk}, std::move(exclude), why);
}

}  // namespace

Mc4Decision mc4_decide(const MarkedGraph& g, const std::vector<int>& c,
                       const std::vector<std::vector<int>>& mcliques) {
  std::vector<int> core = c;
  std::sort(core.begin(), core.end());
  auto pizza_only = [&](const char* why) {
    return Mc4Decision{Mc4Decision::Kind::pizza_only, {}, why};
  };
  auto rejected = [&](const char* why) {
    return Mc4Decision{Mc4Decision::Kind::reject, {}, why};
  };
  std::vector<const std::vector<int>*> sharers;
  for (const auto& m : mcliques)
    if (m != core && k_sharing(m, core) == 3) sharers.push_back(&m);
  if (sharers.size() != 3) return pizza_only("sharer count");
  std::vector<int> missing, fillers;
  for (auto* m : sharers) {
    std::vector<int> mi, fi;
    std::set_difference(core.begin(), core.end(), m->begin(), m->end(),
                        std::back_inserter(mi));
    std::set_difference(m->begin(), m->end(), core.begin(), core.end(),
                        std::back_inserter(fi));
    if (mi.size() != 1 || fi.size() != 1) return pizza_only("sharer shape");
    missing.push_back(mi[0]);
    fillers.push_back(fi[0]);
  }
  std::set<int> miss_set(missing.begin(), missing.end());
  if (miss_set.size() != 3) return pizza_only("repeated missing nation");
  int d = -1;
  for (int v : core)
    if (!miss_set.count(v)) d = v;
  if (d < 0) return pizza_only("no common nation");
  std::set<int> fill_set(fillers.begin(), fillers.end());
  if (fill_set.size() != 3) return rejected("fillers collide");
  std::set<int> u(core.begin(), core.end());
  for (int v : fillers) u.insert(v);
  if (!nbhd_inside(g, d, u)) return pizza_only("hub reaches outside");

  auto crust_pizzas = [&]() {
    std::vector<CorrectPizza> ps;
    for (int i = 0; i < 3; ++i) {
      std::vector<int> side;
      for (int v : core)
        if (v != d && v != missing[i]) side.push_back(v);
      std::sort(side.begin(), side.end());
      ps.push_back({{side[0], fillers[i], side[1], d}});
    }
    return Mc4Decision{Mc4Decision::Kind::crust, ps, "crust"};
  };

  int filler_edges = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      filler_edges += g.has_edge(fillers[i], fillers[j]);
  if (filler_edges == 3) {
    for (int v = 0; v < g.n; ++v) {
      if (u.count(v)) continue;
      if (g.has_edge(v, fillers[0]) && g.has_edge(v, fillers[1]) &&
          g.has_edge(v, fillers[2]))
        return pizza_only("capped filler triangle");
    }
    return crust_pizzas();
  }
  if (filler_edges <= 1) return crust_pizzas();

  int central = -1;
  for (int i = 0; i < 3; ++i) {
    int deg = 0;
    for (int j = 0; j < 3; ++j)
      if (j != i) deg += g.has_edge(fillers[i], fillers[j]);
    if (deg == 2) central = i;
  }
  if (central < 0) return rejected("no central filler");
  std::vector<int> sides;
  for (int i = 0; i < 3; ++i)
    if (i != central) sides.push_back(i);
  if (fillers[sides[1]] < fillers[sides[0]]) std::swap(sides[0], sides[1]);
  int fc = fillers[central], es = fillers[sides[0]], gs = fillers[sides[1]];
  int b = missing[central], cc = missing[sides[0]], aa = missing[sides[1]];
  std::vector<int> q1{aa, d, es, fc}, q2{cc, d, fc, gs};
  std::sort(q1.begin(), q1.end());
  std::sort(q2.begin(), q2.end());
  if (!std::binary_search(mcliques.begin(), mcliques.end(), q1) ||
      !std::binary_search(mcliques.begin(), mcliques.end(), q2))
    return rejected("fan cliques absent");
  if (g.is_marked(d, fc)) return pizza_only("hub border to central filler");
  if (g.is_marked(d, b)) return crust_pizzas();
  std::string why;
  switch (ca_decide(g, {aa, b, cc, es, fc, gs}, {d}, &why)) {
    case CaVerdict::pizza: return pizza_only("cascade");
    case CaVerdict::crust: return crust_pizzas();
    default: return rejected(why.c_str());
  }
}

std::optional<std::vector<CorrectPizza>> find_all_pizzas(
    const MarkedGraph& g, const std::vector<std::vector<int>>& mcliques) {
  std::vector<const std::vector<int>*> fours;
  for (const auto& c : mcliques)
    if (c.size() == 4) fours.push_back(&c);
  for (size_t i = 0; i < fours.size(); ++i)
    for (size_t j = i + 1; j < fours.size(); ++j)
      if (k_sharing(*fours[i], *fours[j]) == 3) return std::nullopt;
  std::vector<CorrectPizza> out;
  for (auto* cp : fours) {
    const auto& c = *cp;
    std::set<std::pair<int, int>> pairs;
    for (int v = 0; v < g.n; ++v) {
      if (std::binary_search(c.begin(), c.end(), v)) continue;
      std::vector<int> touch;
      for (int w : c)
        if (g.has_edge(v, w)) touch.push_back(w);
      if (touch.size() == 2) pairs.insert(pr(touch[0], touch[1]));
    }
    static const int diag[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    std::vector<std::array<int, 4>> good;
    for (auto& sp : diag) {
      int x0 = c[sp[0]], x1 = c[sp[1]], y0 = c[sp[2]], y1 = c[sp[3]];
      bool ok = pairs.count(pr(x0, y0)) && pairs.count(pr(y0, x1)) &&
                pairs.count(pr(x1, y1)) && pairs.count(pr(y1, x0));
      if (ok) good.push_back({x0, y0, x1, y1});
    }
    if (good.size() != 1) return std::nullopt;
    out.push_back({good[0]});
  }
  return out;
}

// ---- the pipeline ----

namespace {

struct Undo {
  enum class Kind { pizza, surgery } kind;
  MarkedGraph pre;
  CorrectPizza pizza;
  std::vector<int> missing;  // dense ids in pre
};

struct Ctx {
  StepBudget budget;
  bool want_trace = false;
  std::vector<Reduction> trace;
  std::string stage;

  std::nullopt_t fail(const std::string& s) {
    if (stage.empty()) stage = s;
    return std::nullopt;
  }
  void note(Reduction r) {
    if (want_trace) trace.push_back(std::move(r));
  }
};

std::vector<int> universe_to_dense(const MarkedGraph& g) {
  int width = 0;
  for (int id : g.label) width = std::max(width, id + 1);
  std::vector<int> inv(width, -1);
  for (int v = 0; v < g.n; ++v) inv[g.label[v]] = v;
  return inv;
}

std::optional<PlaneMap> solve(const MarkedGraph& start, Ctx& ctx);

// Recurses on the two halves of a split and splices the results back into
// a map over parent's dense ids.
std::optional<PlaneMap> solve_split(const MarkedGraph& parent, Reduction r,
                                    Ctx& ctx) {
  std::vector<PlaneMap> parts;
  auto inv = universe_to_dense(parent);
  for (const auto& sub : r.subinstances) {
    auto got = solve(sub, ctx);
    if (!got) return std::nullopt;
    std::vector<int> ids(sub.n);
    for (int v = 0; v < sub.n; ++v) ids[v] = inv[sub.label[v]];
    parts.push_back(widen(*got, ids, parent.n));
  }
  std::vector<int> shared_dense;
  for (int id : r.shared) shared_dense.push_back(inv[id]);
  std::optional<PlaneMap> glued;
  if (r.kind == Reduction::Kind::split2) {
    glued = chain_at_pair(parts, shared_dense[0], shared_dense[1]);
  } else if (r.kind == Reduction::Kind::split3) {
    for (auto& k : parts)
      if (!well_form(k)) return ctx.fail("glue");
    glued = glue_at_face(parts[0], parts[1], shared_dense);
  } else {
    int a = shared_dense[0], b = shared_dense[1], c = shared_dense[2],
        d = shared_dense[3];
    for (size_t i = 0; i < parts.size(); ++i) {
      auto& k = parts[i];
      if (!well_form(k)) return ctx.fail("glue");
      if (!contract_to_point(k, no_marks(parent), b, a, d, c))
        return ctx.fail("glue");
    }
    glued = glue_at_face(parts[0], parts[1], {a, b, c, d});
  }
  ctx.note(std::move(r));
  if (!glued) return ctx.fail("glue");
  if (!map_matches(*glued, parent)) return ctx.fail("glue");
  return glued;
}

// One in-place pizza removal with its undo record.
bool apply_pizza(MarkedGraph& cur, const CorrectPizza& p, std::vector<Undo>& undo,
                 Ctx& ctx, const char* stage) {
  if (pizza_block(cur, p)) {
    ctx.fail(stage);
    return false;
  }
  Undo u{Undo::Kind::pizza, cur, p, {}};
  MarkedGraph next = remove_4pizza(cur, p);
  Reduction r;
  r.kind = Reduction::Kind::pizza_removal;
  r.subinstances = {next};
  r.pizzas = {p};
  r.note = stage;
  ctx.note(std::move(r));
  undo.push_back(std::move(u));
  cur = std::move(next);
  return true;
}

std::optional<PlaneMap> solve(const MarkedGraph& start, Ctx& ctx) {
  MarkedGraph cur = start;
  std::vector<Undo> undo;
  std::optional<PlaneMap> k;

  for (;;) {
    if (!ctx.budget.charge(cur.size())) return ctx.fail("budget");
    int n = cur.n;
    if (n <= 1) return ctx.fail("connectivity");
    if (n > 2 && !is_2connected(cur)) return ctx.fail("connectivity");

    if (n <= 8) {
      ctx.budget.charge(200);
      auto got = oracle_recognize_map(cur);
      if (!got) return ctx.fail("exhaustive");
      PlaneMap w = *got;
      if (!well_form(w)) {
        auto alt = wf_small_map(cur);
        w = alt ? *alt : *got;
      }
      k = std::move(w);
      break;
    }

    if (auto cut = find_cut(cur, 2)) {
      int u = cut->vertices[0], v = cut->vertices[1];
      if (!cur.has_edge(u, v)) return ctx.fail("2-cut-nonadjacent");
      Reduction r;
      r.kind = Reduction::Kind::split2;
      r.shared = {cur.label[u], cur.label[v]};
      std::vector<int> first = cut->components[0];
      first.push_back(u);
      first.push_back(v);
      std::sort(first.begin(), first.end());
      std::vector<int> rest{u, v};
      for (size_t i = 1; i < cut->components.size(); ++i)
        for (int w : cut->components[i]) rest.push_back(w);
      std::sort(rest.begin(), rest.end());
      for (auto& keep : {first, rest}) {
        MarkedGraph sub = induced_subgraph(cur, keep);
        sub.set_mark(rank_of(keep, u), rank_of(keep, v));
        r.subinstances.push_back(std::move(sub));
      }
      k = solve_split(cur, std::move(r), ctx);
      if (!k) return std::nullopt;
      break;
    }

    if (auto cut = find_cut(cur, 3)) {
      auto red = reduce_3cut(cur, cut->vertices);
      if (!red) return ctx.fail("3-cut-structure");
      k = solve_split(cur, std::move(*red), ctx);
      if (!k) return std::nullopt;
      break;
    }

    auto mcs = enumerate_maximal_cliques(cur);
    if (!mcs) return ctx.fail("clique-budget");
    const auto& mcliques = *mcs;
    size_t omega = 0;
    for (const auto& c : mcliques) omega = std::max(omega, c.size());
    if (omega >= 7) return ctx.fail("seven-clique");

    if (auto sep = find_separating_edge(cur)) {
      auto p = pizza_from_separating_edge(cur, *sep);
      if (!apply_pizza(cur, p, undo, ctx, "separating-edge")) return std::nullopt;
      continue;
    }

    if (auto sep = find_separating_4cycle(cur)) {
      auto red = reduce_separating_4cycle(cur, *sep);
      if (!red) return ctx.fail("4-cycle-structure");
      k = solve_split(cur, std::move(*red), ctx);
      if (!k) return std::nullopt;
      break;
    }

    if (auto sep = find_separating_triple(cur)) {
      auto p = pizza_from_triple(cur, *sep);
      if (!p) return ctx.fail("triple-structure");
      if (!apply_pizza(cur, *p, undo, ctx, "separating-triple")) return std::nullopt;
      continue;
    }

    if (auto sep = find_separating_quadruple(cur)) {
      auto p = pizza_from_quadruple(cur, *sep);
      if (!p) return ctx.fail("quadruple-structure");
      if (!apply_pizza(cur, *p, undo, ctx, "separating-quadruple"))
        return std::nullopt;
      continue;
    }

    if (auto sep = find_separating_triangle(cur, true)) {
      auto ps = pizzas_from_strong_triangle(cur, *sep);
      if (!ps) return ctx.fail("strong-triangle-structure");
      if (!apply_pizza(cur, (*ps)[0], undo, ctx, "strong-triangle"))
        return std::nullopt;
      if (!apply_pizza(cur, (*ps)[1], undo, ctx, "strong-triangle"))
        return std::nullopt;
      continue;
    }

    if (auto sep = find_separating_triangle(cur, false)) {
      auto ps = pizzas_from_triangle(cur, *sep);
      if (!ps) return ctx.fail("triangle-structure");
      if (!apply_pizza(cur, (*ps)[0], undo, ctx, "separating-triangle"))
        return std::nullopt;
      if (!apply_pizza(cur, (*ps)[1], undo, ctx, "separating-triangle"))
        return std::nullopt;
      continue;
    }

    if (omega >= 6) return ctx.fail("six-clique");

    auto m5 = mc5_step(cur, mcliques);
    if (m5.kind == Mc5Result::Kind::reject)
      return ctx.fail("five-clique: " + m5.detail);
    if (m5.kind == Mc5Result::Kind::pizza) {
      if (!apply_pizza(cur, m5.pizza, undo, ctx, "five-clique")) return std::nullopt;
      continue;
    }
    if (m5.kind == Mc5Result::Kind::reduce) {
      Undo u{Undo::Kind::surgery, cur, {}, m5.drop_vertices};
      MarkedGraph work = cur;
      for (auto [x, y] : m5.add_edges) work.add_edge(x, y);
      MarkedGraph next = remove(work, m5.drop_vertices, m5.drop_edges);
      auto inv = universe_to_dense(next);
      for (auto [x, y] : m5.set_marks) {
        int lx = cur.label[x], ly = cur.label[y];
        int nx = lx < (int)inv.size() ? inv[lx] : -1;
        int ny = ly < (int)inv.size() ? inv[ly] : -1;
        if (nx >= 0 && ny >= 0 && next.has_edge(nx, ny)) next.set_mark(nx, ny);
      }
      Reduction r;
      r.kind = Reduction::Kind::mc5_surgery;
      r.subinstances = {next};
      for (int v : m5.drop_vertices) r.inserted.push_back(cur.label[v]);
      r.note = m5.detail;
      ctx.note(std::move(r));
      undo.push_back(std::move(u));
      cur = std::move(next);
      continue;
    }

    bool any_four = false;
    for (const auto& c : mcliques) any_four |= c.size() == 4;
    if (any_four) {
      bool applied = false;
      for (const auto& c : mcliques) {
        if (c.size() != 4) continue;
        auto ball = mc4_riceball_test(cur, c, mcliques);
        if (!ball) continue;
        Reduction r;
        r.kind = Reduction::Kind::mc4_surgery;
        r.pizzas = *ball;
        r.note = "ball cover";
        for (const auto& p : *ball)
          if (!apply_pizza(cur, p, undo, ctx, "four-clique-ball"))
            return std::nullopt;
        r.subinstances = {cur};
        ctx.note(std::move(r));
        applied = true;
        break;
      }
      if (applied) continue;

      for (const auto& c : mcliques) {
        if (c.size() != 4) continue;
        auto dec = mc4_decide(cur, c, mcliques);
        if (dec.kind == Mc4Decision::Kind::reject)
          return ctx.fail("four-clique: " + dec.detail);
        if (dec.kind == Mc4Decision::Kind::crust) {
          Reduction r;
          r.kind = Reduction::Kind::mc4_surgery;
          r.pizzas = dec.pizzas;
          r.note = "crust fan";
          for (const auto& p : dec.pizzas)
            if (!apply_pizza(cur, p, undo, ctx, "four-clique-crust"))
              return std::nullopt;
          r.subinstances = {cur};
          ctx.note(std::move(r));
          applied = true;
          break;
        }
      }
      if (applied) continue;

      auto all = find_all_pizzas(cur, mcliques);
      if (!all) return ctx.fail("pizza-order");
      Reduction r;
      r.kind = Reduction::Kind::mc4_surgery;
      r.pizzas = *all;
      r.note = "plain pizzas";
      for (const auto& p : *all)
        if (!apply_pizza(cur, p, undo, ctx, "four-clique-plain"))
          return std::nullopt;
      r.subinstances = {cur};
      ctx.note(std::move(r));
      continue;
    }

    auto dual = triangulated_dual(cur);
    if (!dual) return ctx.fail("not-triangulated");
    std::vector<int> self(cur.n);
    for (int v = 0; v < cur.n; ++v) self[v] = cur.label[v];
    auto base = map_from_witness(*dual, self);
    if (!base) return ctx.fail("not-triangulated");
    k = std::move(*base);
    break;
  }

  for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
    if (!ctx.budget.charge(it->pre.size())) return ctx.fail("budget");
    if (it->kind == Undo::Kind::pizza) {
      auto [a, b, c, d] = it->pizza.cycle;
      if (!contract_to_point(*k, no_marks(it->pre), a, b, c, d))
        return ctx.fail("reinsert");
      if (!well_form(*k)) return ctx.fail("reinsert");
      if (!map_matches(*k, it->pre)) return ctx.fail("reinsert");
    } else {
      // k is dense over the reduced graph, whose nations are pre's minus the
      // dropped ones in the same order.
      std::vector<int> reduced_ids;
      std::set<int> dropped(it->missing.begin(), it->missing.end());
      for (int v = 0; v < it->pre.n; ++v)
        if (!dropped.count(v)) reduced_ids.push_back(v);
      if ((int)reduced_ids.size() != k->n) return ctx.fail("lift");
      PlaneMap wide = widen(*k, reduced_ids, it->pre.n);
      long long fuel = 2000000;
      auto lifted = lift_atlas(wide, it->pre, it->missing, &fuel);
      ctx.budget.charge(2000000 - fuel);
      if (!lifted) return ctx.fail("lift");
      k = std::move(*lifted);
    }
  }

  PlaneMap wf = *k;
  if (well_form(wf)) k = std::move(wf);
  return k;
}

}  // namespace

Verdict exhaustive_small(const MarkedGraph& g) {
  Verdict v;
  if (g.n > 8) throw std::out_of_range("exhaustive search beyond 8 nations");
  if (g.n <= 1 || !is_connected(g)) {
    v.reject_stage = "connectivity";
    return v;
  }
  auto got = oracle_recognize_map(g);
  if (!got) {
    v.reject_stage = "exhaustive";
    return v;
  }
  PlaneMap k = *got;
  if (three_connected(g)) {
    PlaneMap w = k;
    if (well_form(w)) {
      k = std::move(w);
    } else if (auto alt = wf_small_map(g)) {
      k = *alt;
    }
  }
  v.accepted = true;
  v.atlas = map_to_witness(k, g.label);
  return v;
}

Verdict base_case(const MarkedGraph& g) {
  Verdict v;
  auto dual = triangulated_dual(g);
  if (!dual) {
    v.reject_stage = "not-triangulated";
    return v;
  }
  v.accepted = true;
  v.atlas = *dual;
  return v;
}

Verdict recognize(const MarkedGraph& g, const RecognizerOptions& opt) {
  Verdict v;
  long long sz = std::max(1, g.size());
  Ctx ctx;
  ctx.budget.max_steps = std::max<long long>(
      100000, (long long)(opt.budget_c * (double)(sz * sz * sz)));
  ctx.want_trace = opt.want_trace;

  if (g.n <= 1 || !is_connected(g)) {
    v.reject_stage = "connectivity";
    v.steps = ctx.budget.consumed;
    return v;
  }

  MarkedGraph cur = g;
  for (int i = 0; i < cur.n; ++i) cur.label[i] = i;
  auto k = solve(cur, ctx);
  v.steps = ctx.budget.consumed;
  v.trace = std::move(ctx.trace);
  if (!k) {
    v.reject_stage = ctx.stage.empty() ? "unknown" : ctx.stage;
    return v;
  }
  auto h = map_to_witness(*k, g.label);
  std::string why;
  if (!verify_atlas(h, g, &why)) {
    v.reject_stage = "verify: " + why;
    return v;
  }
  v.accepted = true;
  v.atlas = std::move(h);
  return v;
}

}  // namespace mapgraph
