#include "cubesep/construction.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "cubesep/errors.hpp"

namespace cubesep {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    p[b] = a;  // smaller id wins, so z-vertices stay roots
    return true;
  }
};

// Length of the sigma_gen cycle through z0, or 0 if its orbit is a chain.
int cycle_length_through(const LabeledComplex& z, int z0, int gen) {
  int cur = z0;
  for (int n = 1; n <= z.size(); ++n) {
    cur = z.forward(gen, cur);
    if (cur == -1) return 0;
    if (cur == z0) return n;
  }
  return 0;
}

struct SigmaChain {
  bool is_cycle = false;
  int head = -1;  // no incoming sigma_gen
  int tail = -1;  // no outgoing sigma_gen
  int count = 0;  // vertices on the chain
};
SigmaChain sigma_chain(const LabeledComplex& z, int gen, int u) {
  SigmaChain c;
  int head = u;
  for (int guard = 0;; ++guard) {
    int p = z.backward(gen, head);
    if (p == -1) break;
    if (p == u || guard > z.size()) {
      c.is_cycle = true;
      return c;
    }
    head = p;
  }
  c.head = head;
  int cur = head;
  c.count = 1;
  while (true) {
    int nx = z.forward(gen, cur);
    if (nx == -1) break;
    cur = nx;
    ++c.count;
  }
  c.tail = cur;
  return c;
}

std::vector<int> wall_endpoints(const DevelopedComplex& d,
                                const Hyperplane& h) {
  std::vector<int> out;
  out.reserve(h.dual_sources.size() * 2);
  for (int s : h.dual_sources) {
    out.push_back(s);
    out.push_back(d.step(s, Letter(h.label, 1)));
  }
  return out;
}

// Uniform side of a vertex list w.r.t. precomputed sides; -1 if mixed.
int uniform_side(const std::vector<int>& sides, const std::vector<int>& vids) {
  int s = sides[vids[0]];
  for (int v : vids)
    if (sides[v] != s) return -1;
  return s;
}

}  // namespace

int lift_image(const LabeledComplex& z, const NormalForm& p) {
  TraceResult t = trace(z, p.letters(), z.base());
  if (!t.end) throw InvariantError("lift_image: word does not trace in z");
  return *t.end;
}

DevelopedComplex develop_domain(const LabeledComplex& z) {
  const DefiningGraph& g = z.graph();
  std::vector<NormalForm> words(z.size());
  std::vector<char> seen(z.size(), 0);
  std::vector<int> order{z.base()};
  seen[z.base()] = 1;
  std::set<std::tuple<int, int, int>> tree;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    int x = order[qi];
    for (int v = 0; v < g.size(); ++v)
      for (int sign : {+1, -1}) {
        int y = z.step(x, Letter(v, sign));
        if (y == -1 || seen[y]) continue;
        seen[y] = 1;
        words[y] = nf_mul(g, words[x], Letter(v, sign));
        tree.insert(sign > 0 ? std::tuple{x, v, y} : std::tuple{y, v, x});
        order.push_back(y);
      }
  }
  std::vector<NormalForm> pts;
  for (int x = 0; x < z.size(); ++x) {
    if (!seen[x]) continue;  // based component only
    pts.push_back(words[x]);
  }
  for (const auto& e : z.edges()) {
    if (!seen[e.src] || tree.count({e.src, e.gen, e.dst})) continue;
    pts.push_back(nf_mul(g, words[e.src], Letter(e.gen, 1)));
  }
  return DevelopedComplex::hull(g, std::move(pts));
}

bool saturate_squares(LabeledComplex& z, SaturationStats* stats,
                      int max_rounds) {
  const DefiningGraph& g = z.graph();
  SaturationStats local;
  SaturationStats& st = stats ? *stats : local;
  for (int round = 0; round < max_rounds; ++round) {
    bool progress = false;
    // transport: one of the two square corners exists, copy it over
    for (int x = 0; x < z.size() && !progress; ++x)
      for (int v = 0; v < g.size() && !progress; ++v)
        for (int w = v + 1; w < g.size() && !progress; ++w) {
          if (!g.adjacent(v, w)) continue;
          for (int sv : {+1, -1})
            for (int sw : {+1, -1}) {
              Letter a(v, sv), b(w, sw);
              int xa = z.step(x, a), xb = z.step(x, b);
              if (xa == -1 || xb == -1) continue;
              int xab = z.step(xa, b), xba = z.step(xb, a);
              if (xab != -1 && xba != -1) {
                if (xab != xba)
                  throw InvariantError(
                      "saturation found two incompatible squares");
                continue;
              }
              if (xab == -1 && xba == -1) continue;
              if (xab == -1) {
                if (sw > 0)
                  z.add_edge(xa, w, xba);
                else
                  z.add_edge(xba, w, xa);
              } else {
                if (sv > 0)
                  z.add_edge(xb, v, xab);
                else
                  z.add_edge(xab, v, xb);
              }
              ++st.transports;
              progress = true;
              break;
            }
        }
    if (progress) continue;
    auto report = check_local_isometry(z);
    if (report.passed()) return true;
    // cycle closure: mirror a closed parallel orbit of matching length
    for (const auto& viol : report.violations) {
      int x = viol.vertex;
      for (auto [a, b] : {std::pair{viol.a, viol.b}, {viol.b, viol.a}}) {
        int n = cycle_length_through(z, x, b.gen);
        if (n == 0) continue;
        int xa = z.step(x, a);
        SigmaChain ch = sigma_chain(z, b.gen, xa);
        if (ch.is_cycle || ch.count != n) continue;
        z.add_edge(ch.tail, b.gen, ch.head);
        ++st.cycle_closures;
        progress = true;
        break;
      }
      if (progress) break;
    }
    if (!progress) return false;
  }
  return false;
}

SeparatingComplexBuilder::SeparatingComplexBuilder(LabeledComplex z_,
                                                   NormalForm g_)
    : z(std::move(z_)), g(std::move(g_)) {
  if (g.is_identity())
    throw InputError("the target element is trivial");
  if (!z.connected())
    throw InputError("the domain complex must be connected");
  if (!check_local_isometry(z).passed())
    throw InputError("the domain complex is not a local isometry");
  TraceResult t = trace(z, g.letters(), z.base());
  if (t.closed(z.base()))
    throw InputError("the target element lies in the subgroup");
}

void SeparatingComplexBuilder::setup() {
  if (stage_ != 0) throw InvariantError("setup: wrong stage");
  lift = develop_domain(z);
  std::vector<NormalForm> pts = lift.vertices();
  pts.push_back(g);
  ambient = DevelopedComplex::hull(z.graph(), std::move(pts));
  target_vid = ambient.id_of(g);
  stage_ = 1;
}

void SeparatingComplexBuilder::partition_hyperplanes() {
  if (stage_ != 1) throw InvariantError("partition_hyperplanes: wrong stage");
  const DefiningGraph& gg = z.graph();
  walls = hyperplanes_of(ambient);
  int nw = static_cast<int>(walls.size());
  wall_sides.resize(nw);
  meets_lift.assign(nw, 0);
  wrap_len.assign(nw, 0);
  coll_class.assign(nw, 0);
  for (int i = 0; i < nw; ++i) {
    wall_sides[i] = hyperplane_sides(ambient, walls[i]);
    for (int s : walls[i].dual_sources) {
      int d = ambient.step(s, Letter(walls[i].label, 1));
      if (lift.contains(ambient.vertex(s)) && lift.contains(ambient.vertex(d)))
        meets_lift[i] = 1;
    }
  }
  // the subgroup orbit inside the ambient hull: vertices whose normal form
  // traces in z from the base (a convex full subcomplex since z is a local
  // isometry), with the trace endpoint as projection
  orbit_image_.assign(ambient.size(), -1);
  for (int i = 0; i < ambient.size(); ++i) {
    TraceResult t = trace(z, ambient.vertex(i).letters(), z.base());
    if (t.end) orbit_image_[i] = *t.end;
  }
  for (const auto& e : ambient.edges())
    if (orbit_image_[e.src] != -1 && orbit_image_[e.dst] != -1 &&
        z.forward(e.gen, orbit_image_[e.src]) != orbit_image_[e.dst])
      throw InvariantError("subgroup orbit is not edge-consistent");
  meets_orbit.assign(nw, 0);
  for (int i = 0; i < nw; ++i)
    for (int s : walls[i].dual_sources) {
      int d = ambient.step(s, Letter(walls[i].label, 1));
      if (orbit_image_[s] != -1 && orbit_image_[d] != -1) meets_orbit[i] = 1;
    }
  for (int i = 0; i < nw; ++i)
    if (meets_lift[i] && !meets_orbit[i])
      throw InvariantError("a lift wall misses the subgroup orbit");
  // wrapping test: a frame side whose lift part winds a full sigma-cycle
  for (int i = 0; i < nw; ++i) {
    if (meets_lift[i]) continue;
    FrameChart ch = frame_chart(ambient, walls[i]);
    int agreed = 0;
    for (std::size_t s = 0; s < ch.sides.size(); ++s) {
      int lo = 1, hi = 0;  // lift level range on this side, empty by default
      bool in_run = false;
      for (int lv = ch.level_lo; lv <= ch.level_hi; ++lv) {
        bool inl = lift.contains(ambient.vertex(ch.side_of(s, lv)));
        if (inl && !in_run) {
          lo = lv;
          hi = lv;
          in_run = true;
        } else if (inl) {
          if (lv != hi + 1)
            throw InvariantError("lift is not convex along a frame side");
          hi = lv;
        } else if (in_run && lv > hi + 1) {
          break;
        }
      }
      // re-scan to reject split runs (lift convexity)
      for (int lv = ch.level_lo; lv <= ch.level_hi; ++lv) {
        bool inl = lift.contains(ambient.vertex(ch.side_of(s, lv)));
        if (inl && (lv < lo || lv > hi))
          throw InvariantError("lift is not convex along a frame side");
      }
      if (!in_run || hi == lo) continue;
      int z0 = lift_image(z, ambient.vertex(ch.side_of(s, lo)));
      int cur = z0;
      for (int lv = lo; lv < hi; ++lv) {
        int nx = z.forward(walls[i].label, cur);
        int want = lift_image(z, ambient.vertex(ch.side_of(s, lv + 1)));
        if (nx == -1 || nx != want)
          throw InvariantError("lift images break along a frame side");
        cur = nx;
      }
      int n = cycle_length_through(z, z0, walls[i].label);
      if (n == 0 || hi - lo < n) continue;
      if (agreed && agreed != n)
        throw InvariantError("frame sides wind cycles of different lengths");
      agreed = n;
    }
    wrap_len[i] = agreed;
  }
  // collateral classes
  UnionFind uf(nw);
  for (int i = 0; i < nw; ++i)
    for (int j = i + 1; j < nw; ++j)
      if (walls[i].label == walls[j].label &&
          collateral(gg, walls[i], walls[j]))
        uf.unite(i, j);
  for (int i = 0; i < nw; ++i) coll_class[i] = uf.find(i);
  // wrapping classes: same cycle length inside a class, distinct labels
  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < nw; ++i)
    if (wrap_len[i] > 0) by_class[coll_class[i]].push_back(i);
  wrap_classes.clear();
  std::set<int> labels;
  for (auto& [cls, members] : by_class) {
    WrapClass wc;
    wc.label = walls[members[0]].label;
    wc.cycle_length = wrap_len[members[0]];
    for (int m : members) {
      if (wrap_len[m] != wc.cycle_length)
        throw InvariantError("wrapping class has mixed cycle lengths");
      if (meets_lift[m])
        throw InvariantError("wrapping wall meets the lift");
      if (!meets_orbit[m])
        throw InvariantError("wrapping wall misses the subgroup orbit");
    }
    wc.members = members;
    wc.coset_base = walls[members[0]].key;
    if (!labels.insert(wc.label).second)
      throw InvariantError("two wrapping classes share a label");
    wrap_classes.push_back(std::move(wc));
  }
  stage_ = 2;
}

void SeparatingComplexBuilder::floor_and_quotient() {
  if (stage_ != 2) throw InvariantError("floor_and_quotient: wrong stage");
  const DefiningGraph& gg = z.graph();
  // the floor is the subgroup orbit inside the ambient hull; convexity of
  // the orbit makes the hull below a no-op, which the escape check enforces
  std::vector<NormalForm> pts = lift.vertices();
  for (int i = 0; i < ambient.size(); ++i)
    if (orbit_image_[i] != -1) pts.push_back(ambient.vertex(i));
  floor_complex = DevelopedComplex::hull(gg, std::move(pts));
  floor_vids_.clear();
  floor_q.assign(floor_complex.size(), -1);
  for (int i = 0; i < floor_complex.size(); ++i) {
    int a = ambient.id_of(floor_complex.vertex(i));
    if (a == -1)
      throw InvariantError("floor leaves the ambient complex");
    if (orbit_image_[a] == -1)
      throw InvariantError("floor vertex escapes the subgroup orbit");
    floor_vids_.push_back(a);
    floor_q[i] = orbit_image_[a];
  }
  for (const auto& e : floor_complex.edges())
    if (z.forward(e.gen, floor_q[e.src]) != floor_q[e.dst])
      throw InvariantError("floor retraction is not a complex map");
  for (int i = 0; i < floor_complex.size(); ++i) {
    int li = lift.id_of(floor_complex.vertex(i));
    if (li != -1 && floor_q[i] != lift_image(z, floor_complex.vertex(i)))
      throw InvariantError("floor retraction breaks on the lift");
  }
  // a shared segment through every member of each wrapping class
  for (auto& wc : wrap_classes) {
    wc.line.clear();
    for (int x = 0; x < floor_complex.size() && wc.line.empty(); ++x) {
      if (floor_complex.step(x, Letter(wc.label, -1)) != -1) continue;
      if (floor_complex.step(x, Letter(wc.label, 1)) == -1) continue;
      std::vector<int> seg{x};
      for (int cur = x;;) {
        int nx = floor_complex.step(cur, Letter(wc.label, 1));
        if (nx == -1) break;
        seg.push_back(nx);
        cur = nx;
      }
      bool all = true;
      for (int m : wc.members) {
        bool hit = false;
        for (std::size_t i = 0; i + 1 < seg.size() && !hit; ++i) {
          int a = ambient.id_of(floor_complex.vertex(seg[i]));
          int b = ambient.id_of(floor_complex.vertex(seg[i + 1]));
          hit = std::binary_search(walls[m].dual_sources.begin(),
                                   walls[m].dual_sources.end(), a) &&
                ambient.step(a, Letter(wc.label, 1)) == b;
        }
        if (!hit) all = false;
      }
      if (all) wc.line = seg;
    }
    if (wc.line.empty())
      throw InvariantError("no floor segment crosses a wrapping class");
  }
  // the walls crossing the floor are exactly those dual to an orbit edge
  for (int i = 0; i < static_cast<int>(walls.size()); ++i) {
    bool crosses_floor = false;
    for (int s : walls[i].dual_sources) {
      int d = ambient.step(s, Letter(walls[i].label, 1));
      if (floor_complex.contains(ambient.vertex(s)) &&
          floor_complex.contains(ambient.vertex(d)))
        crosses_floor = true;
    }
    if (crosses_floor != (meets_orbit[i] == 1))
      throw InvariantError("floor crossing walls do not match the orbit");
  }
  stage_ = 3;
}

int SeparatingComplexBuilder::candidate_rep(
    const std::vector<int>& members) const {
  int best = members[0], bestd = walls_between_floor(members[0]);
  for (int m : members) {
    int d = walls_between_floor(m);
    if (d < bestd || (d == bestd && m < best)) {
      best = m;
      bestd = d;
    }
  }
  return best;
}

int SeparatingComplexBuilder::walls_between_floor(int wall) const {
  int cnt = 0;
  for (int c : candidates_)
    if (c != wall && wall_separates_wall_from_floor(c, wall)) ++cnt;
  return cnt;
}

bool SeparatingComplexBuilder::wall_separates_wall_from_floor(int w,
                                                              int x) const {
  const auto& sides = wall_sides[w];
  int fs = uniform_side(sides, floor_vids_);
  if (fs == -1) return false;
  for (int e : wall_endpoints(ambient, walls[x]))
    if (sides[e] == fs) return false;
  return true;
}

bool SeparatingComplexBuilder::chain_ok(const std::vector<int>& classes,
                                        std::vector<int>* reps_out) const {
  int k = static_cast<int>(classes.size());
  if (k == 0) return candidates_.empty();
  std::vector<int> reps(k);
  for (int i = 0; i < k; ++i)
    reps[i] = candidate_rep(class_members_.at(classes[i]));
  for (int i = 0; i + 1 < k; ++i)
    if (!wall_separates_wall_from_floor(reps[i], reps[i + 1])) return false;
  int nw = static_cast<int>(walls.size());
  for (int w = 0; w < nw; ++w) {
    const auto& sides = wall_sides[w];
    int fs = uniform_side(sides, floor_vids_);
    int ts = sides[target_vid];
    std::vector<int> rs(k);
    for (int i = 0; i < k; ++i)
      rs[i] = uniform_side(sides, wall_endpoints(ambient, walls[reps[i]]));
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        if (rs[i] == -1 || rs[j] == -1 || rs[i] == rs[j]) continue;
        bool ok = false;
        for (int l = i; l <= j; ++l)
          if (coll_class[w] == classes[l]) ok = true;
        if (!ok) return false;
      }
    if (fs != -1 && rs[0] != -1 && rs[0] != fs && coll_class[w] != classes[0])
      return false;
    if (rs[k - 1] != -1 && ts != rs[k - 1] &&
        coll_class[w] != classes[k - 1])
      return false;
  }
  for (int i = 0; i < k; ++i)
    if (wrap_len[reps[i]] != 0) return false;
  for (int c : candidates_) {
    bool in_chain = false;
    for (int cls : classes)
      if (coll_class[c] == cls) in_chain = true;
    if (in_chain) continue;
    bool crossed = false;
    for (int i = 0; i < k && !crossed; ++i)
      crossed = crosses(ambient, walls[c], walls[reps[i]]);
    if (!crossed) return false;
  }
  if (reps_out) *reps_out = reps;
  return true;
}

void SeparatingComplexBuilder::select_chain() {
  if (stage_ != 3) throw InvariantError("select_chain: wrong stage");
  const DefiningGraph& gg = z.graph();
  candidates_.clear();
  for (int i = 0; i < static_cast<int>(walls.size()); ++i)
    if (!meets_orbit[i]) candidates_.push_back(i);
  for (int c : candidates_) {
    int fs = uniform_side(wall_sides[c], floor_vids_);
    if (fs == -1 || wall_sides[c][target_vid] == fs)
      throw InvariantError("an orbit-free wall fails to separate the floor");
  }
  class_members_.clear();
  for (int c : candidates_) class_members_[coll_class[c]].push_back(c);
  chain.clear();
  transverse.clear();
  std::vector<int> order;
  std::vector<int> reps;
  if (!candidates_.empty()) {
    std::vector<std::pair<int, int>> keyed;  // (depth, class id)
    for (const auto& [cls, members] : class_members_)
      keyed.emplace_back(walls_between_floor(candidate_rep(members)), cls);
    std::sort(keyed.begin(), keyed.end());
    for (auto& [d, cls] : keyed) order.push_back(cls);
    ++stats.chain_attempts;
    if (!chain_ok(order, &reps)) {
      stats.chain_fallback = true;
      int n = static_cast<int>(keyed.size());
      if (n > 16)
        throw ConstructionIncomplete("too many wall classes to search");
      bool found = false;
      for (int s = n; s >= 1 && !found; --s)
        for (std::uint32_t bits = 0; bits < (1u << n) && !found; ++bits) {
          if (__builtin_popcount(bits) != s) continue;
          std::vector<int> subset;
          for (int i = 0; i < n; ++i)
            if (bits >> i & 1) subset.push_back(keyed[i].second);
          std::sort(subset.begin(), subset.end());
          do {
            if (++stats.chain_attempts > 200000)
              throw ConstructionIncomplete("chain search budget exhausted");
            if (chain_ok(subset, &reps)) {
              order = subset;
              found = true;
              break;
            }
          } while (std::next_permutation(subset.begin(), subset.end()));
        }
      if (!found)
        throw ConstructionIncomplete("no valid separating chain exists");
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    ChainEntry e;
    e.wall = reps[i];
    e.members = class_members_.at(order[i]);
    e.chart = frame_chart(ambient, walls[e.wall]);
    if (e.chart.levels() < 2)
      throw InvariantError("chain frame has no segment");
    e.seg_len = e.chart.levels() - 1;
    const auto& sides = wall_sides[e.wall];
    int fs = uniform_side(sides, floor_vids_);
    if (sides[e.chart.side_of(0, e.chart.level_lo)] == fs) {
      e.lvl0 = e.chart.level_lo;
      e.dir = 1;
    } else if (sides[e.chart.side_of(0, e.chart.level_hi)] == fs) {
      e.lvl0 = e.chart.level_hi;
      e.dir = -1;
    } else {
      throw InvariantError("no frame end faces the floor");
    }
    for (int w = 0; w < static_cast<int>(walls.size()); ++w)
      if (meets_orbit[w] && crosses(ambient, walls[e.wall], walls[w]))
        e.interfered = true;
    std::vector<NormalForm> slice_pts;
    for (std::size_t s = 0; s < e.chart.sides.size(); ++s) {
      e.slice0.push_back(e.chart.side_of(s, e.lvl0));
      slice_pts.push_back(ambient.vertex(e.slice0.back()));
    }
    e.side0 = DevelopedComplex::from_vertices(gg, std::move(slice_pts));
    chain.push_back(std::move(e));
  }
  std::set<int> chosen(order.begin(), order.end());
  for (int c : candidates_)
    if (!chosen.count(coll_class[c])) transverse.push_back(c);
  stage_ = 4;
}

void SeparatingComplexBuilder::build_frame_quotients() {
  if (stage_ != 4) throw InvariantError("build_frame_quotients: wrong stage");
  const DefiningGraph& gg = z.graph();
  for (auto& e : chain) {
    e.gate_hull = gate_projection(floor_complex, e.side0);
    // image of the projection under the floor retraction
    std::vector<int> zsorted;
    for (int i = 0; i < e.gate_hull.size(); ++i) {
      int fi = floor_complex.id_of(e.gate_hull.vertex(i));
      if (fi == -1)
        throw InvariantError("gate projection leaves the floor");
      zsorted.push_back(floor_q[fi]);
    }
    std::sort(zsorted.begin(), zsorted.end());
    zsorted.erase(std::unique(zsorted.begin(), zsorted.end()), zsorted.end());
    e.image_verts = zsorted;
    std::map<int, int> a_of;
    for (std::size_t i = 0; i < zsorted.size(); ++i) a_of[zsorted[i]] = i;
    LabeledComplex a(gg, static_cast<int>(zsorted.size()), 0);
    for (const auto& ed : e.gate_hull.edges()) {
      int s = a_of.at(floor_q[floor_complex.id_of(e.gate_hull.vertex(ed.src))]);
      int d = a_of.at(floor_q[floor_complex.id_of(e.gate_hull.vertex(ed.dst))]);
      if (!a.has_edge(s, ed.gen, d)) a.add_edge(s, ed.gen, d);
    }
    if (!check_local_isometry(a).passed())
      throw InvariantError("piece base complex is not a local isometry");
    e.image = a;
    e.completion = canonical_completion(a);
    const LabeledComplex& c = e.completion->complex();
    // develop the level-0 slice over the completion
    e.dev.assign(e.side0.size(), -1);
    {
      const NormalForm& x0 = e.side0.vertex(0);
      int fi = floor_complex.id_of(x0);
      NormalForm gt = fi != -1 ? x0 : gate(gg, x0, floor_complex);
      int fg = floor_complex.id_of(gt);
      if (fg == -1)
        throw InvariantError("slice gate misses the floor");
      e.dev[0] = a_of.at(floor_q[fg]);
    }
    std::vector<int> todo{0};
    for (std::size_t qi = 0; qi < todo.size(); ++qi) {
      int x = todo[qi];
      for (int v = 0; v < gg.size(); ++v)
        for (int sign : {+1, -1}) {
          int y = e.side0.step(x, Letter(v, sign));
          if (y == -1) continue;
          int cy = c.step(e.dev[x], Letter(v, sign));
          if (cy == -1)
            throw InvariantError("completion is not a cover");
          if (e.dev[y] == -1) {
            e.dev[y] = cy;
            todo.push_back(y);
          } else if (e.dev[y] != cy) {
            throw InvariantError("piece development mismatch");
          }
        }
    }
    for (int x = 0; x < e.side0.size(); ++x) {
      if (e.dev[x] == -1)
        throw InvariantError("frame slice is disconnected");
      int fi = floor_complex.id_of(e.side0.vertex(x));
      if (fi != -1 && e.image_verts[e.dev[x]] != floor_q[fi])
        throw InvariantError("development disagrees with the retraction");
    }
    e.used = e.dev;
    std::sort(e.used.begin(), e.used.end());
    e.used.erase(std::unique(e.used.begin(), e.used.end()), e.used.end());
    if (static_cast<int>(e.used.size()) > z.size())
      throw InvariantError("piece level exceeds the domain size");
    // assembled piece, for inspection: one slice copy per level
    std::map<int, int> uidx;
    for (std::size_t i = 0; i < e.used.size(); ++i) uidx[e.used[i]] = i;
    int m = e.seg_len;
    LabeledComplex piece(gg, static_cast<int>(e.used.size()) * (m + 1),
                         uidx.at(e.dev[0]) * (m + 1));
    auto pid = [&](int u, int r) { return uidx.at(u) * (m + 1) + r; };
    for (const auto& ed : e.side0.edges())
      for (int r = 0; r <= m; ++r) {
        int s = pid(e.dev[ed.src], r), d = pid(e.dev[ed.dst], r);
        if (!piece.has_edge(s, ed.gen, d)) piece.add_edge(s, ed.gen, d);
      }
    int label = e.chart.label;
    for (int u : e.used)
      for (int r = 0; r < m; ++r) {
        if (e.dir > 0)
          piece.add_edge(pid(u, r), label, pid(u, r + 1));
        else
          piece.add_edge(pid(u, r + 1), label, pid(u, r));
      }
    e.piece = std::move(piece);
  }
  stage_ = 5;
}

void SeparatingComplexBuilder::glue_and_saturate() {
  if (stage_ != 5) throw InvariantError("glue_and_saturate: wrong stage");
  const DefiningGraph& gg = z.graph();
  int nz = z.size();
  std::vector<int> offset(chain.size());
  int total = nz;
  std::vector<std::map<int, int>> uidx(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    offset[i] = total;
    for (std::size_t u = 0; u < chain[i].used.size(); ++u)
      uidx[i][chain[i].used[u]] = static_cast<int>(u);
    total += static_cast<int>(chain[i].used.size()) * (chain[i].seg_len + 1);
  }
  auto pid = [&](int i, int c, int r) {
    return offset[i] + uidx[i].at(c) * (chain[i].seg_len + 1) + r;
  };
  UnionFind uf(total);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    ChainEntry& e = chain[i];
    bool attached = false;
    if (i == 0) {
      for (int u : e.used) uf.unite(pid(0, u, 0), e.image_verts[u]);
      attached = true;
    } else {
      const ChainEntry& p = chain[i - 1];
      std::map<int, std::pair<int, int>> prev;  // ambient vid -> (side, level)
      for (std::size_t s = 0; s < p.chart.sides.size(); ++s)
        for (int lv = p.chart.level_lo; lv <= p.chart.level_hi; ++lv)
          prev[p.chart.side_of(s, lv)] = {static_cast<int>(s), lv};
      for (std::size_t s = 0; s < e.slice0.size(); ++s) {
        auto it = prev.find(e.slice0[s]);
        if (it == prev.end()) continue;
        auto [ps, plv] = it->second;
        if (p.rel_level(plv) != p.seg_len)
          throw InvariantError("frames overlap away from the top level");
        int pvid = p.side0.id_of(ambient.vertex(p.chart.side_of(ps, p.lvl0)));
        if (pvid == -1)
          throw InvariantError("previous slice misses a side");
        uf.unite(pid(i, e.dev[s], 0), pid(i - 1, p.dev[pvid], p.seg_len));
        attached = true;
      }
    }
    for (std::size_t s = 0; s < e.slice0.size(); ++s) {
      int fi = floor_complex.id_of(ambient.vertex(e.slice0[s]));
      if (fi == -1) continue;
      uf.unite(pid(i, e.dev[s], 0), floor_q[fi]);
      attached = true;
    }
    if (!attached)
      throw ConstructionIncomplete("piece is not attached to the body");
  }
  // all proto edges
  std::vector<std::array<int, 3>> ge;
  for (const auto& ed : z.edges()) ge.push_back({ed.src, ed.gen, ed.dst});
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const ChainEntry& e = chain[i];
    int m = e.seg_len;
    for (const auto& ed : e.side0.edges())
      for (int r = 0; r <= m; ++r)
        ge.push_back(
            {pid(i, e.dev[ed.src], r), ed.gen, pid(i, e.dev[ed.dst], r)});
    for (int u : e.used)
      for (int r = 0; r < m; ++r) {
        if (e.dir > 0)
          ge.push_back({pid(i, u, r), e.chart.label, pid(i, u, r + 1)});
        else
          ge.push_back({pid(i, u, r + 1), e.chart.label, pid(i, u, r)});
      }
  }
  // fold until the edge relation is a partial injection on classes
  for (int guard = 0;; ++guard) {
    if (guard > total + 8)
      throw InvariantError("folding does not terminate");
    bool merged = false;
    std::map<std::pair<int, int>, int> fwd, bwd;
    for (const auto& [s, gen, d] : ge) {
      int rs = uf.find(s), rd = uf.find(d);
      auto f = fwd.find({rs, gen});
      if (f != fwd.end() && uf.find(f->second) != rd) {
        uf.unite(uf.find(f->second), rd);
        ++stats.folds;
        merged = true;
        break;
      }
      fwd[{rs, gen}] = rd;
      auto b = bwd.find({rd, gen});
      if (b != bwd.end() && uf.find(b->second) != rs) {
        uf.unite(uf.find(b->second), rs);
        ++stats.folds;
        merged = true;
        break;
      }
      bwd[{rd, gen}] = rs;
    }
    if (!merged) break;
  }
  std::vector<int> newid(total, -1);
  for (int i = 0; i < nz; ++i) {
    int r = uf.find(i);
    if (r != i)
      throw InvariantError("construction identified distinct domain vertices");
    newid[i] = i;
  }
  int next = nz;
  for (int i = nz; i < total; ++i) {
    int r = uf.find(i);
    if (newid[r] == -1) newid[r] = next++;
    newid[i] = newid[r];
  }
  LabeledComplex out(gg, next, z.base());
  for (const auto& [s, gen, d] : ge) {
    int ns = newid[uf.find(s)], nd = newid[uf.find(d)];
    if (!out.has_edge(ns, gen, nd)) out.add_edge(ns, gen, nd);
  }
  if (!saturate_squares(out, &stats.saturation))
    throw ConstructionIncomplete("saturation stalled with open squares");
  for (const auto& ed : z.edges())
    if (!out.has_edge(ed.src, ed.gen, ed.dst))
      throw InvariantError("domain edges lost in the quotient");
  y = std::move(out);
  stage_ = 6;
}

LabeledComplex SeparatingComplexBuilder::run() {
  setup();
  partition_hyperplanes();
  floor_and_quotient();
  select_chain();
  build_frame_quotients();
  glue_and_saturate();
  return *y;
}

SeparatingComplexBuilder::ChartReport
SeparatingComplexBuilder::verify_region_charts() const {
  ChartReport rep;
  if (stage_ < 3) throw InvariantError("charts need the floor stage");
  if (wrap_classes.empty()) return rep;
  const DefiningGraph& gg = z.graph();
  int nj = static_cast<int>(wrap_classes.size());
  int nf = floor_complex.size();
  // coset membership level of every floor vertex, per wrapping class
  std::vector<std::vector<std::optional<int>>> lvl(
      nj, std::vector<std::optional<int>>(nf));
  for (int j = 0; j < nj; ++j) {
    NormalForm inv = nf_inverse(gg, wrap_classes[j].coset_base);
    std::uint32_t mask = gg.star_mask(wrap_classes[j].label);
    for (int x = 0; x < nf; ++x) {
      NormalForm u = nf_mul(gg, inv, floor_complex.vertex(x));
      if (in_standard_subgroup(gg, u, mask))
        lvl[j][x] = exponent_sum(u, wrap_classes[j].label);
    }
  }
  std::vector<int> lift_vids;
  for (const auto& p : lift.vertices()) lift_vids.push_back(ambient.id_of(p));
  std::set<std::vector<int>> realized;
  for (int x = 0; x < nf; ++x) {
    std::vector<int> idx;
    int ax = ambient.id_of(floor_complex.vertex(x));
    for (int j = 0; j < nj; ++j)
      for (int m : wrap_classes[j].members) {
        int ls = uniform_side(wall_sides[m], lift_vids);
        if (ls != -1 && wall_sides[m][ax] != ls) {
          idx.push_back(j);
          break;
        }
      }
    if (!idx.empty()) realized.insert(idx);
  }
  auto fail = [&](std::string msg) {
    rep.passed = false;
    rep.notes.push_back(std::move(msg));
  };
  auto region = [&](const std::vector<int>& idx) {
    std::vector<int> out;
    for (int x = 0; x < nf; ++x) {
      bool in = true;
      for (int j : idx)
        if (!lvl[j][x]) in = false;
      if (in) out.push_back(x);
    }
    return out;
  };
  auto check_grid = [&](const std::vector<int>& idx,
                        const std::vector<int>& verts, bool full_lines,
                        const std::string& tag) {
    if (verts.empty() || idx.empty()) return;
    std::vector<int> lo(idx.size()), hi(idx.size());
    for (std::size_t t = 0; t < idx.size(); ++t) {
      lo[t] = hi[t] = *lvl[idx[t]][verts[0]];
      for (int x : verts) {
        lo[t] = std::min(lo[t], *lvl[idx[t]][x]);
        hi[t] = std::max(hi[t], *lvl[idx[t]][x]);
      }
      int range = hi[t] - lo[t] + 1;
      int line = static_cast<int>(wrap_classes[idx[t]].line.size());
      if (full_lines && range != line)
        fail(tag + ": level range differs from the class segment");
    }
    std::map<NormalForm, int> residues;
    for (int x : verts) {
      NormalForm yv = floor_complex.vertex(x);
      for (std::size_t t = 0; t < idx.size(); ++t) {
        int d = *lvl[idx[t]][x] - lo[t];
        for (int q = 0; q < d; ++q)
          yv = nf_mul(gg, yv, Letter(wrap_classes[idx[t]].label, -1));
      }
      if (!floor_complex.contains(yv)) {
        fail(tag + ": pushed residue escapes the floor");
        return;
      }
      ++residues[yv];
    }
    long cells = 1;
    for (std::size_t t = 0; t < idx.size(); ++t) cells *= hi[t] - lo[t] + 1;
    for (auto& [r, cnt] : residues)
      if (cnt != cells) {
        fail(tag + ": region is not a full product grid");
        return;
      }
  };
  std::vector<std::vector<int>> rl(realized.begin(), realized.end());
  for (const auto& idx : rl) check_grid(idx, region(idx), true, "region");
  for (std::size_t a = 0; a < rl.size(); ++a)
    for (std::size_t b = a + 1; b < rl.size(); ++b) {
      std::vector<int> common;
      std::set_intersection(rl[a].begin(), rl[a].end(), rl[b].begin(),
                            rl[b].end(), std::back_inserter(common));
      if (common.empty()) continue;
      std::vector<int> ra = region(rl[a]), rb = region(rl[b]), both;
      std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                            std::back_inserter(both));
      if (both.empty()) continue;
      check_grid(common, both, true, "intersection");
    }
  return rep;
}

LabeledComplex theorem_a(const LabeledComplex& z, const NormalForm& g) {
  SeparatingComplexBuilder b(z, g);
  return b.run();
}

VerificationReport verify_theorem_a(const LabeledComplex& z,
                                    const NormalForm& g,
                                    const LabeledComplex& y) {
  VerificationReport r;
  r.subcomplex_ok =
      y.graph() == z.graph() && y.base() == z.base() && y.size() >= z.size();
  if (r.subcomplex_ok)
    for (const auto& e : z.edges())
      if (!y.has_edge(e.src, e.gen, e.dst)) r.subcomplex_ok = false;
  if (!r.subcomplex_ok)
    r.failures.push_back("the domain is not a based subcomplex");
  r.local_isometry_ok = check_local_isometry(y).passed();
  if (!r.local_isometry_ok)
    r.failures.push_back("the result is not a local isometry");
  TraceResult t = trace(y, g.letters(), y.base());
  bool main_ok = t.end.has_value() && !t.closed(y.base());
  bool alts_ok = true;
  const DefiningGraph& gg = y.graph();
  std::vector<Word> alts;
  for (int v = 0; v < gg.size(); ++v)
    for (std::size_t pos : {std::size_t{0}, g.letters().size() / 2,
                            g.letters().size()}) {
      Word w = g.letters();
      w.insert(w.begin() + pos, {Letter(v, 1), Letter(v, -1)});
      alts.push_back(std::move(w));
    }
  {
    Word w = g.letters();
    Word back = inverse_word(g.letters());
    w.insert(w.end(), back.begin(), back.end());
    Word fwd = g.letters();
    w.insert(w.end(), fwd.begin(), fwd.end());
    alts.push_back(std::move(w));
  }
  for (const Word& w : alts) {
    TraceResult tt = trace(y, w, y.base());
    if (tt.closed(y.base())) alts_ok = false;
  }
  r.trace_ok = main_ok && alts_ok;
  if (!r.trace_ok)
    r.failures.push_back("a representative of the target traces closed");
  r.bound_ok = y.size() <= z.size() * (g.length() + 1);
  if (!r.bound_ok) r.failures.push_back("vertex bound exceeded");
  return r;
}

}  // namespace cubesep
