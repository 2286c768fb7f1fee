#include "cubesep/development.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <queue>

#include "cubesep/errors.hpp"

namespace cubesep {

namespace {

// Registry keeping graphs referenced by DevelopedComplex alive and unique.
const DefiningGraph* intern_graph(const DefiningGraph& g) {
  static std::vector<std::unique_ptr<DefiningGraph>> pool;
  for (const auto& p : pool)
    if (*p == g) return p.get();
  pool.push_back(std::make_unique<DefiningGraph>(g));
  return pool.back().get();
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void DevelopedComplex::finish() {
  std::sort(verts_.begin(), verts_.end());
  verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
  index_.clear();
  index_.reserve(verts_.size());
  for (int i = 0; i < size(); ++i) index_[verts_[i]] = i;
  const DefiningGraph& g = *graph_;
  nbr_.assign(verts_.size(), std::vector<int>(2 * g.size(), -1));
  edges_.clear();
  for (int i = 0; i < size(); ++i) {
    for (int gen = 0; gen < g.size(); ++gen) {
      Letter l(gen, 1);
      NormalForm q = nf_mul(g, verts_[i], l);
      auto it = index_.find(q);
      if (it == index_.end()) continue;
      edges_.push_back({i, gen, it->second});
      nbr_[i][l.key()] = it->second;
      nbr_[it->second][l.inverse().key()] = i;
    }
  }
}

int DevelopedComplex::id_of(const NormalForm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int DevelopedComplex::step(int vid, Letter l) const {
  return nbr_[vid][l.key()];
}

DevelopedComplex DevelopedComplex::from_vertices(const DefiningGraph& g,
                                                 std::vector<NormalForm> points,
                                                 bool validate) {
  DevelopedComplex d;
  d.graph_ = intern_graph(g);
  d.verts_ = std::move(points);
  d.finish();
  if (validate && !d.verify_convex())
    throw InvariantError("developed complex: vertex set not interval-closed");
  return d;
}

DevelopedComplex DevelopedComplex::hull(const DefiningGraph& g,
                                        std::vector<NormalForm> points,
                                        std::size_t max_vertices) {
  if (points.empty()) throw InputError("hull: empty point set");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::unordered_map<NormalForm, int, NormalFormHash> seen;
  for (const auto& p : points) seen[p] = 1;
  // Incremental interval closure: every unordered pair is processed once.
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) todo.emplace_back(i, j);
  while (!todo.empty()) {
    auto [i, j] = todo.back();
    todo.pop_back();
    for (NormalForm& p : interval(g, points[i], points[j])) {
      if (seen.emplace(p, 1).second) {
        points.push_back(std::move(p));
        if (points.size() > max_vertices)
          throw BudgetExceeded("hull: vertex budget exceeded");
        for (std::size_t k = 0; k + 1 < points.size(); ++k)
          todo.emplace_back(k, points.size() - 1);
      }
    }
  }
  return from_vertices(g, std::move(points), false);
}

DevelopedComplex develop_hull(const DefiningGraph& g,
                              std::vector<NormalForm> points) {
  return DevelopedComplex::hull(g, std::move(points));
}

bool DevelopedComplex::verify_convex() const {
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      for (const NormalForm& p : interval(*graph_, verts_[i], verts_[j]))
        if (!contains(p)) return false;
  return true;
}

std::vector<Hyperplane> hyperplanes_of(const DevelopedComplex& d) {
  const DefiningGraph& g = d.graph();
  const auto& edges = d.edges();
  UnionFind uf(static_cast<int>(edges.size()));
  // Map (src, gen) -> edge id for transport lookups.
  std::unordered_map<long long, int> eid;
  auto ekey = [&](int src, int gen) {
    return static_cast<long long>(src) * g.size() + gen;
  };
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    eid[ekey(edges[e].src, edges[e].gen)] = e;
  // Two parallel edges of an implicit square are identified.
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    int v = edges[e].gen;
    for (int w = 0; w < g.size(); ++w) {
      if (!g.adjacent(v, w)) continue;
      for (int sign : {1, -1}) {
        int a = d.step(edges[e].src, Letter(w, sign));
        int b = d.step(edges[e].dst, Letter(w, sign));
        if (a == -1 || b == -1) continue;
        auto it = eid.find(ekey(a, v));
        if (it != eid.end() && edges[it->second].dst == b)
          uf.unite(e, it->second);
      }
    }
  }
  std::vector<std::vector<int>> members(edges.size());
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    members[uf.find(e)].push_back(e);
  std::vector<Hyperplane> out;
  for (auto& m : members) {
    if (m.empty()) continue;
    Hyperplane h;
    h.label = edges[m[0]].gen;
    for (int e : m) h.dual_sources.push_back(edges[e].src);
    std::sort(h.dual_sources.begin(), h.dual_sources.end());
    h.key = d.vertex(h.dual_sources[0]);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [&](const Hyperplane& a, const Hyperplane& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.key < b.key;
  });
  return out;
}

NormalForm gate(const DefiningGraph& g, const NormalForm& x,
                const DevelopedComplex& d) {
  if (d.size() == 0) throw InputError("gate: empty complex");
  int best = -1, bestd = 0;
  bool tie = false;
  for (int i = 0; i < d.size(); ++i) {
    int dist = distance(g, d.vertex(i), x);
    if (best == -1 || dist < bestd) {
      best = i;
      bestd = dist;
      tie = false;
    } else if (dist == bestd) {
      tie = true;
    }
  }
  if (tie)
    throw InvariantError("gate: nearest point not unique (set not convex?)");
  return d.vertex(best);
}

DevelopedComplex gate_projection(const DevelopedComplex& dst,
                                 const DevelopedComplex& src) {
  std::vector<NormalForm> pts;
  for (int i = 0; i < src.size(); ++i)
    pts.push_back(gate(dst.graph(), src.vertex(i), dst));
  return DevelopedComplex::hull(dst.graph(), std::move(pts));
}

std::vector<int> hyperplane_sides(const DevelopedComplex& d,
                                  const Hyperplane& h) {
  // Remove dual edges, flood the rest; exactly two components by convexity.
  std::vector<std::vector<int>> adj(d.size());
  auto is_dual = [&](int src, int gen) {
    return gen == h.label &&
           std::binary_search(h.dual_sources.begin(), h.dual_sources.end(),
                              src);
  };
  for (const auto& e : d.edges()) {
    if (is_dual(e.src, e.gen)) continue;
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  std::vector<int> side(d.size(), -1);
  auto flood = [&](int start, int tag) {
    std::queue<int> q;
    q.push(start);
    side[start] = tag;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : adj[v])
        if (side[u] == -1) {
          side[u] = tag;
          q.push(u);
        }
    }
  };
  int src0 = h.dual_sources[0];
  flood(src0, 0);
  int dst0 = d.step(src0, Letter(h.label, 1));
  if (side[dst0] != -1)
    throw InvariantError("hyperplane does not separate its complex");
  flood(dst0, 1);
  for (int v = 0; v < d.size(); ++v)
    if (side[v] == -1)
      throw InvariantError("hyperplane removal leaves a stray component");
  return side;
}

bool separates_ids(const DevelopedComplex& d, const Hyperplane& h, int a,
                   int b) {
  std::vector<int> side = hyperplane_sides(d, h);
  return side[a] != side[b];
}

bool separates(const DevelopedComplex& d, const Hyperplane& h,
               const NormalForm& a, const NormalForm& b) {
  int ia = d.id_of(a), ib = d.id_of(b);
  if (ia == -1 || ib == -1) throw InputError("separates: point not in complex");
  return separates_ids(d, h, ia, ib);
}

bool crosses(const DevelopedComplex& d, const Hyperplane& h1,
             const Hyperplane& h2) {
  if (h1.label == h2.label) return false;
  const DefiningGraph& g = d.graph();
  int v = h1.label, w = h2.label;
  if (!g.adjacent(v, w)) return false;
  // Look for a square with one pair of sides in h1, the other in h2.  Class
  // membership of the square's far sides is automatic (square transport).
  for (int x : h1.dual_sources) {
    int xv = d.step(x, Letter(v, 1));
    for (int sign : {1, -1}) {
      int xw = d.step(x, Letter(w, sign));
      int xvw = xv == -1 ? -1 : d.step(xv, Letter(w, sign));
      if (xw == -1 || xvw == -1) continue;
      int wsrc = sign > 0 ? x : xw;
      if (std::binary_search(h2.dual_sources.begin(), h2.dual_sources.end(),
                             wsrc))
        return true;
    }
  }
  return false;
}

NormalForm min_coset_rep(const DefiningGraph& g, const NormalForm& p,
                         std::uint32_t mask) {
  // Greedy descent to the unique nearest point of the convex coset.
  NormalForm x = p;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int gen = 0; gen < g.size() && !moved; ++gen) {
      if (!(mask >> gen & 1u)) continue;
      for (int sign : {1, -1}) {
        NormalForm y = nf_mul(g, x, Letter(gen, sign));
        if (y.length() < x.length()) {
          x = y;
          moved = true;
          break;
        }
      }
    }
  }
  return x;
}

bool same_global(const DefiningGraph& g, const Hyperplane& h1,
                 const Hyperplane& h2) {
  if (h1.label != h2.label) return false;
  NormalForm diff = nf_mul(g, nf_inverse(g, h1.key), h2.key);
  return in_standard_subgroup(g, diff, g.link_mask(h1.label));
}

bool collateral(const DefiningGraph& g, const Hyperplane& h1,
                const Hyperplane& h2) {
  if (h1.label != h2.label) return false;
  NormalForm diff = nf_mul(g, nf_inverse(g, h1.key), h2.key);
  return in_standard_subgroup(g, diff, g.star_mask(h1.label));
}

FrameChart frame_chart(const DevelopedComplex& d, const Hyperplane& h) {
  const DefiningGraph& g = d.graph();
  FrameChart c;
  c.label = h.label;
  c.base = h.key;
  NormalForm base_inv = nf_inverse(g, c.base);
  std::uint32_t star = g.star_mask(h.label);
  // Factor every frame vertex as base * (link part) * label^level.
  struct Entry {
    NormalForm side;
    int level;
    int vid;
  };
  std::vector<Entry> entries;
  int lo = 0, hi = 0;
  for (int i = 0; i < d.size(); ++i) {
    NormalForm u = nf_mul(g, base_inv, d.vertex(i));
    if (!in_standard_subgroup(g, u, star)) continue;
    int level = exponent_sum(u, h.label);
    NormalForm side = delete_generators(g, u, 1u << h.label);
    entries.push_back({std::move(side), level, i});
    lo = std::min(lo, level);
    hi = std::max(hi, level);
  }
  c.level_lo = lo;
  c.level_hi = hi;
  for (const auto& e : entries) c.sides.push_back(e.side);
  std::sort(c.sides.begin(), c.sides.end());
  c.sides.erase(std::unique(c.sides.begin(), c.sides.end()), c.sides.end());
  c.grid.assign(c.sides.size(), std::vector<int>(c.levels(), -1));
  for (const auto& e : entries) {
    auto it = std::lower_bound(c.sides.begin(), c.sides.end(), e.side);
    c.grid[it - c.sides.begin()][e.level - lo] = e.vid;
  }
  for (const auto& row : c.grid)
    for (int v : row)
      if (v == -1)
        throw InvariantError("frame: star coset is not a full product grid");
  return c;
}

FrameData frame_in(const DevelopedComplex& d, const Hyperplane& h) {
  FrameChart c = frame_chart(d, h);
  // The key vertex has side component = identity, level 0.
  auto it = std::lower_bound(c.sides.begin(), c.sides.end(), NormalForm());
  if (it == c.sides.end() || !(*it == NormalForm()))
    throw InvariantError("frame: key vertex missing from its own chart");
  int s = static_cast<int>(it - c.sides.begin());
  FrameData f;
  f.hyperplane = h;
  f.line_label = h.label;
  f.segment_length = c.level_hi - c.level_lo;
  f.line_base = d.vertex(c.side_of(s, c.level_lo));
  return f;
}

}  // namespace cubesep
