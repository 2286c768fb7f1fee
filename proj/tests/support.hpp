#pragma once
// Shared test helpers: tiny builders, independent oracles, seeded random
// instance generators.  Nothing here calls into the code paths it is used to
// check: the normal-form oracle is a plain word-rewriting closure, and the
// facing-triple scan works from hyperplane sides only.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cubesep/construction.hpp"
#include "cubesep/development.hpp"
#include "cubesep/errors.hpp"
#include "cubesep/graph.hpp"
#include "cubesep/io.hpp"
#include "cubesep/labeled_complex.hpp"
#include "cubesep/normal_form.hpp"
#include "cubesep/separability.hpp"

namespace cubesep::testing {

inline DefiningGraph mg(
    std::vector<std::string> names,
    std::vector<std::pair<std::string, std::string>> edges = {}) {
  return DefiningGraph(std::move(names), edges);
}

inline DefiningGraph graph_z() { return mg({"v"}); }
inline DefiningGraph graph_z2() { return mg({"a", "b"}, {{"a", "b"}}); }
inline DefiningGraph graph_f2() { return mg({"a", "b"}); }
inline DefiningGraph graph_f3() { return mg({"a", "b", "c"}); }
inline DefiningGraph graph_path3() {
  return mg({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
}

inline Word pw(const DefiningGraph& g, const std::string& text) {
  return parse_word(g, text);
}

inline NormalForm nf(const DefiningGraph& g, const std::string& text) {
  return normalize(g, parse_word(g, text));
}

// sigma_gen cycle 0 -> 1 -> ... -> n-1 -> 0
inline LabeledComplex cycle_complex(const DefiningGraph& g, int gen, int n) {
  LabeledComplex z(g, n, 0);
  for (int i = 0; i < n; ++i) z.add_edge(i, gen, (i + 1) % n);
  return z;
}

inline LabeledComplex loop_complex(const DefiningGraph& g, int gen) {
  return cycle_complex(g, gen, 1);
}

// ---------------------------------------------------------------------------
// Independent normal-form oracle: breadth-first closure of a word under
// adjacent commuting swaps and adjacent inverse-pair cancellations.  The
// closure contains every geodesic spelling of the element, so the
// shortlex-least member of minimal length is the canonical representative.

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].key() != b[i].key()) return a[i].key() < b[i].key();
  return false;
}

inline std::string word_code(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(static_cast<char>('a' + l.key()));
  return s;
}

inline Word oracle_normal_form(const DefiningGraph& g, const Word& start) {
  std::unordered_set<std::string> seen{word_code(start)};
  std::vector<Word> stack{start};
  Word best = start;
  while (!stack.empty()) {
    Word w = std::move(stack.back());
    stack.pop_back();
    if (shortlex_less(w, best)) best = w;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i + 1] == w[i].inverse()) {
        Word next(w.begin(), w.begin() + i);
        next.insert(next.end(), w.begin() + i + 2, w.end());
        if (seen.insert(word_code(next)).second) stack.push_back(next);
      }
      if (w[i].gen != w[i + 1].gen && g.adjacent(w[i].gen, w[i + 1].gen)) {
        Word next = w;
        std::swap(next[i], next[i + 1]);
        if (seen.insert(word_code(next)).second) stack.push_back(next);
      }
    }
  }
  return best;
}

// every word of length 1..maxlen over the signed alphabet of g
inline std::vector<Word> all_words(const DefiningGraph& g, int maxlen) {
  std::vector<Word> out;
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int v = 0; v < g.size(); ++v)
        for (int s : {1, -1}) {
          Word e = w;
          e.push_back(Letter(v, s));
          next.push_back(std::move(e));
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Facing-triple scan, from hyperplane sides only.

inline std::vector<int> wall_vertex_ids(const DevelopedComplex& d,
                                        const Hyperplane& h) {
  std::vector<int> out;
  for (int s : h.dual_sources) {
    out.push_back(s);
    out.push_back(d.step(s, Letter(h.label, 1)));
  }
  return out;
}

// h separates every endpoint of h1 from every endpoint of h2
inline bool wall_separates_walls(const DevelopedComplex& d,
                                 const Hyperplane& h, const Hyperplane& h1,
                                 const Hyperplane& h2) {
  std::vector<int> sides = hyperplane_sides(d, h);
  int s1 = -1, s2 = -1;
  for (int v : wall_vertex_ids(d, h1)) {
    if (s1 == -1) s1 = sides[v];
    if (sides[v] != s1) return false;
  }
  for (int v : wall_vertex_ids(d, h2)) {
    if (s2 == -1) s2 = sides[v];
    if (sides[v] != s2) return false;
  }
  return s1 != s2;
}

// pairwise-disjoint triples in which no member separates the other two
inline int facing_triple_count(const DevelopedComplex& d,
                               const std::vector<Hyperplane>& walls) {
  int count = 0;
  int m = static_cast<int>(walls.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (crosses(d, walls[i], walls[j])) continue;
      for (int k = j + 1; k < m; ++k) {
        if (crosses(d, walls[i], walls[k])) continue;
        if (crosses(d, walls[j], walls[k])) continue;
        if (!wall_separates_walls(d, walls[i], walls[j], walls[k]) &&
            !wall_separates_walls(d, walls[j], walls[i], walls[k]) &&
            !wall_separates_walls(d, walls[k], walls[i], walls[j]))
          ++count;
      }
    }
  return count;
}

// ---------------------------------------------------------------------------
// Seeded random instances.

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) { return static_cast<int>(rng() % n); }

inline Word random_word(const DefiningGraph& g, Rng& rng, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.push_back(Letter(pick(rng, g.size()), pick(rng, 2) ? 1 : -1));
  return w;
}

inline DefiningGraph random_graph(Rng& rng, int max_gens) {
  static const std::vector<std::string> pool{"a", "b", "c", "d"};
  int k = 1 + pick(rng, max_gens);
  std::vector<std::string> names(pool.begin(), pool.begin() + k);
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (pick(rng, 2)) edges.emplace_back(pool[i], pool[j]);
  return DefiningGraph(names, edges);
}

// Connected local isometry on n vertices: random spanning tree, a sprinkle of
// extra sigma entries, then square saturation; draws the saturation cannot
// finish are rejected.
inline std::optional<LabeledComplex> random_li_complex(const DefiningGraph& g,
                                                       int n, Rng& rng) {
  LabeledComplex z(g, n, 0);
  for (int v = 1; v < n; ++v) {
    bool placed = false;
    for (int t = 0; t < 40 && !placed; ++t) {
      int u = pick(rng, v);
      int gen = pick(rng, g.size());
      if (pick(rng, 2)) {
        if (z.forward(gen, u) == -1) {
          z.add_edge(u, gen, v);
          placed = true;
        }
      } else {
        if (z.backward(gen, u) == -1) {
          z.add_edge(v, gen, u);
          placed = true;
        }
      }
    }
    if (!placed) return std::nullopt;
  }
  int extras = pick(rng, n + 2);
  for (int t = 0; t < extras; ++t) {
    int s = pick(rng, n), d = pick(rng, n), gen = pick(rng, g.size());
    if (z.forward(gen, s) == -1 && z.backward(gen, d) == -1)
      z.add_edge(s, gen, d);
  }
  try {
    if (!saturate_squares(z)) return std::nullopt;
  } catch (const InvariantError&) {
    return std::nullopt;
  }
  if (!check_local_isometry(z).passed()) return std::nullopt;
  return z;
}

inline std::optional<NormalForm> random_nonmember(const LabeledComplex& z,
                                                  Rng& rng, int maxlen,
                                                  int tries = 60) {
  for (int t = 0; t < tries; ++t) {
    NormalForm cand =
        normalize(z.graph(), random_word(z.graph(), rng, 1 + pick(rng, maxlen)));
    if (cand.is_identity() || member(z, cand)) continue;
    return cand;
  }
  return std::nullopt;
}

}  // namespace cubesep::testing
