#include "cubesep/separability.hpp"

#include <algorithm>
#include <string>

#include "cubesep/errors.hpp"

namespace cubesep {

bool member(const LabeledComplex& z, const NormalForm& g) {
  if (!check_local_isometry(z).passed())
    throw InputError("membership requires a local isometry");
  return trace(z, g.letters(), z.base()).closed(z.base());
}

bool SeparationCertificate::verify() const {
  const LabeledComplex& c = cover.complex();
  if (!c.connected()) return false;
  if (index != cover.degree()) return false;
  if (bound > 0 && index > bound) return false;
  for (const NormalForm& h : subgroup_gens)
    if (cover.act(base, h.letters()) != base) return false;
  return cover.act(base, g.letters()) != base;
}

SeparationCertificate separate(const LabeledComplex& z, const NormalForm& g) {
  LabeledComplex y = theorem_a(z, g);
  VerificationReport rep = verify_theorem_a(z, g, y);
  if (!rep.passed()) {
    std::string msg = "construction verification failed:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    throw InvariantError(msg);
  }
  CoverComplex cover = canonical_completion(y);
  SeparationCertificate cert{std::move(cover), y.base(), pi1_generators(z), g,
                             0, z.size() * (g.length() + 1)};
  cert.index = cert.cover.degree();
  if (!cert.verify())
    throw InvariantError("separation certificate failed verification");
  return cert;
}

SeparationCertificate stallings_separate(const LabeledComplex& z,
                                         const NormalForm& g) {
  const DefiningGraph& gg = z.graph();
  if (!gg.edges().empty())
    throw InputError("the free-product path needs an edgeless graph");
  if (member(z, g)) throw InputError("the target element lies in the subgroup");
  TraceResult t = trace(z, g.letters(), z.base());
  int extra = t.end ? 0 : static_cast<int>(g.letters().size() - t.failed_at);
  LabeledComplex y(gg, z.size() + extra, z.base());
  for (const auto& e : z.edges()) y.add_edge(e.src, e.gen, e.dst);
  if (!t.end) {
    int cur = z.base();
    std::size_t i = 0;
    for (; i < t.failed_at; ++i) cur = y.step(cur, g.letters()[i]);
    int fresh = z.size();
    for (; i < g.letters().size(); ++i, ++fresh) {
      Letter l = g.letters()[i];
      if (l.sign > 0)
        y.add_edge(cur, l.gen, fresh);
      else
        y.add_edge(fresh, l.gen, cur);
      cur = fresh;
    }
  }
  CoverComplex cover = canonical_completion(y);
  SeparationCertificate cert{std::move(cover), y.base(), pi1_generators(z), g,
                             0, z.size() + g.length()};
  cert.index = cert.cover.degree();
  if (!cert.verify())
    throw InvariantError("separation certificate failed verification");
  return cert;
}

namespace {

struct OracleSearch {
  const DefiningGraph& g;
  std::vector<Word> hs;
  Word gw;
  int m;
  long budget;
  long nodes = 0;
  bool hit = false;
  std::vector<std::vector<int>> fwd, bwd;  // [gen][point]
  int used = 1;

  int walk(int p, const Word& w) const {  // -2 when a step is undefined
    for (Letter l : w) {
      p = l.sign > 0 ? fwd[l.gen][p] : bwd[l.gen][p];
      if (p == -1) return -2;
    }
    return p;
  }

  bool consistent() const {
    for (const auto& [u, v] : g.edges())
      for (int p = 0; p < used; ++p) {
        int a = fwd[u][p], b = fwd[v][p];
        if (a == -1 || b == -1) continue;
        int ab = fwd[v][a], ba = fwd[u][b];
        if (ab != -1 && ba != -1 && ab != ba) return false;
      }
    for (const Word& h : hs) {
      int e = walk(0, h);
      if (e >= 0 && e != 0) return false;
    }
    if (walk(0, gw) == 0) return false;
    return true;
  }

  bool dfs() {
    if (++nodes > budget) {
      hit = true;
      return false;
    }
    for (int p = 0; p < used; ++p)
      for (int v = 0; v < g.size(); ++v) {
        if (fwd[v][p] != -1) continue;
        int top = std::min(used, m - 1);
        for (int q = 0; q <= top; ++q) {
          if (q < used && bwd[v][q] != -1) continue;
          fwd[v][p] = q;
          bwd[v][q] = p;
          int saved = used;
          if (q == used) ++used;
          if (consistent() && dfs()) return true;
          used = saved;
          fwd[v][p] = -1;
          bwd[v][q] = -1;
          if (hit) return false;
        }
        return false;
      }
    return used == m && consistent();
  }
};

}  // namespace

OracleResult min_sep_index_oracle(const DefiningGraph& g,
                                  const std::vector<NormalForm>& subgroup,
                                  const NormalForm& target, int m_max,
                                  long budget) {
  if (target.is_identity())
    throw InputError("the trivial element cannot be separated");
  OracleResult res;
  for (int m = 1; m <= m_max; ++m) {
    OracleSearch s{g, {}, target.letters(), m, budget};
    for (const NormalForm& h : subgroup) s.hs.push_back(h.letters());
    s.fwd.assign(g.size(), std::vector<int>(m, -1));
    s.bwd.assign(g.size(), std::vector<int>(m, -1));
    bool found = s.consistent() && s.dfs();
    res.nodes += s.nodes;
    if (found) {
      res.index = m;
      return res;
    }
    if (s.hit) {
      res.budget_hit = true;
      return res;
    }
  }
  return res;
}

GrowthReport sep_growth(const LabeledComplex& z, int n, int m_max,
                        long budget_per_element) {
  const DefiningGraph& gg = z.graph();
  GrowthReport rep;
  rep.n = n;
  std::vector<NormalForm> gens = pi1_generators(z);
  std::vector<NormalForm> ball{NormalForm{}};
  std::size_t lo = 0;
  for (int len = 1; len <= n; ++len) {
    std::size_t hi = ball.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (int v = 0; v < gg.size(); ++v)
        for (int sign : {+1, -1}) {
          NormalForm q = nf_mul(gg, ball[i], Letter(v, sign));
          if (q.length() != len) continue;
          if (std::find(ball.begin() + hi, ball.end(), q) == ball.end())
            ball.push_back(q);
        }
    lo = hi;
  }
  for (const NormalForm& q : ball) {
    if (q.is_identity() || member(z, q)) continue;
    ++rep.tested;
    OracleResult r =
        min_sep_index_oracle(gg, gens, q, m_max, budget_per_element);
    if (!r.index) {
      ++rep.unresolved;
      continue;
    }
    if (*r.index > rep.max_index) {
      rep.max_index = *r.index;
      rep.witness = q;
    }
  }
  return rep;
}

std::vector<NormalForm> short_transversal(const CoverComplex& c, int base) {
  const LabeledComplex& z = c.complex();
  const DefiningGraph& gg = z.graph();
  std::vector<Word> word(z.size());
  std::vector<char> seen(z.size(), 0);
  std::vector<int> order{base};
  seen[base] = 1;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    int x = order[qi];
    for (int v = 0; v < gg.size(); ++v)
      for (int sign : {+1, -1}) {
        int y = z.step(x, Letter(v, sign));
        if (y == -1 || seen[y]) continue;
        seen[y] = 1;
        word[y] = word[x];
        word[y].push_back(Letter(v, sign));
        order.push_back(y);
      }
  }
  if (order.size() != static_cast<std::size_t>(z.size()))
    throw InputError("the cover is not connected");
  std::vector<NormalForm> out(z.size());
  for (int i = 0; i < z.size(); ++i) out[i] = normalize(gg, word[i]);
  return out;
}

}  // namespace cubesep
