#include "cubesep/labeled_complex.hpp"

#include <algorithm>
#include <queue>

#include "cubesep/errors.hpp"

namespace cubesep {

LabeledComplex::LabeledComplex(DefiningGraph g, int vertex_count, int base)
    : graph_(std::move(g)), n_(vertex_count), base_(base) {
  if (n_ <= 0) throw InputError("complex: vertex count must be positive");
  if (base_ < 0 || base_ >= n_) throw InputError("complex: base out of range");
  fwd_.assign(graph_.size(), std::vector<int>(n_, -1));
  bwd_.assign(graph_.size(), std::vector<int>(n_, -1));
}

void LabeledComplex::add_edge(int src, int gen, int dst) {
  if (src < 0 || src >= n_ || dst < 0 || dst >= n_ || gen < 0 ||
      gen >= graph_.size())
    throw InputError("complex: edge out of range");
  if (fwd_[gen][src] == dst) return;
  if (fwd_[gen][src] != -1)
    throw InvariantError("sigma_" + graph_.name(gen) +
                         " already defined at vertex " + std::to_string(src));
  if (bwd_[gen][dst] != -1)
    throw InvariantError("sigma_" + graph_.name(gen) +
                         " not injective at vertex " + std::to_string(dst));
  fwd_[gen][src] = dst;
  bwd_[gen][dst] = src;
}

std::vector<LabeledComplex::Edge> LabeledComplex::edges() const {
  std::vector<Edge> out;
  for (int g = 0; g < graph_.size(); ++g)
    for (int v = 0; v < n_; ++v)
      if (fwd_[g][v] != -1) out.push_back({v, g, fwd_[g][v]});
  return out;
}

int LabeledComplex::edge_count() const {
  int c = 0;
  for (int g = 0; g < graph_.size(); ++g)
    for (int v = 0; v < n_; ++v)
      if (fwd_[g][v] != -1) ++c;
  return c;
}

bool LabeledComplex::connected() const {
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(base_);
  seen[base_] = 1;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int g = 0; g < graph_.size(); ++g) {
      for (int u : {fwd_[g][v], bwd_[g][v]}) {
        if (u != -1 && !seen[u]) {
          seen[u] = 1;
          ++count;
          q.push(u);
        }
      }
    }
  }
  return count == n_;
}

LabeledComplex salvetti(const DefiningGraph& g) {
  LabeledComplex z(g, 1, 0);
  for (int i = 0; i < g.size(); ++i) z.add_edge(0, i, 0);
  return z;
}

TraceResult trace(const LabeledComplex& z, const Word& w, int start) {
  int v = start;
  for (std::size_t i = 0; i < w.size(); ++i) {
    v = z.step(v, w[i]);
    if (v == -1) return {std::nullopt, i};
  }
  return {v, w.size()};
}

LocalIsometryReport check_local_isometry(const LabeledComplex& z) {
  LocalIsometryReport report;
  const DefiningGraph& g = z.graph();
  for (int x = 0; x < z.size(); ++x) {
    for (int v = 0; v < g.size(); ++v) {
      for (int w = v + 1; w < g.size(); ++w) {
        if (!g.adjacent(v, w)) continue;
        for (int sv : {1, -1}) {
          for (int sw : {1, -1}) {
            Letter a(v, sv), b(w, sw);
            int ax = z.step(x, a), bx = z.step(x, b);
            if (ax == -1 || bx == -1) continue;
            int bax = z.step(ax, b), abx = z.step(bx, a);
            if (bax == -1 || abx == -1 || bax != abx)
              report.violations.push_back({x, a, b});
          }
        }
      }
    }
  }
  return report;
}

CoverComplex CoverComplex::from(LabeledComplex z) {
  const DefiningGraph& g = z.graph();
  for (int gen = 0; gen < g.size(); ++gen)
    for (int v = 0; v < z.size(); ++v)
      if (z.forward(gen, v) == -1 || z.backward(gen, v) == -1)
        throw InvariantError("cover: sigma_" + g.name(gen) + " not total");
  for (const auto& [u, v] : g.edges()) {
    for (int x = 0; x < z.size(); ++x) {
      if (z.forward(u, z.forward(v, x)) != z.forward(v, z.forward(u, x)))
        throw InvariantError("cover: sigma_" + g.name(u) + " and sigma_" +
                             g.name(v) + " do not commute");
    }
  }
  return CoverComplex(std::move(z));
}

int CoverComplex::act(int v, const Word& w) const {
  for (const Letter& l : w) v = z_.step(v, l);
  return v;
}

CoverComplex canonical_completion(const LabeledComplex& z) {
  const DefiningGraph& g = z.graph();
  LabeledComplex out = z;
  for (int gen = 0; gen < g.size(); ++gen) {
    // Chain heads in vertex order; each maximal chain closes tail -> head.
    for (int head = 0; head < z.size(); ++head) {
      if (out.backward(gen, head) != -1) continue;
      int tail = head;
      while (out.forward(gen, tail) != -1) tail = out.forward(gen, tail);
      out.add_edge(tail, gen, head);
    }
  }
  for (const auto& [u, v] : g.edges()) {
    for (int x = 0; x < out.size(); ++x) {
      if (out.forward(u, out.forward(v, x)) !=
          out.forward(v, out.forward(u, x)))
        throw InvariantError("canonical_completion: input not a local isometry");
    }
  }
  return CoverComplex::from(std::move(out));
}

std::vector<NormalForm> pi1_generators(const LabeledComplex& z) {
  const DefiningGraph& g = z.graph();
  // Breadth-first spanning tree from the base; deterministic order.
  std::vector<Word> path(z.size());
  std::vector<char> seen(z.size(), 0);
  std::vector<LabeledComplex::Edge> tree;
  std::queue<int> q;
  q.push(z.base());
  seen[z.base()] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int gen = 0; gen < g.size(); ++gen) {
      for (int sign : {1, -1}) {
        int u = z.step(v, Letter(gen, sign));
        if (u == -1 || seen[u]) continue;
        seen[u] = 1;
        path[u] = path[v];
        path[u].push_back(Letter(gen, sign));
        tree.push_back(sign > 0 ? LabeledComplex::Edge{v, gen, u}
                                : LabeledComplex::Edge{u, gen, v});
        q.push(u);
      }
    }
  }
  std::vector<NormalForm> gens;
  for (const auto& e : z.edges()) {
    if (std::find(tree.begin(), tree.end(), e) != tree.end()) continue;
    Word w = path[e.src];
    w.push_back(Letter(e.gen, 1));
    Word back = inverse_word(path[e.dst]);
    w.insert(w.end(), back.begin(), back.end());
    gens.push_back(normalize(g, std::move(w)));
  }
  return gens;
}

}  // namespace cubesep
