#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubesep/graph.hpp"
#include "cubesep/normal_form.hpp"

namespace cubesep {

// Square complex mapped to the one-vertex target: a finite vertex set plus
// one partial injection per generator.  Higher cubes are implicit (a k-cube
// sits wherever pairwise-commuting edge germs close into squares), so edges
// and commutation data determine everything.
class LabeledComplex {
 public:
  struct Edge {
    int src;
    int gen;
    int dst;
    bool operator==(const Edge& o) const {
      return src == o.src && gen == o.gen && dst == o.dst;
    }
  };

  LabeledComplex(DefiningGraph g, int vertex_count, int base);

  // Adds sigma_gen(src) = dst; throws InvariantError if this breaks the
  // partial-injection structure.
  void add_edge(int src, int gen, int dst);
  bool has_edge(int src, int gen, int dst) const {
    return fwd_[gen][src] == dst;
  }

  int size() const { return n_; }
  int base() const { return base_; }
  const DefiningGraph& graph() const { return graph_; }

  int forward(int gen, int v) const { return fwd_[gen][v]; }   // -1 if unset
  int backward(int gen, int v) const { return bwd_[gen][v]; }  // -1 if unset
  int step(int v, Letter l) const {
    return l.sign > 0 ? fwd_[l.gen][v] : bwd_[l.gen][v];
  }

  // Edges sorted by (gen, src).
  std::vector<Edge> edges() const;
  int edge_count() const;

  bool connected() const;

  bool operator==(const LabeledComplex& o) const {
    return graph_ == o.graph_ && n_ == o.n_ && base_ == o.base_ &&
           fwd_ == o.fwd_;
  }

 private:
  DefiningGraph graph_;
  int n_;
  int base_;
  std::vector<std::vector<int>> fwd_;  // [gen][vertex]
  std::vector<std::vector<int>> bwd_;
};

// One-vertex complex with a loop per generator (tori implicit on cliques).
LabeledComplex salvetti(const DefiningGraph& g);

struct TraceResult {
  std::optional<int> end;   // defined iff the whole word traced
  std::size_t failed_at{};  // index of the first untraceable letter
  bool closed(int start) const { return end && *end == start; }
};
TraceResult trace(const LabeledComplex& z, const Word& w, int start);

struct LinkViolation {
  int vertex;
  Letter a;
  Letter b;  // germs at vertex whose square fails to close
};
struct LocalIsometryReport {
  std::vector<LinkViolation> violations;
  bool passed() const { return violations.empty(); }
};
// For every vertex and every adjacent generator pair, each pair of defined
// germs must close into a square: b(a(x)) and a(b(x)) defined and equal.
LocalIsometryReport check_local_isometry(const LabeledComplex& z);

// A complex all of whose sigma are total bijections with sigma_v sigma_w =
// sigma_w sigma_v across edges of the graph: a finite cover of the target.
class CoverComplex {
 public:
  // Validates totality, bijectivity and commutation; throws InvariantError.
  static CoverComplex from(LabeledComplex z);

  const LabeledComplex& complex() const { return z_; }
  int degree() const { return z_.size(); }
  int act(int v, const Word& w) const;  // total trace

 private:
  explicit CoverComplex(LabeledComplex z) : z_(std::move(z)) {}
  LabeledComplex z_;
};

// Closes every maximal sigma_v-chain into a cycle (isolated vertices get
// loops).  Input must be a local isometry; the commutation of the result is
// re-verified and failure reported as "input not a local isometry".
CoverComplex canonical_completion(const LabeledComplex& z);

// Free generating data for the fundamental group: one loop word per non-tree
// edge of a breadth-first spanning tree, based at z.base().
std::vector<NormalForm> pi1_generators(const LabeledComplex& z);

}  // namespace cubesep
