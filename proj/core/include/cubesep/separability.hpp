#pragma once

#include <optional>
#include <vector>

#include "cubesep/construction.hpp"
#include "cubesep/labeled_complex.hpp"

namespace cubesep {

// Membership of g in the subgroup carried by z.  Requires z to be a local
// isometry, where membership is equivalent to the normal form tracing closed.
bool member(const LabeledComplex& z, const NormalForm& g);

// A finite cover of the target complex whose base-vertex stabilizer contains
// the subgroup generators but not g; its degree is the separating index.
struct SeparationCertificate {
  CoverComplex cover;
  int base;
  std::vector<NormalForm> subgroup_gens;
  NormalForm g;
  int index;  // = cover.degree()
  int bound;  // producer's a-priori bound on the index (0 = none)

  bool verify() const;
};

// Separates g from the subgroup carried by z; index <= |z0| (|g|+1).
SeparationCertificate separate(const LabeledComplex& z, const NormalForm& g);

// Free-product fast path for edgeless defining graphs: extend z by a fresh
// path tracing the tail of g; index <= |z0| + |g|.
SeparationCertificate stallings_separate(const LabeledComplex& z,
                                         const NormalForm& g);

// Exact minimum index of a subgroup containing all `subgroup` elements but
// not `target`, over indices 1..m_max, by low-index search on permutation
// tables (points introduced in ascending order, commuting generators must
// commute, subgroup words fix 0, target must move 0).
struct OracleResult {
  std::optional<int> index;  // empty: none within m_max, or budget hit
  bool budget_hit = false;
  long nodes = 0;
};
OracleResult min_sep_index_oracle(const DefiningGraph& g,
                                  const std::vector<NormalForm>& subgroup,
                                  const NormalForm& target, int m_max,
                                  long budget = 2'000'000);

// Max oracle index over all normal forms of length <= n outside the
// subgroup.
struct GrowthReport {
  int n = 0;
  int max_index = 0;
  std::optional<NormalForm> witness;
  int tested = 0;
  int unresolved = 0;  // oracle budget exhaustions
};
GrowthReport sep_growth(const LabeledComplex& z, int n, int m_max,
                        long budget_per_element = 2'000'000);

// One representative word per vertex (coset of the base stabilizer), via
// breadth-first search; words are normalized, which is endpoint-safe in a
// cover.
std::vector<NormalForm> short_transversal(const CoverComplex& c, int base);

}  // namespace cubesep
