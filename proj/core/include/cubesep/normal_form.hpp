#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cubesep/graph.hpp"

namespace cubesep {

// Canonical representative of a group element: the shortlex-least geodesic
// word.  Only normalize() and friends construct non-trivial instances, so two
// NormalForms compare equal iff they represent the same element.
class NormalForm {
 public:
  NormalForm() = default;

  const Word& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  bool operator==(const NormalForm& o) const { return letters_ == o.letters_; }
  bool operator!=(const NormalForm& o) const { return !(*this == o); }
  // Shortlex: length first, then letter keys.
  bool operator<(const NormalForm& o) const;

  std::size_t hash() const;

 private:
  friend NormalForm normalize(const DefiningGraph&, Word);
  explicit NormalForm(Word w) : letters_(std::move(w)) {}
  Word letters_;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& n) const { return n.hash(); }
};

// Shortlex-least geodesic word for the element spelled by w.
NormalForm normalize(const DefiningGraph& g, Word w);

NormalForm nf_mul(const DefiningGraph& g, const NormalForm& a,
                  const NormalForm& b);
NormalForm nf_mul(const DefiningGraph& g, const NormalForm& a, Letter l);
NormalForm nf_inverse(const DefiningGraph& g, const NormalForm& a);
// Word metric d(a, b) = |a^-1 b|.
int distance(const DefiningGraph& g, const NormalForm& a, const NormalForm& b);

// Distinct first letters over all geodesic words for a (ascending by key).
std::vector<Letter> initial_letters(const DefiningGraph& g,
                                    const NormalForm& a);

// All vertices lying on geodesics from a to b, sorted shortlex.
std::vector<NormalForm> interval(const DefiningGraph& g, const NormalForm& a,
                                 const NormalForm& b);

// Membership in the special subgroup generated by the generator set `mask`
// (bit i = generator i).  True iff every letter of a lies in the set.
bool in_standard_subgroup(const DefiningGraph& g, const NormalForm& a,
                          std::uint32_t mask);

// Letters of `mask`-generators deleted, then renormalized.  For mask =
// star(v) this is the projection killing v; only meaningful when a lies in a
// special subgroup where the deleted generators are central, which is the
// only way it is used.
NormalForm delete_generators(const DefiningGraph& g, const NormalForm& a,
                             std::uint32_t delete_mask);

// Sum of exponents of generator v in a.
int exponent_sum(const NormalForm& a, int v);

}  // namespace cubesep
