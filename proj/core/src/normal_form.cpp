#include "cubesep/normal_form.hpp"

#include <algorithm>
#include <unordered_set>

#include "cubesep/errors.hpp"

namespace cubesep {

bool NormalForm::operator<(const NormalForm& o) const {
  if (letters_.size() != o.letters_.size())
    return letters_.size() < o.letters_.size();
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    int a = letters_[i].key(), b = o.letters_[i].key();
    if (a != b) return a < b;
  }
  return false;
}

std::size_t NormalForm::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const Letter& l : letters_)
    h = h * 1099511628211ull + static_cast<std::size_t>(l.key() + 1);
  return h;
}

namespace {

// A word is geodesic iff it has no pair x ... x^-1 whose in-between letters
// all commute with x.  Cancel such pairs until none remain.
void reduce_to_geodesic(const DefiningGraph& g, Word& w) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < w.size() && !again; ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j].gen == w[i].gen) {
          if (w[j].sign == -w[i].sign) {
            w.erase(w.begin() + j);
            w.erase(w.begin() + i);
            again = true;
          }
          break;  // same generator blocks any further shuffle of w[i]
        }
        if (!g.adjacent(w[i].gen, w[j].gen)) break;
      }
    }
  }
}

// Positions whose letter can be shuffled to the front of w.
bool movable_to_front(const DefiningGraph& g, const Word& w, std::size_t i) {
  for (std::size_t j = 0; j < i; ++j) {
    if (w[j].gen == w[i].gen || !g.adjacent(w[j].gen, w[i].gen)) return false;
  }
  return true;
}

}  // namespace

NormalForm normalize(const DefiningGraph& g, Word w) {
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= g.size() || (l.sign != 1 && l.sign != -1))
      throw InputError("normalize: letter out of range");
  }
  reduce_to_geodesic(g, w);
  // Greedy shortlex linearization: repeatedly extract the least letter that
  // can be shuffled to the front.  All geodesic words for an element are
  // shuffle-equivalent, so this is canonical.
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::size_t best = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!movable_to_front(g, w, i)) continue;
      if (best == w.size() || w[i].key() < w[best].key()) best = i;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  return NormalForm(std::move(out));
}

NormalForm nf_mul(const DefiningGraph& g, const NormalForm& a,
                  const NormalForm& b) {
  Word w = a.letters();
  w.insert(w.end(), b.letters().begin(), b.letters().end());
  return normalize(g, std::move(w));
}

NormalForm nf_mul(const DefiningGraph& g, const NormalForm& a, Letter l) {
  Word w = a.letters();
  w.push_back(l);
  return normalize(g, std::move(w));
}

NormalForm nf_inverse(const DefiningGraph& g, const NormalForm& a) {
  return normalize(g, inverse_word(a.letters()));
}

int distance(const DefiningGraph& g, const NormalForm& a,
             const NormalForm& b) {
  Word w = inverse_word(a.letters());
  w.insert(w.end(), b.letters().begin(), b.letters().end());
  return normalize(g, std::move(w)).length();
}

std::vector<Letter> initial_letters(const DefiningGraph& g,
                                    const NormalForm& a) {
  const Word& w = a.letters();
  std::vector<Letter> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (movable_to_front(g, w, i)) out.push_back(w[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<NormalForm> interval(const DefiningGraph& g, const NormalForm& a,
                                 const NormalForm& b) {
  // Walk geodesic prefixes of a^-1 b from the identity, then translate by a.
  NormalForm goal = nf_mul(g, nf_inverse(g, a), b);
  std::unordered_set<NormalForm, NormalFormHash> seen;
  std::vector<std::pair<NormalForm, NormalForm>> frontier;  // (prefix, rest)
  frontier.emplace_back(NormalForm(), goal);
  seen.insert(NormalForm());
  std::vector<NormalForm> points;
  while (!frontier.empty()) {
    std::vector<std::pair<NormalForm, NormalForm>> next;
    for (auto& [p, rest] : frontier) {
      points.push_back(nf_mul(g, a, p));
      for (Letter l : initial_letters(g, rest)) {
        NormalForm p2 = nf_mul(g, p, l);
        if (seen.insert(p2).second) {
          Word r = rest.letters();
          r.insert(r.begin(), l.inverse());
          next.emplace_back(p2, normalize(g, std::move(r)));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(points.begin(), points.end());
  return points;
}

bool in_standard_subgroup(const DefiningGraph& g, const NormalForm& a,
                          std::uint32_t mask) {
  (void)g;
  for (const Letter& l : a.letters())
    if (!(mask >> l.gen & 1u)) return false;
  return true;
}

NormalForm delete_generators(const DefiningGraph& g, const NormalForm& a,
                             std::uint32_t delete_mask) {
  Word w;
  for (const Letter& l : a.letters())
    if (!(delete_mask >> l.gen & 1u)) w.push_back(l);
  return normalize(g, std::move(w));
}

int exponent_sum(const NormalForm& a, int v) {
  int s = 0;
  for (const Letter& l : a.letters())
    if (l.gen == v) s += l.sign;
  return s;
}

}  // namespace cubesep
