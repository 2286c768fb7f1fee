#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cubesep {

// Finite simplicial graph on named generators.  Vertex order is declaration
// order and fixes the letter order used by normal forms everywhere else.
class DefiningGraph {
 public:
  DefiningGraph(std::vector<std::string> names,
                const std::vector<std::pair<std::string, std::string>>& edges);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  // Throws InputError for unknown names.
  int index(const std::string& name) const;
  bool has(const std::string& name) const;

  bool adjacent(int u, int v) const {
    return u != v && (adj_[u] >> v & 1u) != 0;
  }
  // Neighbours of v, ascending.
  std::vector<int> link(int v) const;
  // link(v) plus v itself, ascending.
  std::vector<int> star(int v) const;
  std::uint32_t link_mask(int v) const { return adj_[v]; }
  std::uint32_t star_mask(int v) const { return adj_[v] | (1u << v); }
  std::uint32_t full_mask() const { return (1u << size()) - 1u; }

  // Edges as index pairs (u < v), in declaration order of first appearance.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool operator==(const DefiningGraph& o) const {
    return names_ == o.names_ && adj_ == o.adj_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::pair<int, int>> edges_;
};

// One signed generator occurrence.
struct Letter {
  std::int8_t gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  Letter() = default;
  Letter(int g, int s) : gen(static_cast<std::int8_t>(g)),
                         sign(static_cast<std::int8_t>(s)) {}

  Letter inverse() const { return Letter(gen, -sign); }
  // Total order: v < v^-1 < w < w^-1 for v declared before w.
  int key() const { return 2 * gen + (sign < 0 ? 1 : 0); }

  bool operator==(const Letter& o) const {
    return gen == o.gen && sign == o.sign;
  }
  bool operator!=(const Letter& o) const { return !(*this == o); }
  bool operator<(const Letter& o) const { return key() < o.key(); }
};

using Word = std::vector<Letter>;

Word inverse_word(const Word& w);
std::string letter_name(const DefiningGraph& g, Letter l);
std::string word_name(const DefiningGraph& g, const Word& w);

}  // namespace cubesep
