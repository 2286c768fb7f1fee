#include "cubesep/graph.hpp"

#include <algorithm>

#include "cubesep/errors.hpp"

namespace cubesep {

DefiningGraph::DefiningGraph(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(names)) {
  if (names_.empty()) throw InputError("graph: no generators declared");
  if (names_.size() > 30) throw InputError("graph: too many generators");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InputError("graph: empty generator name");
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw InputError("graph: duplicate generator '" + names_[i] + "'");
  }
  adj_.assign(names_.size(), 0);
  for (const auto& [a, b] : edges) {
    int u = index(a);
    int v = index(b);
    if (u == v) throw InputError("graph: loop edge at '" + a + "'");
    if (adj_[u] >> v & 1u)
      throw InputError("graph: duplicate edge " + a + " " + b);
    adj_[u] |= 1u << v;
    adj_[v] |= 1u << u;
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
}

int DefiningGraph::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw InputError("unknown generator '" + name + "'");
}

bool DefiningGraph::has(const std::string& name) const {
  for (const auto& n : names_)
    if (n == name) return true;
  return false;
}

std::vector<int> DefiningGraph::link(int v) const {
  std::vector<int> out;
  for (int u = 0; u < size(); ++u)
    if (adj_[v] >> u & 1u) out.push_back(u);
  return out;
}

std::vector<int> DefiningGraph::star(int v) const {
  std::vector<int> out = link(v);
  out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::string letter_name(const DefiningGraph& g, Letter l) {
  std::string s = g.name(l.gen);
  if (l.sign < 0) s += "^-1";
  return s;
}

std::string word_name(const DefiningGraph& g, const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += letter_name(g, w[i]);
  }
  return s;
}

}  // namespace cubesep
