#include "cubesep/io.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "cubesep/errors.hpp"

namespace cubesep {

namespace {

std::vector<std::vector<std::string>> tokenize(std::istream& in,
                                               const std::string& context) {
  std::vector<std::vector<std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  if (in.bad()) throw InputError(context + ": read error");
  return lines;
}

int parse_int(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw InputError(context + ": expected an integer, got '" + s + "'");
  }
  if (pos != s.size())
    throw InputError(context + ": expected an integer, got '" + s + "'");
  return v;
}

}  // namespace

DefiningGraph parse_graph(std::istream& in, const std::string& context) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  bool have_vertices = false;
  for (const auto& toks : tokenize(in, context)) {
    if (toks[0] == "vertices") {
      if (have_vertices)
        throw InputError(context + ": repeated 'vertices' line");
      names.assign(toks.begin() + 1, toks.end());
      have_vertices = true;
    } else if (toks[0] == "edge") {
      if (toks.size() != 3)
        throw InputError(context + ": 'edge' needs two vertex names");
      edges.emplace_back(toks[1], toks[2]);
    } else {
      throw InputError(context + ": unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_vertices)
    throw InputError(context + ": missing 'vertices' line");
  try {
    return DefiningGraph(std::move(names), edges);
  } catch (const InputError& e) {
    throw InputError(context + ": " + e.what());
  }
}

DefiningGraph load_graph(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open graph file '" + file.string() + "'");
  return parse_graph(in, file.string());
}

std::string serialize_graph(const DefiningGraph& g) {
  std::ostringstream out;
  out << "vertices";
  for (const auto& n : g.names()) out << ' ' << n;
  out << '\n';
  for (const auto& [u, v] : g.edges())
    out << "edge " << g.name(u) << ' ' << g.name(v) << '\n';
  return out.str();
}

LabeledComplex parse_complex(std::istream& in, const DefiningGraph& g,
                             const std::string& context) {
  std::set<int> vertices;
  int base = 0;
  bool have_base = false;
  std::vector<std::tuple<int, int, int>> edges;  // (gen, src, dst)
  for (const auto& toks : tokenize(in, context)) {
    if (toks[0] == "graph") {
      continue;  // resolved by the caller
    } else if (toks[0] == "vertex") {
      if (toks.size() != 2)
        throw InputError(context + ": 'vertex' needs one id");
      int id = parse_int(toks[1], context);
      if (!vertices.insert(id).second)
        throw InputError(context + ": repeated vertex id " +
                         std::to_string(id));
    } else if (toks[0] == "base") {
      if (toks.size() != 2 || have_base)
        throw InputError(context + ": 'base' needs exactly one id, once");
      base = parse_int(toks[1], context);
      have_base = true;
    } else if (toks[0] == "edge") {
      if (toks.size() != 4)
        throw InputError(context + ": 'edge' needs generator, source, target");
      int gen = g.index(toks[1]);
      edges.emplace_back(gen, parse_int(toks[2], context),
                         parse_int(toks[3], context));
    } else {
      throw InputError(context + ": unknown directive '" + toks[0] + "'");
    }
  }
  int n = static_cast<int>(vertices.size());
  if (n == 0) throw InputError(context + ": no vertices");
  if (*vertices.begin() != 0 || *vertices.rbegin() != n - 1)
    throw InputError(context + ": vertex ids must be dense, 0..n-1");
  if (base < 0 || base >= n)
    throw InputError(context + ": base vertex out of range");
  LabeledComplex z(g, n, base);
  for (auto [gen, src, dst] : edges) {
    if (src < 0 || src >= n || dst < 0 || dst >= n)
      throw InputError(context + ": edge endpoint out of range");
    try {
      z.add_edge(src, gen, dst);
    } catch (const InvariantError& e) {
      throw InputError(context + ": " + e.what());
    }
  }
  return z;
}

LabeledComplex load_complex(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw InputError("cannot open complex file '" + file.string() + "'");
  std::optional<std::string> graph_ref;
  for (const auto& toks : tokenize(in, file.string()))
    if (toks[0] == "graph") {
      if (toks.size() != 2 || graph_ref)
        throw InputError(file.string() + ": 'graph' needs one path, once");
      graph_ref = toks[1];
    }
  if (!graph_ref)
    throw InputError(file.string() + ": missing 'graph' line");
  DefiningGraph g = load_graph(file.parent_path() / *graph_ref);
  in.clear();
  in.seekg(0);
  return parse_complex(in, g, file.string());
}

std::string serialize_complex(const LabeledComplex& z,
                              const std::string& graph_ref) {
  std::ostringstream out;
  out << "graph " << graph_ref << '\n';
  out << "base " << z.base() << '\n';
  for (int i = 0; i < z.size(); ++i) out << "vertex " << i << '\n';
  for (const auto& e : z.edges())
    out << "edge " << z.graph().name(e.gen) << ' ' << e.src << ' ' << e.dst
        << '\n';
  return out.str();
}

Word parse_word(const DefiningGraph& g, const std::string& text) {
  std::istringstream in(text);
  Word w;
  std::string tok;
  while (in >> tok) {
    int sign = 1;
    std::string name = tok;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      if (tok.substr(caret) != "^-1")
        throw InputError("bad letter '" + tok + "' (use name or name^-1)");
      name = tok.substr(0, caret);
      sign = -1;
    }
    w.push_back(Letter(g.index(name), sign));
  }
  return w;
}

}  // namespace cubesep
