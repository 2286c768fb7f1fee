#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cubesep/graph.hpp"
#include "cubesep/labeled_complex.hpp"

namespace cubesep {

// Graph files: '#' comments, one 'vertices <name>...' line, then
// 'edge <u> <v>' lines.
DefiningGraph parse_graph(std::istream& in, const std::string& context);
DefiningGraph load_graph(const std::filesystem::path& file);
std::string serialize_graph(const DefiningGraph& g);

// Complex files: 'graph <path>' (relative to the complex file), 'base <id>',
// dense 'vertex <id>' lines covering 0..n-1, and 'edge <gen> <src> <dst>'
// lines.
LabeledComplex parse_complex(std::istream& in, const DefiningGraph& g,
                             const std::string& context);
LabeledComplex load_complex(const std::filesystem::path& file);
std::string serialize_complex(const LabeledComplex& z,
                              const std::string& graph_ref);

// Words are whitespace-separated letters: 'a' or 'a^-1'.
Word parse_word(const DefiningGraph& g, const std::string& text);

}  // namespace cubesep
