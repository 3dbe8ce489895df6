#pragma once

#include <filesystem>
#include <iosfwd>

#include "sfpd/graph.hpp"

namespace sfpd {

// Edge-list text format:
//   n=<node count>
//   i j        (0-based, i < j, one pair per line, ascending lexicographic)
// Every line is newline-terminated. load() rejects malformed lines,
// self-loops, duplicate edges and out-of-range ids with a FormatError that
// names the offending line; neighbour order is canonicalized on load, so
// load(save(g)) == g.
void save_edgelist(const Graph& g, std::ostream& out);
Graph load_edgelist(std::istream& in);

void save_edgelist_file(const Graph& g, const std::filesystem::path& path);
Graph load_edgelist_file(const std::filesystem::path& path);

}  // namespace sfpd
