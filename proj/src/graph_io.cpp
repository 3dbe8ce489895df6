#include "sfpd/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "sfpd/errors.hpp"

namespace sfpd {

namespace {

bool parse_u32(std::string_view text, std::uint32_t& value) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

// Splits "i j" on single spaces; tolerant of repeated blanks but nothing else.
bool parse_pair(const std::string& line, std::uint32_t& i, std::uint32_t& j) {
  const auto sep = line.find(' ');
  if (sep == std::string::npos) return false;
  auto start2 = line.find_first_not_of(' ', sep);
  if (start2 == std::string::npos) return false;
  return parse_u32(std::string_view(line).substr(0, sep), i) &&
         parse_u32(std::string_view(line).substr(start2), j);
}

}  // namespace

void save_edgelist(const Graph& g, std::ostream& out) {
  out << "n=" << g.node_count() << "\n";
  for (const Edge& e : g.edges()) out << e.a << " " << e.b << "\n";
  if (!out) throw IoError("edge list write failed");
}

Graph load_edgelist(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line))
    throw FormatError("missing 'n=<count>' header", line_no);
  std::uint32_t n = 0;
  if (line.rfind("n=", 0) != 0 || !parse_u32(std::string_view(line).substr(2), n))
    throw FormatError("bad header '" + line + "', expected 'n=<count>'",
                      line_no);

  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    if (!parse_pair(line, i, j))
      throw FormatError("malformed edge line '" + line + "'", line_no);
    if (i == j)
      throw FormatError("self-loop '" + line + "'", line_no);
    if (i >= n || j >= n)
      throw FormatError("node id out of range in '" + line + "' (n=" +
                            std::to_string(n) + ")",
                        line_no);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(i, j)) << 32) | std::max(i, j);
    if (!seen.insert(key).second)
      throw FormatError("duplicate edge '" + line + "'", line_no);
    edges.push_back({i, j});
  }
  return Graph(n, std::move(edges));
}

void save_edgelist_file(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  save_edgelist(g, out);
  out.close();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Graph load_edgelist_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return load_edgelist(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ":" + std::to_string(e.line()) + ": " +
                          e.what(),
                      e.line());
  }
}

}  // namespace sfpd
