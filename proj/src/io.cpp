#include "tksub/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tksub {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw std::runtime_error("edge list line " + std::to_string(line) + ": " + what);
}

bool is_blank_or_comment(const std::string& s) {
  for (char c : s) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

EdgeListData read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    if (n < 0) {
      std::string tag;
      if (!(fields >> tag >> n >> m) || tag != "p" || n < 0 || m < 0)
        parse_error(lineno, "expected header 'p <n> <m>'");
      continue;
    }
    long long u = 0;
    long long v = 0;
    if (!(fields >> u >> v)) parse_error(lineno, "expected '<u> <v>'");
    std::string trailing;
    if (fields >> trailing) parse_error(lineno, "unexpected trailing token '" + trailing + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) parse_error(lineno, "vertex id out of range");
    if (u == v) parse_error(lineno, "self-loop");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (n < 0) throw std::runtime_error("edge list: missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw std::runtime_error("edge list: header announces " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()));
  EdgeListData data;
  data.graph = Graph::from_edges(static_cast<std::size_t>(n), edges, &data.duplicates);
  return data;
}

EdgeListData load_edge_list(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "p " << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_edge_list(const std::filesystem::path& file, const Graph& g) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_edge_list(out, g);
}

}  // namespace tksub
