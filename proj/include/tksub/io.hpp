#pragma once

#include <filesystem>
#include <iosfwd>

#include "tksub/graph.hpp"

namespace tksub {

/// Edge-list text: a header "p <n> <m>", then m lines "<u> <v>" (0-based).
/// Lines starting with '#' are comments. Duplicate edges are collapsed and
/// counted; out-of-range ids and self-loops are rejected.
struct EdgeListData {
  Graph graph;
  std::size_t duplicates = 0;
};

/// Throws std::runtime_error with the offending line number on malformed input.
EdgeListData read_edge_list(std::istream& in);
EdgeListData load_edge_list(const std::filesystem::path& file);

void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& file, const Graph& g);

}  // namespace tksub
