// Copyright 2026 The Sybilbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYBILBENCH_GRAPH_IO_HPP_
#define SYBILBENCH_GRAPH_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sybilbench/graph.hpp"

namespace sybilbench {

struct LoadedGraph {
  DirectedGraph graph;
  // raw_ids[dense] is the id that appeared in the input file. Dense ids are
  // assigned in increasing raw-id order.
  std::vector<std::int64_t> raw_ids;
  std::size_t dropped_self_loops = 0;
  std::size_t collapsed_duplicates = 0;
};

// Reads "u v" pairs, one per line. Blank lines and lines whose first
// non-blank character is '#' are skipped; further tokens after the pair are
// ignored. With directed == false each pair yields both directions.
// Throws ParseError with the 1-based line number on malformed input.
LoadedGraph parse_edge_list(std::istream& in, bool directed,
                            const std::string& source_name = "<stream>");
LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed);

void write_edge_list(std::ostream& out, const DirectedGraph& graph);
void write_node_map(std::ostream& out, const std::vector<std::int64_t>& raw_ids);

// "node_id label" per line, label in {benign, sybil, unknown}.
void write_labels(std::ostream& out, const LabelPartition& labels);
LabelPartition parse_labels(std::istream& in, std::size_t num_nodes,
                            const std::string& source_name = "<stream>");

// "node_id r p_r" per line. p_r is printed with round-trip precision.
void write_resistance(std::ostream& out, const ResistanceModel& model);
ResistanceModel parse_resistance(std::istream& in, std::size_t num_nodes,
                                 const std::string& source_name = "<stream>");

}  // namespace sybilbench

#endif  // SYBILBENCH_GRAPH_IO_HPP_
