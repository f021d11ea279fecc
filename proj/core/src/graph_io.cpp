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

#include "sybilbench/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "sybilbench/errors.hpp"

namespace sybilbench {
namespace {

// Splits on spaces and tabs; returns false for blank and comment lines.
bool tokenize(std::string_view line, std::vector<std::string_view>& tokens) {
  tokens.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    if (i >= line.size()) break;
    if (tokens.empty() && line[i] == '#') return false;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return !tokens.empty();
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in, bool directed,
                            const std::string& source_name) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw_edges;
  std::vector<std::string_view> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokenize(line, tokens)) continue;
    std::int64_t u = 0;
    std::int64_t v = 0;
    if (tokens.size() < 2 || !parse_number(tokens[0], u) ||
        !parse_number(tokens[1], v)) {
      throw ParseError(source_name, line_no,
                       "expected two integer node ids, got '" + line + "'");
    }
    raw_edges.emplace_back(u, v);
  }

  LoadedGraph loaded;
  loaded.raw_ids.reserve(raw_edges.size() * 2);
  for (const auto& [u, v] : raw_edges) {
    loaded.raw_ids.push_back(u);
    loaded.raw_ids.push_back(v);
  }
  std::sort(loaded.raw_ids.begin(), loaded.raw_ids.end());
  loaded.raw_ids.erase(
      std::unique(loaded.raw_ids.begin(), loaded.raw_ids.end()),
      loaded.raw_ids.end());
  auto dense = [&](std::int64_t raw) {
    return static_cast<NodeId>(
        std::lower_bound(loaded.raw_ids.begin(), loaded.raw_ids.end(), raw) -
        loaded.raw_ids.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size() * (directed ? 1 : 2));
  std::size_t self_loops = 0;
  for (const auto& [u, v] : raw_edges) {
    if (u == v) {
      ++self_loops;
      continue;
    }
    edges.push_back({dense(u), dense(v)});
    if (!directed) edges.push_back({dense(v), dense(u)});
  }
  loaded.graph = DirectedGraph::FromEdges(loaded.raw_ids.size(), edges,
                                          nullptr,
                                          &loaded.collapsed_duplicates);
  loaded.dropped_self_loops = self_loops;
  return loaded;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list: " + path.string());
  return parse_edge_list(in, directed, path.string());
}

void write_edge_list(std::ostream& out, const DirectedGraph& graph) {
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    for (NodeId w : graph.out_neighbors(v)) out << v << ' ' << w << '\n';
  }
}

void write_node_map(std::ostream& out,
                    const std::vector<std::int64_t>& raw_ids) {
  out << "# dense_id raw_id\n";
  for (std::size_t i = 0; i < raw_ids.size(); ++i) {
    out << i << ' ' << raw_ids[i] << '\n';
  }
}

void write_labels(std::ostream& out, const LabelPartition& labels) {
  for (NodeId v = 0; v < labels.num_nodes(); ++v) {
    out << v << ' ' << to_string(labels.label(v)) << '\n';
  }
}

LabelPartition parse_labels(std::istream& in, std::size_t num_nodes,
                            const std::string& source_name) {
  std::vector<NodeId> benign;
  std::vector<NodeId> sybil;
  std::vector<std::string_view> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokenize(line, tokens)) continue;
    NodeId v = 0;
    if (tokens.size() != 2 || !parse_number(tokens[0], v)) {
      throw ParseError(source_name, line_no, "expected 'node_id label'");
    }
    if (v >= num_nodes) {
      throw ParseError(source_name, line_no,
                       "node id " + std::to_string(v) + " out of range");
    }
    if (tokens[1] == "benign") {
      benign.push_back(v);
    } else if (tokens[1] == "sybil") {
      sybil.push_back(v);
    } else if (tokens[1] != "unknown") {
      throw ParseError(source_name, line_no,
                       "unknown label '" + std::string(tokens[1]) + "'");
    }
  }
  return LabelPartition::Create(num_nodes, benign, sybil);
}

void write_resistance(std::ostream& out, const ResistanceModel& model) {
  for (std::size_t v = 0; v < model.resistant.size(); ++v) {
    out << v << ' ' << static_cast<int>(model.resistant[v]) << ' '
        << format_double(model.probability[v]) << '\n';
  }
}

ResistanceModel parse_resistance(std::istream& in, std::size_t num_nodes,
                                 const std::string& source_name) {
  ResistanceModel model;
  model.resistant.assign(num_nodes, 1);
  model.probability.assign(num_nodes, 1.0);
  std::vector<std::string_view> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!tokenize(line, tokens)) continue;
    NodeId v = 0;
    int r = 0;
    double p = 0.0;
    if (tokens.size() != 3 || !parse_number(tokens[0], v) ||
        !parse_number(tokens[1], r) || !parse_number(tokens[2], p)) {
      throw ParseError(source_name, line_no, "expected 'node_id r p_r'");
    }
    if (v >= num_nodes) {
      throw ParseError(source_name, line_no,
                       "node id " + std::to_string(v) + " out of range");
    }
    if ((r != 0 && r != 1) || !(p >= 0.0 && p <= 1.0)) {
      throw ParseError(source_name, line_no,
                       "r must be 0/1 and p_r must lie in [0,1]");
    }
    model.resistant[v] = static_cast<std::uint8_t>(r);
    model.probability[v] = p;
  }
  return model;
}

}  // namespace sybilbench
