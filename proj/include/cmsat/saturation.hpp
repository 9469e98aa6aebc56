// Copyright 2026 The cmsat Authors
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

#ifndef CMSAT_SATURATION_HPP_
#define CMSAT_SATURATION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmsat/graph.hpp"

namespace cmsat {

// True iff h has a simple path with m-1 edges from u to v, i.e. adding
// {u,v} closes a C_m.
bool contains_cycle_edge(const Graph& h, Vertex u, Vertex v, int m);
bool contains_cycle_edge(const SparseGraph& h, Vertex u, Vertex v, int m);

// True iff h has no cycle of length exactly m.
bool is_cm_free(const Graph& h, int m);
bool is_cm_free(const SparseGraph& h, int m);

struct SaturationReport {
  bool is_free = false;
  uint64_t checked = 0;          // host edges absent from h
  uint64_t violation_count = 0;  // of those, how many close no C_m
  std::vector<Edge> violations;  // the first max_listed of them, lexicographic
  double violation_fraction() const {
    return static_cast<double>(violation_count) / static_cast<double>(checked ? checked : 1);
  }
  bool saturated() const { return is_free && violation_count == 0; }
};

constexpr std::size_t kDefaultViolationList = 1000;

// Throws std::invalid_argument naming the first edge of h missing in g.
SaturationReport is_saturated(const Graph& h, const HostGraph& g, int m,
                              std::size_t max_listed = kDefaultViolationList);
SaturationReport is_saturated(const SparseGraph& h, const HostGraph& g, int m,
                              std::size_t max_listed = kDefaultViolationList);

std::string store_report(const SaturationReport& r);

// Edges of g in lexicographic order; the default scan order.
std::vector<Edge> lexicographic_order(const Graph& g);
std::vector<Edge> shuffled_order(const Graph& g, RngSeed rng);

// Scans order (lexicographic when empty) and keeps every edge that closes
// no C_m. Throws when h0 is not a C_m-free subgraph of g.
Graph greedy_saturate(const Graph& h0, const Graph& g, int m, std::span<const Edge> order = {});

struct ExactResult {
  std::optional<std::size_t> value;  // nullopt only when nothing was found
  Graph witness;
  uint64_t nodes_explored = 0;
  bool complete = true;  // false: budget ran out, value is an incumbent
};

constexpr std::size_t kExactEdgeGuard = 24;

ExactResult min_sat_exact(const Graph& g, int m, uint64_t budget = 50'000'000,
                          std::size_t max_edges = kExactEdgeGuard);

std::string store_exact(const ExactResult& r);

}  // namespace cmsat

#endif  // CMSAT_SATURATION_HPP_
