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

#ifndef CMSAT_ANALYSIS_HPP_
#define CMSAT_ANALYSIS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmsat/graph.hpp"

namespace cmsat {

struct PeelTree {
  Vertex root = 0;
  bool root_in_core = true;  // false when the root ended isolated
  std::vector<Vertex> vertices;  // root first, then by depth
  std::vector<Vertex> parents;   // parallel to vertices; the root is its own parent
  std::size_t height = 0;
  std::size_t size() const { return vertices.size(); }
};

struct PeelResult {
  std::size_t n = 0;
  SparseGraph core;  // local vertex i is core_vertices[i]
  std::vector<Vertex> core_vertices;
  std::vector<PeelTree> trees;  // sorted by root
  // Degree 0 at the end, including vertices that started isolated.
  std::vector<Vertex> isolated_after_peel;
};

// Removes degree-1 vertices until none is left. Every removed vertex hangs
// in the tree of the surviving vertex it was peeled towards, so tree sizes
// minus roots plus core plus isolated vertices add up to n.
PeelResult peel_degree_one(const SparseGraph& h);
PeelResult peel_degree_one(const Graph& h);

struct TreeStats {
  std::map<std::size_t, std::size_t> height_histogram;
  std::map<std::size_t, std::size_t> size_histogram;
  std::size_t max_height = 0;
  std::size_t max_size = 0;
  std::size_t max_children = 0;
  int64_t height_bound = 0;    // m - 2
  int64_t children_bound = 0;  // floor(2 log_{1/(1-p)} n)
  int64_t size_bound = 0;      // f_C(n)
  std::size_t over_height = 0;
  std::size_t over_children = 0;
  std::size_t over_size = 0;
  std::vector<Vertex> flagged_roots;  // any bound exceeded
};

TreeStats tree_stats(const PeelResult& pr, int m, double p, double c = 0);

struct ReferenceBounds {
  std::size_t n = 0;
  double p = 0;
  int m = 0;
  double c = 0;
  double log_n = 0;  // log_{1/(1-p)} n
  // Coefficients of n with o(1) set to zero; empty where no bound applies.
  std::optional<double> lower;
  std::optional<double> upper;
  std::string lower_source;
  std::string upper_source;
  int64_t f = 0;    // independence number estimate
  int64_t f_c = 0;  // indicative only, the constant is existential
};

// Throws std::invalid_argument unless 0 < p < 1 and n >= 2.
ReferenceBounds reference_bounds(std::size_t n, double p, int m, double c = 0);
double independence_estimate(std::size_t n, double p);

struct TrialSpec {
  std::size_t n = 0;
  double p = 0;
  int m = 0;
  std::string method;  // star-factor, r-flower, sr-flower, greedy-baseline
  uint64_t seed = 0;
};

struct ExperimentRecord {
  TrialSpec trial;
  std::size_t edges = 0;
  double edges_per_vertex = 0;
  double predicted_coefficient = 0;
  bool cm_free = false;
  double violation_fraction = 0;
  std::size_t peel_core_size = 0;
  std::optional<std::size_t> peel_core_diameter;  // empty when disconnected
  double runtime_ms = 0;
  std::string error;  // nonempty when the trial failed
  bool ok() const { return error.empty(); }
};

// Config is a JSON list of objects {n, p, m, method, seeds} (seeds a list,
// or a single "seed") or of arrays [n, p, m, method, seeds]. Throws
// ParseError on malformed input or an unknown method.
std::vector<TrialSpec> parse_sweep_config(std::string_view text);

// The host is G(n,p) drawn from stream (seed, 0) and the construction uses
// (seed, 1), so methods sharing n, p and seed see the same host.
ExperimentRecord run_trial(const TrialSpec& t);

// Records sorted by (n, p, m, method, seed).
std::vector<ExperimentRecord> run_sweep(std::span<const TrialSpec> trials, unsigned threads = 1);

extern const char* const kSweepCsvHeader;
// Failed trials keep their key columns; the rest are left empty.
std::string sweep_csv(std::span<const ExperimentRecord> records);

std::string store_peel(const PeelResult& pr);
std::string store_tree_stats(const TreeStats& s);
std::string store_bounds(const ReferenceBounds& b);
std::string store_records(std::span<const ExperimentRecord> records);

}  // namespace cmsat

#endif  // CMSAT_ANALYSIS_HPP_
