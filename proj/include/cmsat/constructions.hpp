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

#ifndef CMSAT_CONSTRUCTIONS_HPP_
#define CMSAT_CONSTRUCTIONS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmsat/graph.hpp"

namespace cmsat {

struct ConstructionParams {
  std::size_t n = 0;
  double p = 0;
  int m = 0;
  double log_n = 0;     // log_{1/(1-p)} n
  std::size_t d = 0;    // floor(n / ln^2 n), the pool size
  int64_t a = 0;        // star size
  int64_t b = 0;        // number of full stars
  int64_t ell = 0;      // number of centers, a multiple of m-2
  int s = 0;
  int r_flower = 0;
  int r_sr = 0;
  // First of a, b, ell that is not positive at this n; empty when none.
  std::string too_small;
};

// Throws std::invalid_argument unless 0 < p < 1, n >= 3, m >= 3.
ConstructionParams compute_params(std::size_t n, double p, int m);

// Least s >= 1 with (2s^2+1)(1-p)^s < 1.
int minimal_s(double p);

// log_{1/(1-p)} x, evaluated in long double.
double log_q(double p, double x);

// Stage failure inside a builder. level is 0 for stages that are not
// per level.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(std::string stage, int level, const std::string& what)
      : std::runtime_error(stage + (level ? " (level " + std::to_string(level) + ")" : "") + ": " + what),
        stage_(std::move(stage)),
        level_(level) {}
  const std::string& stage() const { return stage_; }
  int level() const { return level_; }

 private:
  std::string stage_;
  int level_;
};

struct Star {
  Vertex center = 0;
  std::vector<Vertex> leaves;
};

// Center from a, leaves from b, leaves pairwise non-adjacent. Centers are
// tried by ascending degree into b; leaves are grown greedily with a
// bounded number of backtracking steps per center.
std::optional<Star> find_induced_star(const HostGraph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                                      std::size_t size, uint64_t backtrack_budget = 20000);

struct CycleFactor {
  std::vector<std::vector<Vertex>> cycles;
  int failed_layer = 0;  // 1..m-3 when an auxiliary matching is missing
  bool ok() const { return failed_layer == 0; }
};

// Partition of n_set into induced C_{m-2} by the layered matching argument:
// layer i holds every (m-2)-th vertex starting at position i-1. Further
// attempts relabel at random. Requires m >= 5 and |n_set| divisible by m-2.
CycleFactor induced_cycle_factor(const HostGraph& g, std::span<const Vertex> n_set, int m, RngSeed rng = {},
                                 int attempts = 1);

enum class StarPolicy {
  kFiniteN,  // stars sized by what the neighborhoods admit; see README
  kLiteral,    // the literal pipeline with pools of size d and stars K_{1,a-1}
};

struct StarFactorOptions {
  StarPolicy policy = StarPolicy::kFiniteN;
  int retries = 5;
  int candidates = 5;       // centers tried per star
  int ils_iterations = 60;  // local search steps per independent set
};

struct StarFactorConstruction {
  ConstructionParams params;
  StarPolicy policy = StarPolicy::kFiniteN;
  Vertex hub = 0;
  std::vector<Star> stars;  // one per center, stars[i].center == centers[i]
  std::vector<Vertex> centers;
  std::vector<std::vector<Vertex>> cycle_factor;
  std::vector<Edge> residual_matching;  // (leftover vertex, center)
  int64_t star_target = 0;              // star size in force when stars ended
  std::vector<std::string> log;
  SparseGraph selected;

  // Edge count rebuilt from hub edges, cycles and stars.
  std::size_t recount() const;
};

// hub = 0. Throws ConstructionError naming the failed stage; with the
// literal policy a non-positive parameter fails as "params".
StarFactorConstruction build_star_factor(const Graph& g, double p, int m, RngSeed rng,
                                         const StarFactorOptions& opt = {});

enum class FlowerVariant { kR, kSR };

struct FlowerLevel {
  std::vector<Vertex> hubs;                 // v1,v2,v3 or v0,v1..vs
  std::vector<std::vector<Vertex>> petals;  // V_j
  std::vector<std::vector<Vertex>> w, u;
  std::vector<std::vector<Vertex>> y;       // r-flower only
  std::vector<std::vector<Vertex>> l;       // (s,r)-flower only
  // (s,r)-flower: u_parts[j][k] = U_{j,k+1}, each of size |V^{i+1}|.
  std::vector<std::vector<std::vector<Vertex>>> u_parts;
};

struct FlowerConstruction {
  FlowerVariant variant = FlowerVariant::kR;
  ConstructionParams params;
  int s = 3;
  int r_nominal = 0;
  std::vector<FlowerLevel> levels;
  std::vector<std::vector<Vertex>> v;  // V^1..V^{r+1}, each sorted
  std::size_t core_edges = 0;
  std::vector<std::string> log;
  SparseGraph selected;

  int r() const { return static_cast<int>(levels.size()); }
  // |V^2|..|V^{r+1}|
  std::vector<std::size_t> level_sizes() const;
  const std::vector<Vertex>& core() const { return v.back(); }
};

struct FlowerOptions {
  int retries = 5;
  std::size_t max_core = 4000;
  std::optional<int> levels;  // overrides the nominal r
};

FlowerConstruction build_r_flower(const HostGraph& g, double p, RngSeed rng, const FlowerOptions& opt = {});
FlowerConstruction build_sr_flower(const HostGraph& g, double p, RngSeed rng, const FlowerOptions& opt = {});

struct FlowerValidation {
  std::vector<std::string> violations;  // "4.3: ..." in condition order
  bool ok() const { return violations.empty(); }
  bool has(const std::string& condition) const;
};

// Checks every numbered condition of the definition, plus global
// C_4-freeness in place of condition 4.7.
FlowerValidation validate_flower(const FlowerConstruction& c, const HostGraph& g);

// Exact edge count of a flower. The (s,r) form counts every cross pair of
// U-sets and of L-sets; throws when the value is not an integer.
int64_t flower_edge_count(FlowerVariant variant, std::size_t core_edges, std::size_t n, int r, int s,
                          std::span<const std::size_t> level_sizes);
// The (s,r) count in its published form, which may be fractional.
double sr_edge_count_published(std::size_t core_edges, std::size_t n, int r, int s,
                               std::span<const std::size_t> level_sizes);

enum class ConstructionKind { kStarFactor, kRFlower, kSRFlower, kGreedy };

// Predicted edges per vertex, o(1) terms dropped.
double saturated_edge_budget(const ConstructionParams& params, ConstructionKind kind);

std::string store_params(const ConstructionParams& p);
std::string store_construction(const StarFactorConstruction& c);
std::string store_construction(const FlowerConstruction& c);

}  // namespace cmsat

#endif  // CMSAT_CONSTRUCTIONS_HPP_
