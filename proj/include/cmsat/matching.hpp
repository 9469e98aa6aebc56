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

#ifndef CMSAT_MATCHING_HPP_
#define CMSAT_MATCHING_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmsat/graph.hpp"

namespace cmsat {

struct Matching {
  // (left, right) for bipartite inputs, (u, v) with u < v otherwise;
  // sorted by first coordinate.
  std::vector<Edge> pairs;
  bool perfect = false;
};

struct ForbiddenSet {
  std::vector<Edge> pairs;  // (left, right)
  std::size_t degree_bound = 0;
};

// Throws std::invalid_argument when a left or right index has more than
// degree_bound forbidden partners or an index is out of range.
void check_forbidden(const BipartiteGraph& b, const ForbiddenSet& f);

std::optional<Matching> perfect_matching_bipartite(const BipartiteGraph& b);

// Maximum matching; parts may differ in size. perfect is set when every
// vertex on both sides is covered.
Matching maximum_matching_bipartite(const BipartiteGraph& b);

// Maximum matching between [0, nl) and [0, nr) given only an adjacency
// oracle, for parts too large to materialize. Random probing first, then
// breadth-first augmentation from every free left vertex; exact.
Matching maximum_matching_oracle(std::size_t nl, std::size_t nr, const std::function<bool(Vertex, Vertex)>& adj,
                                 RngSeed rng = {});

// Perfect matching of g restricted to subset. Randomized greedy start,
// then blossom augmentation from every vertex left free; exact.
std::optional<Matching> perfect_matching_general(const Graph& g, std::span<const Vertex> subset,
                                                 RngSeed rng = {});

std::optional<Matching> constrained_matching(const BipartiteGraph& b, const ForbiddenSet& f);

// The 2C-block procedure: blocks of 2C left/right vertices joined when
// complete, a lexicographically minimal block permutation, then Hall
// completion inside each block. Weaker than constrained_matching.
std::optional<Matching> block_matching_construct(const BipartiteGraph& b, const ForbiddenSet& f);

// True when m is a matching of b whose pairs are all edges.
bool is_matching_of(const BipartiteGraph& b, const Matching& m);

std::string store_matching(const Matching& m);
Matching load_matching(std::string_view text);

}  // namespace cmsat

#endif  // CMSAT_MATCHING_HPP_
