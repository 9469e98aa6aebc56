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

#ifndef CMSAT_GRAPH_HPP_
#define CMSAT_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmsat/bitset.hpp"

namespace cmsat {

using Vertex = uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RngSeed {
  uint64_t seed = 0;
  uint64_t stream = 0;
};

// 64-bit finalizer from splitmix64.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_key(RngSeed rng, uint64_t tag) {
  return mix64(mix64(rng.seed ^ mix64(rng.stream)) ^ tag);
}

std::mt19937_64 make_engine(RngSeed rng, uint64_t tag = 0);

// Read-only adjacency oracle. Builders and verifiers only talk to hosts
// through this, so a host can be a stored graph or an implicit sample.
class HostGraph {
 public:
  virtual ~HostGraph() = default;
  virtual std::size_t n() const = 0;
  virtual bool adjacent(Vertex u, Vertex v) const = 0;
  // Sets bit v of out (sized n) for every neighbor v >= from; bits below
  // from are left untouched.
  virtual void row(Vertex u, Bitset& out, Vertex from = 0) const;
};

class Graph : public HostGraph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t n() const override { return n_; }
  std::size_t edge_count() const { return edges_; }
  std::size_t row_words() const { return words_; }
  const uint64_t* row_data(Vertex u) const { return bits_.data() + u * words_; }

  bool adjacent(Vertex u, Vertex v) const override {
    return test_bit(row_data(u), v);
  }
  bool has_edge(Vertex u, Vertex v) const { return adjacent(u, v); }
  void row(Vertex u, Bitset& out, Vertex from = 0) const override;

  // Returns false when the edge was already present.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);

  std::size_t degree(Vertex u) const;
  std::vector<Vertex> neighbors(Vertex u) const;
  template <typename F>
  void for_each_neighbor(Vertex u, F&& f) const {
    for_each_bit(row_data(u), words_, f);
  }
  std::vector<Edge> edges() const;

  // Subgraph induced on vs; local vertex i is vs[i].
  Graph induced(std::span<const Vertex> vs) const;

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && bits_ == o.bits_;
  }

 private:
  uint64_t* row_mut(Vertex u) { return bits_.data() + u * words_; }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t edges_ = 0;
  std::vector<uint64_t> bits_;
};

// Adjacency-list graph for large sparse subgraphs (constructions on 1e5+
// vertices). Neighbor lists are kept sorted.
class SparseGraph {
 public:
  SparseGraph() = default;
  explicit SparseGraph(std::size_t n) : adj_(n) {}
  // Rejects self-loops, out-of-range endpoints and duplicates.
  SparseGraph(std::size_t n, std::span<const Edge> edges);
  explicit SparseGraph(const Graph& g);

  std::size_t n() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t degree(Vertex u) const { return adj_[u].size(); }
  const std::vector<Vertex>& neighbors(Vertex u) const { return adj_[u]; }
  const std::vector<std::vector<Vertex>>& lists() const { return adj_; }
  template <typename F>
  void for_each_neighbor(Vertex u, F&& f) const {
    for (Vertex v : adj_[u]) f(v);
  }
  std::vector<Edge> edges() const;
  Graph to_dense() const;
  SparseGraph induced(std::span<const Vertex> vs) const;

  bool operator==(const SparseGraph& o) const = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
};

// G(n,p) decided pair by pair from a hash of (seed, stream, u, v). Costs no
// memory, which is what makes 1e5+ vertex hosts possible.
class GnpHost : public HostGraph {
 public:
  GnpHost(std::size_t n, double p, RngSeed rng);
  std::size_t n() const override { return n_; }
  double p() const { return p_; }
  RngSeed rng() const { return rng_; }
  bool adjacent(Vertex u, Vertex v) const override {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    uint64_t h = mix64(key_ ^ ((uint64_t{u} << 32) | v));
    return (h >> 11) < threshold_;
  }
  void row(Vertex u, Bitset& out, Vertex from = 0) const override;

 private:
  std::size_t n_;
  double p_;
  RngSeed rng_;
  uint64_t key_;
  uint64_t threshold_;  // edge iff (h >> 11) < threshold_, in units of 2^-53
};

class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t left, std::size_t right);

  std::size_t left_size() const { return left_; }
  std::size_t right_size() const { return right_; }
  std::size_t row_words() const { return words_; }
  const uint64_t* row_data(Vertex l) const { return bits_.data() + l * words_; }
  uint64_t* row_mut(Vertex l) { return bits_.data() + l * words_; }

  bool has_edge(Vertex l, Vertex r) const { return test_bit(row_data(l), r); }
  void add_edge(Vertex l, Vertex r) { set_bit(row_mut(l), r); }
  void remove_edge(Vertex l, Vertex r) { clear_bit(row_mut(l), r); }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

  // Cross graph between two vertex lists of a host.
  static BipartiteGraph between(const HostGraph& g, std::span<const Vertex> left,
                                std::span<const Vertex> right);

  bool operator==(const BipartiteGraph& o) const = default;

 private:
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::size_t words_ = 0;
  std::vector<uint64_t> bits_;
};

void check_probability(double p);

Graph sample_gnp(std::size_t n, double p, RngSeed rng);
BipartiteGraph sample_bipartite(std::size_t n1, std::size_t n2, double p, RngSeed rng);

// Longest shortest path; nullopt when disconnected. 0 for n <= 1.
std::optional<std::size_t> diameter(const Graph& g);
std::optional<std::size_t> diameter(const SparseGraph& g);

std::string store_graph(const Graph& g);
std::string store_graph(const SparseGraph& g);
Graph load_graph(std::string_view text);
SparseGraph load_sparse_graph(std::string_view text);
std::string store_bipartite(const BipartiteGraph& b);
BipartiteGraph load_bipartite(std::string_view text);

}  // namespace cmsat

#endif  // CMSAT_GRAPH_HPP_
