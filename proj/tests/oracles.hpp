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

// Slow reference implementations. They share no code with the library
// beyond the graph containers.

#ifndef CMSAT_TESTS_ORACLES_HPP_
#define CMSAT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "cmsat/graph.hpp"

namespace oracle {

using cmsat::Graph;
using cmsat::Vertex;

inline std::vector<std::vector<char>> matrix(const Graph& g) {
  std::vector<std::vector<char>> a(g.n(), std::vector<char>(g.n(), 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  return a;
}

// Every vertex sequence of length m starting at its minimum vertex.
inline bool has_cycle(const Graph& g, int m) {
  const auto a = matrix(g);
  const int n = static_cast<int>(g.n());
  std::vector<int> seq;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> bool {
    if (static_cast<int>(seq.size()) == m) return a[seq.back()][seq.front()];
    for (int v = seq.front() + 1; v < n; ++v) {
      if (used[v] || !a[seq.back()][v]) continue;
      used[v] = 1;
      seq.push_back(v);
      if (self(self)) return true;
      seq.pop_back();
      used[v] = 0;
    }
    return false;
  };
  for (int s = 0; s < n; ++s) {
    seq = {s};
    std::fill(used.begin(), used.end(), 0);
    used[s] = 1;
    if (rec(rec)) return true;
  }
  return false;
}

// A simple u-v path with exactly m-1 edges, ignoring the pair {u,v} itself.
inline bool closes_cycle(const Graph& g, Vertex u, Vertex v, int m) {
  auto a = matrix(g);
  a[u][v] = a[v][u] = 0;
  const int n = static_cast<int>(g.n());
  std::vector<char> used(n, 0);
  used[u] = 1;
  auto rec = [&](auto&& self, int x, int len) -> bool {
    if (len == m - 1) return x == static_cast<int>(v);
    for (int y = 0; y < n; ++y) {
      if (used[y] || !a[x][y]) continue;
      if (y == static_cast<int>(v) && len + 1 != m - 1) continue;
      used[y] = 1;
      if (self(self, y, len + 1)) return true;
      used[y] = 0;
    }
    return false;
  };
  return rec(rec, static_cast<int>(u), 0);
}

inline bool is_saturated(const Graph& h, const Graph& g, int m) {
  if (has_cycle(h, m)) return false;
  for (auto [u, v] : g.edges()) {
    if (h.has_edge(u, v)) continue;
    Graph h2 = h;
    h2.add_edge(u, v);
    if (!has_cycle(h2, m)) return false;
  }
  return true;
}

// Smallest saturated edge subset, by enumeration of all subsets of E(g).
inline std::size_t min_sat(const Graph& g, int m) {
  const auto es = g.edges();
  std::size_t best = es.size();
  for (uint64_t mask = 0; mask < (uint64_t{1} << es.size()); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (k >= best) continue;
    Graph h(g.n());
    for (std::size_t i = 0; i < es.size(); ++i)
      if (mask >> i & 1) h.add_edge(es[i].first, es[i].second);
    if (is_saturated(h, g, m)) best = k;
  }
  return best;
}

// Hall's condition over every left subset.
inline bool has_perfect_matching(const cmsat::BipartiteGraph& b) {
  const std::size_t nl = b.left_size();
  if (nl != b.right_size()) return false;
  for (uint64_t s = 1; s < (uint64_t{1} << nl); ++s) {
    uint64_t nb = 0;
    for (std::size_t l = 0; l < nl; ++l)
      if (s >> l & 1)
        for (std::size_t r = 0; r < b.right_size(); ++r)
          if (b.has_edge(static_cast<Vertex>(l), static_cast<Vertex>(r))) nb |= uint64_t{1} << r;
    if (__builtin_popcountll(nb) < __builtin_popcountll(s)) return false;
  }
  return true;
}

inline std::optional<std::size_t> diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    std::vector<int> d(g.n(), -1);
    std::queue<Vertex> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w = 0; w < g.n(); ++w)
        if (g.has_edge(u, w) && d[w] < 0) {
          d[w] = d[u] + 1;
          q.push(w);
        }
    }
    for (int x : d) {
      if (x < 0) return std::nullopt;
      best = std::max<std::size_t>(best, x);
    }
  }
  return best;
}

inline Graph cycle(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

}  // namespace oracle

#endif  // CMSAT_TESTS_ORACLES_HPP_
