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

#include "cmsat/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "json.hpp"

namespace cmsat {

namespace {

using json = nlohmann::json;

constexpr uint64_t kBipartiteTag = 0xb1b1b1b1ULL;

uint64_t probability_threshold(double p) {
  return static_cast<uint64_t>(std::ldexp(p, 53));
}

std::string edge_str(uint64_t u, uint64_t v) {
  return "[" + std::to_string(u) + "," + std::to_string(v) + "]";
}

}  // namespace

std::mt19937_64 make_engine(RngSeed rng, uint64_t tag) {
  uint64_t k = derive_key(rng, tag);
  std::seed_seq seq{static_cast<uint32_t>(k), static_cast<uint32_t>(k >> 32),
                    static_cast<uint32_t>(rng.seed), static_cast<uint32_t>(rng.stream)};
  return std::mt19937_64(seq);
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("probability must lie in [0,1], got " + std::to_string(p));
}

void HostGraph::row(Vertex u, Bitset& out, Vertex from) const {
  for (Vertex v = from; v < n(); ++v)
    if (v != u && adjacent(u, v)) out.set(v);
}

// ---------------------------------------------------------------- Graph

Graph::Graph(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range: " + edge_str(u, v));
    if (u == v) throw std::invalid_argument("self-loop: " + edge_str(u, v));
    add_edge(u, v);
  }
}

void Graph::row(Vertex u, Bitset& out, Vertex from) const {
  const uint64_t* r = row_data(u);
  uint64_t* o = out.data();
  std::size_t k0 = from >> 6;
  if (k0 >= words_) return;
  o[k0] |= r[k0] & (~uint64_t{0} << (from & 63));
  for (std::size_t k = k0 + 1; k < words_; ++k) o[k] |= r[k];
}

bool Graph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("self-loop: " + edge_str(u, v));
  if (adjacent(u, v)) return false;
  set_bit(row_mut(u), v);
  set_bit(row_mut(v), u);
  ++edges_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  if (u == v || !adjacent(u, v)) return false;
  clear_bit(row_mut(u), v);
  clear_bit(row_mut(v), u);
  --edges_;
  return true;
}

std::size_t Graph::degree(Vertex u) const {
  std::size_t d = 0;
  const uint64_t* r = row_data(u);
  for (std::size_t k = 0; k < words_; ++k) d += std::popcount(r[k]);
  return d;
}

std::vector<Vertex> Graph::neighbors(Vertex u) const {
  std::vector<Vertex> out;
  for_each_neighbor(u, [&](Vertex v) { out.push_back(v); });
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < n_; ++u)
    for_each_neighbor(u, [&](Vertex v) {
      if (v > u) out.emplace_back(u, v);
    });
  return out;
}

Graph Graph::induced(std::span<const Vertex> vs) const {
  Graph h(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (adjacent(vs[i], vs[j])) h.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return h;
}

// ---------------------------------------------------------- SparseGraph

SparseGraph::SparseGraph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range: " + edge_str(u, v));
    if (u == v) throw std::invalid_argument("self-loop: " + edge_str(u, v));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (Vertex u = 0; u < n; ++u) {
    auto& a = adj_[u];
    std::sort(a.begin(), a.end());
    auto dup = std::adjacent_find(a.begin(), a.end());
    if (dup != a.end()) throw std::invalid_argument("duplicate edge: " + edge_str(std::min(u, *dup), std::max(u, *dup)));
  }
  edges_ = edges.size();
}

SparseGraph::SparseGraph(const Graph& g) : adj_(g.n()), edges_(g.edge_count()) {
  for (Vertex u = 0; u < g.n(); ++u) adj_[u] = g.neighbors(u);
}

bool SparseGraph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> SparseGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (v > u) out.emplace_back(u, v);
  return out;
}

Graph SparseGraph::to_dense() const {
  Graph g(n());
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : adj_[u])
      if (v > u) g.add_edge(u, v);
  return g;
}

SparseGraph SparseGraph::induced(std::span<const Vertex> vs) const {
  std::vector<int64_t> local(n(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int64_t>(i);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (Vertex w : adj_[vs[i]])
      if (local[w] > static_cast<int64_t>(i)) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(local[w]));
  return SparseGraph(vs.size(), es);
}

// -------------------------------------------------------------- GnpHost

GnpHost::GnpHost(std::size_t n, double p, RngSeed rng)
    : n_(n), p_(p), rng_(rng), key_(derive_key(rng, 0)), threshold_(0) {
  check_probability(p);
  if (n > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("n too large");
  threshold_ = probability_threshold(p);
}

void GnpHost::row(Vertex u, Bitset& out, Vertex from) const {
  uint64_t* o = out.data();
  const uint64_t lo = uint64_t{u};
  Vertex v = from;
  for (; v < u && v < n_; ++v)
    if ((mix64(key_ ^ ((uint64_t{v} << 32) | lo)) >> 11) < threshold_) set_bit(o, v);
  if (v == u) ++v;
  const uint64_t hi = uint64_t{u} << 32;
  for (; v < n_; ++v)
    if ((mix64(key_ ^ (hi | v)) >> 11) < threshold_) set_bit(o, v);
}

// ------------------------------------------------------- BipartiteGraph

BipartiteGraph::BipartiteGraph(std::size_t left, std::size_t right)
    : left_(left), right_(right), words_(words_for(right)), bits_(left * words_for(right), 0) {}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t c = 0;
  for (uint64_t x : bits_) c += std::popcount(x);
  return c;
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  for (Vertex l = 0; l < left_; ++l)
    for_each_bit(row_data(l), words_, [&](Vertex r) { out.emplace_back(l, r); });
  return out;
}

BipartiteGraph BipartiteGraph::between(const HostGraph& g, std::span<const Vertex> left,
                                       std::span<const Vertex> right) {
  BipartiteGraph b(left.size(), right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    uint64_t* row = b.row_mut(static_cast<Vertex>(i));
    for (std::size_t j = 0; j < right.size(); ++j)
      if (g.adjacent(left[i], right[j])) set_bit(row, j);
  }
  return b;
}

// ------------------------------------------------------------- sampling

Graph sample_gnp(std::size_t n, double p, RngSeed rng) {
  GnpHost host(n, p, rng);
  Graph g(n);
  Bitset row(n);
  for (Vertex u = 0; u < n; ++u) {
    row.clear();
    host.row(u, row, u + 1);
    row.for_each([&](Vertex v) { g.add_edge(u, v); });
  }
  return g;
}

BipartiteGraph sample_bipartite(std::size_t n1, std::size_t n2, double p, RngSeed rng) {
  check_probability(p);
  BipartiteGraph b(n1, n2);
  const uint64_t key = derive_key(rng, kBipartiteTag);
  const uint64_t thr = probability_threshold(p);
  for (Vertex l = 0; l < n1; ++l)
    for (Vertex r = 0; r < n2; ++r)
      if ((mix64(key ^ ((uint64_t{l} << 32) | r)) >> 11) < thr) b.add_edge(l, r);
  return b;
}

// ------------------------------------------------------------- diameter

std::optional<std::size_t> diameter(const Graph& g) {
  const std::size_t n = g.n();
  if (n <= 1) return 0;
  std::size_t best = 0;
  Bitset seen(n), frontier(n), next(n);
  for (Vertex s = 0; s < n; ++s) {
    seen.clear();
    frontier.clear();
    seen.set(s);
    frontier.set(s);
    std::size_t depth = 0;
    while (true) {
      next.clear();
      frontier.for_each([&](Vertex u) {
        const uint64_t* r = g.row_data(u);
        uint64_t* o = next.data();
        for (std::size_t k = 0; k < g.row_words(); ++k) o[k] |= r[k];
      });
      next.and_not(seen);
      if (!next.any()) break;
      seen |= next;
      std::swap(frontier, next);
      ++depth;
    }
    if (seen.count() != n) return std::nullopt;
    best = std::max(best, depth);
  }
  return best;
}

namespace {

// Plain BFS; returns distances (npos when unreached) and parents.
std::vector<std::size_t> bfs(const SparseGraph& g, Vertex s, std::vector<Vertex>* parent = nullptr) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.n(), kNone);
  if (parent) parent->assign(g.n(), s);
  std::vector<Vertex> queue{s};
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != kNone) continue;
      dist[w] = dist[u] + 1;
      if (parent) (*parent)[w] = u;
      queue.push_back(w);
    }
  }
  return dist;
}

// Bit-parallel BFS from up to 64 sources of a connected graph: one bit per
// source in each vertex word. Returns the largest eccentricity.
std::size_t max_eccentricity(const SparseGraph& g, std::span<const Vertex> src, std::vector<uint64_t>& seen,
                             std::vector<uint64_t>& cur, std::vector<uint64_t>& next) {
  const std::size_t n = g.n();
  std::fill(seen.begin(), seen.end(), 0);
  std::fill(cur.begin(), cur.end(), 0);
  for (std::size_t k = 0; k < src.size(); ++k) {
    seen[src[k]] |= uint64_t{1} << k;
    cur[src[k]] |= uint64_t{1} << k;
  }
  std::size_t depth = 0;
  while (true) {
    bool grew = false;
    for (Vertex u = 0; u < n; ++u) {
      uint64_t acc = 0;
      for (Vertex w : g.neighbors(u)) acc |= cur[w];
      acc &= ~seen[u];
      next[u] = acc;
      grew |= acc != 0;
    }
    if (!grew) break;
    for (Vertex u = 0; u < n; ++u) seen[u] |= next[u];
    std::swap(cur, next);
    ++depth;
  }
  return depth;
}

}  // namespace

// iFUB: BFS from a central vertex, then eccentricities of its fringe levels
// from the outside in until the lower bound meets the level bound.
std::optional<std::size_t> diameter(const SparseGraph& g) {
  const std::size_t n = g.n();
  if (n <= 1) return 0;
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  auto farthest = [&](const std::vector<std::size_t>& d) {
    return static_cast<Vertex>(std::max_element(d.begin(), d.end()) - d.begin());
  };
  auto d0 = bfs(g, 0);
  if (std::find(d0.begin(), d0.end(), kNone) != d0.end()) return std::nullopt;
  const Vertex a = farthest(d0);
  std::vector<Vertex> parent;
  auto da = bfs(g, a, &parent);
  Vertex b = farthest(da);
  std::size_t lb = da[b];
  Vertex c = b;
  for (std::size_t k = 0; k < lb / 2; ++k) c = parent[c];
  auto dc = bfs(g, c);
  const std::size_t ecc = *std::max_element(dc.begin(), dc.end());
  lb = std::max(lb, ecc);
  std::vector<std::vector<Vertex>> levels(ecc + 1);
  for (Vertex u = 0; u < n; ++u) levels[dc[u]].push_back(u);
  std::vector<uint64_t> seen(n), cur(n), next(n);
  for (std::size_t i = ecc; i > 0; --i) {
    if (lb >= 2 * i) break;
    const auto& lv = levels[i];
    for (std::size_t base = 0; base < lv.size(); base += 64) {
      const std::size_t width = std::min<std::size_t>(64, lv.size() - base);
      lb = std::max(lb, max_eccentricity(g, std::span(lv).subspan(base, width), seen, cur, next));
    }
    if (lb >= 2 * (i - 1)) break;
  }
  return lb;
}

// ------------------------------------------------------------------ JSON

namespace {

json edges_json(const std::vector<Edge>& es) {
  json arr = json::array();
  for (auto [u, v] : es) arr.push_back({u, v});
  return arr;
}

json parse_root(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

uint64_t read_count(const json& root, const char* key) {
  if (!root.is_object() || !root.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = root.at(key);
  if (!v.is_number_integer() || v.get<int64_t>() < 0)
    throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<uint64_t>();
}

std::vector<Edge> read_edges(const json& root, uint64_t n1, uint64_t n2, bool bipartite) {
  if (!root.contains("edges") || !root.at("edges").is_array()) throw ParseError("missing array \"edges\"");
  std::vector<Edge> out;
  std::size_t idx = 0;
  for (const json& e : root.at("edges")) {
    const std::string where = "edges[" + std::to_string(idx++) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError(where + ": expected a pair of integers");
    int64_t a = e[0].get<int64_t>(), b = e[1].get<int64_t>();
    if (a < 0 || b < 0 || static_cast<uint64_t>(a) >= n1 || static_cast<uint64_t>(b) >= n2)
      throw ParseError(where + ": vertex index out of range " + e.dump());
    if (!bipartite && a == b) throw ParseError(where + ": self-loop " + e.dump());
    Edge ed{static_cast<Vertex>(a), static_cast<Vertex>(b)};
    if (!bipartite && ed.first > ed.second) std::swap(ed.first, ed.second);
    out.push_back(ed);
  }
  std::vector<Edge> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw ParseError("duplicate edge " + edge_str(dup->first, dup->second));
  return sorted;
}

}  // namespace

std::string store_graph(const Graph& g) {
  json j{{"n", g.n()}, {"edges", edges_json(g.edges())}};
  return j.dump();
}

std::string store_graph(const SparseGraph& g) {
  json j{{"n", g.n()}, {"edges", edges_json(g.edges())}};
  return j.dump();
}

SparseGraph load_sparse_graph(std::string_view text) {
  json root = parse_root(text);
  uint64_t n = read_count(root, "n");
  if (n > std::numeric_limits<Vertex>::max()) throw ParseError("\"n\" too large");
  return SparseGraph(n, read_edges(root, n, n, false));
}

Graph load_graph(std::string_view text) {
  json root = parse_root(text);
  uint64_t n = read_count(root, "n");
  if (n > (uint64_t{1} << 17)) throw ParseError("\"n\" too large for a dense graph; load it sparse");
  return Graph(n, read_edges(root, n, n, false));
}

std::string store_bipartite(const BipartiteGraph& b) {
  json j{{"n1", b.left_size()}, {"n2", b.right_size()}, {"edges", edges_json(b.edges())}};
  return j.dump();
}

BipartiteGraph load_bipartite(std::string_view text) {
  json root = parse_root(text);
  uint64_t n1 = read_count(root, "n1"), n2 = read_count(root, "n2");
  BipartiteGraph b(n1, n2);
  for (auto [l, r] : read_edges(root, n1, n2, true)) b.add_edge(l, r);
  return b;
}

}  // namespace cmsat
