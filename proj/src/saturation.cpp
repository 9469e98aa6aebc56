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

#include "cmsat/saturation.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace cmsat {

namespace {

using json = nlohmann::json;
using AdjLists = std::vector<std::vector<Vertex>>;

AdjLists lists_of(const Graph& g) {
  AdjLists a(g.n());
  for (Vertex u = 0; u < g.n(); ++u) a[u] = g.neighbors(u);
  return a;
}

void check_m(int m) {
  if (m < 3) throw std::invalid_argument("cycle length m must be at least 3, got " + std::to_string(m));
}

// Reusable buffers for bounded simple-path search.
class PathSearch {
 public:
  explicit PathSearch(std::size_t n) : dist_(n, -1), on_path_(n, 0) {}

  // Simple path with exactly len edges from u to v.
  bool path_of_length(const AdjLists& a, Vertex u, Vertex v, int len) {
    bfs(a, {v}, len - 1);
    on_path_[u] = 1;
    const bool found = dfs(a, u, v, len);
    on_path_[u] = 0;
    reset();
    return found;
  }

  // Marks (via out) every target reachable from u by a simple path with
  // exactly len edges. targets is a bitset over vertices; stops early when
  // all remaining targets are reached.
  void endpoints(const AdjLists& a, Vertex u, int len, const std::vector<Vertex>& targets,
                 std::vector<char>& is_target, std::size_t& remaining) {
    bfs(a, targets, len - 1);
    remaining_ = &remaining;
    is_target_ = &is_target;
    on_path_[u] = 1;
    enumerate(a, u, len);
    on_path_[u] = 0;
    reset();
  }

 private:
  void bfs(const AdjLists& a, const std::vector<Vertex>& sources, int depth) {
    for (Vertex s : sources) {
      dist_[s] = 0;
      touched_.push_back(s);
    }
    std::size_t head = 0;
    while (head < touched_.size()) {
      const Vertex x = touched_[head++];
      if (dist_[x] >= depth) continue;
      for (Vertex y : a[x])
        if (dist_[y] < 0) {
          dist_[y] = dist_[x] + 1;
          touched_.push_back(y);
        }
    }
  }
  void reset() {
    for (Vertex x : touched_) dist_[x] = -1;
    touched_.clear();
  }

  bool dfs(const AdjLists& a, Vertex x, Vertex v, int left) {
    for (Vertex y : a[x]) {
      if (y == v) {
        if (left == 1) return true;
        continue;
      }
      if (on_path_[y] || left == 1) continue;
      const int d = dist_[y];
      if (d < 0 || d > left - 1) continue;
      on_path_[y] = 1;
      const bool found = dfs(a, y, v, left - 1);
      on_path_[y] = 0;
      if (found) return true;
    }
    return false;
  }

  void enumerate(const AdjLists& a, Vertex x, int left) {
    for (Vertex y : a[x]) {
      if (on_path_[y]) continue;
      if (left == 1) {
        if ((*is_target_)[y]) {
          (*is_target_)[y] = 0;
          --*remaining_;
        }
        continue;
      }
      const int d = dist_[y];
      if (d < 0 || d > left - 1) continue;
      on_path_[y] = 1;
      enumerate(a, y, left - 1);
      on_path_[y] = 0;
      if (*remaining_ == 0) return;
    }
  }

  std::vector<int> dist_;
  std::vector<char> on_path_;
  std::vector<Vertex> touched_;
  std::size_t* remaining_ = nullptr;
  std::vector<char>* is_target_ = nullptr;
};

bool has_edge_list(const AdjLists& a, Vertex u, Vertex v) {
  return std::find(a[u].begin(), a[u].end(), v) != a[u].end();
}

bool contains_cycle_edge_lists(const AdjLists& a, Vertex u, Vertex v, int m) {
  check_m(m);
  if (u >= a.size() || v >= a.size()) throw std::invalid_argument("vertex out of range");
  if (u == v) throw std::invalid_argument("contains_cycle_edge: u == v");
  if (has_edge_list(a, u, v))
    throw std::invalid_argument("contains_cycle_edge: edge {" + std::to_string(u) + "," + std::to_string(v) +
                                "} already present");
  PathSearch ps(a.size());
  return ps.path_of_length(a, u, v, m - 1);
}

bool has_triangle(const AdjLists& a) {
  std::vector<char> mark(a.size(), 0);
  for (Vertex u = 0; u < a.size(); ++u) {
    for (Vertex x : a[u]) mark[x] = 1;
    for (Vertex v : a[u]) {
      if (v < u) continue;
      for (Vertex w : a[v])
        if (w > v && mark[w]) return true;
    }
    for (Vertex x : a[u]) mark[x] = 0;
  }
  return false;
}

// A C_4 has a highest-ranked vertex u; its two cycle neighbors and the
// opposite vertex rank below u. Ranking by degree keeps hubs cheap.
bool has_c4(const AdjLists& a) {
  const std::size_t n = a.size();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return a[x].size() < a[y].size(); });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  std::vector<int64_t> seen(n, -1);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex x : a[u]) {
      if (rank[x] >= rank[u]) continue;
      for (Vertex w : a[x]) {
        if (w == u || rank[w] >= rank[u]) continue;
        if (seen[w] == u) return true;
        seen[w] = u;
      }
    }
  }
  return false;
}

class CycleSearch {
 public:
  CycleSearch(const AdjLists& a, int m) : a_(a), m_(m), dist_(a.size(), -1), on_path_(a.size(), 0) {}

  bool any() {
    const int cap = m_ / 2;
    for (Vertex s = 0; s < a_.size(); ++s) {
      if (a_[s].size() < 2) continue;
      s_ = s;
      bfs(cap);
      on_path_[s] = 1;
      bool found = false;
      for (Vertex x1 : a_[s]) {
        if (x1 < s) continue;
        first_ = x1;
        on_path_[x1] = 1;
        found = extend(x1, m_ - 2, cap);
        on_path_[x1] = 0;
        if (found) break;
      }
      on_path_[s] = 0;
      for (Vertex x : touched_) dist_[x] = -1;
      touched_.clear();
      if (found) return true;
    }
    return false;
  }

 private:
  void bfs(int cap) {
    dist_[s_] = 0;
    touched_.push_back(s_);
    for (std::size_t h = 0; h < touched_.size(); ++h) {
      const Vertex x = touched_[h];
      if (dist_[x] >= cap) continue;
      for (Vertex y : a_[x])
        if (y > s_ && dist_[y] < 0) {
          dist_[y] = dist_[x] + 1;
          touched_.push_back(y);
        }
    }
  }

  // x is the current end; left more path vertices are needed before the
  // closing edge back to s.
  bool extend(Vertex x, int left, int cap) {
    if (left == 0) return x > first_ && std::binary_search(a_[s_].begin(), a_[s_].end(), x);
    for (Vertex y : a_[x]) {
      if (y <= s_ || on_path_[y]) continue;
      const int back = left;  // edges from y back to s still available
      const int d = dist_[y];
      if (d < 0 ? back <= cap : d > back) continue;
      on_path_[y] = 1;
      const bool found = extend(y, left - 1, cap);
      on_path_[y] = 0;
      if (found) return true;
    }
    return false;
  }

  const AdjLists& a_;
  int m_;
  Vertex s_ = 0, first_ = 0;
  std::vector<int> dist_;
  std::vector<char> on_path_;
  std::vector<Vertex> touched_;
};

bool is_cm_free_lists(const AdjLists& a, int m) {
  check_m(m);
  if (m == 3) return !has_triangle(a);
  if (m == 4) return !has_c4(a);
  AdjLists sorted = a;
  for (auto& l : sorted) std::sort(l.begin(), l.end());
  return !CycleSearch(sorted, m).any();
}

template <typename H>
void check_subgraph(const H& h, const HostGraph& g) {
  if (h.n() != g.n())
    throw std::invalid_argument("subgraph has " + std::to_string(h.n()) + " vertices, host has " +
                                std::to_string(g.n()));
  for (Vertex u = 0; u < h.n(); ++u) {
    std::vector<Vertex> nb;
    h.for_each_neighbor(u, [&](Vertex v) {
      if (v > u) nb.push_back(v);
    });
    std::sort(nb.begin(), nb.end());
    for (Vertex v : nb)
      if (!g.adjacent(u, v))
        throw std::invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                    "} of the subgraph is not a host edge");
  }
}

// Walk reachability for m <= 4: a walk of length m-1 <= 3 between distinct
// non-adjacent vertices is always a simple path.
class WalkReach {
 public:
  WalkReach(const AdjLists& a, int m) : a_(a), m_(m), n_(a.size()), words_(words_for(a.size())) {
    constexpr std::size_t kHeavyDegree = 64;
    constexpr std::size_t kHeavyBudgetBytes = std::size_t{1} << 30;
    std::vector<Vertex> heavy;
    for (Vertex v = 0; v < n_; ++v)
      if (a[v].size() > kHeavyDegree) heavy.push_back(v);
    std::sort(heavy.begin(), heavy.end(), [&](Vertex x, Vertex y) { return a[x].size() > a[y].size(); });
    const std::size_t per = words_ * 8 * (m == 4 ? 2 : 1);
    const std::size_t cap = per ? kHeavyBudgetBytes / per : 0;
    if (heavy.size() > cap) heavy.resize(cap);
    slot_.assign(n_, -1);
    for (std::size_t i = 0; i < heavy.size(); ++i) slot_[heavy[i]] = static_cast<int64_t>(i);
    rows_.assign(heavy.size() * words_, 0);
    for (std::size_t i = 0; i < heavy.size(); ++i)
      for (Vertex y : a[heavy[i]]) set_bit(rows_.data() + i * words_, y);
    if (m == 4) {
      two_.assign(heavy.size() * words_, 0);
      for (std::size_t i = 0; i < heavy.size(); ++i) {
        uint64_t* dst = two_.data() + i * words_;
        for (Vertex y : a[heavy[i]]) add_neighborhood(dst, y);
      }
    }
  }

  void reach(Vertex u, Bitset& out) const {
    out.clear();
    uint64_t* o = out.data();
    for (Vertex x : a_[u]) {
      if (m_ == 3) {
        add_neighborhood(o, x);
      } else if (slot_[x] >= 0) {
        or_into(o, two_.data() + slot_[x] * words_);
      } else {
        for (Vertex y : a_[x]) add_neighborhood(o, y);
      }
    }
  }

 private:
  void add_neighborhood(uint64_t* dst, Vertex y) const {
    if (slot_[y] >= 0) {
      or_into(dst, rows_.data() + slot_[y] * words_);
    } else {
      for (Vertex z : a_[y]) set_bit(dst, z);
    }
  }
  void or_into(uint64_t* dst, const uint64_t* src) const {
    for (std::size_t k = 0; k < words_; ++k) dst[k] |= src[k];
  }

  const AdjLists& a_;
  int m_;
  std::size_t n_, words_;
  std::vector<int64_t> slot_;
  std::vector<uint64_t> rows_, two_;
};

SaturationReport saturation_lists(const AdjLists& a, const HostGraph& g, int m, std::size_t max_listed) {
  const std::size_t n = a.size();
  SaturationReport rep;
  rep.is_free = is_cm_free_lists(a, m);
  Bitset cand(n), reached(n);
  std::vector<uint64_t> hrow(words_for(n));

  auto record = [&](Vertex u, const Bitset& miss) {
    const std::size_t c = miss.count();
    rep.violation_count += c;
    if (rep.violations.size() < max_listed)
      miss.for_each([&](Vertex v) {
        if (rep.violations.size() < max_listed) rep.violations.emplace_back(u, v);
      });
  };
  auto candidates = [&](Vertex u) {
    cand.clear();
    if (u + 1 < n) g.row(u, cand, u + 1);
    for (Vertex v : a[u]) cand.reset(v);
    rep.checked += cand.count();
  };

  if (m <= 4) {
    WalkReach wr(a, m);
    for (Vertex u = 0; u < n; ++u) {
      candidates(u);
      if (!cand.any()) continue;
      wr.reach(u, reached);
      cand.and_not(reached);
      if (cand.any()) record(u, cand);
    }
    return rep;
  }

  PathSearch ps(n);
  std::vector<char> is_target(n, 0);
  std::vector<Vertex> targets;
  for (Vertex u = 0; u < n; ++u) {
    candidates(u);
    if (!cand.any()) continue;
    targets = cand.to_vector();
    for (Vertex t : targets) is_target[t] = 1;
    std::size_t remaining = targets.size();
    ps.endpoints(a, u, m - 1, targets, is_target, remaining);
    cand.clear();
    for (Vertex t : targets)
      if (is_target[t]) {
        cand.set(t);
        is_target[t] = 0;
      }
    if (cand.any()) record(u, cand);
  }
  return rep;
}

// Adding {u,v} closes a C_m in the dense graph h.
class Closer {
 public:
  Closer(const Graph& h, int m) : h_(h), m_(m), lists_(m > 4 ? lists_of(h) : AdjLists{}), ps_(h.n()) {}

  bool closes(Vertex u, Vertex v) {
    const std::size_t w = h_.row_words();
    if (m_ == 3) return intersects(h_.row_data(u), h_.row_data(v), w);
    if (m_ == 4) {
      bool hit = false;
      h_.for_each_neighbor(u, [&](Vertex x) {
        if (!hit && intersects(h_.row_data(x), h_.row_data(v), w)) hit = true;
      });
      return hit;
    }
    return ps_.path_of_length(lists_, u, v, m_ - 1);
  }
  void added(Vertex u, Vertex v) {
    if (m_ > 4) {
      lists_[u].push_back(v);
      lists_[v].push_back(u);
    }
  }

 private:
  static bool intersects(const uint64_t* a, const uint64_t* b, std::size_t w) {
    for (std::size_t k = 0; k < w; ++k)
      if (a[k] & b[k]) return true;
    return false;
  }

  const Graph& h_;
  int m_;
  AdjLists lists_;
  PathSearch ps_;
};

class ExactSearch {
 public:
  ExactSearch(const Graph& g, int m, uint64_t budget)
      : g_(g), m_(m), budget_(budget), edges_(g.edges()), h_(g.n()), hl_(g.n()), sl_(lists_of(g)), ps_(g.n()) {}

  ExactResult run() {
    best_ = edges_.size() + 1;
    dfs(0);
    ExactResult r;
    r.nodes_explored = nodes_;
    r.complete = !exhausted_;
    if (best_ <= edges_.size()) {
      r.value = best_;
      r.witness = witness_;
    }
    return r;
  }

 private:
  static void drop(std::vector<Vertex>& l, Vertex v) { l.erase(std::find(l.begin(), l.end(), v)); }

  bool path(const AdjLists& a, Edge e) { return ps_.path_of_length(a, e.first, e.second, m_ - 1); }

  void dfs(std::size_t idx) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (h_.edge_count() >= best_) return;
    if (idx == edges_.size()) {
      for (const Edge& e : open_)
        if (!path(hl_, e)) return;
      best_ = h_.edge_count();
      witness_ = h_;
      return;
    }
    const Edge e = edges_[idx];
    // Include, unless that closes a C_m.
    if (!path(hl_, e)) {
      h_.add_edge(e.first, e.second);
      hl_[e.first].push_back(e.second);
      hl_[e.second].push_back(e.first);
      dfs(idx + 1);
      hl_[e.first].pop_back();
      hl_[e.second].pop_back();
      h_.remove_edge(e.first, e.second);
      if (exhausted_) return;
    }
    // Exclude: e and every earlier excluded edge must stay closable in the
    // supergraph of all included and undecided edges.
    drop(sl_[e.first], e.second);
    drop(sl_[e.second], e.first);
    bool ok = path(sl_, e);
    for (std::size_t i = 0; ok && i < open_.size(); ++i) ok = path(sl_, open_[i]);
    if (ok) {
      open_.push_back(e);
      dfs(idx + 1);
      open_.pop_back();
    }
    sl_[e.first].push_back(e.second);
    sl_[e.second].push_back(e.first);
  }

  const Graph& g_;
  int m_;
  uint64_t budget_;
  std::vector<Edge> edges_;
  Graph h_;
  AdjLists hl_, sl_;
  PathSearch ps_;
  std::vector<Edge> open_;
  std::size_t best_ = 0;
  Graph witness_;
  uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

bool contains_cycle_edge(const Graph& h, Vertex u, Vertex v, int m) {
  return contains_cycle_edge_lists(lists_of(h), u, v, m);
}
bool contains_cycle_edge(const SparseGraph& h, Vertex u, Vertex v, int m) {
  return contains_cycle_edge_lists(h.lists(), u, v, m);
}

bool is_cm_free(const Graph& h, int m) { return is_cm_free_lists(lists_of(h), m); }
bool is_cm_free(const SparseGraph& h, int m) { return is_cm_free_lists(h.lists(), m); }

SaturationReport is_saturated(const Graph& h, const HostGraph& g, int m, std::size_t max_listed) {
  check_m(m);
  check_subgraph(h, g);
  return saturation_lists(lists_of(h), g, m, max_listed);
}

SaturationReport is_saturated(const SparseGraph& h, const HostGraph& g, int m, std::size_t max_listed) {
  check_m(m);
  check_subgraph(h, g);
  return saturation_lists(h.lists(), g, m, max_listed);
}

std::string store_report(const SaturationReport& r) {
  json v = json::array();
  for (auto [a, b] : r.violations) v.push_back({a, b});
  return json{{"is_free", r.is_free},
              {"checked", r.checked},
              {"violation_count", r.violation_count},
              {"violation_fraction", r.violation_fraction()},
              {"violations", v}}
      .dump();
}

std::vector<Edge> lexicographic_order(const Graph& g) { return g.edges(); }

std::vector<Edge> shuffled_order(const Graph& g, RngSeed rng) {
  auto es = g.edges();
  auto eng = make_engine(rng, 0x6f72646572ULL);
  std::shuffle(es.begin(), es.end(), eng);
  return es;
}

Graph greedy_saturate(const Graph& h0, const Graph& g, int m, std::span<const Edge> order) {
  check_m(m);
  check_subgraph(h0, g);
  if (!is_cm_free(h0, m)) throw std::invalid_argument("greedy_saturate: starting graph contains C_" + std::to_string(m));
  std::vector<Edge> lex;
  if (order.empty()) {
    lex = g.edges();
    order = lex;
  }
  Graph h = h0;
  Closer closer(h, m);
  for (auto [u, v] : order) {
    if (u == v || u >= g.n() || v >= g.n() || !g.adjacent(u, v) || h.adjacent(u, v)) continue;
    if (!closer.closes(u, v)) {
      h.add_edge(u, v);
      closer.added(u, v);
    }
  }
  return h;
}

ExactResult min_sat_exact(const Graph& g, int m, uint64_t budget, std::size_t max_edges) {
  check_m(m);
  if (g.edge_count() > max_edges)
    throw std::invalid_argument("min_sat_exact: host has " + std::to_string(g.edge_count()) +
                                " edges, above the guard of " + std::to_string(max_edges));
  return ExactSearch(g, m, budget).run();
}

std::string store_exact(const ExactResult& r) {
  json j{{"complete", r.complete}, {"nodes_explored", r.nodes_explored}};
  j["value"] = r.value ? json(*r.value) : json(nullptr);
  j["status"] = r.complete ? "exact" : "unknown";
  if (r.value) j["witness"] = json::parse(store_graph(r.witness));
  return j.dump();
}

}  // namespace cmsat
