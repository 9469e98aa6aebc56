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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "cmsat/constructions.hpp"
#include "cmsat/matching.hpp"
#include "cmsat/saturation.hpp"
#include "json.hpp"

namespace cmsat {

namespace {

using json = nlohmann::json;

class InducedHost : public HostGraph {
 public:
  InducedHost(const HostGraph& g, std::span<const Vertex> vs) : g_(g), vs_(vs.begin(), vs.end()) {}
  std::size_t n() const override { return vs_.size(); }
  bool adjacent(Vertex u, Vertex v) const override { return u != v && g_.adjacent(vs_[u], vs_[v]); }

 private:
  const HostGraph& g_;
  std::vector<Vertex> vs_;
};

Graph local_graph(const HostGraph& g, std::span<const Vertex> vs) {
  Graph h(vs.size());
  for (Vertex i = 0; i < vs.size(); ++i)
    for (Vertex j = i + 1; j < vs.size(); ++j)
      if (g.adjacent(vs[i], vs[j])) h.add_edge(i, j);
  return h;
}

uint64_t pair_key(Vertex a, Vertex b) { return (uint64_t{a} << 32) | b; }

struct LevelFailure {
  std::string stage;
  std::string what;
};

// Perfect matching between xs and zs inside g, skipping forbidden local
// pairs. Returns (x, z) in host labels.
std::optional<std::vector<Edge>> match_sets(const HostGraph& g, std::span<const Vertex> xs, std::span<const Vertex> zs,
                                            const std::unordered_set<uint64_t>* forbidden, RngSeed rng) {
  if (xs.size() != zs.size()) return std::nullopt;
  const Matching m = maximum_matching_oracle(
      xs.size(), zs.size(),
      [&](Vertex a, Vertex b) {
        if (forbidden && forbidden->count(pair_key(a, b))) return false;
        return g.adjacent(xs[a], zs[b]);
      },
      rng);
  if (!m.perfect) return std::nullopt;
  std::vector<Edge> out;
  out.reserve(m.pairs.size());
  for (auto [a, b] : m.pairs) out.emplace_back(xs[a], zs[b]);
  return out;
}

// Perfect matching inside ys: random probing, then exact repair on a
// growing window around the vertices left over.
std::optional<std::vector<Edge>> match_within(const HostGraph& g, std::span<const Vertex> ys, RngSeed rng) {
  const std::size_t k = ys.size();
  if (k % 2) return std::nullopt;
  auto eng = make_engine(rng, 0x77697468696eULL);
  std::vector<int64_t> mate(k, -1);
  std::vector<Vertex> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), eng);
  std::vector<Vertex> free_v = order;
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[free_v[i]] = i;
  auto take = [&](Vertex v) {
    const std::size_t i = pos[v];
    const Vertex last = free_v.back();
    free_v[i] = last;
    pos[last] = i;
    free_v.pop_back();
  };
  for (Vertex x : order) {
    if (mate[x] >= 0) continue;
    take(x);
    const std::size_t f = free_v.size();
    for (std::size_t t = 0; t < std::min<std::size_t>(f, 64); ++t) {
      const Vertex y = free_v[f <= 64 ? t : eng() % f];
      if (g.adjacent(ys[x], ys[y])) {
        mate[x] = y;
        mate[y] = x;
        take(y);
        break;
      }
    }
    if (mate[x] < 0) {
      pos[x] = free_v.size();
      free_v.push_back(x);
    }
  }
  if (!free_v.empty()) {
    std::vector<Vertex> paired;
    for (Vertex x = 0; x < k; ++x)
      if (mate[x] > static_cast<int64_t>(x)) paired.push_back(x);
    std::shuffle(paired.begin(), paired.end(), eng);
    for (std::size_t extra = 128;; extra *= 4) {
      std::vector<Vertex> window = free_v;
      const std::size_t take_pairs = std::min(paired.size(), extra);
      for (std::size_t t = 0; t < take_pairs; ++t) {
        window.push_back(paired[t]);
        window.push_back(static_cast<Vertex>(mate[paired[t]]));
      }
      std::vector<Vertex> hv(window.size());
      for (std::size_t i = 0; i < window.size(); ++i) hv[i] = ys[window[i]];
      const Graph h = local_graph(g, hv);
      std::vector<Vertex> ids(window.size());
      std::iota(ids.begin(), ids.end(), 0);
      if (auto pm = perfect_matching_general(h, ids, rng)) {
        for (auto [a, b] : pm->pairs) {
          mate[window[a]] = window[b];
          mate[window[b]] = window[a];
        }
        break;
      }
      if (take_pairs == paired.size()) return std::nullopt;
    }
  }
  std::vector<Edge> out;
  for (Vertex x = 0; x < k; ++x)
    if (mate[x] > static_cast<int64_t>(x)) out.emplace_back(ys[x], ys[mate[x]]);
  return out;
}

int wiring(int j1, int j2, int s) { return ((j2 - j1) % s + s) % s + 1; }

std::vector<Vertex> sorted(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class FlowerBuilder {
 public:
  FlowerBuilder(const HostGraph& g, FlowerVariant variant, double p, RngSeed rng, const FlowerOptions& opt)
      : g_(g), variant_(variant), rng_(rng), opt_(opt), n_(g.n()), rank_(g.n()), loc_(g.n(), -1), zidx_(g.n(), -1) {
    out_.variant = variant;
    out_.params = compute_params(n_, p, 4);
    out_.s = variant == FlowerVariant::kR ? 3 : out_.params.s;
    out_.r_nominal = opt.levels.value_or(variant == FlowerVariant::kR ? out_.params.r_flower : out_.params.r_sr);
  }

  FlowerConstruction run() {
    const double p = out_.params.p;
    const double boundary = 1 - 1 / std::cbrt(7.0);
    if (variant_ == FlowerVariant::kR && p <= boundary)
      out_.log.push_back("warning: p <= 1 - 7^(-1/3), below the range where r-flowers are expected");
    if (variant_ == FlowerVariant::kSR && p > boundary)
      out_.log.push_back("warning: p > 1 - 7^(-1/3), above the range where (s,r)-flowers are expected");
    const std::size_t threshold =
        std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_)) / 4)));
    std::vector<Vertex> cur(n_);
    std::iota(cur.begin(), cur.end(), 0);
    out_.v.push_back(cur);
    std::string last_failure = "levels: |V^1| = " + std::to_string(n_) + " is below the level threshold " +
                               std::to_string(threshold);
    std::vector<Edge> edges;
    for (int i = 1; i <= out_.r_nominal && cur.size() >= threshold; ++i) {
      std::optional<Built> built;
      for (int attempt = 0; attempt < std::max(1, opt_.retries) && !built; ++attempt) {
        std::vector<Vertex> order = cur;
        if (attempt > 0) {
          auto eng = make_engine(rng_, derive_key({static_cast<uint64_t>(i), static_cast<uint64_t>(attempt)}, 0x6c766cULL));
          std::shuffle(order.begin(), order.end(), eng);
        }
        for (std::size_t t = 0; t < order.size(); ++t) rank_[order[t]] = static_cast<uint32_t>(t);
        try {
          built = variant_ == FlowerVariant::kR ? r_level(order, i, attempt) : sr_level(order, i, attempt);
        } catch (const LevelFailure& f) {
          last_failure = f.stage + ": " + f.what;
          out_.log.push_back("level " + std::to_string(i) + " attempt " + std::to_string(attempt + 1) + ": " +
                             last_failure);
        }
      }
      if (!built) {
        if (out_.levels.empty()) break;
        out_.log.push_back("level " + std::to_string(i) + " failed after " + std::to_string(opt_.retries) +
                           " attempts; recursion stopped, |V^" + std::to_string(i) + "| = " +
                           std::to_string(cur.size()) + " becomes the core");
        break;
      }
      out_.levels.push_back(std::move(built->level));
      edges.insert(edges.end(), built->edges.begin(), built->edges.end());
      cur = std::move(built->next);
      out_.v.push_back(cur);
      if (cur.size() < threshold)
        out_.log.push_back("stopped after level " + std::to_string(i) + ": |V^" + std::to_string(i + 1) +
                           "| = " + std::to_string(cur.size()) + " < " + std::to_string(threshold));
    }
    if (out_.levels.empty()) throw ConstructionError("levels", 1, "no viable level (" + last_failure + ")");
    const int r = out_.r();
    if (cur.size() > opt_.max_core)
      throw ConstructionError("core", r + 1, "|V^" + std::to_string(r + 1) + "| = " + std::to_string(cur.size()) +
                                                 " exceeds the core limit " + std::to_string(opt_.max_core));
    const Graph h = local_graph(g_, cur);
    const Graph core = greedy_saturate(Graph(cur.size()), h, 4);
    out_.core_edges = core.edge_count();
    for (auto [a, b] : core.edges()) edges.emplace_back(std::min(cur[a], cur[b]), std::max(cur[a], cur[b]));
    for (auto& [a, b] : edges)
      if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    try {
      out_.selected = SparseGraph(n_, edges);
    } catch (const std::invalid_argument& e) {
      throw ConstructionError("assembly", 0, e.what());
    }
    const auto sizes = out_.level_sizes();
    const int64_t expect = flower_edge_count(variant_, out_.core_edges, n_, r, out_.s, sizes);
    if (expect != static_cast<int64_t>(out_.selected.edge_count()))
      throw ConstructionError("assembly", 0, "emitted " + std::to_string(out_.selected.edge_count()) +
                                                 " edges, the edge formula gives " + std::to_string(expect));
    return std::move(out_);
  }

 private:
  struct Built {
    FlowerLevel level;
    std::vector<Vertex> next;
    std::vector<Edge> edges;
  };

  RngSeed sub(int i, int attempt, uint64_t what) const {
    return {derive_key(rng_, (uint64_t(i) << 40) ^ (uint64_t(attempt) << 32) ^ what), rng_.stream};
  }

  void by_rank(std::vector<Vertex>& v) const {
    std::sort(v.begin(), v.end(), [&](Vertex a, Vertex b) { return rank_[a] < rank_[b]; });
  }

  // First neighbor of every vertex in need, in order; none when absent.
  std::optional<Vertex> first_common(const std::vector<Vertex>& order, std::initializer_list<Vertex> need) const {
    for (Vertex x : order) {
      bool ok = true;
      for (Vertex h : need) ok = ok && x != h && g_.adjacent(h, x);
      if (ok) return x;
    }
    return std::nullopt;
  }

  Built r_level(const std::vector<Vertex>& order, int i, int attempt) {
    const Vertex v1 = order[0];
    const auto v2 = first_common(order, {v1});
    if (!v2) throw LevelFailure{"hubs", "v_1 has no neighbor"};
    const auto v3 = first_common(order, {v1, *v2});
    if (!v3) throw LevelFailure{"hubs", "v_1, v_2 have no common neighbor"};
    const Vertex hub[3] = {v1, *v2, *v3};
    std::vector<Vertex> cls[8];
    for (Vertex x : order) {
      if (x == v1 || x == *v2 || x == *v3) continue;
      int code = 0;
      for (int j = 0; j < 3; ++j)
        if (g_.adjacent(hub[j], x)) code |= 1 << j;
      cls[code].push_back(x);
    }
    std::vector<Vertex> vj[3];
    auto put = [&](std::vector<Vertex>& dst, const std::vector<Vertex>& src, std::size_t from, std::size_t to) {
      to = std::min(to, src.size());
      for (std::size_t t = from; t < to; ++t) dst.push_back(src[t]);
    };
    auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };
    {
      const auto& c = cls[7];  // adjacent to all three
      const std::size_t t = ceil_div(c.size(), 3);
      put(vj[0], c, 0, t);
      put(vj[1], c, t, 2 * t);
      put(vj[2], c, 2 * t, c.size());
    }
    auto halves = [&](const std::vector<Vertex>& c, int a, int b) {
      const std::size_t t = ceil_div(c.size(), 2);
      put(vj[a], c, 0, t);
      put(vj[b], c, t, c.size());
    };
    halves(cls[5], 0, 2);  // v1, v3
    halves(cls[3], 0, 1);  // v1, v2
    halves(cls[6], 1, 2);  // v2, v3
    put(vj[0], cls[1], 0, cls[1].size());
    put(vj[1], cls[2], 0, cls[2].size());
    put(vj[2], cls[4], 0, cls[4].size());
    std::vector<Vertex> next = cls[0];
    const std::size_t nbar = next.size();

    std::vector<std::size_t> a_size(3);
    int tau = 0;
    for (int j = 0; j < 3; ++j) {
      by_rank(vj[j]);
      if (vj[j].size() < 2 * nbar)
        throw LevelFailure{"split", "|V_" + std::to_string(j + 1) + "| = " + std::to_string(vj[j].size()) +
                                        " < 2|N(000)| = " + std::to_string(2 * nbar)};
      a_size[j] = vj[j].size() - 2 * nbar;
      tau += static_cast<int>(a_size[j] % 2);
    }
    Built out;
    FlowerLevel& lv = out.level;
    lv.hubs = {v1, *v2, *v3};
    for (int j = 0; j < 3; ++j) {
      const std::size_t need = 2 * static_cast<std::size_t>(tau) + a_size[j] % 2;
      if (a_size[j] < need)
        throw LevelFailure{"split", "|A_" + std::to_string(j + 1) + "| = " + std::to_string(a_size[j]) +
                                        " leaves no room for the parity fix"};
      // A_j is the lowest-ranked prefix; 2 tau of it go back to the rest and
      // an odd A_j gives one vertex to the next level.
      const auto& v = vj[j];
      std::vector<Vertex> a(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(a_size[j]));
      std::vector<Vertex> rest(v.begin() + static_cast<std::ptrdiff_t>(a_size[j]), v.end());
      rest.insert(rest.end(), a.begin(), a.begin() + 2 * tau);
      a.erase(a.begin(), a.begin() + 2 * tau);
      std::vector<Vertex> petal = vj[j];
      if (a.size() % 2) {
        next.push_back(a.front());
        std::erase(petal, a.front());
        a.erase(a.begin());
      }
      by_rank(rest);
      const std::size_t half = rest.size() / 2;
      lv.w.emplace_back(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(half));
      lv.u.emplace_back(rest.begin() + static_cast<std::ptrdiff_t>(half), rest.end());
      lv.y.push_back(a);
      lv.petals.push_back(petal);
    }
    next = sorted(next);
    for (int j = 0; j < 3; ++j)
      if (lv.w[j].size() != next.size())
        throw LevelFailure{"split", "|W_" + std::to_string(j + 1) + "| != |V^{i+1}|"};

    auto& e = out.edges;
    e.emplace_back(v1, *v2);
    e.emplace_back(v1, *v3);
    e.emplace_back(*v2, *v3);
    for (int j = 0; j < 3; ++j)
      for (Vertex x : lv.petals[j]) e.emplace_back(hub[j], x);
    const std::string tag = " (j = ";
    for (int j = 0; j < 3; ++j) {
      auto ym = match_within(g_, lv.y[j], sub(i, attempt, 0x100 + j));
      if (!ym) throw LevelFailure{"matching", "no perfect matching in Y" + tag + std::to_string(j + 1) + ")"};
      e.insert(e.end(), ym->begin(), ym->end());
      auto wu = match_sets(g_, lv.w[j], lv.u[j], nullptr, sub(i, attempt, 0x200 + j));
      if (!wu) throw LevelFailure{"matching", "no perfect matching W-U" + tag + std::to_string(j + 1) + ")"};
      e.insert(e.end(), wu->begin(), wu->end());
      auto wn = match_sets(g_, lv.w[j], next, nullptr, sub(i, attempt, 0x300 + j));
      if (!wn) throw LevelFailure{"matching", "no perfect matching W-V^{i+1}" + tag + std::to_string(j + 1) + ")"};
      e.insert(e.end(), wn->begin(), wn->end());
    }
    for (auto& x : lv.petals) x = sorted(x);
    for (auto& x : lv.w) x = sorted(x);
    for (auto& x : lv.u) x = sorted(x);
    for (auto& x : lv.y) x = sorted(x);
    out.next = std::move(next);
    return out;
  }

  // Level graph without hub edges, indexed through loc_.
  struct LevelGraph {
    std::vector<std::vector<Vertex>> adj;
  };

  std::vector<Vertex>& nbrs(Vertex v) { return level_.adj[loc_[v]]; }

  void add_level_edge(Vertex a, Vertex b, std::vector<Edge>& e) {
    nbrs(a).push_back(b);
    nbrs(b).push_back(a);
    e.emplace_back(a, b);
  }

  // Pairs (x, z) already joined by a path with three edges.
  std::unordered_set<uint64_t> forbidden_pairs(std::span<const Vertex> xs, std::span<const Vertex> zs) {
    for (std::size_t t = 0; t < zs.size(); ++t) zidx_[zs[t]] = static_cast<int64_t>(t);
    std::unordered_set<uint64_t> f;
    for (std::size_t t = 0; t < xs.size(); ++t) {
      const Vertex x = xs[t];
      for (Vertex a : nbrs(x))
        for (Vertex b : nbrs(a)) {
          if (b == x) continue;
          for (Vertex z : nbrs(b))
            if (z != a && zidx_[z] >= 0) f.insert(pair_key(static_cast<Vertex>(t), static_cast<Vertex>(zidx_[z])));
        }
    }
    for (Vertex z : zs) zidx_[z] = -1;
    return f;
  }

  bool closes_c4(Vertex x, Vertex z) {
    for (Vertex a : nbrs(x)) {
      if (a == z) continue;
      for (Vertex b : nbrs(a)) {
        if (b == x || b == z) continue;
        const auto& nb = nbrs(b);
        if (std::find(nb.begin(), nb.end(), z) != nb.end()) return true;
      }
    }
    return false;
  }

  void valid_match(std::span<const Vertex> xs, std::span<const Vertex> zs, const std::string& what, int i,
                   int attempt, uint64_t tag, std::vector<Edge>& e) {
    const auto f = forbidden_pairs(xs, zs);
    const std::size_t bound = static_cast<std::size_t>(out_.s) * out_.s * out_.s;
    std::vector<std::size_t> dl(xs.size(), 0), dr(zs.size(), 0);
    for (uint64_t k : f) {
      if (++dl[k >> 32] > bound || ++dr[k & 0xffffffffULL] > bound)
        throw ConstructionError("forbidden-degree", i,
                                what + ": a vertex has more than s^3 = " + std::to_string(bound) + " forbidden partners");
    }
    auto m = match_sets(g_, xs, zs, &f, sub(i, attempt, tag));
    if (!m) throw LevelFailure{"matching", "no valid perfect matching " + what};
    for (auto [x, z] : *m) add_level_edge(x, z, e);
    for (auto [x, z] : *m)
      if (closes_c4(x, z))
        throw ConstructionError("validity", i, what + ": edge {" + std::to_string(x) + "," + std::to_string(z) +
                                                   "} closes a C_4");
  }

  Built sr_level(const std::vector<Vertex>& order, int i, int attempt) {
    const int s = out_.s;
    const Vertex v0 = order[0];
    std::vector<Vertex> hubs{v0};
    for (Vertex x : order) {
      if (static_cast<int>(hubs.size()) == s + 1) break;
      if (x != v0 && g_.adjacent(v0, x)) hubs.push_back(x);
    }
    if (static_cast<int>(hubs.size()) < s + 1)
      throw LevelFailure{"hubs", "v_0 has fewer than s = " + std::to_string(s) + " neighbors"};
    std::vector<std::vector<Vertex>> vj(s);
    std::vector<Vertex> next;
    std::unordered_set<Vertex> hubset(hubs.begin(), hubs.end());
    for (Vertex x : order) {
      if (hubset.count(x)) continue;
      int best = -1;
      for (int j = 0; j < s; ++j)
        if ((best < 0 || vj[j].size() < vj[best].size()) && g_.adjacent(hubs[j + 1], x)) best = j;
      if (best < 0)
        next.push_back(x);
      else
        vj[best].push_back(x);
    }
    for (auto& v : vj)
      if (v.size() % 2) {
        next.push_back(v.front());
        v.erase(v.begin());
      }
    std::size_t low = SIZE_MAX;
    for (const auto& v : vj) low = std::min(low, v.size());
    for (auto& v : vj) {
      const std::size_t extra = v.size() - low;
      next.insert(next.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(extra));
      v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(extra));
    }
    const std::size_t b = next.size();
    if (low < 2 * s * b)
      throw LevelFailure{"split", "|V_j| = " + std::to_string(low) + " < 2 s |V^{i+1}| = " + std::to_string(2 * s * b)};
    const std::size_t y = (low - 2 * s * b) / 2;
    next = sorted(next);

    Built out;
    FlowerLevel& lv = out.level;
    lv.hubs = hubs;
    lv.u_parts.resize(s);
    for (int j = 0; j < s; ++j) {
      const auto& v = vj[j];
      for (int k = 0; k < s; ++k)
        lv.u_parts[j].emplace_back(v.begin() + static_cast<std::ptrdiff_t>(k * b),
                                   v.begin() + static_cast<std::ptrdiff_t>((k + 1) * b));
      lv.u.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s * b + y));
      lv.l.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(s * b + y), v.end());
      lv.w.push_back(lv.u_parts[j][0]);
      lv.petals.push_back(v);
    }

    // level-local adjacency over V^i
    level_.adj.assign(order.size(), {});
    for (std::size_t t = 0; t < order.size(); ++t) loc_[order[t]] = static_cast<int64_t>(t);
    auto& e = out.edges;
    for (int j = 1; j <= s; ++j) {
      e.emplace_back(v0, hubs[j]);
      for (Vertex x : vj[j - 1]) e.emplace_back(hubs[j], x);
    }
    auto plain = [&](std::span<const Vertex> xs, std::span<const Vertex> zs, const std::string& what, uint64_t tag) {
      auto m = match_sets(g_, xs, zs, nullptr, sub(i, attempt, tag));
      if (!m) throw LevelFailure{"matching", "no perfect matching " + what};
      for (auto [x, z] : *m) add_level_edge(x, z, e);
    };
    auto js = [](int j) { return std::to_string(j); };
    try {
      for (int j = 0; j < s; ++j) plain(lv.u[j], lv.l[j], "U_" + js(j + 1) + "-L_" + js(j + 1), 0x1000 + j);
      for (int j = 0; j < s; ++j) plain(lv.w[j], next, "W_" + js(j + 1) + "-V^{i+1}", 0x2000 + j);
      for (int j1 = 1; j1 <= s; ++j1)
        for (int j2 = 1; j2 <= s; ++j2) {
          if (j1 == j2) continue;
          const int f = wiring(j1, j2, s);
          valid_match(lv.w[j1 - 1], lv.u_parts[j2 - 1][f - 1],
                      "W_" + js(j1) + "-U_{" + js(j2) + "," + js(f) + "}", i, attempt, 0x3000 + j1 * 64 + j2, e);
        }
      for (int l = 2; l <= s; ++l)
        for (int j = 1; j < l; ++j)
          valid_match(lv.l[j - 1], lv.l[l - 1], "L_" + js(j) + "-L_" + js(l), i, attempt, 0x4000 + j * 64 + l, e);
      for (int l = 2; l <= s; ++l)
        for (int j = 1; j < l; ++j) {
          const auto residual = [&](int a, int c) {
            // U_a minus U_{a, f(c, a)} and W_a
            const int f = wiring(c, a, s);
            std::vector<Vertex> r;
            for (int k = 1; k <= s; ++k)
              if (k != 1 && k != f)
                r.insert(r.end(), lv.u_parts[a - 1][k - 1].begin(), lv.u_parts[a - 1][k - 1].end());
            r.insert(r.end(), lv.u[a - 1].begin() + static_cast<std::ptrdiff_t>(s * b), lv.u[a - 1].end());
            return r;
          };
          valid_match(residual(j, l), residual(l, j), "U_" + js(j) + "-U_" + js(l) + " (residual)", i, attempt,
                      0x5000 + j * 64 + l, e);
        }
    } catch (...) {
      for (Vertex x : order) loc_[x] = -1;
      throw;
    }
    for (Vertex x : order) loc_[x] = -1;
    for (auto& x : lv.petals) x = sorted(x);
    for (auto& x : lv.w) x = sorted(x);
    for (auto& x : lv.u) x = sorted(x);
    for (auto& x : lv.l) x = sorted(x);
    for (auto& row : lv.u_parts)
      for (auto& x : row) x = sorted(x);
    out.next = std::move(next);
    return out;
  }

  const HostGraph& g_;
  FlowerVariant variant_;
  RngSeed rng_;
  FlowerOptions opt_;
  std::size_t n_;
  std::vector<uint32_t> rank_;
  std::vector<int64_t> loc_, zidx_;
  LevelGraph level_;
  FlowerConstruction out_;
};

// Vertex roles for the validator.
enum Role : uint8_t { kNone, kHub0, kHub, kPetal, kCore };

struct Roles {
  std::vector<int> level;
  std::vector<Role> role;
  std::vector<int> petal;  // 0-based j for petal and hub vertices
  std::vector<uint8_t> w, u, y, l;
};

class Report {
 public:
  void add(const std::string& cond, const std::string& what) {
    auto& [count, first] = items_[cond];
    if (count++ == 0) first = what;
  }
  std::vector<std::string> finish() {
    std::vector<std::pair<std::string, std::pair<std::size_t, std::string>>> v(items_.begin(), items_.end());
    auto key = [](const std::string& c) {
      std::vector<int> k;
      std::size_t i = 0;
      while (i < c.size()) {
        if (std::isdigit(static_cast<unsigned char>(c[i]))) {
          int x = 0;
          while (i < c.size() && std::isdigit(static_cast<unsigned char>(c[i]))) x = x * 10 + (c[i++] - '0');
          k.push_back(x);
        } else {
          ++i;
        }
      }
      if (k.empty()) k.push_back(100);
      return k;
    };
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
    std::vector<std::string> out;
    for (auto& [cond, item] : v) {
      std::string s = cond + ": " + item.second;
      if (item.first > 1) s += " (" + std::to_string(item.first) + " violations)";
      out.push_back(s);
    }
    return out;
  }

 private:
  std::map<std::string, std::pair<std::size_t, std::string>> items_;
};

std::string edge_str(Vertex a, Vertex b) { return "{" + std::to_string(a) + "," + std::to_string(b) + "}"; }

}  // namespace

std::vector<std::size_t> FlowerConstruction::level_sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < v.size(); ++i) out.push_back(v[i].size());
  return out;
}

FlowerConstruction build_r_flower(const HostGraph& g, double p, RngSeed rng, const FlowerOptions& opt) {
  return FlowerBuilder(g, FlowerVariant::kR, p, rng, opt).run();
}

FlowerConstruction build_sr_flower(const HostGraph& g, double p, RngSeed rng, const FlowerOptions& opt) {
  return FlowerBuilder(g, FlowerVariant::kSR, p, rng, opt).run();
}

bool FlowerValidation::has(const std::string& condition) const {
  const std::string prefix = condition + ":";
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.compare(0, prefix.size(), prefix) == 0; });
}

FlowerValidation validate_flower(const FlowerConstruction& c, const HostGraph& g) {
  Report rep;
  const std::size_t n = g.n();
  const SparseGraph& a = c.selected;
  const bool sr = c.variant == FlowerVariant::kSR;
  const int r = c.r();
  FlowerValidation out;
  if (a.n() != n) {
    out.violations.push_back("1: construction has " + std::to_string(a.n()) + " vertices, host has " +
                             std::to_string(n));
    return out;
  }
  if (c.v.size() != static_cast<std::size_t>(r) + 1) {
    out.violations.push_back("1: expected " + std::to_string(r + 1) + " nested sets, found " +
                             std::to_string(c.v.size()));
    return out;
  }
  for (auto [x, y] : a.edges())
    if (!g.adjacent(x, y)) rep.add("host", "edge " + edge_str(x, y) + " is not in the host");

  Roles ro;
  ro.level.assign(n, 0);
  ro.role.assign(n, kNone);
  ro.petal.assign(n, -1);
  ro.w.assign(n, 0);
  ro.u.assign(n, 0);
  ro.y.assign(n, 0);
  ro.l.assign(n, 0);

  // 1: V^i = V^{i+1} + R_i + petals, disjoint; V^1 = [n]
  if (c.v[0].size() != n) rep.add("1", "|V^1| = " + std::to_string(c.v[0].size()) + " != n");
  std::vector<uint32_t> in_cur(n, 0), in_next(n, 0);
  for (int i = 1; i <= r; ++i) {
    const FlowerLevel& lv = c.levels[i - 1];
    for (Vertex x : c.v[i - 1]) in_cur[x] = i;
    for (Vertex x : c.v[i]) in_next[x] = i;
    std::vector<Vertex> parts;
    for (std::size_t k = 0; k < lv.hubs.size(); ++k) {
      const Vertex h = lv.hubs[k];
      parts.push_back(h);
      ro.level[h] = i;
      if (sr) {
        ro.role[h] = k == 0 ? kHub0 : kHub;
        ro.petal[h] = static_cast<int>(k) - 1;
      } else {
        ro.role[h] = kHub;
        ro.petal[h] = static_cast<int>(k);
      }
    }
    for (std::size_t j = 0; j < lv.petals.size(); ++j)
      for (Vertex x : lv.petals[j]) {
        parts.push_back(x);
        ro.level[x] = i;
        ro.role[x] = kPetal;
        ro.petal[x] = static_cast<int>(j);
      }
    std::size_t covered = c.v[i].size();
    for (Vertex x : c.v[i])
      if (in_cur[x] != static_cast<uint32_t>(i)) rep.add("1", "V^" + std::to_string(i + 1) + " is not inside V^" + std::to_string(i));
    std::unordered_set<Vertex> seen;
    for (Vertex x : parts) {
      if (in_cur[x] != static_cast<uint32_t>(i))
        rep.add("1", "vertex " + std::to_string(x) + " of level " + std::to_string(i) + " lies outside V^" + std::to_string(i));
      if (in_next[x] == static_cast<uint32_t>(i) || !seen.insert(x).second)
        rep.add("1", "vertex " + std::to_string(x) + " appears twice in level " + std::to_string(i));
      ++covered;
    }
    if (covered != c.v[i - 1].size())
      rep.add("1", "level " + std::to_string(i) + " parts cover " + std::to_string(covered) + " of |V^" +
                       std::to_string(i) + "| = " + std::to_string(c.v[i - 1].size()));
    // 2
    if (sr) {
      if (lv.hubs.size() != static_cast<std::size_t>(c.s) + 1)
        rep.add("2", "|R_" + std::to_string(i) + "| = " + std::to_string(lv.hubs.size()) + " != s + 1");
    } else {
      if (lv.hubs.size() != 3) {
        rep.add("2", "|R_" + std::to_string(i) + "| != 3");
      } else {
        for (int x = 0; x < 3; ++x)
          for (int y = x + 1; y < 3; ++y)
            if (!a.has_edge(lv.hubs[x], lv.hubs[y]))
              rep.add("2", "R_" + std::to_string(i) + " is not a triangle: " + edge_str(lv.hubs[x], lv.hubs[y]) + " missing");
      }
    }
  }
  for (Vertex x : c.v.back()) {
    if (ro.role[x] != kNone) rep.add("1", "core vertex " + std::to_string(x) + " also belongs to a level");
    ro.level[x] = r + 1;
    ro.role[x] = kCore;
  }
  // inside V^i: vertices of level >= i
  auto in_level = [&](Vertex x, int i) { return ro.level[x] >= i; };

  std::vector<uint32_t> mark_a(n, 0), mark_b(n, 0);
  uint32_t stamp = 0;
  // E(A[X + Z]) (minus E(A[Z]) when skip_z) is a perfect matching X-Z.
  auto perfect_between = [&](const std::vector<Vertex>& xs, const std::vector<Vertex>& zs, bool skip_z,
                             const std::string& cond, const std::string& name) {
    ++stamp;
    for (Vertex x : xs) mark_a[x] = stamp;
    for (Vertex z : zs) mark_b[z] = stamp;
    if (xs.size() != zs.size()) rep.add(cond, name + ": part sizes " + std::to_string(xs.size()) + " and " + std::to_string(zs.size()));
    for (Vertex x : xs) {
      std::size_t cross = 0;
      for (Vertex y : a.neighbors(x)) {
        if (mark_a[y] == stamp) rep.add(cond, name + ": edge " + edge_str(x, y) + " inside one side");
        if (mark_b[y] == stamp) ++cross;
      }
      if (cross != 1) rep.add(cond, name + ": vertex " + std::to_string(x) + " has " + std::to_string(cross) + " partners");
    }
    for (Vertex z : zs) {
      std::size_t cross = 0;
      for (Vertex y : a.neighbors(z)) {
        if (!skip_z && mark_b[y] == stamp && z < y) rep.add(cond, name + ": edge " + edge_str(z, y) + " inside one side");
        if (mark_a[y] == stamp) ++cross;
      }
      if (cross != 1) rep.add(cond, name + ": vertex " + std::to_string(z) + " has " + std::to_string(cross) + " partners");
    }
  };
  auto empty_between = [&](const std::vector<Vertex>& xs, const std::vector<Vertex>& zs, const std::string& cond,
                           const std::string& name) {
    ++stamp;
    for (Vertex x : xs) mark_a[x] = stamp;
    for (Vertex z : zs) mark_a[z] = stamp;
    for (Vertex x : xs)
      for (Vertex y : a.neighbors(x))
        if (mark_a[y] == stamp) rep.add(cond, name + ": edge " + edge_str(x, y));
    for (Vertex x : zs)
      for (Vertex y : a.neighbors(x))
        if (mark_a[y] == stamp && x < y) rep.add(cond, name + ": edge " + edge_str(x, y));
  };
  auto partition_of = [&](const std::vector<Vertex>& whole, std::initializer_list<const std::vector<Vertex>*> parts,
                          const std::string& name) {
    ++stamp;
    std::size_t total = 0;
    for (Vertex x : whole) mark_a[x] = stamp;
    for (const auto* p : parts)
      for (Vertex x : *p) {
        ++total;
        if (mark_a[x] != stamp) rep.add("4", name + ": vertex " + std::to_string(x) + " is not in the petal or repeats");
        mark_a[x] = 0;
      }
    if (total != whole.size()) rep.add("4", name + ": parts do not partition the petal");
  };

  for (int i = 1; i <= r; ++i) {
    const FlowerLevel& lv = c.levels[i - 1];
    const std::string li = std::to_string(i);
    const std::vector<Vertex>& next = c.v[i];
    // 3
    auto nbrs_in = [&](Vertex h) {
      std::vector<Vertex> out;
      for (Vertex y : a.neighbors(h))
        if (in_level(y, i)) out.push_back(y);
      return out;
    };
    std::unordered_set<Vertex> hubset(lv.hubs.begin(), lv.hubs.end());
    const std::size_t first_petal_hub = sr ? 1 : 0;
    if (sr && !lv.hubs.empty()) {
      auto nb = nbrs_in(lv.hubs[0]);
      std::vector<Vertex> want(lv.hubs.begin() + 1, lv.hubs.end());
      if (sorted(nb) != sorted(want)) rep.add("3", "N(v_0) at level " + li + " is not {v_1..v_s}");
    }
    for (std::size_t k = first_petal_hub; k < lv.hubs.size(); ++k) {
      const std::size_t j = k - first_petal_hub;
      std::vector<Vertex> nb;
      for (Vertex y : nbrs_in(lv.hubs[k]))
        if (sr ? y != lv.hubs[0] : !hubset.count(y)) nb.push_back(y);
      if (j >= lv.petals.size() || sorted(nb) != sorted(lv.petals[j]))
        rep.add("3", "neighborhood of hub " + std::to_string(lv.hubs[k]) + " at level " + li + " differs from V_" +
                         std::to_string(j + 1));
    }
    const std::size_t np = lv.petals.size();
    if (lv.w.size() != np || lv.u.size() != np || (sr ? lv.l.size() : lv.y.size()) != np) {
      rep.add("4", "level " + li + " has inconsistent part lists");
      continue;
    }
    for (std::size_t j = 0; j < np; ++j) {
      const std::string nm = "V_" + std::to_string(j + 1) + "^" + li;
      for (Vertex x : lv.w[j]) ro.w[x] = 1;
      for (Vertex x : lv.u[j]) ro.u[x] = 1;
      if (sr) {
        for (Vertex x : lv.l[j]) ro.l[x] = 1;
        partition_of(lv.petals[j], {&lv.u[j], &lv.l[j]}, nm);
        ++stamp;
        for (Vertex x : lv.u[j]) mark_a[x] = stamp;
        for (Vertex x : lv.w[j])
          if (mark_a[x] != stamp) rep.add("4", nm + ": W is not inside U");
        if (lv.u[j].size() != lv.l[j].size() || lv.w[j].size() != next.size())
          rep.add("4.1", nm + ": |U| = " + std::to_string(lv.u[j].size()) + ", |L| = " + std::to_string(lv.l[j].size()) +
                             ", |W| = " + std::to_string(lv.w[j].size()) + ", |V^{i+1}| = " + std::to_string(next.size()));
        perfect_between(lv.u[j], lv.l[j], false, "4.2", nm + " U-L");
        perfect_between(lv.w[j], next, true, "4.3", nm + " W-V^{i+1}");
      } else {
        for (Vertex x : lv.y[j]) ro.y[x] = 1;
        partition_of(lv.petals[j], {&lv.w[j], &lv.u[j], &lv.y[j]}, nm);
        perfect_between(lv.w[j], next, true, "4.1", nm + " W-V^{i+1}");
        perfect_between(lv.w[j], lv.u[j], false, "4.2", nm + " W-U");
        // 4.3: A[Y] is a perfect matching
        ++stamp;
        for (Vertex x : lv.y[j]) mark_a[x] = stamp;
        for (Vertex x : lv.y[j]) {
          std::size_t d = 0;
          for (Vertex y : a.neighbors(x)) d += mark_a[y] == stamp;
          if (d != 1) rep.add("4.3", nm + " Y: vertex " + std::to_string(x) + " has " + std::to_string(d) + " partners");
        }
      }
    }
    if (sr)
      for (std::size_t j1 = 0; j1 < np; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < np; ++j2) {
          const std::string nm = "level " + li + " pair (" + std::to_string(j1 + 1) + "," + std::to_string(j2 + 1) + ")";
          perfect_between(lv.u[j1], lv.u[j2], false, "4.4", nm + " U");
          perfect_between(lv.l[j1], lv.l[j2], false, "4.5", nm + " L");
          empty_between(lv.w[j1], lv.w[j2], "4.6", nm + " W");
        }
  }
  // C_4-freeness stands in for condition
  if (!is_cm_free(a, 4)) rep.add(sr ? "4.7" : "global", "A contains a C_4");
  // 5
  {
    const auto& core = c.v.back();
    const SparseGraph sub = a.induced(core);
    const InducedHost host(g, core);
    const SaturationReport sat = is_saturated(sub, host, 4, 1);
    if (!sat.is_free) rep.add("5", "A[V^{r+1}] contains a C_4");
    if (sat.violation_count)
      rep.add("5", "A[V^{r+1}] is not maximal: " + std::to_string(sat.violation_count) + " host edges can be added");
    if (sub.edge_count() != c.core_edges)
      rep.add("5", "core has " + std::to_string(sub.edge_count()) + " edges, record says " + std::to_string(c.core_edges));
  }
  // 6: every edge has a role
  for (auto [x, y] : a.edges()) {
    if (ro.role[x] == kNone || ro.role[y] == kNone) {
      rep.add("6", "edge " + edge_str(x, y) + " touches an unassigned vertex");
      continue;
    }
    if (ro.role[x] == kCore && ro.role[y] == kCore) continue;
    Vertex lo = x, hi = y;
    if (ro.level[lo] > ro.level[hi]) std::swap(lo, hi);
    bool ok = false;
    if (ro.level[lo] != ro.level[hi]) {
      ok = ro.role[lo] == kPetal && ro.w[lo];
    } else if (sr) {
      const Role a1 = ro.role[lo], a2 = ro.role[hi];
      const int p1 = ro.petal[lo], p2 = ro.petal[hi];
      if ((a1 == kHub0 && a2 == kHub) || (a1 == kHub && a2 == kHub0)) ok = true;
      else if ((a1 == kHub && a2 == kPetal) || (a1 == kPetal && a2 == kHub)) ok = p1 == p2;
      else if (a1 == kPetal && a2 == kPetal) {
        if (p1 == p2) ok = ro.u[lo] != ro.u[hi];
        else ok = ro.u[lo] == ro.u[hi];
      }
    } else {
      const Role a1 = ro.role[lo], a2 = ro.role[hi];
      const int p1 = ro.petal[lo], p2 = ro.petal[hi];
      if (a1 == kHub && a2 == kHub) ok = true;
      else if ((a1 == kHub && a2 == kPetal) || (a1 == kPetal && a2 == kHub)) ok = p1 == p2;
      else if (a1 == kPetal && a2 == kPetal && p1 == p2)
        ok = (ro.w[lo] && ro.u[hi]) || (ro.u[lo] && ro.w[hi]) || (ro.y[lo] && ro.y[hi]);
    }
    if (!ok) rep.add("6", "edge " + edge_str(x, y) + " belongs to no part of the definition");
  }
  out.violations = rep.finish();
  return out;
}

int64_t flower_edge_count(FlowerVariant variant, std::size_t core_edges, std::size_t n, int r, int s,
                          std::span<const std::size_t> level_sizes) {
  if (r < 0 || level_sizes.size() != static_cast<std::size_t>(r))
    throw std::invalid_argument("flower_edge_count: expected " + std::to_string(r) + " level sizes");
  const int64_t last = r ? static_cast<int64_t>(level_sizes.back()) : static_cast<int64_t>(n);
  int64_t sum = 0;
  for (std::size_t x : level_sizes) sum += static_cast<int64_t>(x);
  const int64_t rest = static_cast<int64_t>(n) - last;
  const int64_t core = static_cast<int64_t>(core_edges);
  if (variant == FlowerVariant::kR) {
    const int64_t twice = 3 * (rest - r);
    if (twice % 2) throw std::invalid_argument("flower_edge_count: non-integral r-flower count");
    return core + twice / 2 + 3 * sum;
  }
  if (s < 1) throw std::invalid_argument("flower_edge_count: s must be positive");
  const int64_t twice = static_cast<int64_t>(s + 2) * rest;
  if (twice % 2) throw std::invalid_argument("flower_edge_count: non-integral (s,r)-flower count");
  return core - r + twice / 2 - static_cast<int64_t>(r) * s * (s + 1) / 2 + s * sum;
}

double sr_edge_count_published(std::size_t core_edges, std::size_t n, int r, int s,
                               std::span<const std::size_t> level_sizes) {
  if (r < 0 || level_sizes.size() != static_cast<std::size_t>(r))
    throw std::invalid_argument("sr_edge_count_published: expected " + std::to_string(r) + " level sizes");
  const double last = r ? static_cast<double>(level_sizes.back()) : static_cast<double>(n);
  double sum = 0;
  for (std::size_t x : level_sizes) sum += static_cast<double>(x);
  return static_cast<double>(core_edges) - r + (s + 1) / 2.0 * (static_cast<double>(n) - last) -
         r * s * (s + 1) / 2.0 + s * sum;
}

std::string store_construction(const FlowerConstruction& c) {
  json levels = json::array();
  for (const FlowerLevel& lv : c.levels) {
    json sizes = json::array();
    for (std::size_t j = 0; j < lv.petals.size(); ++j) {
      json p{{"petal", lv.petals[j].size()}, {"w", lv.w[j].size()}, {"u", lv.u[j].size()}};
      if (j < lv.y.size()) p["y"] = lv.y[j].size();
      if (j < lv.l.size()) p["l"] = lv.l[j].size();
      sizes.push_back(p);
    }
    levels.push_back({{"hubs", lv.hubs}, {"parts", sizes}});
  }
  json j{{"variant", c.variant == FlowerVariant::kR ? "r-flower" : "sr-flower"},
         {"params", json::parse(store_params(c.params))},
         {"s", c.s},
         {"r", c.r()},
         {"r_nominal", c.r_nominal},
         {"level_sizes", c.level_sizes()},
         {"core_size", c.core().size()},
         {"core_edges", c.core_edges},
         {"levels", levels},
         {"log", c.log},
         {"edges", c.selected.edge_count()},
         {"graph", json::parse(store_graph(c.selected))}};
  return j.dump();
}

}  // namespace cmsat
