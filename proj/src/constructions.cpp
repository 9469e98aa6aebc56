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

#include "cmsat/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cmsat/matching.hpp"
#include "json.hpp"

namespace cmsat {

namespace {

using json = nlohmann::json;

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Large independent sets inside a vertex pool: sampled min-degree greedy,
// then iterated local search with (1,2)-swaps.
class IndependentSets {
 public:
  IndependentSets(const Graph& g, std::mt19937_64& eng)
      : g_(g), eng_(eng), w_(g.row_words()), cand_(g.n()), c1_(g.n()), c2_(g.n()), m_(g.n()), t_(g.n()) {}

  std::vector<Vertex> run(const Bitset& pool, int iterations) {
    pool_ = &pool;
    std::vector<Vertex> s;
    maximalize(s);
    improve(s);
    std::vector<Vertex> best = s;
    const std::size_t size = pool.count();
    for (int it = 0; it < iterations && size > best.size(); ++it) {
      perturb(s);
      improve(s);
      if (s.size() > best.size()) {
        best = s;
      } else if (s.size() < best.size()) {
        s = best;
      }
    }
    std::sort(best.begin(), best.end());
    return best;
  }

 private:
  const uint64_t* row(Vertex v) const { return g_.row_data(v); }

  void and_not_row(Bitset& b, Vertex v) const {
    uint64_t* d = b.data();
    const uint64_t* r = row(v);
    for (std::size_t k = 0; k < w_; ++k) d[k] &= ~r[k];
  }
  std::size_t degree_in(Vertex v, const Bitset& b) const {
    const uint64_t* d = b.data();
    const uint64_t* r = row(v);
    std::size_t c = 0;
    for (std::size_t k = 0; k < w_; ++k) c += std::popcount(d[k] & r[k]);
    return c;
  }

  void maximalize(std::vector<Vertex>& s) {
    cand_ = *pool_;
    for (Vertex x : s) {
      and_not_row(cand_, x);
      cand_.reset(x);
    }
    std::vector<Vertex> vs;
    while (cand_.any()) {
      vs = cand_.to_vector();
      Vertex pick = vs[0];
      std::size_t best = SIZE_MAX;
      const std::size_t samples = std::min<std::size_t>(vs.size(), 16);
      for (std::size_t t = 0; t < samples; ++t) {
        const Vertex v = vs.size() <= 16 ? vs[t] : vs[eng_() % vs.size()];
        const std::size_t d = degree_in(v, cand_);
        if (d < best) {
          best = d;
          pick = v;
        }
      }
      s.push_back(pick);
      and_not_row(cand_, pick);
      cand_.reset(pick);
    }
  }

  void improve(std::vector<Vertex>& s) {
    while (true) {
      c1_.clear();
      c2_.clear();
      for (Vertex x : s) {
        const uint64_t* r = row(x);
        uint64_t* a = c1_.data();
        uint64_t* b = c2_.data();
        for (std::size_t k = 0; k < w_; ++k) {
          b[k] |= a[k] & r[k];
          a[k] |= r[k];
        }
      }
      // one-tight vertices: exactly one neighbor in s
      t_ = *pool_;
      t_ &= c1_;
      t_.and_not(c2_);
      std::vector<std::size_t> order(s.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), eng_);
      bool swapped = false;
      for (std::size_t idx : order) {
        const Vertex x = s[idx];
        m_ = t_;
        {
          uint64_t* d = m_.data();
          const uint64_t* r = row(x);
          for (std::size_t k = 0; k < w_; ++k) d[k] &= r[k];
        }
        Vertex y0 = 0, z0 = 0;
        bool found = false;
        m_.for_each([&](Vertex y) {
          if (found) return;
          const uint64_t* d = m_.data();
          const uint64_t* r = row(y);
          for (std::size_t k = 0; k < w_ && !found; ++k) {
            uint64_t c = d[k] & ~r[k];
            if (k == (y >> 6)) c &= ~(uint64_t{1} << (y & 63));
            if (c) {
              y0 = y;
              z0 = static_cast<Vertex>(k * 64 + std::countr_zero(c));
              found = true;
            }
          }
        });
        if (found) {
          s[idx] = y0;
          s.push_back(z0);
          maximalize(s);
          swapped = true;
          break;
        }
      }
      if (!swapped) return;
    }
  }

  void perturb(std::vector<Vertex>& s) {
    cand_ = *pool_;
    for (Vertex x : s) cand_.reset(x);
    if (!cand_.any()) return;
    const auto vs = cand_.to_vector();
    const Vertex v = vs[eng_() % vs.size()];
    std::erase_if(s, [&](Vertex x) { return g_.adjacent(x, v); });
    s.push_back(v);
    maximalize(s);
  }

  const Graph& g_;
  std::mt19937_64& eng_;
  std::size_t w_;
  const Bitset* pool_ = nullptr;
  Bitset cand_, c1_, c2_, m_, t_;
};

// Induced cycle of length k through start; the other vertices come from
// allowed. Depth-first with a node budget, random branch order.
std::optional<std::vector<Vertex>> find_induced_cycle(const Graph& g, Vertex start, const Bitset& allowed, int k,
                                                      std::mt19937_64& eng, uint64_t budget) {
  const std::size_t w = g.row_words();
  std::vector<Vertex> path{start};
  uint64_t nodes = 0;
  Bitset cand(g.n());

  auto candidates = [&](std::size_t j) {
    cand = allowed;
    uint64_t* c = cand.data();
    const uint64_t* prev = g.row_data(path[j - 1]);
    for (std::size_t q = 0; q < w; ++q) c[q] &= prev[q];
    const bool last = static_cast<int>(j) == k - 1;
    if (last) {
      const uint64_t* first = g.row_data(path[0]);
      for (std::size_t q = 0; q < w; ++q) c[q] &= first[q];
    }
    // no chords: closed neighborhoods of all but the previous vertex (and
    // the first one when closing)
    for (std::size_t t = last ? 1 : 0; t + 1 < j; ++t) {
      const uint64_t* r = g.row_data(path[t]);
      for (std::size_t q = 0; q < w; ++q) c[q] &= ~r[q];
    }
    for (Vertex x : path) cand.reset(x);
    auto vs = cand.to_vector();
    std::shuffle(vs.begin(), vs.end(), eng);
    if (vs.size() > 48) vs.resize(48);
    return vs;
  };

  auto dfs = [&](auto&& self, std::size_t j) -> bool {
    if (static_cast<int>(j) == k) return true;
    if (++nodes > budget) return false;
    for (Vertex x : candidates(j)) {
      path.push_back(x);
      if (self(self, j + 1)) return true;
      path.pop_back();
      if (nodes > budget) return false;
    }
    return false;
  };
  if (dfs(dfs, 1)) return path;
  return std::nullopt;
}

void check_star_factor(const Graph& g, const StarFactorConstruction& c) {
  const std::size_t n = g.n();
  std::vector<char> seen(n, 0);
  seen[c.hub] = 1;
  for (const Star& s : c.stars) {
    if (!g.adjacent(c.hub, s.center))
      throw ConstructionError("assembly", 0, "center " + std::to_string(s.center) + " is not a hub neighbor");
    for (Vertex x : s.leaves) {
      if (!g.adjacent(s.center, x))
        throw ConstructionError("assembly", 0, "leaf " + std::to_string(x) + " not adjacent to its center");
      for (Vertex y : s.leaves)
        if (x < y && g.adjacent(x, y))
          throw ConstructionError("assembly", 0, "star at " + std::to_string(s.center) + " is not induced");
    }
    for (Vertex x : s.leaves) {
      if (seen[x]) throw ConstructionError("assembly", 0, "vertex " + std::to_string(x) + " covered twice");
      seen[x] = 1;
    }
    if (seen[s.center]) throw ConstructionError("assembly", 0, "vertex " + std::to_string(s.center) + " covered twice");
    seen[s.center] = 1;
  }
  for (Vertex v = 0; v < n; ++v)
    if (!seen[v]) throw ConstructionError("assembly", 0, "vertex " + std::to_string(v) + " is not covered");
  for (const auto& cyc : c.cycle_factor) {
    const std::size_t k = cyc.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
        if (g.adjacent(cyc[i], cyc[j]) != consecutive)
          throw ConstructionError("assembly", 0, "cycle through " + std::to_string(cyc[0]) + " is not induced");
      }
  }
}

void emit(const Graph& g, StarFactorConstruction& c) {
  std::sort(c.residual_matching.begin(), c.residual_matching.end());
  check_star_factor(g, c);
  std::vector<Edge> es;
  auto add = [&](Vertex a, Vertex b) { es.emplace_back(std::min(a, b), std::max(a, b)); };
  c.centers.clear();
  for (const Star& s : c.stars) {
    c.centers.push_back(s.center);
    add(c.hub, s.center);
    for (Vertex x : s.leaves) add(s.center, x);
  }
  for (const auto& cyc : c.cycle_factor)
    for (std::size_t i = 0; i < cyc.size(); ++i) add(cyc[i], cyc[(i + 1) % cyc.size()]);
  std::sort(es.begin(), es.end());
  c.selected = SparseGraph(g.n(), es);
  if (c.selected.edge_count() != c.recount())
    throw ConstructionError("assembly", 0, "emitted " + std::to_string(c.selected.edge_count()) +
                                               " edges, components give " + std::to_string(c.recount()));
}

class FiniteStarFactor {
 public:
  FiniteStarFactor(const Graph& g, const ConstructionParams& prm, RngSeed rng, const StarFactorOptions& opt)
      : g_(g),
        prm_(prm),
        opt_(opt),
        rng_(rng),
        eng_(make_engine(rng, 0x73746172ULL)),
        n_(g.n()),
        k_(prm.m - 2),
        uncovered_(n_),
        hubnb_(n_),
        center_(n_),
        owner_(n_, -1),
        mis_(g, eng_) {}

  StarFactorConstruction run() {
    out_.params = prm_;
    out_.policy = StarPolicy::kFiniteN;
    out_.hub = 0;
    uncovered_.fill();
    uncovered_.reset(0);
    g_.row(0, hubnb_);
    initial_cycles();
    stars();
    endgame();
    std::vector<Edge> kept;
    for (auto [x, c] : out_.residual_matching) {
      const Star& s = out_.stars[owner_[c]];
      if (s.leaves.size() == 1 && s.leaves[0] == x) kept.emplace_back(x, c);
    }
    out_.residual_matching = kept;
    emit(g_, out_);
    return std::move(out_);
  }

 private:
  void add_cycle(const std::vector<Vertex>& cyc) {
    for (Vertex v : cyc) {
      if (owner_[v] >= 0) {
        auto& lv = out_.stars[owner_[v]].leaves;
        lv.erase(std::find(lv.begin(), lv.end(), v));
      } else {
        uncovered_.reset(v);
      }
      owner_[v] = static_cast<int64_t>(out_.stars.size());
      center_.set(v);
      out_.stars.push_back(Star{v, {}});
      searched_.push_back(0);
    }
    out_.cycle_factor.push_back(cyc);
  }

  // Induced C_{m-2} among hub neighbors that are not centers; from_leaves
  // also admits current leaves.
  bool new_cycle(const std::vector<Vertex>& starts, bool from_leaves) {
    Bitset allowed = hubnb_;
    allowed.and_not(center_);
    if (!from_leaves) allowed &= uncovered_;
    std::size_t tries = 0;
    for (Vertex s : starts) {
      if (!allowed.test(s)) continue;
      if (++tries > 64) break;
      if (auto cyc = find_induced_cycle(g_, s, allowed, k_, eng_, 4000)) {
        add_cycle(*cyc);
        return true;
      }
    }
    return false;
  }

  void initial_cycles() {
    const double lq = log_q(prm_.p, std::max(2.0, static_cast<double>(n_) * prm_.p));
    const double est = std::max(1.0, 2 * lq - 2 * log_q(prm_.p, std::max(lq, std::exp(1.0))));
    const std::size_t hub_degree = hubnb_.count();
    std::size_t batch = static_cast<std::size_t>(0.7 * static_cast<double>(n_) / (est + 1) / k_) * k_;
    batch = std::min(batch, hub_degree / (2 * k_) * k_);
    if (batch == 0) return;
    std::vector<Vertex> nset;
    hubnb_.for_each([&](Vertex v) {
      if (nset.size() < batch) nset.push_back(v);
    });
    RngSeed sub{derive_key(rng_, 0x6379636cULL), rng_.stream};
    CycleFactor cf = induced_cycle_factor(g_, nset, prm_.m, sub, opt_.retries);
    if (cf.ok()) {
      for (const auto& c : cf.cycles) add_cycle(c);
      out_.log.push_back("cycle-factor: " + std::to_string(cf.cycles.size()) + " induced C_" + std::to_string(k_) +
                         " on the first " + std::to_string(batch) + " hub neighbors");
      return;
    }
    out_.log.push_back("cycle-factor: layer " + std::to_string(cf.failed_layer) + " had no perfect matching after " +
                       std::to_string(opt_.retries) + " labelings; induced cycles found greedily instead");
    for (std::size_t c = 0; c < batch / k_; ++c) {
      auto starts = uncovered_hub_neighbors();
      if (!new_cycle(starts, false)) break;
    }
  }

  std::vector<Vertex> uncovered_hub_neighbors() {
    Bitset b = hubnb_;
    b &= uncovered_;
    auto vs = b.to_vector();
    std::shuffle(vs.begin(), vs.end(), eng_);
    return vs;
  }

  Bitset pool(Vertex c) const {
    Bitset b(n_);
    g_.row(c, b);
    b &= uncovered_;
    return b;
  }

  void take(std::size_t star, const std::vector<Vertex>& leaves) {
    for (Vertex x : leaves) {
      uncovered_.reset(x);
      owner_[x] = static_cast<int64_t>(star);
      out_.stars[star].leaves.push_back(x);
    }
  }

  void stars() {
    int64_t target = std::max<int64_t>({prm_.a, static_cast<int64_t>(std::floor(2 * prm_.log_n)), 2});
    int failures = 0;
    std::size_t batch_best = 0;  // largest star seen since the last success
    while (uncovered_.any()) {
      std::vector<std::pair<std::size_t, std::size_t>> open;  // (-pool size, star)
      for (std::size_t t = 0; t < out_.stars.size(); ++t)
        if (!searched_[t]) open.emplace_back(pool(out_.stars[t].center).count(), t);
      if (open.empty()) {
        if (!new_cycle(uncovered_hub_neighbors(), false)) break;
        continue;
      }
      std::sort(open.begin(), open.end(), [](auto x, auto y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
      if (open.size() > static_cast<std::size_t>(opt_.candidates)) open.resize(opt_.candidates);
      std::vector<Vertex> best;
      std::size_t best_star = open[0].second;
      for (auto [sz, t] : open) {
        if (sz <= best.size()) continue;
        auto s = mis_.run(pool(out_.stars[t].center), opt_.ils_iterations);
        if (s.size() > best.size()) {
          best = std::move(s);
          best_star = t;
        }
      }
      batch_best = std::max(batch_best, best.size());
      if (static_cast<int64_t>(best.size()) < target - 1 && ++failures >= opt_.retries) {
        failures = 0;
        target = std::min<int64_t>(target - 1, static_cast<int64_t>(batch_best) + 1);
        batch_best = 0;
        if (target - 1 < 2) {
          out_.log.push_back("stars: largest induced star has " + std::to_string(best.size()) +
                             " leaves; remaining vertices go to the endgame");
          break;
        }
        out_.log.push_back("stars: target star size lowered to " + std::to_string(target) + " after " +
                           std::to_string(opt_.retries) + " failed searches (" + std::to_string(out_.stars.size()) +
                           " centers, " + std::to_string(uncovered_.count()) + " uncovered)");
      }
      if (static_cast<int64_t>(best.size()) >= target - 1) {
        failures = 0;
        batch_best = 0;
        searched_[best_star] = 1;
        take(best_star, best);
      }
    }
    out_.star_target = target;
  }

  bool absorbs(const Star& s, Vertex v) const {
    if (!g_.adjacent(s.center, v)) return false;
    for (Vertex x : s.leaves)
      if (g_.adjacent(x, v)) return false;
    return true;
  }

  void endgame() {
    std::size_t cycles_added = 0, absorbed = 0, matched = 0;
    for (std::size_t round = 0; uncovered_.any(); ++round) {
      if (round > 4 * n_) throw ConstructionError("endgame", 0, "no progress");
      bool progress = false;
      for (Vertex v : uncovered_.to_vector()) {
        for (std::size_t t = 0; t < out_.stars.size(); ++t) {
          Star& s = out_.stars[t];
          if (s.leaves.empty() || !absorbs(s, v)) continue;
          take(t, {v});
          ++absorbed;
          progress = true;
          break;
        }
      }
      if (!uncovered_.any()) break;
      std::vector<Vertex> rest = uncovered_.to_vector(), empty;
      for (const Star& s : out_.stars)
        if (s.leaves.empty()) empty.push_back(s.center);
      if (!empty.empty()) {
        const Matching mm = maximum_matching_bipartite(BipartiteGraph::between(g_, rest, empty));
        for (auto [i, j] : mm.pairs) {
          take(owner_[empty[j]], {rest[i]});
          out_.residual_matching.emplace_back(rest[i], empty[j]);
          ++matched;
          progress = true;
        }
      }
      if (!uncovered_.any()) break;
      const Vertex v = static_cast<Vertex>(uncovered_.first());
      std::vector<Vertex> starts;
      if (hubnb_.test(v)) {
        starts.push_back(v);
      } else {
        Bitset b(n_);
        g_.row(v, b);
        b &= hubnb_;
        b.and_not(center_);
        starts = b.to_vector();
        std::shuffle(starts.begin(), starts.end(), eng_);
      }
      if (new_cycle(starts, true)) {
        ++cycles_added;
        progress = true;
      }
      if (!progress)
        throw ConstructionError("endgame", 0, "vertex " + std::to_string(v) + " fits no star and no new center");
    }
    out_.log.push_back("endgame: " + std::to_string(absorbed) + " vertices absorbed into stars, " +
                       std::to_string(matched) + " matched to empty centers, " + std::to_string(cycles_added) +
                       " extra cycles");
  }

  const Graph& g_;
  ConstructionParams prm_;
  StarFactorOptions opt_;
  RngSeed rng_;
  std::mt19937_64 eng_;
  std::size_t n_;
  int k_;
  Bitset uncovered_, hubnb_, center_;
  std::vector<int64_t> owner_;
  std::vector<char> searched_;
  IndependentSets mis_;
  StarFactorConstruction out_;
};

StarFactorConstruction literal_star_factor(const Graph& g, const ConstructionParams& prm, RngSeed rng,
                                         const StarFactorOptions& opt) {
  if (!prm.too_small.empty())
    throw ConstructionError("params", 0, "n too small: " + prm.too_small + " is not positive");
  if (prm.a < 2) throw ConstructionError("params", 0, "n too small: a = " + std::to_string(prm.a) + " < 2");
  const std::size_t n = g.n();
  const std::size_t ell = static_cast<std::size_t>(prm.ell);
  const std::size_t d = prm.d;
  StarFactorConstruction out;
  out.params = prm;
  out.policy = StarPolicy::kLiteral;
  auto hubnb = g.neighbors(0);
  if (hubnb.size() < ell)
    throw ConstructionError("centers", 0, "hub has " + std::to_string(hubnb.size()) + " neighbors, need " +
                                              std::to_string(ell));
  std::vector<Vertex> nset(hubnb.begin(), hubnb.begin() + static_cast<std::ptrdiff_t>(ell));
  CycleFactor cf = induced_cycle_factor(g, nset, prm.m, rng, opt.retries);
  if (!cf.ok())
    throw ConstructionError("cycle-factor", 0, "layer " + std::to_string(cf.failed_layer) + " has no perfect matching");
  out.cycle_factor = cf.cycles;
  const int64_t nd = prm.ell - (prm.b + static_cast<int64_t>(d) - 1);
  if (nd < 1) throw ConstructionError("split", 0, "|N''| = " + std::to_string(nd) + " is not positive");
  const std::size_t n1 = ell - static_cast<std::size_t>(nd);

  std::vector<char> in_n(n, 0), covered(n, 0), used_center(n, 0);
  for (Vertex v : nset) in_n[v] = 1;
  covered[0] = 1;
  std::vector<Star> stars;
  auto eng = make_engine(rng, 0x7061706572ULL);
  std::size_t size = static_cast<std::size_t>(prm.a - 1);
  for (int64_t i = 0; i < prm.b; ++i) {
    std::optional<Star> st;
    for (int attempt = 0; !st; ++attempt) {
      std::vector<Vertex> vpool, wpool;
      for (std::size_t j = 0; j < n1; ++j)
        if (!used_center[nset[j]]) vpool.push_back(nset[j]);
      for (Vertex v = 0; v < n; ++v)
        if (!in_n[v] && !covered[v]) wpool.push_back(v);
      if (attempt > 0) {
        std::shuffle(vpool.begin(), vpool.end(), eng);
        std::shuffle(wpool.begin(), wpool.end(), eng);
      }
      if (vpool.size() > d) vpool.resize(d);
      if (wpool.size() > d) wpool.resize(d);
      st = find_induced_star(g, vpool, wpool, size);
      if (!st && attempt + 1 >= opt.retries) {
        attempt = -1;
        if (size <= 1) throw ConstructionError("stars", 0, "no induced star for star " + std::to_string(i + 1));
        --size;
        out.log.push_back("stars: star size lowered to " + std::to_string(size + 1) + " at star " +
                          std::to_string(i + 1));
      }
    }
    used_center[st->center] = 1;
    for (Vertex x : st->leaves) covered[x] = 1;
    stars.push_back(*st);
  }
  std::vector<Vertex> r, rp;
  for (Vertex v = 0; v < n; ++v)
    if (!in_n[v] && !covered[v]) r.push_back(v);
  if (r.size() > static_cast<std::size_t>(nd))
    throw ConstructionError("residual", 0, "|R| = " + std::to_string(r.size()) + " exceeds |N''| = " +
                                               std::to_string(nd));
  rp.assign(nset.begin() + static_cast<std::ptrdiff_t>(n1),
            nset.begin() + static_cast<std::ptrdiff_t>(n1 + r.size()));
  auto mm = perfect_matching_bipartite(BipartiteGraph::between(g, r, rp));
  if (!mm) throw ConstructionError("residual-matching", 0, "no perfect matching between R and R'");
  std::vector<int64_t> star_of(n, -1);
  for (Vertex c : nset) {
    star_of[c] = static_cast<int64_t>(out.stars.size());
    out.stars.push_back(Star{c, {}});
  }
  for (const Star& s : stars) out.stars[star_of[s.center]].leaves = s.leaves;
  for (auto [i, j] : mm->pairs) {
    out.stars[star_of[rp[j]]].leaves.push_back(r[i]);
    out.residual_matching.emplace_back(r[i], rp[j]);
  }
  out.star_target = static_cast<int64_t>(size) + 1;
  emit(g, out);
  return out;
}

}  // namespace

double log_q(double p, double x) {
  return static_cast<double>(std::log(static_cast<long double>(x)) / -std::log1p(-static_cast<long double>(p)));
}

int minimal_s(double p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("minimal_s: p must lie in (0,1)");
  const long double q = 1.0L - p;
  for (int s = 1; s < 1'000'000; ++s)
    if ((2.0L * s * s + 1) * std::pow(q, static_cast<long double>(s)) < 1) return s;
  throw std::invalid_argument("minimal_s: p too small");
}

ConstructionParams compute_params(std::size_t n, double p, int m) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("compute_params: p must lie in (0,1)");
  if (n < 3) throw std::invalid_argument("compute_params: n must be at least 3");
  if (m < 3) throw std::invalid_argument("compute_params: m must be at least 3");
  ConstructionParams c;
  c.n = n;
  c.p = p;
  c.m = m;
  const long double base = -std::log1p(-static_cast<long double>(p));
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double lq = ln_n / base;
  c.log_n = static_cast<double>(lq);
  c.d = static_cast<std::size_t>(std::floor(static_cast<long double>(n) / (ln_n * ln_n)));
  c.a = static_cast<int64_t>(std::floor(2 * lq - 8 * std::log(ln_n) / base));
  const int64_t d = static_cast<int64_t>(c.d);
  const int64_t slack = static_cast<int64_t>(n) - 3 * d - 2 * m;
  if (c.a >= 1) {
    c.b = floor_div(slack, c.a) + 1;
    if (c.b < 0) c.b = 0;
  }
  c.ell = floor_div(c.b + 2 * d + 2 * m - 1, m - 2) * (m - 2);
  c.s = minimal_s(p);
  c.r_flower = static_cast<int>(std::ceil(5.0L / 24 * lq));
  c.r_sr = static_cast<int>(std::ceil(5 * lq / (8.0L * c.s)));
  if (c.a < 1)
    c.too_small = "a";
  else if (c.b < 1)
    c.too_small = "b";
  else if (c.ell < 1)
    c.too_small = "ell";
  return c;
}

std::optional<Star> find_induced_star(const HostGraph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                                      std::size_t size, uint64_t backtrack_budget) {
  if (a.empty()) return std::nullopt;
  std::vector<std::pair<std::size_t, Vertex>> order;
  for (Vertex c : a) {
    std::size_t deg = 0;
    for (Vertex x : b)
      if (g.adjacent(c, x)) ++deg;
    order.emplace_back(deg, c);
  }
  std::stable_sort(order.begin(), order.end(), [](auto x, auto y) { return x.first < y.first; });
  for (auto [deg, c] : order) {
    if (deg < size) continue;
    std::vector<Vertex> cand;
    for (Vertex x : b)
      if (g.adjacent(c, x)) cand.push_back(x);
    std::vector<Vertex> chosen;
    uint64_t steps = 0;
    auto grow = [&](auto&& self, std::size_t from) -> bool {
      if (chosen.size() == size) return true;
      for (std::size_t i = from; i < cand.size(); ++i) {
        if (cand.size() - i < size - chosen.size()) return false;
        const Vertex x = cand[i];
        bool ok = true;
        for (Vertex y : chosen)
          if (g.adjacent(x, y)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(x);
        if (self(self, i + 1)) return true;
        chosen.pop_back();
        if (++steps > backtrack_budget) return false;
      }
      return false;
    };
    if (grow(grow, 0)) return Star{c, chosen};
  }
  return std::nullopt;
}

CycleFactor induced_cycle_factor(const HostGraph& g, std::span<const Vertex> n_set, int m, RngSeed rng,
                                 int attempts) {
  if (m < 5) throw std::invalid_argument("induced_cycle_factor: m must be at least 5");
  const std::size_t k = static_cast<std::size_t>(m - 2);
  if (n_set.size() % k)
    throw std::invalid_argument("induced_cycle_factor: |N| = " + std::to_string(n_set.size()) +
                                " is not divisible by " + std::to_string(k));
  const std::size_t t = n_set.size() / k;
  CycleFactor out;
  if (t == 0) return out;
  auto eng = make_engine(rng, 0x666163746f72ULL);
  std::vector<Vertex> labels(n_set.begin(), n_set.end());
  for (int attempt = 0; attempt < std::max(1, attempts); ++attempt) {
    if (attempt > 0) std::shuffle(labels.begin(), labels.end(), eng);
    std::vector<std::vector<Vertex>> paths(t);
    for (std::size_t j = 0; j < t; ++j) paths[j].push_back(labels[j * k]);
    int failed = 0;
    for (std::size_t i = 1; i < k && !failed; ++i) {
      const bool last = i == k - 1;
      BipartiteGraph h(t, t);
      for (std::size_t j = 0; j < t; ++j) {
        const auto& path = paths[j];
        for (std::size_t r = 0; r < t; ++r) {
          const Vertex x = labels[r * k + i];
          if (!g.adjacent(path.back(), x)) continue;
          if (last && !g.adjacent(path.front(), x)) continue;
          bool ok = true;
          for (std::size_t q = last ? 1 : 0; q + 1 < path.size() && ok; ++q) ok = !g.adjacent(path[q], x);
          if (ok) h.add_edge(static_cast<Vertex>(j), static_cast<Vertex>(r));
        }
      }
      auto pm = perfect_matching_bipartite(h);
      if (!pm) {
        failed = static_cast<int>(i);
        break;
      }
      for (auto [j, r] : pm->pairs) paths[j].push_back(labels[r * k + i]);
    }
    if (!failed) {
      out.cycles = std::move(paths);
      out.failed_layer = 0;
      return out;
    }
    out.failed_layer = failed;
  }
  return out;
}

std::size_t StarFactorConstruction::recount() const {
  std::size_t e = stars.size();
  for (const auto& c : cycle_factor) e += c.size();
  for (const Star& s : stars) e += s.leaves.size();
  return e;
}

StarFactorConstruction build_star_factor(const Graph& g, double p, int m, RngSeed rng, const StarFactorOptions& opt) {
  if (m < 5) throw std::invalid_argument("build_star_factor: m must be at least 5");
  const ConstructionParams prm = compute_params(g.n(), p, m);
  if (opt.policy == StarPolicy::kLiteral) return literal_star_factor(g, prm, rng, opt);
  if (g.degree(0) < static_cast<std::size_t>(m - 2))
    throw ConstructionError("centers", 0, "hub has too few neighbors");
  return FiniteStarFactor(g, prm, rng, opt).run();
}

double saturated_edge_budget(const ConstructionParams& params, ConstructionKind kind) {
  const double p = params.p;
  const double lq = log_q(p, static_cast<double>(params.n));
  auto r_flower_rate = [&] {
    const double q = std::pow(1 - p, 3);
    return 3 * (1 + q) / (2 * (1 - q));
  };
  auto sr_flower_rate = [&] {
    const int s = minimal_s(p);
    const double q = std::pow(1 - p, s);
    return (s + 1) / 2.0 + s * q + s * q * q / (1 - q);
  };
  switch (kind) {
    case ConstructionKind::kStarFactor:
      return 1 + 1 / (2 * lq);
    case ConstructionKind::kRFlower:
      return r_flower_rate();
    case ConstructionKind::kSRFlower:
      return sr_flower_rate();
    case ConstructionKind::kGreedy:
      if (params.m != 4) return 1 + 1 / (2 * lq);
      return p > 1 - 1 / std::cbrt(7.0) ? r_flower_rate() : sr_flower_rate();
  }
  return 0;
}

std::string store_params(const ConstructionParams& c) {
  json j{{"n", c.n},       {"p", c.p},         {"m", c.m},           {"log_n", c.log_n},
         {"d", c.d},       {"a", c.a},         {"b", c.b},           {"ell", c.ell},
         {"s", c.s},       {"r_flower", c.r_flower}, {"r_sr", c.r_sr}};
  j["too_small"] = c.too_small.empty() ? json(nullptr) : json(c.too_small);
  return j.dump();
}

std::string store_construction(const StarFactorConstruction& c) {
  json stars = json::array(), cycles = json::array(), sizes = json::array(), res = json::array();
  for (const Star& s : c.stars) {
    stars.push_back({{"center", s.center}, {"leaves", s.leaves}});
    sizes.push_back(s.leaves.size() + 1);
  }
  for (const auto& cyc : c.cycle_factor) cycles.push_back(cyc);
  for (auto [x, y] : c.residual_matching) res.push_back({x, y});
  json j{{"variant", "star-factor"},
         {"policy", c.policy == StarPolicy::kLiteral ? "literal" : "finite-n"},
         {"params", json::parse(store_params(c.params))},
         {"hub", c.hub},
         {"stars", stars},
         {"star_sizes", sizes},
         {"star_target", c.star_target},
         {"cycle_factor", cycles},
         {"residual_matching", res},
         {"log", c.log},
         {"edges", c.selected.edge_count()},
         {"graph", json::parse(store_graph(c.selected))}};
  return j.dump();
}

}  // namespace cmsat
