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

#include "cmsat/matching.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "json.hpp"

namespace cmsat {

namespace {

using json = nlohmann::json;

// Augmenting path search from a free left vertex, breadth first over
// bit rows, right vertices visited in ascending order.
bool augment_from(const BipartiteGraph& b, Vertex root, std::vector<int64_t>& mate_l,
                  std::vector<int64_t>& mate_r, Bitset& unvisited, std::vector<Vertex>& parent,
                  std::vector<Vertex>& queue) {
  unvisited.fill();
  queue.clear();
  queue.push_back(root);
  const std::size_t words = b.row_words();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    const uint64_t* row = b.row_data(x);
    uint64_t* un = unvisited.data();
    for (std::size_t k = 0; k < words; ++k) {
      uint64_t cand = row[k] & un[k];
      while (cand) {
        const Vertex r = static_cast<Vertex>(k * 64 + std::countr_zero(cand));
        cand &= cand - 1;
        un[k] &= ~(uint64_t{1} << (r & 63));
        parent[r] = x;
        if (mate_r[r] < 0) {
          Vertex cur = r;
          while (true) {
            const Vertex l = parent[cur];
            const int64_t prev = mate_l[l];
            mate_l[l] = cur;
            mate_r[cur] = l;
            if (prev < 0) break;
            cur = static_cast<Vertex>(prev);
          }
          return true;
        }
        queue.push_back(static_cast<Vertex>(mate_r[r]));
      }
    }
  }
  return false;
}

// Edmonds' blossom search on a dense local graph.
class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g), k_(g.n()), match_(k_, -1), p_(k_), base_(k_), used_(k_), blossom_(k_), lca_mark_(k_) {}

  std::vector<int64_t>& match() { return match_; }

  bool augment(Vertex root) {
    const int64_t v0 = find_path(root);
    if (v0 < 0) return false;
    int64_t v = v0;
    while (v >= 0) {
      const int64_t pv = p_[v];
      const int64_t ppv = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = ppv;
    }
    return true;
  }

 private:
  int64_t lca(int64_t a, int64_t b) {
    std::fill(lca_mark_.begin(), lca_mark_.end(), 0);
    while (true) {
      a = base_[a];
      lca_mark_[a] = 1;
      if (match_[a] < 0) break;
      a = p_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (lca_mark_[b]) return b;
      b = p_[match_[b]];
    }
  }

  void mark_path(int64_t v, int64_t b, int64_t child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
      p_[v] = child;
      child = match_[v];
      v = p_[match_[v]];
    }
  }

  int64_t find_path(Vertex root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(p_.begin(), p_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = 1;
    std::deque<int64_t> q{root};
    while (!q.empty()) {
      const int64_t v = q.front();
      q.pop_front();
      const uint64_t* row = g_.row_data(static_cast<Vertex>(v));
      for (std::size_t k = 0; k < g_.row_words(); ++k) {
        uint64_t w = row[k];
        while (w) {
          const int64_t to = static_cast<int64_t>(k * 64 + std::countr_zero(w));
          w &= w - 1;
          if (base_[v] == base_[to] || match_[v] == to) continue;
          if (to == root || (match_[to] >= 0 && p_[match_[to]] >= 0)) {
            const int64_t cur = lca(v, to);
            std::fill(blossom_.begin(), blossom_.end(), 0);
            mark_path(v, cur, to);
            mark_path(to, cur, v);
            for (std::size_t i = 0; i < k_; ++i)
              if (blossom_[base_[i]]) {
                base_[i] = cur;
                if (!used_[i]) {
                  used_[i] = 1;
                  q.push_back(static_cast<int64_t>(i));
                }
              }
          } else if (p_[to] < 0) {
            p_[to] = v;
            if (match_[to] < 0) return to;
            used_[match_[to]] = 1;
            q.push_back(match_[to]);
          }
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  std::size_t k_;
  std::vector<int64_t> match_, p_, base_;
  std::vector<char> used_, blossom_, lca_mark_;
};

std::optional<std::vector<Vertex>> lexmin_permutation(const BipartiteGraph& h) {
  const std::size_t k = h.left_size();
  std::vector<Vertex> sigma;
  std::vector<char> used_right(k, 0);
  for (Vertex i = 0; i < k; ++i) {
    bool placed = false;
    for (Vertex j = 0; j < k && !placed; ++j) {
      if (used_right[j] || !h.has_edge(i, j)) continue;
      // Remaining rows i+1.. against unused columns other than j.
      std::vector<Vertex> cols;
      for (Vertex c = 0; c < k; ++c)
        if (!used_right[c] && c != j) cols.push_back(c);
      BipartiteGraph rest(k - i - 1, cols.size());
      for (Vertex a = i + 1; a < k; ++a)
        for (std::size_t c = 0; c < cols.size(); ++c)
          if (h.has_edge(a, cols[c])) rest.add_edge(a - i - 1, static_cast<Vertex>(c));
      if (perfect_matching_bipartite(rest)) {
        sigma.push_back(j);
        used_right[j] = 1;
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  return sigma;
}

}  // namespace

void check_forbidden(const BipartiteGraph& b, const ForbiddenSet& f) {
  std::vector<std::size_t> dl(b.left_size(), 0), dr(b.right_size(), 0);
  for (auto [l, r] : f.pairs) {
    if (l >= b.left_size() || r >= b.right_size())
      throw std::invalid_argument("forbidden pair out of range: (" + std::to_string(l) + "," +
                                  std::to_string(r) + ")");
    if (++dl[l] > f.degree_bound)
      throw std::invalid_argument("left vertex " + std::to_string(l) + " exceeds forbidden degree bound " +
                                  std::to_string(f.degree_bound));
    if (++dr[r] > f.degree_bound)
      throw std::invalid_argument("right vertex " + std::to_string(r) + " exceeds forbidden degree bound " +
                                  std::to_string(f.degree_bound));
  }
}

Matching maximum_matching_bipartite(const BipartiteGraph& b) {
  const std::size_t nl = b.left_size(), nr = b.right_size();
  std::vector<int64_t> mate_l(nl, -1), mate_r(nr, -1);
  const std::size_t words = b.row_words();
  Bitset free_r(nr);
  free_r.fill();
  for (Vertex l = 0; l < nl; ++l) {
    const uint64_t* row = b.row_data(l);
    for (std::size_t k = 0; k < words; ++k) {
      const uint64_t c = row[k] & free_r.data()[k];
      if (c) {
        const Vertex r = static_cast<Vertex>(k * 64 + std::countr_zero(c));
        mate_l[l] = r;
        mate_r[r] = l;
        free_r.reset(r);
        break;
      }
    }
  }
  Bitset unvisited(nr);
  std::vector<Vertex> parent(nr), queue;
  bool all = true;
  for (Vertex l = 0; l < nl; ++l)
    if (mate_l[l] < 0 && !augment_from(b, l, mate_l, mate_r, unvisited, parent, queue)) all = false;
  Matching m;
  m.perfect = all && nl == nr;
  for (Vertex l = 0; l < nl; ++l)
    if (mate_l[l] >= 0) m.pairs.emplace_back(l, static_cast<Vertex>(mate_l[l]));
  return m;
}

std::optional<Matching> perfect_matching_bipartite(const BipartiteGraph& b) {
  const std::size_t n = b.left_size();
  if (n != b.right_size())
    throw std::invalid_argument("perfect_matching_bipartite: part sizes differ (" + std::to_string(n) + " vs " +
                                std::to_string(b.right_size()) + ")");
  Matching m = maximum_matching_bipartite(b);
  if (!m.perfect) return std::nullopt;
  return m;
}

Matching maximum_matching_oracle(std::size_t nl, std::size_t nr, const std::function<bool(Vertex, Vertex)>& adj,
                                 RngSeed rng) {
  auto eng = make_engine(rng, 0x6f7261636c65ULL);
  std::vector<int64_t> ml(nl, -1), mr(nr, -1);
  std::vector<Vertex> free_r(nr);
  std::vector<std::size_t> pos(nr);
  std::iota(free_r.begin(), free_r.end(), 0);
  std::iota(pos.begin(), pos.end(), 0);
  auto take = [&](Vertex r) {
    const std::size_t i = pos[r];
    const Vertex last = free_r.back();
    free_r[i] = last;
    pos[last] = i;
    free_r.pop_back();
  };
  auto pair_up = [&](Vertex l, Vertex r) {
    ml[l] = r;
    mr[r] = l;
  };

  std::vector<Vertex> order(nl);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), eng);
  constexpr std::size_t kProbes = 64;
  for (Vertex l : order) {
    const std::size_t f = free_r.size();
    if (f == 0) break;
    for (std::size_t t = 0; t < std::min(f, kProbes); ++t) {
      const Vertex r = free_r[f <= kProbes ? t : eng() % f];
      if (adj(l, r)) {
        pair_up(l, r);
        take(r);
        break;
      }
    }
  }

  std::vector<Vertex> parent(nr);
  std::vector<uint32_t> seen(nr, 0);
  uint32_t stamp = 0;
  std::deque<Vertex> queue;
  for (Vertex l = 0; l < nl && !free_r.empty(); ++l) {
    if (ml[l] >= 0) continue;
    ++stamp;
    queue.assign(1, l);
    int64_t found = -1;
    while (!queue.empty() && found < 0) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex r : free_r)
        if (adj(x, r)) {
          parent[r] = x;
          found = r;
          break;
        }
      if (found >= 0) break;
      for (Vertex r = 0; r < nr; ++r) {
        if (seen[r] == stamp || mr[r] < 0 || !adj(x, r)) continue;
        seen[r] = stamp;
        parent[r] = x;
        queue.push_back(static_cast<Vertex>(mr[r]));
      }
    }
    if (found < 0) continue;
    take(static_cast<Vertex>(found));
    Vertex r = static_cast<Vertex>(found);
    while (true) {
      const Vertex x = parent[r];
      const int64_t next = ml[x];
      pair_up(x, r);
      if (x == l) break;
      r = static_cast<Vertex>(next);
    }
  }

  Matching m;
  for (Vertex l = 0; l < nl; ++l)
    if (ml[l] >= 0) m.pairs.emplace_back(l, static_cast<Vertex>(ml[l]));
  m.perfect = nl == nr && m.pairs.size() == nl;
  return m;
}

std::optional<Matching> perfect_matching_general(const Graph& g, std::span<const Vertex> subset, RngSeed rng) {
  const std::size_t k = subset.size();
  if (k % 2) throw std::invalid_argument("perfect_matching_general: odd subset size " + std::to_string(k));
  {
    std::vector<Vertex> s(subset.begin(), subset.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("perfect_matching_general: repeated vertex in subset");
    if (!s.empty() && s.back() >= g.n()) throw std::invalid_argument("perfect_matching_general: vertex out of range");
  }
  const Graph local = g.induced(subset);
  Blossom bl(local);
  auto& match = bl.match();

  auto eng = make_engine(rng, 0x6d61746368ULL);
  std::vector<Vertex> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), eng);
  Bitset free(k);
  free.fill();
  const std::size_t words = local.row_words();
  for (Vertex x : order) {
    if (match[x] >= 0 || words == 0) continue;
    const uint64_t* row = local.row_data(x);
    const std::size_t start = eng() % words;
    for (std::size_t t = 0; t < words; ++t) {
      const std::size_t w = (start + t) % words;
      const uint64_t c = row[w] & free.data()[w];
      if (c) {
        const Vertex y = static_cast<Vertex>(w * 64 + std::countr_zero(c));
        match[x] = y;
        match[y] = x;
        free.reset(x);
        free.reset(y);
        break;
      }
    }
  }
  for (Vertex x = 0; x < k; ++x)
    if (match[x] < 0 && !bl.augment(x)) return std::nullopt;

  Matching m;
  m.perfect = true;
  for (Vertex x = 0; x < k; ++x) {
    const Vertex y = static_cast<Vertex>(match[x]);
    Vertex a = subset[x], c = subset[y];
    if (a < c) m.pairs.emplace_back(a, c);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

std::optional<Matching> constrained_matching(const BipartiteGraph& b, const ForbiddenSet& f) {
  if (b.left_size() != b.right_size())
    throw std::invalid_argument("constrained_matching: part sizes differ");
  check_forbidden(b, f);
  BipartiteGraph c = b;
  for (auto [l, r] : f.pairs) c.remove_edge(l, r);
  return perfect_matching_bipartite(c);
}

std::optional<Matching> block_matching_construct(const BipartiteGraph& b, const ForbiddenSet& f) {
  if (b.left_size() != b.right_size())
    throw std::invalid_argument("block_matching_construct: part sizes differ");
  check_forbidden(b, f);
  const std::size_t n = b.left_size();
  // A zero bound still needs non-empty blocks.
  const std::size_t c = std::max<std::size_t>(f.degree_bound, 1);
  const std::size_t bs = 2 * c;
  if (n < 4 * c) return std::nullopt;

  BipartiteGraph allowed = b;
  for (auto [l, r] : f.pairs) allowed.remove_edge(l, r);

  const std::size_t rem = n % bs;
  const std::size_t nblocks = n / bs;
  const std::size_t last = bs + rem;

  // Residue block: the first 2C+r left vertices and their first 2C+r
  // common neighbors.
  std::vector<Vertex> u_last(last), w_last;
  std::iota(u_last.begin(), u_last.end(), 0);
  std::vector<char> right_taken(n, 0);
  for (Vertex r = 0; r < n && w_last.size() < last; ++r) {
    bool common = true;
    for (Vertex l : u_last)
      if (!b.has_edge(l, r)) {
        common = false;
        break;
      }
    if (common) {
      w_last.push_back(r);
      right_taken[r] = 1;
    }
  }
  if (w_last.size() < last) return std::nullopt;

  std::vector<std::vector<Vertex>> ublocks, wblocks;
  for (std::size_t i = 0; i + 1 < nblocks; ++i) {
    std::vector<Vertex> ub(bs);
    std::iota(ub.begin(), ub.end(), static_cast<Vertex>(last + i * bs));
    ublocks.push_back(std::move(ub));
  }
  {
    std::vector<Vertex> rest;
    for (Vertex r = 0; r < n; ++r)
      if (!right_taken[r]) rest.push_back(r);
    for (std::size_t i = 0; i + 1 < nblocks; ++i)
      wblocks.emplace_back(rest.begin() + i * bs, rest.begin() + (i + 1) * bs);
  }

  const std::size_t k = ublocks.size();
  BipartiteGraph h(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      bool complete = true;
      for (Vertex l : ublocks[i]) {
        for (Vertex r : wblocks[j])
          if (!b.has_edge(l, r)) {
            complete = false;
            break;
          }
        if (!complete) break;
      }
      if (complete) h.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  auto sigma = lexmin_permutation(h);
  if (!sigma) return std::nullopt;

  Matching out;
  auto complete_block = [&](const std::vector<Vertex>& us, const std::vector<Vertex>& ws) {
    BipartiteGraph blk(us.size(), ws.size());
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t j = 0; j < ws.size(); ++j)
        if (allowed.has_edge(us[i], ws[j])) blk.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    auto m = perfect_matching_bipartite(blk);
    if (!m) return false;
    for (auto [i, j] : m->pairs) out.pairs.emplace_back(us[i], ws[j]);
    return true;
  };
  for (std::size_t i = 0; i < k; ++i)
    if (!complete_block(ublocks[i], wblocks[(*sigma)[i]])) return std::nullopt;

  // Residue: peel r vertices off greedily, then Hall on the 2C x 2C rest.
  std::vector<Vertex> us = u_last, ws = w_last;
  for (std::size_t step = 0; step < rem; ++step) {
    const Vertex u = us.front();
    auto it = std::find_if(ws.begin(), ws.end(), [&](Vertex w) { return allowed.has_edge(u, w); });
    if (it == ws.end()) return std::nullopt;
    out.pairs.emplace_back(u, *it);
    us.erase(us.begin());
    ws.erase(it);
  }
  if (!complete_block(us, ws)) return std::nullopt;

  std::sort(out.pairs.begin(), out.pairs.end());
  out.perfect = out.pairs.size() == n;
  return out;
}

bool is_matching_of(const BipartiteGraph& b, const Matching& m) {
  std::vector<char> ul(b.left_size(), 0), ur(b.right_size(), 0);
  for (auto [l, r] : m.pairs) {
    if (l >= b.left_size() || r >= b.right_size() || !b.has_edge(l, r)) return false;
    if (ul[l]++ || ur[r]++) return false;
  }
  const bool covers = m.pairs.size() == b.left_size() && m.pairs.size() == b.right_size();
  return covers == m.perfect;
}

std::string store_matching(const Matching& m) {
  json pairs = json::array();
  for (auto [u, v] : m.pairs) pairs.push_back({u, v});
  return json{{"pairs", pairs}, {"perfect", m.perfect}}.dump();
}

Matching load_matching(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("pairs") || !root["pairs"].is_array())
    throw ParseError("missing array \"pairs\"");
  if (!root.contains("perfect") || !root["perfect"].is_boolean()) throw ParseError("missing boolean \"perfect\"");
  Matching m;
  m.perfect = root["perfect"].get<bool>();
  std::size_t idx = 0;
  for (const json& e : root["pairs"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw ParseError("pairs[" + std::to_string(idx) + "]: expected a pair of non-negative integers");
    m.pairs.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    ++idx;
  }
  return m;
}

}  // namespace cmsat
