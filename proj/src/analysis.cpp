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

#include "cmsat/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "cmsat/constructions.hpp"
#include "cmsat/saturation.hpp"
#include "json.hpp"

namespace cmsat {

using json = nlohmann::json;

namespace {

constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

}  // namespace

// ------------------------------------------------------------------ peel

PeelResult peel_degree_one(const SparseGraph& h) {
  const std::size_t n = h.n();
  PeelResult pr;
  pr.n = n;
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0), isolated(n, 0);
  std::vector<Vertex> parent(n, kNoVertex), order, queue;
  for (Vertex u = 0; u < n; ++u) {
    deg[u] = h.degree(u);
    if (deg[u] == 1) queue.push_back(u);
    if (deg[u] == 0) isolated[u] = 1;
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    if (removed[u] || deg[u] != 1) continue;
    Vertex w = kNoVertex;
    for (Vertex x : h.neighbors(u))
      if (!removed[x]) {
        w = x;
        break;
      }
    removed[u] = 1;
    deg[u] = 0;
    parent[u] = w;
    order.push_back(u);
    if (--deg[w] == 1) queue.push_back(w);
    if (deg[w] == 0) isolated[w] = 1;
  }

  // Parents are removed later than their children or not at all, so one
  // pass in reverse removal order settles roots and depths.
  std::vector<Vertex> root(n);
  std::vector<std::size_t> depth(n, 0);
  for (Vertex u = 0; u < n; ++u) root[u] = u;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    root[*it] = root[parent[*it]];
    depth[*it] = depth[parent[*it]] + 1;
  }

  for (Vertex u = 0; u < n; ++u) {
    if (isolated[u]) {
      pr.isolated_after_peel.push_back(u);
    } else if (!removed[u]) {
      pr.core_vertices.push_back(u);
    }
  }
  pr.core = h.induced(pr.core_vertices);

  std::map<Vertex, PeelTree> trees;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex u = *it;
    auto [pos, fresh] = trees.try_emplace(root[u]);
    PeelTree& t = pos->second;
    if (fresh) {
      t.root = root[u];
      t.root_in_core = !isolated[root[u]];
      t.vertices.push_back(root[u]);
      t.parents.push_back(root[u]);
    }
    t.vertices.push_back(u);
    t.parents.push_back(parent[u]);
    t.height = std::max(t.height, depth[u]);
  }
  for (auto& [r, t] : trees) {
    // Reverse removal order is not depth order in general.
    std::vector<std::size_t> idx(t.vertices.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin() + 1, idx.end(),
                     [&](std::size_t a, std::size_t b) { return depth[t.vertices[a]] < depth[t.vertices[b]]; });
    PeelTree sorted;
    sorted.root = t.root;
    sorted.root_in_core = t.root_in_core;
    sorted.height = t.height;
    for (std::size_t i : idx) {
      sorted.vertices.push_back(t.vertices[i]);
      sorted.parents.push_back(t.parents[i]);
    }
    pr.trees.push_back(std::move(sorted));
  }
  return pr;
}

PeelResult peel_degree_one(const Graph& h) { return peel_degree_one(SparseGraph(h)); }

TreeStats tree_stats(const PeelResult& pr, int m, double p, double c) {
  TreeStats s;
  s.height_bound = m - 2;
  if (pr.n >= 2) {
    const ReferenceBounds b = reference_bounds(pr.n, p, m, c);
    s.children_bound = static_cast<int64_t>(std::floor(2 * b.log_n));
    s.size_bound = b.f_c;
  }
  std::map<Vertex, std::size_t> children;
  for (const PeelTree& t : pr.trees) {
    ++s.height_histogram[t.height];
    ++s.size_histogram[t.size()];
    s.max_height = std::max(s.max_height, t.height);
    s.max_size = std::max(s.max_size, t.size());
    children.clear();
    std::size_t most = 0;
    for (std::size_t i = 1; i < t.vertices.size(); ++i) most = std::max(most, ++children[t.parents[i]]);
    s.max_children = std::max(s.max_children, most);
    bool flag = false;
    if (static_cast<int64_t>(t.height) > s.height_bound) {
      ++s.over_height;
      flag = true;
    }
    if (static_cast<int64_t>(most) > s.children_bound) {
      ++s.over_children;
      flag = true;
    }
    if (static_cast<int64_t>(t.size()) > s.size_bound) {
      ++s.over_size;
      flag = true;
    }
    if (flag) s.flagged_roots.push_back(t.root);
  }
  return s;
}

// ---------------------------------------------------------------- bounds

double independence_estimate(std::size_t n, double p) {
  const double l = log_q(p, static_cast<double>(n));
  return 2 * l - 2 * log_q(p, l) + 2 * log_q(p, std::exp(1.0) / 2) + 0.9;
}

ReferenceBounds reference_bounds(std::size_t n, double p, int m, double c) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("reference_bounds: p must lie in (0,1)");
  if (n < 2) throw std::invalid_argument("reference_bounds: n must be at least 2");
  ReferenceBounds b;
  b.n = n;
  b.p = p;
  b.m = m;
  b.c = c;
  b.log_n = log_q(p, static_cast<double>(n));
  if (b.log_n > 1) b.f = static_cast<int64_t>(std::floor(independence_estimate(n, p)));
  b.f_c = static_cast<int64_t>(std::floor(2 * b.log_n + c));
  if (m >= 5) {
    b.lower = 1 + 1 / (4.0 * (m - 1) * b.log_n);
    b.upper = 1 + 1 / (2 * b.log_n);
    b.lower_source = "1 + 1/(4(m-1)L)";
    b.upper_source = "1 + 1/(2L)";
  } else if (m == 4) {
    b.lower = 1.5;
    b.lower_source = "3/2";
    ConstructionParams params;
    params.n = n;
    params.p = p;
    params.m = 4;
    if (p > 1 - 1 / std::cbrt(7.0)) {
      b.upper = saturated_edge_budget(params, ConstructionKind::kRFlower);
      b.upper_source = "r-flower";
    } else {
      b.upper = saturated_edge_budget(params, ConstructionKind::kSRFlower);
      b.upper_source = "(s,r)-flower, s = " + std::to_string(minimal_s(p));
    }
  }
  return b;
}

// ----------------------------------------------------------------- sweep

namespace {

const char* const kMethods[] = {"star-factor", "r-flower", "sr-flower", "greedy-baseline"};

bool known_method(const std::string& m) {
  return std::find(std::begin(kMethods), std::end(kMethods), m) != std::end(kMethods);
}

std::vector<uint64_t> seeds_of(const json& j) {
  std::vector<uint64_t> out;
  if (j.is_array()) {
    for (const json& s : j) out.push_back(s.get<uint64_t>());
  } else {
    out.push_back(j.get<uint64_t>());
  }
  return out;
}

auto key(const TrialSpec& t) { return std::tie(t.n, t.p, t.m, t.method, t.seed); }

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

std::vector<TrialSpec> parse_sweep_config(std::string_view text) {
  std::vector<TrialSpec> out;
  try {
    const json root = json::parse(text);
    if (!root.is_array()) throw ParseError("sweep config: expected a JSON list");
    for (const json& e : root) {
      TrialSpec t;
      std::vector<uint64_t> seeds;
      if (e.is_array()) {
        if (e.size() != 5) throw ParseError("sweep config: tuples are [n, p, m, method, seeds]");
        t.n = e[0].get<std::size_t>();
        t.p = e[1].get<double>();
        t.m = e[2].get<int>();
        t.method = e[3].get<std::string>();
        seeds = seeds_of(e[4]);
      } else if (e.is_object()) {
        t.n = e.at("n").get<std::size_t>();
        t.p = e.at("p").get<double>();
        t.m = e.at("m").get<int>();
        t.method = e.at("method").get<std::string>();
        if (e.contains("seeds")) {
          seeds = seeds_of(e["seeds"]);
        } else {
          seeds = seeds_of(e.at("seed"));
        }
      } else {
        throw ParseError("sweep config: entries must be objects or lists");
      }
      if (!known_method(t.method)) throw ParseError("sweep config: unknown method '" + t.method + "'");
      for (uint64_t s : seeds) {
        t.seed = s;
        out.push_back(t);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
  return out;
}

ExperimentRecord run_trial(const TrialSpec& t) {
  ExperimentRecord rec;
  rec.trial = t;
  const auto start = std::chrono::steady_clock::now();
  try {
    const RngSeed host_rng{t.seed, 0}, build_rng{t.seed, 1};
    const bool flower = t.method == "r-flower" || t.method == "sr-flower";
    if (flower && t.m != 4) throw std::invalid_argument("flower constructions are for m = 4");
    ConstructionParams params = compute_params(t.n, t.p, t.m);
    SparseGraph h;
    SaturationReport report;
    if (flower) {
      GnpHost host(t.n, t.p, host_rng);
      FlowerConstruction c = t.method == "r-flower" ? build_r_flower(host, t.p, build_rng)
                                                    : build_sr_flower(host, t.p, build_rng);
      const auto sizes = c.level_sizes();
      const int64_t expect = flower_edge_count(c.variant, c.core_edges, t.n, c.r(), c.s, sizes);
      if (expect != static_cast<int64_t>(c.selected.edge_count()))
        throw std::runtime_error("edge count differs from the flower formula");
      h = std::move(c.selected);
      report = is_saturated(h, host, 4, 0);
      rec.predicted_coefficient = saturated_edge_budget(
          params, t.method == "r-flower" ? ConstructionKind::kRFlower : ConstructionKind::kSRFlower);
    } else if (t.method == "star-factor") {
      const Graph g = sample_gnp(t.n, t.p, host_rng);
      StarFactorConstruction c = build_star_factor(g, t.p, t.m, build_rng);
      if (c.recount() != c.selected.edge_count()) throw std::runtime_error("edge count differs from the recount");
      h = std::move(c.selected);
      report = is_saturated(h, g, t.m, 0);
      rec.predicted_coefficient = saturated_edge_budget(params, ConstructionKind::kStarFactor);
    } else if (t.method == "greedy-baseline") {
      const Graph g = sample_gnp(t.n, t.p, host_rng);
      const auto order = shuffled_order(g, build_rng);
      h = SparseGraph(greedy_saturate(Graph(t.n), g, t.m, order));
      report = is_saturated(h, g, t.m, 0);
      rec.predicted_coefficient = saturated_edge_budget(params, ConstructionKind::kGreedy);
    } else {
      throw std::invalid_argument("unknown method '" + t.method + "'");
    }
    rec.edges = h.edge_count();
    rec.edges_per_vertex = static_cast<double>(rec.edges) / static_cast<double>(t.n);
    rec.cm_free = report.is_free;
    rec.violation_fraction = report.violation_fraction();
    const PeelResult pr = peel_degree_one(h);
    rec.peel_core_size = pr.core_vertices.size();
    rec.peel_core_diameter = diameter(pr.core);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<ExperimentRecord> run_sweep(std::span<const TrialSpec> trials, unsigned threads) {
  std::vector<ExperimentRecord> out(trials.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < trials.size();) out[i] = run_trial(trials[i]);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials.size())));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) { return key(a.trial) < key(b.trial); });
  return out;
}

const char* const kSweepCsvHeader =
    "n,p,m,method,seed,edges,edges_per_vertex,predicted_coefficient,cm_free,violation_fraction,"
    "peel_core_size,peel_core_diameter,runtime_ms";

std::string sweep_csv(std::span<const ExperimentRecord> records) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const ExperimentRecord& r : records) {
    const TrialSpec& t = r.trial;
    out += std::to_string(t.n) + ',' + fmt(t.p) + ',' + std::to_string(t.m) + ',' + t.method + ',' +
           std::to_string(t.seed) + ',';
    if (r.ok()) {
      out += std::to_string(r.edges) + ',' + fmt(r.edges_per_vertex) + ',' + fmt(r.predicted_coefficient) + ',' +
             (r.cm_free ? "true" : "false") + ',' + fmt(r.violation_fraction) + ',' +
             std::to_string(r.peel_core_size) + ',' +
             (r.peel_core_diameter ? std::to_string(*r.peel_core_diameter) : "") + ',' + fmt(r.runtime_ms);
    } else {
      out += ",,,,,,," + fmt(r.runtime_ms);
    }
    out += '\n';
  }
  return out;
}

// ------------------------------------------------------------------ JSON

std::string store_peel(const PeelResult& pr) {
  json trees = json::array();
  for (const PeelTree& t : pr.trees)
    trees.push_back({{"root", t.root},
                     {"root_in_core", t.root_in_core},
                     {"vertices", t.vertices},
                     {"parents", t.parents},
                     {"height", t.height},
                     {"size", t.size()}});
  auto d = diameter(pr.core);
  return json{{"n", pr.n},
              {"core_vertices", pr.core_vertices},
              {"core_edges", pr.core.edge_count()},
              {"core_diameter", d ? json(*d) : json(nullptr)},
              {"trees", trees},
              {"isolated_after_peel", pr.isolated_after_peel}}
      .dump();
}

std::string store_tree_stats(const TreeStats& s) {
  auto hist = [](const std::map<std::size_t, std::size_t>& h) {
    json j = json::object();
    for (auto [k, v] : h) j[std::to_string(k)] = v;
    return j;
  };
  return json{{"height_histogram", hist(s.height_histogram)},
              {"size_histogram", hist(s.size_histogram)},
              {"max_height", s.max_height},
              {"max_size", s.max_size},
              {"max_children", s.max_children},
              {"height_bound", s.height_bound},
              {"children_bound", s.children_bound},
              {"size_bound", s.size_bound},
              {"over_height", s.over_height},
              {"over_children", s.over_children},
              {"over_size", s.over_size},
              {"flagged_roots", s.flagged_roots}}
      .dump();
}

std::string store_bounds(const ReferenceBounds& b) {
  auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  return json{{"n", b.n},
              {"p", b.p},
              {"m", b.m},
              {"C", b.c},
              {"log_n", b.log_n},
              {"lower", opt(b.lower)},
              {"upper", opt(b.upper)},
              {"lower_source", b.lower_source},
              {"upper_source", b.upper_source},
              {"f", b.f},
              {"f_C", b.f_c},
              {"f_C_indicative", true}}
      .dump();
}

std::string store_records(std::span<const ExperimentRecord> records) {
  json arr = json::array();
  for (const ExperimentRecord& r : records) {
    json j{{"n", r.trial.n},   {"p", r.trial.p},       {"m", r.trial.m},
           {"method", r.trial.method}, {"seed", r.trial.seed}, {"runtime_ms", r.runtime_ms}};
    if (r.ok()) {
      j["edges"] = r.edges;
      j["edges_per_vertex"] = r.edges_per_vertex;
      j["predicted_coefficient"] = r.predicted_coefficient;
      j["cm_free"] = r.cm_free;
      j["violation_fraction"] = r.violation_fraction;
      j["peel_core_size"] = r.peel_core_size;
      j["peel_core_diameter"] = r.peel_core_diameter ? json(*r.peel_core_diameter) : json(nullptr);
    } else {
      j["error"] = r.error;
    }
    arr.push_back(j);
  }
  return arr.dump();
}

}  // namespace cmsat
