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

#include "cmsat/cmsat.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "cmsat/analysis.hpp"
#include "cmsat/constructions.hpp"
#include "cmsat/graph.hpp"
#include "cmsat/saturation.hpp"
#include "json.hpp"

using json = nlohmann::json;

struct cmsat_graph {
  cmsat::SparseGraph g;
  mutable std::optional<cmsat::Graph> dense_;
  const cmsat::Graph& dense() const {
    if (!dense_) {
      if (g.n() > (std::size_t{1} << 17)) throw std::invalid_argument("graph too large for a dense operation");
      dense_ = g.to_dense();
    }
    return *dense_;
  }
};

struct cmsat_host {
  std::unique_ptr<cmsat::HostGraph> host;
};

namespace {

thread_local std::string last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adjacency by binary search in the sorted lists.
class SparseHost : public cmsat::HostGraph {
 public:
  explicit SparseHost(cmsat::SparseGraph g) : g_(std::move(g)) {}
  std::size_t n() const override { return g_.n(); }
  bool adjacent(cmsat::Vertex u, cmsat::Vertex v) const override { return g_.has_edge(u, v); }
  void row(cmsat::Vertex u, cmsat::Bitset& out, cmsat::Vertex from) const override {
    for (cmsat::Vertex v : g_.neighbors(u))
      if (v >= from) out.set(v);
  }

 private:
  cmsat::SparseGraph g_;
};

template <typename F>
cmsat_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return CMSAT_OK;
  } catch (const cmsat::ParseError& e) {
    last_error = e.what();
    return CMSAT_ERR_PARSE;
  } catch (const IoError& e) {
    last_error = e.what();
    return CMSAT_ERR_IO;
  } catch (const cmsat::ConstructionError& e) {
    last_error = e.what();
    return CMSAT_ERR_CONSTRUCTION;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return CMSAT_ERR_ARGUMENT;
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return CMSAT_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CMSAT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CMSAT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return CMSAT_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw std::invalid_argument(std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const char* path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(std::string("cannot write ") + path);
  out << text << '\n';
  if (!out) throw IoError(std::string("write failed: ") + path);
}

std::string fmt_p(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

std::string host_descriptor(bool dense, std::size_t n, double p, uint64_t seed) {
  return std::string(dense ? "gnp:" : "gnp-hash:") + std::to_string(n) + ":" + fmt_p(p) + ":" + std::to_string(seed);
}

void check_m(int m) {
  if (m < 3) throw std::invalid_argument("cycle length m must be at least 3");
}

}  // namespace

extern "C" {

const char* cmsat_version(void) { return "1.0.0"; }

const char* cmsat_last_error(void) { return last_error.c_str(); }

const char* cmsat_status_name(cmsat_status status) {
  switch (status) {
    case CMSAT_OK:
      return "ok";
    case CMSAT_ERR_ARGUMENT:
      return "invalid argument";
    case CMSAT_ERR_PARSE:
      return "parse error";
    case CMSAT_ERR_IO:
      return "i/o error";
    case CMSAT_ERR_BUDGET:
      return "budget exhausted";
    case CMSAT_ERR_CONSTRUCTION:
      return "construction failed";
    case CMSAT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void cmsat_string_free(char* s) { std::free(s); }

cmsat_status cmsat_graph_sample(size_t n, double p, uint64_t seed, cmsat_graph** out) {
  return guarded([&] {
    require(out, "out");
    auto g = std::make_unique<cmsat_graph>();
    g->dense_ = cmsat::sample_gnp(n, p, {seed, 0});
    g->g = cmsat::SparseGraph(*g->dense_);
    *out = g.release();
  });
}

cmsat_status cmsat_graph_from_edges(size_t n, const uint32_t* pairs, size_t edge_count, cmsat_graph** out) {
  return guarded([&] {
    require(out, "out");
    if (edge_count) require(pairs, "pairs");
    std::vector<cmsat::Edge> es(edge_count);
    for (size_t i = 0; i < edge_count; ++i) es[i] = {pairs[2 * i], pairs[2 * i + 1]};
    auto g = std::make_unique<cmsat_graph>();
    g->g = cmsat::SparseGraph(n, es);
    *out = g.release();
  });
}

cmsat_status cmsat_graph_load(const char* text, cmsat_graph** out) {
  return guarded([&] {
    require(text, "json");
    require(out, "out");
    auto g = std::make_unique<cmsat_graph>();
    g->g = cmsat::load_sparse_graph(text);
    *out = g.release();
  });
}

cmsat_status cmsat_graph_load_file(const char* path, cmsat_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto g = std::make_unique<cmsat_graph>();
    g->g = cmsat::load_sparse_graph(read_file(path));
    *out = g.release();
  });
}

cmsat_status cmsat_graph_store(const cmsat_graph* g, char** out_json) {
  return guarded([&] {
    require(g, "graph");
    require(out_json, "out");
    *out_json = dup_string(cmsat::store_graph(g->g));
  });
}

cmsat_status cmsat_graph_store_file(const cmsat_graph* g, const char* path) {
  return guarded([&] {
    require(g, "graph");
    require(path, "path");
    write_file(path, cmsat::store_graph(g->g));
  });
}

size_t cmsat_graph_vertex_count(const cmsat_graph* g) { return g ? g->g.n() : 0; }

size_t cmsat_graph_edge_count(const cmsat_graph* g) { return g ? g->g.edge_count() : 0; }

void cmsat_graph_free(cmsat_graph* g) { delete g; }

cmsat_status cmsat_host_from_graph(const cmsat_graph* g, cmsat_host** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    auto h = std::make_unique<cmsat_host>();
    h->host = std::make_unique<SparseHost>(g->g);
    *out = h.release();
  });
}

cmsat_status cmsat_host_gnp(size_t n, double p, uint64_t seed, int dense, cmsat_host** out) {
  return guarded([&] {
    require(out, "out");
    auto h = std::make_unique<cmsat_host>();
    if (dense) {
      h->host = std::make_unique<cmsat::Graph>(cmsat::sample_gnp(n, p, {seed, 0}));
    } else {
      cmsat::check_probability(p);
      h->host = std::make_unique<cmsat::GnpHost>(n, p, cmsat::RngSeed{seed, 0});
    }
    *out = h.release();
  });
}

cmsat_status cmsat_host_open(const char* descriptor, cmsat_host** out) {
  return guarded([&] {
    require(descriptor, "descriptor");
    require(out, "out");
    const std::string d = descriptor;
    const bool dense = d.rfind("gnp:", 0) == 0;
    const bool hashed = d.rfind("gnp-hash:", 0) == 0;
    if (!dense && !hashed) {
      auto h = std::make_unique<cmsat_host>();
      h->host = std::make_unique<SparseHost>(cmsat::load_sparse_graph(read_file(descriptor)));
      *out = h.release();
      return;
    }
    std::istringstream in(d.substr(d.find(':') + 1));
    std::string ns, ps, ss;
    if (!std::getline(in, ns, ':') || !std::getline(in, ps, ':') || !std::getline(in, ss) || ns.empty() ||
        ps.empty() || ss.empty())
      throw cmsat::ParseError("host descriptor must be gnp:N:P:SEED or gnp-hash:N:P:SEED");
    std::size_t n;
    double p;
    uint64_t seed;
    try {
      std::size_t pos = 0;
      n = std::stoull(ns, &pos);
      if (pos != ns.size()) throw std::invalid_argument(ns);
      p = std::stod(ps, &pos);
      if (pos != ps.size()) throw std::invalid_argument(ps);
      seed = std::stoull(ss, &pos);
      if (pos != ss.size()) throw std::invalid_argument(ss);
    } catch (const std::exception&) {
      throw cmsat::ParseError("bad number in host descriptor '" + d + "'");
    }
    auto h = std::make_unique<cmsat_host>();
    if (dense) {
      h->host = std::make_unique<cmsat::Graph>(cmsat::sample_gnp(n, p, {seed, 0}));
    } else {
      cmsat::check_probability(p);
      h->host = std::make_unique<cmsat::GnpHost>(n, p, cmsat::RngSeed{seed, 0});
    }
    *out = h.release();
  });
}

void cmsat_host_free(cmsat_host* h) { delete h; }

cmsat_status cmsat_is_cm_free(const cmsat_graph* g, int m, int* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    check_m(m);
    *out = cmsat::is_cm_free(g->g, m) ? 1 : 0;
  });
}

cmsat_status cmsat_construct(const char* method, const char* policy, size_t n, double p, int m, uint64_t seed,
                             cmsat_graph** out_graph, char** out_report) {
  return guarded([&] {
    require(method, "method");
    require(out_graph, "out_graph");
    const std::string meth = method;
    const std::string pol = policy ? policy : "finite";
    if (pol != "finite" && pol != "literal") throw std::invalid_argument("policy must be finite or literal");
    check_m(m);
    const cmsat::RngSeed host_rng{seed, 0}, build_rng{seed, 1};
    const cmsat::ConstructionParams params = cmsat::compute_params(n, p, m);
    auto out = std::make_unique<cmsat_graph>();
    json rep{{"method", meth}, {"n", n}, {"p", p}, {"m", m}, {"seed", seed}};
    if (meth == "star-factor") {
      const cmsat::Graph g = cmsat::sample_gnp(n, p, host_rng);
      cmsat::StarFactorOptions opt;
      opt.policy = pol == "literal" ? cmsat::StarPolicy::kLiteral : cmsat::StarPolicy::kFiniteN;
      cmsat::StarFactorConstruction c = cmsat::build_star_factor(g, p, m, build_rng, opt);
      rep["policy"] = pol;
      rep["host"] = host_descriptor(true, n, p, seed);
      rep["recount"] = c.recount();
      rep["predicted_coefficient"] = cmsat::saturated_edge_budget(params, cmsat::ConstructionKind::kStarFactor);
      rep["construction"] = json::parse(cmsat::store_construction(c));
      out->g = std::move(c.selected);
    } else if (meth == "r-flower" || meth == "sr-flower") {
      if (m != 4) throw std::invalid_argument("flower constructions are for m = 4");
      cmsat::GnpHost host(n, p, host_rng);
      cmsat::FlowerConstruction c =
          meth == "r-flower" ? cmsat::build_r_flower(host, p, build_rng) : cmsat::build_sr_flower(host, p, build_rng);
      const auto sizes = c.level_sizes();
      rep["host"] = host_descriptor(false, n, p, seed);
      rep["formula_edges"] = cmsat::flower_edge_count(c.variant, c.core_edges, n, c.r(), c.s, sizes);
      rep["predicted_coefficient"] = cmsat::saturated_edge_budget(
          params, meth == "r-flower" ? cmsat::ConstructionKind::kRFlower : cmsat::ConstructionKind::kSRFlower);
      const auto v = cmsat::validate_flower(c, host);
      rep["validation"] = v.violations;
      rep["construction"] = json::parse(cmsat::store_construction(c));
      out->g = std::move(c.selected);
    } else if (meth == "greedy-baseline") {
      const cmsat::Graph g = cmsat::sample_gnp(n, p, host_rng);
      const auto order = cmsat::shuffled_order(g, build_rng);
      out->dense_ = cmsat::greedy_saturate(cmsat::Graph(n), g, m, order);
      out->g = cmsat::SparseGraph(*out->dense_);
      rep["host"] = host_descriptor(true, n, p, seed);
      rep["predicted_coefficient"] = cmsat::saturated_edge_budget(params, cmsat::ConstructionKind::kGreedy);
    } else {
      throw std::invalid_argument("unknown method '" + meth + "'");
    }
    rep["edges"] = out->g.edge_count();
    rep["edges_per_vertex"] = static_cast<double>(out->g.edge_count()) / static_cast<double>(n);
    if (out_report) *out_report = dup_string(rep.dump());
    *out_graph = out.release();
  });
}

cmsat_status cmsat_verify(const cmsat_graph* h, const cmsat_host* host, int m, size_t max_listed, int* out_saturated,
                          char** out_report) {
  return guarded([&] {
    require(h, "graph");
    require(host, "host");
    check_m(m);
    const cmsat::SaturationReport r = cmsat::is_saturated(h->g, *host->host, m, max_listed);
    if (out_saturated) *out_saturated = r.saturated() ? 1 : 0;
    if (out_report) *out_report = dup_string(cmsat::store_report(r));
  });
}

cmsat_status cmsat_exact(const cmsat_graph* g, int m, uint64_t budget, char** out_report, cmsat_graph** out_witness) {
  cmsat::ExactResult r;
  cmsat_status st = guarded([&] {
    require(g, "graph");
    check_m(m);
    r = budget ? cmsat::min_sat_exact(g->dense(), m, budget) : cmsat::min_sat_exact(g->dense(), m);
    if (out_report) *out_report = dup_string(cmsat::store_exact(r));
    if (out_witness) {
      auto w = std::make_unique<cmsat_graph>();
      w->g = cmsat::SparseGraph(r.witness);
      *out_witness = w.release();
    }
  });
  if (st == CMSAT_OK && !r.complete) {
    last_error = "node budget exhausted after " + std::to_string(r.nodes_explored) + " nodes";
    return CMSAT_ERR_BUDGET;
  }
  return st;
}

cmsat_status cmsat_peel(const cmsat_graph* g, int m, double p, char** out_report) {
  return guarded([&] {
    require(g, "graph");
    require(out_report, "out");
    const cmsat::PeelResult pr = cmsat::peel_degree_one(g->g);
    json rep = json::parse(cmsat::store_peel(pr));
    if (m >= 3 && p > 0 && p < 1 && pr.n >= 2)
      rep["tree_stats"] = json::parse(cmsat::store_tree_stats(cmsat::tree_stats(pr, m, p)));
    *out_report = dup_string(rep.dump());
  });
}

cmsat_status cmsat_bounds(size_t n, double p, int m, double c, char** out_json) {
  return guarded([&] {
    require(out_json, "out");
    check_m(m);
    *out_json = dup_string(cmsat::store_bounds(cmsat::reference_bounds(n, p, m, c)));
  });
}

cmsat_status cmsat_sweep(const char* config_json, unsigned threads, char** out_csv, char** out_records) {
  return guarded([&] {
    require(config_json, "config");
    const auto trials = cmsat::parse_sweep_config(config_json);
    const auto records = cmsat::run_sweep(trials, threads);
    if (out_csv) *out_csv = dup_string(cmsat::sweep_csv(records));
    if (out_records) *out_records = dup_string(cmsat::store_records(records));
  });
}

}  // extern "C"
