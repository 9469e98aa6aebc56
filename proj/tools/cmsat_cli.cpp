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

// Command-line front end. Talks to the library through the C API only.
//
// Exit codes: 0 success, 1 verify found the graph not saturated, 2 error,
// 3 exact search ran out of budget (the incumbent is still printed).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cmsat/cmsat.h"

namespace {

struct GraphDeleter {
  void operator()(cmsat_graph* g) const { cmsat_graph_free(g); }
};
struct HostDeleter {
  void operator()(cmsat_host* h) const { cmsat_host_free(h); }
};
struct StringDeleter {
  void operator()(char* s) const { cmsat_string_free(s); }
};
using GraphPtr = std::unique_ptr<cmsat_graph, GraphDeleter>;
using HostPtr = std::unique_ptr<cmsat_host, HostDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Failure {
  cmsat_status status;
};

void check(cmsat_status st) {
  if (st == CMSAT_OK) return;
  std::fprintf(stderr, "error: %s: %s\n", cmsat_status_name(st), cmsat_last_error());
  throw Failure{st};
}

GraphPtr load(const std::string& path) {
  cmsat_graph* g = nullptr;
  check(cmsat_graph_load_file(path.c_str(), &g));
  return GraphPtr(g);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    throw Failure{CMSAT_ERR_IO};
  }
  out << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C_m-saturated subgraphs of random graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cmsat_version());

  std::size_t n = 0;
  double p = 0.5;
  int m = 4;
  uint64_t seed = 1;
  std::string out_path, graph_path, host, method, policy = "finite", config, records_path, report_path,
                                                    witness_path;
  uint64_t budget = 0;
  std::size_t max_listed = 1000;
  double c = 0;
  unsigned threads = 1;

  auto* sample = app.add_subcommand("sample", "Draw G(n,p) and store it");
  sample->add_option("--n", n, "Vertices")->required();
  sample->add_option("--p", p, "Edge probability")->required();
  sample->add_option("--seed", seed, "Seed");
  sample->add_option("--out", out_path, "Output graph file (stdout when omitted)");

  auto* construct = app.add_subcommand("construct", "Build a saturated subgraph of a sampled host");
  construct->add_option("--method", method, "Construction")
      ->required()
      ->check(CLI::IsMember({"star-factor", "r-flower", "sr-flower", "greedy-baseline"}));
  construct->add_option("--policy", policy, "Star sizing for star-factor")
      ->check(CLI::IsMember({"finite", "literal"}));
  construct->add_option("--n", n, "Vertices")->required();
  construct->add_option("--p", p, "Edge probability")->required();
  construct->add_option("--m", m, "Cycle length");
  construct->add_option("--seed", seed, "Seed");
  construct->add_option("--out", out_path, "Output graph file")->required();
  construct->add_option("--report", report_path, "Construction report (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "Check that a graph is C_m-saturated in a host");
  verify->add_option("--graph", graph_path, "Subgraph file")->required();
  verify->add_option("--host", host, "Host file, gnp:N:P:SEED or gnp-hash:N:P:SEED")->required();
  verify->add_option("--m", m, "Cycle length")->required();
  verify->add_option("--max-listed", max_listed, "Violations to list");

  auto* exact = app.add_subcommand("exact", "Minimum C_m-saturated subgraph by exhaustive search");
  exact->add_option("--graph", graph_path, "Host file")->required();
  exact->add_option("--m", m, "Cycle length")->required();
  exact->add_option("--budget", budget, "Search node budget (0 = default)");
  exact->add_option("--witness", witness_path, "Write the witness graph here");

  auto* peel = app.add_subcommand("peel", "Peel degree-1 vertices and report core and trees");
  peel->add_option("--graph", graph_path, "Graph file")->required();
  peel->add_option("--m", m, "Cycle length for tree diagnostics");
  peel->add_option("--p", p, "Host edge probability for tree diagnostics");

  auto* bounds = app.add_subcommand("bounds", "Evaluate the reference formulas");
  bounds->add_option("--n", n, "Vertices")->required();
  bounds->add_option("--p", p, "Edge probability")->required();
  bounds->add_option("--m", m, "Cycle length")->required();
  bounds->add_option("--C", c, "Constant in f_C(n)");

  auto* sweep = app.add_subcommand("sweep", "Run a sweep config and write CSV");
  sweep->add_option("--config", config, "JSON list of trials")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "CSV output (stdout when omitted)");
  sweep->add_option("--records", records_path, "Also write JSON records here");
  sweep->add_option("--threads", threads, "Concurrent trials");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      cmsat_graph* g = nullptr;
      check(cmsat_graph_sample(n, p, seed, &g));
      GraphPtr gp(g);
      char* text = nullptr;
      check(cmsat_graph_store(g, &text));
      emit(StringPtr(text).get(), out_path);
    } else if (*construct) {
      cmsat_graph* g = nullptr;
      char* rep = nullptr;
      check(cmsat_construct(method.c_str(), policy.c_str(), n, p, m, seed, &g, &rep));
      GraphPtr gp(g);
      StringPtr rp(rep);
      check(cmsat_graph_store_file(g, out_path.c_str()));
      emit(rp.get(), report_path);
    } else if (*verify) {
      GraphPtr g = load(graph_path);
      cmsat_host* h = nullptr;
      check(cmsat_host_open(host.c_str(), &h));
      HostPtr hp(h);
      int saturated = 0;
      char* rep = nullptr;
      check(cmsat_verify(g.get(), h, m, max_listed, &saturated, &rep));
      emit(StringPtr(rep).get(), "");
      return saturated ? 0 : 1;
    } else if (*exact) {
      GraphPtr g = load(graph_path);
      char* rep = nullptr;
      cmsat_graph* w = nullptr;
      const cmsat_status st = cmsat_exact(g.get(), m, budget, &rep, witness_path.empty() ? nullptr : &w);
      GraphPtr wp(w);
      StringPtr rp(rep);
      if (st != CMSAT_OK && st != CMSAT_ERR_BUDGET) check(st);
      if (rp) emit(rp.get(), "");
      if (wp) check(cmsat_graph_store_file(wp.get(), witness_path.c_str()));
      if (st == CMSAT_ERR_BUDGET) {
        std::fprintf(stderr, "warning: %s\n", cmsat_last_error());
        return 3;
      }
    } else if (*peel) {
      GraphPtr g = load(graph_path);
      char* rep = nullptr;
      const bool diagnostics = peel->count("--m") && peel->count("--p");
      check(cmsat_peel(g.get(), diagnostics ? m : 0, diagnostics ? p : 0, &rep));
      emit(StringPtr(rep).get(), "");
    } else if (*bounds) {
      char* rep = nullptr;
      check(cmsat_bounds(n, p, m, c, &rep));
      emit(StringPtr(rep).get(), "");
    } else if (*sweep) {
      std::ifstream in(config);
      std::stringstream ss;
      ss << in.rdbuf();
      char* csv = nullptr;
      char* recs = nullptr;
      check(cmsat_sweep(ss.str().c_str(), threads, &csv, records_path.empty() ? nullptr : &recs));
      StringPtr cp(csv), rp(recs);
      std::string text = cp.get();
      if (!text.empty() && text.back() == '\n') text.pop_back();
      emit(text, out_path);
      if (rp) emit(rp.get(), records_path);
    }
  } catch (const Failure&) {
    return 2;
  }
  return 0;
}
