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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "cmsat/analysis.hpp"
#include "cmsat/constructions.hpp"
#include "oracles.hpp"

namespace cmsat {
namespace {

std::size_t partition_total(const PeelResult& pr) {
  std::size_t total = pr.core_vertices.size() + pr.isolated_after_peel.size();
  for (const PeelTree& t : pr.trees) total += t.size() - 1;
  return total;
}

void check_invariants(const PeelResult& pr) {
  for (Vertex u = 0; u < pr.core.n(); ++u) ASSERT_NE(pr.core.degree(u), 1u);
  ASSERT_EQ(partition_total(pr), pr.n);
  std::set<Vertex> core(pr.core_vertices.begin(), pr.core_vertices.end());
  std::set<Vertex> seen;
  for (const PeelTree& t : pr.trees) {
    ASSERT_EQ(core.count(t.root) == 1, t.root_in_core);
    for (std::size_t i = 1; i < t.vertices.size(); ++i) {
      ASSERT_FALSE(core.count(t.vertices[i]));
      ASSERT_TRUE(seen.insert(t.vertices[i]).second);
    }
  }
}

TEST(Peel, Cycle) {
  PeelResult pr = peel_degree_one(oracle::cycle(5));
  EXPECT_EQ(pr.core_vertices.size(), 5u);
  EXPECT_TRUE(pr.trees.empty());
  EXPECT_TRUE(pr.isolated_after_peel.empty());
}

TEST(Peel, PathCollapses) {
  PeelResult pr = peel_degree_one(oracle::path(5));
  EXPECT_TRUE(pr.core_vertices.empty());
  EXPECT_EQ(pr.isolated_after_peel.size(), 1u);
  ASSERT_EQ(pr.trees.size(), 1u);
  EXPECT_FALSE(pr.trees[0].root_in_core);
  EXPECT_EQ(pr.trees[0].size(), 5u);
  check_invariants(pr);
}

TEST(Peel, StarOnCycle) {
  Graph g(9);
  for (Vertex i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
  for (Vertex x = 5; x < 9; ++x) g.add_edge(0, x);
  PeelResult pr = peel_degree_one(g);
  ASSERT_EQ(pr.trees.size(), 1u);
  EXPECT_EQ(pr.trees[0].root, 0u);
  EXPECT_EQ(pr.trees[0].height, 1u);
  EXPECT_EQ(pr.trees[0].size(), 5u);
  check_invariants(pr);
}

TEST(Peel, PathOnCycle) {
  Graph g(8);
  for (Vertex i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
  g.add_edge(2, 5);
  g.add_edge(5, 6);
  g.add_edge(6, 7);
  PeelResult pr = peel_degree_one(g);
  ASSERT_EQ(pr.trees.size(), 1u);
  EXPECT_EQ(pr.trees[0].height, 3u);
  TreeStats s = tree_stats(pr, 4, 0.5);
  EXPECT_EQ(s.height_bound, 2);
  EXPECT_EQ(s.over_height, 1u);
  EXPECT_EQ(s.flagged_roots, std::vector<Vertex>{2});
  EXPECT_EQ(tree_stats(pr, 5, 0.5).over_height, 0u);
}

TEST(Peel, InitiallyIsolatedVertices) {
  PeelResult pr = peel_degree_one(Graph(3));
  EXPECT_EQ(pr.isolated_after_peel, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_TRUE(pr.trees.empty());
}

TEST(Peel, RandomInvariantsAndIdempotence) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 5 + seed % 60;
    Graph g = sample_gnp(n, 1.5 / static_cast<double>(n), {seed, 12});
    PeelResult pr = peel_degree_one(g);
    check_invariants(pr);
    PeelResult again = peel_degree_one(pr.core);
    EXPECT_EQ(again.core, pr.core);
    EXPECT_TRUE(again.trees.empty());
    for (const PeelTree& t : pr.trees) {
      // parents precede children and depth grows by one per step
      std::map<Vertex, std::size_t> depth{{t.root, 0}};
      std::size_t h = 0;
      for (std::size_t i = 1; i < t.vertices.size(); ++i) {
        ASSERT_TRUE(depth.count(t.parents[i]));
        ASSERT_TRUE(g.has_edge(t.vertices[i], t.parents[i]));
        depth[t.vertices[i]] = depth[t.parents[i]] + 1;
        h = std::max(h, depth[t.vertices[i]]);
      }
      ASSERT_EQ(h, t.height);
    }
  }
}

TEST(Peel, StarFactorCore) {
  Graph g = sample_gnp(5000, 0.5, {1, 0});
  StarFactorConstruction c = build_star_factor(g, 0.5, 6, {1, 1});
  PeelResult pr = peel_degree_one(c.selected);
  check_invariants(pr);
  auto d = diameter(pr.core);
  ASSERT_TRUE(d);
  EXPECT_LE(*d, 10u);
  TreeStats s = tree_stats(pr, 6, 0.5);
  EXPECT_EQ(s.over_height, 0u);
}

TEST(Bounds, Examples) {
  ReferenceBounds b = reference_bounds(1000000, 0.5, 5);
  ASSERT_TRUE(b.upper);
  EXPECT_NEAR(*b.upper, 1.02509, 5e-6);
  EXPECT_NEAR(b.log_n, 19.9315685693, 1e-9);
  EXPECT_NEAR(*b.lower, 1 + 1 / (16 * b.log_n), 1e-12);

  ReferenceBounds c4 = reference_bounds(1000000, 0.5, 4);
  EXPECT_DOUBLE_EQ(*c4.lower, 1.5);
  EXPECT_NEAR(*c4.upper, 27.0 / 14.0, 1e-12);
  EXPECT_NEAR(*reference_bounds(1000000, 0.6, 4).upper, 1.70513, 5e-6);

  // small-p branch: s = 11 at p = 0.4
  const double q = std::pow(0.6, 11);
  EXPECT_NEAR(*reference_bounds(1000, 0.4, 4).upper, 6 + 11 * q + 11 * q * q / (1 - q), 1e-12);

  EXPECT_FALSE(reference_bounds(1000, 0.5, 3).upper);
  EXPECT_THROW(reference_bounds(1000, 0.0, 5), std::invalid_argument);
}

TEST(Bounds, IndependenceFormulas) {
  const double l = std::log2(1e6);
  const double f = 2 * l - 2 * std::log2(l) + 2 * std::log2(std::exp(1.0) / 2) + 0.9;
  ReferenceBounds b = reference_bounds(1000000, 0.5, 5, 1.5);
  EXPECT_EQ(b.f, static_cast<int64_t>(std::floor(f)));
  EXPECT_EQ(b.f_c, static_cast<int64_t>(std::floor(2 * l + 1.5)));
}

TEST(Bounds, UpperAboveLower) {
  for (double p : {0.1, 0.3, 0.45, 0.5, 0.7, 0.9})
    for (int m = 4; m <= 8; ++m)
      for (std::size_t n : {100u, 10000u, 1000000u}) {
        ReferenceBounds b = reference_bounds(n, p, m);
        EXPECT_GE(*b.upper, *b.lower) << p << " " << m << " " << n;
      }
}

TEST(Sweep, EmptyConfig) {
  auto t = parse_sweep_config("[]");
  EXPECT_TRUE(t.empty());
  EXPECT_TRUE(run_sweep(t).empty());
  EXPECT_EQ(sweep_csv(run_sweep(t)), std::string(kSweepCsvHeader) + "\n");
}

TEST(Sweep, ConfigForms) {
  auto t = parse_sweep_config(
      R"([{"n":100,"p":0.5,"m":5,"method":"star-factor","seeds":[1,2]},[50,0.4,4,"greedy-baseline",3]])");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[1].seed, 2u);
  EXPECT_EQ(t[2].method, "greedy-baseline");
  EXPECT_THROW(parse_sweep_config(R"([{"n":1,"p":0.5,"m":5,"method":"nope","seed":1}])"), ParseError);
  EXPECT_THROW(parse_sweep_config(R"({"n":1})"), ParseError);
  EXPECT_THROW(parse_sweep_config("[1,2"), ParseError);
}

TEST(Sweep, FailuresStayInTheirRow) {
  auto t = parse_sweep_config(
      R"([{"n":200,"p":0.6,"m":5,"method":"r-flower","seed":1},{"n":300,"p":0.5,"m":4,"method":"greedy-baseline","seed":1}])");
  auto r = run_sweep(t);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_FALSE(r[0].ok());
  EXPECT_TRUE(r[1].ok());
  EXPECT_TRUE(r[1].cm_free);
  EXPECT_EQ(r[1].violation_fraction, 0.0);
  const std::string csv = sweep_csv(r);
  EXPECT_NE(csv.find("200,0.6,5,r-flower,1,,,,,,,,"), std::string::npos);
}

TEST(Sweep, OrderIndependent) {
  const char* a = R"([[300,0.5,5,"star-factor",[3,1]],[200,0.5,4,"greedy-baseline",[2]]])";
  const char* b = R"([[200,0.5,4,"greedy-baseline",[2]],[300,0.5,5,"star-factor",[1,3]]])";
  auto ra = run_sweep(parse_sweep_config(a), 1);
  auto rb = run_sweep(parse_sweep_config(b), 3);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].trial.seed, rb[i].trial.seed);
    EXPECT_EQ(ra[i].trial.method, rb[i].trial.method);
    EXPECT_EQ(ra[i].edges, rb[i].edges);
    EXPECT_EQ(ra[i].peel_core_size, rb[i].peel_core_size);
  }
  EXPECT_EQ(ra[0].trial.n, 200u);
  EXPECT_DOUBLE_EQ(ra[1].edges_per_vertex, static_cast<double>(ra[1].edges) / 300.0);
}

TEST(Sweep, StarFactorRowsAreFree) {
  auto r = run_sweep(parse_sweep_config(R"([[5000,0.5,5,"star-factor",[1,2]]])"));
  for (const ExperimentRecord& x : r) {
    ASSERT_TRUE(x.ok()) << x.error;
    EXPECT_TRUE(x.cm_free);
    EXPECT_LT(x.violation_fraction, 0.01);
  }
}

TEST(Sweep, CsvFormat) {
  ExperimentRecord r;
  r.trial = {1000, 0.5, 5, "star-factor", 7};
  r.edges = 1234;
  r.edges_per_vertex = 1.234;
  r.predicted_coefficient = 1.0520833333;
  r.cm_free = true;
  r.violation_fraction = 0;
  r.peel_core_size = 60;
  r.peel_core_diameter = 4;
  r.runtime_ms = 12.3456789;
  std::vector<ExperimentRecord> rs{r};
  EXPECT_EQ(sweep_csv(rs), std::string(kSweepCsvHeader) + "\n1000,0.5,5,star-factor,7,1234,1.234,1.05208,true,0,60,4,12.3457\n");
}

}  // namespace
}  // namespace cmsat
