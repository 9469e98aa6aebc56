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

#include "cmsat/constructions.hpp"
#include "cmsat/saturation.hpp"
#include "oracles.hpp"

namespace cmsat {
namespace {

std::vector<Vertex> range(Vertex a, Vertex b) {
  std::vector<Vertex> out;
  for (Vertex x = a; x < b; ++x) out.push_back(x);
  return out;
}

// Hubs 0,1,2; petal j is {3+4j .. 6+4j} split W, U, Y, Y; V^2 = {15}.
FlowerConstruction hand_r_flower(std::vector<Edge>* extra_removed = nullptr) {
  FlowerConstruction c;
  c.variant = FlowerVariant::kR;
  FlowerLevel lv;
  lv.hubs = {0, 1, 2};
  std::vector<Edge> es{{0, 1}, {0, 2}, {1, 2}};
  for (Vertex j = 0; j < 3; ++j) {
    const Vertex b = 3 + 4 * j;
    lv.petals.push_back({b, b + 1, b + 2, b + 3});
    lv.w.push_back({b});
    lv.u.push_back({b + 1});
    lv.y.push_back({b + 2, b + 3});
    for (Vertex x = b; x < b + 4; ++x) es.push_back({j, x});
    es.push_back({b, b + 1});
    es.push_back({b + 2, b + 3});
    es.push_back({b, 15});
  }
  if (extra_removed)
    for (const Edge& e : *extra_removed) es.erase(std::find(es.begin(), es.end(), e));
  c.levels.push_back(lv);
  c.v = {range(0, 16), {15}};
  c.selected = SparseGraph(16, es);
  return c;
}

// s = 2: hubs 0 (v_0), 1, 2; petals {3..6}, {7..10} with U first, W the
// first U vertex; V^2 = {11}.
FlowerConstruction hand_sr_flower(bool extra_w_edge) {
  FlowerConstruction c;
  c.variant = FlowerVariant::kSR;
  c.s = 2;
  FlowerLevel lv;
  lv.hubs = {0, 1, 2};
  std::vector<Edge> es{{0, 1}, {0, 2}};
  for (Vertex j = 0; j < 2; ++j) {
    const Vertex b = 3 + 4 * j;
    lv.petals.push_back({b, b + 1, b + 2, b + 3});
    lv.u.push_back({b, b + 1});
    lv.l.push_back({b + 2, b + 3});
    lv.w.push_back({b});
    lv.u_parts.push_back({{b}, {b + 1}});
    for (Vertex x = b; x < b + 4; ++x) es.push_back({j + 1, x});
    es.push_back({b, b + 2});
    es.push_back({b + 1, b + 3});
    es.push_back({b, 11});
  }
  for (Edge e : std::vector<Edge>{{3, 8}, {4, 7}, {5, 9}, {6, 10}}) es.push_back(e);
  if (extra_w_edge) es.push_back({3, 7});
  c.levels.push_back(lv);
  c.v = {range(0, 12), {11}};
  c.selected = SparseGraph(12, es);
  return c;
}

TEST(HandFlower, RFlowerValidates) {
  FlowerConstruction c = hand_r_flower();
  EXPECT_EQ(c.selected.edge_count(), 24u);
  FlowerValidation v = validate_flower(c, oracle::complete(16));
  EXPECT_TRUE(v.ok()) << (v.violations.empty() ? "" : v.violations.front());
  const auto sizes = c.level_sizes();
  EXPECT_EQ(flower_edge_count(FlowerVariant::kR, 0, 16, 1, 3, sizes), 24);
}

TEST(HandFlower, MissingYEdgeBreaksMatching) {
  std::vector<Edge> drop{{5, 6}};
  FlowerValidation v = validate_flower(hand_r_flower(&drop), oracle::complete(16));
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(v.has("4.3"));
}

TEST(HandFlower, HostMustContainEdges) {
  Graph host = oracle::complete(16);
  host.remove_edge(0, 1);
  EXPECT_TRUE(validate_flower(hand_r_flower(), host).has("host"));
}

TEST(HandFlower, SRFlowerValidates) {
  FlowerConstruction c = hand_sr_flower(false);
  EXPECT_EQ(c.selected.edge_count(), 20u);
  FlowerValidation v = validate_flower(c, oracle::complete(12));
  EXPECT_TRUE(v.ok()) << (v.violations.empty() ? "" : v.violations.front());
  const auto sizes = c.level_sizes();
  EXPECT_EQ(flower_edge_count(FlowerVariant::kSR, 0, 12, 1, 2, sizes), 20);
}

TEST(HandFlower, ExtraWEdgeReported) {
  FlowerValidation v = validate_flower(hand_sr_flower(true), oracle::complete(12));
  EXPECT_TRUE(v.has("4.6"));
}

TEST(EdgeCount, Examples) {
  std::vector<std::size_t> one{1}, three{3}, four{4};
  EXPECT_EQ(flower_edge_count(FlowerVariant::kR, 0, 16, 1, 3, one), 24);
  EXPECT_EQ(flower_edge_count(FlowerVariant::kR, 0, 22, 1, 3, three), 36);
  EXPECT_DOUBLE_EQ(sr_edge_count_published(0, 20, 1, 2, four), 28.0);
  EXPECT_DOUBLE_EQ(sr_edge_count_published(0, 12, 1, 2, one), 14.5);
  EXPECT_THROW(flower_edge_count(FlowerVariant::kR, 0, 17, 1, 3, one), std::invalid_argument);
}

TEST(RFlower, BuildsValidSaturatedFlower) {
  const std::size_t n = 30000;
  GnpHost host(n, 0.6, {1, 0});
  FlowerConstruction c = build_r_flower(host, 0.6, {1, 1});
  ASSERT_GE(c.r(), 1);
  FlowerValidation v = validate_flower(c, host);
  EXPECT_TRUE(v.ok()) << (v.violations.empty() ? "" : v.violations.front());
  const auto sizes = c.level_sizes();
  EXPECT_EQ(flower_edge_count(c.variant, c.core_edges, n, c.r(), c.s, sizes),
            static_cast<int64_t>(c.selected.edge_count()));
  auto r = is_saturated(c.selected, host, 4, 10);
  EXPECT_TRUE(r.is_free);
  EXPECT_LT(r.violation_fraction(), 0.01);
}

TEST(SRFlower, BuildsValidFlower) {
  const std::size_t n = 30000;
  GnpHost host(n, 0.45, {1, 0});
  FlowerConstruction c = build_sr_flower(host, 0.45, {1, 1});
  EXPECT_EQ(c.s, 9);
  ASSERT_GE(c.r(), 1);
  FlowerValidation v = validate_flower(c, host);
  EXPECT_TRUE(v.ok()) << (v.violations.empty() ? "" : v.violations.front());
  const auto sizes = c.level_sizes();
  EXPECT_EQ(flower_edge_count(c.variant, c.core_edges, n, c.r(), c.s, sizes),
            static_cast<int64_t>(c.selected.edge_count()));
  EXPECT_TRUE(is_cm_free(c.selected, 4));
}

TEST(Flowers, TooSmallHostFails) {
  GnpHost host(12, 0.6, {1, 0});
  EXPECT_THROW(build_r_flower(host, 0.6, {1, 1}), ConstructionError);
  GnpHost host2(12, 0.45, {1, 0});
  EXPECT_THROW(build_sr_flower(host2, 0.45, {1, 1}), ConstructionError);
}

TEST(Flowers, Deterministic) {
  GnpHost host(5000, 0.6, {3, 0});
  auto a = build_r_flower(host, 0.6, {3, 1});
  auto b = build_r_flower(host, 0.6, {3, 1});
  EXPECT_EQ(a.selected, b.selected);
}

}  // namespace
}  // namespace cmsat
