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

#include <cstdio>
#include <string>

#include "cmsat/cmsat.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cmsat_string_free(s);
  return out;
}

TEST(CApi, SampleStoreLoad) {
  cmsat_graph* g = nullptr;
  ASSERT_EQ(cmsat_graph_sample(30, 0.4, 3, &g), CMSAT_OK);
  EXPECT_EQ(cmsat_graph_vertex_count(g), 30u);
  char* text = nullptr;
  ASSERT_EQ(cmsat_graph_store(g, &text), CMSAT_OK);
  const std::string json = take(text);
  cmsat_graph* back = nullptr;
  ASSERT_EQ(cmsat_graph_load(json.c_str(), &back), CMSAT_OK);
  EXPECT_EQ(cmsat_graph_edge_count(back), cmsat_graph_edge_count(g));
  cmsat_graph_free(back);
  cmsat_graph_free(g);
}

TEST(CApi, ErrorCodes) {
  cmsat_graph* g = nullptr;
  EXPECT_EQ(cmsat_graph_load(R"({"n":2,"edges":[[0,0]]})", &g), CMSAT_ERR_PARSE);
  EXPECT_NE(std::string(cmsat_last_error()).find("self-loop"), std::string::npos);
  EXPECT_EQ(g, nullptr);
  EXPECT_EQ(cmsat_graph_sample(10, 2.0, 1, &g), CMSAT_ERR_ARGUMENT);
  EXPECT_EQ(cmsat_graph_load_file("/nonexistent/graph.json", &g), CMSAT_ERR_IO);
  EXPECT_EQ(cmsat_graph_sample(10, 0.5, 1, nullptr), CMSAT_ERR_ARGUMENT);
  ASSERT_EQ(cmsat_graph_sample(10, 0.5, 1, &g), CMSAT_OK);
  EXPECT_STREQ(cmsat_last_error(), "");
  int free_flag = 0;
  EXPECT_EQ(cmsat_is_cm_free(g, 2, &free_flag), CMSAT_ERR_ARGUMENT);
  cmsat_graph_free(g);
  EXPECT_STREQ(cmsat_status_name(CMSAT_ERR_BUDGET), "budget exhausted");
}

TEST(CApi, ConstructAndVerify) {
  cmsat_graph* h = nullptr;
  char* rep = nullptr;
  ASSERT_EQ(cmsat_construct("star-factor", "finite", 600, 0.5, 5, 2, &h, &rep), CMSAT_OK) << cmsat_last_error();
  const std::string report = take(rep);
  EXPECT_NE(report.find("\"host\":\"gnp:600:0.5:2\""), std::string::npos);
  cmsat_host* host = nullptr;
  ASSERT_EQ(cmsat_host_open("gnp:600:0.5:2", &host), CMSAT_OK);
  int saturated = 0;
  char* vr = nullptr;
  ASSERT_EQ(cmsat_verify(h, host, 5, 10, &saturated, &vr), CMSAT_OK);
  take(vr);
  EXPECT_EQ(saturated, 1);
  cmsat_host* hashed = nullptr;
  ASSERT_EQ(cmsat_host_open("gnp-hash:600:0.5:2", &hashed), CMSAT_OK);
  ASSERT_EQ(cmsat_verify(h, hashed, 5, 10, &saturated, nullptr), CMSAT_OK);
  EXPECT_EQ(saturated, 1);
  cmsat_host* other = nullptr;
  ASSERT_EQ(cmsat_host_gnp(600, 0.5, 3, 1, &other), CMSAT_OK);
  EXPECT_EQ(cmsat_verify(h, other, 5, 10, &saturated, nullptr), CMSAT_ERR_ARGUMENT);
  cmsat_host_free(other);
  cmsat_host_free(hashed);
  cmsat_host_free(host);
  cmsat_graph_free(h);
}

TEST(CApi, ConstructFailures) {
  cmsat_graph* h = nullptr;
  EXPECT_EQ(cmsat_construct("star-factor", "literal", 50, 0.5, 5, 1, &h, nullptr), CMSAT_ERR_CONSTRUCTION);
  EXPECT_NE(std::string(cmsat_last_error()).find("n too small"), std::string::npos);
  EXPECT_EQ(cmsat_construct("bogus", nullptr, 50, 0.5, 5, 1, &h, nullptr), CMSAT_ERR_ARGUMENT);
  EXPECT_EQ(cmsat_construct("r-flower", nullptr, 500, 0.6, 5, 1, &h, nullptr), CMSAT_ERR_ARGUMENT);
  EXPECT_EQ(h, nullptr);
}

TEST(CApi, HostDescriptors) {
  cmsat_host* h = nullptr;
  EXPECT_EQ(cmsat_host_open("gnp:10:0.5", &h), CMSAT_ERR_PARSE);
  EXPECT_EQ(cmsat_host_open("gnp:10:x:1", &h), CMSAT_ERR_PARSE);
  EXPECT_EQ(cmsat_host_open("/nonexistent/host.json", &h), CMSAT_ERR_IO);
  EXPECT_EQ(h, nullptr);
}

TEST(CApi, ExactAndBudget) {
  const uint32_t k5[] = {0, 1, 0, 2, 0, 3, 0, 4, 1, 2, 1, 3, 1, 4, 2, 3, 2, 4, 3, 4};
  cmsat_graph* g = nullptr;
  ASSERT_EQ(cmsat_graph_from_edges(5, k5, 10, &g), CMSAT_OK);
  char* rep = nullptr;
  cmsat_graph* w = nullptr;
  ASSERT_EQ(cmsat_exact(g, 4, 0, &rep, &w), CMSAT_OK);
  EXPECT_NE(take(rep).find("\"value\":5"), std::string::npos);
  EXPECT_EQ(cmsat_graph_edge_count(w), 5u);
  cmsat_graph_free(w);
  rep = nullptr;
  EXPECT_EQ(cmsat_exact(g, 4, 3, &rep, nullptr), CMSAT_ERR_BUDGET);
  EXPECT_NE(take(rep).find("\"complete\":false"), std::string::npos);
  cmsat_graph_free(g);
}

TEST(CApi, PeelBoundsSweep) {
  const uint32_t p5[] = {0, 1, 1, 2, 2, 3, 3, 4};
  cmsat_graph* g = nullptr;
  ASSERT_EQ(cmsat_graph_from_edges(5, p5, 4, &g), CMSAT_OK);
  char* rep = nullptr;
  ASSERT_EQ(cmsat_peel(g, 5, 0.5, &rep), CMSAT_OK);
  const std::string peel = take(rep);
  EXPECT_NE(peel.find("\"core_vertices\":[]"), std::string::npos);
  EXPECT_NE(peel.find("tree_stats"), std::string::npos);
  cmsat_graph_free(g);

  ASSERT_EQ(cmsat_bounds(1000000, 0.5, 4, 0, &rep), CMSAT_OK);
  EXPECT_NE(take(rep).find("\"lower\":1.5"), std::string::npos);

  char* csv = nullptr;
  ASSERT_EQ(cmsat_sweep("[]", 1, &csv, nullptr), CMSAT_OK);
  EXPECT_EQ(take(csv),
            "n,p,m,method,seed,edges,edges_per_vertex,predicted_coefficient,cm_free,violation_fraction,"
            "peel_core_size,peel_core_diameter,runtime_ms\n");
  EXPECT_EQ(cmsat_sweep("[{]", 1, &csv, nullptr), CMSAT_ERR_PARSE);
}

TEST(CApi, FileRoundTrip) {
  cmsat_graph* g = nullptr;
  ASSERT_EQ(cmsat_graph_sample(40, 0.3, 9, &g), CMSAT_OK);
  const std::string path = ::testing::TempDir() + "cmsat_capi_graph.json";
  ASSERT_EQ(cmsat_graph_store_file(g, path.c_str()), CMSAT_OK);
  cmsat_graph* back = nullptr;
  ASSERT_EQ(cmsat_graph_load_file(path.c_str(), &back), CMSAT_OK);
  EXPECT_EQ(cmsat_graph_edge_count(back), cmsat_graph_edge_count(g));
  cmsat_host* h = nullptr;
  ASSERT_EQ(cmsat_host_open(path.c_str(), &h), CMSAT_OK);
  int sat = 0;
  ASSERT_EQ(cmsat_verify(back, h, 4, 0, &sat, nullptr), CMSAT_OK);
  cmsat_host_free(h);
  cmsat_graph_free(back);
  cmsat_graph_free(g);
  std::remove(path.c_str());
}

}  // namespace
