/* Copyright 2026 The cmsat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CMSAT_CMSAT_H_
#define CMSAT_CMSAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CMSAT_API __declspec(dllexport)
#else
#define CMSAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmsat_status {
  CMSAT_OK = 0,
  CMSAT_ERR_ARGUMENT = 1,
  CMSAT_ERR_PARSE = 2,
  CMSAT_ERR_IO = 3,
  CMSAT_ERR_BUDGET = 4, /* exact search stopped early; outputs hold the incumbent */
  CMSAT_ERR_CONSTRUCTION = 5,
  CMSAT_ERR_INTERNAL = 6
} cmsat_status;

/* A simple undirected graph on vertices 0..n-1. */
typedef struct cmsat_graph cmsat_graph;
/* Host graph for verification: a stored graph or an implicit G(n,p). */
typedef struct cmsat_host cmsat_host;

CMSAT_API const char* cmsat_version(void);
/* Message of the last failed call on this thread; "" after success. */
CMSAT_API const char* cmsat_last_error(void);
CMSAT_API const char* cmsat_status_name(cmsat_status status);
/* Frees strings returned through char** out-parameters. */
CMSAT_API void cmsat_string_free(char* s);

CMSAT_API cmsat_status cmsat_graph_sample(size_t n, double p, uint64_t seed, cmsat_graph** out);
CMSAT_API cmsat_status cmsat_graph_from_edges(size_t n, const uint32_t* pairs, size_t edge_count,
                                              cmsat_graph** out);
CMSAT_API cmsat_status cmsat_graph_load(const char* json, cmsat_graph** out);
CMSAT_API cmsat_status cmsat_graph_load_file(const char* path, cmsat_graph** out);
CMSAT_API cmsat_status cmsat_graph_store(const cmsat_graph* g, char** out_json);
CMSAT_API cmsat_status cmsat_graph_store_file(const cmsat_graph* g, const char* path);
CMSAT_API size_t cmsat_graph_vertex_count(const cmsat_graph* g);
CMSAT_API size_t cmsat_graph_edge_count(const cmsat_graph* g);
CMSAT_API void cmsat_graph_free(cmsat_graph* g);

CMSAT_API cmsat_status cmsat_host_from_graph(const cmsat_graph* g, cmsat_host** out);
/* dense = 1: the host cmsat_graph_sample draws; dense = 0: the hashed
 * host the flower constructions use. */
CMSAT_API cmsat_status cmsat_host_gnp(size_t n, double p, uint64_t seed, int dense, cmsat_host** out);
/* "gnp:N:P:SEED", "gnp-hash:N:P:SEED" or a path to a stored graph. */
CMSAT_API cmsat_status cmsat_host_open(const char* descriptor, cmsat_host** out);
CMSAT_API void cmsat_host_free(cmsat_host* h);

CMSAT_API cmsat_status cmsat_is_cm_free(const cmsat_graph* g, int m, int* out);

/* method: star-factor, r-flower, sr-flower or greedy-baseline. policy
 * ("finite" or "literal") applies to star-factor and may be NULL. The
 * report names the host descriptor to verify against. */
CMSAT_API cmsat_status cmsat_construct(const char* method, const char* policy, size_t n, double p, int m,
                                       uint64_t seed, cmsat_graph** out_graph, char** out_report);

CMSAT_API cmsat_status cmsat_verify(const cmsat_graph* h, const cmsat_host* host, int m, size_t max_listed,
                                    int* out_saturated, char** out_report);

/* budget 0 means the default node budget. */
CMSAT_API cmsat_status cmsat_exact(const cmsat_graph* g, int m, uint64_t budget, char** out_report,
                                   cmsat_graph** out_witness);

/* Tree diagnostics are added when m >= 3 and 0 < p < 1. */
CMSAT_API cmsat_status cmsat_peel(const cmsat_graph* g, int m, double p, char** out_report);

CMSAT_API cmsat_status cmsat_bounds(size_t n, double p, int m, double c, char** out_json);

/* out_csv and out_records may each be NULL. */
CMSAT_API cmsat_status cmsat_sweep(const char* config_json, unsigned threads, char** out_csv,
                                   char** out_records);

#ifdef __cplusplus
}
#endif

#endif /* CMSAT_CMSAT_H_ */
