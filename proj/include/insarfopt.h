/* SPDX-License-Identifier: Apache-2.0 */
#ifndef INSARFOPT_H
#define INSARFOPT_H

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes mirror the CLI exit codes. */
#define INSARFOPT_OK 0
#define INSARFOPT_ERR_INVALID 1    /* bad input, parse error, usage */
#define INSARFOPT_ERR_INFEASIBLE 2 /* scenario has no feasible point */

typedef struct insarfopt_scenario insarfopt_scenario;

/* Any char* output (JSON or error message) is heap-allocated; release it
 * with insarfopt_string_free. Output pointers may be NULL to skip. */

int insarfopt_scenario_load(const char* path, insarfopt_scenario** out, char** err);
int insarfopt_scenario_parse(const char* text, insarfopt_scenario** out, char** err);
insarfopt_scenario* insarfopt_scenario_clone(const insarfopt_scenario* s);
void insarfopt_scenario_free(insarfopt_scenario* s);

/* Named-field override (SI-linear value); see library docs for names. */
int insarfopt_scenario_override(insarfopt_scenario* s, const char* field, double value,
                                char** err);
/* Canonical fingerprint of the scenario (hex string). */
int insarfopt_scenario_fingerprint(const insarfopt_scenario* s, char** out);

/* mode: "proposed" | "benchmark1" | "benchmark2"; init_index 0..2 selects a
 * documented starting formation; epsilon <= 0 uses the default 1e-4.
 * On success *json_out holds the full run report. */
int insarfopt_solve_json(const insarfopt_scenario* s, const char* mode, int init_index,
                         double epsilon, char** json_out, char** err);

/* Exhaustive grid search; step <= 0 uses the 1 m default grid. Returns
 * INSARFOPT_ERR_INFEASIBLE when no grid point is feasible (JSON still
 * written with the statistics). */
int insarfopt_oracle_json(const insarfopt_scenario* s, double step, int jobs,
                          char** json_out, char** err);

/* As insarfopt_oracle_json, additionally returning the full feasible set as
 * CSV (header z1,x2,z2,coverage_m2,min_slack) in *csv_out. */
int insarfopt_oracle_dump_json(const insarfopt_scenario* s, double step, int jobs,
                               char** json_out, char** csv_out, char** err);

/* Metrics + constraint report for an explicit formation (x1 is recomputed
 * from z1 via the master placement rule; minimal power schedules). */
int insarfopt_metrics_json(const insarfopt_scenario* s, double z1, double x2, double z2,
                           char** json_out, char** err);

const char* insarfopt_version(void);
void insarfopt_string_free(char* p);

#ifdef __cplusplus
}
#endif

#endif /* INSARFOPT_H */
