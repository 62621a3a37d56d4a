/*
 * Copyright (c) 2026 The stablelog authors
 *
 * SPDX-License-Identifier: MIT
 */
#ifndef STABLELOG_STABLELOG_H
#define STABLELOG_STABLELOG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SL_BUILDING_LIBRARY)
#    define SL_API __declspec(dllexport)
#  else
#    define SL_API __declspec(dllimport)
#  endif
#else
#  define SL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl_status {
	SL_OK = 0,
	SL_ERR_PARSE = 1,
	SL_ERR_INVALID_PROGRAM = 2,
	SL_ERR_ZERO_EVIDENCE = 3,
	SL_ERR_UNKNOWN_ATOM = 4,
	SL_ERR_COVERAGE = 5,
	SL_ERR_LIMIT = 6,
	SL_ERR_ARGUMENT = 7,
	SL_ERR_INTERNAL = 8
} sl_status;

typedef enum sl_engine {
	SL_ENGINE_AUTO = 0,
	SL_ENGINE_ORACLE = 1,
	SL_ENGINE_CIRCUIT = 2
} sl_engine;

typedef struct sl_program sl_program;
typedef struct sl_ground_program sl_ground_program;
typedef struct sl_inference sl_inference;
typedef struct sl_learn_result sl_learn_result;

/* Message of the last failed call on this thread; never NULL. */
SL_API const char* sl_last_error(void);
/* Line and column of the last parse error on this thread, 0 if none. */
SL_API void sl_last_error_position(int* line, int* column);

SL_API const char* sl_version(void);
SL_API void sl_string_free(char* s);

/* ---- programs ---------------------------------------------------------- */

SL_API sl_status sl_program_parse(const char* text, sl_program** out);
/* Translates an argument graph file (.arg format) into a program. */
SL_API sl_status sl_program_from_graph(const char* text, sl_program** out);
SL_API void sl_program_free(sl_program* p);
/* Program text; release with sl_string_free. */
SL_API sl_status sl_program_print(const sl_program* p, char** out);
/* Adds evidence(atom, value); `atom` is written as in program text. */
SL_API sl_status sl_program_add_evidence(sl_program* p, const char* atom, int value);
/* Appends query(atom); `atom` may be non-ground. */
SL_API sl_status sl_program_add_query(sl_program* p, const char* atom);

/* ---- grounding --------------------------------------------------------- */

typedef struct sl_ground_options {
	size_t atom_limit;  /* 0 = default */
	int keep_all;       /* keep atoms irrelevant to queries/evidence */
	const char* const* extra_seeds; /* atoms kept by relevance pruning */
	size_t extra_seed_count;
} sl_ground_options;

SL_API sl_status sl_ground(const sl_program* p, const sl_ground_options* opts, sl_ground_program** out);
SL_API void sl_ground_free(sl_ground_program* g);
SL_API size_t sl_ground_fact_count(const sl_ground_program* g);
SL_API size_t sl_ground_atom_count(const sl_ground_program* g);
SL_API int sl_ground_has_negative_cycle(const sl_ground_program* g);
SL_API sl_status sl_ground_print(const sl_ground_program* g, char** out);

/* ---- inference --------------------------------------------------------- */

typedef struct sl_infer_options {
	sl_engine engine;
	size_t fact_cap;        /* oracle refuses more facts; 0 = 24 */
	int allow_inconsistent; /* drop worlds without stable models */
} sl_infer_options;

SL_API void sl_infer_options_init(sl_infer_options* opts);

/* Runs every declared query under the program's evidence. On
 * SL_ERR_INVALID_PROGRAM, sl_last_error() names the witness total choice. */
SL_API sl_status sl_infer(const sl_ground_program* g, const sl_infer_options* opts, sl_inference** out);
SL_API void sl_inference_free(sl_inference* r);
SL_API size_t sl_inference_count(const sl_inference* r);
/* Query atom text; valid while `r` lives. */
SL_API const char* sl_inference_atom(const sl_inference* r, size_t i);
SL_API double sl_inference_probability(const sl_inference* r, size_t i);
/* Engine actually used (SL_ENGINE_ORACLE or SL_ENGINE_CIRCUIT). */
SL_API sl_engine sl_inference_engine(const sl_inference* r);
/* Phase timings in seconds; zero for the oracle engine. */
SL_API void sl_inference_timings(const sl_inference* r, double* compile, double* enumerate, double* evaluate);
/* Evidence part of the report, e.g. "arg(a1)" or "a, \+b"; empty without evidence. */
SL_API const char* sl_inference_evidence(const sl_inference* r);

/* Compiled smooth d-DNNF in the line format `L <lit>`, `A <ids>`, `O <ids>`
 * (root last); free with sl_string_free. */
SL_API sl_status sl_circuit_dump(const sl_ground_program* g, int allow_inconsistent, char** out);

/* Witness total choice of the last SL_ERR_INVALID_PROGRAM on this thread,
 * as text like "{a, b}"; empty string otherwise. */
SL_API const char* sl_last_witness(void);

/* ---- sampling and learning ---------------------------------------------- */

/* `observe` lists predicate names to keep (NULL/0 = the query atoms, or every
 * non-generated atom without queries). Dataset text; free with sl_string_free. */
SL_API sl_status sl_sample(const sl_ground_program* g, size_t n, uint64_t seed, const char* const* observe,
                           size_t observe_count, char** out);

typedef struct sl_learn_options {
	size_t max_iter; /* default 100 */
	double tol;      /* default 1e-4 */
	int allow_inconsistent;
	int fully_observed; /* use relative frequencies instead of EM */
} sl_learn_options;

SL_API void sl_learn_options_init(sl_learn_options* opts);

/* Fits the learnable labels of `p` to the dataset text. */
SL_API sl_status sl_learn(const sl_program* p, const char* dataset, const sl_learn_options* opts,
                          sl_learn_result** out);
SL_API void sl_learn_free(sl_learn_result* r);
/* Program with fitted labels; valid while `r` lives. */
SL_API const char* sl_learn_program(const sl_learn_result* r);
SL_API size_t sl_learn_trace_length(const sl_learn_result* r);
SL_API double sl_learn_trace(const sl_learn_result* r, size_t i);
SL_API size_t sl_learn_iterations(const sl_learn_result* r);
/* Mean absolute error of the fitted labels against the labels of
 * `reference` (same program shape, numeric labels). */
SL_API sl_status sl_learn_mae(const sl_learn_result* r, const sl_program* reference, double* out);

#ifdef __cplusplus
}
#endif

#endif
