/*
 * Copyright 2026 The LXG Compiler Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LXG_LXG_H_
#define LXG_LXG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LXG_BUILDING_LIBRARY)
#define LXG_API __declspec(dllexport)
#else
#define LXG_API __declspec(dllimport)
#endif
#else
#define LXG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lxg_status {
  LXG_OK = 0,
  LXG_ERR_IO = 1,
  LXG_ERR_SCAN = 2,
  LXG_ERR_GRAMMAR = 3,
  LXG_ERR_PREPARSE = 4,
  LXG_ERR_PARSE = 5,
  LXG_ERR_CODEGEN = 6,
  LXG_ERR_ASSEMBLE = 7,
  LXG_ERR_RUNTIME = 8,
  LXG_ERR_FUEL = 9,
  LXG_ERR_INVALID_ARGUMENT = 10,
  LXG_ERR_INTERNAL = 11
} lxg_status;

typedef struct lxg_compiler lxg_compiler;
typedef struct lxg_program lxg_program;

/* Short lowercase name of a status, e.g. "parse". Never NULL. */
LXG_API const char* lxg_status_name(lxg_status status);

/* NULL paths select the bundled grammar and run-time library. */
LXG_API lxg_status lxg_compiler_create(const char* grammar_path, const char* library_path,
                                       lxg_compiler** out);
LXG_API void lxg_compiler_destroy(lxg_compiler* compiler);

/* Diagnostic of the last failed call on this handle; "" if none. Valid
 * until the next call on the handle. */
LXG_API const char* lxg_compiler_last_error(const lxg_compiler* compiler);
/* Source line of that diagnostic, 0 if unknown. */
LXG_API int lxg_compiler_last_error_line(const lxg_compiler* compiler);

/* Compiles source text. On success *assembly receives a NUL-terminated
 * string to release with lxg_string_free. */
LXG_API lxg_status lxg_compile_string(lxg_compiler* compiler, const char* source,
                                      const char* output_name, char** assembly);

/* Compiles a file to output_path (source stem + ".m" when NULL). With
 * dump != 0 the phase dump files go to dump_dir (working directory when
 * NULL), including those of the phases that completed before an error. */
LXG_API lxg_status lxg_compile_file(lxg_compiler* compiler, const char* source_path,
                                    const char* output_path, int dump, const char* dump_dir);

LXG_API void lxg_string_free(char* text);

typedef struct lxg_run_options {
  const char* input; /* standard input for READN/READC; may be NULL */
  int64_t fuel;      /* instruction budget; <= 0 selects 10^7 */
  int trace;         /* non-zero: collect a per-instruction trace */
} lxg_run_options;

typedef struct lxg_run_result {
  char* output; /* program output; release with lxg_string_free */
  char* trace;  /* NULL unless tracing; release with lxg_string_free */
  int64_t steps;
  int error_line; /* assembly line of a fault, 0 otherwise */
} lxg_run_result;

/* Assembles Moon text. *error receives a diagnostic (release with
 * lxg_string_free) on failure when error is non-NULL. */
LXG_API lxg_status lxg_moon_assemble(const char* text, lxg_program** out, char** error);
LXG_API void lxg_moon_destroy(lxg_program* program);

/* Runs from the entry point. Returns LXG_OK on hlt, LXG_ERR_FUEL when the
 * budget ran out and LXG_ERR_RUNTIME on a machine fault; result is filled
 * in all three cases. */
LXG_API lxg_status lxg_moon_run(lxg_program* program, const lxg_run_options* options,
                                lxg_run_result* result, char** error);

/* Word stored under a label as left by the most recent run, or in the
 * initial image before any run. */
LXG_API lxg_status lxg_moon_word(const lxg_program* program, const char* label, int32_t* value);

#ifdef __cplusplus
}
#endif

#endif /* LXG_LXG_H_ */
