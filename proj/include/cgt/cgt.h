#ifndef CGT_CGT_H
#define CGT_CGT_H

/* C interface to the cgt library. Handles are opaque; every function returns a
 * status code and leaves details in cgt_last_error() on failure. Strings
 * handed out by the library are freed with cgt_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CGT_API __declspec(dllexport)
#else
#define CGT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cgt_status {
    CGT_OK = 0,
    CGT_FALSE = 1,             /* relation does not hold, counterexample found */
    CGT_ERR_USAGE = 2,         /* bad argument, unknown name, dimension mismatch */
    CGT_ERR_PARSE = 3,         /* expression, sum or config text */
    CGT_ERR_TERMINATION = 4,   /* cycle, non-decreasing measure, node cap */
    CGT_ERR_GUARD = 5,         /* size guard refused the request */
    CGT_ERR_INTERNAL = 6       /* two independent computations disagreed */
} cgt_status;

typedef struct cgt_context cgt_context;
typedef struct cgt_expr cgt_expr;
typedef struct cgt_play cgt_play;

/* Message of the last failed call on this thread; never NULL. */
CGT_API const char* cgt_last_error(void);
CGT_API void cgt_string_free(char* s);

/* A context owns the catalog (builtins plus config rulesets) and the memo. */
CGT_API cgt_status cgt_context_new(cgt_context** out);
CGT_API void cgt_context_free(cgt_context* ctx);
CGT_API cgt_status cgt_context_load_config(cgt_context* ctx, const char* path);
CGT_API cgt_status cgt_context_load_config_text(cgt_context* ctx, const char* text);

CGT_API cgt_status cgt_expr_parse(cgt_context* ctx, const char* text, cgt_expr** out);
CGT_API void cgt_expr_free(cgt_expr* e);
CGT_API cgt_status cgt_expr_render(const cgt_expr* e, char** out);
CGT_API uint64_t cgt_expr_id(const cgt_expr* e);
CGT_API size_t cgt_expr_dimension(const cgt_expr* e);

/* outcome: 'P' or 'N'. */
CGT_API cgt_status cgt_outcome(cgt_context* ctx, const cgt_expr* e, const uint64_t* coords, size_t n, char* out);
CGT_API cgt_status cgt_nimber(cgt_context* ctx, const cgt_expr* e, const uint64_t* coords, size_t n,
                              uint64_t* out);

/* analysis: "outcome", "grundy" or "enforce_grundy"; format: "ascii", "csv" or
 * "json". A non-empty note is returned when the analysis was adjusted. */
CGT_API cgt_status cgt_grid(cgt_context* ctx, const char* expr, const char* analysis, uint64_t width,
                            uint64_t height, const char* format, char** text, char** note);

/* Domination of a over b on the square of side region. CGT_OK when a
 * dominates b, CGT_FALSE otherwise; the report is produced in both cases.
 * json selects the structured form. */
CGT_API cgt_status cgt_dominate(cgt_context* ctx, const char* a, const char* b, uint64_t region, int json,
                                char** report);
/* Three-cycle check. CGT_OK when the precondition holds and is confirmed. */
CGT_API cgt_status cgt_three_cycle(cgt_context* ctx, const char* a, const char* b, const char* c, uint64_t region,
                                   char** report);
/* Strong-domination falsifier over the given candidate (NULL: default pool).
 * CGT_FALSE when a counterexample is found. */
CGT_API cgt_status cgt_strong(cgt_context* ctx, const char* a, const char* b, const char* candidate,
                              uint64_t region, int json, char** report);
/* Enforce nimbers of a.b against nimbers of a. Report only; CGT_OK. */
CGT_API cgt_status cgt_compare_nimbers(cgt_context* ctx, const char* a, const char* b, uint64_t region, int json,
                                       char** report);

/* One law by name ("absorption1", ... "absorbE_select") over operands
 * separated by '|'. CGT_FALSE when a counterexample is found. */
CGT_API cgt_status cgt_law(cgt_context* ctx, const char* law, const char* operands, uint64_t region, int json,
                           char** report);
/* Every law over `tuples` operand triples drawn from the 2-D catalog with
 * the given seed. */
CGT_API cgt_status cgt_laws_sampled(cgt_context* ctx, uint64_t seed, size_t tuples, uint64_t region, int json,
                                    char** report);

/* Outcome, per-component values and advice for a sum. */
CGT_API cgt_status cgt_solve(cgt_context* ctx, const char* sum, int json, char** report);

/* Shortness from a position ("x;y"): check_short for a single ruleset,
 * joint shortness otherwise. CGT_ERR_TERMINATION on a violation or an
 * inconclusive search; the report is produced either way. */
CGT_API cgt_status cgt_check(cgt_context* ctx, const char* expr, const char* at, char** report);

/* Play sessions. human_first / human_second pick who plays each side. */
CGT_API cgt_status cgt_play_new(cgt_context* ctx, const char* sum, int human_first, int human_second,
                                cgt_play** out);
CGT_API void cgt_play_free(cgt_play* p);
/* Pending question, empty when the session is over. */
CGT_API cgt_status cgt_play_prompt(const cgt_play* p, char** out);
CGT_API cgt_status cgt_play_input(cgt_play* p, const char* line);
CGT_API cgt_status cgt_play_output(cgt_play* p, char** out);
CGT_API int cgt_play_finished(const cgt_play* p);
CGT_API void cgt_play_abort(cgt_play* p);
CGT_API cgt_status cgt_play_transcript(const cgt_play* p, char** out);

#ifdef __cplusplus
}
#endif

#endif
