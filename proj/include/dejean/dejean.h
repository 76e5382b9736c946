/*
 * dejean.h - C interface to the threshold-word workbench.
 *
 * Every object crosses the boundary as an opaque handle owned by the caller
 * and released with the matching *_free function. Functions report failure
 * through dj_status; the message for the most recent failure on the calling
 * thread is available from dj_last_error().
 *
 * Words use 1-based letters. Binary (Pansiot) words are passed as text made
 * of '0' and '1'.
 */
#ifndef DEJEAN_H
#define DEJEAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DEJEAN_BUILDING_LIBRARY)
#    define DJ_API __declspec(dllexport)
#  else
#    define DJ_API __declspec(dllimport)
#  endif
#else
#  define DJ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define DJ_SCHEMA_VERSION 1

typedef enum dj_status {
  DJ_OK = 0,
  DJ_E_INVALID_ARGUMENT = 1,
  DJ_E_PARSE = 2,
  DJ_E_DOMAIN = 3,
  DJ_E_LIMIT = 4,
  DJ_E_VERIFICATION = 5,
  DJ_E_UNAVAILABLE = 6,
  DJ_E_IO = 7,
  DJ_E_INTERNAL = 8
} dj_status;

/* Outcome carried by a result document. */
typedef enum dj_verdict {
  DJ_VERDICT_PASS = 0,
  DJ_VERDICT_FAIL = 1,
  DJ_VERDICT_INFO = 2,
  DJ_VERDICT_UNAVAILABLE = 3
} dj_verdict;

typedef enum dj_kind {
  DJ_KIND_PLAIN = 0,
  DJ_KIND_KERNEL = 1,
  DJ_KIND_PSI_KERNEL = 2,
  DJ_KIND_STABILIZING = 3
} dj_kind;

typedef enum dj_maximality {
  DJ_MAXIMAL_TWO_SIDED = 0,
  DJ_MAXIMAL_LEFT_ONLY = 1,
  DJ_MAXIMAL_RIGHT_ONLY = 2
} dj_maximality;

typedef struct dj_rational {
  int64_t num;
  int64_t den;
} dj_rational;

typedef struct dj_report {
  size_t start; /* 1-based */
  size_t length;
  size_t period;
  dj_rational exponent;
  dj_kind kind;
  uint32_t order; /* k for stabilizing reports, else 0 */
} dj_report;

typedef struct dj_word dj_word;
typedef struct dj_table dj_table;
typedef struct dj_doc dj_doc;

DJ_API const char* dj_version(void);
DJ_API const char* dj_last_error(void);
DJ_API const char* dj_status_name(dj_status status);

/* Worker threads for parallel searches; 0 restores the default. */
DJ_API void dj_set_jobs(unsigned jobs);
DJ_API unsigned dj_get_jobs(void);

/* Words ------------------------------------------------------------------ */

DJ_API dj_status dj_word_parse(const char* text, uint32_t alphabet, dj_word** out);
DJ_API dj_status dj_word_parse_binary(const char* bits, dj_word** out);
DJ_API dj_status dj_word_from_letters(const uint32_t* letters, size_t length, uint32_t alphabet, dj_word** out);
DJ_API void dj_word_free(dj_word* word);
DJ_API size_t dj_word_length(const dj_word* word);
DJ_API uint32_t dj_word_alphabet(const dj_word* word);
/* Copies up to `capacity` letters; returns the word length. */
DJ_API size_t dj_word_letters(const dj_word* word, uint32_t* buffer, size_t capacity);
/* Writes the text form (NUL terminated) when it fits; `needed` receives the
 * byte count including the terminator. Binary words render as 0/1. */
DJ_API dj_status dj_word_format(const dj_word* word, char* buffer, size_t capacity, size_t* needed);

/* Exponents and freeness -------------------------------------------------- */

DJ_API dj_status dj_rational_parse(const char* text, dj_rational* out);
DJ_API dj_status dj_repetition_threshold(uint32_t n, dj_rational* out);
DJ_API dj_status dj_max_exponent(const dj_word* word, dj_rational* out);
/* *found is 1 when a violation was written to *report, else 0. */
DJ_API dj_status dj_find_forbidden_factor(const dj_word* word, dj_rational r, int strict, dj_report* report,
                                          int* found);

/* Pansiot encoding -------------------------------------------------------- */

/* images[a - 1] = a·φ_n(binary) for a in 1..n; `images` holds n entries. */
DJ_API dj_status dj_phi(uint32_t n, const dj_word* binary, uint32_t* images, size_t capacity);
DJ_API dj_status dj_gamma(uint32_t n, const dj_word* binary, dj_word** out);
DJ_API dj_status dj_is_k_stabilizing(uint32_t n, const dj_word* binary, uint32_t k, int* result);
DJ_API dj_status dj_scan_pansiot(uint32_t n, const dj_word* binary, dj_report* report, int* found);

/* Carpi machinery --------------------------------------------------------- */

DJ_API dj_status dj_in_psi_kernel(const dj_word* word, int* result);
DJ_API dj_status dj_find_psi_kernel_repetition(uint32_t n, const dj_word* word, dj_report* report, int* found);

/* Loads and validates a morphism table document (fields n, m, images). */
DJ_API dj_status dj_table_load(const char* path, dj_table** out);
DJ_API dj_status dj_table_parse(const char* json_text, dj_table** out);
/* Uniform binary images without the Carpi size checks (tests, toy tables). */
DJ_API dj_status dj_table_from_images(uint32_t n, const char* const* binary_images, size_t count, dj_table** out);
DJ_API void dj_table_free(dj_table* table);
DJ_API uint32_t dj_table_order(const dj_table* table);
/* Size m of the source alphabet A_m. */
DJ_API uint32_t dj_table_alphabet(const dj_table* table);
DJ_API size_t dj_table_image_length(const dj_table* table);

/* γ_n(f_n(word)). On DJ_E_VERIFICATION, *failure (if non-null) receives the
 * offending report. */
DJ_API dj_status dj_pipeline(const dj_table* table, const dj_word* word, int verify, dj_word** out,
                             dj_report* failure);

/* Result documents --------------------------------------------------------
 * Every document is a JSON object with "schema": 1, a "command" name, a
 * "status" of pass/fail/info/unavailable, a one-line "summary" and a
 * command-specific "payload". */

DJ_API dj_verdict dj_doc_verdict(const dj_doc* doc);
DJ_API const char* dj_doc_summary(const dj_doc* doc);
/* Full document; with include_witnesses == 0 witness lists are dropped. */
DJ_API const char* dj_doc_json(const dj_doc* doc, int include_witnesses);
/* CSV rendering for count tables; NULL for other documents. */
DJ_API const char* dj_doc_csv(const dj_doc* doc);
DJ_API void dj_doc_free(dj_doc* doc);

DJ_API dj_status dj_doc_check(const dj_word* word, dj_rational r, int strict, dj_doc** out);
DJ_API dj_status dj_doc_gamma(uint32_t n, const dj_word* binary, dj_doc** out);
DJ_API dj_status dj_doc_scan_pansiot(uint32_t n, const dj_word* binary, dj_doc** out);
DJ_API dj_status dj_doc_pipeline(const dj_table* table, const dj_word* word, int verify, dj_doc** out);

DJ_API dj_status dj_generate_beta(size_t length, dj_doc** out);
DJ_API dj_status dj_generate_alpha(uint32_t m, size_t length, dj_doc** out);
DJ_API dj_status dj_generate_zm(uint32_t m, size_t length, size_t free_slot_limit, dj_doc** out);
DJ_API dj_status dj_generate_z4(size_t max_length, dj_doc** out);

DJ_API dj_status dj_count_threshold(uint32_t n, size_t max_length, uint64_t node_budget, int symmetry,
                                    dj_doc** out);
DJ_API dj_status dj_count_zm(uint32_t m, size_t max_length, dj_doc** out);
DJ_API dj_status dj_count_z4(size_t max_length, dj_doc** out);
DJ_API dj_status dj_lower_bound(uint32_t n, uint64_t k, dj_doc** out);

DJ_API dj_status dj_verify_elimination(uint32_t n_lo, uint32_t n_hi, size_t max_length,
                                       const char* const* injected, size_t injected_count, dj_doc** out);
DJ_API dj_status dj_verify_w_set(size_t max_length, int bound_filter, dj_maximality maximality, dj_doc** out);
DJ_API dj_status dj_verify_ew(size_t max_length, dj_doc** out);
DJ_API dj_status dj_verify_binary_avoidance(uint32_t n, size_t depth_cap, int64_t slack, dj_doc** out);
DJ_API dj_status dj_verify_lemma6(uint32_t m, size_t length, size_t samples, uint64_t seed, int exhaustive,
                                  dj_doc** out);
DJ_API dj_status dj_verify_prop7_desk(uint32_t m, uint32_t n, size_t length, size_t samples, uint64_t seed,
                                      dj_doc** out);
/* A NULL table yields an "unavailable" document, not an error. */
DJ_API dj_status dj_verify_n26_stabilizing(const dj_table* table, uint32_t k, uint32_t suffix, dj_doc** out);

#ifdef __cplusplus
}
#endif

#endif /* DEJEAN_H */
