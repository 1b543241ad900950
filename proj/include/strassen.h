/* Public C API for the Strassen-fused blocked dgemm library.
 *
 * All matrices are double precision, addressed through a base pointer plus
 * a row stride and a column stride (in elements); transposition is expressed
 * by swapping the strides.  Every routine computes C := alpha * A * B + C.
 */
#ifndef STRASSEN_H
#define STRASSEN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum strassen_status {
    STRASSEN_OK = 0,
    STRASSEN_ERR_DIMENSION = 1, /* operand shapes inconsistent */
    STRASSEN_ERR_PARAM = 2,     /* invalid blocking / model / level */
    STRASSEN_ERR_DOMAIN = 3,    /* out-of-domain scalar argument */
    STRASSEN_ERR_ALLOC = 4,
    STRASSEN_ERR_NULL = 5
} strassen_status;

typedef enum strassen_variant {
    STRASSEN_DGEMM = 0, /* conventional blocked gemm (level must be 0) */
    STRASSEN_ABC = 1,   /* fused packing + multi-destination micro-kernel */
    STRASSEN_AB = 2,    /* product temporary, streamed C updates */
    STRASSEN_NAIVE = 3  /* all operands materialized */
} strassen_variant;

typedef struct strassen_blocking {
    long mc, nc, kc; /* cache block sizes */
    long mr, nr;     /* register tile sizes; mc % mr == 0, nc % nr == 0 */
} strassen_blocking;

typedef struct strassen_model_params {
    double tau_a;          /* seconds per flop */
    double tau_b;          /* seconds per 8-byte element from slow memory */
    double lambda;         /* prefetch efficiency on kernel C traffic, [0.5,1] */
    double channel_factor; /* multiplier on tau_b (single-core channels) */
} strassen_model_params;

typedef struct strassen_breakdown {
    double ta_mul, ta_a_add, ta_b_add, ta_c_add;
    double tm_a_mul, tm_b_mul, tm_c_mul;
    double tm_a_add, tm_b_add, tm_c_add;
    double total; /* sum of all fields above */
} strassen_breakdown;

/* Snapshot of the instrumentation counters. */
typedef struct strassen_counter_values {
    int64_t pack_a_calls, pack_b_calls;
    int64_t pack_a_elems, pack_b_elems;
    int64_t pack_a_add_flops, pack_b_add_flops;
    int64_t kernel_calls, kernel_fma_flops;
    int64_t kernel_c_elems, kernel_update_flops;
    int64_t a_plus_passes, a_plus_elems, a_plus_flops;
    int64_t b_plus_passes, b_plus_elems, b_plus_flops;
    int64_t c_plus_passes, c_plus_elems, c_plus_flops;
} strassen_counter_values;

/* Opaque execution context: blocking parameters, worker count, reusable
 * packing / temporary workspace, and optional counters. */
typedef struct strassen_ctx strassen_ctx;

strassen_status strassen_ctx_create(strassen_ctx** out);
void strassen_ctx_destroy(strassen_ctx* ctx);

strassen_status strassen_ctx_set_blocking(strassen_ctx* ctx,
                                          const strassen_blocking* bp);
strassen_status strassen_ctx_get_blocking(const strassen_ctx* ctx,
                                          strassen_blocking* out);
strassen_status strassen_ctx_set_threads(strassen_ctx* ctx, int threads);

strassen_status strassen_ctx_enable_counters(strassen_ctx* ctx, int enabled);
strassen_status strassen_ctx_reset_counters(strassen_ctx* ctx);
strassen_status strassen_ctx_get_counters(const strassen_ctx* ctx,
                                          strassen_counter_values* out);

/* C := alpha A B + C.  level: 0 for STRASSEN_DGEMM, 1 or 2 otherwise. */
strassen_status strassen_gemm(strassen_ctx* ctx, strassen_variant variant,
                              int level, long m, long n, long k, double alpha,
                              const double* a, long rs_a, long cs_a,
                              const double* b, long rs_b, long cs_b, double* c,
                              long rs_c, long cs_c);

/* Brute-force triple-loop oracle (deterministic accumulation order). */
strassen_status strassen_reference_gemm(long m, long n, long k, double alpha,
                                        const double* a, long rs_a, long cs_a,
                                        const double* b, long rs_b, long cs_b,
                                        double* c, long rs_c, long cs_c);

/* ||C_test - C_ref||_F / max(||C_ref||_F, 1) */
strassen_status strassen_rel_error(long rows, long cols, const double* c_test,
                                   long rs_t, long cs_t, const double* c_ref,
                                   long rs_r, long cs_r, double* out);

/* Analytical performance model. */
strassen_status strassen_model_predict(strassen_variant variant, int level,
                                       long m, long n, long k,
                                       const strassen_blocking* bp,
                                       const strassen_model_params* mp,
                                       strassen_breakdown* breakdown_out,
                                       double* egf_out);

strassen_status strassen_effective_gflops(long m, long n, long k,
                                          double seconds, double* out);

/* Ivy Bridge single-core preset (28.32 GFLOPS peak, 59.7 GB/s over four
 * channels, lambda = 0.7). */
void strassen_model_params_ivy_bridge(strassen_model_params* out);
void strassen_blocking_defaults(strassen_blocking* out);

/* Operand-table cardinalities for level 1 or 2:
 * out = { mults, a_adds, b_adds, c_updates }. */
strassen_status strassen_table_counts(int level, long out[4]);

const char* strassen_status_str(strassen_status s);

#ifdef __cplusplus
}
#endif

#endif /* STRASSEN_H */
