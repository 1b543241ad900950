#include "strassen.h"

#include <new>
#include <string_view>

#include "blocking.hpp"
#include "model.hpp"
#include "variants.hpp"

using namespace strassen;

struct strassen_ctx {
    BlockingParams blocking;
    int threads = 1;
    bool counters_enabled = false;
    Counters counters;
    Workspace workspace;
};

namespace {

strassen_status translate(const std::exception& e) {
    if (dynamic_cast<const std::bad_alloc*>(&e)) return STRASSEN_ERR_ALLOC;
    if (dynamic_cast<const std::domain_error*>(&e)) return STRASSEN_ERR_DOMAIN;
    if (dynamic_cast<const std::invalid_argument*>(&e))
        return STRASSEN_ERR_PARAM;
    return STRASSEN_ERR_PARAM;
}

template <typename F>
strassen_status guarded(F&& f) {
    try {
        f();
        return STRASSEN_OK;
    } catch (const std::invalid_argument& e) {
        // Dimension mismatches are reported distinctly from bad parameters.
        return std::string_view(e.what()).find("mismatch") !=
                       std::string_view::npos
                   ? STRASSEN_ERR_DIMENSION
                   : STRASSEN_ERR_PARAM;
    } catch (const std::exception& e) {
        return translate(e);
    }
}

Variant to_variant(strassen_variant v) {
    switch (v) {
        case STRASSEN_DGEMM: return Variant::Dgemm;
        case STRASSEN_ABC: return Variant::ABC;
        case STRASSEN_AB: return Variant::AB;
        case STRASSEN_NAIVE: return Variant::Naive;
    }
    throw std::invalid_argument("unknown variant");
}

MatrixView make_view(const double* data, long rows, long cols, long rs,
                     long cs) {
    return {const_cast<double*>(data), rows, cols, rs, cs};
}

}  // namespace

extern "C" {

strassen_status strassen_ctx_create(strassen_ctx** out) {
    if (!out) return STRASSEN_ERR_NULL;
    *out = new (std::nothrow) strassen_ctx();
    return *out ? STRASSEN_OK : STRASSEN_ERR_ALLOC;
}

void strassen_ctx_destroy(strassen_ctx* ctx) { delete ctx; }

strassen_status strassen_ctx_set_blocking(strassen_ctx* ctx,
                                          const strassen_blocking* bp) {
    if (!ctx || !bp) return STRASSEN_ERR_NULL;
    return guarded([&] {
        BlockingParams p{bp->mc, bp->nc, bp->kc, bp->mr, bp->nr};
        p.validate();
        ctx->blocking = p;
    });
}

strassen_status strassen_ctx_get_blocking(const strassen_ctx* ctx,
                                          strassen_blocking* out) {
    if (!ctx || !out) return STRASSEN_ERR_NULL;
    const BlockingParams& p = ctx->blocking;
    *out = {p.mc, p.nc, p.kc, p.mr, p.nr};
    return STRASSEN_OK;
}

strassen_status strassen_ctx_set_threads(strassen_ctx* ctx, int threads) {
    if (!ctx) return STRASSEN_ERR_NULL;
    if (threads < 1) return STRASSEN_ERR_PARAM;
    ctx->threads = threads;
    return STRASSEN_OK;
}

strassen_status strassen_ctx_enable_counters(strassen_ctx* ctx, int enabled) {
    if (!ctx) return STRASSEN_ERR_NULL;
    ctx->counters_enabled = enabled != 0;
    return STRASSEN_OK;
}

strassen_status strassen_ctx_reset_counters(strassen_ctx* ctx) {
    if (!ctx) return STRASSEN_ERR_NULL;
    ctx->counters.reset();
    return STRASSEN_OK;
}

strassen_status strassen_ctx_get_counters(const strassen_ctx* ctx,
                                          strassen_counter_values* out) {
    if (!ctx || !out) return STRASSEN_ERR_NULL;
    const Counters& c = ctx->counters;
    *out = {c.pack_a_calls.load(),     c.pack_b_calls.load(),
            c.pack_a_elems.load(),     c.pack_b_elems.load(),
            c.pack_a_add_flops.load(), c.pack_b_add_flops.load(),
            c.kernel_calls.load(),     c.kernel_fma_flops.load(),
            c.kernel_c_elems.load(),   c.kernel_update_flops.load(),
            c.a_plus_passes.load(),    c.a_plus_elems.load(),
            c.a_plus_flops.load(),     c.b_plus_passes.load(),
            c.b_plus_elems.load(),     c.b_plus_flops.load(),
            c.c_plus_passes.load(),    c.c_plus_elems.load(),
            c.c_plus_flops.load()};
    return STRASSEN_OK;
}

strassen_status strassen_gemm(strassen_ctx* ctx, strassen_variant variant,
                              int level, long m, long n, long k, double alpha,
                              const double* a, long rs_a, long cs_a,
                              const double* b, long rs_b, long cs_b, double* c,
                              long rs_c, long cs_c) {
    if (!ctx || !a || !b || !c) return STRASSEN_ERR_NULL;
    if (variant == STRASSEN_DGEMM && level != 0) return STRASSEN_ERR_PARAM;
    if (variant != STRASSEN_DGEMM && (level < 1 || level > 2))
        return STRASSEN_ERR_PARAM;
    return guarded([&] {
        const ProblemShape shape{m, n, k, alpha};
        const MatrixView A = make_view(a, m, k, rs_a, cs_a);
        const MatrixView B = make_view(b, k, n, rs_b, cs_b);
        const MatrixView C = make_view(c, m, n, rs_c, cs_c);
        Counters* cnt = ctx->counters_enabled ? &ctx->counters : nullptr;
        run_variant(to_variant(variant), level, shape, A, B, C, ctx->blocking,
                    ctx->threads, &ctx->workspace, cnt);
    });
}

strassen_status strassen_reference_gemm(long m, long n, long k, double alpha,
                                        const double* a, long rs_a, long cs_a,
                                        const double* b, long rs_b, long cs_b,
                                        double* c, long rs_c, long cs_c) {
    if (!a || !b || !c) return STRASSEN_ERR_NULL;
    return guarded([&] {
        const ProblemShape shape{m, n, k, alpha};
        reference_gemm(shape, make_view(a, m, k, rs_a, cs_a),
                       make_view(b, k, n, rs_b, cs_b),
                       make_view(c, m, n, rs_c, cs_c));
    });
}

strassen_status strassen_rel_error(long rows, long cols, const double* c_test,
                                   long rs_t, long cs_t, const double* c_ref,
                                   long rs_r, long cs_r, double* out) {
    if (!c_test || !c_ref || !out) return STRASSEN_ERR_NULL;
    return guarded([&] {
        *out = rel_frobenius_error(make_view(c_test, rows, cols, rs_t, cs_t),
                                   make_view(c_ref, rows, cols, rs_r, cs_r));
    });
}

strassen_status strassen_model_predict(strassen_variant variant, int level,
                                       long m, long n, long k,
                                       const strassen_blocking* bp,
                                       const strassen_model_params* mp,
                                       strassen_breakdown* breakdown_out,
                                       double* egf_out) {
    if (!bp || !mp) return STRASSEN_ERR_NULL;
    if (variant == STRASSEN_DGEMM && level != 0) return STRASSEN_ERR_PARAM;
    if (variant != STRASSEN_DGEMM && (level < 1 || level > 2))
        return STRASSEN_ERR_PARAM;
    return guarded([&] {
        const VariantSpec spec{level, to_variant(variant)};
        const BlockingParams blocking{bp->mc, bp->nc, bp->kc, bp->mr, bp->nr};
        const ModelParams params{mp->tau_a, mp->tau_b, mp->lambda,
                                 mp->channel_factor};
        const Prediction p = predict(m, n, k, spec, blocking, params);
        if (breakdown_out) {
            const TimeBreakdown& t = p.breakdown;
            *breakdown_out = {t.ta_mul,   t.ta_a_add, t.ta_b_add, t.ta_c_add,
                              t.tm_a_mul, t.tm_b_mul, t.tm_c_mul, t.tm_a_add,
                              t.tm_b_add, t.tm_c_add, t.total()};
        }
        if (egf_out) *egf_out = p.egf;
    });
}

strassen_status strassen_effective_gflops(long m, long n, long k,
                                          double seconds, double* out) {
    if (!out) return STRASSEN_ERR_NULL;
    return guarded([&] { *out = effective_gflops(m, n, k, seconds); });
}

void strassen_model_params_ivy_bridge(strassen_model_params* out) {
    if (!out) return;
    const ModelParams p = ivy_bridge_single_core();
    *out = {p.tau_a, p.tau_b, p.lambda, p.channel_factor};
}

void strassen_blocking_defaults(strassen_blocking* out) {
    if (!out) return;
    const BlockingParams p;
    *out = {p.mc, p.nc, p.kc, p.mr, p.nr};
}

strassen_status strassen_table_counts(int level, long out[4]) {
    if (!out) return STRASSEN_ERR_NULL;
    return guarded([&] {
        const TableOpCounts c = count_table_ops(table_for_level(level));
        out[0] = c.mults;
        out[1] = c.a_adds;
        out[2] = c.b_adds;
        out[3] = c.c_updates;
    });
}

const char* strassen_status_str(strassen_status s) {
    switch (s) {
        case STRASSEN_OK: return "ok";
        case STRASSEN_ERR_DIMENSION: return "dimension mismatch";
        case STRASSEN_ERR_PARAM: return "invalid parameter";
        case STRASSEN_ERR_DOMAIN: return "domain error";
        case STRASSEN_ERR_ALLOC: return "allocation failure";
        case STRASSEN_ERR_NULL: return "null argument";
    }
    return "unknown";
}

}  // extern "C"
