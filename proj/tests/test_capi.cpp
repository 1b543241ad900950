#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "strassen.h"

namespace {

std::vector<double> random_vec(size_t n, uint64_t seed) {
    std::vector<double> v(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : v) x = dist(rng);
    return v;
}

struct CtxGuard {
    strassen_ctx* ctx = nullptr;
    CtxGuard() { REQUIRE(strassen_ctx_create(&ctx) == STRASSEN_OK); }
    ~CtxGuard() { strassen_ctx_destroy(ctx); }
};

}  // namespace

TEST_CASE("context lifecycle and blocking round trip") {
    CtxGuard g;
    strassen_blocking bp;
    REQUIRE(strassen_ctx_get_blocking(g.ctx, &bp) == STRASSEN_OK);
    CHECK(bp.mc == 96);
    CHECK(bp.nc == 4096);
    CHECK(bp.kc == 256);
    CHECK(bp.mr == 8);
    CHECK(bp.nr == 4);

    bp.mc = 64;
    REQUIRE(strassen_ctx_set_blocking(g.ctx, &bp) == STRASSEN_OK);
    strassen_blocking back;
    REQUIRE(strassen_ctx_get_blocking(g.ctx, &back) == STRASSEN_OK);
    CHECK(back.mc == 64);

    bp.mc = 90;  // not a multiple of mr
    CHECK(strassen_ctx_set_blocking(g.ctx, &bp) == STRASSEN_ERR_PARAM);
}

TEST_CASE("null and argument errors") {
    CHECK(strassen_ctx_create(nullptr) == STRASSEN_ERR_NULL);
    CHECK(strassen_ctx_set_threads(nullptr, 2) == STRASSEN_ERR_NULL);

    CtxGuard g;
    CHECK(strassen_ctx_set_threads(g.ctx, 0) == STRASSEN_ERR_PARAM);

    std::vector<double> a(4), b(4), c(4);
    // level 1 with the dgemm variant is inconsistent
    CHECK(strassen_gemm(g.ctx, STRASSEN_DGEMM, 1, 2, 2, 2, 1.0, a.data(), 2, 1,
                        b.data(), 2, 1, c.data(), 2, 1) == STRASSEN_ERR_PARAM);
    // level 3 unsupported
    CHECK(strassen_gemm(g.ctx, STRASSEN_ABC, 3, 2, 2, 2, 1.0, a.data(), 2, 1,
                        b.data(), 2, 1, c.data(), 2, 1) == STRASSEN_ERR_PARAM);
    // non-positive dimension
    CHECK(strassen_gemm(g.ctx, STRASSEN_ABC, 1, -2, 2, 2, 1.0, a.data(), 2, 1,
                        b.data(), 2, 1, c.data(), 2, 1) == STRASSEN_ERR_PARAM);
    // null operand
    CHECK(strassen_gemm(g.ctx, STRASSEN_ABC, 1, 2, 2, 2, 1.0, nullptr, 2, 1,
                        b.data(), 2, 1, c.data(), 2, 1) == STRASSEN_ERR_NULL);
}

TEST_CASE("gemm through the C API matches the reference oracle") {
    CtxGuard g;
    REQUIRE(strassen_ctx_set_threads(g.ctx, 2) == STRASSEN_OK);
    const long m = 117, n = 93, k = 201;
    const std::vector<double> a = random_vec(m * k, 1), b = random_vec(k * n, 2);
    const std::vector<double> c0 = random_vec(m * n, 3);

    std::vector<double> c_ref = c0;
    REQUIRE(strassen_reference_gemm(m, n, k, 0.5, a.data(), k, 1, b.data(), n,
                                    1, c_ref.data(), n, 1) == STRASSEN_OK);

    const strassen_variant variants[] = {STRASSEN_DGEMM, STRASSEN_ABC,
                                         STRASSEN_AB, STRASSEN_NAIVE};
    for (strassen_variant v : variants) {
        for (int level = (v == STRASSEN_DGEMM ? 0 : 1);
             level <= (v == STRASSEN_DGEMM ? 0 : 2); ++level) {
            std::vector<double> c = c0;
            REQUIRE(strassen_gemm(g.ctx, v, level, m, n, k, 0.5, a.data(), k,
                                  1, b.data(), n, 1, c.data(), n,
                                  1) == STRASSEN_OK);
            double err = 1.0;
            REQUIRE(strassen_rel_error(m, n, c.data(), n, 1, c_ref.data(), n,
                                       1, &err) == STRASSEN_OK);
            CHECK(err < 1e-11);
        }
    }
}

TEST_CASE("transposition via swapped strides") {
    CtxGuard g;
    const long m = 20, n = 15, k = 30;
    // store A transposed (k x m, row-major), pass swapped strides
    const std::vector<double> at = random_vec(k * m, 4);
    const std::vector<double> b = random_vec(k * n, 5);
    std::vector<double> c(m * n, 0.0), c_ref(m * n, 0.0);
    REQUIRE(strassen_gemm(g.ctx, STRASSEN_ABC, 1, m, n, k, 1.0, at.data(), 1,
                          m, b.data(), n, 1, c.data(), n, 1) == STRASSEN_OK);
    std::vector<double> a(m * k);
    for (long i = 0; i < m; ++i)
        for (long p = 0; p < k; ++p) a[i * k + p] = at[p * m + i];
    REQUIRE(strassen_reference_gemm(m, n, k, 1.0, a.data(), k, 1, b.data(), n,
                                    1, c_ref.data(), n, 1) == STRASSEN_OK);
    double err = 1.0;
    REQUIRE(strassen_rel_error(m, n, c.data(), n, 1, c_ref.data(), n, 1,
                               &err) == STRASSEN_OK);
    CHECK(err < 1e-12);
}

TEST_CASE("counters through the C API") {
    CtxGuard g;
    REQUIRE(strassen_ctx_enable_counters(g.ctx, 1) == STRASSEN_OK);
    const long d = 64;
    const std::vector<double> a = random_vec(d * d, 6), b = random_vec(d * d, 7);
    std::vector<double> c(d * d, 0.0);
    REQUIRE(strassen_gemm(g.ctx, STRASSEN_NAIVE, 1, d, d, d, 1.0, a.data(), d,
                          1, b.data(), d, 1, c.data(), d, 1) == STRASSEN_OK);
    strassen_counter_values cv;
    REQUIRE(strassen_ctx_get_counters(g.ctx, &cv) == STRASSEN_OK);
    CHECK(cv.a_plus_passes == 19);
    CHECK(cv.b_plus_passes == 19);
    CHECK(cv.c_plus_passes == 36);
    CHECK(cv.kernel_fma_flops == 7 * 2 * 32 * 32 * 32);

    REQUIRE(strassen_ctx_reset_counters(g.ctx) == STRASSEN_OK);
    REQUIRE(strassen_ctx_get_counters(g.ctx, &cv) == STRASSEN_OK);
    CHECK(cv.a_plus_passes == 0);
    CHECK(cv.kernel_calls == 0);
}

TEST_CASE("model prediction through the C API") {
    strassen_blocking bp;
    strassen_blocking_defaults(&bp);
    strassen_model_params mp;
    strassen_model_params_ivy_bridge(&mp);
    CHECK(mp.lambda == 0.7);
    CHECK(mp.channel_factor == 4.0);

    strassen_breakdown bd;
    double egf = 0.0;
    REQUIRE(strassen_model_predict(STRASSEN_ABC, 1, 16000, 16000, 512, &bp,
                                   &mp, &bd, &egf) == STRASSEN_OK);
    CHECK(bd.total ==
          bd.ta_mul + bd.ta_a_add + bd.ta_b_add + bd.ta_c_add + bd.tm_a_mul +
              bd.tm_b_mul + bd.tm_c_mul + bd.tm_a_add + bd.tm_b_add +
              bd.tm_c_add);
    CHECK(egf > 0.0);

    strassen_breakdown bd_dg;
    double egf_dg = 0.0;
    REQUIRE(strassen_model_predict(STRASSEN_DGEMM, 0, 16000, 16000, 512, &bp,
                                   &mp, &bd_dg, &egf_dg) == STRASSEN_OK);
    CHECK(bd.total < bd_dg.total);

    CHECK(strassen_model_predict(STRASSEN_ABC, 3, 100, 100, 100, &bp, &mp, &bd,
                                 &egf) == STRASSEN_ERR_PARAM);

    double out = 0.0;
    CHECK(strassen_effective_gflops(10, 10, 10, 0.0, &out) ==
          STRASSEN_ERR_DOMAIN);
    REQUIRE(strassen_effective_gflops(1000, 1000, 1000, 1.0, &out) ==
            STRASSEN_OK);
    CHECK(out == 2.0);
}

TEST_CASE("table counts and status strings") {
    long c1[4] = {0, 0, 0, 0};
    REQUIRE(strassen_table_counts(1, c1) == STRASSEN_OK);
    CHECK(c1[0] == 7);
    CHECK(c1[1] == 5);
    CHECK(c1[2] == 5);
    CHECK(c1[3] == 12);
    long c2[4] = {0, 0, 0, 0};
    REQUIRE(strassen_table_counts(2, c2) == STRASSEN_OK);
    CHECK(c2[0] == 49);
    CHECK(c2[1] == 95);
    CHECK(c2[2] == 95);
    CHECK(c2[3] == 144);
    CHECK(strassen_table_counts(3, c2) == STRASSEN_ERR_PARAM);

    CHECK(std::string(strassen_status_str(STRASSEN_OK)) == "ok");
    CHECK(std::string(strassen_status_str(STRASSEN_ERR_DIMENSION)).size() > 0);
}
