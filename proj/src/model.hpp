#pragma once

#include "kernel.hpp"
#include "variants.hpp"

namespace strassen {

// Analytical model parameters.  tau_a: seconds per flop (1 / peak FLOPS);
// tau_b: seconds per 8-byte element moved from slow memory; lambda: prefetch
// efficiency applied to the kernel C traffic; channel_factor: extra
// multiplier on tau_b (memory channels not saturated by a single core).
struct ModelParams {
    double tau_a = 0.0;
    double tau_b = 0.0;
    double lambda = 0.7;
    double channel_factor = 1.0;

    void validate() const {
        if (tau_a <= 0.0 || tau_b <= 0.0)
            throw std::invalid_argument("model: tau_a and tau_b must be > 0");
        if (lambda < 0.5 || lambda > 1.0)
            throw std::invalid_argument("model: lambda must be in [0.5, 1]");
    }
};

// Ivy Bridge E5-2680 v2, single core: 28.32 GFLOPS peak, 59.7 GB/s peak
// bandwidth over four channels.
ModelParams ivy_bridge_single_core();

struct VariantSpec {
    int level = 0;  // 0 = plain dgemm (variant ignored)
    Variant variant = Variant::Dgemm;
};

struct TimeBreakdown {
    double ta_mul = 0, ta_a_add = 0, ta_b_add = 0, ta_c_add = 0;
    double tm_a_mul = 0, tm_b_mul = 0, tm_c_mul = 0;
    double tm_a_add = 0, tm_b_add = 0, tm_c_add = 0;

    double arithmetic() const { return ta_mul + ta_a_add + ta_b_add + ta_c_add; }
    double memory() const {
        return tm_a_mul + tm_b_mul + tm_c_mul + tm_a_add + tm_b_add + tm_c_add;
    }
    double total() const { return arithmetic() + memory(); }
};

// Memory-term coefficients N_m for one variant configuration.
struct CoefficientSet {
    long a_mul = 0, b_mul = 0, c_mul = 0;
    long a_add = 0, b_add = 0, c_add = 0;
};

CoefficientSet coefficients_for(const VariantSpec& spec);

// Fills the T_a fields: per-level multiply and extra-addition flop counts
// times tau_a (each addition is 2 flops).
TimeBreakdown arithmetic_time(long m, long n, long k, const VariantSpec& spec,
                              const ModelParams& params);

// Fills the T_m fields: coefficient * unit transfer * tau_b, with lambda on
// the kernel C term and channel_factor folded into tau_b.  Packed-buffer
// writes are omitted.
TimeBreakdown memory_time(long m, long n, long k, const VariantSpec& spec,
                          const BlockingParams& blocking,
                          const ModelParams& params);

// 2 m n k / T * 1e-9; classical flops regardless of variant.
double effective_gflops(long m, long n, long k, double seconds);

struct Prediction {
    TimeBreakdown breakdown;
    double seconds = 0;
    double egf = 0;
};

Prediction predict(long m, long n, long k, const VariantSpec& spec,
                   const BlockingParams& blocking, const ModelParams& params);

}  // namespace strassen
