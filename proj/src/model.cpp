#include "model.hpp"

#include <stdexcept>

namespace strassen {
namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// Quadrant dims follow the same ceil(dim / 2^level) rule as the partitioner
// so model and implementation agree on fringe sizes.
struct QuadDims {
    long qm, qn, qk;
};

QuadDims quad_dims(long m, long n, long k, int level) {
    const long q = 1L << level;
    return {ceil_div(m, q), ceil_div(n, q), ceil_div(k, q)};
}

// (mults, a_adds, b_adds, c_updates) per level; golden-tested against the
// operand tables.
struct OpCounts {
    long mul, a, b, c;
};

OpCounts op_counts(int level) {
    switch (level) {
        case 0: return {1, 0, 0, 0};
        case 1: return {7, 5, 5, 12};
        case 2: return {49, 95, 95, 154};
        default:
            throw std::invalid_argument("model: level must be 0, 1 or 2");
    }
}

}  // namespace

ModelParams ivy_bridge_single_core() {
    ModelParams p;
    p.tau_a = 1.0 / 28.32e9;
    p.tau_b = 8.0 / 59.7 * 1e-9;
    p.lambda = 0.7;
    p.channel_factor = 4.0;  // four channels, one core
    return p;
}

CoefficientSet coefficients_for(const VariantSpec& spec) {
    if (spec.level == 0 || spec.variant == Variant::Dgemm)
        return {1, 1, 1, 0, 0, 0};
    if (spec.level == 1) {
        switch (spec.variant) {
            case Variant::ABC:   return {12, 12, 12, 0, 0, 0};
            case Variant::AB:    return {12, 12, 7, 0, 0, 36};
            case Variant::Naive: return {7, 7, 7, 19, 19, 36};
            default: break;
        }
    }
    if (spec.level == 2) {
        switch (spec.variant) {
            case Variant::ABC:   return {194, 194, 154, 0, 0, 0};
            case Variant::AB:    return {194, 194, 49, 0, 0, 462};
            case Variant::Naive: return {49, 49, 49, 293, 293, 462};
            default: break;
        }
    }
    throw std::invalid_argument("model: unsupported variant configuration");
}

TimeBreakdown arithmetic_time(long m, long n, long k, const VariantSpec& spec,
                              const ModelParams& params) {
    if (m < 1 || n < 1 || k < 1)
        throw std::invalid_argument("model: dimensions must be >= 1");
    params.validate();
    TimeBreakdown t;
    if (spec.level == 0 || spec.variant == Variant::Dgemm) {
        t.ta_mul = 2.0 * m * n * k * params.tau_a;
        return t;
    }
    const OpCounts c = op_counts(spec.level);
    const QuadDims q = quad_dims(m, n, k, spec.level);
    t.ta_mul = c.mul * 2.0 * q.qm * q.qn * q.qk * params.tau_a;
    t.ta_a_add = c.a * 2.0 * q.qm * q.qk * params.tau_a;
    t.ta_b_add = c.b * 2.0 * q.qk * q.qn * params.tau_a;
    t.ta_c_add = c.c * 2.0 * q.qm * q.qn * params.tau_a;
    return t;
}

TimeBreakdown memory_time(long m, long n, long k, const VariantSpec& spec,
                          const BlockingParams& blocking,
                          const ModelParams& params) {
    if (m < 1 || n < 1 || k < 1)
        throw std::invalid_argument("model: dimensions must be >= 1");
    params.validate();
    blocking.validate();
    const CoefficientSet cs = coefficients_for(spec);
    const int level = (spec.variant == Variant::Dgemm) ? 0 : spec.level;
    const QuadDims q = quad_dims(m, n, k, level);
    const double tb = params.tau_b * params.channel_factor;

    TimeBreakdown t;
    t.tm_a_mul = cs.a_mul * static_cast<double>(q.qm) * q.qk *
                 ceil_div(q.qn, blocking.nc) * tb;
    t.tm_b_mul = cs.b_mul * static_cast<double>(q.qn) * q.qk * tb;
    t.tm_c_mul = cs.c_mul * params.lambda * 2.0 * q.qm * q.qn *
                 ceil_div(q.qk, blocking.kc) * tb;
    t.tm_a_add = cs.a_add * static_cast<double>(q.qm) * q.qk * tb;
    t.tm_b_add = cs.b_add * static_cast<double>(q.qn) * q.qk * tb;
    t.tm_c_add = cs.c_add * static_cast<double>(q.qm) * q.qn * tb;
    return t;
}

double effective_gflops(long m, long n, long k, double seconds) {
    if (seconds <= 0.0)
        throw std::domain_error("effective_gflops: time must be > 0");
    return 2.0 * m * n * k / seconds * 1e-9;
}

Prediction predict(long m, long n, long k, const VariantSpec& spec,
                   const BlockingParams& blocking, const ModelParams& params) {
    Prediction p;
    const TimeBreakdown ta = arithmetic_time(m, n, k, spec, params);
    const TimeBreakdown tm = memory_time(m, n, k, spec, blocking, params);
    p.breakdown = ta;
    p.breakdown.tm_a_mul = tm.tm_a_mul;
    p.breakdown.tm_b_mul = tm.tm_b_mul;
    p.breakdown.tm_c_mul = tm.tm_c_mul;
    p.breakdown.tm_a_add = tm.tm_a_add;
    p.breakdown.tm_b_add = tm.tm_b_add;
    p.breakdown.tm_c_add = tm.tm_c_add;
    p.seconds = p.breakdown.total();
    p.egf = effective_gflops(m, n, k, p.seconds);
    return p;
}

}  // namespace strassen
