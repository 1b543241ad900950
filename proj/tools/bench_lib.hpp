#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "strassen.h"

namespace bench {

enum class Family { Square, RankK, FixedK, RankB };

Family parse_family(const std::string& name);

struct SweepSpec {
    Family family = Family::Square;
    long start = 240, stop = 1200, step = 240;
    long fixed_m = 0, fixed_n = 0, fixed_k = 0;
    long panel_b = 1024;  // rank-b schedule panel width
};

// Shapes (m, n, k) generated by a sweep.  For RankB, k is the total depth of
// the schedule; the driver splits it into panels of width panel_b.
std::vector<std::tuple<long, long, long>> shapes_for(const SweepSpec& spec);

struct VariantConfig {
    strassen_variant variant = STRASSEN_DGEMM;
    int level = 0;
    std::string name = "dgemm";
};

// Parses "dgemm,abc1,ab1,naive1,abc2,ab2,naive2" (any subset, any order).
std::vector<VariantConfig> parse_variants(const std::string& csv);

struct RunRecord {
    long m = 0, n = 0, k = 0;
    std::string variant;
    int level = 0;
    int threads = 1;
    int reps = 0;
    std::optional<double> best_time_s;
    std::optional<double> egf_measured;
    std::optional<double> egf_modeled;
    std::optional<double> rel_err;
};

// header: m,n,k,variant,level,threads,reps,time_s,egf_measured,egf_modeled,rel_err
// Missing optional fields are left empty; times carry 17 significant digits.
std::string emit_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_csv(const std::string& text);

struct BenchOptions {
    int threads = 1;
    int reps = 3;
    bool verify = false;
    double verify_tol = 1e-10;
    long oracle_dim_limit = 1200;  // above this, cross-check vs conventional
    strassen_blocking blocking{};
    strassen_model_params model{};
};

struct SweepResult {
    std::vector<RunRecord> records;
    bool verify_failed = false;
    std::string diagnostic;
};

SweepResult run_sweep(const SweepSpec& spec,
                      const std::vector<VariantConfig>& variants,
                      const BenchOptions& opt);

// Model predictions only; measured fields stay empty.
std::vector<RunRecord> model_only(const SweepSpec& spec,
                                  const std::vector<VariantConfig>& variants,
                                  const BenchOptions& opt);

// key=value lines: tau_a, tau_b, lambda, channel_factor, cores.
// cores divides tau_a (per-core peak assumed constant).
strassen_model_params load_params_file(const std::string& path);

// "mC=96,nC=4096,kC=256,mR=8,nR=4" applied over base values.
strassen_blocking parse_blocking(const std::string& s, strassen_blocking base);

// "m=..,n=..,k=.." for the fixed sweep dims.
void parse_fixed(const std::string& s, SweepSpec& spec);

}  // namespace bench
