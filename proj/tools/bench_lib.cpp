#include "bench_lib.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bench {
namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch())
        .count();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

void fill_random(std::vector<double>& v, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : v) x = dist(rng);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void check(strassen_status s, const char* what) {
    if (s != STRASSEN_OK)
        throw std::runtime_error(std::string(what) + ": " +
                                 strassen_status_str(s));
}

struct CtxGuard {
    strassen_ctx* ctx = nullptr;
    CtxGuard() { check(strassen_ctx_create(&ctx), "ctx_create"); }
    ~CtxGuard() { strassen_ctx_destroy(ctx); }
    CtxGuard(const CtxGuard&) = delete;
    CtxGuard& operator=(const CtxGuard&) = delete;
};

// One multiplication; for RankB this is the whole schedule of rank-b updates.
void run_once(strassen_ctx* ctx, const VariantConfig& vc, const SweepSpec& spec,
              long m, long n, long k, const double* a, const double* b,
              double* c) {
    if (spec.family == Family::RankB) {
        for (long p0 = 0; p0 < k; p0 += spec.panel_b) {
            const long bw = std::min(spec.panel_b, k - p0);
            check(strassen_gemm(ctx, vc.variant, vc.level, m, n, bw, 1.0,
                                a + p0, k, 1, b + p0 * n, n, 1, c, n, 1),
                  "gemm");
        }
    } else {
        check(strassen_gemm(ctx, vc.variant, vc.level, m, n, k, 1.0, a, k, 1,
                            b, n, 1, c, n, 1),
              "gemm");
    }
}

double model_seconds(const VariantConfig& vc, const SweepSpec& spec, long m,
                     long n, long k, const BenchOptions& opt) {
    double total = 0.0;
    const long step = (spec.family == Family::RankB) ? spec.panel_b : k;
    for (long p0 = 0; p0 < k; p0 += step) {
        const long bw = std::min(step, k - p0);
        strassen_breakdown bd;
        check(strassen_model_predict(vc.variant, vc.level, m, n, bw,
                                     &opt.blocking, &opt.model, &bd, nullptr),
              "model_predict");
        total += bd.total;
    }
    return total;
}

}  // namespace

Family parse_family(const std::string& name) {
    if (name == "square") return Family::Square;
    if (name == "rankk") return Family::RankK;
    if (name == "fixedk") return Family::FixedK;
    if (name == "rankb") return Family::RankB;
    throw std::invalid_argument("unknown family: " + name);
}

std::vector<std::tuple<long, long, long>> shapes_for(const SweepSpec& spec) {
    if (spec.start < 1 || spec.step < 1 || spec.start > spec.stop)
        throw std::invalid_argument("sweep: need 1 <= start <= stop, step >= 1");
    std::vector<std::tuple<long, long, long>> out;
    const long fm = spec.fixed_m > 0 ? spec.fixed_m : 2048;
    const long fn = spec.fixed_n > 0 ? spec.fixed_n : fm;
    const long fk = spec.fixed_k > 0 ? spec.fixed_k : 1024;
    for (long d = spec.start; d <= spec.stop; d += spec.step) {
        switch (spec.family) {
            case Family::Square: out.emplace_back(d, d, d); break;
            case Family::RankK: out.emplace_back(fm, fn, d); break;
            case Family::FixedK: out.emplace_back(d, d, fk); break;
            case Family::RankB: out.emplace_back(fm, fn, d); break;
        }
    }
    return out;
}

std::vector<VariantConfig> parse_variants(const std::string& csv) {
    std::vector<VariantConfig> out;
    for (const std::string& name : split(csv, ',')) {
        if (name.empty()) continue;
        if (name == "dgemm") {
            out.push_back({STRASSEN_DGEMM, 0, name});
            continue;
        }
        strassen_variant v;
        if (name.rfind("abc", 0) == 0) v = STRASSEN_ABC;
        else if (name.rfind("naive", 0) == 0) v = STRASSEN_NAIVE;
        else if (name.rfind("ab", 0) == 0) v = STRASSEN_AB;
        else throw std::invalid_argument("unknown variant: " + name);
        const char lvl = name.back();
        if (lvl != '1' && lvl != '2')
            throw std::invalid_argument("variant needs level 1 or 2: " + name);
        out.push_back({v, lvl - '0', name});
    }
    if (out.empty()) throw std::invalid_argument("no variants selected");
    return out;
}

std::string emit_csv(const std::vector<RunRecord>& records) {
    std::string out =
        "m,n,k,variant,level,threads,reps,time_s,egf_measured,egf_modeled,"
        "rel_err\n";
    for (const RunRecord& r : records) {
        out += std::to_string(r.m) + ',' + std::to_string(r.n) + ',' +
               std::to_string(r.k) + ',' + r.variant + ',' +
               std::to_string(r.level) + ',' + std::to_string(r.threads) +
               ',' + std::to_string(r.reps) + ',';
        out += r.best_time_s ? fmt(*r.best_time_s) : "";
        out += ',';
        out += r.egf_measured ? fmt(*r.egf_measured) : "";
        out += ',';
        out += r.egf_modeled ? fmt(*r.egf_modeled) : "";
        out += ',';
        out += r.rel_err ? fmt(*r.rel_err) : "";
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> parse_csv(const std::string& text) {
    std::vector<RunRecord> out;
    std::istringstream is(text);
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 11)
            throw std::invalid_argument("csv: expected 11 fields");
        RunRecord r;
        r.m = std::stol(f[0]);
        r.n = std::stol(f[1]);
        r.k = std::stol(f[2]);
        r.variant = f[3];
        r.level = std::stoi(f[4]);
        r.threads = std::stoi(f[5]);
        r.reps = std::stoi(f[6]);
        if (!f[7].empty()) r.best_time_s = std::stod(f[7]);
        if (!f[8].empty()) r.egf_measured = std::stod(f[8]);
        if (!f[9].empty()) r.egf_modeled = std::stod(f[9]);
        if (!f[10].empty()) r.rel_err = std::stod(f[10]);
        out.push_back(std::move(r));
    }
    return out;
}

SweepResult run_sweep(const SweepSpec& spec,
                      const std::vector<VariantConfig>& variants,
                      const BenchOptions& opt) {
    SweepResult result;
    CtxGuard guard;
    check(strassen_ctx_set_blocking(guard.ctx, &opt.blocking), "set_blocking");
    check(strassen_ctx_set_threads(guard.ctx, opt.threads), "set_threads");

    for (const auto& [m, n, k] : shapes_for(spec)) {
        const uint64_t seed =
            0x9e3779b97f4a7c15ull ^ (uint64_t)m << 40 ^ (uint64_t)n << 20 ^
            (uint64_t)k;
        std::vector<double> a((size_t)m * k), b((size_t)k * n),
            c0((size_t)m * n);
        fill_random(a, seed);
        fill_random(b, seed + 1);
        fill_random(c0, seed + 2);
        std::vector<double> c_ref;
        if (opt.verify) {
            c_ref = c0;
            if (std::max({m, n, k}) <= opt.oracle_dim_limit) {
                check(strassen_reference_gemm(m, n, k, 1.0, a.data(), k, 1,
                                              b.data(), n, 1, c_ref.data(), n,
                                              1),
                      "reference_gemm");
            } else {
                check(strassen_gemm(guard.ctx, STRASSEN_DGEMM, 0, m, n, k, 1.0,
                                    a.data(), k, 1, b.data(), n, 1,
                                    c_ref.data(), n, 1),
                      "gemm (oracle)");
            }
        }
        std::vector<double> c((size_t)m * n);
        for (const VariantConfig& vc : variants) {
            RunRecord r;
            r.m = m;
            r.n = n;
            r.k = k;
            r.variant = vc.name;
            r.level = vc.level;
            r.threads = opt.threads;
            r.reps = opt.reps;
            // Warm-up rep sizes the workspace so allocation stays out of the
            // timed region.
            c = c0;
            run_once(guard.ctx, vc, spec, m, n, k, a.data(), b.data(),
                     c.data());
            double best = -1.0;
            for (int rep = 0; rep < opt.reps; ++rep) {
                c = c0;
                const double t0 = now_seconds();
                run_once(guard.ctx, vc, spec, m, n, k, a.data(), b.data(),
                         c.data());
                const double t1 = now_seconds();
                if (best < 0 || t1 - t0 < best) best = t1 - t0;
            }
            r.best_time_s = best;
            double egf;
            check(strassen_effective_gflops(m, n, k, best, &egf), "egf");
            r.egf_measured = egf;
            const double tmodel = model_seconds(vc, spec, m, n, k, opt);
            check(strassen_effective_gflops(m, n, k, tmodel, &egf), "egf");
            r.egf_modeled = egf;
            if (opt.verify) {
                double err;
                check(strassen_rel_error(m, n, c.data(), n, 1, c_ref.data(),
                                         n, 1, &err),
                      "rel_error");
                r.rel_err = err;
                if (err > opt.verify_tol) {
                    result.records.push_back(r);
                    result.verify_failed = true;
                    result.diagnostic = "verification failed: " + vc.name +
                                        " m=" + std::to_string(m) +
                                        " n=" + std::to_string(n) +
                                        " k=" + std::to_string(k) +
                                        " rel_err=" + fmt(err);
                    return result;
                }
            }
            result.records.push_back(std::move(r));
        }
    }
    return result;
}

std::vector<RunRecord> model_only(const SweepSpec& spec,
                                  const std::vector<VariantConfig>& variants,
                                  const BenchOptions& opt) {
    std::vector<RunRecord> out;
    for (const auto& [m, n, k] : shapes_for(spec)) {
        for (const VariantConfig& vc : variants) {
            RunRecord r;
            r.m = m;
            r.n = n;
            r.k = k;
            r.variant = vc.name;
            r.level = vc.level;
            r.threads = opt.threads;
            r.reps = 0;
            const double tmodel = model_seconds(vc, spec, m, n, k, opt);
            double egf;
            check(strassen_effective_gflops(m, n, k, tmodel, &egf), "egf");
            r.egf_modeled = egf;
            out.push_back(std::move(r));
        }
    }
    return out;
}

strassen_model_params load_params_file(const std::string& path) {
    strassen_model_params p;
    strassen_model_params_ivy_bridge(&p);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    std::string line;
    double cores = 1.0;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        std::erase_if(key, [](char ch) { return std::isspace((unsigned char)ch); });
        if (key.empty()) continue;
        const double x = std::stod(val);
        if (key == "tau_a") p.tau_a = x;
        else if (key == "tau_b") p.tau_b = x;
        else if (key == "lambda") p.lambda = x;
        else if (key == "channel_factor") p.channel_factor = x;
        else if (key == "cores") cores = x;
        else throw std::invalid_argument("unknown params key: " + key);
    }
    if (cores > 1.0) p.tau_a /= cores;
    return p;
}

strassen_blocking parse_blocking(const std::string& s, strassen_blocking base) {
    for (const std::string& tok : split(s, ',')) {
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("blocking: expected key=value");
        const std::string key = tok.substr(0, eq);
        const long v = std::stol(tok.substr(eq + 1));
        if (key == "mC") base.mc = v;
        else if (key == "nC") base.nc = v;
        else if (key == "kC") base.kc = v;
        else if (key == "mR") base.mr = v;
        else if (key == "nR") base.nr = v;
        else throw std::invalid_argument("unknown blocking key: " + key);
    }
    return base;
}

void parse_fixed(const std::string& s, SweepSpec& spec) {
    for (const std::string& tok : split(s, ',')) {
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("fixed: expected key=value");
        const std::string key = tok.substr(0, eq);
        const long v = std::stol(tok.substr(eq + 1));
        if (key == "m") spec.fixed_m = v;
        else if (key == "n") spec.fixed_n = v;
        else if (key == "k") spec.fixed_k = v;
        else throw std::invalid_argument("unknown fixed key: " + key);
    }
}

}  // namespace bench
