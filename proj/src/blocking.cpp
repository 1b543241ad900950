#include "blocking.hpp"

#include <algorithm>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace strassen {

void pack_a_sum(std::span<const Term> terms, long i0, long p0, long m_c,
                long k_c, const BlockingParams& bp, double* buf,
                Counters* cnt) {
    const long mr = bp.mr;
    const long panels = (m_c + mr - 1) / mr;
    std::memset(buf, 0, sizeof(double) * panels * mr * k_c);
    bool first = true;
    int64_t reads = 0, add_flops = 0;
    for (const Term& t : terms) {
        const long rows = std::clamp(t.view.rows - i0, 0L, m_c);
        const long depth = std::clamp(t.view.cols - p0, 0L, k_c);
        const double c = t.coeff;
        for (long i = 0; i < rows; ++i) {
            double* panel = buf + (i / mr) * mr * k_c + (i % mr);
            for (long p = 0; p < depth; ++p)
                panel[p * mr] += c * t.view.at(i0 + i, p0 + p);
        }
        reads += rows * depth;
        if (!first) add_flops += 2 * rows * depth;
        first = false;
    }
    if (cnt) {
        cnt->pack_a_calls.fetch_add(1, std::memory_order_relaxed);
        cnt->pack_a_elems.fetch_add(reads, std::memory_order_relaxed);
        cnt->pack_a_add_flops.fetch_add(add_flops, std::memory_order_relaxed);
    }
}

void pack_b_sum(std::span<const Term> terms, long p0, long j0, long k_c,
                long n_c, const BlockingParams& bp, double* buf,
                Counters* cnt) {
    const long nr = bp.nr;
    const long panels = (n_c + nr - 1) / nr;
    std::memset(buf, 0, sizeof(double) * panels * nr * k_c);
    bool first = true;
    int64_t reads = 0, add_flops = 0;
    for (const Term& t : terms) {
        const long depth = std::clamp(t.view.rows - p0, 0L, k_c);
        const long cols = std::clamp(t.view.cols - j0, 0L, n_c);
        const double c = t.coeff;
        for (long j = 0; j < cols; ++j) {
            double* panel = buf + (j / nr) * nr * k_c + (j % nr);
            for (long p = 0; p < depth; ++p)
                panel[p * nr] += c * t.view.at(p0 + p, j0 + j);
        }
        reads += cols * depth;
        if (!first) add_flops += 2 * cols * depth;
        first = false;
    }
    if (cnt) {
        cnt->pack_b_calls.fetch_add(1, std::memory_order_relaxed);
        cnt->pack_b_elems.fetch_add(reads, std::memory_order_relaxed);
        cnt->pack_b_add_flops.fetch_add(add_flops, std::memory_order_relaxed);
    }
}

void Workspace::ensure_panels(const BlockingParams& bp, int threads) {
    const size_t b_need = static_cast<size_t>(bp.kc) * bp.nc;
    if (b_panel.size() < b_need) b_panel.resize(b_need);
    if (static_cast<int>(a_panels.size()) < threads) a_panels.resize(threads);
    const size_t a_need = static_cast<size_t>(bp.mc) * bp.kc;
    for (auto& p : a_panels)
        if (p.size() < a_need) p.resize(a_need);
}

double* Workspace::ensure(std::vector<double>& v, size_t n) {
    if (v.size() < n) v.resize(n);
    return v.data();
}

void gemm_five_loop(long lm, long ln, long lk, double alpha,
                    std::span<const Term> a_terms,
                    std::span<const Term> b_terms,
                    std::span<const Dest> c_dests, const BlockingParams& bp,
                    int threads, Workspace& ws, Counters* cnt) {
    if (lm <= 0 || ln <= 0 || lk <= 0) return;
    const auto all_empty = [](auto span) {
        for (const auto& t : span)
            if (!t.view.empty()) return false;
        return true;
    };
    // Clipped quadrants can be empty for tiny matrices; the multiplication
    // then contributes nothing and is skipped.
    if (all_empty(a_terms) || all_empty(b_terms) || all_empty(c_dests)) return;

    threads = std::max(1, threads);
    ws.ensure_panels(bp, threads);
    const long m_blocks = (lm + bp.mc - 1) / bp.mc;

    for (long jc = 0; jc < ln; jc += bp.nc) {
        const long n_c = std::min(bp.nc, ln - jc);
        for (long pc = 0; pc < lk; pc += bp.kc) {
            const long k_c = std::min(bp.kc, lk - pc);
            pack_b_sum(b_terms, pc, jc, k_c, n_c, bp, ws.b_panel.data(), cnt);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
            {
                double* abuf = ws.a_panels[omp_get_thread_num()].data();
#pragma omp for schedule(static)
                for (long blk = 0; blk < m_blocks; ++blk) {
                    const long ic = blk * bp.mc;
                    const long m_c = std::min(bp.mc, lm - ic);
                    pack_a_sum(a_terms, ic, pc, m_c, k_c, bp, abuf, cnt);
                    macro_kernel(abuf, ws.b_panel.data(), m_c, n_c, k_c, alpha,
                                 c_dests, ic, jc, bp, cnt);
                }
            }
#else
            double* abuf = ws.a_panels[0].data();
            for (long blk = 0; blk < m_blocks; ++blk) {
                const long ic = blk * bp.mc;
                const long m_c = std::min(bp.mc, lm - ic);
                pack_a_sum(a_terms, ic, pc, m_c, k_c, bp, abuf, cnt);
                macro_kernel(abuf, ws.b_panel.data(), m_c, n_c, k_c, alpha,
                             c_dests, ic, jc, bp, cnt);
            }
#endif
        }
    }
}

void gemm_conventional(const ProblemShape& shape, const MatrixView& A,
                       const MatrixView& B, const MatrixView& C,
                       const BlockingParams& bp, int threads, Workspace* ws,
                       Counters* cnt) {
    require_dims(shape, A, B, C);
    bp.validate();
    Workspace local;
    Workspace& w = ws ? *ws : local;
    const Term a[] = {{A, 1}};
    const Term b[] = {{B, 1}};
    const Dest c[] = {{C, 1}};
    gemm_five_loop(shape.m, shape.n, shape.k, shape.alpha, a, b, c, bp,
                   threads, w, cnt);
}

}  // namespace strassen
