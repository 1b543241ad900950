#pragma once

#include <span>
#include <vector>

#include "kernel.hpp"

namespace strassen {

// One operand of a coefficient-weighted sum of quadrants.  Views may be
// clipped below the logical quadrant extent; out-of-range positions
// contribute zero.
struct Term {
    MatrixView view;
    int coeff = 1;  // +1 or -1
};

// Packs the (i0, p0) block (m_c x k_c elements of the logical quadrant) of
// sum coeff_t * view_t into a micro-panel-ordered buffer: ceil(m_c / mr)
// panels, each k_c columns of mr contiguous elements, zero padded.  Terms
// are accumulated in listed order, left to right.
void pack_a_sum(std::span<const Term> terms, long i0, long p0, long m_c,
                long k_c, const BlockingParams& bp, double* buf, Counters* cnt);

// Same for the B side: ceil(n_c / nr) panels, each k_c rows of nr contiguous
// elements.  (p0, j0) locates the k_c x n_c block.
void pack_b_sum(std::span<const Term> terms, long p0, long j0, long k_c,
                long n_c, const BlockingParams& bp, double* buf, Counters* cnt);

// Packed-buffer workspace, reusable across driver invocations so repeated
// calls do not allocate.  One B panel shared per invocation, one A panel
// per worker thread, plus the AB/Naive temporaries.
struct Workspace {
    std::vector<double> b_panel;
    std::vector<std::vector<double>> a_panels;
    std::vector<double> m_buf;   // product temporary (AB, Naive)
    std::vector<double> ta_buf;  // operand temporaries (Naive)
    std::vector<double> tb_buf;

    void ensure_panels(const BlockingParams& bp, int threads);
    double* ensure(std::vector<double>& v, size_t n);
};

// The five-loop GotoBLAS/BLIS driver over the logical extent lm x ln x lk:
// jc over n in steps of nc, pc over k in steps of kc, ic over m in steps of
// mc (the parallel loop), then the macro-kernel.  B is packed once per
// (jc, pc), A once per (jc, pc, ic).
void gemm_five_loop(long lm, long ln, long lk, double alpha,
                    std::span<const Term> a_terms,
                    std::span<const Term> b_terms,
                    std::span<const Dest> c_dests, const BlockingParams& bp,
                    int threads, Workspace& ws, Counters* cnt);

// C := alpha A B + C, single-term sums, single destination.
void gemm_conventional(const ProblemShape& shape, const MatrixView& A,
                       const MatrixView& B, const MatrixView& C,
                       const BlockingParams& bp, int threads = 1,
                       Workspace* ws = nullptr, Counters* cnt = nullptr);

}  // namespace strassen
