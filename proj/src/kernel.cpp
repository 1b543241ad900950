#include "kernel.hpp"

#include <algorithm>

namespace strassen {
namespace {

template <int MR, int NR>
void accumulate_fixed(const double* a, const double* b, long k, double* t) {
    for (long p = 0; p < k; ++p) {
        const double* ap = a + p * MR;
        const double* bp = b + p * NR;
        for (int i = 0; i < MR; ++i)
            for (int j = 0; j < NR; ++j) t[i * NR + j] += ap[i] * bp[j];
    }
}

void accumulate_generic(const double* a, const double* b, long k, long mr,
                        long nr, double* t) {
    for (long p = 0; p < k; ++p) {
        const double* ap = a + p * mr;
        const double* bp = b + p * nr;
        for (long i = 0; i < mr; ++i)
            for (long j = 0; j < nr; ++j) t[i * nr + j] += ap[i] * bp[j];
    }
}

}  // namespace

void microkernel(const double* a_panel, const double* b_panel, long k,
                 double alpha, std::span<const Dest> dests, long tile_row,
                 long tile_col, const BlockingParams& bp, long in_rows,
                 long in_cols, Counters* cnt) {
    if (k <= 0) return;
    const long mr = bp.mr, nr = bp.nr;
    double t[BlockingParams::kMaxTileDim * BlockingParams::kMaxTileDim] = {};
    if (mr == 8 && nr == 4)
        accumulate_fixed<8, 4>(a_panel, b_panel, k, t);
    else
        accumulate_generic(a_panel, b_panel, k, mr, nr, t);

    if (cnt) {
        cnt->kernel_calls.fetch_add(1, std::memory_order_relaxed);
        cnt->kernel_fma_flops.fetch_add(
            2 * k * std::min(in_rows, mr) * std::min(in_cols, nr),
            std::memory_order_relaxed);
    }

    double stage[BlockingParams::kMaxTileDim * BlockingParams::kMaxTileDim];
    for (const Dest& d : dests) {
        const long rw = std::max(0L, std::min(mr, d.view.rows - tile_row));
        const long cw = std::max(0L, std::min(nr, d.view.cols - tile_col));
        if (rw == 0 || cw == 0) continue;
        const double s = alpha * d.coeff;
        if (rw == mr && cw == nr) {
            for (long i = 0; i < mr; ++i)
                for (long j = 0; j < nr; ++j)
                    d.view.at(tile_row + i, tile_col + j) += s * t[i * nr + j];
        } else {
            // Partial tile: stage through a tiny mr x nr buffer.
            for (long i = 0; i < rw; ++i)
                for (long j = 0; j < cw; ++j)
                    stage[i * nr + j] = d.view.at(tile_row + i, tile_col + j);
            for (long i = 0; i < rw; ++i)
                for (long j = 0; j < cw; ++j)
                    stage[i * nr + j] += s * t[i * nr + j];
            for (long i = 0; i < rw; ++i)
                for (long j = 0; j < cw; ++j)
                    d.view.at(tile_row + i, tile_col + j) = stage[i * nr + j];
        }
        if (cnt) {
            cnt->kernel_c_elems.fetch_add(2 * rw * cw, std::memory_order_relaxed);
            cnt->kernel_update_flops.fetch_add(2 * rw * cw,
                                               std::memory_order_relaxed);
        }
    }
}

void macro_kernel(const double* packed_a, const double* packed_b, long m_c,
                  long n_c, long k_c, double alpha, std::span<const Dest> dests,
                  long i0, long j0, const BlockingParams& bp, Counters* cnt) {
    const long mr = bp.mr, nr = bp.nr;
    const long m_tiles = (m_c + mr - 1) / mr;
    const long n_tiles = (n_c + nr - 1) / nr;
    for (long jr = 0; jr < n_tiles; ++jr) {
        const long tc = j0 + jr * nr;
        for (long ir = 0; ir < m_tiles; ++ir) {
            const long tr = i0 + ir * mr;
            bool any_in_range = false;
            for (const Dest& d : dests)
                if (tr < d.view.rows && tc < d.view.cols) {
                    any_in_range = true;
                    break;
                }
            if (!any_in_range) continue;
            microkernel(packed_a + ir * mr * k_c, packed_b + jr * nr * k_c,
                        k_c, alpha, dests, tr, tc, bp,
                        std::min(mr, m_c - ir * mr), std::min(nr, n_c - jr * nr),
                        cnt);
        }
    }
}

}  // namespace strassen
