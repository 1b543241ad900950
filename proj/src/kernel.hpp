#pragma once

#include <span>

#include "counters.hpp"
#include "matrix.hpp"

namespace strassen {

// Cache / register blocking constants (elements).
struct BlockingParams {
    long mc = 96;
    long nc = 4096;
    long kc = 256;
    long mr = 8;
    long nr = 4;

    static constexpr long kMaxTileDim = 32;

    void validate() const {
        if (mc <= 0 || nc <= 0 || kc <= 0 || mr <= 0 || nr <= 0)
            throw std::invalid_argument("blocking: all parameters must be > 0");
        if (mc % mr != 0 || nc % nr != 0)
            throw std::invalid_argument("blocking: mc % mr and nc % nr must be 0");
        if (mr > kMaxTileDim || nr > kMaxTileDim)
            throw std::invalid_argument("blocking: register tile too large");
    }
};

// One destination quadrant of C with its gamma coefficient.
struct Dest {
    MatrixView view;
    int coeff = 1;  // +1 or -1
};

// Computes the mr x nr product tile of the two packed micro-panels and adds
// alpha * gamma * tile into every destination, skipping out-of-range C
// elements.  a_panel holds k columns of mr contiguous elements, b_panel k
// rows of nr contiguous elements; padded positions are exact zeros.
// (tile_row, tile_col) locate the tile inside the logical quadrant.
// in_rows / in_cols are the non-padded extents, used for flop accounting.
void microkernel(const double* a_panel, const double* b_panel, long k,
                 double alpha, std::span<const Dest> dests, long tile_row,
                 long tile_col, const BlockingParams& bp, long in_rows,
                 long in_cols, Counters* cnt);

// Loops jr (nr tiles) then ir (mr tiles) over an m_c x n_c block, invoking
// the micro-kernel with translated tile coordinates.  Tiles lying wholly
// outside every clipped destination are skipped.  (i0, j0) is the block
// origin inside the logical quadrant.
void macro_kernel(const double* packed_a, const double* packed_b, long m_c,
                  long n_c, long k_c, double alpha, std::span<const Dest> dests,
                  long i0, long j0, const BlockingParams& bp, Counters* cnt);

}  // namespace strassen
