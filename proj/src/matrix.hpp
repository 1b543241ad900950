#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace strassen {

// Strided 2-D window over a shared element buffer.  Transposition is
// expressed by swapping the strides; no copy is ever made.
struct MatrixView {
    double* data = nullptr;
    long rows = 0;
    long cols = 0;
    long row_stride = 0;
    long col_stride = 0;

    double& at(long i, long j) const {
        return data[i * row_stride + j * col_stride];
    }

    bool empty() const { return rows <= 0 || cols <= 0; }

    MatrixView transposed() const {
        return {data, cols, rows, col_stride, row_stride};
    }
};

// Owning row-major matrix, mostly for tests and the bench harness.
struct Matrix {
    long rows = 0;
    long cols = 0;
    std::vector<double> buf;

    Matrix() = default;
    Matrix(long r, long c, double fill = 0.0)
        : rows(r), cols(c), buf(static_cast<size_t>(r) * c, fill) {}

    double& at(long i, long j) { return buf[i * cols + j]; }
    double at(long i, long j) const { return buf[i * cols + j]; }

    MatrixView view() { return {buf.data(), rows, cols, cols, 1}; }
};

// C := alpha * A * B + C; m x n x k with A m-by-k and B k-by-n.
struct ProblemShape {
    long m = 0;
    long n = 0;
    long k = 0;
    double alpha = 1.0;
};

// 2^L x 2^L grid of views tiling a matrix.  Logical quadrant dims are
// ceil(dim / 2^L); views at the fringe are clipped (possibly empty).
struct QuadrantGrid {
    int level = 1;
    long logical_q_rows = 0;
    long logical_q_cols = 0;
    std::vector<MatrixView> views;  // row-major, index 2^L * I + J

    long side() const { return 1L << level; }
    const MatrixView& view(long I, long J) const {
        return views[I * side() + J];
    }
};

QuadrantGrid partition_quadrants(const MatrixView& M, int level);

// Textbook triple loop, accumulation over p in strictly ascending order.
// The rounding of this routine is the reference for every tolerance test.
void reference_gemm(const ProblemShape& shape, const MatrixView& A,
                    const MatrixView& B, const MatrixView& C);

// ||C_test - C_ref||_F / max(||C_ref||_F, 1)
double rel_frobenius_error(const MatrixView& c_test, const MatrixView& c_ref);

inline void require_dims(const ProblemShape& s, const MatrixView& A,
                         const MatrixView& B, const MatrixView& C) {
    if (s.m < 1 || s.n < 1 || s.k < 1)
        throw std::invalid_argument("gemm: dimensions must be >= 1");
    if (A.rows != s.m || A.cols != s.k || B.rows != s.k || B.cols != s.n ||
        C.rows != s.m || C.cols != s.n)
        throw std::invalid_argument("gemm: operand dimensions mismatch shape");
}

}  // namespace strassen
