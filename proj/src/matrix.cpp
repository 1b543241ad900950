#include "matrix.hpp"

#include <algorithm>
#include <cmath>

namespace strassen {

QuadrantGrid partition_quadrants(const MatrixView& M, int level) {
    if (level < 1 || level > 2)
        throw std::invalid_argument("partition_quadrants: level must be 1 or 2");
    const long side = 1L << level;
    QuadrantGrid g;
    g.level = level;
    g.logical_q_rows = (M.rows + side - 1) / side;
    g.logical_q_cols = (M.cols + side - 1) / side;
    g.views.resize(static_cast<size_t>(side) * side);
    for (long I = 0; I < side; ++I) {
        for (long J = 0; J < side; ++J) {
            const long r0 = I * g.logical_q_rows;
            const long c0 = J * g.logical_q_cols;
            const long r = std::max(0L, std::min(g.logical_q_rows, M.rows - r0));
            const long c = std::max(0L, std::min(g.logical_q_cols, M.cols - c0));
            MatrixView v;
            v.rows = r;
            v.cols = c;
            v.row_stride = M.row_stride;
            v.col_stride = M.col_stride;
            v.data = (r > 0 && c > 0)
                         ? M.data + r0 * M.row_stride + c0 * M.col_stride
                         : M.data;
            g.views[I * side + J] = v;
        }
    }
    return g;
}

void reference_gemm(const ProblemShape& shape, const MatrixView& A,
                    const MatrixView& B, const MatrixView& C) {
    require_dims(shape, A, B, C);
    // Row buffer keeps the p-accumulation order ascending per (i, j) while
    // staying cache friendly on strided B.
    std::vector<double> acc(static_cast<size_t>(shape.n));
    for (long i = 0; i < shape.m; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (long p = 0; p < shape.k; ++p) {
            const double a = A.at(i, p);
            for (long j = 0; j < shape.n; ++j) acc[j] += a * B.at(p, j);
        }
        for (long j = 0; j < shape.n; ++j)
            C.at(i, j) += shape.alpha * acc[j];
    }
}

double rel_frobenius_error(const MatrixView& c_test, const MatrixView& c_ref) {
    if (c_test.rows != c_ref.rows || c_test.cols != c_ref.cols)
        throw std::invalid_argument("rel_frobenius_error: dimension mismatch");
    double diff2 = 0.0, ref2 = 0.0;
    for (long i = 0; i < c_ref.rows; ++i) {
        for (long j = 0; j < c_ref.cols; ++j) {
            const double d = c_test.at(i, j) - c_ref.at(i, j);
            diff2 += d * d;
            ref2 += c_ref.at(i, j) * c_ref.at(i, j);
        }
    }
    return std::sqrt(diff2) / std::max(std::sqrt(ref2), 1.0);
}

}  // namespace strassen
