#pragma once

#include "blocking.hpp"
#include "table.hpp"

namespace strassen {

enum class Variant { Dgemm, ABC, AB, Naive };

// Fully fused: operand sums materialize inside packing, multi-destination
// C updates happen inside the micro-kernel.  No temporaries beyond the
// packed buffers.
void strassen_abc(const ProblemShape& shape, const MatrixView& A,
                  const MatrixView& B, const MatrixView& C, int level,
                  const BlockingParams& bp, int threads = 1,
                  Workspace* ws = nullptr, Counters* cnt = nullptr);

// Each product M goes to a quadrant-sized temporary (one buffer, reused),
// then every C_r += alpha * gamma_r * M runs as a streaming pass.
void strassen_ab(const ProblemShape& shape, const MatrixView& A,
                 const MatrixView& B, const MatrixView& C, int level,
                 const BlockingParams& bp, int threads = 1,
                 Workspace* ws = nullptr, Counters* cnt = nullptr);

// Operand sums are also materialized into quadrant-sized temporaries before
// a conventional gemm on them; single-term entries are copied too.
void strassen_naive(const ProblemShape& shape, const MatrixView& A,
                    const MatrixView& B, const MatrixView& C, int level,
                    const BlockingParams& bp, int threads = 1,
                    Workspace* ws = nullptr, Counters* cnt = nullptr);

// Dispatch; level 0 (or Variant::Dgemm) runs the conventional driver.
void run_variant(Variant v, int level, const ProblemShape& shape,
                 const MatrixView& A, const MatrixView& B, const MatrixView& C,
                 const BlockingParams& bp, int threads = 1,
                 Workspace* ws = nullptr, Counters* cnt = nullptr);

}  // namespace strassen
