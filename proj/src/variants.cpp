#include "variants.hpp"

#include <algorithm>
#include <cstring>

namespace strassen {
namespace {

struct Partitions {
    QuadrantGrid a, b, c;
    long qm, qn, qk;
};

Partitions partition_all(const MatrixView& A, const MatrixView& B,
                         const MatrixView& C, int level) {
    Partitions p;
    p.a = partition_quadrants(A, level);
    p.b = partition_quadrants(B, level);
    p.c = partition_quadrants(C, level);
    p.qm = p.a.logical_q_rows;
    p.qk = p.a.logical_q_cols;
    p.qn = p.b.logical_q_cols;
    return p;
}

std::vector<Term> gather_terms(const std::vector<std::pair<int, int>>& terms,
                               const QuadrantGrid& g) {
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const auto& [q, coeff] : terms) out.push_back({g.views[q], coeff});
    return out;
}

std::vector<Dest> gather_dests(const std::vector<std::pair<int, int>>& terms,
                               const QuadrantGrid& g) {
    std::vector<Dest> out;
    out.reserve(terms.size());
    for (const auto& [q, coeff] : terms) out.push_back({g.views[q], coeff});
    return out;
}

bool all_empty(const std::vector<std::pair<int, int>>& terms,
               const QuadrantGrid& g) {
    for (const auto& [q, coeff] : terms)
        if (!g.views[q].empty()) return false;
    return true;
}

// Materializes sum delta_s * X_s into a zero-padded rows x cols temporary.
// The sum runs pairwise in listed order: the first pass writes the first two
// terms (or copies a single term), each further term is a separate
// accumulate pass.
void materialize_sum(const std::vector<std::pair<int, int>>& terms,
                     const QuadrantGrid& g, long rows, long cols, double* buf,
                     std::atomic<int64_t>* passes, std::atomic<int64_t>* elems,
                     std::atomic<int64_t>* flops, Counters* cnt) {
    const auto read = [&](const MatrixView& v, long i, long j) {
        return (i < v.rows && j < v.cols) ? v.at(i, j) : 0.0;
    };
    const MatrixView& x0 = g.views[terms[0].first];
    const double d0 = terms[0].second;
    size_t s = 1;
    if (terms.size() == 1) {
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                buf[i * cols + j] = d0 * read(x0, i, j);
        if (cnt) {
            passes->fetch_add(2, std::memory_order_relaxed);
            elems->fetch_add(2 * rows * cols, std::memory_order_relaxed);
        }
    } else {
        const MatrixView& x1 = g.views[terms[1].first];
        const double d1 = terms[1].second;
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                buf[i * cols + j] = d0 * read(x0, i, j) + d1 * read(x1, i, j);
        if (cnt) {
            passes->fetch_add(3, std::memory_order_relaxed);
            elems->fetch_add(3 * rows * cols, std::memory_order_relaxed);
            flops->fetch_add(2 * rows * cols, std::memory_order_relaxed);
        }
        s = 2;
    }
    for (; s < terms.size(); ++s) {
        const MatrixView& xs = g.views[terms[s].first];
        const double ds = terms[s].second;
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                buf[i * cols + j] += ds * read(xs, i, j);
        if (cnt) {
            passes->fetch_add(3, std::memory_order_relaxed);
            elems->fetch_add(3 * rows * cols, std::memory_order_relaxed);
            flops->fetch_add(2 * rows * cols, std::memory_order_relaxed);
        }
    }
}

// C_r += alpha * gamma * M over the clipped extent of C_r.
void stream_update(const MatrixView& c, double alpha, int gamma,
                   const double* m, long qm, long qn, Counters* cnt) {
    const double s = alpha * gamma;
    for (long i = 0; i < c.rows; ++i)
        for (long j = 0; j < c.cols; ++j) c.at(i, j) += s * m[i * qn + j];
    if (cnt) {
        cnt->c_plus_passes.fetch_add(3, std::memory_order_relaxed);
        cnt->c_plus_elems.fetch_add(3 * qm * qn, std::memory_order_relaxed);
        cnt->c_plus_flops.fetch_add(2 * qm * qn, std::memory_order_relaxed);
    }
}

void check_and_validate(const ProblemShape& shape, const MatrixView& A,
                        const MatrixView& B, const MatrixView& C, int level,
                        const BlockingParams& bp) {
    require_dims(shape, A, B, C);
    bp.validate();
    if (level < 1 || level > 2)
        throw std::invalid_argument("strassen: level must be 1 or 2");
}

}  // namespace

void strassen_abc(const ProblemShape& shape, const MatrixView& A,
                  const MatrixView& B, const MatrixView& C, int level,
                  const BlockingParams& bp, int threads, Workspace* ws,
                  Counters* cnt) {
    check_and_validate(shape, A, B, C, level, bp);
    Workspace local;
    Workspace& w = ws ? *ws : local;
    const Partitions p = partition_all(A, B, C, level);
    for (const TableEntry& e : table_for_level(level).entries) {
        if (all_empty(e.a_terms, p.a) || all_empty(e.b_terms, p.b) ||
            all_empty(e.c_terms, p.c))
            continue;
        const auto a = gather_terms(e.a_terms, p.a);
        const auto b = gather_terms(e.b_terms, p.b);
        const auto c = gather_dests(e.c_terms, p.c);
        gemm_five_loop(p.qm, p.qn, p.qk, shape.alpha, a, b, c, bp, threads, w,
                       cnt);
    }
}

void strassen_ab(const ProblemShape& shape, const MatrixView& A,
                 const MatrixView& B, const MatrixView& C, int level,
                 const BlockingParams& bp, int threads, Workspace* ws,
                 Counters* cnt) {
    check_and_validate(shape, A, B, C, level, bp);
    Workspace local;
    Workspace& w = ws ? *ws : local;
    const Partitions p = partition_all(A, B, C, level);
    const size_t m_elems = static_cast<size_t>(p.qm) * p.qn;
    double* m_buf = w.ensure(w.m_buf, m_elems);
    const MatrixView m_view{m_buf, p.qm, p.qn, p.qn, 1};
    for (const TableEntry& e : table_for_level(level).entries) {
        if (all_empty(e.a_terms, p.a) || all_empty(e.b_terms, p.b) ||
            all_empty(e.c_terms, p.c))
            continue;
        const auto a = gather_terms(e.a_terms, p.a);
        const auto b = gather_terms(e.b_terms, p.b);
        std::memset(m_buf, 0, sizeof(double) * m_elems);
        const Dest md[] = {{m_view, 1}};
        gemm_five_loop(p.qm, p.qn, p.qk, 1.0, a, b, md, bp, threads, w, cnt);
        for (const auto& [q, gamma] : e.c_terms) {
            const MatrixView& cq = p.c.views[q];
            if (cq.empty()) continue;
            stream_update(cq, shape.alpha, gamma, m_buf, p.qm, p.qn, cnt);
        }
    }
}

void strassen_naive(const ProblemShape& shape, const MatrixView& A,
                    const MatrixView& B, const MatrixView& C, int level,
                    const BlockingParams& bp, int threads, Workspace* ws,
                    Counters* cnt) {
    check_and_validate(shape, A, B, C, level, bp);
    Workspace local;
    Workspace& w = ws ? *ws : local;
    const Partitions p = partition_all(A, B, C, level);
    const size_t m_elems = static_cast<size_t>(p.qm) * p.qn;
    double* m_buf = w.ensure(w.m_buf, m_elems);
    double* ta = w.ensure(w.ta_buf, static_cast<size_t>(p.qm) * p.qk);
    double* tb = w.ensure(w.tb_buf, static_cast<size_t>(p.qk) * p.qn);
    const MatrixView m_view{m_buf, p.qm, p.qn, p.qn, 1};
    const MatrixView ta_view{ta, p.qm, p.qk, p.qk, 1};
    const MatrixView tb_view{tb, p.qk, p.qn, p.qn, 1};
    for (const TableEntry& e : table_for_level(level).entries) {
        if (all_empty(e.a_terms, p.a) || all_empty(e.b_terms, p.b) ||
            all_empty(e.c_terms, p.c))
            continue;
        materialize_sum(e.a_terms, p.a, p.qm, p.qk, ta,
                        cnt ? &cnt->a_plus_passes : nullptr,
                        cnt ? &cnt->a_plus_elems : nullptr,
                        cnt ? &cnt->a_plus_flops : nullptr, cnt);
        materialize_sum(e.b_terms, p.b, p.qk, p.qn, tb,
                        cnt ? &cnt->b_plus_passes : nullptr,
                        cnt ? &cnt->b_plus_elems : nullptr,
                        cnt ? &cnt->b_plus_flops : nullptr, cnt);
        std::memset(m_buf, 0, sizeof(double) * m_elems);
        const Term a[] = {{ta_view, 1}};
        const Term b[] = {{tb_view, 1}};
        const Dest md[] = {{m_view, 1}};
        gemm_five_loop(p.qm, p.qn, p.qk, 1.0, a, b, md, bp, threads, w, cnt);
        for (const auto& [q, gamma] : e.c_terms) {
            const MatrixView& cq = p.c.views[q];
            if (cq.empty()) continue;
            stream_update(cq, shape.alpha, gamma, m_buf, p.qm, p.qn, cnt);
        }
    }
}

void run_variant(Variant v, int level, const ProblemShape& shape,
                 const MatrixView& A, const MatrixView& B, const MatrixView& C,
                 const BlockingParams& bp, int threads, Workspace* ws,
                 Counters* cnt) {
    if (v == Variant::Dgemm || level == 0) {
        gemm_conventional(shape, A, B, C, bp, threads, ws, cnt);
        return;
    }
    switch (v) {
        case Variant::ABC:
            strassen_abc(shape, A, B, C, level, bp, threads, ws, cnt);
            break;
        case Variant::AB:
            strassen_ab(shape, A, B, C, level, bp, threads, ws, cnt);
            break;
        case Variant::Naive:
            strassen_naive(shape, A, B, C, level, bp, threads, ws, cnt);
            break;
        default:
            break;
    }
}

}  // namespace strassen
