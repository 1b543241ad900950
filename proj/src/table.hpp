#pragma once

#include <vector>

#include "matrix.hpp"

namespace strassen {

// One multiplication M = (sum delta_s A_qs)(sum eps_t B_qt); C_qr += gamma_r M.
// Quadrant index = row * 2^L + col in the 2^L x 2^L grid.
struct TableEntry {
    std::vector<std::pair<int, int>> a_terms;  // (quadrant, delta)
    std::vector<std::pair<int, int>> b_terms;  // (quadrant, eps)
    std::vector<std::pair<int, int>> c_terms;  // (quadrant, gamma)
};

struct OperandTable {
    int level = 0;
    std::vector<TableEntry> entries;  // 7^level of them
};

struct TableOpCounts {
    long mults = 0;
    long a_adds = 0;    // sum (|a_terms| - 1)
    long b_adds = 0;
    long c_updates = 0; // sum |c_terms|
};

// Level-0 table: the single entry C += alpha A B.
OperandTable identity_table();

// The seven one-level operations, in the classic listed order.
OperandTable one_level_table();

// Kronecker-style composition: level = outer.level + inner.level, with
// quadrant indices mapped into the combined 2^L grid and duplicate indices
// merged by coefficient addition (zero terms dropped).  Throws if a merged
// coefficient leaves {-1, 0, +1}.
OperandTable compose_tables(const OperandTable& outer,
                            const OperandTable& inner);

// Table for runtime level 1 or 2 (2 = one-level composed with itself).
const OperandTable& table_for_level(int level);

TableOpCounts count_table_ops(const OperandTable& table);

}  // namespace strassen
