#include "table.hpp"

#include <stdexcept>

namespace strassen {

OperandTable identity_table() {
    OperandTable t;
    t.level = 0;
    t.entries.push_back({{{0, 1}}, {{0, 1}}, {{0, 1}}});
    return t;
}

OperandTable one_level_table() {
    // Quadrants: 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1).
    OperandTable t;
    t.level = 1;
    t.entries = {
        // M0 = (A00 + A11)(B00 + B11); C00 += M0; C11 += M0
        {{{0, 1}, {3, 1}}, {{0, 1}, {3, 1}}, {{0, 1}, {3, 1}}},
        // M1 = (A10 + A11) B00;        C10 += M1; C11 -= M1
        {{{2, 1}, {3, 1}}, {{0, 1}}, {{2, 1}, {3, -1}}},
        // M2 = A00 (B01 - B11);        C01 += M2; C11 += M2
        {{{0, 1}}, {{1, 1}, {3, -1}}, {{1, 1}, {3, 1}}},
        // M3 = A11 (B10 - B00);        C00 += M3; C10 += M3
        {{{3, 1}}, {{2, 1}, {0, -1}}, {{0, 1}, {2, 1}}},
        // M4 = (A00 + A01) B11;        C01 += M4; C00 -= M4
        {{{0, 1}, {1, 1}}, {{3, 1}}, {{1, 1}, {0, -1}}},
        // M5 = (A10 - A00)(B00 + B01); C11 += M5
        {{{2, 1}, {0, -1}}, {{0, 1}, {1, 1}}, {{3, 1}}},
        // M6 = (A01 - A11)(B10 + B11); C00 += M6
        {{{1, 1}, {3, -1}}, {{2, 1}, {3, 1}}, {{0, 1}}},
    };
    return t;
}

namespace {

std::vector<std::pair<int, int>> compose_terms(
    const std::vector<std::pair<int, int>>& outer,
    const std::vector<std::pair<int, int>>& inner, int outer_level,
    int inner_level) {
    const long so = 1L << outer_level;
    const long si = 1L << inner_level;
    const long s = so * si;
    std::vector<std::pair<int, int>> out;
    for (const auto& [oq, oc] : outer) {
        const long orow = oq / so, ocol = oq % so;
        for (const auto& [iq, ic] : inner) {
            const long irow = iq / si, icol = iq % si;
            const long row = si * orow + irow;
            const long col = si * ocol + icol;
            const int idx = static_cast<int>(row * s + col);
            const int coeff = oc * ic;
            bool merged = false;
            for (auto& term : out) {
                if (term.first == idx) {
                    term.second += coeff;
                    if (term.second < -1 || term.second > 1)
                        throw std::runtime_error(
                            "compose_tables: coefficient outside {-1,0,1}");
                    merged = true;
                    break;
                }
            }
            if (!merged) out.emplace_back(idx, coeff);
        }
    }
    std::erase_if(out, [](const auto& t) { return t.second == 0; });
    return out;
}

}  // namespace

OperandTable compose_tables(const OperandTable& outer,
                            const OperandTable& inner) {
    OperandTable t;
    t.level = outer.level + inner.level;
    t.entries.reserve(outer.entries.size() * inner.entries.size());
    for (const TableEntry& e : outer.entries) {
        for (const TableEntry& f : inner.entries) {
            TableEntry g;
            g.a_terms = compose_terms(e.a_terms, f.a_terms, outer.level,
                                      inner.level);
            g.b_terms = compose_terms(e.b_terms, f.b_terms, outer.level,
                                      inner.level);
            g.c_terms = compose_terms(e.c_terms, f.c_terms, outer.level,
                                      inner.level);
            t.entries.push_back(std::move(g));
        }
    }
    return t;
}

const OperandTable& table_for_level(int level) {
    static const OperandTable t1 = one_level_table();
    static const OperandTable t2 = compose_tables(one_level_table(),
                                                  one_level_table());
    if (level == 1) return t1;
    if (level == 2) return t2;
    throw std::invalid_argument("table_for_level: level must be 1 or 2");
}

TableOpCounts count_table_ops(const OperandTable& table) {
    TableOpCounts c;
    c.mults = static_cast<long>(table.entries.size());
    for (const TableEntry& e : table.entries) {
        c.a_adds += static_cast<long>(e.a_terms.size()) - 1;
        c.b_adds += static_cast<long>(e.b_terms.size()) - 1;
        c.c_updates += static_cast<long>(e.c_terms.size());
    }
    return c;
}

}  // namespace strassen
