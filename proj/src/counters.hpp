#pragma once

#include <atomic>
#include <cstdint>

namespace strassen {

// Instrumentation hooks.  A null Counters* disables all accounting.
//
// Element counters are in units of one double moved from / to the operand
// matrices (packed-buffer writes are not counted).  "Pass" counters count
// quadrant-sized streaming transfers of the AB/Naive temporaries: a copy is
// 2 transfers (read src, write dst), a two-operand add or an accumulate is 3.
// *_elems for those passes are logical-extent element counts (pass cost times
// quadrant size), so they line up with the analytical model on exact splits.
struct Counters {
    std::atomic<int64_t> pack_a_calls{0};
    std::atomic<int64_t> pack_b_calls{0};
    std::atomic<int64_t> pack_a_elems{0};   // reads from A-side source views
    std::atomic<int64_t> pack_b_elems{0};   // reads from B-side source views
    std::atomic<int64_t> pack_a_add_flops{0};
    std::atomic<int64_t> pack_b_add_flops{0};

    std::atomic<int64_t> kernel_calls{0};
    std::atomic<int64_t> kernel_fma_flops{0};     // 2 per in-range multiply-add
    std::atomic<int64_t> kernel_c_elems{0};       // read+write traffic on dests
    std::atomic<int64_t> kernel_update_flops{0};  // dest += alpha*gamma*T

    std::atomic<int64_t> a_plus_passes{0};
    std::atomic<int64_t> a_plus_elems{0};
    std::atomic<int64_t> a_plus_flops{0};
    std::atomic<int64_t> b_plus_passes{0};
    std::atomic<int64_t> b_plus_elems{0};
    std::atomic<int64_t> b_plus_flops{0};
    std::atomic<int64_t> c_plus_passes{0};
    std::atomic<int64_t> c_plus_elems{0};
    std::atomic<int64_t> c_plus_flops{0};

    void reset() {
        pack_a_calls = pack_b_calls = 0;
        pack_a_elems = pack_b_elems = 0;
        pack_a_add_flops = pack_b_add_flops = 0;
        kernel_calls = kernel_fma_flops = 0;
        kernel_c_elems = kernel_update_flops = 0;
        a_plus_passes = a_plus_elems = a_plus_flops = 0;
        b_plus_passes = b_plus_elems = b_plus_flops = 0;
        c_plus_passes = c_plus_elems = c_plus_flops = 0;
    }
};

}  // namespace strassen
