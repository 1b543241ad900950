#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "blocking.hpp"
#include "doctest.h"

using namespace strassen;

namespace {

Matrix random_matrix(long r, long c, uint64_t seed) {
    Matrix m(r, c);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : m.buf) x = dist(rng);
    return m;
}

BlockingParams tiny_params() { return {4, 4, 4, 2, 2}; }

}  // namespace

TEST_CASE("pack_a_sum: single term reproduces the BLIS A layout") {
    Matrix x = random_matrix(4, 4, 1);
    const BlockingParams bp = tiny_params();
    std::vector<double> buf(16, -1.0);
    const Term terms[] = {{x.view(), 1}};
    pack_a_sum(terms, 0, 0, 4, 4, bp, buf.data(), nullptr);
    for (long i = 0; i < 4; ++i)
        for (long p = 0; p < 4; ++p)
            CHECK(buf[(i / 2) * 2 * 4 + p * 2 + i % 2] == x.at(i, p));
}

TEST_CASE("pack_a_sum: X - X cancels to zero") {
    Matrix x = random_matrix(4, 4, 2);
    std::vector<double> buf(16, -1.0);
    const Term terms[] = {{x.view(), 1}, {x.view(), -1}};
    pack_a_sum(terms, 0, 0, 4, 4, tiny_params(), buf.data(), nullptr);
    for (double v : buf) CHECK(v == 0.0);
}

TEST_CASE("pack_a_sum: 3x3 quadrants, second micro-panel padding") {
    Matrix x = random_matrix(3, 3, 3), y = random_matrix(3, 3, 4);
    const BlockingParams bp = tiny_params();
    std::vector<double> buf(12, -1.0);
    const Term terms[] = {{x.view(), 1}, {y.view(), 1}};
    pack_a_sum(terms, 0, 0, 3, 3, bp, buf.data(), nullptr);
    for (long p = 0; p < 3; ++p) {
        // micro-panel 1 holds logical rows 2..3; row 3 is padding
        CHECK(buf[1 * 2 * 3 + p * 2 + 0] == x.at(2, p) + y.at(2, p));
        CHECK(buf[1 * 2 * 3 + p * 2 + 1] == 0.0);
    }
}

TEST_CASE("pack_a_sum: clipped term views contribute zero out of range") {
    // logical quadrant 4x4, but Y is clipped to 2x3
    Matrix x = random_matrix(4, 4, 5), y = random_matrix(2, 3, 6);
    std::vector<double> buf(16, -1.0);
    const Term terms[] = {{x.view(), 1}, {y.view(), 1}};
    pack_a_sum(terms, 0, 0, 4, 4, tiny_params(), buf.data(), nullptr);
    for (long i = 0; i < 4; ++i)
        for (long p = 0; p < 4; ++p) {
            const double want =
                x.at(i, p) + ((i < 2 && p < 3) ? y.at(i, p) : 0.0);
            CHECK(buf[(i / 2) * 2 * 4 + p * 2 + i % 2] == want);
        }
}

TEST_CASE("pack_b_sum: single term layout and doubled entries") {
    Matrix x = random_matrix(4, 4, 7);
    const BlockingParams bp = tiny_params();
    std::vector<double> one(16), two(16);
    const Term single[] = {{x.view(), 1}};
    const Term twice[] = {{x.view(), 1}, {x.view(), 1}};
    pack_b_sum(single, 0, 0, 4, 4, bp, one.data(), nullptr);
    pack_b_sum(twice, 0, 0, 4, 4, bp, two.data(), nullptr);
    for (long p = 0; p < 4; ++p)
        for (long j = 0; j < 4; ++j) {
            CHECK(one[(j / 2) * 2 * 4 + p * 2 + j % 2] == x.at(p, j));
            CHECK(two[(j / 2) * 2 * 4 + p * 2 + j % 2] == 2.0 * x.at(p, j));
        }
}

TEST_CASE("pack_b_sum: fringe n_c = nr + 1 leaves zero columns") {
    Matrix x = random_matrix(4, 3, 8);
    const BlockingParams bp = tiny_params();
    std::vector<double> buf(16, -1.0);
    const Term terms[] = {{x.view(), 1}};
    pack_b_sum(terms, 0, 0, 4, 3, bp, buf.data(), nullptr);
    // second micro-panel: column 2 in slot 0, padding in slot 1
    for (long p = 0; p < 4; ++p) {
        CHECK(buf[1 * 2 * 4 + p * 2 + 0] == x.at(p, 2));
        CHECK(buf[1 * 2 * 4 + p * 2 + 1] == 0.0);
    }
}

TEST_CASE("packing linearity is bitwise in listed order") {
    const BlockingParams bp = tiny_params();
    Matrix x = random_matrix(4, 4, 9), y = random_matrix(4, 4, 10),
           z = random_matrix(4, 4, 11);
    const Term sum[] = {{x.view(), 1}, {y.view(), -1}, {z.view(), 1}};
    std::vector<double> all(16), px(16), py(16), pz(16);
    pack_a_sum(sum, 0, 0, 4, 4, bp, all.data(), nullptr);
    const Term tx[] = {{x.view(), 1}};
    const Term ty[] = {{y.view(), -1}};
    const Term tz[] = {{z.view(), 1}};
    pack_a_sum(tx, 0, 0, 4, 4, bp, px.data(), nullptr);
    pack_a_sum(ty, 0, 0, 4, 4, bp, py.data(), nullptr);
    pack_a_sum(tz, 0, 0, 4, 4, bp, pz.data(), nullptr);
    for (size_t i = 0; i < all.size(); ++i)
        CHECK(all[i] == px[i] + py[i] + pz[i]);
}

TEST_CASE("unpack-repack round trip") {
    const BlockingParams bp = tiny_params();
    Matrix x = random_matrix(3, 3, 12);
    std::vector<double> buf(12);
    const Term terms[] = {{x.view(), 1}};
    pack_a_sum(terms, 0, 0, 4, 3, bp, buf.data(), nullptr);
    for (long i = 0; i < 4; ++i)
        for (long p = 0; p < 3; ++p) {
            const double v = buf[(i / 2) * 2 * 3 + p * 2 + i % 2];
            if (i < 3)
                CHECK(v == x.at(i, p));
            else
                CHECK(v == 0.0);
        }
}

TEST_CASE("gemm_conventional: m = n = k = 1") {
    Matrix a(1, 1), b(1, 1), c(1, 1);
    a.buf = {1.25};
    b.buf = {-3.5};
    c.buf = {2.0};
    gemm_conventional({1, 1, 1, 0.5}, a.view(), b.view(), c.view(), {});
    CHECK(c.buf[0] == 2.0 + 0.5 * (1.25 * -3.5));
}

TEST_CASE("gemm_conventional matches reference on random shapes") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> dim(1, 64);
    for (int it = 0; it < 25; ++it) {
        const long m = dim(rng), n = dim(rng), k = dim(rng);
        Matrix a = random_matrix(m, k, rng()), b = random_matrix(k, n, rng());
        Matrix c = random_matrix(m, n, rng());
        Matrix c_ref = c;
        gemm_conventional({m, n, k, 1.0}, a.view(), b.view(), c.view(), {});
        reference_gemm({m, n, k, 1.0}, a.view(), b.view(), c_ref.view());
        CHECK(rel_frobenius_error(c.view(), c_ref.view()) < 1e-12);
    }
}

TEST_CASE("gemm_conventional matches reference across the [1,700] range") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> dim(1, 700);
    for (int it = 0; it < 100; ++it) {
        const long m = dim(rng), n = dim(rng), k = dim(rng);
        Matrix a = random_matrix(m, k, rng()), b = random_matrix(k, n, rng());
        Matrix c = random_matrix(m, n, rng());
        Matrix c_ref = c;
        gemm_conventional({m, n, k, 1.0}, a.view(), b.view(), c.view(), {}, 2);
        reference_gemm({m, n, k, 1.0}, a.view(), b.view(), c_ref.view());
        CHECK(rel_frobenius_error(c.view(), c_ref.view()) < 1e-12);
    }
}

TEST_CASE("single-block shape packs exactly once per operand") {
    const BlockingParams bp;  // 96 / 4096 / 256
    Matrix a = random_matrix(96, 256, 15), b = random_matrix(256, 4096, 16);
    Matrix c(96, 4096, 0.0);
    Counters cnt;
    gemm_conventional({96, 4096, 256, 1.0}, a.view(), b.view(), c.view(), bp,
                      1, nullptr, &cnt);
    CHECK(cnt.pack_a_calls.load() == 1);
    CHECK(cnt.pack_b_calls.load() == 1);
}

TEST_CASE("blocking parameter validation") {
    CHECK_THROWS_AS((BlockingParams{90, 4096, 256, 8, 4}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((BlockingParams{96, 4098, 256, 8, 4}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((BlockingParams{0, 4096, 256, 8, 4}.validate()),
                    std::invalid_argument);
    CHECK_NOTHROW(BlockingParams{}.validate());
}
