#include "doctest.h"
#include "siltlab/linalg.hpp"

#include <random>

using namespace siltlab;

TEST_CASE("rref of a rank one matrix") {
    auto r = rref(Mat::from_rows({{1, 1}, {1, 1}}, 2));
    CHECK(r.rank == 1);
    CHECK(r.pivots == std::vector<int>{0});
    CHECK(r.reduced == Mat::from_rows({{1, 1}, {0, 0}}, 2));
}

TEST_CASE("solve an upper triangular system") {
    auto x = solve(Mat::from_rows({{1, 1}, {0, 1}}, 2), Mat::from_rows({{0}, {1}}, 2));
    REQUIRE(x.has_value());
    CHECK(*x == Mat::from_rows({{1}, {1}}, 2));
}

TEST_CASE("inconsistent systems have no solution") {
    CHECK_FALSE(solve(Mat::from_rows({{1, 1}, {1, 1}}, 3), Mat::from_rows({{0}, {1}}, 3)).has_value());
}

TEST_CASE("modulus must be a small prime") {
    CHECK_THROWS_AS(Mat(2, 2, 4), ContractError);
    CHECK_THROWS_AS(Mat(2, 2, 101), ContractError);
    CHECK_NOTHROW(Mat(2, 2, 97));
}

TEST_CASE("dimension mismatch is a contract violation") {
    Mat a(2, 3, 5);
    Mat b(2, 3, 5);
    CHECK_THROWS_AS(a * b, ContractError);
    CHECK_THROWS_AS(Mat(2, 2, 5) * Mat(2, 2, 7), ContractError);
}

TEST_CASE("rank nullity and kernel over several primes") {
    std::mt19937 rng(7);
    for (int p : {2, 3, 5, 97}) {
        for (int trial = 0; trial < 40; ++trial) {
            int r = 1 + static_cast<int>(rng() % 5);
            int c = 1 + static_cast<int>(rng() % 6);
            Mat m(r, c, p);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < c; ++j) {
                    m.set(i, j, static_cast<int>(rng() % static_cast<unsigned>(p)));
                }
            }
            Mat k = kernel_basis(m);
            CHECK(k.rows() == c);
            CHECK(rank(m) + k.cols() == c);
            CHECK((m * k).is_zero());
            CHECK(rank(k) == k.cols());
            CHECK(image_basis(m).cols() == rank(m));
        }
    }
}

TEST_CASE("inverse and identity") {
    Mat a = Mat::from_rows({{2, 1}, {1, 1}}, 5);
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == Mat::identity(2, 5));
    CHECK_FALSE(inverse(Mat::from_rows({{1, 2}, {2, 4}}, 5)).has_value());
}

TEST_CASE("idempotent splitting") {
    Mat e = Mat::from_rows({{1, 1}, {0, 0}}, 3);
    auto s = split_idempotent(e);
    CHECK(s.i * s.p == e);
    CHECK(s.p * s.i == Mat::identity(1, 3));
    CHECK_THROWS_AS(split_idempotent(Mat::from_rows({{1, 1}, {0, 1}}, 3)), ContractError);
}

TEST_CASE("complement basis completes to a full basis") {
    Mat b = Mat::from_rows({{1}, {1}, {0}}, 2);
    Mat c = complement_basis(b, 3);
    CHECK(c.cols() == 2);
    CHECK(rank(hstack(b, c)) == 3);
}
