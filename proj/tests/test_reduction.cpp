#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oblat/reduction.hpp"
#include "oblat/rng.hpp"

using namespace oblat;

TEST_CASE("generate_dot_product_matrix") {
    auto G = generate_dot_product_matrix(identity_mat(3));
    CHECK(G == identity_mat(3));

    auto B = fixtures::basis10();
    G = generate_dot_product_matrix(B);
    CHECK(G[0][1] == -72);
    CHECK(G[1][0] == -72);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) CHECK(G[i][j] == G[j][i]);
    for (int j = 0; j < 10; ++j) CHECK(G[0][j] == fixtures::gram_row0()[j]);
}

TEST_CASE("update_dot_product_matrix matches regeneration") {
    Rng rng(5);
    IntMat B = random_basis(6, 9, rng);
    IntMat G = generate_dot_product_matrix(B);

    CHECK(update_dot_product_matrix(G, B, 2) == G); // nothing changed

    for (int t = 0; t < 6; ++t) B[2][t] += rng.uniform(-4, 4);
    IntMat G2 = update_dot_product_matrix(G, B, 2);
    CHECK(G2 == generate_dot_product_matrix(B));

    CHECK_THROWS_AS(update_dot_product_matrix(G, B, 9), std::out_of_range);
}

TEST_CASE("update after the fixture's first transformation") {
    auto B = fixtures::basis10();
    auto G = generate_dot_product_matrix(B);
    B[8] = fixtures::first_step_b8();
    auto G2 = update_dot_product_matrix(G, B, 8);
    CHECK(G2 == generate_dot_product_matrix(B));
}

TEST_CASE("negate_dot_product_matrix") {
    Rng rng(6);
    IntMat B = random_basis(5, 9, rng);
    IntMat G = generate_dot_product_matrix(B);

    IntMat N = negate_dot_product_matrix(G, 3);
    CHECK(N[3][3] == G[3][3]);
    CHECK(negate_dot_product_matrix(N, 3) == G); // involution

    IntMat Bn = B;
    for (auto& e : Bn[3]) e = -e;
    CHECK(N == generate_dot_product_matrix(Bn));
}

TEST_CASE("lll_reduce") {
    auto I = identity_mat(4);
    CHECK(lll_reduce(I) == I);

    IntMat B = {{1, 0}, {4, 1}};
    IntMat R = lll_reduce(B, Rat(99, 100));
    CHECK(dot(R[0], R[0]) <= dot(B[0], B[0]));
    CHECK(hnf(R) == hnf(B));

    // Output satisfies size reduction and the Lovasz condition.
    Rng rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        IntMat M = random_basis(7, 15, rng);
        IntMat L = lll_reduce(M);
        CHECK(hnf(L) == hnf(M));
        RatGso g = rat_gso(L);
        Rat delta(99, 100);
        for (size_t i = 0; i < L.size(); ++i)
            for (size_t j = 0; j < i; ++j) CHECK(abs(g.mu[i][j]) <= Rat(1, 2));
        for (size_t k = 1; k < L.size(); ++k)
            CHECK(g.bstar_sq[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.bstar_sq[k - 1]);
    }

    auto B10 = fixtures::basis10();
    CHECK(hnf(lll_reduce(B10)) == hnf(B10));

    CHECK_THROWS_AS(lll_reduce({{1, 2}, {2, 4}}), RankDeficient);
    CHECK_THROWS_AS(lll_reduce(I, Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(lll_reduce(I, Rat(1, 4)), std::invalid_argument);
}
