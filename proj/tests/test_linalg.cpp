#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "oblat/linalg.hpp"
#include "oblat/rng.hpp"

using namespace oblat;

TEST_CASE("dot products") {
    CHECK(dot({1, 0}, {0, 1}) == 0);
    auto B = fixtures::basis10();
    CHECK(dot(B[0], B[1]) == -72);
    CHECK(dot(B[0], B[0]) == 207);
    auto row0 = fixtures::gram_row0();
    for (size_t j = 0; j < 10; ++j) CHECK(dot(B[0], B[j]) == row0[j]);
    CHECK_THROWS_AS(dot({1, 2}, {1, 2, 3}), DimensionMismatch);
}

TEST_CASE("solve_exact") {
    RatVec x = solve_exact(identity_mat(3), {Rat(1, 2), Rat(2), Rat(-3)});
    CHECK(x == RatVec{Rat(1, 2), Rat(2), Rat(-3)});

    x = solve_exact({{2, 0}, {0, 4}}, {Rat(1), Rat(1)});
    CHECK(x == RatVec{Rat(1, 2), Rat(1, 4)});

    // Clique system of the 10x10 fixture: substitute back exactly.
    auto A = fixtures::clique_gram();
    auto c0 = fixtures::clique_c0();
    RatVec c(c0.size());
    for (size_t i = 0; i < c0.size(); ++i) c[i] = Rat(c0[i]);
    x = solve_exact(A, c);
    for (size_t i = 0; i < A.size(); ++i) {
        Rat s(0);
        for (size_t j = 0; j < A.size(); ++j) s += Rat(A[i][j]) * x[j];
        CHECK(s == c[i]);
    }

    CHECK_THROWS_AS(solve_exact({{1, 2}, {2, 4}}, {Rat(1), Rat(1)}), SingularSystem);
}

TEST_CASE("solve_float") {
    const mpfr_prec_t prec = 128;
    BigFloat r2 = sqrt(BigFloat::of(2L, prec));
    FloatVec x = solve_float(identity_mat(2), {r2, r2}, prec);
    CHECK(abs(x[0] - r2).d() < 1e-30);
    CHECK(abs(x[1] - r2).d() < 1e-30);

    x = solve_float({{4, 0}, {0, 9}}, {BigFloat::of(2L, prec), BigFloat::of(3L, prec)}, prec);
    CHECK(abs(x[0] - BigFloat::of(0.5, prec)).d() < 1e-30);
    CHECK(abs(x[1] - BigFloat::of(1L, prec) / BigFloat::of(3L, prec)).d() < 1e-30);

    // Random PD system: residual below 2^(-prec/2).
    Rng rng(42);
    IntMat R = random_basis(5, 9, rng);
    IntMat A = mat_mul(R, transpose(R));
    FloatVec c;
    for (int i = 0; i < 5; ++i) c.push_back(sqrt(BigFloat::of((long)(i + 1), prec)));
    x = solve_float(A, c, prec);
    BigFloat rnorm(2 * prec), cnorm(2 * prec);
    for (int i = 0; i < 5; ++i) {
        BigFloat s(2 * prec);
        for (int j = 0; j < 5; ++j) s += BigFloat::of(A[i][j], 2 * prec) * x[j];
        s -= c[i];
        rnorm += s * s;
        cnorm += c[i] * c[i];
    }
    CHECK((sqrt(rnorm) / sqrt(cnorm)).d() < std::ldexp(1.0, -(int)(prec / 2)));

    CHECK_THROWS_AS(solve_float({{1, 2}, {2, 4}}, {r2, r2}, prec), SingularSystem);
}

TEST_CASE("euclidean_norm") {
    CHECK(euclidean_norm({3, 4}, 64) == BigFloat::of(5L, 64));
    CHECK(euclidean_norm({0, 0, 0}, 64).is_zero());
    auto B = fixtures::basis10();
    BigFloat n0 = euclidean_norm(B[0], 256);
    CHECK(abs(n0 * n0 - BigFloat::of(207L, 256)).d() < 1e-60);
}

TEST_CASE("hnf") {
    auto I = identity_mat(4);
    CHECK(hnf(I) == I);

    CHECK(hnf({{2, 0}, {1, 1}}) == hnf({{2, 0}, {3, 1}}));

    auto B = fixtures::basis10();
    auto H = hnf(B);
    CHECK(hnf(H) == H); // idempotent

    // Unimodular invariance.
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        IntMat U = random_unimodular(10, 30, rng);
        CHECK(hnf(mat_mul(U, B)) == H);
    }

    // Printed step-method result: columns are the basis vectors.
    CHECK(hnf(transpose(fixtures::converted10_step_printed())) == H);

    // Volume invariance: |det(hnf(B))| == |det(B)|.
    CHECK(abs(det(H)) == abs(det(B)));

    CHECK_THROWS_AS(hnf({{1, 2}, {2, 4}}), RankDeficient);
}

TEST_CASE("round_to_int") {
    auto f = [](double d) { return BigFloat::of(d, 96); };
    CHECK(round_to_int({f(0.4), f(-0.4)}) == IntVec{0, 0});
    CHECK(round_to_int({f(1.5), f(-1.5)}) == IntVec{2, -2});
    CHECK(round_to_int({f(-0.7), f(2.3), f(-3.5)}) == IntVec{-1, 2, -4});
}

TEST_CASE("rat_round_nearest") {
    CHECK(rat_round_nearest(Rat(3, 2)) == 2);
    CHECK(rat_round_nearest(Rat(-3, 2)) == -2);
    CHECK(rat_round_nearest(Rat(7, 5)) == 1);
    CHECK(rat_round_nearest(Rat(-7, 5)) == -1);
    CHECK(rat_round_nearest(Rat(0)) == 0);
}

TEST_CASE("det and helpers") {
    CHECK(det(identity_mat(5)) == 1);
    CHECK(det({{2, 0}, {0, 3}}) == 6);
    CHECK(det({{1, 2}, {2, 4}}) == 0);
    Rng rng(11);
    IntMat U = random_unimodular(6, 40, rng);
    CHECK(abs(det(U)) == 1);
}
