#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "oblat/obtuse.hpp"
#include "oblat/oracle.hpp"
#include "oblat/reduction.hpp"
#include "oblat/rng.hpp"

using namespace oblat;

namespace {

// Clique {0,1,3,4} with row 4 negated: the working state right before the
// first ILP transformation on the reference basis.
CliqueState seeded_state() {
    IntMat B = fixtures::basis10();
    for (auto& e : B[4]) e = -e;
    CliqueState s = make_clique_state(B);
    s.members = {0, 1, 3, 4};
    return s;
}

bool clique_pairwise_obtuse(const CliqueState& s) {
    for (int a : s.members)
        for (int b : s.members)
            if (a != b && s.gram[a][b] > 0) return false;
    return true;
}

} // namespace

TEST_CASE("obtuseness graph and greedy clique") {
    IntMat G = {{4, -1, 2}, {-1, 4, 0}, {2, 0, 4}};
    ObtusenessGraph g = build_obtuseness_graph(G);
    CHECK(g.adj[0][1]);
    CHECK(g.adj[1][0]);
    CHECK(!g.adj[0][2]);
    CHECK(g.adj[1][2]); // zero dot product counts as obtuse
    CHECK(!g.adj[0][0]);

    auto clique = get_maximal_clique(g);
    CHECK(clique == std::vector<int>{0, 1}); // vertex 1 has degree 2, then 0 joins
}

TEST_CASE("sign-flip growth reaches the documented clique on the reference basis") {
    CliqueState s = make_clique_state(fixtures::basis10());
    CHECK(s.gram[0] == fixtures::gram_row0());
    while (sign_flip_add_to_clique(s)) {
    }
    CHECK(s.members == std::vector<int>{0, 1, 3, 4});
    CHECK(clique_pairwise_obtuse(s));
    // Row 4 is the one the flip negated.
    IntMat B = fixtures::basis10();
    for (size_t t = 0; t < B[4].size(); ++t) CHECK(s.basis[4][t] == -B[4][t]);
    CHECK(s.basis[0] == B[0]);
}

TEST_CASE("feasibility system of the first narrated transformation") {
    CliqueState s = seeded_state();
    IlpSystem sys = build_ilp(s, 8);
    CHECK(sys.A == fixtures::clique_gram());
    CHECK(sys.c0 == fixtures::clique_c0());
    CHECK(sys.members == std::vector<int>{0, 1, 3, 4});
    REQUIRE(sys.c1.size() == 4);
    for (size_t l = 0; l < 4; ++l)
        CHECK(sys.c1[l] < BigFloat::of(sys.c0[l])); // c1 = c0 - ||b_l|| < c0

    CHECK_THROWS_AS(build_ilp(s, 0), std::invalid_argument); // member
    CliqueState empty = make_clique_state(fixtures::basis10());
    CHECK_THROWS_AS(build_ilp(empty, 8), std::invalid_argument);
}

TEST_CASE("center axis solves the system exactly") {
    CliqueState s = seeded_state();
    IlpSystem sys = build_ilp(s, 8);
    CenterAxis axis = center_axis(sys);
    CHECK(axis.k == 4);
    for (size_t i = 0; i < 4; ++i) {
        Rat acc(0);
        for (size_t j = 0; j < 4; ++j) acc += Rat(sys.A[i][j]) * axis.p0[j];
        CHECK(acc == Rat(sys.c0[i]));
    }
    // m points into the feasible cone: A*m ~ row norms > 0, so m != 0.
    bool nonzero = false;
    for (const auto& mi : axis.m)
        if (!mi.is_zero()) nonzero = true;
    CHECK(nonzero);
}

TEST_CASE("default step size satisfies the per-coordinate movement bound") {
    CliqueState s = seeded_state();
    IlpSystem sys = build_ilp(s, 8);
    CenterAxis axis = center_axis(sys);
    BigFloat delta = default_step_size(axis);
    CHECK(delta > BigFloat::of(0L));
    for (const auto& mi : axis.m) CHECK(delta * abs(mi) <= BigFloat::of(1L));
}

TEST_CASE("step sampling reproduces the narrated first transformation") {
    CliqueState s = seeded_state();
    IlpSystem sys = build_ilp(s, 8);
    CenterAxis axis = center_axis(sys);

    SamplingConfig cfg;
    SampleStats stats;
    IntVec v = sample_step(axis, sys, cfg, &stats);
    CHECK(v == fixtures::first_step_v());
    CHECK(ilp_feasible(sys.A, sys.c0, v));
    CHECK(stats.probes >= 1);

    // b8' = b8 + sum v_l b_{j_l}, exactly as documented.
    IntVec b8 = s.basis[8];
    for (size_t l = 0; l < 4; ++l)
        for (size_t t = 0; t < b8.size(); ++t) b8[t] += v[l] * s.basis[sys.members[l]][t];
    CHECK(b8 == fixtures::first_step_b8());
}

TEST_CASE("binary sampling returns a feasible, typically deeper point") {
    CliqueState s = seeded_state();
    IlpSystem sys = build_ilp(s, 8);
    CenterAxis axis = center_axis(sys);

    SamplingConfig cfg;
    cfg.method = SamplingMethod::BinarySearch;
    SampleStats stats;
    IntVec v = sample_binary(axis, sys, cfg, &stats);
    CHECK(ilp_feasible(sys.A, sys.c0, v));
    CHECK(stats.probes >= 1);
    CHECK(stats.fallback_steps == 0); // lemma point feasible without extension
}

TEST_CASE("infeasible point rejected, narrated point accepted") {
    CliqueState s = seeded_state();
    IlpSystem sys = build_ilp(s, 8);
    CHECK(!ilp_feasible(sys.A, sys.c0, IntVec{0, 0, 0, 0})); // c0 has -70
    CHECK(ilp_feasible(sys.A, sys.c0, fixtures::first_step_v()));
}

TEST_CASE("rounded lemma-depth point is feasible across random definite systems") {
    Rng rng(1234);
    int fallbacks = 0, trials = 0;
    for (int t = 0; t < 40; ++t) {
        int k = 2 + (int)rng.uniform(0, 6);
        IntMat M = random_basis(k, 9, rng);
        IntMat A = generate_dot_product_matrix(M); // positive definite
        IlpSystem sys;
        sys.A = A;
        for (int i = 0; i < k; ++i) sys.c0.push_back(rng.uniform(-60, 60));
        CenterAxis axis = center_axis(sys);
        SamplingConfig cfg;
        cfg.method = SamplingMethod::BinarySearch;
        SampleStats stats;
        IntVec v = sample_binary(axis, sys, cfg, &stats);
        CHECK(ilp_feasible(sys.A, sys.c0, v));
        fallbacks += stats.fallback_steps > 0;
        ++trials;
    }
    CHECK(trials == 40);
    CHECK(fallbacks == 0);
}

TEST_CASE("full conversion of the reference basis") {
    IntMat B = fixtures::basis10();
    std::vector<std::string> ops;
    ConvertConfig cfg;
    IntMat out = convert_to_obtuse(B, cfg, [&](const CliqueState& st, const std::string& op) {
        ops.push_back(op);
        CHECK(same_lattice(st.basis, B)); // invariant after every step
    });
    CHECK(is_obtuse(out));
    CHECK(same_lattice(out, B));
    CHECK(std::count(ops.begin(), ops.end(), "sign-flip-add") >= 4);
    CHECK(std::count(ops.begin(), ops.end(), "ilp-transform") >= 1);
    CHECK(max_entry_bits(out) > max_entry_bits(B)); // documented entry growth
}

TEST_CASE("binary-search conversion grows entries more than step conversion") {
    IntMat B = fixtures::basis10();
    IntMat step_out = convert_to_obtuse(B);
    ConvertConfig bin;
    bin.sampling.method = SamplingMethod::BinarySearch;
    IntMat bin_out = convert_to_obtuse(B, bin);
    CHECK(is_obtuse(bin_out));
    CHECK(same_lattice(bin_out, B));
    CHECK(max_entry_bits(bin_out) > max_entry_bits(step_out));
}

TEST_CASE("published converted matrix spans the same lattice and is obtuse") {
    IntMat printed = transpose(fixtures::converted10_step_printed());
    CHECK(is_obtuse(printed));
    CHECK(same_lattice(printed, fixtures::basis10()));
}

TEST_CASE("identity conversion is a no-op") {
    int transforms = 0;
    IntMat out = convert_to_obtuse(identity_mat(5), {},
                                   [&](const CliqueState&, const std::string& op) {
                                       if (op == "ilp-transform") ++transforms;
                                   });
    CHECK(out == identity_mat(5));
    CHECK(transforms == 0);
}

TEST_CASE("random conversions: obtuse, lattice-preserving, audited stepwise") {
    Rng rng(777);
    for (int t = 0; t < 12; ++t) {
        int dim = 2 + (int)rng.uniform(0, 4);
        IntMat B = lll_reduce(random_basis(dim, 20, rng));
        IntMat out = convert_to_obtuse(B, {}, [&](const CliqueState& st, const std::string&) {
            CHECK(same_lattice(st.basis, B));
        });
        CHECK(is_obtuse(out));
        CHECK(same_lattice(out, B));
    }
}

TEST_CASE("conversion input validation") {
    CHECK_THROWS_AS(convert_to_obtuse({{1, 2, 3}, {4, 5, 6}}), DimensionMismatch);
    CHECK_THROWS_AS(convert_to_obtuse({{1, 2}, {2, 4}}), RankDeficient);
}

TEST_CASE("entry overflow guard aborts runaway growth") {
    ConvertConfig cfg;
    cfg.guard_bits = 8;
    CHECK_THROWS_AS(convert_to_obtuse(fixtures::basis10(), cfg), EntryOverflowGuard);
}

TEST_CASE("semi-obtuse splitting") {
    // Obtuse basis: everything lands in one class.
    auto part = split_semi_obtuse(identity_mat(3));
    REQUIRE(part);
    CHECK(part->first.size() + part->second.size() == 3);
    CHECK(is_obtuse(semi_to_obtuse(identity_mat(3), *part)));

    // Flip one vector of an obtuse pair: still semi-obtuse, recoverable.
    IntMat M = {{1, 0}, {1, -2}}; // dot = +1
    auto p2 = split_semi_obtuse(M);
    REQUIRE(p2);
    CHECK(is_obtuse(semi_to_obtuse(M, *p2)));

    // Positive triangle: no two-coloring exists.
    IntMat T = {{2, 1}, {1, 1}, {1, 2}};
    IntMat G = generate_dot_product_matrix(T);
    CHECK(G[0][1] > 0);
    CHECK(G[0][2] > 0);
    CHECK(G[1][2] > 0);
    CHECK(!split_semi_obtuse(T));
}

TEST_CASE("semi_to_obtuse validates its partition") {
    IntMat I = identity_mat(3);
    CHECK_THROWS_AS(semi_to_obtuse(I, {{0, 1}, {1, 2}}), std::invalid_argument); // overlap
    CHECK_THROWS_AS(semi_to_obtuse(I, {{0}, {2}}), std::invalid_argument);       // misses 1
    IntMat M = {{1, 0}, {1, -2}};
    CHECK_THROWS_AS(semi_to_obtuse(M, {{0, 1}, {}}), std::invalid_argument); // +1 within set
}
