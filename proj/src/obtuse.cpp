#include "oblat/obtuse.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "oblat/reduction.hpp"

namespace oblat {

ObtusenessGraph build_obtuseness_graph(const IntMat& gram) {
    ObtusenessGraph G;
    G.n = (int)gram.size();
    G.adj.assign(G.n, std::vector<char>(G.n, 0));
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j)
            if (i != j && gram[i][j] <= 0) G.adj[i][j] = 1;
    return G;
}

std::vector<int> get_maximal_clique(const ObtusenessGraph& G) {
    std::vector<int> order(G.n);
    for (int i = 0; i < G.n; ++i) order[i] = i;
    std::vector<int> deg(G.n, 0);
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) deg[i] += G.adj[i][j];
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
    std::vector<int> clique;
    for (int i : order) {
        bool ok = true;
        for (int c : clique)
            if (!G.adj[i][c]) {
                ok = false;
                break;
            }
        if (ok) clique.push_back(i);
    }
    std::sort(clique.begin(), clique.end());
    return clique;
}

CliqueState make_clique_state(const IntMat& B) {
    CliqueState s;
    s.basis = B;
    s.gram = generate_dot_product_matrix(B);
    return s;
}

namespace {

void negate_row(CliqueState& state, int i) {
    for (auto& e : state.basis[i]) e = -e;
    state.gram = negate_dot_product_matrix(state.gram, i);
}

bool is_member(const CliqueState& state, int i) {
    return std::binary_search(state.members.begin(), state.members.end(), i);
}

void insert_member(CliqueState& state, int i) {
    state.members.insert(
        std::upper_bound(state.members.begin(), state.members.end(), i), i);
}

} // namespace

bool sign_flip_add_to_clique(CliqueState& state) {
    const int n = (int)state.basis.size();
    for (int i = 0; i < n; ++i) {
        if (is_member(state, i)) continue;
        bool ok_plus = true, ok_minus = true;
        for (int j : state.members) {
            if (state.gram[i][j] > 0) ok_plus = false;
            if (state.gram[i][j] < 0) ok_minus = false;
        }
        if (ok_plus) {
            insert_member(state, i);
            return true;
        }
        if (ok_minus) {
            negate_row(state, i);
            insert_member(state, i);
            return true;
        }
    }
    return false;
}

IlpSystem build_ilp(const CliqueState& state, int target) {
    if (is_member(state, target) || state.members.empty())
        throw std::invalid_argument("build_ilp: target must be a non-member of a nonempty clique");
    IlpSystem sys;
    sys.target = target;
    sys.members = state.members;
    const size_t k = state.members.size();
    sys.A.assign(k, IntVec(k));
    sys.c0.assign(k, 0);
    for (size_t a = 0; a < k; ++a) {
        for (size_t b = 0; b < k; ++b)
            sys.A[a][b] = state.gram[state.members[a]][state.members[b]];
        sys.c0[a] = -state.gram[target][state.members[a]];
        sys.c1.push_back(BigFloat::of(sys.c0[a]) -
                         euclidean_norm(state.basis[state.members[a]], BigFloat::default_prec));
    }
    return sys;
}

CenterAxis center_axis(const IlpSystem& sys, mpfr_prec_t precision) {
    CenterAxis axis;
    axis.k = (int)sys.A.size();
    RatVec c(sys.c0.size());
    for (size_t i = 0; i < sys.c0.size(); ++i) c[i] = Rat(sys.c0[i]);
    axis.p0 = solve_exact(sys.A, c); // Gram of independent vectors: nonsingular
    FloatVec norms;
    for (size_t i = 0; i < sys.A.size(); ++i)
        norms.push_back(euclidean_norm(sys.A[i], precision));
    axis.m = solve_float(sys.A, norms, precision);
    return axis;
}

BigFloat default_step_size(const CenterAxis& axis) {
    BigFloat eps(axis.m.empty() ? BigFloat::default_prec : axis.m[0].prec());
    for (const auto& mi : axis.m) {
        BigFloat a = abs(mi);
        if (a > eps) eps = a;
    }
    if (eps.is_zero()) throw std::invalid_argument("default_step_size: degenerate axis (m = 0)");
    BigFloat delta(eps.prec());
    // Round down so that delta * max|m_i| <= 1 holds exactly.
    mpfr_ui_div(delta.raw(), 1, eps.raw(), MPFR_RNDD);
    return delta;
}

bool ilp_feasible(const IntMat& A, const IntVec& c0, const IntVec& v) {
    for (size_t i = 0; i < A.size(); ++i) {
        Int s = 0;
        for (size_t j = 0; j < A[i].size(); ++j) s += A[i][j] * v[j];
        if (s > c0[i]) return false;
    }
    return true;
}

namespace {

// p0 promoted to floats once; the rounded point at a given lambda.
struct AxisWalker {
    FloatVec p0f;
    const FloatVec& m;

    AxisWalker(const CenterAxis& axis, mpfr_prec_t prec) : m(axis.m) {
        for (const auto& q : axis.p0) p0f.push_back(BigFloat::of(q, prec));
    }

    IntVec rounded_at(const BigFloat& lambda) const {
        IntVec r;
        r.reserve(p0f.size());
        for (size_t i = 0; i < p0f.size(); ++i)
            r.push_back((p0f[i] + lambda * m[i]).round_away());
        return r;
    }
};

BigFloat half_sqrt_k(int k, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_sqrt_ui(r.raw(), (unsigned long)k, MPFR_RNDN);
    mpfr_div_2ui(r.raw(), r.raw(), 1, MPFR_RNDN);
    return r;
}

} // namespace

IntVec sample_step(const CenterAxis& axis, const IlpSystem& sys, const SamplingConfig& cfg,
                   SampleStats* stats) {
    const mpfr_prec_t prec = cfg.precision;
    AxisWalker w(axis, prec);
    BigFloat delta = cfg.delta ? *cfg.delta : default_step_size(axis);
    if (!cfg.delta) {
        // Inline check of the step-size lemma: one delta step moves every
        // coordinate of p_lambda by delta*|m_i| <= 1.
        for (const auto& mi : axis.m) assert(delta * abs(mi) <= BigFloat::of(1L, prec));
    }
    BigFloat lemma_depth = -half_sqrt_k(axis.k, prec);

    BigFloat lambda(prec); // starts at 0
    unsigned long probes = 0;
    while (true) {
        IntVec r = w.rounded_at(lambda);
        ++probes;
        if (ilp_feasible(sys.A, sys.c0, r)) {
            if (stats) stats->probes = probes;
            return r;
        }
        if (stats && lambda < lemma_depth) ++stats->fallback_steps;
        if (probes <= cfg.walk_probe_limit) {
            lambda -= delta;
        } else {
            if (stats) stats->walk_budget_exceeded = true;
            lambda += lambda; // geometric deepening
        }
    }
}

IntVec sample_binary(const CenterAxis& axis, const IlpSystem& sys, const SamplingConfig& cfg,
                     SampleStats* stats) {
    const mpfr_prec_t prec = cfg.precision;
    AxisWalker w(axis, prec);
    BigFloat delta = default_step_size(axis);

    BigFloat lam_l = -half_sqrt_k(axis.k, prec);
    BigFloat lam_u(prec); // 0
    unsigned long probes = 0;

    IntVec best = w.rounded_at(lam_l);
    ++probes;
    while (!ilp_feasible(sys.A, sys.c0, best)) {
        // Float-safety fallback: the lemma point is feasible in exact
        // arithmetic; extend by delta steps if float error spoiled it.
        lam_l -= delta;
        best = w.rounded_at(lam_l);
        ++probes;
        if (stats) ++stats->fallback_steps;
    }

    IntVec prev;
    bool have_prev = false;
    int stall = 0;
    while (stall < cfg.stall_limit) {
        BigFloat lam_m = (lam_l + lam_u) * BigFloat::of(0.5, prec);
        IntVec r = w.rounded_at(lam_m);
        ++probes;
        if (have_prev && r == prev) {
            ++stall;
        } else {
            stall = 0;
            prev = r;
            have_prev = true;
        }
        if (ilp_feasible(sys.A, sys.c0, r)) {
            lam_l = lam_m;
            best = r;
        } else {
            lam_u = lam_m;
        }
    }
    if (stats) stats->probes = probes;
    return best;
}

namespace {

IntVec sample(const CenterAxis& axis, const IlpSystem& sys, const SamplingConfig& cfg,
              SampleStats* stats) {
    return cfg.method == SamplingMethod::Step ? sample_step(axis, sys, cfg, stats)
                                              : sample_binary(axis, sys, cfg, stats);
}

void apply_transform(CliqueState& state, const IlpSystem& sys, const IntVec& v) {
    IntVec& row = state.basis[sys.target];
    for (size_t l = 0; l < sys.members.size(); ++l) {
        if (v[l] == 0) continue;
        const IntVec& b = state.basis[sys.members[l]];
        for (size_t t = 0; t < row.size(); ++t) row[t] += v[l] * b[t];
    }
    state.gram = update_dot_product_matrix(state.gram, state.basis, sys.target);
}

int pick_target(const CliqueState& state) {
    const int n = (int)state.basis.size();
    int best = -1, best_t = -1;
    for (int i = 0; i < n; ++i) {
        if (is_member(state, i)) continue;
        int t = 0;
        for (int j : state.members)
            if (state.gram[i][j] <= 0) ++t;
        if (t > best_t) {
            best_t = t;
            best = i;
        }
    }
    return best;
}

} // namespace

void linsolve_add_to_clique(CliqueState& state, const SamplingConfig& cfg) {
    if (state.members.size() >= state.basis.size())
        throw std::invalid_argument("linsolve_add_to_clique: clique already spans the basis");
    int target = pick_target(state);
    int t = 0;
    for (int j : state.members)
        if (state.gram[target][j] <= 0) ++t;
    if ((size_t)t == state.members.size()) {
        insert_member(state, target);
        return;
    }
    IlpSystem sys = build_ilp(state, target);
    CenterAxis axis = center_axis(sys, cfg.precision);
    IntVec v = sample(axis, sys, cfg, nullptr);
    apply_transform(state, sys, v);
    insert_member(state, target);
}

IntMat convert_to_obtuse(const IntMat& B, const ConvertConfig& cfg, const StepCallback& callback) {
    const size_t n = B.size();
    for (const auto& row : B)
        if (row.size() != n) throw DimensionMismatch("convert_to_obtuse: basis must be square");
    if (det(B) == 0) throw RankDeficient("convert_to_obtuse: basis is rank deficient");

    CliqueState state = make_clique_state(B);

    auto guard = [&](int row) {
        size_t bits = 0;
        for (const auto& e : state.basis[row])
            if (e != 0) bits = std::max(bits, mpz_sizeinbase(e.get_mpz_t(), 2));
        if (bits > cfg.guard_bits)
            throw EntryOverflowGuard("convert_to_obtuse: entry grew past " +
                                     std::to_string(cfg.guard_bits) + " bits");
    };
    auto flip_exhaust = [&]() {
        while (state.members.size() < n && sign_flip_add_to_clique(state))
            if (callback) callback(state, "sign-flip-add");
    };

    flip_exhaust();
    while (state.members.size() < n) {
        int target = pick_target(state);
        int t = 0;
        for (int j : state.members)
            if (state.gram[target][j] <= 0) ++t;
        if ((size_t)t == state.members.size()) {
            insert_member(state, target);
            if (callback) callback(state, "direct-add");
        } else {
            IlpSystem sys = build_ilp(state, target);
            CenterAxis axis = center_axis(sys, cfg.sampling.precision);
            IntVec v = sample(axis, sys, cfg.sampling, nullptr);
            apply_transform(state, sys, v);
            guard(target);
            insert_member(state, target);
            if (callback) callback(state, "ilp-transform");
        }
        flip_exhaust();
    }
    return state.basis;
}

std::optional<std::pair<std::vector<int>, std::vector<int>>>
split_semi_obtuse(const IntMat& B) {
    const int n = (int)B.size();
    IntMat G = generate_dot_product_matrix(B);
    // color[i] in {-1 unset, 0, 1}; strictly positive dot => opposite
    // colors, strictly negative => equal colors, zero => unconstrained.
    std::vector<int> color(n, -1);
    for (int start = 0; start < n; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j == i || G[i][j] == 0) continue;
                int want = G[i][j] > 0 ? 1 - color[i] : color[i];
                if (color[j] == -1) {
                    color[j] = want;
                    stack.push_back(j);
                } else if (color[j] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> part;
    for (int i = 0; i < n; ++i)
        (color[i] == 0 ? part.first : part.second).push_back(i);
    return part;
}

IntMat semi_to_obtuse(const IntMat& B,
                      const std::pair<std::vector<int>, std::vector<int>>& partition) {
    const int n = (int)B.size();
    std::vector<int> side(n, -1);
    for (int i : partition.first) {
        if (i < 0 || i >= n || side[i] != -1)
            throw std::invalid_argument("semi_to_obtuse: partition is not a partition");
        side[i] = 0;
    }
    for (int i : partition.second) {
        if (i < 0 || i >= n || side[i] != -1)
            throw std::invalid_argument("semi_to_obtuse: partition is not a partition");
        side[i] = 1;
    }
    for (int i = 0; i < n; ++i)
        if (side[i] == -1) throw std::invalid_argument("semi_to_obtuse: partition misses an index");

    IntMat G = generate_dot_product_matrix(B);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (side[i] == side[j] && G[i][j] > 0)
                throw std::invalid_argument("semi_to_obtuse: within-set dot product positive");
            if (side[i] != side[j] && G[i][j] < 0)
                throw std::invalid_argument("semi_to_obtuse: cross-set dot product negative");
        }

    IntMat out = B;
    for (int i : partition.second)
        for (auto& e : out[i]) e = -e;
    return out;
}

} // namespace oblat
