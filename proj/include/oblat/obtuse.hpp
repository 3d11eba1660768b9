#ifndef OBLAT_OBTUSE_HPP
#define OBLAT_OBTUSE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oblat/bigfloat.hpp"
#include "oblat/linalg.hpp"

namespace oblat {

// Node per basis vector, edge iff dot(b_i, b_j) <= 0.
struct ObtusenessGraph {
    int n = 0;
    std::vector<std::vector<char>> adj;
};

ObtusenessGraph build_obtuseness_graph(const IntMat& gram);

// Greedy clique over vertices sorted by degree descending (ties by lower
// index); maximal under single-vertex addition.
std::vector<int> get_maximal_clique(const ObtusenessGraph& G);

// Working state of the conversion: the (mutating) basis, its Gram matrix
// kept in sync, and the current clique.  Invariants: members are pairwise
// obtuse; the basis always spans the original lattice.
struct CliqueState {
    IntMat basis;
    IntMat gram;
    std::vector<int> members; // ascending
};

CliqueState make_clique_state(const IntMat& B);

// Scans non-members in index order; adds the first vector that is obtuse
// with every member either as-is or negated (negation written into the
// basis).  Returns whether anything was added.
bool sign_flip_add_to_clique(CliqueState& state);

// Feasibility system A*v <= c0 whose integer solutions make
// b' = b_target + sum_l v_l * b_{j_l} obtuse with every clique member.
struct IlpSystem {
    IntMat A;               // clique Gram submatrix
    IntVec c0;              // c0[l] = -dot(b_target, b_{j_l})
    FloatVec c1;            // diagnostic: c0[l] - ||b_{j_l}||
    int target = -1;
    std::vector<int> members;
};

IlpSystem build_ilp(const CliqueState& state, int target);

// The line x = p0 + lambda*m equidistant (signed distance lambda) from all
// bounding hyperplanes; p0 = A^-1 c0 exact, m = A^-1 [||A_1||..||A_k||]^T
// in floats.  Candidate feasibility is always re-checked exactly.
struct CenterAxis {
    RatVec p0;
    FloatVec m;
    int k = 0;
};

CenterAxis center_axis(const IlpSystem& sys, mpfr_prec_t precision = 256);

enum class SamplingMethod { Step, BinarySearch };

struct SamplingConfig {
    SamplingMethod method = SamplingMethod::Step;
    std::optional<BigFloat> delta; // Step only; defaults to 1/epsilon
    int stall_limit = 4;           // BinarySearch termination
    mpfr_prec_t precision = 256;
    // Step only: probe budget for the literal delta-walk.  Ill-conditioned
    // systems can make the walk astronomically long (epsilon beyond 1e13 on
    // the 10x10 reference fixture); past the budget the walk switches to
    // geometric deepening (lambda doubles per probe), which terminates
    // within a factor two of the first feasible depth.  Feasibility is
    // exact in every phase.
    unsigned long walk_probe_limit = 10000;
};

struct SampleStats {
    unsigned long probes = 0;         // rounded points tested
    unsigned long fallback_steps = 0; // delta-extensions past -0.5*sqrt(k)
    bool walk_budget_exceeded = false;
};

// delta = 1/epsilon with epsilon = max |m_i| (rounded down, so each
// coordinate of p_lambda moves by at most 1 per step).
BigFloat default_step_size(const CenterAxis& axis);

// Exact check A*v <= c0.
bool ilp_feasible(const IntMat& A, const IntVec& c0, const IntVec& v);

// Walks lambda from 0 downward by delta and returns the first rounded point
// that passes the exact feasibility check; guaranteed to terminate at the
// latest near lambda = -0.5*sqrt(k) (extended by delta steps if float error
// in m makes the exact check fail there).  See walk_probe_limit above.
IntVec sample_step(const CenterAxis& axis, const IlpSystem& sys, const SamplingConfig& cfg,
                   SampleStats* stats = nullptr);

// Binary search on lambda in (-0.5*sqrt(k), 0) keeping the invariant that
// the rounded point at lambda_L is feasible; stops when the rounded
// midpoint is unchanged for stall_limit consecutive iterations; returns the
// rounded feasible point at lambda_L.
IntVec sample_binary(const CenterAxis& axis, const IlpSystem& sys, const SamplingConfig& cfg,
                     SampleStats* stats = nullptr);

// One clique-growing step: picks the non-member obtuse with the most clique
// members (ties by lower index); inserts directly if already obtuse with
// all, otherwise transforms it through the sampled feasibility system.
void linsolve_add_to_clique(CliqueState& state, const SamplingConfig& cfg);

struct ConvertConfig {
    SamplingConfig sampling;
    size_t guard_bits = 1000000; // abort when any entry exceeds this bit length
};

// Invoked after every individual clique-growth step; op is one of
// "sign-flip-add", "direct-add", "ilp-transform".
using StepCallback = std::function<void(const CliqueState&, const std::string& op)>;

// Grows the clique until it spans the whole basis, alternating free
// sign-flip insertions (exhausted first) with ILP transformations.
// The output basis is obtuse and spans the input lattice.  Throws
// EntryOverflowGuard when entries outgrow cfg.guard_bits.
IntMat convert_to_obtuse(const IntMat& B, const ConvertConfig& cfg = {},
                         const StepCallback& callback = {});

// Two-coloring of the sign-constraint graph: strictly positive dot products
// force different sets, strictly negative force the same set.  Returns the
// witness partition if one exists.
std::optional<std::pair<std::vector<int>, std::vector<int>>>
split_semi_obtuse(const IntMat& B);

// Negates the vectors in the second set of a valid partition; the result is
// obtuse.  Throws std::invalid_argument on an invalid partition.
IntMat semi_to_obtuse(const IntMat& B,
                      const std::pair<std::vector<int>, std::vector<int>>& partition);

} // namespace oblat

#endif
