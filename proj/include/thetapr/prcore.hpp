#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetapr/phases.hpp"

namespace thetapr::prcore {

using phases::PhaseSet;

// Finite system G = {g_1, ..., g_m} in C^d, stored as the d x m matrix F
// whose columns are the vectors. Zero columns are permitted; they impose no
// constraint and downstream decisions attach a warning.
struct VectorSystem {
    int d = 0;
    int m = 0;
    CMatrix F; // d x m

    VectorSystem(int d, int m, CMatrix f);
    explicit VectorSystem(CMatrix f);

    CVector column(int j) const { return F.col(j); }
    std::vector<int> zero_columns(double tol = 1e-14) const;
};

// Phase choice per vector, stored as indices into a PhaseSet.
struct Assignment {
    std::vector<int> indices;
};

// Certificate that a system fails Theta-PR: linearly independent f, h with
// <f,g_j> = theta_j <h,g_j> for every j under `assignment`. `residual` is
// the relative defect max_j |<f,g_j> - theta_j <h,g_j>| / (|g|_max * max(|f|,|h|)).
struct Witness {
    CVector f;
    CVector h;
    Assignment assignment;
    double residual = 0.0;
};

struct DecisionReport {
    bool does_pr = true;
    std::optional<Witness> witness; // present iff does_pr == false
    // Position reached in the full lexicographic enumeration of Theta^m:
    // index of the witness assignment + 1 on failure, |Theta|^m on success.
    // Identical in sequential and parallel mode.
    std::uint64_t assignments_checked = 0;
    double elapsed_seconds = 0.0; // informational; not serialized
    std::vector<std::string> warnings;
};

// Certificate for failure with three phases: a labeling of the columns into
// classes {1,2,3} and vectors x1, x2, x3 with x_j orthogonal to the columns
// of class j, x1 and x2 linearly independent, and x3 in span{x1, x2}.
struct Cover3 {
    std::vector<int> labels; // values in {1,2,3}, one per column
    CVector x1, x2, x3;
};

struct EngineOptions {
    std::uint64_t assignment_budget = 10'000'000;
    int threads = 1;
    Tolerance tol{};
    double witness_tol = 1e-8; // relative tolerance used by verify_witness
};

// ---- Spanning checks -------------------------------------------------------

// rank(F) == d, or rank of the selected columns == d. An empty selection is
// incomplete (its span is {0}).
bool is_complete(const VectorSystem& g);
bool is_complete(const VectorSystem& g, const std::vector<int>& columns);

// Exhaustive check over the 2^{m-1} unordered bipartitions. m > 24 ->
// ResourceLimit.
bool has_complement_property(const VectorSystem& g, Tolerance tol = {});

// Every d-column subset has rank d. Requires m >= d; C(m,d) > 1e6 ->
// ResourceLimit.
bool is_full_spark(const VectorSystem& g, Tolerance tol = {});

// ---- Constraint matrix and null-space pair test ----------------------------

// The m x 2d matrix whose row j is (g_j^T, -conj(theta_j) g_j^T). For
// v = (conj f, conj h), row j of M v equals conj(<f,g_j> - theta_j <h,g_j>),
// so the failure equations for a fixed assignment are exactly M v = 0.
CMatrix build_constraint_matrix(const VectorSystem& g, const PhaseSet& t,
                                const Assignment& a);

// Given an orthonormal basis of a subspace of C^{2d}, decide whether the
// subspace contains a vector whose d-dimensional halves are linearly
// independent. Each 2x2 minor of the (first half, second half) pair is a
// homogeneous quadratic in the span coordinates, and a quadratic vanishes on
// the span iff it vanishes at every basis vector and every pairwise sum of
// basis vectors. The first evaluation point with a minor above 1e-9 * |v|^2
// is returned; if none exists, every vector of the span has dependent halves.
std::optional<CVector> subspace_contains_independent_pair(
    const std::vector<CVector>& basis);

// ---- Decision engine -------------------------------------------------------

// Exhaustive scan of Theta^m in lexicographic order over phase indices.
// does_pr == false iff some assignment theta makes the null space of
// M(conj theta, F) contain a vector with linearly independent halves; the
// witness for the lexicographically first such assignment is returned.
// Constant assignments are skipped when the system is complete (they can
// only produce f = theta_0 h). |Theta|^m above the budget -> ResourceLimit.
DecisionReport decide_theta_pr(const VectorSystem& g, const PhaseSet& t,
                               const EngineOptions& opts = {});

// Re-checks a witness against the definition: the relative residual must be
// at most opts.witness_tol and f must stay 10 * witness_tol away (relative)
// from every theta * h.
bool verify_witness(const VectorSystem& g, const PhaseSet& t, const Witness& w,
                    const EngineOptions& opts = {});

// ---- Independent oracles ---------------------------------------------------

// Two-phase failure oracle: failure is equivalent to the absence of the
// complement property, independently of which two phases are chosen.
bool fails_2pr_oracle(const VectorSystem& g, Tolerance tol = {});

// Three-phase failure oracle via covers: enumerates label maps G -> {1,2,3}
// and solves, per labeling, the linear system expressing x_j _|_ class j
// together with the span relation; a labeling whose combined null space
// contains an independent pair yields a Cover3 certificate.
std::optional<Cover3> fails_3pr_cover(const VectorSystem& g, const PhaseSet& t,
                                      const EngineOptions& opts = {});

// Closed-form decision for the canonical C^2 family
//   G(a,b,c) = {(1,0), (a,1), (b,1), (c,1)}.
// |T| = 2: fails iff a = b = c. |T| = 3: fails iff two of a, b, c coincide.
// |T| = 4: additionally fails iff (c-a)/(b-a) equals the conjugate of some
// ordering's cross ratio (tolerance 1e-9). Other cardinalities -> InvalidInput.
bool c2_oracle(const Cx& a, const Cx& b, const Cx& c, const PhaseSet& t);

// Closed-form decision for classical PR of G(a,b,c): fails iff b = a or
// (c-a)/(b-a) is real (|Im| < 1e-10).
bool c2_pr_oracle(const Cx& a, const Cx& b, const Cx& c);

// The canonical system G(a,b,c) above, as a VectorSystem.
VectorSystem c2_system(const Cx& a, const Cx& b, const Cx& c);

// ---- Block-determinant construction ----------------------------------------

// Partition of {0, ..., 2d-1} into d pairs with distinct phase values in
// every pair, built by concatenating the value classes in order of
// decreasing multiplicity (ties by first occurrence) and pairing position r
// with position r + d. Top multiplicity above d -> InfeasibleInput.
std::vector<std::pair<int, int>> matching_partition(const std::vector<Cx>& theta,
                                                    int d);

// System with g_{j_r} = g_{k_r} = e_r for the pairs {j_r, k_r} of
// matching_partition; its constraint matrix is square and invertible with
// det = +- conj(prod_r (theta_{j_r} - theta_{k_r})).
VectorSystem construct_invertible_system(const std::vector<Cx>& theta, int d);

// Sign of the permutation relating the constraint matrix of the constructed
// system to the block-diagonal form, so that
//   det M = sign * conj(prod_r (theta_{j_r} - theta_{k_r})).
int block_determinant_sign(const std::vector<std::pair<int, int>>& pairs, int d);

// ---- Lower bound for phase sets containing an arc --------------------------

// Minimal-size lower bound for classical PR in C^d:
//   4d - 4 - 2 a + {+2 | +3 | +1}
// where a is the number of ones in the binary expansion of d-1, the +2
// branch applies for odd d with a = 2 mod 4, the +3 branch for odd d with
// a = 3 mod 4, and +1 otherwise. Requires d >= 2.
int heinosaari_lower_bound(int d);

} // namespace thetapr::prcore
