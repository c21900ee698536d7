#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gave/certify.hpp"

namespace gave {

enum class SolveVerdict { unique, multiple, none, infinite_family, undecided };
enum class Method { ENUMERATE, PICARD, NEWTON };

std::string_view to_string(SolveVerdict v);
std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct Solution {
    Vector x;
    SignVector pattern;
    double residual = 0.0;
};

struct SolveReport {
    Method method = Method::ENUMERATE;
    SolveVerdict verdict = SolveVerdict::undecided;
    std::vector<Solution> solutions;
    std::size_t iterations = 0;

    // Iterative methods: 2-norm of each step x^{k+1} - x^k.
    std::vector<double> step_norms;
    // sigma_1(A^{-1}B) when it was computed.
    std::optional<double> contraction;
    std::optional<double> residual_bound;

    // Enumeration bookkeeping.
    std::uint64_t branches = 0;
    std::uint64_t singular_branches = 0;

    std::optional<SignVector> context_pattern;
    std::string note;
};

struct SolveOptions {
    double tol = 1e-8;            // iteration stopping tolerance
    double accept = 1e-8;         // residual acceptance, scaled by 1 + |b|_inf
    double sign_tol = 1e-12;      // s_i * x_i >= -sign_tol accepts a branch solution
    double dedup = 1e-8;          // inf-norm radius for merging solutions
    double margin = 1e-10;        // strict-inequality band for the contraction check
    std::size_t max_iter = 200;
    std::size_t n_cap = 14;
    Execution execution = Execution::parallel;
};

/// |A x + B |x| - b|_inf.
double residual(const GaveInstance& inst, const Vector& x);

/// Exact ground truth: solves every sign branch (A + B diag(s)) x = b.
/// Throws CapExceeded when n > opt.n_cap.
SolveReport enumerate_branch_solutions(const GaveInstance& inst, const SolveOptions& opt = {});

/// x^{k+1} = A^{-1}(b - B|x^k|); returns undecided without iterating when
/// sigma_1(A^{-1}B) < 1 cannot be certified.
SolveReport picard_solve(const GaveInstance& inst, const SolveOptions& opt = {});

/// Semismooth Newton: (A + B diag(sign x^k)) x^{k+1} = b, starting from the
/// all-plus pattern, stopping on a residual-passing iterate or a revisited pattern.
SolveReport newton_solve(const GaveInstance& inst, const SolveOptions& opt = {});

SolveReport solve(const GaveInstance& inst, Method method, const SolveOptions& opt = {});

struct LcpSolution {
    Vector z;
    Vector w;
};

/// Every solution of LCP(M, q) by enumerating complementary bases; only for small n.
std::vector<LcpSolution> enumerate_lcp_solutions(const LcpInstance& lcp, double tol = 1e-10, double dedup = 1e-8);

/// Two distinct solutions of A x + B|x| = b for a right-hand side built from
/// a singular point D-bar of the box.
struct NonUniquenessWitness {
    Vector b;
    Vector x1;
    Vector x2;
};

NonUniquenessWitness realize_nonuniqueness(const GaveInstance& inst, const BoxDiagonal& singular_point,
                                           std::uint64_t seed);

}  // namespace gave
