#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gave/certify.hpp"
#include "gave/solve.hpp"

namespace gave {

enum class Ensemble { GAUSSIAN, DIAGONAL_DOMINANT, SCALED_CONTRACTION, DIAGONAL };

std::string_view to_string(Ensemble e);
std::optional<Ensemble> parse_ensemble(std::string_view name);

/// Seeded instance family.
///
/// Entries come from CounterRng(seed): A uses stream indices [0, n^2) and B
/// uses [n^2, 2 n^2), row-major. Uniform entries are `symmetric` in [-1,1),
/// normal entries are Box-Muller `normal` draws.
///  - GAUSSIAN: A, B standard normal.
///  - DIAGONAL_DOMINANT: A, B uniform, then a_ii keeps its sign and gets
///    magnitude |a_ii| + target * (sum_{j!=i} |a_ij| + sum_j |b_ij|);
///    target defaults to 1, which makes every A + B*D strictly dominant.
///  - SCALED_CONTRACTION: GAUSSIAN, then B *= target / sigma_1(A^{-1}B)
///    (target defaults to 0.5). A singular draw is retried with key
///    derive_seed(seed, attempt), at most 100 attempts.
///  - DIAGONAL: a_i = symmetric(i), b_i = symmetric(n + i).
struct EnsembleSpec {
    std::size_t n = 2;
    Ensemble ensemble = Ensemble::GAUSSIAN;
    std::optional<double> target;
    std::uint64_t seed = 0;
};

GaveInstance random_instance(const EnsembleSpec& spec);

/// AVE instance with sigma_n(A + I) > 2: A = G + (sigma_1(G) + 1 + u) I for
/// a normal G and u in [0.05, 0.55).
GaveInstance shifted_ave_instance(std::size_t n, std::uint64_t seed);

struct SeparationQuery {
    ConditionId must_hold{};
    ConditionId must_fail{};
    std::size_t budget = 1000;
    std::uint64_t seed = 0;
};

struct SeparatingInstance {
    std::size_t draw_index = 0;
    GaveInstance instance;
    Certificate hold;
    Certificate fail;
};

struct SeparationResult {
    /// The pair contradicts a known implication; the search still runs.
    bool impossible_pair = false;
    std::optional<SeparatingInstance> found;
    std::size_t draws = 0;  // draws up to and including the witness, or the budget
};

/// Draw i uses the ensemble of `spec` with seed derive_seed(query.seed, i);
/// spec.seed is not used. The witness is the smallest satisfying draw index.
SeparationResult find_separating_instance(const SeparationQuery& query, const EnsembleSpec& spec,
                                          const CertifyOptions& opt = {});

struct CrosscheckSummary {
    std::size_t instances = 0;
    std::size_t rhs_checked = 0;
    std::size_t unique = 0;
    std::size_t not_unique = 0;
    std::size_t undecided = 0;
    std::size_t agreements = 0;
    std::size_t disagreements = 0;
    std::size_t not_unique_witnessed = 0;
    std::size_t not_unique_unwitnessed = 0;
    std::vector<std::size_t> flagged;  // instance indices with a disagreement or missing witness
};

/// Compares the certified verdict of each instance with the enumeration
/// oracle over `rhs_per_instance` right-hand sides (normal entries from
/// CounterRng(derive_seed(seed, i))). For not-unique instances a targeted
/// right-hand side is built from the VERTEX_NS witness when random ones do
/// not already show != 1 solutions.
CrosscheckSummary crosscheck_instances(std::span<const GaveInstance> instances, std::size_t rhs_per_instance,
                                       std::uint64_t seed, const CertifyOptions& opt = {},
                                       const SolveOptions& solve_opt = {});

/// Instance i is random_instance(spec with seed derive_seed(spec.seed, i)).
CrosscheckSummary uniqueness_crosscheck(const EnsembleSpec& spec, std::size_t instances,
                                        std::size_t rhs_per_instance, const CertifyOptions& opt = {},
                                        const SolveOptions& solve_opt = {});

}  // namespace gave
