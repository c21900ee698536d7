#include "gave/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gave/error.hpp"
#include "gave/rng.hpp"

namespace gave {

std::string_view to_string(Ensemble e) {
    switch (e) {
        case Ensemble::GAUSSIAN: return "GAUSSIAN";
        case Ensemble::DIAGONAL_DOMINANT: return "DIAGONAL_DOMINANT";
        case Ensemble::SCALED_CONTRACTION: return "SCALED_CONTRACTION";
        case Ensemble::DIAGONAL: return "DIAGONAL";
    }
    return "GAUSSIAN";
}

std::optional<Ensemble> parse_ensemble(std::string_view name) {
    for (Ensemble e : {Ensemble::GAUSSIAN, Ensemble::DIAGONAL_DOMINANT, Ensemble::SCALED_CONTRACTION,
                       Ensemble::DIAGONAL})
        if (to_string(e) == name) return e;
    return std::nullopt;
}

namespace {

Matrix normal_matrix(const CounterRng& rng, std::size_t n, std::uint64_t offset) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.normal(offset + i * n + j);
    return m;
}

Matrix uniform_matrix(const CounterRng& rng, std::size_t n, std::uint64_t offset) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.symmetric(offset + i * n + j);
    return m;
}

}  // namespace

GaveInstance random_instance(const EnsembleSpec& spec) {
    const std::size_t n = spec.n;
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "ensemble dimension must be at least 1");
    if (spec.target && !(*spec.target > 0.0)) throw Error(ErrorKind::InvalidArgument, "target must be positive");
    const std::uint64_t nn = static_cast<std::uint64_t>(n) * n;

    switch (spec.ensemble) {
        case Ensemble::GAUSSIAN: {
            const CounterRng rng(spec.seed);
            return GaveInstance(normal_matrix(rng, n, 0), normal_matrix(rng, n, nn));
        }
        case Ensemble::DIAGONAL_DOMINANT: {
            const CounterRng rng(spec.seed);
            Matrix a = uniform_matrix(rng, n, 0);
            const Matrix b = uniform_matrix(rng, n, nn);
            const double factor = spec.target.value_or(1.0);
            for (std::size_t i = 0; i < n; ++i) {
                double off = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != i) off += std::abs(a(i, j));
                    off += std::abs(b(i, j));
                }
                a(i, i) = std::copysign(std::abs(a(i, i)) + factor * off, a(i, i));
            }
            return GaveInstance(std::move(a), b);
        }
        case Ensemble::SCALED_CONTRACTION: {
            const double target = spec.target.value_or(0.5);
            for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
                const CounterRng rng(attempt == 0 ? spec.seed : derive_seed(spec.seed, attempt));
                Matrix a = normal_matrix(rng, n, 0);
                Matrix b = normal_matrix(rng, n, nn);
                const LuDecomposition lu(a);
                if (lu.singular()) continue;
                const double c = singular_values(lu.solve(b))[0];
                if (!(c > 0.0) || !std::isfinite(c)) continue;
                return GaveInstance(std::move(a), (target / c) * b);
            }
            throw Error(ErrorKind::SingularMatrix, "100 consecutive draws gave a singular A");
        }
        case Ensemble::DIAGONAL: {
            const CounterRng rng(spec.seed);
            std::vector<double> da(n), db(n);
            for (std::size_t i = 0; i < n; ++i) {
                da[i] = rng.symmetric(i);
                db[i] = rng.symmetric(n + i);
            }
            return GaveInstance(Matrix::diagonal(da), Matrix::diagonal(db));
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown ensemble");
}

GaveInstance shifted_ave_instance(std::size_t n, std::uint64_t seed) {
    const CounterRng rng(seed);
    Matrix g = normal_matrix(rng, n, 0);
    const double shift = singular_values(g)[0] + 1.0 + 0.3 + 0.25 * rng.symmetric(2 * n * n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) += shift;
    return GaveInstance::ave(std::move(g));
}

SeparationResult find_separating_instance(const SeparationQuery& query, const EnsembleSpec& spec,
                                          const CertifyOptions& opt) {
    if (query.must_hold == query.must_fail)
        throw Error(ErrorKind::InvalidArgument, "must_hold and must_fail must differ");
    if (query.budget == 0) throw Error(ErrorKind::InvalidArgument, "budget must be at least 1");

    SeparationResult res;
    res.impossible_pair = implies(query.must_hold, query.must_fail);

    CertifyOptions inner = opt;
    inner.execution = Execution::serial;

    // Per-draw evaluation; an empty optional means "no separation here".
    const auto evaluate = [&](std::size_t i) -> std::optional<SeparatingInstance> {
        EnsembleSpec s = spec;
        s.seed = derive_seed(query.seed, i);
        std::optional<GaveInstance> inst;
        try {
            inst = random_instance(s);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SingularMatrix) return std::nullopt;
            throw;
        }
        Certificate hold = certificate_for(*inst, query.must_hold, inner);
        if (hold.verdict != Verdict::holds) return std::nullopt;
        Certificate fail = certificate_for(*inst, query.must_fail, inner);
        if (fail.verdict != Verdict::fails) return std::nullopt;
        return SeparatingInstance{i, std::move(*inst), std::move(hold), std::move(fail)};
    };

    constexpr std::size_t kBlock = 256;
    std::vector<std::optional<SeparatingInstance>> block(std::min(query.budget, kBlock));
    for (std::size_t start = 0; start < query.budget; start += kBlock) {
        const std::size_t end = std::min(query.budget, start + kBlock);
        const auto count = static_cast<std::int64_t>(end - start);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t k = 0; k < count; ++k)
            block[static_cast<std::size_t>(k)] = evaluate(start + static_cast<std::size_t>(k));
        for (std::size_t i = start; i < end; ++i) {
            if (block[i - start]) {
                res.found = std::move(block[i - start]);
                res.draws = i + 1;
                return res;
            }
        }
    }
    res.draws = query.budget;
    return res;
}

CrosscheckSummary crosscheck_instances(std::span<const GaveInstance> instances, std::size_t rhs_per_instance,
                                       std::uint64_t seed, const CertifyOptions& opt,
                                       const SolveOptions& solve_opt) {
    CrosscheckSummary sum;
    SolveOptions sopt = solve_opt;
    sopt.n_cap = std::max(sopt.n_cap, opt.n_cap_vertex);

    for (std::size_t i = 0; i < instances.size(); ++i) {
        const GaveInstance& inst = instances[i];
        const std::size_t n = inst.n();
        ++sum.instances;
        const HierarchyReport rep = hierarchy_report(inst, opt);

        const CounterRng rng(derive_seed(seed, i));
        bool contradicted = false;
        bool witnessed = false;
        for (std::size_t j = 0; j < rhs_per_instance; ++j) {
            Vector b(n);
            for (std::size_t t = 0; t < n; ++t) b[t] = rng.normal(j * n + t);
            const SolveReport s = enumerate_branch_solutions(inst.with_rhs(std::move(b)), sopt);
            ++sum.rhs_checked;
            if (s.verdict != SolveVerdict::unique) {
                if (rep.final_verdict == FinalVerdict::unique) contradicted = true;
                if (rep.final_verdict == FinalVerdict::not_unique) witnessed = true;
            }
        }

        if (rep.final_verdict == FinalVerdict::not_unique && !witnessed) {
            const Certificate* v = rep.find(ConditionId::VERTEX_NS);
            if (v && v->verdict == Verdict::fails) {
                const auto& w = std::get<VertexWitness>(v->witness);
                const BoxDiagonal point = singular_box_point(inst.a(), inst.b(), w);
                const NonUniquenessWitness nu = realize_nonuniqueness(inst, point, derive_seed(seed, ~i));
                const SolveReport s = enumerate_branch_solutions(inst.with_rhs(nu.b), sopt);
                witnessed = s.verdict != SolveVerdict::unique;
            }
        }

        switch (rep.final_verdict) {
            case FinalVerdict::unique: ++sum.unique; break;
            case FinalVerdict::not_unique:
                ++sum.not_unique;
                ++(witnessed ? sum.not_unique_witnessed : sum.not_unique_unwitnessed);
                break;
            case FinalVerdict::undecided: ++sum.undecided; break;
        }
        if (rep.final_verdict == FinalVerdict::undecided) continue;
        if (contradicted) {
            ++sum.disagreements;
        } else {
            ++sum.agreements;
        }
        if (contradicted || (rep.final_verdict == FinalVerdict::not_unique && !witnessed)) sum.flagged.push_back(i);
    }
    return sum;
}

CrosscheckSummary uniqueness_crosscheck(const EnsembleSpec& spec, std::size_t instances,
                                        std::size_t rhs_per_instance, const CertifyOptions& opt,
                                        const SolveOptions& solve_opt) {
    std::vector<GaveInstance> insts;
    insts.reserve(instances);
    for (std::size_t i = 0; i < instances; ++i) {
        EnsembleSpec s = spec;
        s.seed = derive_seed(spec.seed, i);
        insts.push_back(random_instance(s));
    }
    return crosscheck_instances(insts, rhs_per_instance, derive_seed(spec.seed, instances), opt, solve_opt);
}

}  // namespace gave
