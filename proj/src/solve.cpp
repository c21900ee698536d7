#include "gave/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "gave/error.hpp"
#include "gave/rng.hpp"
#include "gave/sweeps.hpp"

namespace gave {

std::string_view to_string(SolveVerdict v) {
    switch (v) {
        case SolveVerdict::unique: return "unique";
        case SolveVerdict::multiple: return "multiple";
        case SolveVerdict::none: return "none";
        case SolveVerdict::infinite_family: return "infinite_family";
        case SolveVerdict::undecided: return "undecided";
    }
    return "undecided";
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::ENUMERATE: return "ENUMERATE";
        case Method::PICARD: return "PICARD";
        case Method::NEWTON: return "NEWTON";
    }
    return "ENUMERATE";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "enumerate" || name == "ENUMERATE") return Method::ENUMERATE;
    if (name == "picard" || name == "PICARD") return Method::PICARD;
    if (name == "newton" || name == "NEWTON") return Method::NEWTON;
    return std::nullopt;
}

double residual(const GaveInstance& inst, const Vector& x) {
    const Vector& b = inst.require_rhs();
    if (x.size() != inst.n()) throw Error(ErrorKind::DimensionError, "residual: x has the wrong length");
    return norm_inf(inst.a() * x + inst.b() * abs(x) - b);
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double accept_threshold(const GaveInstance& inst, const SolveOptions& opt) {
    return opt.accept * (1.0 + norm_inf(inst.require_rhs()));
}

bool sign_consistent(const Vector& x, const SignVector& s, double tol) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (s[i] * x[i] < -tol) return false;
    return true;
}

// Visits every k-subset of {0..n-1} as a sorted index vector.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

enum class BranchKind { none, point, segment };

struct BranchOutcome {
    BranchKind kind = BranchKind::none;
    bool singular = false;
    Vector x;
};

// Singular branch: the solutions of M x = b form x_p + N t. With C = diag(s) N
// and c = s * x_p the sign-feasible part is the polyhedron {t : C t + c >= 0},
// which is pointed because N has orthonormal columns. It is nonempty iff it
// has a vertex (k active constraints), and it is more than a point iff a
// second vertex or a recession ray (k-1 active constraints) exists.
BranchOutcome analyze_singular_branch(const Matrix& m, const SignVector& s, const Vector& rhs,
                                      const SolveOptions& opt, double accept_tol) {
    BranchOutcome out;
    out.singular = true;
    const std::size_t n = m.rows();
    const Svd f = svd(m);
    const double sv_tol = std::max(rank_tolerance(m), static_cast<double>(n) * kEps * f.sigma[0]);
    std::size_t rank = 0;
    while (rank < n && f.sigma[rank] > sv_tol) ++rank;

    Vector xp(n);
    for (std::size_t r = 0; r < rank; ++r) {
        double utb = 0.0;
        for (std::size_t i = 0; i < n; ++i) utb += f.u(i, r) * rhs[i];
        const double coef = utb / f.sigma[r];
        for (std::size_t i = 0; i < n; ++i) xp[i] += coef * f.v(i, r);
    }
    if (norm_inf(m * xp - rhs) > accept_tol) return out;  // inconsistent

    const std::size_t k = n - rank;
    if (k == 0) {
        if (sign_consistent(xp, s, opt.sign_tol)) {
            out.kind = BranchKind::point;
            out.x = std::move(xp);
        }
        return out;
    }

    Matrix c(n, k);
    Vector c0(n);
    for (std::size_t i = 0; i < n; ++i) {
        c0[i] = s[i] * xp[i];
        for (std::size_t j = 0; j < k; ++j) c(i, j) = s[i] * f.v(i, rank + j);
    }
    const double feas_tol = opt.sign_tol * std::max(1.0, norm_inf(xp));
    const auto feasible = [&](const Vector& t) {
        for (std::size_t i = 0; i < n; ++i) {
            double v = c0[i];
            for (std::size_t j = 0; j < k; ++j) v += c(i, j) * t[j];
            if (v < -feas_tol) return false;
        }
        return true;
    };
    const auto to_x = [&](const Vector& t) {
        Vector x = xp;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) x[i] += f.v(i, rank + j) * t[j];
        return x;
    };

    std::vector<Vector> vertices;
    bool second_vertex = false;
    for_each_subset(n, k, [&](const std::vector<std::size_t>& rows) {
        if (second_vertex) return;
        Matrix cs(k, k);
        Vector rs(k);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t j = 0; j < k; ++j) cs(r, j) = c(rows[r], j);
            rs[r] = -c0[rows[r]];
        }
        const LuDecomposition lu(cs);
        if (lu.singular()) return;
        const Vector t = lu.solve(rs);
        if (!feasible(t)) return;
        for (const Vector& v : vertices)
            if (norm_inf(to_x(v) - to_x(t)) > opt.dedup) second_vertex = true;
        if (vertices.empty()) vertices.push_back(t);
    });
    if (vertices.empty()) return out;

    out.x = to_x(vertices.front());
    if (second_vertex) {
        out.kind = BranchKind::segment;
        return out;
    }

    // Recession ray: d spanning the null space of k-1 rows of C with C d >= 0.
    bool ray = false;
    const double ray_tol = 1e-12;
    for_each_subset(n, k - 1, [&](const std::vector<std::size_t>& rows) {
        if (ray) return;
        Matrix cs(k, k);  // k-1 constraint rows padded with a zero row
        for (std::size_t r = 0; r + 1 < k; ++r)
            for (std::size_t j = 0; j < k; ++j) cs(r, j) = c(rows[r], j);
        const Svd g = svd(cs);
        if (k > 1 && g.sigma[k - 2] <= 1e-12 * std::max(1.0, g.sigma[0])) return;
        Vector d(k);
        for (std::size_t j = 0; j < k; ++j) d[j] = g.v(j, k - 1);
        for (const double dir : {1.0, -1.0}) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                double v = 0.0;
                for (std::size_t j = 0; j < k; ++j) v += c(i, j) * d[j] * dir;
                if (v < -ray_tol) ok = false;
            }
            if (ok) ray = true;
        }
    });
    out.kind = ray ? BranchKind::segment : BranchKind::point;
    return out;
}

BranchOutcome analyze_branch(const GaveInstance& inst, std::uint64_t mask, const SolveOptions& opt,
                             double accept_tol) {
    const Vector& rhs = inst.require_rhs();
    const Matrix m = vertex_matrix(inst.a(), inst.b(), mask);
    const SignVector s = SignVector::from_mask(mask, inst.n());
    const LuDecomposition lu(m);
    if (lu.singular()) return analyze_singular_branch(m, s, rhs, opt, accept_tol);
    BranchOutcome out;
    Vector x = lu.solve(rhs);
    if (sign_consistent(x, s, opt.sign_tol)) {
        out.kind = BranchKind::point;
        out.x = std::move(x);
    }
    return out;
}

}  // namespace

SolveReport enumerate_branch_solutions(const GaveInstance& inst, const SolveOptions& opt) {
    const std::size_t n = inst.n();
    if (n > opt.n_cap || n >= 63)
        throw Error(ErrorKind::CapExceeded,
                    "n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(opt.n_cap));
    const double accept_tol = accept_threshold(inst, opt);
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<BranchOutcome> outcomes(total);

    if (opt.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(total); ++mask)
            outcomes[static_cast<std::size_t>(mask)] =
                analyze_branch(inst, static_cast<std::uint64_t>(mask), opt, accept_tol);
    } else {
        for (std::uint64_t mask = 0; mask < total; ++mask) outcomes[mask] = analyze_branch(inst, mask, opt, accept_tol);
    }

    SolveReport rep;
    rep.method = Method::ENUMERATE;
    rep.branches = total;
    bool family = false;
    std::size_t rejected = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        BranchOutcome& o = outcomes[mask];
        if (o.singular) ++rep.singular_branches;
        if (o.kind == BranchKind::none) continue;
        const double r = residual(inst, o.x);
        if (r > accept_tol) {
            ++rejected;
            continue;
        }
        if (o.kind == BranchKind::segment) family = true;
        const bool duplicate = std::any_of(rep.solutions.begin(), rep.solutions.end(), [&](const Solution& s) {
            return norm_inf(s.x - o.x) <= opt.dedup;
        });
        if (!duplicate) rep.solutions.push_back({std::move(o.x), SignVector::from_mask(mask, n), r});
    }
    if (rejected > 0) rep.note = std::to_string(rejected) + " branch solutions rejected by the residual check";

    if (family) {
        rep.verdict = SolveVerdict::infinite_family;
    } else if (rep.solutions.empty()) {
        rep.verdict = SolveVerdict::none;
    } else {
        rep.verdict = rep.solutions.size() == 1 ? SolveVerdict::unique : SolveVerdict::multiple;
    }
    return rep;
}

SolveReport picard_solve(const GaveInstance& inst, const SolveOptions& opt) {
    const Vector& b = inst.require_rhs();
    const LuDecomposition lu_a(inst.a());
    if (lu_a.singular()) throw Error(ErrorKind::SingularMatrix, "Picard iteration needs A nonsingular");
    const Matrix inv_a_b = lu_a.solve(inst.b());
    const double c = singular_values(inv_a_b)[0];

    SolveReport rep;
    rep.method = Method::PICARD;
    rep.contraction = c;
    if (below_one(c, opt.margin) != Verdict::holds) {
        rep.verdict = SolveVerdict::undecided;
        rep.note = "sigma_1(A^-1 B) is not below 1; the fixed-point map is not a certified contraction";
        return rep;
    }

    const Vector x0 = lu_a.solve(b);
    Vector x = x0;
    for (std::size_t k = 1; k <= opt.max_iter; ++k) {
        Vector next = x0 - inv_a_b * abs(x);
        const Vector step = next - x;
        rep.step_norms.push_back(norm_2(step));
        x = std::move(next);
        rep.iterations = k;
        if (norm_inf(step) <= opt.tol) {
            rep.residual_bound = opt.tol * (1.0 + norm_inf(b)) / (1.0 - c);
            const double r = residual(inst, x);
            rep.solutions.push_back({x, SignVector::of(x), r});
            rep.verdict = SolveVerdict::unique;
            return rep;
        }
    }
    throw Error(ErrorKind::NoConvergence,
                "Picard iteration did not reach the step tolerance in " + std::to_string(opt.max_iter) + " steps");
}

SolveReport newton_solve(const GaveInstance& inst, const SolveOptions& opt) {
    const Vector& b = inst.require_rhs();
    const std::size_t n = inst.n();
    const double accept_tol = opt.tol * (1.0 + norm_inf(b));

    SolveReport rep;
    rep.method = Method::NEWTON;

    // Uniqueness is only claimed when the cheap contraction certificate holds.
    bool certified_unique = false;
    if (const LuDecomposition lu_a(inst.a()); !lu_a.singular()) {
        const double c = singular_values(lu_a.solve(inst.b()))[0];
        rep.contraction = c;
        certified_unique = below_one(c, opt.margin) == Verdict::holds;
    }

    SignVector s = SignVector::from_mask(0, n);
    std::set<SignVector> visited;
    std::optional<Vector> prev;
    for (std::size_t k = 1; k <= opt.max_iter; ++k) {
        const LuDecomposition lu(inst.a() + scale_columns(inst.b(), s.as_doubles()));
        if (lu.singular()) {
            rep.verdict = SolveVerdict::undecided;
            rep.context_pattern = s;
            rep.note = "branch matrix A + B diag(s) is singular";
            return rep;
        }
        Vector x = lu.solve(b);
        rep.iterations = k;
        double step = std::numeric_limits<double>::infinity();
        if (prev) {
            step = norm_inf(x - *prev);
            rep.step_norms.push_back(norm_2(x - *prev));
        }
        const double r = residual(inst, x);
        if (r <= accept_tol) {
            rep.solutions.push_back({x, SignVector::of(x), r});
            rep.verdict = certified_unique ? SolveVerdict::unique : SolveVerdict::undecided;
            if (!certified_unique) rep.note = "solution found; uniqueness not certified";
            return rep;
        }
        if (step <= opt.tol) {
            rep.verdict = SolveVerdict::undecided;
            rep.context_pattern = s;
            rep.note = "step below tolerance without a residual-passing iterate";
            return rep;
        }
        visited.insert(s);
        SignVector next = SignVector::of(x);
        if (visited.contains(next))
            throw Error(ErrorKind::NoConvergence, "Newton sign patterns cycle without a residual-passing iterate");
        s = std::move(next);
        prev = std::move(x);
    }
    throw Error(ErrorKind::NoConvergence,
                "Newton iteration exceeded " + std::to_string(opt.max_iter) + " steps");
}

SolveReport solve(const GaveInstance& inst, Method method, const SolveOptions& opt) {
    switch (method) {
        case Method::ENUMERATE: return enumerate_branch_solutions(inst, opt);
        case Method::PICARD: return picard_solve(inst, opt);
        case Method::NEWTON: return newton_solve(inst, opt);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method");
}

std::vector<LcpSolution> enumerate_lcp_solutions(const LcpInstance& lcp, double tol, double dedup) {
    const std::size_t n = lcp.m.rows();
    if (n >= 31) throw Error(ErrorKind::CapExceeded, "LCP basis enumeration is limited to small n");
    std::vector<LcpSolution> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        // z is supported on J = mask, and w vanishes there.
        Vector z(n);
        if (mask != 0) {
            const Matrix mjj = principal_submatrix(lcp.m, mask);
            std::vector<std::size_t> j;
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1U) j.push_back(i);
            Vector rhs(j.size());
            for (std::size_t r = 0; r < j.size(); ++r) rhs[r] = -lcp.q[j[r]];
            const LuDecomposition lu(mjj);
            if (lu.singular()) continue;
            const Vector zj = lu.solve(rhs);
            for (std::size_t r = 0; r < j.size(); ++r) z[j[r]] = zj[r];
        }
        const Vector w = lcp.m * z + lcp.q;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = z[i] >= -tol && w[i] >= -tol;
        if (!ok) continue;
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const LcpSolution& s) {
            return norm_inf(s.z - z) <= dedup && norm_inf(s.w - w) <= dedup;
        });
        if (!duplicate) out.push_back({std::move(z), w});
    }
    return out;
}

NonUniquenessWitness realize_nonuniqueness(const GaveInstance& inst, const BoxDiagonal& singular_point,
                                           std::uint64_t seed) {
    const std::size_t n = inst.n();
    const std::vector<double>& d = singular_point.entries;
    if (d.size() != n) throw Error(ErrorKind::DimensionError, "singular point has the wrong length");
    const Svd f = svd(inst.a() + scale_columns(inst.b(), d));
    Vector y = f.v.column(n - 1);
    y = (1.0 / norm_inf(y)) * y;

    // Split y = x1 - x2 with |x1| - |x2| = D y, coordinate by coordinate.
    const CounterRng rng(seed);
    Vector x1(n), x2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = 0.75 + 0.25 * rng.symmetric(i);
        if (d[i] == 1.0) {
            x2[i] = r + std::max(0.0, -y[i]);
            x1[i] = x2[i] + y[i];
        } else if (d[i] == -1.0) {
            x2[i] = -r - std::max(0.0, y[i]);
            x1[i] = x2[i] + y[i];
        } else if (y[i] == 0.0) {
            x1[i] = x2[i] = r;
        } else {
            const double sg = y[i] > 0.0 ? 1.0 : -1.0;
            x1[i] = 0.5 * y[i] * (1.0 + d[i] * sg);
            x2[i] = -0.5 * y[i] * (1.0 - d[i] * sg);
        }
    }
    Vector b = inst.a() * x1 + inst.b() * abs(x1);
    return {std::move(b), std::move(x1), std::move(x2)};
}

}  // namespace gave
