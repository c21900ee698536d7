#include "gave/certify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "gave/error.hpp"
#include "gave/rng.hpp"
#include "gave/sweeps.hpp"

namespace gave {

// ---------------------------------------------------------------------------
// Domain types

GaveInstance::GaveInstance(Matrix a, Matrix b, std::optional<Vector> rhs)
    : a_(std::move(a)), b_(std::move(b)), rhs_(std::move(rhs)) {
    if (!a_.square() || a_.rows() == 0)
        throw Error(ErrorKind::DimensionError, "A must be square and non-empty");
    if (b_.rows() != a_.rows() || b_.cols() != a_.cols())
        throw Error(ErrorKind::DimensionError, "B must have the same shape as A");
    if (rhs_ && rhs_->size() != a_.rows())
        throw Error(ErrorKind::DimensionError, "right-hand side length does not match A");
    if (!a_.all_finite() || !b_.all_finite() || (rhs_ && !all_finite(*rhs_)))
        throw Error(ErrorKind::InvalidArgument, "instance entries must be finite");
}

GaveInstance GaveInstance::ave(Matrix a, std::optional<Vector> rhs) {
    const std::size_t n = a.rows();
    return GaveInstance(std::move(a), Matrix::identity(n), std::move(rhs));
}

const Vector& GaveInstance::require_rhs() const {
    if (!rhs_) throw Error(ErrorKind::InvalidArgument, "operation requires a right-hand side b");
    return *rhs_;
}

GaveInstance GaveInstance::with_rhs(Vector rhs) const { return GaveInstance(a_, b_, std::move(rhs)); }

SignVector::SignVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
        if (e != 1 && e != -1) throw Error(ErrorKind::InvalidArgument, "sign entries must be -1 or +1");
}

SignVector SignVector::from_mask(std::uint64_t mask, std::size_t n) {
    std::vector<int> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = ((mask >> i) & 1U) ? -1 : 1;
    return SignVector(std::move(e));
}

SignVector SignVector::of(const Vector& x) {
    std::vector<int> e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) e[i] = x[i] < 0.0 ? -1 : 1;
    return SignVector(std::move(e));
}

std::uint64_t SignVector::mask() const noexcept {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] < 0) m |= std::uint64_t{1} << i;
    return m;
}

std::vector<double> SignVector::as_doubles() const {
    return {entries_.begin(), entries_.end()};
}

namespace {

BoxDiagonal make_box(std::vector<double> entries, double lo, double hi) {
    for (double d : entries)
        if (!(d >= lo && d <= hi))
            throw Error(ErrorKind::RangeViolation, "diagonal entry " + std::to_string(d) + " outside [" +
                                                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return BoxDiagonal{std::move(entries), lo, hi};
}

}  // namespace

BoxDiagonal BoxDiagonal::symmetric(std::vector<double> entries) { return make_box(std::move(entries), -1.0, 1.0); }

BoxDiagonal BoxDiagonal::unit(std::vector<double> entries) { return make_box(std::move(entries), 0.0, 1.0); }

BoxDiagonal box_from_unit(const BoxDiagonal& d) {
    if (d.lower != 0.0 || d.upper != 1.0)
        throw Error(ErrorKind::RangeViolation, "box_from_unit expects a [0,1] diagonal");
    std::vector<double> out(d.entries.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(d.entries[i] >= 0.0 && d.entries[i] <= 1.0))
            throw Error(ErrorKind::RangeViolation, "entry outside [0,1]");
        out[i] = 1.0 - 2.0 * d.entries[i];
    }
    return BoxDiagonal{std::move(out), -1.0, 1.0};
}

BoxDiagonal unit_from_box(const BoxDiagonal& d) {
    if (d.lower != -1.0 || d.upper != 1.0)
        throw Error(ErrorKind::RangeViolation, "unit_from_box expects a [-1,1] diagonal");
    std::vector<double> out(d.entries.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(d.entries[i] >= -1.0 && d.entries[i] <= 1.0))
            throw Error(ErrorKind::RangeViolation, "entry outside [-1,1]");
        out[i] = 0.5 * (1.0 - d.entries[i]);
    }
    return BoxDiagonal{std::move(out), 0.0, 1.0};
}

std::string_view to_string(ConditionId id) {
    switch (id) {
        case ConditionId::VERTEX_NS: return "VERTEX_NS";
        case ConditionId::PMATRIX_NS: return "PMATRIX_NS";
        case ConditionId::RHO_ABS: return "RHO_ABS";
        case ConditionId::RHO_BOX_SAMPLED: return "RHO_BOX_SAMPLED";
        case ConditionId::SIGMA1_INVAB: return "SIGMA1_INVAB";
        case ConditionId::SIGMAN_BINVA: return "SIGMAN_BINVA";
        case ConditionId::SIGMA_PAIR_37: return "SIGMA_PAIR_37";
        case ConditionId::SIGMA_PAIR_ABS_38: return "SIGMA_PAIR_ABS_38";
        case ConditionId::AVE_SHIFT: return "AVE_SHIFT";
    }
    return "UNKNOWN";
}

std::optional<ConditionId> parse_condition(std::string_view name) {
    for (ConditionId id : kAllConditions)
        if (to_string(id) == name) return id;
    return std::nullopt;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

std::string_view to_string(FinalVerdict v) {
    switch (v) {
        case FinalVerdict::unique: return "unique";
        case FinalVerdict::not_unique: return "not_unique";
        case FinalVerdict::undecided: return "undecided";
    }
    return "undecided";
}

Verdict below_one(double value, double margin) {
    if (value <= 1.0 - margin) return Verdict::holds;
    if (value >= 1.0 + margin) return Verdict::fails;
    return Verdict::undecided;
}

namespace {

Verdict above_one(double value, double margin) {
    if (value >= 1.0 + margin) return Verdict::holds;
    if (value <= 1.0 - margin) return Verdict::fails;
    return Verdict::undecided;
}

Certificate undecided(ConditionId id, std::string note) {
    Certificate c;
    c.id = id;
    c.verdict = Verdict::undecided;
    c.note = std::move(note);
    return c;
}

}  // namespace

std::optional<double> Certificate::evidence_value(std::string_view name) const {
    for (const auto& [k, v] : evidence)
        if (k == name) return v;
    return std::nullopt;
}

Vector LcpInstance::recover_x(const Vector& w, const Vector& z) { return 0.5 * (w - z); }

LcpInstance reduce_to_lcp(const GaveInstance& inst) {
    const LuDecomposition sum(inst.a() + inst.b());
    if (sum.singular()) throw Error(ErrorKind::SingularSum, "A + B is singular");
    return LcpInstance{sum.solve(inst.a() - inst.b()), 2.0 * sum.solve(inst.require_rhs())};
}

// ---------------------------------------------------------------------------
// Exact certificates

Certificate pmatrix_certificate(const Matrix& m, std::size_t n_cap, Execution exec) {
    if (!m.square()) throw Error(ErrorKind::DimensionError, "P-matrix test needs a square matrix");
    const std::size_t n = m.rows();
    if (n > n_cap)
        return undecided(ConditionId::PMATRIX_NS,
                         "n = " + std::to_string(n) + " exceeds the principal-minor cap " + std::to_string(n_cap));

    const MinorSweep sw = exec == Execution::parallel ? minor_sweep(m) : serial::minor_sweep(m);
    Certificate c;
    c.id = ConditionId::PMATRIX_NS;
    c.cost.minors = sw.evaluated;
    if (!sw.first_bad_mask) {
        c.verdict = Verdict::holds;
        c.evidence = {{"min_log_minor", sw.min_log}};
        return c;
    }
    c.verdict = Verdict::fails;
    IndexSet w;
    for (std::size_t i = 0; i < n; ++i)
        if ((*sw.first_bad_mask >> i) & 1U) w.indices.push_back(i);
    c.witness = std::move(w);
    c.evidence = {{"witness_minor_sign", static_cast<double>(sw.bad_det.as_int())}};
    if (sw.bad_det.nonzero()) c.evidence.emplace_back("witness_minor_log", sw.bad_det.log_magnitude);
    return c;
}

Certificate vertex_regularity_certificate(const Matrix& a, const Matrix& b, std::size_t n_cap, Execution exec) {
    if (!a.square() || b.rows() != a.rows() || b.cols() != a.cols())
        throw Error(ErrorKind::DimensionError, "vertex test needs square A and B of equal size");
    const std::size_t n = a.rows();
    if (n > n_cap)
        return undecided(ConditionId::VERTEX_NS,
                         "n = " + std::to_string(n) + " exceeds the vertex cap " + std::to_string(n_cap));

    const VertexSweep sw = exec == Execution::parallel ? vertex_sweep(a, b) : serial::vertex_sweep(a, b);
    Certificate c;
    c.id = ConditionId::VERTEX_NS;
    c.cost.determinants = sw.evaluated;
    if (!sw.first_bad) {
        c.verdict = Verdict::holds;
        c.evidence = {{"reference_sign", static_cast<double>(static_cast<int>(sw.reference))},
                      {"min_log_abs_det", sw.min_log},
                      {"max_log_abs_det", sw.max_log}};
        return c;
    }
    const std::uint64_t rank = *sw.first_bad;
    VertexWitness w;
    w.vertex = SignVector::from_mask(gray_code(rank), n);
    if (sw.bad_det.sign == Sign::zero) {
        w.kind = VertexFailure::zero;
    } else {
        w.kind = VertexFailure::flip;
        w.flip_coordinate = static_cast<std::size_t>(std::countr_zero(gray_code(rank) ^ gray_code(rank - 1)));
    }
    c.verdict = Verdict::fails;
    c.witness = std::move(w);
    c.evidence = {{"reference_sign", static_cast<double>(static_cast<int>(sw.reference))},
                  {"witness_sign", static_cast<double>(sw.bad_det.as_int())},
                  {"witness_rank", static_cast<double>(rank)}};
    if (sw.bad_det.nonzero()) c.evidence.emplace_back("witness_log_abs_det", sw.bad_det.log_magnitude);
    return c;
}

// ---------------------------------------------------------------------------
// Singular-value and spectral-radius certificates

std::vector<Certificate> spectral_certificates(const GaveInstance& inst, double margin) {
    const Matrix& a = inst.a();
    const Matrix& b = inst.b();
    const LuDecomposition lu_a(a);
    const LuDecomposition lu_b(b);
    const Vector sv_a = singular_values(a);
    const double sigman_a = sv_a[sv_a.size() - 1];
    // A numerically singular A has sigma_n(A) = 0 and both pair conditions fail.
    const bool a_rank_deficient = lu_a.singular() || sigman_a <= static_cast<double>(inst.n()) *
                                                                     std::numeric_limits<double>::epsilon() * sv_a[0];

    std::vector<Certificate> out;

    std::optional<Matrix> inv_a_b;
    if (!lu_a.singular()) inv_a_b = lu_a.solve(b);

    // rho(|A^{-1}B|) < 1
    if (inv_a_b) {
        const double rho = spectral_radius_nonneg_or_general(abs(*inv_a_b));
        Certificate c;
        c.id = ConditionId::RHO_ABS;
        c.verdict = below_one(rho, margin);
        c.evidence = {{"rho_abs_invA_B", rho}, {"margin", rho - 1.0}};
        out.push_back(std::move(c));
    } else {
        out.push_back(undecided(ConditionId::RHO_ABS, "A is singular"));
    }

    // sigma_1(A^{-1}B) < 1
    if (inv_a_b) {
        const double s1 = singular_values(*inv_a_b)[0];
        Certificate c;
        c.id = ConditionId::SIGMA1_INVAB;
        c.verdict = below_one(s1, margin);
        c.evidence = {{"sigma1_invA_B", s1}, {"margin", s1 - 1.0}};
        out.push_back(std::move(c));
    } else {
        out.push_back(undecided(ConditionId::SIGMA1_INVAB, "A is singular"));
    }

    // sigma_n(B^{-1}A) > 1
    if (!lu_b.singular()) {
        const Vector sv = singular_values(lu_b.solve(a));
        const double sn = sv[sv.size() - 1];
        Certificate c;
        c.id = ConditionId::SIGMAN_BINVA;
        c.verdict = above_one(sn, margin);
        c.evidence = {{"sigman_invB_A", sn}, {"margin", sn - 1.0}};
        out.push_back(std::move(c));
    } else {
        out.push_back(undecided(ConditionId::SIGMAN_BINVA, "B is singular"));
    }

    // sigma_1(B) < sigma_n(A) and sigma_1(|B|) < sigma_n(A) as ratios.
    const auto pair_certificate = [&](ConditionId id, double s1b, const char* name) {
        Certificate c;
        c.id = id;
        const double ratio = a_rank_deficient ? std::numeric_limits<double>::infinity() : s1b / sigman_a;
        c.verdict = a_rank_deficient ? Verdict::fails : below_one(ratio, margin);
        c.evidence = {{name, s1b}, {"sigman_A", sigman_a}, {"margin", sigman_a - s1b}};
        if (std::isfinite(ratio)) c.evidence.emplace_back("ratio", ratio);
        return c;
    };
    out.push_back(pair_certificate(ConditionId::SIGMA_PAIR_37, singular_values(b)[0], "sigma1_B"));
    out.push_back(pair_certificate(ConditionId::SIGMA_PAIR_ABS_38, singular_values(abs(b))[0], "sigma1_absB"));

    // sigma_n(A + I) > 2, only meaningful for the AVE
    if (inst.is_ave()) {
        const Vector sv = singular_values(a + Matrix::identity(inst.n()));
        const double sn = sv[sv.size() - 1];
        Certificate c;
        c.id = ConditionId::AVE_SHIFT;
        c.verdict = above_one(0.5 * sn, margin);
        c.evidence = {{"sigman_A_plus_I", sn}, {"margin", sn - 2.0}};
        out.push_back(std::move(c));
    }
    return out;
}

Certificate sampled_rho_box(const GaveInstance& inst, std::size_t samples, std::uint64_t seed, double margin,
                            Execution exec) {
    const LuDecomposition lu_a(inst.a());
    if (lu_a.singular()) throw Error(ErrorKind::SingularMatrix, "A is singular");
    const Matrix x = lu_a.solve(inst.b());
    const std::size_t n = inst.n();
    const std::uint64_t vertices = n <= 12 ? (std::uint64_t{1} << n) : 0;
    const std::uint64_t total = vertices + samples;
    const CounterRng rng(seed);

    // Candidate k: vertices first (mask order), then uniform samples.
    const auto candidate = [&](std::uint64_t k) {
        std::vector<double> d(n);
        if (k < vertices) {
            for (std::size_t i = 0; i < n; ++i) d[i] = ((k >> i) & 1U) ? -1.0 : 1.0;
        } else {
            const std::uint64_t j = k - vertices;
            for (std::size_t i = 0; i < n; ++i) d[i] = rng.symmetric(j * n + i);
        }
        return d;
    };
    const auto rho_at = [&](std::uint64_t k) { return spectral_radius_general(scale_columns(x, candidate(k))); };

    Certificate c;
    c.id = ConditionId::RHO_BOX_SAMPLED;
    double max_rho = 0.0;
    std::optional<std::uint64_t> bad;
    std::uint64_t evaluated = 0;

    const auto fold = [&](std::uint64_t k, double rho) {
        ++evaluated;
        max_rho = std::max(max_rho, rho);
        if (below_one(rho, margin) == Verdict::fails) {
            bad = k;
            return true;
        }
        return false;
    };

    if (exec == Execution::serial) {
        for (std::uint64_t k = 0; k < total; ++k)
            if (fold(k, rho_at(k))) break;
    } else {
        constexpr std::uint64_t kBlock = 512;
        std::vector<double> rhos(std::min<std::uint64_t>(total, kBlock));
        for (std::uint64_t start = 0; start < total && !bad; start += kBlock) {
            const std::uint64_t end = std::min(total, start + kBlock);
            const auto count = static_cast<std::int64_t>(end - start);
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < count; ++i)
                rhos[static_cast<std::size_t>(i)] = rho_at(start + static_cast<std::uint64_t>(i));
            for (std::uint64_t k = start; k < end; ++k)
                if (fold(k, rhos[k - start])) break;
        }
    }

    c.cost.samples = evaluated;
    c.evidence = {{"max_sampled_rho", max_rho}, {"margin", max_rho - 1.0}, {"vertices", static_cast<double>(vertices)}};
    if (bad) {
        c.verdict = Verdict::fails;
        c.witness = BoxDiagonal{candidate(*bad), -1.0, 1.0};
    } else {
        c.verdict = Verdict::undecided;
        c.note = "no sampled diagonal reached rho >= 1; sampling cannot prove the quantified condition";
    }
    return c;
}

Certificate certificate_for(const GaveInstance& inst, ConditionId id, const CertifyOptions& opt) {
    switch (id) {
        case ConditionId::VERTEX_NS:
            return vertex_regularity_certificate(inst.a(), inst.b(), opt.n_cap_vertex, opt.execution);
        case ConditionId::PMATRIX_NS: {
            const LuDecomposition sum(inst.a() + inst.b());
            if (sum.singular()) return undecided(id, "A + B is singular");
            if (inst.n() > opt.n_cap_minor)
                return undecided(id, "n = " + std::to_string(inst.n()) + " exceeds the principal-minor cap " +
                                         std::to_string(opt.n_cap_minor));
            return pmatrix_certificate(sum.solve(inst.a() - inst.b()), opt.n_cap_minor, opt.execution);
        }
        case ConditionId::RHO_BOX_SAMPLED:
            if (LuDecomposition(inst.a()).singular()) return undecided(id, "A is singular");
            return sampled_rho_box(inst, opt.samples, derive_seed(opt.seed, 0), opt.margin, opt.execution);
        case ConditionId::AVE_SHIFT:
            if (!inst.is_ave()) return undecided(id, "B is not the identity");
            [[fallthrough]];
        default:
            for (Certificate& c : spectral_certificates(inst, opt.margin))
                if (c.id == id) return std::move(c);
    }
    return undecided(id, "not computed");
}

std::size_t interior_crosscheck(const Matrix& a, const Matrix& b, Sign expected, std::size_t samples,
                                std::uint64_t seed) {
    const std::size_t n = a.rows();
    const CounterRng rng(seed);
    std::size_t mismatches = 0;
#pragma omp parallel for reduction(+ : mismatches) schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(samples); ++j) {
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = rng.symmetric(static_cast<std::uint64_t>(j) * n + i);
        if (det_sign(a + scale_columns(b, d)).sign != expected) ++mismatches;
    }
    return mismatches;
}

BoxDiagonal singular_box_point(const Matrix& a, const Matrix& b, const VertexWitness& w) {
    std::vector<double> d = w.vertex.as_doubles();
    if (w.kind == VertexFailure::zero) return BoxDiagonal{std::move(d), -1.0, 1.0};

    const std::size_t i = w.flip_coordinate.value();
    const double t_w = d[i];
    const double t_p = -t_w;
    const DetSign det_w = det_sign(vertex_matrix(a, b, w.vertex.mask()));
    const DetSign det_p = det_sign(vertex_matrix(a, b, w.vertex.mask() ^ (std::uint64_t{1} << i)));
    // det is affine in d_i and has opposite signs at the two ends:
    // root = t_p + (t_w - t_p) * f_p / (f_p - f_w) with f_w / f_p = -exp(log_w - log_p).
    const double ratio = std::exp(det_w.log_magnitude - det_p.log_magnitude);
    d[i] = t_p + (t_w - t_p) / (1.0 + ratio);
    return BoxDiagonal{std::move(d), -1.0, 1.0};
}

// ---------------------------------------------------------------------------
// Condition hierarchy

int strength_level(ConditionId id) {
    switch (id) {
        case ConditionId::RHO_ABS:
        case ConditionId::SIGMA_PAIR_ABS_38:
        case ConditionId::AVE_SHIFT: return 0;
        case ConditionId::RHO_BOX_SAMPLED:
        case ConditionId::SIGMA_PAIR_37: return 1;
        case ConditionId::SIGMAN_BINVA: return 2;
        case ConditionId::SIGMA1_INVAB: return 3;
        case ConditionId::VERTEX_NS:
        case ConditionId::PMATRIX_NS: return 4;
    }
    return 5;
}

namespace {

constexpr std::size_t kConditionCount = std::size(kAllConditions);
using ImplicationTable = std::array<std::array<bool, kConditionCount>, kConditionCount>;

constexpr std::size_t idx(ConditionId id) { return static_cast<std::size_t>(id); }

// holds(row) means col cannot fail.
ImplicationTable build_implications() {
    ImplicationTable t{};
    const auto edge = [&](ConditionId from, ConditionId to) { t[idx(from)][idx(to)] = true; };
    using C = ConditionId;
    edge(C::SIGMA_PAIR_ABS_38, C::SIGMA_PAIR_37);
    edge(C::SIGMA_PAIR_37, C::SIGMAN_BINVA);
    edge(C::SIGMA_PAIR_37, C::SIGMA1_INVAB);
    edge(C::SIGMAN_BINVA, C::SIGMA1_INVAB);
    edge(C::SIGMA1_INVAB, C::VERTEX_NS);
    edge(C::RHO_ABS, C::VERTEX_NS);
    edge(C::RHO_ABS, C::RHO_BOX_SAMPLED);
    edge(C::AVE_SHIFT, C::VERTEX_NS);
    edge(C::VERTEX_NS, C::PMATRIX_NS);
    edge(C::PMATRIX_NS, C::VERTEX_NS);
    for (std::size_t k = 0; k < kConditionCount; ++k)
        for (std::size_t i = 0; i < kConditionCount; ++i)
            for (std::size_t j = 0; j < kConditionCount; ++j)
                if (t[i][k] && t[k][j]) t[i][j] = true;
    return t;
}

const ImplicationTable& implication_table() {
    static const ImplicationTable table = build_implications();
    return table;
}

[[noreturn]] void inconsistent(ConditionId holds, ConditionId fails) {
    throw Error(ErrorKind::InconsistencyDetected,
                std::string(to_string(holds)) + " holds but " + std::string(to_string(fails)) + " fails");
}

}  // namespace

bool implies(ConditionId stronger, ConditionId weaker) {
    return stronger != weaker && implication_table()[idx(stronger)][idx(weaker)];
}

const Certificate* HierarchyReport::find(ConditionId id) const {
    for (const Certificate& c : certificates)
        if (c.id == id) return &c;
    return nullptr;
}

HierarchyReport hierarchy_report(const GaveInstance& inst, const CertifyOptions& opt) {
    HierarchyReport rep;
    auto& certs = rep.certificates;

    certs.push_back(certificate_for(inst, ConditionId::VERTEX_NS, opt));
    certs.push_back(certificate_for(inst, ConditionId::PMATRIX_NS, opt));
    for (Certificate& c : spectral_certificates(inst, opt.margin)) certs.push_back(std::move(c));
    certs.push_back(certificate_for(inst, ConditionId::RHO_BOX_SAMPLED, opt));

    std::stable_sort(certs.begin(), certs.end(), [](const Certificate& x, const Certificate& y) {
        const int lx = strength_level(x.id), ly = strength_level(y.id);
        return lx != ly ? lx < ly : idx(x.id) < idx(y.id);
    });

    for (const Certificate& x : certs) {
        if (x.verdict != Verdict::holds) continue;
        for (const Certificate& y : certs)
            if (y.verdict == Verdict::fails && implies(x.id, y.id)) inconsistent(x.id, y.id);
    }

    Certificate* vertex = nullptr;
    for (Certificate& c : certs)
        if (c.id == ConditionId::VERTEX_NS) vertex = &c;

    // Multiaffinity guard: a box-wide verdict read off the vertices must
    // agree with random interior points.
    if (vertex->verdict == Verdict::holds && opt.interior_checks > 0) {
        const auto ref = static_cast<Sign>(static_cast<int>(vertex->evidence_value("reference_sign").value()));
        const std::size_t bad =
            interior_crosscheck(inst.a(), inst.b(), ref, opt.interior_checks, derive_seed(opt.seed, 1));
        vertex->evidence.emplace_back("interior_samples", static_cast<double>(opt.interior_checks));
        if (bad != 0)
            throw Error(ErrorKind::InconsistencyDetected,
                        std::to_string(bad) + " interior diagonals disagree with the vertex determinant sign");
    }

    const Certificate* pm = rep.find(ConditionId::PMATRIX_NS);
    if (vertex->verdict != Verdict::undecided) {
        rep.final_verdict = vertex->verdict == Verdict::holds ? FinalVerdict::unique : FinalVerdict::not_unique;
        rep.decided_by = ConditionId::VERTEX_NS;
    } else if (pm->verdict != Verdict::undecided) {
        rep.final_verdict = pm->verdict == Verdict::holds ? FinalVerdict::unique : FinalVerdict::not_unique;
        rep.decided_by = ConditionId::PMATRIX_NS;
    } else {
        for (const Certificate& c : certs) {
            if (c.verdict == Verdict::holds && implies(c.id, ConditionId::VERTEX_NS)) {
                rep.final_verdict = FinalVerdict::unique;
                rep.decided_by = c.id;
                break;
            }
        }
    }
    return rep;
}

}  // namespace gave
