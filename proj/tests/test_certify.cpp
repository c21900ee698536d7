#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gave/certify.hpp"
#include "gave/error.hpp"
#include "gave/probe.hpp"
#include "gave/rng.hpp"
#include "gave/sweeps.hpp"
#include "oracles.hpp"

using namespace gave;

namespace {

const Certificate& get(const std::vector<Certificate>& cs, ConditionId id) {
    const auto it = std::find_if(cs.begin(), cs.end(), [&](const Certificate& c) { return c.id == id; });
    if (it == cs.end()) throw std::runtime_error("missing certificate");
    return *it;
}

Matrix diag(std::initializer_list<double> d) { return Matrix::diagonal(std::vector<double>(d)); }

GaveInstance mixed_instance(std::uint64_t i) {
    const std::size_t n = 2 + i % 5;
    const Ensemble e = static_cast<Ensemble>(i % 4);
    return random_instance({n, e, std::nullopt, derive_seed(99, i)});
}

}  // namespace

TEST(BoxDiagonal, UnitConversion) {
    const BoxDiagonal a = box_from_unit(BoxDiagonal::unit({0, 1, 0.5}));
    EXPECT_EQ(a.entries, (std::vector<double>{1, -1, 0}));
    EXPECT_EQ(a.lower, -1.0);
    const BoxDiagonal back = unit_from_box(a);
    EXPECT_EQ(back.entries, (std::vector<double>{0, 1, 0.5}));
    EXPECT_THROW(BoxDiagonal::unit({1.5}), Error);
    EXPECT_THROW(BoxDiagonal::symmetric({-1.01}), Error);
}

TEST(SignVector, MaskAndSign) {
    const SignVector s = SignVector::from_mask(0b101, 3);
    EXPECT_EQ(s.entries(), (std::vector<int>{-1, 1, -1}));
    EXPECT_EQ(s.mask(), 0b101U);
    EXPECT_EQ(SignVector::of(Vector{0.0, -2.0}).entries(), (std::vector<int>{1, -1}));
}

TEST(ReduceToLcp, Examples) {
    const Vector b{1.0, -2.0};
    const LcpInstance l = reduce_to_lcp(GaveInstance(2.0 * Matrix::identity(2), Matrix::identity(2), b));
    EXPECT_NEAR(l.m(0, 0), 1.0 / 3, 1e-15);
    EXPECT_NEAR(l.m(0, 1), 0.0, 1e-15);
    EXPECT_NEAR(l.q[0], 2.0 / 3, 1e-15);
    EXPECT_NEAR(l.q[1], -4.0 / 3, 1e-15);
    try {
        reduce_to_lcp(GaveInstance(Matrix::identity(2), -1.0 * Matrix::identity(2), b));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularSum);
    }
}

TEST(ReduceToLcp, ResidualSubstitution) {
    const Matrix a{{3, 1}, {0, 2}}, bm = Matrix::identity(2);
    const Vector rhs{1, 0};
    const LcpInstance l = reduce_to_lcp(GaveInstance(a, bm, rhs));
    EXPECT_LE(frobenius((a + bm) * l.m - (a - bm)), 1e-14);
    EXPECT_LE(norm_inf((a + bm) * l.q - 2.0 * rhs), 1e-14);
}

TEST(PMatrix, Examples) {
    EXPECT_EQ(pmatrix_certificate(Matrix::identity(3), 12).verdict, Verdict::holds);
    const Certificate f = pmatrix_certificate(Matrix{{0, 0}, {0, 1}}, 12);
    EXPECT_EQ(f.verdict, Verdict::fails);
    EXPECT_EQ(std::get<IndexSet>(f.witness).indices, (std::vector<std::size_t>{0}));
    const Certificate h = pmatrix_certificate((1.0 / 3) * Matrix::identity(2), 12);
    EXPECT_EQ(h.verdict, Verdict::holds);
    EXPECT_EQ(h.cost.minors, 3U);
    EXPECT_EQ(pmatrix_certificate(Matrix::identity(13), 12).verdict, Verdict::undecided);
}

TEST(PMatrix, WitnessIsLexicographicallyFirst) {
    // Minors: {0}=1, {0,1}=1*1-2*1=-1, {1}=1. First failing set is {0,1}.
    const Certificate c = pmatrix_certificate(Matrix{{1, 2}, {1, 1}}, 12);
    EXPECT_EQ(std::get<IndexSet>(c.witness).indices, (std::vector<std::size_t>{0, 1}));
    // {0}=1, {0,1}=3, {0,1,2}<0 comes before {0,2}.
    const Matrix m{{1, -1, 0}, {2, 1, 0}, {0, 0, -1}};
    EXPECT_EQ(std::get<IndexSet>(pmatrix_certificate(m, 12).witness).indices,
              (std::vector<std::size_t>{0, 1, 2}));
}

TEST(PMatrix, AgreesWithBruteForceMinors) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const std::size_t n = 1 + s % 4;
        Matrix m = oracle::normal_matrix(n, s);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = std::abs(m(i, i)) + 0.8;
        bool all_pos = true;
        for (std::uint64_t mask = 1; mask < (1U << n); ++mask)
            all_pos = all_pos && oracle::cofactor_det(principal_submatrix(m, mask)) > 0;
        EXPECT_EQ(pmatrix_certificate(m, 12).verdict == Verdict::holds, all_pos) << "seed " << s;
    }
}

TEST(Vertex, Examples) {
    const Certificate a = vertex_regularity_certificate(Matrix{{2}}, Matrix{{1}}, 14);
    EXPECT_EQ(a.verdict, Verdict::holds);
    EXPECT_EQ(a.cost.determinants, 2U);

    const Certificate b = vertex_regularity_certificate(Matrix{{1}}, Matrix{{1}}, 14);
    EXPECT_EQ(b.verdict, Verdict::fails);
    const auto& w = std::get<VertexWitness>(b.witness);
    EXPECT_EQ(w.vertex.entries(), (std::vector<int>{-1}));
    EXPECT_EQ(w.kind, VertexFailure::zero);

    const Certificate c = vertex_regularity_certificate(2.0 * Matrix::identity(2), Matrix::identity(2), 14);
    EXPECT_EQ(c.verdict, Verdict::holds);
    EXPECT_EQ(c.cost.determinants, 4U);
    EXPECT_NEAR(*c.evidence_value("min_log_abs_det"), 0.0, 1e-15);
    EXPECT_NEAR(*c.evidence_value("max_log_abs_det"), std::log(9.0), 1e-14);

    EXPECT_EQ(vertex_regularity_certificate(Matrix::identity(15), Matrix::identity(15), 14).verdict,
              Verdict::undecided);
}

TEST(Vertex, FlipWitness) {
    // det(A + B diag(s)) = (1 + 2 s_0)(3): sign flips at s_0 = -1.
    const Certificate c = vertex_regularity_certificate(diag({1, 3}), diag({2, 0}), 14);
    ASSERT_EQ(c.verdict, Verdict::fails);
    const auto& w = std::get<VertexWitness>(c.witness);
    EXPECT_EQ(w.kind, VertexFailure::flip);
    EXPECT_EQ(w.vertex.entries(), (std::vector<int>{-1, 1}));
    EXPECT_EQ(*w.flip_coordinate, 0U);
    const BoxDiagonal p = singular_box_point(diag({1, 3}), diag({2, 0}), w);
    EXPECT_NEAR(p.entries[0], -0.5, 1e-14);
    EXPECT_EQ(det_sign(diag({1, 3}) + scale_columns(diag({2, 0}), p.entries)).sign, Sign::zero);
}

TEST(Vertex, SingularPointForRandomFlips) {
    std::size_t flips = 0;
    for (std::uint64_t s = 0; s < 300; ++s) {
        const GaveInstance inst = random_instance({3, Ensemble::GAUSSIAN, std::nullopt, s});
        const Certificate c = vertex_regularity_certificate(inst.a(), inst.b(), 14);
        if (c.verdict != Verdict::fails) continue;
        const auto& w = std::get<VertexWitness>(c.witness);
        if (w.kind != VertexFailure::flip) continue;
        ++flips;
        const BoxDiagonal p = singular_box_point(inst.a(), inst.b(), w);
        const Matrix m = inst.a() + scale_columns(inst.b(), p.entries);
        EXPECT_LE(std::abs(oracle::cofactor_det(m)), 1e-10 * std::pow(frobenius(m), 3));
    }
    EXPECT_GT(flips, 50U);
}

TEST(Vertex, GrayOrderWitnessIsFirst) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const GaveInstance inst = random_instance({4, Ensemble::GAUSSIAN, std::nullopt, s});
        const Certificate c = vertex_regularity_certificate(inst.a(), inst.b(), 14);
        // Brute force over Gray order with the cofactor oracle.
        const int ref = oracle::cofactor_det(vertex_matrix(inst.a(), inst.b(), 0)) > 0 ? 1 : -1;
        std::optional<std::uint64_t> first;
        for (std::uint64_t k = 0; k < 16 && !first; ++k) {
            const double d = oracle::cofactor_det(vertex_matrix(inst.a(), inst.b(), gray_code(k)));
            if ((d > 0 ? 1 : -1) != ref) first = gray_code(k);
        }
        EXPECT_EQ(c.verdict == Verdict::holds, !first.has_value());
        if (first) EXPECT_EQ(std::get<VertexWitness>(c.witness).vertex.mask(), *first);
    }
}

TEST(Spectral, DiagonalExamples) {
    const auto cs = spectral_certificates(GaveInstance(2.0 * Matrix::identity(2), Matrix::identity(2)));
    EXPECT_EQ(cs.size(), 6U);
    for (const auto& c : cs) EXPECT_EQ(c.verdict, Verdict::holds) << to_string(c.id);
    EXPECT_NEAR(*get(cs, ConditionId::RHO_ABS).evidence_value("rho_abs_invA_B"), 0.5, 1e-12);
    EXPECT_NEAR(*get(cs, ConditionId::SIGMA1_INVAB).evidence_value("sigma1_invA_B"), 0.5, 1e-12);
    EXPECT_NEAR(*get(cs, ConditionId::SIGMAN_BINVA).evidence_value("sigman_invB_A"), 2.0, 1e-12);
    EXPECT_NEAR(*get(cs, ConditionId::AVE_SHIFT).evidence_value("sigman_A_plus_I"), 3.0, 1e-12);

    const auto sep = spectral_certificates(GaveInstance(diag({3, 1}), diag({2, 0.5})));
    EXPECT_EQ(get(sep, ConditionId::SIGMAN_BINVA).verdict, Verdict::holds);
    EXPECT_NEAR(*get(sep, ConditionId::SIGMAN_BINVA).evidence_value("sigman_invB_A"), 1.5, 1e-12);
    EXPECT_EQ(get(sep, ConditionId::SIGMA_PAIR_37).verdict, Verdict::fails);
}

TEST(Spectral, ZeroB) {
    const auto cs = spectral_certificates(GaveInstance(Matrix::identity(2), Matrix(2, 2)));
    EXPECT_EQ(get(cs, ConditionId::RHO_ABS).verdict, Verdict::holds);
    EXPECT_EQ(*get(cs, ConditionId::RHO_ABS).evidence_value("rho_abs_invA_B"), 0.0);
    EXPECT_EQ(get(cs, ConditionId::SIGMA1_INVAB).verdict, Verdict::holds);
    EXPECT_EQ(get(cs, ConditionId::SIGMA_PAIR_37).verdict, Verdict::holds);
    EXPECT_EQ(get(cs, ConditionId::SIGMA_PAIR_ABS_38).verdict, Verdict::holds);
    // B singular: SIGMAN_BINVA has no precondition.
    EXPECT_EQ(get(cs, ConditionId::SIGMAN_BINVA).verdict, Verdict::undecided);
}

TEST(Spectral, MarginBand) {
    EXPECT_EQ(below_one(1.0 - 2e-10, 1e-10), Verdict::holds);
    EXPECT_EQ(below_one(1.0, 1e-10), Verdict::undecided);
    EXPECT_EQ(below_one(1.0 + 1e-10, 1e-10), Verdict::fails);
    // A = I, B = I sits exactly on the boundary of every norm condition.
    const auto cs = spectral_certificates(GaveInstance(Matrix::identity(2), Matrix::identity(2)));
    EXPECT_EQ(get(cs, ConditionId::SIGMA1_INVAB).verdict, Verdict::undecided);
    EXPECT_EQ(get(cs, ConditionId::RHO_ABS).verdict, Verdict::undecided);
    EXPECT_EQ(get(cs, ConditionId::AVE_SHIFT).verdict, Verdict::undecided);
}

TEST(RhoBox, Examples) {
    const Certificate a = sampled_rho_box(GaveInstance(2.0 * Matrix::identity(2), Matrix::identity(2)), 100, 1);
    EXPECT_EQ(a.verdict, Verdict::undecided);
    EXPECT_LE(*a.evidence_value("max_sampled_rho"), 0.5 + 1e-15);

    const Certificate b = sampled_rho_box(GaveInstance(Matrix{{1}}, Matrix{{2}}), 10, 1);
    ASSERT_EQ(b.verdict, Verdict::fails);
    EXPECT_EQ(std::get<BoxDiagonal>(b.witness).entries, (std::vector<double>{1.0}));
    EXPECT_NEAR(*b.evidence_value("max_sampled_rho"), 2.0, 1e-15);

    EXPECT_THROW(sampled_rho_box(GaveInstance(Matrix(2, 2), Matrix::identity(2)), 10, 1), Error);
}

TEST(RhoBox, DominatedByRhoAbs) {
    std::size_t checked = 0;
    for (std::uint64_t s = 0; s < 200 && checked < 30; ++s) {
        const GaveInstance g = random_instance({3, Ensemble::GAUSSIAN, std::nullopt, s});
        const LuDecomposition lu(g.a());
        if (lu.singular()) continue;
        const double rho = spectral_radius_nonneg_or_general(abs(lu.solve(g.b())));
        // Rescale B so that rho(|A^-1 B|) = 0.9.
        const GaveInstance inst(g.a(), (0.9 / rho) * g.b());
        const Certificate c = sampled_rho_box(inst, 300, s);
        EXPECT_EQ(c.verdict, Verdict::undecided);
        EXPECT_LE(*c.evidence_value("max_sampled_rho"), 0.9 + 1e-6);
        ++checked;
    }
    EXPECT_EQ(checked, 30U);
}

TEST(Hierarchy, Examples) {
    const HierarchyReport u = hierarchy_report(GaveInstance(2.0 * Matrix::identity(2), Matrix::identity(2)));
    EXPECT_EQ(u.final_verdict, FinalVerdict::unique);
    for (const auto& c : u.certificates)
        if (c.id != ConditionId::RHO_BOX_SAMPLED) EXPECT_EQ(c.verdict, Verdict::holds) << to_string(c.id);

    const HierarchyReport nu = hierarchy_report(GaveInstance(Matrix::identity(2), Matrix::identity(2)));
    EXPECT_EQ(nu.final_verdict, FinalVerdict::not_unique);
    const Certificate* v = nu.find(ConditionId::VERTEX_NS);
    EXPECT_EQ(std::get<VertexWitness>(v->witness).vertex.entries(), (std::vector<int>{-1, 1}));
    for (const auto& c : nu.certificates) EXPECT_NE(c.verdict, Verdict::holds) << to_string(c.id);

    const HierarchyReport sep = hierarchy_report(GaveInstance(diag({3, 1}), diag({2, 0.5})));
    EXPECT_EQ(sep.final_verdict, FinalVerdict::unique);
    EXPECT_EQ(*sep.decided_by, ConditionId::VERTEX_NS);
    EXPECT_EQ(sep.find(ConditionId::SIGMAN_BINVA)->verdict, Verdict::holds);
    EXPECT_EQ(sep.find(ConditionId::SIGMA_PAIR_37)->verdict, Verdict::fails);
}

TEST(Hierarchy, OrderedByStrength) {
    const HierarchyReport r = hierarchy_report(GaveInstance(2.0 * Matrix::identity(2), Matrix::identity(2)));
    std::vector<ConditionId> ids;
    for (const auto& c : r.certificates) ids.push_back(c.id);
    const std::vector<ConditionId> want{ConditionId::RHO_ABS,       ConditionId::SIGMA_PAIR_ABS_38,
                                        ConditionId::AVE_SHIFT,     ConditionId::RHO_BOX_SAMPLED,
                                        ConditionId::SIGMA_PAIR_37, ConditionId::SIGMAN_BINVA,
                                        ConditionId::SIGMA1_INVAB,  ConditionId::VERTEX_NS,
                                        ConditionId::PMATRIX_NS};
    EXPECT_EQ(ids, want);
}

TEST(Hierarchy, ImplicationTable) {
    EXPECT_TRUE(implies(ConditionId::SIGMA_PAIR_ABS_38, ConditionId::SIGMA_PAIR_37));
    EXPECT_TRUE(implies(ConditionId::SIGMA_PAIR_ABS_38, ConditionId::VERTEX_NS));
    EXPECT_TRUE(implies(ConditionId::SIGMAN_BINVA, ConditionId::SIGMA1_INVAB));
    EXPECT_TRUE(implies(ConditionId::RHO_ABS, ConditionId::PMATRIX_NS));
    EXPECT_TRUE(implies(ConditionId::AVE_SHIFT, ConditionId::VERTEX_NS));
    EXPECT_FALSE(implies(ConditionId::SIGMAN_BINVA, ConditionId::SIGMA_PAIR_37));
    EXPECT_FALSE(implies(ConditionId::RHO_ABS, ConditionId::SIGMA1_INVAB));
    EXPECT_FALSE(implies(ConditionId::VERTEX_NS, ConditionId::SIGMA1_INVAB));
}

TEST(Properties, VertexEqualsPMatrix) {
    std::size_t compared = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
        const GaveInstance inst = mixed_instance(i);
        if (!det_sign(inst.a() + inst.b()).nonzero()) continue;
        const Verdict v = vertex_regularity_certificate(inst.a(), inst.b(), 14).verdict;
        const Verdict p = pmatrix_certificate(reduce_to_lcp(inst.with_rhs(Vector(inst.n()))).m, 12).verdict;
        EXPECT_EQ(v, p) << "instance " << i;
        ++compared;
    }
    EXPECT_GT(compared, 250U);
}

TEST(Properties, UnitBoxFamiliesAgree) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const GaveInstance inst = mixed_instance(i);
        const std::size_t n = inst.n();
        const Matrix& a = inst.a();
        const Matrix& b = inst.b();
        // det(A + B - 2B D) and det(A - B + 2B D) over d in {0,1}^n.
        const auto constant = [&](bool plus) {
            std::optional<std::uint64_t> bad;
            int ref = 0;
            for (std::uint64_t mask = 0; mask < (1ULL << n) && !bad; ++mask) {
                std::vector<double> d(n);
                for (std::size_t j = 0; j < n; ++j) d[j] = (mask >> j) & 1U;
                const Matrix m = plus ? a + b - 2.0 * scale_columns(b, d) : a - b + 2.0 * scale_columns(b, d);
                const int s = det_sign(m).as_int();
                if (mask == 0) ref = s;
                if (s == 0 || s != ref) bad = mask;
            }
            return !bad;
        };
        const bool v = vertex_regularity_certificate(a, b, 14).verdict == Verdict::holds;
        EXPECT_EQ(constant(true), v);
        EXPECT_EQ(constant(false), v);
    }
}

TEST(Properties, InteriorCrosscheck) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        const GaveInstance inst = mixed_instance(i);
        const Certificate c = vertex_regularity_certificate(inst.a(), inst.b(), 14);
        if (c.verdict != Verdict::holds) continue;
        const Sign ref = *c.evidence_value("reference_sign") > 0 ? Sign::positive : Sign::negative;
        EXPECT_EQ(interior_crosscheck(inst.a(), inst.b(), ref, 200, i), 0U);
    }
}

TEST(Properties, ImplicationChainNeverViolated) {
    for (std::uint64_t i = 0; i < 400; ++i) {
        const GaveInstance inst = mixed_instance(i);
        // hierarchy_report throws InconsistencyDetected on any violation.
        const HierarchyReport r = hierarchy_report(inst, {.samples = 50});
        const auto holds = [&](ConditionId id) { return r.find(id)->verdict == Verdict::holds; };
        if (holds(ConditionId::SIGMA_PAIR_ABS_38)) EXPECT_TRUE(holds(ConditionId::SIGMA_PAIR_37));
        if (holds(ConditionId::SIGMAN_BINVA)) EXPECT_TRUE(holds(ConditionId::SIGMA1_INVAB));
        if (holds(ConditionId::SIGMA1_INVAB) || holds(ConditionId::RHO_ABS)) EXPECT_TRUE(holds(ConditionId::VERTEX_NS));
    }
}

TEST(Properties, ZeroBDegeneratesToLinearSystem) {
    for (std::uint64_t i = 0; i < 60; ++i) {
        const std::size_t n = 1 + i % 6;
        Matrix a = oracle::normal_matrix(n, i);
        if (i % 6 == 0 && n > 1) {
            for (std::size_t r = 0; r < n; ++r) a(r, n - 1) = n == 2 ? 2.0 * a(r, 0) : a(r, 0) - 2.0 * a(r, 1);
        }
        const bool regular = det_sign(a).nonzero();
        EXPECT_EQ(vertex_regularity_certificate(a, Matrix(n, n), 14).verdict == Verdict::holds, regular);
    }
}

TEST(Spectral, RankDeficientAFailsPairConditions) {
    // sigma_n(A) is a rounding-level positive number here, not zero.
    const Matrix a{{1, 2, -3}, {4, -1, 6}, {0, 5, -10}};
    const auto cs = spectral_certificates(GaveInstance(a, Matrix(3, 3)));
    EXPECT_EQ(get(cs, ConditionId::SIGMA_PAIR_37).verdict, Verdict::fails);
    EXPECT_EQ(get(cs, ConditionId::SIGMA_PAIR_ABS_38).verdict, Verdict::fails);
    EXPECT_EQ(hierarchy_report(GaveInstance(a, Matrix(3, 3))).final_verdict, FinalVerdict::not_unique);
}
