#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gave/linalg.hpp"
#include "gave/matrix.hpp"

namespace gave {

/// Ax + B|x| = b with square A, B of equal size. Certificates ignore the
/// right-hand side, which may be absent.
class GaveInstance {
public:
    GaveInstance(Matrix a, Matrix b, std::optional<Vector> rhs = std::nullopt);

    /// The absolute value equation Ax + |x| = b.
    static GaveInstance ave(Matrix a, std::optional<Vector> rhs = std::nullopt);

    std::size_t n() const noexcept { return a_.rows(); }
    const Matrix& a() const noexcept { return a_; }
    const Matrix& b() const noexcept { return b_; }
    const std::optional<Vector>& rhs() const noexcept { return rhs_; }
    const Vector& require_rhs() const;
    bool is_ave() const noexcept { return b_.is_identity(); }

    GaveInstance with_rhs(Vector rhs) const;

private:
    Matrix a_;
    Matrix b_;
    std::optional<Vector> rhs_;
};

/// A vertex of the box [-1,1]^n. Bit i of a mask set means entry i is -1.
class SignVector {
public:
    SignVector() = default;
    explicit SignVector(std::vector<int> entries);
    static SignVector from_mask(std::uint64_t mask, std::size_t n);
    static SignVector of(const Vector& x);  // sign(0) := +1

    std::size_t size() const noexcept { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const noexcept { return entries_; }
    std::uint64_t mask() const noexcept;
    std::vector<double> as_doubles() const;

    bool operator==(const SignVector&) const = default;
    auto operator<=>(const SignVector&) const = default;

private:
    std::vector<int> entries_;
};

/// Gray-code enumeration order used by every vertex sweep.
constexpr std::uint64_t gray_code(std::uint64_t k) noexcept { return k ^ (k >> 1); }

/// Diagonal matrix with entries confined to [lower, upper]; the two supported
/// boxes are [-1,1] and [0,1].
struct BoxDiagonal {
    std::vector<double> entries;
    double lower = -1.0;
    double upper = 1.0;

    static BoxDiagonal symmetric(std::vector<double> entries);
    static BoxDiagonal unit(std::vector<double> entries);
};

/// D-bar = I - 2D, mapping the [0,1] box onto the [-1,1] box.
BoxDiagonal box_from_unit(const BoxDiagonal& d);
/// Inverse map D = (I - D-bar)/2.
BoxDiagonal unit_from_box(const BoxDiagonal& d);

enum class ConditionId {
    VERTEX_NS,
    PMATRIX_NS,
    RHO_ABS,
    RHO_BOX_SAMPLED,
    SIGMA1_INVAB,
    SIGMAN_BINVA,
    SIGMA_PAIR_37,
    SIGMA_PAIR_ABS_38,
    AVE_SHIFT,
};

inline constexpr ConditionId kAllConditions[] = {
    ConditionId::VERTEX_NS,       ConditionId::PMATRIX_NS,   ConditionId::RHO_ABS,
    ConditionId::RHO_BOX_SAMPLED, ConditionId::SIGMA1_INVAB, ConditionId::SIGMAN_BINVA,
    ConditionId::SIGMA_PAIR_37,   ConditionId::SIGMA_PAIR_ABS_38, ConditionId::AVE_SHIFT,
};

std::string_view to_string(ConditionId id);
std::optional<ConditionId> parse_condition(std::string_view name);

enum class Verdict { holds, fails, undecided };
std::string_view to_string(Verdict v);

/// Classifies "value < 1": holds below 1 - margin, fails at or above
/// 1 + margin, undecided inside the band.
Verdict below_one(double value, double margin);

enum class VertexFailure { zero, flip };

struct VertexWitness {
    SignVector vertex;
    VertexFailure kind = VertexFailure::zero;
    /// For a flip, the coordinate in which `vertex` differs from the
    /// preceding (reference-signed) vertex in Gray order.
    std::optional<std::size_t> flip_coordinate;
};

/// Principal index set, 0-based and sorted.
struct IndexSet {
    std::vector<std::size_t> indices;
};

using Witness = std::variant<std::monostate, VertexWitness, IndexSet, BoxDiagonal>;

struct Cost {
    std::uint64_t determinants = 0;
    std::uint64_t minors = 0;
    std::uint64_t samples = 0;
};

struct Certificate {
    ConditionId id{};
    Verdict verdict = Verdict::undecided;
    std::vector<std::pair<std::string, double>> evidence;
    Witness witness;
    Cost cost;
    std::string note;

    std::optional<double> evidence_value(std::string_view name) const;
    bool has_witness() const noexcept { return !std::holds_alternative<std::monostate>(witness); }
};

enum class Execution { parallel, serial };

struct CertifyOptions {
    std::size_t n_cap_vertex = 14;
    std::size_t n_cap_minor = 12;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::size_t interior_checks = 200;
    double margin = 1e-10;
    Execution execution = Execution::parallel;
};

/// The complementarity form w = Mz + q of a GAVE with A + B nonsingular,
/// where z = |x| - x and w = |x| + x.
struct LcpInstance {
    Matrix m;
    Vector q;

    /// x = (w - z) / 2.
    static Vector recover_x(const Vector& w, const Vector& z);
};

/// Throws SingularSum when A + B is singular.
LcpInstance reduce_to_lcp(const GaveInstance& inst);

Certificate pmatrix_certificate(const Matrix& m, std::size_t n_cap,
                                Execution exec = Execution::parallel);
Certificate vertex_regularity_certificate(const Matrix& a, const Matrix& b, std::size_t n_cap,
                                          Execution exec = Execution::parallel);

/// RHO_ABS, SIGMA1_INVAB, SIGMAN_BINVA, SIGMA_PAIR_37, SIGMA_PAIR_ABS_38 and,
/// when B is the identity, AVE_SHIFT.
std::vector<Certificate> spectral_certificates(const GaveInstance& inst, double margin = 1e-10);

/// Falsifier for rho(A^{-1} B D) < 1 over the box. Never returns holds.
Certificate sampled_rho_box(const GaveInstance& inst, std::size_t samples, std::uint64_t seed,
                            double margin = 1e-10, Execution exec = Execution::parallel);

/// Computes a single named condition.
Certificate certificate_for(const GaveInstance& inst, ConditionId id, const CertifyOptions& opt);

/// Checks det(A + B D) over random interior D against the vertex sign.
/// Returns the number of disagreeing samples.
std::size_t interior_crosscheck(const Matrix& a, const Matrix& b, Sign expected,
                                std::size_t samples, std::uint64_t seed);

/// Singular D-bar in the box implied by a failing VERTEX_NS witness. A zero
/// witness gives the vertex itself; a flip gives the root of the affine
/// determinant along the flipped edge.
BoxDiagonal singular_box_point(const Matrix& a, const Matrix& b, const VertexWitness& w);

enum class FinalVerdict { unique, not_unique, undecided };
std::string_view to_string(FinalVerdict v);

struct HierarchyReport {
    std::vector<Certificate> certificates;  // strongest to weakest
    FinalVerdict final_verdict = FinalVerdict::undecided;
    std::optional<ConditionId> decided_by;

    const Certificate* find(ConditionId id) const;
};

/// Runs every certificate, orders them by strength and derives the final
/// verdict. Throws InconsistencyDetected when two results contradict a known
/// implication.
HierarchyReport hierarchy_report(const GaveInstance& inst, const CertifyOptions& opt = {});

/// True when `holds` for the first condition logically forces the second to
/// hold as well (transitive closure of the known implications).
bool implies(ConditionId stronger, ConditionId weaker);

/// Strength level used to order a report; smaller is stronger.
int strength_level(ConditionId id);

}  // namespace gave
