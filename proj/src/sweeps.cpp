#include "gave/sweeps.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

#include "gave/certify.hpp"

namespace gave {

namespace {

constexpr std::uint64_t kBlock = 1024;

// Folds one vertex determinant into the running sweep. Returns true when the
// vertex is the first failure.
bool fold_vertex(VertexSweep& sw, std::uint64_t rank, const DetSign& d, DetSign& last) {
    if (rank == 0) sw.reference = d.sign;
    const bool bad = d.sign == Sign::zero || d.sign != sw.reference;
    sw.evaluated = rank + 1;
    if (bad) {
        sw.first_bad = rank;
        sw.bad_det = d;
        sw.prev_det = last;
        return true;
    }
    if (rank == 0) {
        sw.min_log = sw.max_log = d.log_magnitude;
    } else {
        sw.min_log = std::min(sw.min_log, d.log_magnitude);
        sw.max_log = std::max(sw.max_log, d.log_magnitude);
    }
    last = d;
    return false;
}

void collect_lex(std::size_t n, std::size_t start, std::uint64_t prefix, std::vector<std::uint64_t>& out) {
    for (std::size_t i = start; i < n; ++i) {
        const std::uint64_t s = prefix | (std::uint64_t{1} << i);
        out.push_back(s);
        collect_lex(n, i + 1, s, out);
    }
}

}  // namespace

Matrix vertex_matrix(const Matrix& a, const Matrix& b, std::uint64_t mask) {
    Matrix m = a;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        auto mr = m.row(i);
        const auto br = b.row(i);
        for (std::size_t j = 0; j < n; ++j) mr[j] += ((mask >> j) & 1U) ? -br[j] : br[j];
    }
    return m;
}

Matrix principal_submatrix(const Matrix& m, std::uint64_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if ((mask >> i) & 1U) idx.push_back(i);
    Matrix s(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) s(r, c) = m(idx[r], idx[c]);
    return s;
}

std::vector<std::uint64_t> lexicographic_subsets(std::size_t n) {
    std::vector<std::uint64_t> out;
    out.reserve((std::size_t{1} << n) - 1);
    collect_lex(n, 0, 0, out);
    return out;
}

VertexSweep vertex_sweep(const Matrix& a, const Matrix& b) {
    const std::uint64_t total = std::uint64_t{1} << a.rows();
    VertexSweep sw;
    DetSign last;
    std::vector<DetSign> dets(std::min(total, kBlock));
    for (std::uint64_t start = 0; start < total; start += kBlock) {
        const std::uint64_t end = std::min(total, start + kBlock);
        const auto count = static_cast<std::int64_t>(end - start);
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < count; ++k)
            dets[static_cast<std::size_t>(k)] =
                det_sign(vertex_matrix(a, b, gray_code(start + static_cast<std::uint64_t>(k))));
        for (std::uint64_t r = start; r < end; ++r)
            if (fold_vertex(sw, r, dets[r - start], last)) return sw;
    }
    return sw;
}

MinorSweep minor_sweep(const Matrix& m) {
    const std::size_t n = m.rows();
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<DetSign> dets(total);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t mask = 1; mask < static_cast<std::int64_t>(total); ++mask)
        dets[static_cast<std::size_t>(mask)] =
            det_sign(principal_submatrix(m, static_cast<std::uint64_t>(mask)));

    MinorSweep sw;
    sw.min_log = std::numeric_limits<double>::infinity();
    for (const std::uint64_t mask : lexicographic_subsets(n)) {
        const DetSign& d = dets[mask];
        ++sw.evaluated;
        if (d.sign != Sign::positive) {
            sw.first_bad_mask = mask;
            sw.bad_det = d;
            break;
        }
        sw.min_log = std::min(sw.min_log, d.log_magnitude);
    }
    return sw;
}

namespace serial {

VertexSweep vertex_sweep(const Matrix& a, const Matrix& b) {
    const std::uint64_t total = std::uint64_t{1} << a.rows();
    VertexSweep sw;
    DetSign last;
    for (std::uint64_t r = 0; r < total; ++r)
        if (fold_vertex(sw, r, det_sign(vertex_matrix(a, b, gray_code(r))), last)) break;
    return sw;
}

MinorSweep minor_sweep(const Matrix& m) {
    MinorSweep sw;
    sw.min_log = std::numeric_limits<double>::infinity();
    for (const std::uint64_t mask : lexicographic_subsets(m.rows())) {
        const DetSign d = det_sign(principal_submatrix(m, mask));
        ++sw.evaluated;
        if (d.sign != Sign::positive) {
            sw.first_bad_mask = mask;
            sw.bad_det = d;
            break;
        }
        sw.min_log = std::min(sw.min_log, d.log_magnitude);
    }
    return sw;
}

}  // namespace serial

}  // namespace gave
