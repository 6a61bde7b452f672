#pragma once

#include "dga/scalars.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>
#include <vector>

namespace dga {

/// Reduced row echelon form together with the pivot columns.
template <class S>
struct Rref {
    Mat<S> mat;
    std::vector<Eigen::Index> pivots;
};

namespace detail {

// Fast elimination over F_p on a double buffer with delayed reduction:
// entries accumulate unreduced and stay exact while below 2^53. Used
// transparently by rref/rank when the modulus permits; falls back to the
// generic scalar path otherwise. The reduced echelon form is unique, so
// both paths produce identical results.

struct FpBuffer {
    std::vector<double> a;
    Eigen::Index rows = 0, cols = 0;
    std::int64_t p = 0;
    double* row(Eigen::Index r) { return a.data() + static_cast<std::size_t>(r) * cols; }
};

inline std::int64_t fp_inverse(std::int64_t v, std::int64_t p)
{
    std::int64_t a = v % p, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return ((x0 % p) + p) % p;
}

inline std::optional<FpBuffer> fp_load(const Mat<Fp>& m)
{
    std::int64_t p = 0;
    for (Eigen::Index j = 0; j < m.cols() && p == 0; ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j).modulus() != 0) { p = m(i, j).modulus(); break; }
    if (p == 0) return std::nullopt;  // literal-only matrix: modulus unknown
    double n = static_cast<double>(std::min(m.rows(), m.cols()));
    // accumulation bound: initial < p plus one (p-1)^2 increment per pivot
    // in the forward and backward passes each, with slack
    if (double(p - 1) * double(p - 1) * (2.0 * n + 8.0) + p > 9.0e15) return std::nullopt;
    FpBuffer b;
    b.rows = m.rows();
    b.cols = m.cols();
    b.p = p;
    b.a.resize(static_cast<std::size_t>(m.rows()) * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::int64_t v = m(i, j).value();
            if (m(i, j).modulus() == 0) { v %= p; if (v < 0) v += p; }
            b.row(i)[j] = static_cast<double>(v);
        }
    return b;
}

inline void fp_axpy(double* __restrict dst, const double* __restrict src, double f,
                    Eigen::Index n)
{
    for (Eigen::Index i = 0; i < n; ++i) dst[i] += f * src[i];
}

/// Forward pass to row echelon form; panel-blocked so the trailing matrix is
/// streamed once per panel instead of once per pivot. Pivot t ends up in row
/// t; rows at index >= rank are congruent to zero.
inline void fp_forward(FpBuffer& b, std::vector<Eigen::Index>& pivots)
{
    const std::int64_t p = b.p;
    constexpr Eigen::Index B = 32;
    Eigen::Index row = 0, col = 0;
    std::vector<std::vector<double>> mult;  // per panel pivot: multipliers by row
    std::vector<Eigen::Index> prow;
    std::vector<std::int64_t> pinv;
    while (col < b.cols && row < b.rows) {
        Eigen::Index colend = std::min(b.cols, col + B);
        mult.clear(); prow.clear(); pinv.clear();
        for (Eigen::Index pc = col; pc < colend && row < b.rows; ++pc) {
            Eigen::Index piv = -1;
            for (Eigen::Index r = row; r < b.rows; ++r) {
                std::int64_t v = static_cast<std::int64_t>(b.row(r)[pc]) % p;
                b.row(r)[pc] = static_cast<double>(v);
                if (v != 0 && piv < 0) piv = r;
            }
            if (piv < 0) continue;
            if (piv != row) {
                std::swap_ranges(b.row(piv), b.row(piv) + b.cols, b.row(row));
                for (auto& g : mult) std::swap(g[piv], g[row]);
            }
            std::int64_t inv = fp_inverse(static_cast<std::int64_t>(b.row(row)[pc]), p);
            for (Eigen::Index c = pc; c < colend; ++c)
                b.row(row)[c] = static_cast<double>(
                    static_cast<std::int64_t>(b.row(row)[c]) % p * inv % p);
            std::vector<double> g(static_cast<std::size_t>(b.rows), 0.0);
            for (Eigen::Index r = row + 1; r < b.rows; ++r) {
                std::int64_t f = static_cast<std::int64_t>(b.row(r)[pc]);
                if (f == 0) continue;
                g[r] = static_cast<double>(p - f);
                fp_axpy(b.row(r) + pc + 1, b.row(row) + pc + 1, g[r], colend - pc - 1);
                b.row(r)[pc] = 0.0;
            }
            mult.push_back(std::move(g));
            prow.push_back(row);
            pinv.push_back(inv);
            pivots.push_back(pc);
            ++row;
        }
        // finalize the pivot rows' trailing parts in order, then all others
        for (std::size_t t = 0; t < prow.size(); ++t) {
            double* dst = b.row(prow[t]) + colend;
            for (std::size_t u = 0; u < t; ++u)
                if (mult[u][prow[t]] != 0.0)
                    fp_axpy(dst, b.row(prow[u]) + colend, mult[u][prow[t]], b.cols - colend);
            for (Eigen::Index c = 0; c < b.cols - colend; ++c)
                dst[c] = static_cast<double>(
                    static_cast<std::int64_t>(dst[c]) % p * pinv[t] % p);
        }
        for (Eigen::Index r = row; r < b.rows; ++r) {
            double* dst = b.row(r) + colend;
            for (std::size_t t = 0; t < prow.size(); ++t)
                if (mult[t][r] != 0.0)
                    fp_axpy(dst, b.row(prow[t]) + colend, mult[t][r], b.cols - colend);
        }
        col = colend;
    }
}

/// Backward pass: clears entries above each pivot, bottom-up; on return rows
/// 0..rank-1 hold the reduced echelon form with entries in [0, p).
inline void fp_backward(FpBuffer& b, const std::vector<Eigen::Index>& pivots)
{
    const std::int64_t p = b.p;
    for (Eigen::Index t = static_cast<Eigen::Index>(pivots.size()) - 1; t >= 0; --t) {
        Eigen::Index pc = pivots[t];
        double* src = b.row(t);
        for (Eigen::Index c = pc; c < b.cols; ++c)
            src[c] = static_cast<double>(static_cast<std::int64_t>(src[c]) % p);
        for (Eigen::Index r = 0; r < t; ++r) {
            std::int64_t f = static_cast<std::int64_t>(b.row(r)[pc]) % p;
            if (f == 0) { b.row(r)[pc] = 0.0; continue; }
            fp_axpy(b.row(r) + pc + 1, src + pc + 1, static_cast<double>(p - f),
                    b.cols - pc - 1);
            b.row(r)[pc] = 0.0;
        }
    }
}

inline std::optional<Rref<Fp>> fp_rref(const Mat<Fp>& m)
{
    if (m.rows() == 0 || m.cols() == 0) return std::nullopt;
    auto buf = fp_load(m);
    if (!buf) return std::nullopt;
    std::vector<Eigen::Index> pivots;
    fp_forward(*buf, pivots);
    fp_backward(*buf, pivots);
    Mat<Fp> out(m.rows(), m.cols());
    const Fp zero(0, buf->p);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = (i < static_cast<Eigen::Index>(pivots.size()))
                            ? Fp(static_cast<std::int64_t>(buf->row(i)[j]), buf->p)
                            : zero;
    return Rref<Fp>{std::move(out), std::move(pivots)};
}

inline std::optional<Eigen::Index> fp_rank(const Mat<Fp>& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto buf = fp_load(m);
    if (!buf) return std::nullopt;
    std::vector<Eigen::Index> pivots;
    fp_forward(*buf, pivots);
    return static_cast<Eigen::Index>(pivots.size());
}

inline std::optional<std::vector<Eigen::Index>> fp_pivot_columns(const Mat<Fp>& m)
{
    if (m.rows() == 0 || m.cols() == 0) return std::vector<Eigen::Index>{};
    auto buf = fp_load(m);
    if (!buf) return std::nullopt;
    std::vector<Eigen::Index> pivots;
    fp_forward(*buf, pivots);
    return pivots;
}

}  // namespace detail

template <class S>
Rref<S> rref(Mat<S> m)
{
    if constexpr (std::is_same_v<S, Fp>) {
        if (auto fast = detail::fp_rref(m)) return std::move(*fast);
    }
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (!(m(r, col) == S(0))) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row) m.row(piv).swap(m.row(row));
        S inv = S(1) / m(row, col);
        for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == S(0)) continue;
            S f = m(r, col);
            for (Eigen::Index c = col; c < m.cols(); ++c)
                m(r, c) = m(r, c) - f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <class S>
Eigen::Index rank(const Mat<S>& m)
{
    if constexpr (std::is_same_v<S, Fp>) {
        // forward pass only; skips the reduction above pivots
        if (auto r = detail::fp_rank(m)) return *r;
    }
    return static_cast<Eigen::Index>(rref(m).pivots.size());
}

/// Canonical kernel basis read off an already-computed reduced echelon form
/// (its matrix must have the original column count): one column per free
/// variable, with a 1 in the free position.
template <class S>
Mat<S> kernel_from_rref(const Rref<S>& r)
{
    Eigen::Index n = r.mat.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Eigen::Index k = n - static_cast<Eigen::Index>(r.pivots.size());
    Mat<S> ker = Mat<S>::Zero(n, k);
    Eigen::Index col = 0;
    for (Eigen::Index free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        ker(free, col) = S(1);
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(r.pivots.size()); ++i)
            ker(r.pivots[i], col) = -r.mat(i, free);
        ++col;
    }
    return ker;
}

/// Canonical kernel basis from the reduced row echelon form.
template <class S>
Mat<S> kernel_basis(const Mat<S>& m)
{
    return kernel_from_rref(rref(m));
}

/// Canonical basis of the column space: reduced echelon form of the row
/// space of m^T, transposed back.
template <class S>
Mat<S> image_basis(const Mat<S>& m)
{
    Mat<S> t = m.transpose();
    auto r = rref(t);
    Eigen::Index rk = static_cast<Eigen::Index>(r.pivots.size());
    Mat<S> img(m.rows(), rk);
    for (Eigen::Index i = 0; i < rk; ++i) img.col(i) = r.mat.row(i).transpose();
    return img;
}

/// One solution of m x = b, or nullopt when the system is inconsistent.
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& m, const Vec<S>& b)
{
    Mat<S> aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    auto r = rref(std::move(aug));
    Vec<S> x = Vec<S>::Zero(m.cols());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(r.pivots.size()); ++i) {
        if (r.pivots[i] == m.cols()) return std::nullopt;  // pivot in the b column
        x(r.pivots[i]) = r.mat(i, m.cols());
    }
    return x;
}

/// Columnwise solve: some X with m X = B, or nullopt.
template <class S>
std::optional<Mat<S>> solve_many(const Mat<S>& m, const Mat<S>& b)
{
    Mat<S> aug(m.rows(), m.cols() + b.cols());
    aug.leftCols(m.cols()) = m;
    aug.rightCols(b.cols()) = b;
    auto r = rref(std::move(aug));
    Mat<S> x = Mat<S>::Zero(m.cols(), b.cols());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(r.pivots.size()); ++i) {
        if (r.pivots[i] >= m.cols()) return std::nullopt;
        x.row(r.pivots[i]) = r.mat.row(i).tail(b.cols());
    }
    return x;
}

template <class S>
bool in_span(const Mat<S>& basis, const Vec<S>& v)
{
    return solve<S>(basis, v).has_value();
}

/// Pivot columns of the echelon form. Same positions as rref reports, but the
/// reduction above the pivots is skipped.
template <class S>
std::vector<Eigen::Index> pivot_columns(const Mat<S>& m)
{
    if constexpr (std::is_same_v<S, Fp>) {
        if (auto p = detail::fp_pivot_columns(m)) return std::move(*p);
    }
    return rref(m).pivots;
}

/// Columns of candidates that extend span(given) to span(given | candidates),
/// chosen greedily in column order (deterministic).
template <class S>
Mat<S> extend_basis(const Mat<S>& given, const Mat<S>& candidates)
{
    Mat<S> aug(given.rows(), given.cols() + candidates.cols());
    if (given.cols() > 0) aug.leftCols(given.cols()) = given;
    if (candidates.cols() > 0) aug.rightCols(candidates.cols()) = candidates;
    std::vector<Eigen::Index> chosen;
    for (auto p : pivot_columns<S>(aug))
        if (p >= given.cols()) chosen.push_back(p - given.cols());
    Mat<S> out(candidates.rows(), static_cast<Eigen::Index>(chosen.size()));
    for (Eigen::Index i = 0; i < out.cols(); ++i) out.col(i) = candidates.col(chosen[i]);
    return out;
}

template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b)
{
    Mat<S> out(a.rows(), a.cols() + b.cols());
    if (a.cols() > 0) out.leftCols(a.cols()) = a;
    if (b.cols() > 0) out.rightCols(b.cols()) = b;
    return out;
}

/// Kronecker product with the row-major (left-factor-major) basis ordering
/// used for all tensor constructions.
template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b)
{
    Mat<S> out = Mat<S>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) == S(0)) continue;
            for (Eigen::Index r = 0; r < b.rows(); ++r)
                for (Eigen::Index c = 0; c < b.cols(); ++c)
                    out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
        }
    return out;
}

template <class S>
bool is_zero(const Mat<S>& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!(m(i, j) == S(0))) return false;
    return true;
}

}  // namespace dga
