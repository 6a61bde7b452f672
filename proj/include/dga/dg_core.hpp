#pragma once

#include "dga/complex.hpp"

#include <memory>
#include <optional>

namespace dga {

/// Certificate that H_0(A) is local: a spanning set of a codimension-1
/// nilpotent ideal m, given by cycle representatives in A_0, plus the
/// nilpotency exponent.
template <class S>
struct LocalityCertificate {
    Mat<S> mgens;  // columns in A_0
    int exponent = 1;
};

/// DG algebra over the field, as a complex plus dense multiplication tables.
/// mult[(i,j)] maps the (a-major) basis of A_i tensor A_j to A_{i+j}.
template <class S>
struct DGAlgebra {
    Complex<S> cx;
    std::map<std::pair<int, int>, Mat<S>> mult;
    Vec<S> unit;  // in A_0
    std::optional<LocalityCertificate<S>> locality;

    explicit DGAlgebra(Complex<S> c) : cx(std::move(c)), unit(Vec<S>::Zero(cx.dim(0))) {}

    const FieldSpec& field() const { return cx.field(); }

    Mat<S> mult_table(int i, int j) const
    {
        auto it = mult.find({i, j});
        if (it != mult.end()) return it->second;
        return Mat<S>::Zero(cx.dim(i + j), cx.dim(i) * cx.dim(j));
    }

    void set_mult(int i, int j, Mat<S> m)
    {
        if (m.rows() != cx.dim(i + j) || m.cols() != Eigen::Index(cx.dim(i)) * cx.dim(j))
            throw std::invalid_argument("DGAlgebra: mult table shape mismatch");
        imprint(m, cx.field());
        mult[{i, j}] = std::move(m);
    }

    Vec<S> mul(int i, const Vec<S>& a, int j, const Vec<S>& b) const
    {
        return mult_table(i, j) * kron<S>(a, b);
    }

    /// Matrix of left multiplication by a fixed a in A_i, as a map A_j -> A_{i+j}.
    Mat<S> left_mul(int i, const Vec<S>& a, int j) const
    {
        return mult_table(i, j) * kron<S>(Mat<S>(a), Mat<S>::Identity(cx.dim(j), cx.dim(j)));
    }
};

/// DG module over an algebra: a complex plus action tables
/// act[(i,j)] : A_i tensor M_j -> M_{i+j} (a-major columns).
template <class S>
struct DGModule {
    std::shared_ptr<const DGAlgebra<S>> alg;
    Complex<S> cx;
    std::map<std::pair<int, int>, Mat<S>> act;

    DGModule(std::shared_ptr<const DGAlgebra<S>> a, Complex<S> c)
        : alg(std::move(a)), cx(std::move(c))
    {
    }

    Mat<S> act_table(int i, int j) const
    {
        auto it = act.find({i, j});
        if (it != act.end()) return it->second;
        return Mat<S>::Zero(cx.dim(i + j), Eigen::Index(alg->cx.dim(i)) * cx.dim(j));
    }

    void set_act(int i, int j, Mat<S> m)
    {
        if (m.rows() != cx.dim(i + j) || m.cols() != Eigen::Index(alg->cx.dim(i)) * cx.dim(j))
            throw std::invalid_argument("DGModule: action table shape mismatch");
        imprint(m, cx.field());
        act[{i, j}] = std::move(m);
    }

    Vec<S> apply(int i, const Vec<S>& a, int j, const Vec<S>& m) const
    {
        return act_table(i, j) * kron<S>(a, m);
    }

    /// Matrix of the action of a fixed a in A_i, as a map M_j -> M_{i+j}.
    Mat<S> act_matrix(int i, const Vec<S>& a, int j) const
    {
        return act_table(i, j) * kron<S>(Mat<S>(a), Mat<S>::Identity(cx.dim(j), cx.dim(j)));
    }
};

/// A as a module over itself.
template <class S>
DGModule<S> regular_module(std::shared_ptr<const DGAlgebra<S>> a)
{
    DGModule<S> m(a, a->cx);
    for (auto& [ij, t] : a->mult) m.act[ij] = t;
    return m;
}

namespace detail {
template <class S>
Mat<S> id_of(int n)
{
    return Mat<S>::Identity(n, n);
}
}  // namespace detail

template <class S>
VerdictReport validate_dg_algebra(const DGAlgebra<S>& a)
{
    const Complex<S>& c = a.cx;
    auto vc = validate_complex(c);
    if (!vc.holds()) return vc;
    if (c.lo() < 0)
        return VerdictReport::fail("dg_algebra.positively_graded",
                                   "nonzero component in degree " + std::to_string(c.lo()));
    if (c.dim(0) > 0 && a.unit.size() != c.dim(0))
        return VerdictReport::fail("dg_algebra.unital", "unit vector has wrong length");

    int s = c.hi();
    // unitality: 1 a = a in every degree
    for (int j = 0; j <= s; ++j) {
        if (c.dim(j) == 0) continue;
        Mat<S> lm = a.mult_table(0, j) *
                    kron<S>(Mat<S>(a.unit), detail::id_of<S>(c.dim(j)));
        if (!is_zero<S>(Mat<S>(lm - detail::id_of<S>(c.dim(j)))))
            return VerdictReport::fail("dg_algebra.unital",
                                       "1*a != a in degree " + std::to_string(j), {}, {j});
    }
    // associativity on basis triples, as one matrix identity per degree triple
    for (int i = 0; i <= s; ++i)
        for (int j = 0; i + j <= s; ++j)
            for (int l = 0; i + j + l <= s; ++l) {
                if (c.dim(i) == 0 || c.dim(j) == 0 || c.dim(l) == 0) continue;
                Mat<S> lhs = a.mult_table(i + j, l) *
                             kron<S>(a.mult_table(i, j), detail::id_of<S>(c.dim(l)));
                Mat<S> rhs = a.mult_table(i, j + l) *
                             kron<S>(detail::id_of<S>(c.dim(i)), a.mult_table(j, l));
                if (!is_zero<S>(Mat<S>(lhs - rhs)))
                    return VerdictReport::fail("dg_algebra.associative",
                                               "(ab)c != a(bc) at degrees (" + std::to_string(i) +
                                                   "," + std::to_string(j) + "," +
                                                   std::to_string(l) + ")");
            }
    // graded commutativity and odd squares
    for (int i = 0; i <= s; ++i)
        for (int j = 0; i + j <= s; ++j) {
            if (c.dim(i) == 0 || c.dim(j) == 0) continue;
            Mat<S> tij = a.mult_table(i, j);
            Mat<S> tji = a.mult_table(j, i);
            S sgn = (i * j % 2 == 0) ? S(1) : S(-1);
            for (int ai = 0; ai < c.dim(i); ++ai)
                for (int bj = 0; bj < c.dim(j); ++bj) {
                    Vec<S> lhs = tij.col(Eigen::Index(ai) * c.dim(j) + bj);
                    Vec<S> rhs = sgn * tji.col(Eigen::Index(bj) * c.dim(i) + ai);
                    if (!is_zero<S>(Mat<S>(lhs - rhs)))
                        return VerdictReport::fail(
                            "dg_algebra.graded_commutative",
                            "ab != (-1)^{|a||b|}ba at degrees (" + std::to_string(i) + "," +
                                std::to_string(j) + ") basis (" + std::to_string(ai) + "," +
                                std::to_string(bj) + ")");
                }
            if (i == j && i % 2 != 0) {
                for (int ai = 0; ai < c.dim(i); ++ai) {
                    Vec<S> e = Vec<S>::Zero(c.dim(i));
                    e(ai) = S(1);
                    if (!is_zero<S>(Mat<S>(a.mul(i, e, i, e))))
                        return VerdictReport::fail("dg_algebra.odd_square",
                                                   "a^2 != 0 in odd degree " + std::to_string(i) +
                                                       " basis " + std::to_string(ai));
                }
            }
        }
    // Leibniz rule
    for (int i = 0; i <= s; ++i)
        for (int j = 0; i + j <= s; ++j) {
            if (c.dim(i) == 0 || c.dim(j) == 0) continue;
            Mat<S> lhs = c.d(i + j) * a.mult_table(i, j);
            Mat<S> rhs = a.mult_table(i - 1, j) * kron<S>(c.d(i), detail::id_of<S>(c.dim(j)));
            Mat<S> second = a.mult_table(i, j - 1) * kron<S>(detail::id_of<S>(c.dim(i)), c.d(j));
            rhs = (i % 2 == 0) ? Mat<S>(rhs + second) : Mat<S>(rhs - second);
            if (!is_zero<S>(Mat<S>(lhs - rhs)))
                return VerdictReport::fail("dg_algebra.leibniz",
                                           "Leibniz fails at degrees (" + std::to_string(i) + "," +
                                               std::to_string(j) + ")");
        }
    return VerdictReport::pass("dg_algebra");
}

template <class S>
VerdictReport validate_dg_module(const DGModule<S>& m)
{
    const Complex<S>& mc = m.cx;
    const Complex<S>& ac = m.alg->cx;
    auto vc = validate_complex(mc);
    if (!vc.holds()) return vc;
    int s = ac.hi();
    // unitality
    for (int j = mc.lo(); j <= mc.hi(); ++j) {
        if (mc.dim(j) == 0) continue;
        Mat<S> lm = m.act_table(0, j) *
                    kron<S>(Mat<S>(m.alg->unit), detail::id_of<S>(mc.dim(j)));
        if (!is_zero<S>(Mat<S>(lm - detail::id_of<S>(mc.dim(j)))))
            return VerdictReport::fail("dg_module.unital",
                                       "1*m != m in degree " + std::to_string(j), {}, {j});
    }
    // associativity over the algebra
    for (int i = 0; i <= s; ++i)
        for (int j = 0; i + j <= s; ++j)
            for (int l = mc.lo(); l <= mc.hi(); ++l) {
                if (ac.dim(i) == 0 || ac.dim(j) == 0 || mc.dim(l) == 0) continue;
                Mat<S> lhs = m.act_table(i + j, l) *
                             kron<S>(m.alg->mult_table(i, j), detail::id_of<S>(mc.dim(l)));
                Mat<S> rhs = m.act_table(i, j + l) *
                             kron<S>(detail::id_of<S>(ac.dim(i)), m.act_table(j, l));
                if (!is_zero<S>(Mat<S>(lhs - rhs)))
                    return VerdictReport::fail("dg_module.associative",
                                               "(ab)m != a(bm) at degrees (" + std::to_string(i) +
                                                   "," + std::to_string(j) + "," +
                                                   std::to_string(l) + ")");
            }
    // Leibniz rule for the action
    for (int i = 0; i <= s; ++i)
        for (int j = mc.lo(); j <= mc.hi(); ++j) {
            if (ac.dim(i) == 0 || mc.dim(j) == 0) continue;
            Mat<S> lhs = mc.d(i + j) * m.act_table(i, j);
            Mat<S> rhs = m.act_table(i - 1, j) * kron<S>(ac.d(i), detail::id_of<S>(mc.dim(j)));
            Mat<S> second = m.act_table(i, j - 1) * kron<S>(detail::id_of<S>(ac.dim(i)), mc.d(j));
            rhs = (i % 2 == 0) ? Mat<S>(rhs + second) : Mat<S>(rhs - second);
            if (!is_zero<S>(Mat<S>(lhs - rhs)))
                return VerdictReport::fail("dg_module.leibniz",
                                           "Leibniz fails at degrees (" + std::to_string(i) + "," +
                                               std::to_string(j) + ")");
        }
    return VerdictReport::pass("dg_module");
}

/// Checks the supplied locality certificate: span is an ideal of H_0(A) of
/// codimension 1 with m^e = 0. Missing certificate -> inconclusive.
template <class S>
VerdictReport validate_locality(const DGAlgebra<S>& a)
{
    if (!a.locality)
        return VerdictReport::unknown("locality", "no certificate supplied");
    const auto& cert = *a.locality;
    Homology<S> h(a.cx);
    long h0 = h.dim(0);
    if (h0 == 0) return VerdictReport::fail("locality", "H_0(A) = 0");
    if (cert.mgens.rows() != a.cx.dim(0))
        return VerdictReport::fail("locality", "certificate vectors have wrong length");

    Mat<S> mh = h.project(0, cert.mgens);  // m in H_0 coordinates
    Mat<S> mbasis = image_basis<S>(mh);
    if (mbasis.cols() != h0 - 1)
        return VerdictReport::fail("locality", "span of m does not have codimension 1 in H_0");
    Mat<S> oneh = h.project(0, Mat<S>(a.unit));
    if (in_span<S>(mbasis, Vec<S>(oneh.col(0))))
        return VerdictReport::fail("locality", "1 lies in m");

    // ideal: H_0 * m lands in m
    Mat<S> reps = h.basis(0);
    for (Eigen::Index i = 0; i < reps.cols(); ++i)
        for (Eigen::Index g = 0; g < cert.mgens.cols(); ++g) {
            Vec<S> prod = a.mul(0, Vec<S>(reps.col(i)), 0, Vec<S>(cert.mgens.col(g)));
            Mat<S> cls = h.project(0, Mat<S>(prod));
            if (!in_span<S>(mbasis, Vec<S>(cls.col(0))))
                return VerdictReport::fail("locality", "m is not an ideal of H_0(A)");
        }

    // nilpotency: m^e = 0 with the stated exponent
    Mat<S> power = cert.mgens;  // representatives of a spanning set of m^t
    for (int t = 2; t <= cert.exponent; ++t) {
        std::vector<Vec<S>> prods;
        for (Eigen::Index i = 0; i < power.cols(); ++i)
            for (Eigen::Index g = 0; g < cert.mgens.cols(); ++g)
                prods.push_back(a.mul(0, Vec<S>(power.col(i)), 0, Vec<S>(cert.mgens.col(g))));
        Mat<S> nxt(a.cx.dim(0), static_cast<Eigen::Index>(prods.size()));
        for (std::size_t i = 0; i < prods.size(); ++i) nxt.col(i) = prods[i];
        power = image_basis<S>(Mat<S>(h.project(0, nxt)));
        // keep representatives: lift H coordinates back through the basis
        power = Mat<S>(h.basis(0) * power);
        if (power.cols() == 0) break;
    }
    if (power.cols() != 0 && !is_zero<S>(Mat<S>(h.project(0, power))))
        return VerdictReport::fail("locality",
                                   "m^" + std::to_string(cert.exponent) + " != 0 in H_0");
    return VerdictReport::pass("locality");
}

/// inf/sup of homology plus per-degree minimal generator counts of H_i over
/// H_0(A) (via the locality certificate and Nakayama). Without a
/// certificate the k-dimension is reported instead.
template <class S>
struct HomologicalBounds {
    int inf = std::numeric_limits<int>::max();
    int sup = std::numeric_limits<int>::min();
    std::map<int, long> h_dims;
    std::map<int, long> min_gens;
    bool gens_over_h0 = false;
};

template <class S>
HomologicalBounds<S> homological_bounds(const DGModule<S>& m)
{
    HomologicalBounds<S> out;
    Homology<S> h(m.cx);
    out.inf = h.inf();
    out.sup = h.sup();
    out.h_dims = h.dim_table();
    bool local = m.alg->locality && validate_locality(*m.alg).holds();
    out.gens_over_h0 = local;
    for (auto& [i, hd] : out.h_dims) {
        if (!local) {
            out.min_gens[i] = hd;
            continue;
        }
        const Mat<S>& gens = m.alg->locality->mgens;
        Mat<S> reps = h.basis(i);
        std::vector<Vec<S>> prods;
        for (Eigen::Index g = 0; g < gens.cols(); ++g)
            for (Eigen::Index c = 0; c < reps.cols(); ++c)
                prods.push_back(m.apply(0, Vec<S>(gens.col(g)), i, Vec<S>(reps.col(c))));
        Mat<S> cols(m.cx.dim(i), static_cast<Eigen::Index>(prods.size()));
        for (std::size_t c = 0; c < prods.size(); ++c) cols.col(c) = prods[c];
        Mat<S> mh = prods.empty() ? Mat<S>(hd, 0) : Mat<S>(h.project(i, cols));
        out.min_gens[i] = hd - rank<S>(mh);
    }
    return out;
}

}  // namespace dga
