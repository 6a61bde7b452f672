#pragma once

#include "dga/linalg.hpp"
#include "dga/verdict.hpp"

#include <limits>
#include <map>
#include <memory>

namespace dga {

/// Bounded chain complex of finite-dimensional vector spaces, indexed
/// homologically: the differential d(i) maps degree i to degree i-1.
template <class S>
class Complex {
public:
    explicit Complex(FieldSpec field) : field_(field) {}

    /// dims[j] is the dimension in degree lo+j; diffs[j] is d(lo+j), of
    /// shape dim(lo+j-1) x dim(lo+j). diffs may be shorter than dims; the
    /// missing maps are zero.
    Complex(FieldSpec field, int lo, std::vector<int> dims, std::vector<Mat<S>> diffs)
        : field_(field), lo_(lo), dims_(std::move(dims)), diff_(std::move(diffs))
    {
        diff_.resize(dims_.size());
        for (std::size_t j = 0; j < dims_.size(); ++j) {
            if (diff_[j].size() == 0)
                diff_[j] = Mat<S>::Zero(dim(lo_ + int(j) - 1), dims_[j]);
            if (diff_[j].rows() != dim(lo_ + int(j) - 1) || diff_[j].cols() != dims_[j])
                throw std::invalid_argument("Complex: differential shape mismatch in degree " +
                                            std::to_string(lo_ + int(j)));
            imprint(diff_[j], field_);
        }
        trim();
    }

    const FieldSpec& field() const { return field_; }
    /// Support interval; hi() < lo() for the zero complex.
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool is_zero_complex() const { return dims_.empty(); }

    int dim(int i) const
    {
        int j = i - lo_;
        return (j >= 0 && j < static_cast<int>(dims_.size())) ? dims_[j] : 0;
    }

    Mat<S> d(int i) const
    {
        int j = i - lo_;
        if (j >= 0 && j < static_cast<int>(diff_.size())) return diff_[j];
        return Mat<S>::Zero(dim(i - 1), dim(i));
    }

    long total_dim() const
    {
        long t = 0;
        for (int x : dims_) t += x;
        return t;
    }

    bool same_shape(const Complex& o) const
    {
        return field_ == o.field_ && lo_ == o.lo_ && dims_ == o.dims_;
    }

private:
    void trim()
    {
        while (!dims_.empty() && dims_.back() == 0) { dims_.pop_back(); diff_.pop_back(); }
        while (!dims_.empty() && dims_.front() == 0) {
            dims_.erase(dims_.begin());
            diff_.erase(diff_.begin());
            ++lo_;
        }
    }

    FieldSpec field_;
    int lo_ = 0;
    std::vector<int> dims_;
    std::vector<Mat<S>> diff_;
};

template <class S>
VerdictReport validate_complex(const Complex<S>& x)
{
    for (int i = x.lo() + 1; i <= x.hi(); ++i) {
        if (!is_zero<S>(x.d(i) * x.d(i + 1)))
            return VerdictReport::fail("complex.d_squared",
                                       "d*d != 0 into degree " + std::to_string(i - 1),
                                       TrustWindow::all(), {i - 1});
    }
    return VerdictReport::pass("complex.d_squared");
}

/// Per-degree homology with explicit cycle/boundary bases and a projection
/// onto a canonical homology basis. Bases come from reduced echelon forms,
/// so identical inputs give identical bases. Everything is computed lazily
/// and memoized: dim(i) costs two ranks, the bases are only materialized by
/// basis/cycles/boundaries/project, and untouched degrees cost nothing.
template <class S>
class Homology {
public:
    /// When constructed from an lvalue the complex must outlive this object.
    explicit Homology(const Complex<S>& x) : x_(&x) {}
    explicit Homology(Complex<S>&& x)
        : owned_(std::make_shared<Complex<S>>(std::move(x))), x_(owned_.get())
    {
    }

    long dim(int i) const
    {
        if (auto it = dims_.find(i); it != dims_.end()) return it->second;
        long d;
        if (auto it = data_.find(i); it != data_.end())
            d = it->second.hbasis.cols();
        else if (x_->dim(i) == 0)
            d = 0;
        else
            d = x_->dim(i) - rank_d(i) - rank_d(i + 1);
        dims_[i] = d;
        return d;
    }

    /// Homology support: [inf, sup]; inf > sup when homology vanishes.
    int inf() const
    {
        for (int i = x_->lo(); i <= x_->hi(); ++i)
            if (dim(i) > 0) return i;
        return std::numeric_limits<int>::max();
    }
    int sup() const
    {
        for (int i = x_->hi(); i >= x_->lo(); --i)
            if (dim(i) > 0) return i;
        return std::numeric_limits<int>::min();
    }
    bool is_acyclic() const { return inf() > sup(); }

    /// Cycle representatives of the canonical homology basis in degree i.
    Mat<S> basis(int i) const
    {
        const Data* d = ensure(i);
        return d ? d->hbasis : Mat<S>(0, 0);
    }
    Mat<S> cycles(int i) const
    {
        const Data* d = ensure(i);
        return d ? d->cycles : Mat<S>(0, 0);
    }
    Mat<S> boundaries(int i) const
    {
        const Data* d = ensure(i);
        return d ? d->boundaries : Mat<S>(0, 0);
    }

    /// Coordinates of cycle columns z in the homology basis of degree i.
    /// Throws when a column is not a cycle of this complex.
    Mat<S> project(int i, const Mat<S>& z) const
    {
        const Data* d = ensure(i);
        if (!d) {
            if (z.rows() != 0 && !is_zero(z))
                throw std::invalid_argument("Homology::project: nonzero class outside support");
            return Mat<S>(0, z.cols());
        }
        Mat<S> span = hcat<S>(d->boundaries, d->hbasis);
        auto x = solve_many<S>(span, z);
        if (!x) throw std::invalid_argument("Homology::project: input is not a cycle");
        return x->bottomRows(d->hbasis.cols());
    }

    std::map<int, long> dim_table() const
    {
        std::map<int, long> t;
        for (int i = x_->lo(); i <= x_->hi(); ++i)
            if (dim(i) > 0) t[i] = dim(i);
        return t;
    }

private:
    struct Data {
        Mat<S> cycles, boundaries, hbasis;
    };

    long rank_d(int i) const
    {
        if (auto it = ranks_.find(i); it != ranks_.end()) return it->second;
        long r = (x_->dim(i) == 0 || x_->dim(i - 1) == 0) ? 0 : rank<S>(x_->d(i));
        ranks_[i] = r;
        return r;
    }

    const Data* ensure(int i) const
    {
        if (i < x_->lo() || i > x_->hi()) return nullptr;
        auto it = data_.find(i);
        if (it == data_.end()) {
            Data d;
            d.cycles = kernel_basis<S>(x_->d(i));
            d.boundaries = image_basis<S>(x_->d(i + 1));
            d.hbasis = extend_basis<S>(d.boundaries, d.cycles);
            it = data_.emplace(i, std::move(d)).first;
        }
        return &it->second;
    }

    std::shared_ptr<Complex<S>> owned_;
    const Complex<S>* x_;
    mutable std::map<int, Data> data_;
    mutable std::map<int, long> ranks_;
    mutable std::map<int, long> dims_;
};

/// Degree-n chain map: components f(i) : src_i -> tgt_{i+n} satisfying
/// d f = (-1)^n f d.
template <class S>
struct ChainMap {
    Complex<S> src, tgt;
    int degree = 0;
    std::map<int, Mat<S>> comps;

    ChainMap(Complex<S> s, Complex<S> t, int n = 0)
        : src(std::move(s)), tgt(std::move(t)), degree(n)
    {
    }

    Mat<S> at(int i) const
    {
        auto it = comps.find(i);
        if (it != comps.end()) return it->second;
        return Mat<S>::Zero(tgt.dim(i + degree), src.dim(i));
    }

    void set(int i, Mat<S> m)
    {
        if (m.rows() != tgt.dim(i + degree) || m.cols() != src.dim(i))
            throw std::invalid_argument("ChainMap: component shape mismatch in degree " +
                                        std::to_string(i));
        imprint(m, src.field());
        comps[i] = std::move(m);
    }

    static ChainMap identity(const Complex<S>& x)
    {
        ChainMap f(x, x, 0);
        for (int i = x.lo(); i <= x.hi(); ++i)
            f.set(i, Mat<S>::Identity(x.dim(i), x.dim(i)));
        return f;
    }
};

template <class S>
VerdictReport verify_chain_map(const ChainMap<S>& f)
{
    int n = f.degree;
    S sgn = (n % 2 == 0) ? S(1) : S(-1);
    for (int i = f.src.lo(); i <= f.src.hi() + 1; ++i) {
        Mat<S> lhs = f.tgt.d(i + n) * f.at(i);
        Mat<S> rhs = sgn * (f.at(i - 1) * f.src.d(i));
        if (!is_zero<S>(Mat<S>(lhs - rhs)))
            return VerdictReport::fail("chain_map", "fails in degree " + std::to_string(i),
                                       TrustWindow::all(), {i});
    }
    return VerdictReport::pass("chain_map");
}

/// H_i(f) : H_i(src) -> H_{i+degree}(tgt) on the canonical bases.
template <class S>
Mat<S> induced_on_homology(const ChainMap<S>& f, const Homology<S>& hs, const Homology<S>& ht,
                           int i)
{
    Mat<S> reps = hs.basis(i);
    Mat<S> images = f.at(i) * reps;
    return ht.project(i + f.degree, images);
}

/// Bijectivity of H(f) on every degree of the given window (source degrees).
template <class S>
VerdictReport is_quasi_iso(const ChainMap<S>& f, TrustWindow window = TrustWindow::all())
{
    auto cm = verify_chain_map(f);
    if (!cm.holds()) return VerdictReport::fail("quasi_iso", "not a chain map: " + cm.detail);
    Homology<S> hs(f.src);
    Homology<S> ht(f.tgt);
    int lo = std::min(f.src.lo(), f.tgt.lo() - f.degree);
    int hi = std::max(f.src.hi(), f.tgt.hi() - f.degree);
    VerdictReport rep = VerdictReport::pass("quasi_iso", window);
    for (int i = lo; i <= hi; ++i) {
        if (!window.contains(i)) continue;
        long ds = hs.dim(i), dt = ht.dim(i + f.degree);
        if (ds > 0) rep.tables["H_src"][i] = ds;
        if (dt > 0) rep.tables["H_tgt"][i + f.degree] = dt;
        if (ds == 0 && dt == 0) continue;
        if (ds != dt) {
            return VerdictReport::fail(
                "quasi_iso",
                "H dims differ in degree " + std::to_string(i) + ": " + std::to_string(ds) +
                    " vs " + std::to_string(dt),
                window, {i});
        }
        Mat<S> h = induced_on_homology(f, hs, ht, i);
        if (rank<S>(h) != ds)
            return VerdictReport::fail("quasi_iso",
                                       "H(f) not bijective in degree " + std::to_string(i),
                                       window, {i});
    }
    return rep;
}

/// (Sigma^n x)_i = x_{i-n} with differential scaled by (-1)^n.
template <class S>
Complex<S> shift(const Complex<S>& x, int n)
{
    std::vector<int> dims;
    std::vector<Mat<S>> diffs;
    for (int i = x.lo(); i <= x.hi(); ++i) {
        dims.push_back(x.dim(i));
        Mat<S> d = x.d(i);
        if (n % 2 != 0) d = Mat<S>(-d);
        diffs.push_back(std::move(d));
    }
    return Complex<S>(x.field(), x.lo() + n, std::move(dims), std::move(diffs));
}

/// Soft truncation below: degrees > n unchanged, degree n replaced by the
/// cycle subspace, nothing below. Returns the truncation and its inclusion.
template <class S>
std::pair<Complex<S>, ChainMap<S>> soft_truncate_below(const Complex<S>& x, int n)
{
    if (n <= x.lo()) return {x, ChainMap<S>::identity(x)};
    Mat<S> z = kernel_basis<S>(x.d(n));
    std::vector<int> dims;
    std::vector<Mat<S>> diffs;
    dims.push_back(static_cast<int>(z.cols()));
    diffs.push_back(Mat<S>::Zero(0, z.cols()));
    if (n + 1 <= x.hi()) {
        // d(n+1) lands in cycles; re-express in the cycle basis
        auto w = solve_many<S>(z, x.d(n + 1));
        if (!w) throw std::logic_error("soft_truncate_below: d*d != 0");
        dims.push_back(x.dim(n + 1));
        diffs.push_back(*w);
        for (int i = n + 2; i <= x.hi(); ++i) {
            dims.push_back(x.dim(i));
            diffs.push_back(x.d(i));
        }
    }
    Complex<S> tau(x.field(), n, std::move(dims), std::move(diffs));
    ChainMap<S> inc(tau, x, 0);
    inc.set(n, z);
    for (int i = n + 1; i <= x.hi(); ++i) inc.set(i, Mat<S>::Identity(x.dim(i), x.dim(i)));
    return {std::move(tau), std::move(inc)};
}

/// Soft truncation above: degrees < n unchanged, degree n replaced by the
/// quotient by boundaries, nothing above. Returns the truncation and the
/// projection onto it.
template <class S>
std::pair<Complex<S>, ChainMap<S>> soft_truncate_above(const Complex<S>& x, int n)
{
    if (n >= x.hi()) return {x, ChainMap<S>::identity(x)};
    Mat<S> b = image_basis<S>(x.d(n + 1));
    Mat<S> cmpl = extend_basis<S>(b, Mat<S>::Identity(x.dim(n), x.dim(n)));
    // projection in the [b | cmpl] coordinates: drop the boundary part
    Mat<S> full = hcat<S>(b, cmpl);
    auto coords = solve_many<S>(full, Mat<S>::Identity(x.dim(n), x.dim(n)));
    if (!coords) throw std::logic_error("soft_truncate_above: basis extension failed");
    Mat<S> proj = coords->bottomRows(cmpl.cols());

    std::vector<int> dims;
    std::vector<Mat<S>> diffs;
    for (int i = x.lo(); i < n; ++i) {
        dims.push_back(x.dim(i));
        diffs.push_back(x.d(i));
    }
    dims.push_back(static_cast<int>(cmpl.cols()));
    diffs.push_back(Mat<S>(x.d(n) * cmpl));
    Complex<S> tau(x.field(), x.lo(), std::move(dims), std::move(diffs));
    ChainMap<S> pr(x, tau, 0);
    for (int i = x.lo(); i < n; ++i) pr.set(i, Mat<S>::Identity(x.dim(i), x.dim(i)));
    pr.set(n, proj);
    return {std::move(tau), std::move(pr)};
}

/// Basis bookkeeping for (x tensor y): degree i is the direct sum of blocks
/// x_p tensor y_q with p+q=i, blocks ordered by increasing p, and within a
/// block the x index is major.
template <class S>
struct TensorLayout {
    const Complex<S>* x;
    const Complex<S>* y;

    TensorLayout(const Complex<S>& a, const Complex<S>& b) : x(&a), y(&b) {}

    int lo() const { return x->lo() + y->lo(); }
    int hi() const { return x->hi() + y->hi(); }
    int dim(int i) const
    {
        int t = 0;
        for (int p = x->lo(); p <= x->hi(); ++p) t += x->dim(p) * y->dim(i - p);
        return t;
    }
    /// Offset of block (p, i-p) inside degree i.
    int offset(int i, int p) const
    {
        int off = 0;
        for (int pp = x->lo(); pp < p; ++pp) off += x->dim(pp) * y->dim(i - pp);
        return off;
    }
    int index(int p, int q, int xi, int yi) const
    {
        return offset(p + q, p) + xi * y->dim(q) + yi;
    }
};

template <class S>
Complex<S> tensor_complexes(const Complex<S>& x, const Complex<S>& y)
{
    if (!(x.field() == y.field()))
        throw std::invalid_argument("tensor_complexes: field mismatch");
    if (x.is_zero_complex() || y.is_zero_complex()) return Complex<S>(x.field());
    TensorLayout<S> t(x, y);
    std::vector<int> dims;
    std::vector<Mat<S>> diffs;
    for (int i = t.lo(); i <= t.hi(); ++i) {
        int di = t.dim(i), dprev = (i > t.lo()) ? t.dim(i - 1) : 0;
        Mat<S> d = Mat<S>::Zero(dprev, di);
        for (int p = x.lo(); p <= x.hi(); ++p) {
            int q = i - p;
            if (x.dim(p) == 0 || y.dim(q) == 0) continue;
            int col = t.offset(i, p);
            if (x.dim(p - 1) > 0 && i > t.lo()) {
                d.block(t.offset(i - 1, p - 1), col, x.dim(p - 1) * y.dim(q),
                        x.dim(p) * y.dim(q)) +=
                    kron<S>(x.d(p), Mat<S>::Identity(y.dim(q), y.dim(q)));
            }
            if (y.dim(q - 1) > 0 && i > t.lo()) {
                Mat<S> blk = kron<S>(Mat<S>::Identity(x.dim(p), x.dim(p)), y.d(q));
                if (p % 2 != 0) blk = Mat<S>(-blk);
                d.block(t.offset(i - 1, p), col, x.dim(p) * y.dim(q - 1), x.dim(p) * y.dim(q)) +=
                    blk;
            }
        }
        dims.push_back(di);
        diffs.push_back(std::move(d));
    }
    return Complex<S>(x.field(), t.lo(), std::move(dims), std::move(diffs));
}

/// f boxtimes g on complexes: block (p,q) -> (p+|f|, q+|g|) with the Koszul
/// sign (-1)^{|g| p}.
template <class S>
ChainMap<S> tensor_chain_maps(const ChainMap<S>& f, const ChainMap<S>& g)
{
    Complex<S> src = tensor_complexes(f.src, g.src);
    Complex<S> tgt = tensor_complexes(f.tgt, g.tgt);
    TensorLayout<S> ts(f.src, g.src);
    TensorLayout<S> tt(f.tgt, g.tgt);
    int n = f.degree + g.degree;
    ChainMap<S> h(src, tgt, n);
    for (int i = ts.lo(); i <= ts.hi(); ++i) {
        if (src.dim(i) == 0) continue;
        Mat<S> m = Mat<S>::Zero(tgt.dim(i + n), src.dim(i));
        for (int p = f.src.lo(); p <= f.src.hi(); ++p) {
            int q = i - p;
            if (f.src.dim(p) == 0 || g.src.dim(q) == 0) continue;
            int tp = p + f.degree, tq = q + g.degree;
            if (f.tgt.dim(tp) == 0 || g.tgt.dim(tq) == 0) continue;
            Mat<S> blk = kron<S>(f.at(p), g.at(q));
            if ((g.degree % 2 != 0) && (p % 2 != 0)) blk = Mat<S>(-blk);
            m.block(tt.offset(i + n, tp), ts.offset(i, p), f.tgt.dim(tp) * g.tgt.dim(tq),
                    f.src.dim(p) * g.src.dim(q)) = blk;
        }
        h.set(i, std::move(m));
    }
    return h;
}

/// Builds the Kunneth map on canonical homology bases and checks degreewise
/// bijectivity onto H(x tensor y).
template <class S>
VerdictReport kunneth_compare(const Complex<S>& x, const Complex<S>& y)
{
    if (!(x.field() == y.field()))
        throw std::invalid_argument("kunneth_compare: field mismatch");
    auto vx = validate_complex(x);
    if (!vx.holds()) return vx;
    auto vy = validate_complex(y);
    if (!vy.holds()) return vy;

    Complex<S> txy = tensor_complexes(x, y);
    Homology<S> hx(x), hy(y), ht(txy);
    TensorLayout<S> layout(x, y);

    VerdictReport rep = VerdictReport::pass("kunneth");
    for (int i = txy.lo(); i <= txy.hi(); ++i) {
        long expected = 0;
        for (int p = x.lo(); p <= x.hi(); ++p) expected += hx.dim(p) * hy.dim(i - p);
        if (expected != ht.dim(i))
            return VerdictReport::fail("kunneth",
                                       "dimension mismatch in degree " + std::to_string(i),
                                       TrustWindow::all(), {i});
        if (expected == 0) continue;
        // columns: tensors of cycle representatives, projected into H(x tensor y)
        Mat<S> cols(txy.dim(i), expected);
        Eigen::Index c = 0;
        for (int p = x.lo(); p <= x.hi(); ++p) {
            int q = i - p;
            Mat<S> bx = hx.basis(p), by = hy.basis(q);
            for (Eigen::Index a = 0; a < bx.cols(); ++a)
                for (Eigen::Index b = 0; b < by.cols(); ++b) {
                    Vec<S> v = Vec<S>::Zero(txy.dim(i));
                    for (Eigen::Index xi = 0; xi < bx.rows(); ++xi)
                        for (Eigen::Index yi = 0; yi < by.rows(); ++yi)
                            v(layout.index(p, q, int(xi), int(yi))) = bx(xi, a) * by(yi, b);
                    cols.col(c++) = v;
                }
        }
        Mat<S> h = ht.project(i, cols);
        if (rank<S>(h) != expected)
            return VerdictReport::fail("kunneth",
                                       "Kunneth map not bijective in degree " + std::to_string(i),
                                       TrustWindow::all(), {i});
        rep.tables["H_tensor"][i] = expected;
    }
    return rep;
}

}  // namespace dga
