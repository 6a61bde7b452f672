#pragma once

#include "dga/dg_core.hpp"
#include "dga/random.hpp"

#include <string>

namespace dga {

/// A named algebra with its distinguished modules, keyed by role
/// ("regular", "residue", "dualizing"). Every entry passes the dg-core
/// validators at construction.
template <class S>
struct CatalogEntry {
    std::string name;
    std::shared_ptr<const DGAlgebra<S>> algebra;
    std::map<std::string, DGModule<S>> modules;

    const DGModule<S>& module(const std::string& role) const
    {
        auto it = modules.find(role);
        if (it == modules.end())
            throw std::invalid_argument("CatalogEntry: no module with role '" + role + "'");
        return it->second;
    }
};

namespace detail {

template <class S>
void check_entry(const CatalogEntry<S>& e)
{
    auto va = validate_dg_algebra(*e.algebra);
    if (!va.holds()) throw std::logic_error("catalog: " + e.name + ": " + va.detail);
    auto vl = validate_locality(*e.algebra);
    if (vl.fails()) throw std::logic_error("catalog: " + e.name + ": " + vl.detail);
    for (auto& [role, m] : e.modules) {
        auto vm = validate_dg_module(m);
        if (!vm.holds())
            throw std::logic_error("catalog: " + e.name + "/" + role + ": " + vm.detail);
    }
}

}  // namespace detail

/// The field k as a DG algebra concentrated in degree 0.
template <class S>
CatalogEntry<S> make_field(const FieldSpec& f)
{
    if (!FieldOps<S>::matches(f)) throw std::invalid_argument("make_field: scalar/field mismatch");
    Complex<S> c(f, 0, {1}, {});
    auto alg = std::make_shared<DGAlgebra<S>>(c);
    alg->unit = Vec<S>::Zero(1);
    alg->unit(0) = FieldOps<S>::one(f);
    Mat<S> t(1, 1);
    t(0, 0) = FieldOps<S>::one(f);
    alg->set_mult(0, 0, t);
    alg->locality = LocalityCertificate<S>{Mat<S>(1, 0), 1};
    CatalogEntry<S> e{"k", alg, {}};
    e.modules.emplace("regular", regular_module<S>(alg));
    e.modules.emplace("residue", regular_module<S>(alg));
    detail::check_entry(e);
    return e;
}

/// k[x]/(x^n) in degree 0 with modules R and k; the Gorenstein witness family.
template <class S>
CatalogEntry<S> make_truncated_poly(const FieldSpec& f, int n)
{
    if (n < 2) throw std::invalid_argument("make_truncated_poly: need n >= 2");
    Complex<S> c(f, 0, {n}, {});
    auto alg = std::make_shared<DGAlgebra<S>>(c);
    alg->unit = Vec<S>::Zero(n);
    alg->unit(0) = FieldOps<S>::one(f);
    Mat<S> t = Mat<S>::Zero(n, Eigen::Index(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a + b < n) t(a + b, Eigen::Index(a) * n + b) = FieldOps<S>::one(f);
    alg->set_mult(0, 0, t);
    Mat<S> m = Mat<S>::Zero(n, n - 1);
    for (int i = 1; i < n; ++i) m(i, i - 1) = FieldOps<S>::one(f);
    alg->locality = LocalityCertificate<S>{m, n};

    CatalogEntry<S> e{"T" + std::to_string(n), alg, {}};
    e.modules.emplace("regular", regular_module<S>(alg));
    // residue field: x acts as 0
    Complex<S> kc(f, 0, {1}, {});
    DGModule<S> res(alg, kc);
    Mat<S> act = Mat<S>::Zero(1, n);
    act(0, 0) = FieldOps<S>::one(f);
    res.set_act(0, 0, act);
    e.modules.emplace("residue", std::move(res));
    detail::check_entry(e);
    return e;
}

/// S3 = k[x,y]/(x^2, xy, y^2) with modules R, k and the dual module
/// omega = Hom_k(R, k); the minimal non-Gorenstein Artinian witness.
template <class S>
CatalogEntry<S> make_short_artinian(const FieldSpec& f)
{
    const S one = FieldOps<S>::one(f);
    Complex<S> c(f, 0, {3}, {});
    auto alg = std::make_shared<DGAlgebra<S>>(c);
    alg->unit = Vec<S>::Zero(3);
    alg->unit(0) = one;
    // basis 1, x, y; all products of {x,y} vanish
    Mat<S> t = Mat<S>::Zero(3, 9);
    for (int b = 0; b < 3; ++b) t(b, b) = one;          // 1 * e_b
    t(1, 3) = one;                                      // x * 1
    t(2, 6) = one;                                      // y * 1
    alg->set_mult(0, 0, t);
    Mat<S> m = Mat<S>::Zero(3, 2);
    m(1, 0) = one;
    m(2, 1) = one;
    alg->locality = LocalityCertificate<S>{m, 2};

    CatalogEntry<S> e{"S3", alg, {}};
    e.modules.emplace("regular", regular_module<S>(alg));

    Complex<S> kc(f, 0, {1}, {});
    DGModule<S> res(alg, kc);
    Mat<S> ract = Mat<S>::Zero(1, 3);
    ract(0, 0) = one;
    res.set_act(0, 0, ract);
    e.modules.emplace("residue", std::move(res));

    // omega = Hom_k(R,k), basis 1*, x*, y*, contragredient action
    // (r.f)(s) = f(rs):   x.x* = 1*,  y.y* = 1*,  everything else from m kills
    Complex<S> oc(f, 0, {3}, {});
    DGModule<S> om(alg, oc);
    Mat<S> oact = Mat<S>::Zero(3, 9);
    for (int b = 0; b < 3; ++b) oact(b, b) = one;  // 1 acts as identity
    oact(0, 3 + 1) = one;                          // x . x* = 1*
    oact(0, 6 + 2) = one;                          // y . y* = 1*
    om.set_act(0, 0, oact);
    e.modules.emplace("dualizing", std::move(om));
    detail::check_entry(e);
    return e;
}

/// Koszul extension K = R + R e with |e| = 1, e^2 = 0 and de = x, for x in
/// the certified maximal ideal of a degree-0 entry.
template <class S>
CatalogEntry<S> make_koszul(const CatalogEntry<S>& base, const Vec<S>& x)
{
    const auto& R = *base.algebra;
    if (R.cx.hi() != 0) throw std::invalid_argument("make_koszul: base must live in degree 0");
    if (!R.locality || !in_span<S>(image_basis<S>(R.locality->mgens), x))
        throw std::invalid_argument("make_koszul: x must lie in the certified maximal ideal");
    int r = R.cx.dim(0);
    const FieldSpec& f = R.field();
    Mat<S> t00 = R.mult_table(0, 0);

    // d(a e) = a x
    Mat<S> d1 = R.left_mul(0, x, 0);  // right multiplication equals left by commutativity
    Complex<S> c(f, 0, {r, r}, {Mat<S>(), d1});
    auto alg = std::make_shared<DGAlgebra<S>>(c);
    alg->unit = R.unit;
    alg->set_mult(0, 0, t00);
    alg->set_mult(0, 1, t00);  // a (b e) = (ab) e
    // (b e) a = (ab) e, no sign since |a| = 0
    Mat<S> t10 = Mat<S>::Zero(r, Eigen::Index(r) * r);
    for (int bi = 0; bi < r; ++bi)
        for (int aj = 0; aj < r; ++aj)
            t10.col(Eigen::Index(bi) * r + aj) = t00.col(Eigen::Index(aj) * r + bi);
    alg->set_mult(1, 0, t10);
    // (a e)(b e) = 0: the degree-2 component is zero, so no table is stored
    alg->locality =
        LocalityCertificate<S>{base.algebra->locality->mgens, base.algebra->locality->exponent};

    CatalogEntry<S> e{"K(" + base.name + ")", alg, {}};
    e.modules.emplace("regular", regular_module<S>(alg));
    detail::check_entry(e);
    return e;
}

/// Seeded random bounded complex with d*d = 0 by construction: each
/// differential is a random map composed with a projection that kills the
/// image of the previous one.
template <class S>
Complex<S> random_complex(const FieldSpec& f, std::uint64_t seed, int max_dim, int lo, int hi)
{
    if (max_dim > 6 || hi - lo > 4 || hi < lo)
        throw std::invalid_argument("random_complex: out of the supported range");
    SplitMix64 rng(seed);
    std::vector<int> dims;
    for (int i = lo; i <= hi; ++i) dims.push_back(static_cast<int>(rng.range(0, max_dim)));

    std::vector<Mat<S>> diffs(dims.size());
    Mat<S> prev_img(0, 0);  // image of d(i+1) inside degree i, walking downward
    for (int idx = static_cast<int>(dims.size()) - 1; idx >= 0; --idx) {
        int di = dims[idx];
        int dprev = (idx > 0) ? dims[idx - 1] : 0;
        Mat<S> raw(dprev, di);
        for (int r = 0; r < dprev; ++r)
            for (int c = 0; c < di; ++c)
                raw(r, c) = FieldOps<S>::from_int(rng.range(-3, 3), f);
        Mat<S> d;
        if (prev_img.cols() == 0) {
            d = raw;
        } else {
            // kill the incoming image: project onto a complement first
            Mat<S> cmpl = extend_basis<S>(prev_img, Mat<S>::Identity(di, di));
            Mat<S> full = hcat<S>(prev_img, cmpl);
            auto coords = solve_many<S>(full, Mat<S>::Identity(di, di));
            Mat<S> proj = Mat<S>(cmpl * coords->bottomRows(cmpl.cols()));
            d = Mat<S>(raw * proj);
        }
        diffs[idx] = d;
        prev_img = image_basis<S>(d);
    }
    return Complex<S>(f, lo, std::move(dims), std::move(diffs));
}

}  // namespace dga
