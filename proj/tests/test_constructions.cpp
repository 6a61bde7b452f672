#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dga/catalog.hpp"
#include "dga/constructions.hpp"

using namespace dga;

namespace {

const FieldSpec F101 = FieldSpec::prime(101);

CatalogEntry<Fp> koszul_T2()
{
    auto t2 = make_truncated_poly<Fp>(F101, 2);
    Vec<Fp> x = Vec<Fp>::Zero(2);
    x(1) = Fp(1, 101);
    return make_koszul<Fp>(t2, x);
}

// the periodic resolution of k over T2: one generator per degree, d e_j = x e_{j-1}
Ladder<Fp> t2_residue_ladder(const CatalogEntry<Fp>& t2, int D)
{
    Ladder<Fp> l;
    l.alg = t2.algebra;
    for (int j = 0; j <= D; ++j) l.deg.push_back(j);
    Vec<Fp> x = Vec<Fp>::Zero(2);
    x(1) = Fp(1, 101);
    for (int j = 1; j <= D; ++j) l.set_coef(j - 1, j, x);
    return l;
}

}  // namespace

TEST_CASE("tensor algebra of truncated polynomial rings is k[x,y]/(x^2,y^2)")
{
    auto t2 = make_truncated_poly<Fp>(F101, 2);
    auto a = tensor_algebras(*t2.algebra, *t2.algebra);
    CHECK(a->cx.dim(0) == 4);
    CHECK(validate_dg_algebra(*a).holds());
    CHECK(validate_locality(*a).holds());
    // basis 1=(0,0), y=(0,1)... layout: index = i*2+j for (x^i, y^j)
    auto e = [&](int i) {
        Vec<Fp> v = Vec<Fp>::Zero(4);
        v(i) = Fp(1, 101);
        return v;
    };
    Vec<Fp> x = e(2), y = e(1);
    Vec<Fp> xy = a->mul(0, x, 0, y);
    CHECK(xy(3) == Fp(1, 101));
    CHECK(is_zero<Fp>(Mat<Fp>(a->mul(0, x, 0, x))));
    CHECK(is_zero<Fp>(Mat<Fp>(a->mul(0, y, 0, y))));
    CHECK(is_zero<Fp>(Mat<Fp>(xy - a->mul(0, y, 0, x))));
}

TEST_CASE("odd-degree factors anticommute in K tensor K")
{
    auto K = koszul_T2();
    auto a = tensor_algebras(*K.algebra, *K.algebra);
    CHECK(validate_dg_algebra(*a).holds());
    TensorLayout<Fp> t(K.algebra->cx, K.algebra->cx);
    // e⊗1 and 1⊗e in degree 1
    Vec<Fp> e1 = Vec<Fp>::Zero(a->cx.dim(1));
    e1(t.index(1, 0, 0, 0)) = Fp(1, 101);
    Vec<Fp> e2 = Vec<Fp>::Zero(a->cx.dim(1));
    e2(t.index(0, 1, 0, 0)) = Fp(1, 101);
    Vec<Fp> p = a->mul(1, e1, 1, e2);
    Vec<Fp> q = a->mul(1, e2, 1, e1);
    CHECK(!is_zero<Fp>(Mat<Fp>(p)));
    CHECK(is_zero<Fp>(Mat<Fp>(p + q)));
    CHECK(p(t.index(1, 1, 0, 0)) == Fp(1, 101));
}

TEST_CASE("k tensor A is A on the nose")
{
    auto k = make_field<Fp>(F101);
    auto s3 = make_short_artinian<Fp>(F101);
    auto a = tensor_algebras(*k.algebra, *s3.algebra);
    for (int i = 0; i <= s3.algebra->cx.hi(); ++i) CHECK(a->cx.dim(i) == s3.algebra->cx.dim(i));
    CHECK(is_zero<Fp>(Mat<Fp>(a->mult_table(0, 0) - s3.algebra->mult_table(0, 0))));
    CHECK(is_zero<Fp>(Mat<Fp>(Mat<Fp>(a->unit) - Mat<Fp>(s3.algebra->unit))));
}

TEST_CASE("tensor modules: regular over the tensor algebra and omega tensor omega")
{
    auto s3 = make_short_artinian<Fp>(F101);
    auto a = tensor_algebras(*s3.algebra, *s3.algebra);
    DGModule<Fp> treg = tensor_modules(s3.module("regular"), s3.module("regular"), a);
    CHECK(validate_dg_module(treg).holds());
    DGModule<Fp> reg = regular_module<Fp>(a);
    CHECK(is_zero<Fp>(Mat<Fp>(treg.act_table(0, 0) - reg.act_table(0, 0))));

    DGModule<Fp> omom = tensor_modules(s3.module("dualizing"), s3.module("dualizing"), a);
    CHECK(omom.cx.dim(0) == 9);
    CHECK(validate_dg_module(omom).holds());

    auto K = koszul_T2();
    auto ak = tensor_algebras(*K.algebra, *K.algebra);
    DGModule<Fp> tk = tensor_modules(K.module("regular"), K.module("regular"), ak);
    CHECK(validate_dg_module(tk).holds());
}

TEST_CASE("ladder materialization: the periodic T2 resolution")
{
    auto t2 = make_truncated_poly<Fp>(F101, 2);
    Ladder<Fp> l = t2_residue_ladder(t2, 5);
    DGModule<Fp> f = l.materialize();
    CHECK(validate_dg_module(f).holds());
    for (int n = 0; n <= 5; ++n) CHECK(f.cx.dim(n) == 2);
    Homology<Fp> h(f.cx);
    CHECK(h.dim(0) == 1);
    for (int n = 1; n <= 4; ++n) CHECK(h.dim(n) == 0);
    CHECK(h.dim(5) == 1);  // truncation kernel at the top
}

TEST_CASE("Hom_A(A, M) is M and Hom over T2 computes Ext(k,k)")
{
    auto s3 = make_short_artinian<Fp>(F101);
    Ladder<Fp> reg = regular_ladder<Fp>(s3.algebra);
    HomComplex<Fp> h = hom_complex(reg, s3.module("dualizing"));
    CHECK(validate_dg_module(h.mod).holds());
    CHECK(h.mod.cx.dim(0) == 3);
    CHECK(is_zero<Fp>(
        Mat<Fp>(h.mod.act_table(0, 0) - s3.module("dualizing").act_table(0, 0))));

    auto t2 = make_truncated_poly<Fp>(F101, 2);
    Ladder<Fp> l = t2_residue_ladder(t2, 5);
    HomComplex<Fp> ext = hom_complex(l, t2.module("residue"));
    CHECK(validate_dg_module(ext.mod).holds());
    Homology<Fp> hh(ext.mod.cx);
    for (int n = -5; n <= 0; ++n) CHECK(hh.dim(n) == 1);
    CHECK(hh.dim(1) == 0);
    CHECK(hh.dim(-6) == 0);
}

TEST_CASE("Hom over the field reflects degrees")
{
    auto k = make_field<Fp>(F101);
    Ladder<Fp> l;
    l.alg = k.algebra;
    l.deg = {0, 2, 2, 3};
    HomComplex<Fp> h = hom_complex(l, k.module("regular"));
    CHECK(h.mod.cx.dim(0) == 1);
    CHECK(h.mod.cx.dim(-2) == 2);
    CHECK(h.mod.cx.dim(-3) == 1);
    CHECK(validate_dg_module(h.mod).holds());
}

TEST_CASE("free tensor: F(5) tensor_T2 k computes Tor(k,k)")
{
    auto t2 = make_truncated_poly<Fp>(F101, 2);
    Ladder<Fp> l = t2_residue_ladder(t2, 5);
    FreeTensor<Fp> ft = free_tensor(l, t2.module("residue"));
    CHECK(validate_dg_module(ft.mod).holds());
    Homology<Fp> h(ft.mod.cx);
    for (int n = 0; n <= 5; ++n) CHECK(h.dim(n) == 1);

    // A ⊗_A M is M
    auto s3 = make_short_artinian<Fp>(F101);
    FreeTensor<Fp> fo = free_tensor(regular_ladder<Fp>(s3.algebra), s3.module("dualizing"));
    CHECK(validate_dg_module(fo.mod).holds());
    CHECK(is_zero<Fp>(
        Mat<Fp>(fo.mod.act_table(0, 0) - s3.module("dualizing").act_table(0, 0))));
}

TEST_CASE("tensor over the algebra: balanced quotients")
{
    auto s3 = make_short_artinian<Fp>(F101);
    // A ⊗_A ω has the dimensions and homology of ω
    QuotientModule<Fp> q = tensor_over_algebra(s3.module("regular"), s3.module("dualizing"));
    CHECK(validate_dg_module(q.mod).holds());
    CHECK(q.mod.cx.dim(0) == 3);
    // ω ⊗_A k is ω/mω, which is 2-dimensional
    QuotientModule<Fp> qk = tensor_over_algebra(s3.module("dualizing"), s3.module("residue"));
    CHECK(qk.mod.cx.dim(0) == 2);
    // k ⊗_A k is k
    QuotientModule<Fp> kk = tensor_over_algebra(s3.module("residue"), s3.module("residue"));
    CHECK(kk.mod.cx.dim(0) == 1);

    auto K = koszul_T2();
    QuotientModule<Fp> qK = tensor_over_algebra(K.module("regular"), K.module("regular"));
    CHECK(validate_dg_module(qK.mod).holds());
    for (int n = 0; n <= 1; ++n) CHECK(qK.mod.cx.dim(n) == K.algebra->cx.dim(n));
}

TEST_CASE("alpha is an isomorphism on catalog pairs")
{
    auto t2 = make_truncated_poly<Fp>(F101, 2);
    auto s3 = make_short_artinian<Fp>(F101);
    auto K = koszul_T2();

    auto a1 = alpha_map(t2.module("regular"), t2.module("regular"));
    CHECK(a1.check.holds());
    auto a2 = alpha_map(s3.module("dualizing"), s3.module("regular"));
    CHECK(a2.check.holds());
    auto a3 = alpha_map(s3.module("dualizing"), s3.module("residue"));
    CHECK(a3.check.holds());
    auto a4 = alpha_map(K.module("regular"), K.module("regular"));
    CHECK(a4.check.holds());
    // zero factor: both sides vanish
    DGModule<Fp> zero(s3.algebra, Complex<Fp>(F101));
    auto a5 = alpha_map(s3.module("dualizing"), zero);
    CHECK(a5.check.holds());
    CHECK(a5.source.cx.is_zero_complex());
}

TEST_CASE("gamma tilde is an isomorphism on catalog quadruples")
{
    auto s3 = make_short_artinian<Fp>(F101);
    auto g1 = gamma_tilde(s3.module("regular"), s3.module("regular"), s3.module("regular"),
                          s3.module("regular"));
    CHECK(g1.check.holds());
    auto g2 = gamma_tilde(s3.module("regular"), s3.module("dualizing"), s3.module("regular"),
                          s3.module("dualizing"));
    CHECK(g2.check.holds());
    CHECK(g2.source.cx.dim(0) == 9);
    CHECK(g2.target.mod.cx.dim(0) == 9);

    auto K = koszul_T2();
    auto g3 = gamma_tilde(K.module("regular"), K.module("regular"), K.module("regular"),
                          K.module("regular"));
    CHECK(g3.check.holds());

    auto t2 = make_truncated_poly<Fp>(F101, 2);
    auto g4 = gamma_tilde(t2.module("regular"), t2.module("residue"), t2.module("regular"),
                          t2.module("residue"));
    CHECK(g4.check.holds());
}

TEST_CASE("boxtimes signs")
{
    // two-term complexes with zero differential over F101
    Complex<Fp> x(F101, 0, {1, 1}, {});
    ChainMap<Fp> idx = ChainMap<Fp>::identity(x);
    ChainMap<Fp> g(x, x, 1);  // degree-1 map hitting the top
    Mat<Fp> one(1, 1);
    one(0, 0) = Fp(1, 101);
    g.set(0, one);
    CHECK(verify_chain_map(g).holds());

    ChainMap<Fp> bg = boxtimes(idx, g);
    TensorLayout<Fp> t(x, x);
    // on the block with |x'| = 1 the Koszul sign flips
    Mat<Fp> c1 = bg.at(1);
    CHECK(c1(t.index(1, 1, 0, 0), t.index(1, 0, 0, 0)) == Fp(-1, 101));
    Mat<Fp> c0 = bg.at(0);
    CHECK(c0(t.index(0, 1, 0, 0), t.index(0, 0, 0, 0)) == Fp(1, 101));

    // id ⊠ id = id
    ChainMap<Fp> ii = boxtimes(idx, idx);
    for (int n = 0; n <= 2; ++n)
        CHECK(is_zero<Fp>(Mat<Fp>(ii.at(n) - Mat<Fp>::Identity(ii.src.dim(n), ii.src.dim(n)))));

    // ∂⊠id + id⊠∂ is the tensor differential
    auto K = koszul_T2();
    const Complex<Fp>& kc = K.algebra->cx;
    ChainMap<Fp> dmap(kc, kc, -1);
    for (int i = kc.lo(); i <= kc.hi(); ++i) dmap.set(i, kc.d(i));
    ChainMap<Fp> idk = ChainMap<Fp>::identity(kc);
    ChainMap<Fp> s1 = boxtimes(dmap, idk);
    ChainMap<Fp> s2 = boxtimes(idk, dmap);
    Complex<Fp> tkk = tensor_complexes(kc, kc);
    for (int n = tkk.lo(); n <= tkk.hi(); ++n)
        CHECK(is_zero<Fp>(Mat<Fp>(tkk.d(n) - (s1.at(n) + s2.at(n)))));
}

TEST_CASE("tensor ladders stay semifree-shaped")
{
    auto t2 = make_truncated_poly<Fp>(F101, 2);
    Ladder<Fp> l = t2_residue_ladder(t2, 3);
    auto a = tensor_algebras(*t2.algebra, *t2.algebra);
    Ladder<Fp> lt = tensor_ladder(l, l, a);
    CHECK(lt.gens() == 16);
    DGModule<Fp> f = lt.materialize();
    CHECK(validate_dg_module(f).holds());
    // generator counts per degree follow the convolution of (1,1,1,1)
    std::map<int, int> count;
    for (int d : lt.deg) ++count[d];
    CHECK(count[0] == 1);
    CHECK(count[3] == 4);
    CHECK(count[6] == 1);
}

TEST_CASE("eta tilde is an isomorphism and respects shifts")
{
    auto t2 = make_truncated_poly<Fp>(F101, 2);
    Ladder<Fp> reg = regular_ladder<Fp>(t2.algebra);
    auto e1 = eta_tilde(reg, t2.module("residue"), reg, t2.module("regular"));
    CHECK(e1.check.holds());

    Ladder<Fp> l = t2_residue_ladder(t2, 3);
    auto e2 = eta_tilde(l, t2.module("residue"), reg, t2.module("regular"));
    CHECK(e2.check.holds());
    auto e3 = eta_tilde(l, t2.module("residue"), l, t2.module("residue"));
    CHECK(e3.check.holds());

    Ladder<Fp> shifted = l;
    for (int& d : shifted.deg) d += 1;
    auto e4 = eta_tilde(shifted, t2.module("residue"), reg, t2.module("regular"));
    CHECK(e4.check.holds());

    auto s3 = make_short_artinian<Fp>(F101);
    Ladder<Fp> regs = regular_ladder<Fp>(s3.algebra);
    auto e5 = eta_tilde(regs, s3.module("dualizing"), regs, s3.module("dualizing"));
    CHECK(e5.check.holds());
}

TEST_CASE("evaluation map")
{
    auto s3 = make_short_artinian<Fp>(F101);
    // P = A: evaluation at 1 is an isomorphism
    auto ev1 = evaluation_map(regular_ladder<Fp>(s3.algebra), s3.module("dualizing"));
    CHECK(ev1.check.holds());
    CHECK(is_degreewise_iso(ev1.map).holds());

    // P = A ⊕ ΣA: surjective chain map
    Ladder<Fp> l2;
    l2.alg = s3.algebra;
    l2.deg = {0, 1};
    auto ev2 = evaluation_map(l2, s3.module("regular"));
    CHECK(ev2.check.holds());
    for (int n = 0; n <= 0; ++n) CHECK(rank<Fp>(ev2.map.at(n)) == s3.algebra->cx.dim(n));

    auto t2 = make_truncated_poly<Fp>(F101, 2);
    auto ev3 = evaluation_map(t2_residue_ladder(t2, 4), t2.module("residue"));
    CHECK(ev3.check.holds());
}

TEST_CASE("module truncation below")
{
    auto K = koszul_T2();
    auto [tau, inc] = truncate_module_below(K.module("regular"), 1);
    CHECK(tau.cx.dim(1) == 1);  // cycles in degree 1 are spanned by x·e
    CHECK(tau.cx.dim(0) == 0);
    CHECK(validate_dg_module(tau).holds());
    CHECK(verify_module_map(inc, tau, K.module("regular")).holds());

    auto s3 = make_short_artinian<Fp>(F101);
    auto [t0, i0] = truncate_module_below(s3.module("dualizing"), 0);
    CHECK(t0.cx.dim(0) == 3);
    CHECK(validate_dg_module(t0).holds());
}

TEST_CASE("module map verifier rejects a broken sign")
{
    auto K = koszul_T2();
    DGModule<Fp> reg = K.module("regular");
    ChainMap<Fp> f = ChainMap<Fp>::identity(reg.cx);
    CHECK(verify_module_map(f, reg, reg).holds());
    Mat<Fp> m = f.at(1);
    m(0, 0) = -m(0, 0);
    f.set(1, m);
    CHECK(verify_module_map(f, reg, reg).fails());
}
