// Acceptance gate: runs the nine top-level criteria and prints one pass/fail
// line per criterion.  Exits nonzero if any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "betti_oracle.hpp"
#include "catalog_mutations.hpp"
#include "dga/catalog.hpp"
#include "dga/semidual.hpp"

using namespace dga;

namespace {

const FieldSpec F101 = FieldSpec::prime(101);

long now_ms()
{
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

struct Gate {
    int failures = 0;
    long total_ms = 0;

    void run(int id, const std::string& name, const std::function<bool(std::ostream&)>& fn)
    {
        std::ostringstream why;
        long t0 = now_ms();
        bool ok = false;
        try {
            ok = fn(why);
        } catch (const std::exception& e) {
            why << "exception: " << e.what();
        }
        long dt = now_ms() - t0;
        total_ms += dt;
        std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << name << "  ("
                  << dt << " ms)" << std::endl;
        if (!ok) {
            ++failures;
            std::cout << "  reason: " << why.str() << std::endl;
        }
    }
};

// Two reports agree when the verdicts match and every shared witness table has
// identical dimensions at each degree inside both certified windows.
bool agree_on_overlap(const VerdictReport& a, const VerdictReport& b, const std::string& tag,
                      std::ostream& why)
{
    if (a.verdict != b.verdict) {
        why << tag << ": verdict " << to_string(a.verdict) << " vs " << to_string(b.verdict)
            << "; ";
        return false;
    }
    TrustWindow w = a.window.intersect(b.window);
    auto entry = [](const VerdictReport& r, const std::string& t, int i) {
        auto it = r.tables.find(t);
        if (it == r.tables.end()) return 0L;
        auto jt = it->second.find(i);
        return jt == it->second.end() ? 0L : jt->second;
    };
    for (const auto& [tname, ta] : a.tables) {
        if (!b.tables.count(tname)) continue;
        // prefixed tables are copies of constituent diagnostics carrying their
        // own windows; the constituents are compared separately
        if (tname.find('.') != std::string::npos) continue;
        auto keys = ta;
        for (const auto& [i, v] : b.tables.at(tname)) keys[i] = v;
        for (const auto& [i, unused] : keys) {
            if (!w.contains(i)) continue;
            if (entry(a, tname, i) != entry(b, tname, i)) {
                why << tag << ": table " << tname << " degree " << i << ": "
                    << entry(a, tname, i) << " vs " << entry(b, tname, i) << "; ";
                return false;
            }
        }
    }
    return true;
}

bool same_class(const ShiftClassVerdict& a, const ShiftClassVerdict& b, const std::string& tag,
                std::ostream& why)
{
    if (a.equivalent() != b.equivalent() || a.distinct() != b.distinct() ||
        (a.equivalent() && a.shift != b.shift)) {
        why << tag << ": classification changed; ";
        return false;
    }
    return true;
}

template <class S>
std::vector<long> poincare_vec(const SemifreeResolution<S>& r, int dmax)
{
    auto p = poincare_coefficients(r);
    std::vector<long> out;
    for (int j = 0; j <= dmax; ++j) out.push_back(p.count(j) ? p.at(j) : 0);
    return out;
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

// Results the window-soundness criterion recomputes at D+2.
struct BaseResults {
    VerdictReport c1_r, c1_k;
    SuiteReport c2;
    VerdictReport c3;
    std::vector<VerdictReport> c6_factors;              // bass(omega, N) for N in {R, k, omega}
    std::vector<std::vector<VerdictReport>> c6_tensor;  // 3x3 combined verdicts
    std::vector<std::string> c4_dumps;                  // serialized Kunneth dimension tables
    std::vector<Verdict> c5_verdicts;
    std::vector<long> c7_t2, c7_s3;
    long base_ms = 0;  // criteria 1-7 wall time, the budget reference for criterion 8
};

}  // namespace

int main()
{
    Gate gate;
    BaseResults base;

    auto t2 = make_truncated_poly<Fp>(F101, 2);
    auto s3 = make_short_artinian<Fp>(F101);
    DGModule<Fp> R3 = s3.module("regular");
    DGModule<Fp> k3 = s3.module("residue");
    DGModule<Fp> w3 = s3.module("dualizing");

    gate.run(1, "gorenstein count over T2", [&](std::ostream& why) {
        base.c1_r = is_semidualizing(*t2.algebra, t2.module("regular"), 6);
        base.c1_k = is_semidualizing(*t2.algebra, t2.module("residue"), 6);
        if (!base.c1_r.holds()) why << "R expected holds, got " << to_string(base.c1_r.verdict);
        if (!base.c1_k.fails()) why << "k expected fails, got " << to_string(base.c1_k.verdict);
        return base.c1_r.holds() && base.c1_k.fails();
    });

    gate.run(2, "four tensor candidates semidualizing and pairwise distinct", [&](std::ostream& why) {
        std::vector<std::pair<DGModule<Fp>, DGModule<Fp>>> cases = {
            {R3, R3}, {R3, w3}, {w3, R3}, {w3, w3}};
        base.c2 = theorem_suite(*s3.algebra, *s3.algebra, cases, 6);
        bool ok = base.c2.pairs.size() == 4 && base.c2.cross.size() == 6;
        if (!ok) why << "unexpected suite shape; ";
        for (const auto& p : base.c2.pairs) {
            if (!p.factor1.holds() || !p.factor2.holds() || !p.tensor.holds()) {
                why << p.name << ": tensor " << to_string(p.tensor.verdict) << "; ";
                ok = false;
            }
            if (!p.biconditional.holds()) {
                why << p.name << ": biconditional " << to_string(p.biconditional.verdict) << "; ";
                ok = false;
            }
        }
        for (const auto& c : base.c2.cross)
            if (!c.tensor.distinct()) {
                why << "cross (" << c.i << "," << c.j << ") not distinct: " << c.tensor.detail
                    << "; ";
                ok = false;
            }
        return ok;
    });

    gate.run(3, "k tensor omega is not semidualizing", [&](std::ostream& why) {
        auto atens = tensor_algebras(*s3.algebra, *s3.algebra);
        DGModule<Fp> kw = tensor_modules(k3, w3, atens);
        base.c3 = is_semidualizing(*atens, kw, 6);
        if (!base.c3.fails()) why << "expected fails, got " << to_string(base.c3.verdict);
        return base.c3.fails();
    });

    auto run_kunneth = [&](std::vector<std::string>& dumps, std::ostream& why) {
        bool ok = true;
        dumps.clear();
        for (int s = 0; s < 100; ++s) {
            Complex<Fp> x = random_complex<Fp>(FieldSpec::prime(13), 1000 + 2 * s, 4, 0, 3);
            Complex<Fp> y = random_complex<Fp>(FieldSpec::prime(13), 1001 + 2 * s, 4, 0, 3);
            auto v = kunneth_compare(x, y);
            if (!v.holds()) {
                why << "pair " << s << ": " << to_string(v.verdict) << " (" << v.detail << "); ";
                ok = false;
            }
            std::ostringstream d;
            for (const auto& [t, tab] : v.tables)
                for (const auto& [i, n] : tab) d << t << i << ":" << n << " ";
            dumps.push_back(d.str());
        }
        return ok;
    };
    gate.run(4, "Kunneth comparison on 100 seeded random pairs", [&](std::ostream& why) {
        return run_kunneth(base.c4_dumps, why);
    });

    auto run_isos = [&](std::vector<Verdict>& out, std::ostream& why) {
        auto K = [&] {
            Vec<Fp> x = Vec<Fp>::Zero(2);
            x(1) = Fp(1, 101);
            return make_koszul<Fp>(t2, x);
        }();
        std::vector<VerdictReport> checks;
        // alpha: (X1 tensor X2) tensor A_i -> X_i
        checks.push_back(alpha_map(t2.module("regular"), t2.module("regular")).check);
        checks.push_back(alpha_map(t2.module("regular"), t2.module("residue")).check);
        checks.push_back(alpha_map(t2.module("residue"), t2.module("residue")).check);
        checks.push_back(alpha_map(w3, R3).check);
        checks.push_back(alpha_map(w3, k3).check);
        checks.push_back(alpha_map(w3, w3).check);
        checks.push_back(alpha_map(K.module("regular"), K.module("regular")).check);
        checks.push_back(alpha_map(R3, t2.module("residue")).check);
        // gamma-tilde: Hom(X1,Y1) tensor Hom(X2,Y2) -> Hom(X1 tensor X2, Y1 tensor Y2)
        checks.push_back(gamma_tilde(R3, R3, R3, R3).check);
        checks.push_back(gamma_tilde(R3, w3, R3, w3).check);
        checks.push_back(gamma_tilde(R3, k3, R3, w3).check);
        checks.push_back(
            gamma_tilde(t2.module("regular"), t2.module("residue"), t2.module("regular"),
                        t2.module("residue"))
                .check);
        checks.push_back(
            gamma_tilde(K.module("regular"), K.module("regular"), K.module("regular"),
                        K.module("regular"))
                .check);
        checks.push_back(gamma_tilde(t2.module("regular"), t2.module("regular"), R3, w3).check);
        // eta-tilde: Hom(F1,M1) tensor Hom(F2,M2) -> Hom(F1 tensor F2, M1 tensor M2)
        Ladder<Fp> regt = regular_ladder<Fp>(t2.algebra);
        Ladder<Fp> regs = regular_ladder<Fp>(s3.algebra);
        Ladder<Fp> lad = t2_residue_ladder(t2, 3);
        checks.push_back(eta_tilde(regt, t2.module("residue"), regt, t2.module("regular")).check);
        checks.push_back(eta_tilde(lad, t2.module("residue"), regt, t2.module("regular")).check);
        checks.push_back(eta_tilde(lad, t2.module("residue"), lad, t2.module("residue")).check);
        checks.push_back(eta_tilde(regs, w3, regs, w3).check);
        checks.push_back(eta_tilde(regs, k3, regs, R3).check);
        checks.push_back(eta_tilde(lad, t2.module("regular"), regs, w3).check);

        bool ok = checks.size() == 20;
        if (!ok) why << "expected 20 combinations, got " << checks.size() << "; ";
        out.clear();
        for (std::size_t i = 0; i < checks.size(); ++i) {
            out.push_back(checks[i].verdict);
            if (!checks[i].holds()) {
                why << "combo " << i << ": " << to_string(checks[i].verdict) << " ("
                    << checks[i].detail << "); ";
                ok = false;
            }
        }
        return ok;
    };
    gate.run(5, "isomorphism constructions on 20 catalog combinations", [&](std::ostream& why) {
        return run_isos(base.c5_verdicts, why);
    });

    std::vector<DGModule<Fp>> c6_mods = {R3, k3, w3};
    auto run_bass = [&](int d, int dv, std::vector<VerdictReport>& factors,
                        std::vector<std::vector<VerdictReport>>& tensor, std::ostream& why) {
        auto r = semifree_resolution(w3, d);
        factors.clear();
        for (const auto& n : c6_mods) factors.push_back(bass_membership(r, n));
        // same computation as bass_tensor_membership, with the factor and
        // spot-check resolutions shared across the nine pairs
        auto atens = tensor_algebras(*s3.algebra, *s3.algebra);
        auto ct = tensor_modules(w3, w3, atens);
        auto rt = semifree_resolution(ct, dv);
        tensor.assign(3, std::vector<VerdictReport>(3));
        bool ok = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto spot = bass_membership(rt, tensor_modules(c6_mods[i], c6_mods[j], atens));
                tensor[i][j] =
                    detail::combine_tensor("bass.tensor", factors[i], factors[j], spot, dv);
                if (factors[i].holds() && factors[j].holds() && !tensor[i][j].holds()) {
                    why << "pair (" << i << "," << j << "): factors hold but tensor "
                        << to_string(tensor[i][j].verdict) << "; ";
                    ok = false;
                }
            }
        return ok;
    };
    gate.run(6, "Bass class tensor compatibility over S3", [&](std::ostream& why) {
        bool ok = run_bass(8, 1, base.c6_factors, base.c6_tensor, why);
        // positive direction must actually fire: omega is in its own Bass class
        if (!base.c6_factors[2].holds() || !base.c6_tensor[2][2].holds()) {
            why << "omega/omega case expected holds; ";
            ok = false;
        }
        // converse on a failing factor: k is not in B_omega (its RHom witness is
        // nonvanishing throughout the window), so the tensor verdict cannot hold
        // and must carry the factor witness
        const auto& fk = base.c6_factors[1];
        const auto& tkw = base.c6_tensor[1][2];
        if (fk.holds()) {
            why << "bass(omega, k) unexpectedly holds; ";
            ok = false;
        }
        if (tkw.holds()) {
            why << "tensor verdict for (k, omega) unexpectedly holds; ";
            ok = false;
        }
        bool witness = false;
        for (const auto& [t, tab] : tkw.tables)
            if (t.rfind("factor1.", 0) == 0 && !tab.empty()) witness = true;
        if (!witness) {
            why << "tensor verdict for (k, omega) lacks the failing-factor witness; ";
            ok = false;
        }
        return ok;
    });

    gate.run(7, "resolution Poincare coefficients match the syzygy oracle", [&](std::ostream& why) {
        auto rk = semifree_resolution(t2.module("residue"), 10);
        base.c7_t2 = poincare_vec(rk, 10);
        std::vector<long> ones(11, 1);
        bool ok = true;
        if (base.c7_t2 != ones) {
            why << "k over T2: coefficients not all 1; ";
            ok = false;
        }
        if (base.c7_t2 != testutil::oracle_betti(t2.module("residue"), 10)) {
            why << "k over T2: oracle disagrees; ";
            ok = false;
        }
        auto rw = semifree_resolution(w3, 2);
        base.c7_s3 = poincare_vec(rw, 2);
        if (base.c7_s3 != std::vector<long>({2, 3, 6})) {
            why << "omega over S3: expected (2,3,6); ";
            ok = false;
        }
        if (base.c7_s3 != testutil::oracle_betti(w3, 2)) {
            why << "omega over S3: oracle disagrees; ";
            ok = false;
        }
        return ok;
    });

    base.base_ms = gate.total_ms;
    gate.run(8, "window soundness: verdicts stable at D+2", [&](std::ostream& why) {
        bool ok = true;
        // criterion 1 at D = 8
        ok &= agree_on_overlap(is_semidualizing(*t2.algebra, t2.module("regular"), 8), base.c1_r,
                               "c1 R", why);
        ok &= agree_on_overlap(is_semidualizing(*t2.algebra, t2.module("residue"), 8), base.c1_k,
                               "c1 k", why);
        // criterion 2 at D = 8, factor scale (the direct tensor computation at
        // D+2 exceeds the memory budget; the tensor verdict is determined by
        // the factor conjunction, which is what the base run certified)
        ok &= agree_on_overlap(is_semidualizing(*s3.algebra, R3, 8), base.c2.pairs[0].factor1,
                               "c2 factor R", why);
        ok &= agree_on_overlap(is_semidualizing(*s3.algebra, w3, 8), base.c2.pairs[3].factor1,
                               "c2 factor omega", why);
        std::vector<std::pair<DGModule<Fp>, DGModule<Fp>>> cases = {
            {R3, R3}, {R3, w3}, {w3, R3}, {w3, w3}};
        for (const auto& c : base.c2.cross) {
            ok &= same_class(classify_shift(*s3.algebra, cases[c.i].first, cases[c.j].first, 8),
                             c.factor1, "c2 cross factor1", why);
            ok &= same_class(classify_shift(*s3.algebra, cases[c.i].second, cases[c.j].second, 8),
                             c.factor2, "c2 cross factor2", why);
        }
        // criterion 3 at D = 8, factor scale: the failing factor k stays failing
        auto k8 = is_semidualizing(*s3.algebra, k3, 8);
        if (!k8.fails() || !base.c3.fails()) {
            why << "c3: failing verdict not stable; ";
            ok = false;
        }
        // criteria 4 and 5 take no degree bound (their checks are degreewise
        // complete); rerun verbatim and require identical witnesses
        std::vector<std::string> dumps;
        std::ostringstream sink;
        if (!run_kunneth(dumps, sink) || dumps != base.c4_dumps) {
            why << "c4: rerun diverged; ";
            ok = false;
        }
        std::vector<Verdict> vs;
        if (!run_isos(vs, sink) || vs != base.c5_verdicts) {
            why << "c5: rerun diverged; ";
            ok = false;
        }
        // criterion 6 at D = 10, spot checks at dv = 2
        std::vector<VerdictReport> f10;
        std::vector<std::vector<VerdictReport>> t10;
        if (!run_bass(10, 2, f10, t10, why)) ok = false;
        for (int i = 0; i < 3; ++i) {
            ok &= agree_on_overlap(f10[i], base.c6_factors[i],
                                   "c6 factor " + std::to_string(i), why);
            for (int j = 0; j < 3; ++j)
                ok &= agree_on_overlap(t10[i][j], base.c6_tensor[i][j],
                                       "c6 tensor (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")",
                                       why);
        }
        // criterion 7 at D+2: longer resolutions extend the same coefficients
        auto rk12 = semifree_resolution(t2.module("residue"), 12);
        auto v12 = poincare_vec(rk12, 12);
        if (std::vector<long>(v12.begin(), v12.begin() + 11) != base.c7_t2) {
            why << "c7: T2 coefficients changed; ";
            ok = false;
        }
        auto rw4 = semifree_resolution(w3, 4);
        auto v4 = poincare_vec(rw4, 4);
        if (std::vector<long>(v4.begin(), v4.begin() + 3) != base.c7_s3) {
            why << "c7: S3 coefficients changed; ";
            ok = false;
        }
        if (v4 != testutil::oracle_betti(w3, 4)) {
            why << "c7: S3 oracle disagrees at D=4; ";
            ok = false;
        }
        return ok;
    });
    long c8_ms = gate.total_ms - base.base_ms;
    if (c8_ms > 2 * base.base_ms) {
        std::cout << "criterion 8: FAIL  budget exceeded (" << c8_ms << " ms vs base "
                  << base.base_ms << " ms)" << std::endl;
        ++gate.failures;
    }

    gate.run(9, "50 seeded mutations rejected by the matching validator", [&](std::ostream& why) {
        SplitMix64 rng(9090);
        bool ok = true;
        for (int i = 0; i < 50; ++i) {
            auto mu = testutil::next_breaking_mutation(s3, rng);
            if (mu.target == testutil::MutationTarget::Algebra) {
                if (validate_dg_algebra(*mu.algebra).holds()) {
                    why << "mutation " << i << " (" << mu.description
                        << "): algebra validator did not reject; ";
                    ok = false;
                }
            } else {
                if (validate_dg_module(*mu.module).holds()) {
                    why << "mutation " << i << " (" << mu.description
                        << "): module validator did not reject; ";
                    ok = false;
                }
                // the mutation is confined to the module: the algebra validator
                // must still accept
                if (!validate_dg_algebra(*mu.module->alg).holds()) {
                    why << "mutation " << i << " (" << mu.description
                        << "): algebra validator rejected a module mutation; ";
                    ok = false;
                }
            }
        }
        return ok;
    });

    std::cout << (gate.failures == 0 ? "ACCEPTANCE: all criteria passed"
                                     : "ACCEPTANCE: criteria failed")
              << " (" << gate.total_ms << " ms total)" << std::endl;
    return gate.failures == 0 ? 0 : 1;
}
