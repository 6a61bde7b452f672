#pragma once

// Shared helper: seeded single-constant mutations of catalog structures.
// Each produced mutation is guaranteed to break at least one axiom (benign
// candidates are skipped), and reports which validator must reject it.

#include "dga/catalog.hpp"
#include "dga/random.hpp"

#include <functional>

namespace dga::testutil {

enum class MutationTarget { Algebra, Module };

struct Mutation {
    MutationTarget target;
    std::string description;
    std::shared_ptr<DGAlgebra<Fp>> algebra;  // mutated copy (always set)
    std::optional<DGModule<Fp>> module;      // set for module mutations
};

inline Fp bump(Fp v) { return v + Fp(1, v.modulus() == 0 ? 101 : v.modulus()); }

/// Draws candidate single-entry mutations of the entry's tables and
/// differentials until one breaks a validator; throws after too many tries.
inline Mutation next_breaking_mutation(const CatalogEntry<Fp>& entry, SplitMix64& rng)
{
    for (int attempt = 0; attempt < 200; ++attempt) {
        bool hit_module = !entry.modules.empty() && rng.below(2) == 0;
        auto alg = std::make_shared<DGAlgebra<Fp>>(*entry.algebra);

        if (!hit_module) {
            // mutate one multiplication constant or one differential entry
            if (!alg->mult.empty() && rng.below(4) != 0) {
                auto it = alg->mult.begin();
                std::advance(it, rng.below(alg->mult.size()));
                auto& t = it->second;
                if (t.size() == 0) continue;
                Eigen::Index r = Eigen::Index(rng.below(t.rows()));
                Eigen::Index c = Eigen::Index(rng.below(t.cols()));
                t(r, c) = bump(t(r, c));
                if (validate_dg_algebra(*alg).holds()) continue;
                return {MutationTarget::Algebra,
                        "mult(" + std::to_string(it->first.first) + "," +
                            std::to_string(it->first.second) + ") entry",
                        alg, std::nullopt};
            }
            const Complex<Fp>& c = alg->cx;
            if (c.hi() == c.lo()) continue;  // no differential to mutate
            int deg = int(rng.range(c.lo() + 1, c.hi()));
            Mat<Fp> d = c.d(deg);
            if (d.size() == 0) continue;
            Eigen::Index r = Eigen::Index(rng.below(d.rows()));
            Eigen::Index cc = Eigen::Index(rng.below(d.cols()));
            d(r, cc) = bump(d(r, cc));
            std::vector<int> dims;
            std::vector<Mat<Fp>> diffs;
            for (int i = c.lo(); i <= c.hi(); ++i) {
                dims.push_back(c.dim(i));
                diffs.push_back(i == deg ? d : c.d(i));
            }
            auto mutated = std::make_shared<DGAlgebra<Fp>>(
                Complex<Fp>(c.field(), c.lo(), dims, diffs));
            mutated->mult = alg->mult;
            mutated->unit = alg->unit;
            mutated->locality = alg->locality;
            if (validate_dg_algebra(*mutated).holds()) continue;
            return {MutationTarget::Algebra, "differential entry in degree " + std::to_string(deg),
                    mutated, std::nullopt};
        }

        // module action mutation; the algebra itself stays valid
        auto mit = entry.modules.begin();
        std::advance(mit, rng.below(entry.modules.size()));
        DGModule<Fp> mod(alg, mit->second.cx);
        mod.act = mit->second.act;
        if (mod.act.empty()) continue;
        auto ait = mod.act.begin();
        std::advance(ait, rng.below(mod.act.size()));
        auto& t = ait->second;
        if (t.size() == 0) continue;
        Eigen::Index r = Eigen::Index(rng.below(t.rows()));
        Eigen::Index c = Eigen::Index(rng.below(t.cols()));
        t(r, c) = bump(t(r, c));
        if (validate_dg_module(mod).holds()) continue;
        return {MutationTarget::Module,
                mit->first + " action(" + std::to_string(ait->first.first) + "," +
                    std::to_string(ait->first.second) + ") entry",
                alg, std::move(mod)};
    }
    throw std::logic_error("next_breaking_mutation: no axiom-breaking mutation found");
}

}  // namespace dga::testutil
