#pragma once

#include "dga/catalog.hpp"
#include "dga/verdict.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace dga {

inline constexpr const char* kDefinitionsFormat = "dga-definitions";
inline constexpr const char* kReportFormat = "dga-report";
inline constexpr int kFormatVersion = 1;
inline constexpr const char* kKernelVersion = "1.0.0";

/// Named algebras and modules loaded from (or destined for) one definition
/// file. Module roles (regular/residue/dualizing) let suites pick modules
/// without hard-coded names.
template <class S>
struct DefinitionSet {
    struct NamedModule {
        std::string name;
        std::string algebra;
        std::string role;  // may be empty
        DGModule<S> mod;
    };

    FieldSpec field;
    std::vector<std::pair<std::string, std::shared_ptr<const DGAlgebra<S>>>> algebras;
    std::vector<NamedModule> modules;

    std::shared_ptr<const DGAlgebra<S>> algebra(const std::string& name) const
    {
        for (const auto& [n, a] : algebras)
            if (n == name) return a;
        throw std::runtime_error("definitions: no algebra named '" + name + "'");
    }
    const NamedModule& module(const std::string& name) const
    {
        for (const auto& m : modules)
            if (m.name == name) return m;
        throw std::runtime_error("definitions: no module named '" + name + "'");
    }
};

namespace io_detail {

template <class S>
nlohmann::json mat_entries(const Mat<S>& m)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (!(m(r, c) == S(0))) out.push_back({r, c, m(r, c).str()});
    return out;
}

template <class S>
void fill_entries(Mat<S>& m, const nlohmann::json& arr, const FieldSpec& f)
{
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 3)
            throw std::runtime_error("definitions: matrix entry must be [row, col, value]");
        long r = e[0].get<long>(), c = e[1].get<long>();
        if (r < 0 || r >= m.rows() || c < 0 || c >= m.cols())
            throw std::runtime_error("definitions: matrix entry out of range");
        m(r, c) = FieldOps<S>::parse(e[2].get<std::string>(), f);
    }
}

/// Structure-constant tables are emitted as (i, j, a, b, t, value): the
/// coefficient of target basis vector t in e_a * e_b (or e_a . m_b).
template <class S>
nlohmann::json table_entries(int i, int j, const Mat<S>& t, Eigen::Index bdim)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index col = 0; col < t.cols(); ++col)
        for (Eigen::Index row = 0; row < t.rows(); ++row)
            if (!(t(row, col) == S(0)))
                out.push_back({i, j, col / bdim, col % bdim, row, t(row, col).str()});
    return out;
}

template <class S>
Complex<S> complex_from_json(const nlohmann::json& j, const FieldSpec& f)
{
    int lo = j.value("lo", 0);
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    std::vector<Mat<S>> diffs(dims.size());
    for (std::size_t idx = 0; idx < dims.size(); ++idx) {
        int below = idx == 0 ? 0 : dims[idx - 1];
        diffs[idx] = Mat<S>::Zero(below, dims[idx]);
        imprint(diffs[idx], f);
    }
    for (const auto& e : j.value("d", nlohmann::json::array())) {
        if (!e.is_array() || e.size() != 4)
            throw std::runtime_error("definitions: differential entry must be [deg, row, col, value]");
        int deg = e[0].get<int>();
        std::size_t idx = static_cast<std::size_t>(deg - lo);
        if (deg <= lo || idx >= dims.size())
            throw std::runtime_error("definitions: differential degree out of range");
        long r = e[1].get<long>(), c = e[2].get<long>();
        if (r < 0 || r >= dims[idx - 1] || c < 0 || c >= dims[idx])
            throw std::runtime_error("definitions: differential entry out of range");
        diffs[idx](r, c) = FieldOps<S>::parse(e[3].get<std::string>(), f);
    }
    return Complex<S>(f, lo, std::move(dims), std::move(diffs));
}

template <class S>
nlohmann::json complex_to_json(const Complex<S>& c)
{
    nlohmann::json j;
    j["lo"] = c.lo();
    std::vector<int> dims;
    for (int i = c.lo(); i <= c.hi(); ++i) dims.push_back(c.dim(i));
    j["dims"] = dims;
    nlohmann::json d = nlohmann::json::array();
    for (int i = c.lo() + 1; i <= c.hi(); ++i) {
        Mat<S> m = c.d(i);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index col = 0; col < m.cols(); ++col)
                if (!(m(r, col) == S(0))) d.push_back({i, r, col, m(r, col).str()});
    }
    j["d"] = std::move(d);
    return j;
}

}  // namespace io_detail

inline FieldSpec field_from_json(const nlohmann::json& j)
{
    const auto& f = j.at("field");
    std::string kind = f.at("kind").get<std::string>();
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "prime") return FieldSpec::prime(f.at("characteristic").get<std::int64_t>());
    throw std::runtime_error("definitions: unknown field kind '" + kind + "'");
}

inline nlohmann::json field_to_json(const FieldSpec& f)
{
    nlohmann::json j;
    j["kind"] = f.kind == FieldSpec::Kind::Rationals ? "rationals" : "prime";
    j["characteristic"] = f.characteristic;
    return j;
}

template <class S>
nlohmann::json definitions_to_json(const DefinitionSet<S>& s)
{
    nlohmann::json j;
    j["format"] = kDefinitionsFormat;
    j["version"] = kFormatVersion;
    j["field"] = field_to_json(s.field);
    j["algebras"] = nlohmann::json::array();
    for (const auto& [name, alg] : s.algebras) {
        nlohmann::json a = io_detail::complex_to_json(alg->cx);
        a["name"] = name;
        nlohmann::json mult = nlohmann::json::array();
        for (const auto& [ij, t] : alg->mult)
            for (const auto& e :
                 io_detail::table_entries<S>(ij.first, ij.second, t, alg->cx.dim(ij.second)))
                mult.push_back(e);
        a["mult"] = std::move(mult);
        nlohmann::json unit = nlohmann::json::array();
        for (Eigen::Index i = 0; i < alg->unit.size(); ++i)
            if (!(alg->unit(i) == S(0))) unit.push_back({i, alg->unit(i).str()});
        a["unit"] = std::move(unit);
        if (alg->locality) {
            nlohmann::json loc;
            loc["exponent"] = alg->locality->exponent;
            loc["gens"] = alg->locality->mgens.cols();
            loc["mgens"] = io_detail::mat_entries<S>(alg->locality->mgens);
            a["locality"] = std::move(loc);
        }
        j["algebras"].push_back(std::move(a));
    }
    j["modules"] = nlohmann::json::array();
    for (const auto& m : s.modules) {
        nlohmann::json o = io_detail::complex_to_json(m.mod.cx);
        o["name"] = m.name;
        o["algebra"] = m.algebra;
        if (!m.role.empty()) o["role"] = m.role;
        nlohmann::json act = nlohmann::json::array();
        for (const auto& [ij, t] : m.mod.act)
            for (const auto& e :
                 io_detail::table_entries<S>(ij.first, ij.second, t, m.mod.cx.dim(ij.second)))
                act.push_back(e);
        o["act"] = std::move(act);
        j["modules"].push_back(std::move(o));
    }
    return j;
}

template <class S>
DefinitionSet<S> definitions_from_json(const nlohmann::json& j)
{
    if (j.value("format", "") != kDefinitionsFormat)
        throw std::runtime_error("definitions: missing or wrong format tag");
    if (j.value("version", 0) != kFormatVersion)
        throw std::runtime_error("definitions: unsupported format version");
    DefinitionSet<S> out;
    out.field = field_from_json(j);
    if (!FieldOps<S>::matches(out.field))
        throw std::runtime_error("definitions: scalar type does not match the field spec");
    const FieldSpec& f = out.field;

    for (const auto& a : j.value("algebras", nlohmann::json::array())) {
        auto alg = std::make_shared<DGAlgebra<S>>(io_detail::complex_from_json<S>(a, f));
        const Complex<S>& cx = alg->cx;
        alg->unit = Vec<S>::Zero(cx.dim(0));
        imprint(alg->unit, f);
        for (const auto& e : a.value("unit", nlohmann::json::array())) {
            long i = e[0].get<long>();
            if (i < 0 || i >= alg->unit.size())
                throw std::runtime_error("definitions: unit entry out of range");
            alg->unit(i) = FieldOps<S>::parse(e[1].get<std::string>(), f);
        }
        for (const auto& e : a.value("mult", nlohmann::json::array())) {
            if (!e.is_array() || e.size() != 6)
                throw std::runtime_error("definitions: mult entry must be [i,j,a,b,t,value]");
            int i = e[0].get<int>(), jj = e[1].get<int>();
            long ai = e[2].get<long>(), bi = e[3].get<long>(), ti = e[4].get<long>();
            if (cx.dim(i) == 0 || cx.dim(jj) == 0 || ai < 0 || ai >= cx.dim(i) || bi < 0 ||
                bi >= cx.dim(jj) || ti < 0 || ti >= cx.dim(i + jj))
                throw std::runtime_error("definitions: mult entry out of range");
            auto key = std::make_pair(i, jj);
            if (!alg->mult.count(key)) {
                Mat<S> t = Mat<S>::Zero(cx.dim(i + jj), Eigen::Index(cx.dim(i)) * cx.dim(jj));
                imprint(t, f);
                alg->set_mult(i, jj, t);
            }
            alg->mult.at(key)(ti, ai * cx.dim(jj) + bi) =
                FieldOps<S>::parse(e[5].get<std::string>(), f);
        }
        if (a.contains("locality")) {
            const auto& loc = a.at("locality");
            Mat<S> g = Mat<S>::Zero(cx.dim(0), loc.at("gens").get<long>());
            imprint(g, f);
            io_detail::fill_entries(g, loc.value("mgens", nlohmann::json::array()), f);
            alg->locality = LocalityCertificate<S>{std::move(g), loc.at("exponent").get<int>()};
        }
        out.algebras.emplace_back(a.at("name").get<std::string>(), std::move(alg));
    }

    for (const auto& mj : j.value("modules", nlohmann::json::array())) {
        std::string aname = mj.at("algebra").get<std::string>();
        auto alg = out.algebra(aname);
        DGModule<S> mod(alg, io_detail::complex_from_json<S>(mj, f));
        for (const auto& e : mj.value("act", nlohmann::json::array())) {
            if (!e.is_array() || e.size() != 6)
                throw std::runtime_error("definitions: action entry must be [i,j,a,m,t,value]");
            int i = e[0].get<int>(), jj = e[1].get<int>();
            long ai = e[2].get<long>(), bi = e[3].get<long>(), ti = e[4].get<long>();
            if (alg->cx.dim(i) == 0 || mod.cx.dim(jj) == 0 || ai < 0 || ai >= alg->cx.dim(i) ||
                bi < 0 || bi >= mod.cx.dim(jj) || ti < 0 || ti >= mod.cx.dim(i + jj))
                throw std::runtime_error("definitions: action entry out of range");
            auto key = std::make_pair(i, jj);
            if (!mod.act.count(key)) {
                Mat<S> t =
                    Mat<S>::Zero(mod.cx.dim(i + jj), Eigen::Index(alg->cx.dim(i)) * mod.cx.dim(jj));
                imprint(t, f);
                mod.set_act(i, jj, t);
            }
            mod.act.at(key)(ti, ai * mod.cx.dim(jj) + bi) =
                FieldOps<S>::parse(e[5].get<std::string>(), f);
        }
        out.modules.push_back({mj.at("name").get<std::string>(), std::move(aname),
                               mj.value("role", ""), std::move(mod)});
    }
    return out;
}

/// A catalog entry as a definition set, with its modules carried by role.
template <class S>
DefinitionSet<S> definitions_from_catalog(const CatalogEntry<S>& e)
{
    DefinitionSet<S> s;
    s.field = e.algebra->field();
    s.algebras.emplace_back(e.name, e.algebra);
    for (const auto& [role, m] : e.modules)
        s.modules.push_back({e.name + "." + role, e.name, role, m});
    return s;
}

/// Every validator result for a definition set, named per object.
template <class S>
std::vector<std::pair<std::string, VerdictReport>> validate_definitions(const DefinitionSet<S>& s)
{
    std::vector<std::pair<std::string, VerdictReport>> out;
    for (const auto& [name, alg] : s.algebras) {
        out.emplace_back(name + ".complex", validate_complex(alg->cx));
        out.emplace_back(name + ".algebra", validate_dg_algebra(*alg));
        if (alg->locality) out.emplace_back(name + ".locality", validate_locality(*alg));
    }
    for (const auto& m : s.modules) {
        out.emplace_back(m.name + ".complex", validate_complex(m.mod.cx));
        out.emplace_back(m.name + ".module", validate_dg_module(m.mod));
    }
    return out;
}

inline nlohmann::json window_to_json(const TrustWindow& w)
{
    nlohmann::json j;
    j["lo"] = w.lo == std::numeric_limits<int>::min() ? nlohmann::json() : nlohmann::json(w.lo);
    j["hi"] = w.hi == std::numeric_limits<int>::max() ? nlohmann::json() : nlohmann::json(w.hi);
    return j;
}

inline nlohmann::json report_to_json(const VerdictReport& r)
{
    nlohmann::json j;
    j["check"] = r.check;
    j["verdict"] = to_string(r.verdict);
    j["window"] = window_to_json(r.window);
    j["detail"] = r.detail;
    nlohmann::json tables;
    for (const auto& [name, t] : r.tables) {
        nlohmann::json tj;
        for (const auto& [deg, dim] : t) tj[std::to_string(deg)] = dim;
        tables[name] = std::move(tj);
    }
    j["tables"] = std::move(tables);
    j["failing_degrees"] = r.failing_degrees;
    return j;
}

/// Report file wrapper: versioned header plus one record per check.
class ReportBuilder {
public:
    void add(const VerdictReport& r, nlohmann::json params = {}, long ms = -1)
    {
        nlohmann::json j = report_to_json(r);
        if (!params.is_null() && !params.empty()) j["params"] = std::move(params);
        if (ms >= 0) j["ms"] = ms;
        checks_.push_back(std::move(j));
        all_hold_ = all_hold_ && r.holds();
        any_fails_ = any_fails_ || r.fails();
    }

    bool all_hold() const { return all_hold_; }
    bool any_fails() const { return any_fails_; }

    nlohmann::json finish() const
    {
        nlohmann::json j;
        j["format"] = kReportFormat;
        j["version"] = kFormatVersion;
        j["kernel"] = kKernelVersion;
        j["checks"] = checks_;
        return j;
    }

private:
    nlohmann::json checks_ = nlohmann::json::array();
    bool all_hold_ = true;
    bool any_fails_ = false;
};

}  // namespace dga
