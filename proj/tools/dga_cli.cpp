// dga: exact homological-algebra kernel front end.
//
// Subcommands: validate, tensor, semidualizing, suite. Exit codes are a
// stable contract: 0 holds, 1 fails, 2 input error, 3 inconclusive.

#include "CLI11.hpp"

#include "dga/io.hpp"
#include "dga/semidual.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace dga;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInput = 2;
constexpr int kExitInconclusive = 3;

nlohmann::json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    return nlohmann::json::parse(in);
}

void write_json(const std::string& path, const nlohmann::json& j)
{
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

long ms_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

/// Runs fn<S>() with the scalar type matching the file's field spec.
template <class Fn>
int dispatch_field(const nlohmann::json& j, Fn&& fn)
{
    if (field_from_json(j).kind == FieldSpec::Kind::Rationals)
        return fn.template operator()<Rational>();
    return fn.template operator()<Fp>();
}

template <class S>
const typename DefinitionSet<S>::NamedModule& pick_module(const DefinitionSet<S>& defs,
                                                          const std::string& key)
{
    if (key.empty()) {
        if (defs.modules.empty()) throw std::runtime_error("definition file has no modules");
        return defs.modules.front();
    }
    for (const auto& m : defs.modules)
        if (m.name == key) return m;
    for (const auto& m : defs.modules)
        if (m.role == key) return m;
    throw std::runtime_error("no module named or with role '" + key + "'");
}

template <class S>
int run_validate(const nlohmann::json& input, const std::string& report_path)
{
    auto t0 = std::chrono::steady_clock::now();
    auto defs = definitions_from_json<S>(input);
    ReportBuilder rb;
    for (const auto& [name, v] : validate_definitions(defs)) {
        auto named = v;
        named.check = name + ": " + named.check;
        rb.add(named);
        if (!v.holds()) std::cerr << name << ": " << v.detail << "\n";
    }
    auto file = rb.finish();
    file["ms"] = ms_since(t0);
    write_json(report_path, file);
    return rb.all_hold() ? kExitHolds : kExitFails;
}

template <class S>
int run_tensor(const nlohmann::json& ja, const nlohmann::json& jb, const std::string& out_path,
               const std::string& report_path)
{
    auto da = definitions_from_json<S>(ja);
    auto db = definitions_from_json<S>(jb);
    if (da.algebras.empty() || db.algebras.empty())
        throw std::runtime_error("tensor: both files must define an algebra");
    const auto& [na, a1] = da.algebras.front();
    const auto& [nb, a2] = db.algebras.front();
    auto atens = tensor_algebras(*a1, *a2);

    DefinitionSet<S> out;
    out.field = da.field;
    std::string tname = na + "(x)" + nb;
    out.algebras.emplace_back(tname, atens);
    for (const auto& m1 : da.modules) {
        if (m1.algebra != na) continue;
        for (const auto& m2 : db.modules) {
            if (m2.algebra != nb) continue;
            out.modules.push_back({m1.name + "(x)" + m2.name, tname, "",
                                   tensor_modules(m1.mod, m2.mod, atens)});
        }
    }
    write_json(out_path, definitions_to_json(out));

    ReportBuilder rb;
    for (const auto& [name, v] : validate_definitions(out)) rb.add(v);
    write_json(report_path, rb.finish());
    return rb.all_hold() ? kExitHolds : kExitFails;
}

template <class S>
int run_semidualizing(const nlohmann::json& ja, const nlohmann::json& jm,
                      const std::string& algebra_name, const std::string& module_key, int bound,
                      const std::string& report_path)
{
    auto t0 = std::chrono::steady_clock::now();
    auto da = definitions_from_json<S>(ja);
    auto dm = definitions_from_json<S>(jm);
    for (const auto* d : {&da, &dm})
        for (const auto& [name, v] : validate_definitions(*d))
            if (!v.holds()) {
                std::cerr << name << ": " << v.detail << "\n";
                return kExitFails;
            }

    auto alg = algebra_name.empty() ? da.algebras.front().second : da.algebra(algebra_name);
    if (!alg->locality) throw std::runtime_error("semidualizing: locality certificate required");
    const auto& mod = pick_module(dm, module_key);

    auto verdict = is_semidualizing(*alg, mod.mod, bound);
    ReportBuilder rb;
    rb.add(verdict, {{"degree_bound", bound}, {"module", mod.name}}, ms_since(t0));
    write_json(report_path, rb.finish());
    std::cout << "semidualizing(" << mod.name << ", D=" << bound
              << "): " << to_string(verdict.verdict) << "\n";
    if (verdict.holds()) return kExitHolds;
    return verdict.fails() ? kExitFails : kExitInconclusive;
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& spec)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t semi = spec.find(';', pos);
        std::string item = spec.substr(pos, semi == std::string::npos ? semi : semi - pos);
        pos = semi == std::string::npos ? spec.size() : semi + 1;
        if (item.empty()) continue;
        std::size_t comma = item.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("pairs: each item must be 'module1,module2'");
        out.emplace_back(item.substr(0, comma), item.substr(comma + 1));
    }
    return out;
}

VerdictReport classification_report(const SuiteCross& c, ReportBuilder& rb, std::string name)
{
    // the meta-check: factor and tensor classifications must be consistent
    bool factor_distinct = c.factor1.distinct() || c.factor2.distinct();
    bool factor_equiv = c.factor1.equivalent() && c.factor2.equivalent();
    VerdictReport v;
    if (factor_distinct && c.tensor.distinct())
        v = VerdictReport::pass(name, TrustWindow::all(),
                                "distinct factors map to distinct tensor images (" +
                                    c.tensor.invariant + ")");
    else if (factor_equiv && c.tensor.equivalent())
        v = VerdictReport::pass(name, TrustWindow::all(),
                                "equivalent factors map to equivalent tensor images (shift " +
                                    std::to_string(c.tensor.shift) + ")");
    else if (factor_distinct && !c.tensor.distinct())
        v = VerdictReport::fail(name, "distinct factors but tensor images were not separated");
    else if (factor_equiv && c.tensor.distinct())
        v = VerdictReport::fail(name, "equivalent factors but distinct tensor images");
    else
        v = VerdictReport::unknown(name, "classification incomplete on a factor");
    rb.add(v);
    return v;
}

template <class S>
int run_suite(const nlohmann::json& j1, const nlohmann::json& j2, const std::string& pair_spec,
              int bound, int spot_bound, const std::string& report_path)
{
    auto t0 = std::chrono::steady_clock::now();
    auto d1 = definitions_from_json<S>(j1);
    auto d2 = definitions_from_json<S>(j2);
    for (const auto* d : {&d1, &d2})
        for (const auto& [name, v] : validate_definitions(*d))
            if (!v.holds()) {
                std::cerr << name << ": " << v.detail << "\n";
                return kExitFails;
            }
    if (d1.algebras.empty() || d2.algebras.empty())
        throw std::runtime_error("suite: both files must define an algebra");
    const auto& a1 = *d1.algebras.front().second;
    const auto& a2 = *d2.algebras.front().second;

    std::vector<std::pair<DGModule<S>, DGModule<S>>> cases;
    for (const auto& [k1, k2] : parse_pairs(pair_spec))
        cases.emplace_back(pick_module(d1, k1).mod, pick_module(d2, k2).mod);

    auto suite = theorem_suite(a1, a2, cases, bound, spot_bound);
    ReportBuilder rb;
    // the exit code judges the theorem-level sub-checks: a failing raw
    // verdict is fine where the theorems require one (converse cases)
    bool fails = false, inconclusive = false;
    auto judge = [&](const VerdictReport& v) {
        fails = fails || v.fails();
        inconclusive = inconclusive || v.inconclusive();
    };
    for (std::size_t i = 0; i < suite.pairs.size(); ++i) {
        const auto& p = suite.pairs[i];
        auto tag = [&](const VerdictReport& v, const std::string& what) {
            auto named = v;
            named.check = "case" + std::to_string(i) + "." + what + ": " + v.check;
            rb.add(named, {{"degree_bound", bound}});
        };
        tag(p.factor1, "factor1");
        tag(p.factor2, "factor2");
        tag(p.tensor, "tensor");
        tag(p.biconditional, "biconditional");
        judge(p.biconditional);
        if (p.factor1.holds() && p.factor2.holds()) {
            tag(p.bass, "bass");
            tag(p.auslander, "auslander");
            tag(p.reflexive, "reflexive");
            judge(p.bass);
            judge(p.auslander);
            judge(p.reflexive);
        }
    }
    for (const auto& c : suite.cross)
        judge(classification_report(
            c, rb, "cases" + std::to_string(c.i) + "," + std::to_string(c.j) + ".classification"));

    auto file = rb.finish();
    file["ms"] = ms_since(t0);
    write_json(report_path, file);
    if (fails) return kExitFails;
    return inconclusive ? kExitInconclusive : kExitHolds;
}

template <class S>
int run_catalog(const std::string& name, const FieldSpec& f, const std::string& out_path)
{
    CatalogEntry<S> e;
    if (name == "field")
        e = make_field<S>(f);
    else if (name == "S3")
        e = make_short_artinian<S>(f);
    else if (name.size() > 1 && name[0] == 'T')
        e = make_truncated_poly<S>(f, std::stoi(name.substr(1)));
    else if (name == "K(T2)") {
        auto t2 = make_truncated_poly<S>(f, 2);
        Vec<S> x = Vec<S>::Zero(2);
        x(1) = FieldOps<S>::one(f);
        e = make_koszul(t2, x);
    } else
        throw std::runtime_error("unknown catalog entry '" + name +
                                 "' (expected field, Tn, S3, or K(T2))");
    write_json(out_path, definitions_to_json(definitions_from_catalog(e)));
    return kExitHolds;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact homological algebra kernel for DG algebras and modules"};
    app.require_subcommand(1);

    std::string path_a, path_b, out_path, report_path;
    std::string algebra_name, module_key, pair_spec;
    int bound = 6, spot_bound = 1;

    auto* validate = app.add_subcommand("validate", "run every validator on a definition file");
    validate->add_option("path", path_a, "definition file")->required();
    validate->add_option("--report", report_path, "write a report file");

    auto* tensor = app.add_subcommand("tensor", "tensor two definition files over the base field");
    tensor->add_option("pathA", path_a)->required();
    tensor->add_option("pathB", path_b)->required();
    tensor->add_option("out", out_path, "output definition file")->required();
    tensor->add_option("--report", report_path);

    auto* semi = app.add_subcommand("semidualizing", "decide the semidualizing predicate");
    semi->add_option("algebra", path_a, "definition file with the algebra")->required();
    semi->add_option("module", path_b, "definition file with the candidate module")->required();
    semi->add_option("--algebra-name", algebra_name, "algebra to use (default: first)");
    semi->add_option("--module-name", module_key, "module name or role (default: first)");
    semi->add_option("--degree-bound", bound, "resolution truncation degree D");
    semi->add_option("--report", report_path);

    auto* cat = app.add_subcommand("catalog", "export a built-in example to a definition file");
    std::string cat_name;
    std::int64_t prime = 0;
    cat->add_option("name", cat_name, "entry: field, Tn, S3, K(T2)")->required();
    cat->add_option("out", out_path, "output definition file")->required();
    cat->add_option("--prime", prime, "prime characteristic (default: rationals)");

    auto* suite = app.add_subcommand("suite", "run the tensor-theorem suite on module pairs");
    std::vector<std::string> algebras;
    suite->add_option("--algebras", algebras, "two definition files")->expected(2)->required();
    suite->add_option("--pairs", pair_spec, "semicolon-separated 'm1,m2' module pairs");
    suite->add_option("--degree-bound", bound, "resolution truncation degree D");
    suite->add_option("--spot-bound", spot_bound, "bound for direct tensor cross-checks");
    suite->add_option("--report", report_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            auto j = load_json(path_a);
            return dispatch_field(j, [&]<class S>() { return run_validate<S>(j, report_path); });
        }
        if (tensor->parsed()) {
            auto ja = load_json(path_a);
            auto jb = load_json(path_b);
            if (field_from_json(ja) != field_from_json(jb)) {
                std::cerr << "tensor: field mismatch\n";
                return kExitFails;
            }
            return dispatch_field(
                ja, [&]<class S>() { return run_tensor<S>(ja, jb, out_path, report_path); });
        }
        if (semi->parsed()) {
            auto ja = load_json(path_a);
            auto jm = load_json(path_b);
            if (field_from_json(ja) != field_from_json(jm))
                throw std::runtime_error("semidualizing: field mismatch");
            return dispatch_field(ja, [&]<class S>() {
                return run_semidualizing<S>(ja, jm, algebra_name, module_key, bound, report_path);
            });
        }
        if (cat->parsed()) {
            FieldSpec f = prime == 0 ? FieldSpec::rationals() : FieldSpec::prime(prime);
            if (f.kind == FieldSpec::Kind::Rationals)
                return run_catalog<Rational>(cat_name, f, out_path);
            return run_catalog<Fp>(cat_name, f, out_path);
        }
        if (suite->parsed()) {
            if (pair_spec.empty()) {
                write_json(report_path, ReportBuilder().finish());
                return kExitHolds;
            }
            auto j1 = load_json(algebras[0]);
            auto j2 = load_json(algebras[1]);
            if (field_from_json(j1) != field_from_json(j2))
                throw std::runtime_error("suite: field mismatch");
            return dispatch_field(j1, [&]<class S>() {
                return run_suite<S>(j1, j2, pair_spec, bound, spot_bound, report_path);
            });
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
