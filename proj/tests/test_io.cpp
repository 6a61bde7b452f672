#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dga/io.hpp"
#include "dga/semidual.hpp"

using namespace dga;

namespace {

template <class S>
void check_roundtrip(const CatalogEntry<S>& e)
{
    auto s = definitions_from_catalog(e);
    nlohmann::json j = definitions_to_json(s);
    // serialize through text, as the CLI does
    auto back = definitions_from_json<S>(nlohmann::json::parse(j.dump()));
    REQUIRE(back.algebras.size() == s.algebras.size());
    REQUIRE(back.modules.size() == s.modules.size());

    const auto& a0 = *s.algebras[0].second;
    const auto& a1 = *back.algebras[0].second;
    CHECK(a0.cx.same_shape(a1.cx));
    for (int i = a0.cx.lo() + 1; i <= a0.cx.hi(); ++i)
        CHECK(is_zero<S>(Mat<S>(a0.cx.d(i) - a1.cx.d(i))));
    REQUIRE(a0.mult.size() == a1.mult.size());
    for (const auto& [ij, t] : a0.mult) CHECK(is_zero<S>(Mat<S>(t - a1.mult.at(ij))));
    CHECK(is_zero<S>(Mat<S>(a0.unit - a1.unit)));
    REQUIRE(a0.locality.has_value() == a1.locality.has_value());
    if (a0.locality) {
        CHECK(a0.locality->exponent == a1.locality->exponent);
        CHECK(is_zero<S>(Mat<S>(a0.locality->mgens - a1.locality->mgens)));
    }
    for (std::size_t m = 0; m < s.modules.size(); ++m) {
        const auto& m0 = s.modules[m].mod;
        const auto& m1 = back.module(s.modules[m].name).mod;
        CHECK(back.module(s.modules[m].name).role == s.modules[m].role);
        CHECK(m0.cx.same_shape(m1.cx));
        REQUIRE(m0.act.size() == m1.act.size());
        for (const auto& [ij, t] : m0.act) CHECK(is_zero<S>(Mat<S>(t - m1.act.at(ij))));
    }
    for (const auto& [name, v] : validate_definitions(back)) {
        INFO(name);
        CHECK(!v.fails());
    }
    // a second serialization is bit-identical
    CHECK(definitions_to_json(back).dump() == j.dump());
}

}  // namespace

TEST_CASE("definition files round-trip across the catalog")
{
    check_roundtrip(make_truncated_poly<Fp>(FieldSpec::prime(101), 2));
    check_roundtrip(make_short_artinian<Fp>(FieldSpec::prime(7)));
    check_roundtrip(make_short_artinian<Rational>(FieldSpec::rationals()));
    auto t2 = make_truncated_poly<Rational>(FieldSpec::rationals(), 2);
    Vec<Rational> x = Vec<Rational>::Zero(2);
    x(1) = Rational(1);
    check_roundtrip(make_koszul(t2, x));
}

TEST_CASE("rational coefficients serialize as a/b strings")
{
    nlohmann::json j;
    j["format"] = kDefinitionsFormat;
    j["version"] = kFormatVersion;
    j["field"] = {{"kind", "rationals"}, {"characteristic", 0}};
    j["algebras"] = nlohmann::json::array();
    nlohmann::json a;
    a["name"] = "k";
    a["lo"] = 0;
    a["dims"] = {1};
    a["unit"] = {{0, "1"}};
    a["mult"] = {{0, 0, 0, 0, 0, "1"}};
    j["algebras"].push_back(a);
    nlohmann::json m;
    m["name"] = "halfline";
    m["algebra"] = "k";
    m["lo"] = 0;
    m["dims"] = {1, 1};
    m["d"] = {{1, 0, 0, "3/2"}};
    m["act"] = {{0, 0, 0, 0, 0, "1"}, {0, 1, 0, 0, 0, "1"}};
    j["modules"] = {m};

    auto s = definitions_from_json<Rational>(j);
    CHECK(s.module("halfline").mod.cx.d(1)(0, 0) == Rational("3/2"));
    for (const auto& [name, v] : validate_definitions(s)) CHECK(v.holds());
    nlohmann::json out = definitions_to_json(s);
    CHECK(out["modules"][0]["d"][0][3] == "3/2");
}

TEST_CASE("malformed input is rejected with a parse error")
{
    auto base = definitions_to_json(definitions_from_catalog(make_short_artinian<Fp>(FieldSpec::prime(101))));

    nlohmann::json bad = base;
    bad["format"] = "something-else";
    CHECK_THROWS_AS(definitions_from_json<Fp>(bad), std::runtime_error);

    bad = base;
    bad["version"] = 99;
    CHECK_THROWS_AS(definitions_from_json<Fp>(bad), std::runtime_error);

    bad = base;
    bad["algebras"][0]["mult"][0][5] = "not-a-number";
    CHECK_THROWS(definitions_from_json<Fp>(bad));

    bad = base;
    bad["algebras"][0]["mult"][0][4] = 99;  // target index out of range
    CHECK_THROWS_AS(definitions_from_json<Fp>(bad), std::runtime_error);

    bad = base;
    bad["field"]["kind"] = "prime";
    bad["field"]["characteristic"] = 4;  // not prime
    CHECK_THROWS(definitions_from_json<Fp>(bad));

    // wrong scalar type for the field spec
    CHECK_THROWS_AS(definitions_from_json<Rational>(base), std::runtime_error);
}

TEST_CASE("mutated constants survive the parser but fail the validators")
{
    auto e = make_short_artinian<Fp>(FieldSpec::prime(101));
    auto j = definitions_to_json(definitions_from_catalog(e));
    // corrupt one Leibniz/associativity constant
    j["algebras"][0]["mult"][0][5] = "7";
    auto s = definitions_from_json<Fp>(j);
    bool failed = false;
    for (const auto& [name, v] : validate_definitions(s)) failed = failed || v.fails();
    CHECK(failed);
}

TEST_CASE("verdict reports serialize with window sentinels as null")
{
    auto rep = VerdictReport::pass("demo", TrustWindow::at_least(-5), "fine");
    rep.tables["H"][0] = 3;
    rep.tables["H"][-2] = 1;
    nlohmann::json j = report_to_json(rep);
    CHECK(j["check"] == "demo");
    CHECK(j["verdict"] == "holds");
    CHECK(j["window"]["lo"] == -5);
    CHECK(j["window"]["hi"].is_null());
    CHECK(j["tables"]["H"]["0"] == 3);
    CHECK(j["tables"]["H"]["-2"] == 1);

    ReportBuilder b;
    b.add(rep, {{"D", 6}}, 12);
    b.add(VerdictReport::fail("other", "broke", TrustWindow::all(), {1, 2}));
    auto file = b.finish();
    CHECK(file["format"] == kReportFormat);
    CHECK(file["version"] == kFormatVersion);
    CHECK(file["checks"].size() == 2);
    CHECK(file["checks"][0]["params"]["D"] == 6);
    CHECK(file["checks"][0]["ms"] == 12);
    CHECK(file["checks"][1]["failing_degrees"] == std::vector<int>({1, 2}));
    CHECK(!b.all_hold());
    CHECK(b.any_fails());
}

TEST_CASE("kernel verdicts are reproducible through serialization")
{
    auto s3 = make_short_artinian<Fp>(FieldSpec::prime(101));
    auto v1 = is_semidualizing(*s3.algebra, s3.module("dualizing"), 3);
    auto v2 = is_semidualizing(*s3.algebra, s3.module("dualizing"), 3);
    CHECK(report_to_json(v1).dump() == report_to_json(v2).dump());
}
