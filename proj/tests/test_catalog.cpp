#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "trigon/catalog.hpp"
#include "trigon/sharpness.hpp"
#include "trigon/triangle.hpp"

using namespace trigon;

namespace {

const Registry& registry() {
    static const Registry instance;
    return instance;
}

}  // namespace

TEST_CASE("the built-in catalog is complete and consistently keyed") {
    const auto& entries = registry().entries();
    CHECK(entries.size() == 30);

    std::set<std::string> ids;
    for (const auto& e : entries) CHECK(ids.insert(e.id).second);

    CHECK(registry().find("weitzenbock") != nullptr);
    CHECK(registry().find("no_such_entry") == nullptr);

    for (const auto& e : entries) {
        CHECK(!e.reference.empty());
        if (!e.parameterized) {
            // round-trip of the stored tree through the grammar
            const InequalityDef reparsed =
                parse_inequality(e.id, to_string(e.def), e.def.domain);
            CHECK(structurally_equal(reparsed.lhs, e.def.lhs));
            CHECK(structurally_equal(reparsed.rhs, e.def.rhs));
            CHECK(reparsed.rel == e.def.rel);
        }
    }
}

TEST_CASE("every entry carries the expected degree, domain and flags") {
    const std::map<std::string, double> degree = {
        {"weitzenbock", 2},   {"chain_1", 2},        {"chain_2", 2},
        {"chain_3", 2},       {"chain_4", 2},        {"chain_5", 2},
        {"finsler_hadwiger", 2}, {"mitrinovic", 1},  {"four_R_plus_r", 1},
        {"euler", 1},         {"eighteen_Rr", 2},    {"reversed_18Rr", 2},
        {"refinement_1", 2},  {"refinement_2", 2},   {"key_scalar", 0},
        {"app1", -1},         {"app2_corrected", -2}, {"app3", -2},
        {"app4", 1},          {"app5", 0},           {"app6", -2},
        {"app7", 0},          {"app8", 0},           {"schur_t1", 3},
        {"schur_t1_alt", 2},  {"schur_t2", 4},       {"schur_t2_sides", 4},
        {"schur_reciprocal", 1},
    };
    const std::set<std::string> triple_domain = {"schur_t1", "schur_t1_alt", "schur_t2",
                                                 "schur_reciprocal", "schur_t"};

    for (const auto& [id, expected] : degree) {
        const CatalogEntry* e = registry().find(id);
        REQUIRE_MESSAGE(e != nullptr, id);
        REQUIRE_MESSAGE(e->degree.has_value(), id);
        CHECK_MESSAGE(*e->degree == doctest::Approx(expected).epsilon(1e-9), id);
        CHECK(e->parameterized == false);
        const bool is_triple = triple_domain.count(id) > 0;
        CHECK_MESSAGE((e->def.domain == Domain::positive_triple) == is_triple, id);
    }

    const CatalogEntry* printed = registry().find("app2_as_printed");
    REQUIRE(printed != nullptr);
    CHECK(!printed->degree.has_value());  // the two sides scale differently
    CHECK(printed->tight == false);

    const CatalogEntry* schur = registry().find("schur_t");
    REQUIRE(schur != nullptr);
    CHECK(schur->parameterized);
    CHECK(!schur->degree.has_value());
    CHECK(schur->def.domain == Domain::positive_triple);

    for (const auto& e : registry().entries()) {
        if (e.id == "app2_as_printed" || e.id == "schur_t") continue;
        CHECK_MESSAGE(e.tight, e.id);
    }
}

TEST_CASE("tight entries attain equality at the equilateral point") {
    for (const auto& e : registry().entries()) {
        if (!e.tight || e.parameterized) continue;
        GapReport g;
        if (e.def.domain == Domain::triangle)
            g = gap(e, SideTriple(1, 1, 1));
        else
            g = gap(e, PositiveTriple{1, 1, 1});
        CHECK_MESSAGE(std::fabs(g.normalized_gap) <= 1e-12, e.id, " gap ", g.normalized_gap);
        CHECK(g.holds);
    }
}

TEST_CASE("hand-derived values at the 3-4-5 right triangle") {
    const Bindings b = Bindings::for_triangle(derive(SideTriple(3, 4, 5)));

    const CatalogEntry* key = registry().find("key_scalar");
    REQUIRE(key != nullptr);
    CHECK(evaluate(key->def.lhs, b) == doctest::Approx(1655.0 / 396.0).epsilon(1e-14));

    const CatalogEntry* ref2 = registry().find("refinement_2");
    REQUIRE(ref2 != nullptr);
    CHECK(evaluate(ref2->def.rhs, b) ==
          doctest::Approx(24.0 * std::sqrt(35.0 / 11.0) + 6.0).epsilon(1e-13));

    const CatalogEntry* fh = registry().find("finsler_hadwiger");
    REQUIRE(fh != nullptr);
    const GapReport g = gap(*fh, SideTriple(3, 4, 5));
    CHECK(g.abs_gap == doctest::Approx(44.0 - 24.0 * std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("the parameterized Schur family materializes for any exponent") {
    const InequalityDef one = schur_inequality(1.0);
    const CatalogEntry* t1 = registry().find("schur_t1");
    REQUIRE(t1 != nullptr);
    CHECK(structurally_equal(one.lhs, t1->def.lhs));
    CHECK(structurally_equal(one.rhs, t1->def.rhs));

    CHECK(to_string(schur_inequality(2.0).lhs) ==
          "x^2*(x - y)*(x - z) + y^2*(y - z)*(y - x) + z^2*(z - x)*(z - y)");
    CHECK(to_string(schur_inequality(0.0).lhs) ==
          "(x - y)*(x - z) + (y - z)*(y - x) + (z - x)*(z - y)");

    for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const CatalogEntry entry = materialize_schur(t);
        REQUIRE_MESSAGE(entry.degree.has_value(), "t = ", t);
        CHECK(*entry.degree == doctest::Approx(t + 2.0).epsilon(1e-6));
        CHECK(entry.def.domain == Domain::positive_triple);
        // the materialized text stays inside the grammar
        const InequalityDef reparsed =
            parse_inequality(entry.id, to_string(entry.def), Domain::positive_triple);
        CHECK(structurally_equal(reparsed.lhs, entry.def.lhs));
    }
    CHECK_THROWS_AS(schur_inequality(std::nan("")), std::invalid_argument);
}

TEST_CASE("export emits a file the parser accepts and reproduces") {
    const std::string exported = registry().export_definitions();
    std::istringstream in(exported);
    const auto parsed = parse_definition_stream(in, "export");
    CHECK(parsed.size() == 29);  // all but the parameterized template

    for (const auto& pd : parsed) {
        const CatalogEntry* original = registry().find(pd.id);
        REQUIRE_MESSAGE(original != nullptr, pd.id);
        CHECK_MESSAGE(structurally_equal(pd.def.lhs, original->def.lhs), pd.id);
        CHECK_MESSAGE(structurally_equal(pd.def.rhs, original->def.rhs), pd.id);
        CHECK(pd.def.rel == original->def.rel);
        CHECK(pd.def.domain == original->def.domain);
    }
}

TEST_CASE("definition files: comments, errors and duplicate protection") {
    {
        std::istringstream in("# comment only\n\n  my_bound : triangle : a + b >= c\n");
        Registry reg;
        CHECK(reg.load_definitions(in, "defs.txt", false) == 1);
        const CatalogEntry* e = reg.find("my_bound");
        REQUIRE(e != nullptr);
        CHECK(e->reference == "user definition");
        CHECK(e->tight == false);
        REQUIRE(e->degree.has_value());
        CHECK(*e->degree == doctest::Approx(1.0));
    }
    {
        std::istringstream in("weitzenbock : triangle : a >= b\n");
        Registry reg;
        CHECK_THROWS_WITH_AS(reg.load_definitions(in, "defs.txt", false),
                             doctest::Contains("duplicate entry id"),
                             std::invalid_argument);
    }
    {
        std::istringstream in("bad : triangle : a + S >= 0\n");
        Registry reg;
        CHECK_THROWS_WITH_AS(reg.load_definitions(in, "defs.txt", false),
                             doctest::Contains("--allow-inhomogeneous"),
                             std::invalid_argument);
        std::istringstream again("bad : triangle : a + S >= 0\n");
        CHECK(reg.load_definitions(again, "defs.txt", true) == 1);
        const CatalogEntry* e = reg.find("bad");
        REQUIRE(e != nullptr);
        CHECK(!e->degree.has_value());
    }
    {
        std::istringstream in("x : nowhere : a >= b\n");
        CHECK_THROWS_WITH_AS(parse_definition_stream(in, "defs.txt"),
                             doctest::Contains("unknown domain"), std::invalid_argument);
    }
    {
        std::istringstream in("\n\nbad id! : triangle : a >= b\n");
        CHECK_THROWS_WITH_AS(parse_definition_stream(in, "defs.txt"),
                             doctest::Contains("defs.txt:3"), std::invalid_argument);
    }
    {
        std::istringstream in("e : triangle : a >= \n");
        CHECK_THROWS_WITH_AS(parse_definition_stream(in, "defs.txt"),
                             doctest::Contains("defs.txt:1"), std::invalid_argument);
    }
}

TEST_CASE("degree probe of a definition reports both sides") {
    const InequalityDef def =
        parse_inequality("d", "a^2 + b^2 >= 4*S + a*b", Domain::triangle);
    const DefinitionDegree dd = definition_degree(def);
    CHECK(dd.lhs.status == Homogeneity::homogeneous);
    CHECK(dd.lhs.degree == doctest::Approx(2.0));
    CHECK(dd.rhs.status == Homogeneity::homogeneous);  // S and a*b are both degree 2
    REQUIRE(dd.common.has_value());
    CHECK(*dd.common == doctest::Approx(2.0));

    const InequalityDef bad = parse_inequality("d2", "a + S >= 0", Domain::triangle);
    const DefinitionDegree dd2 = definition_degree(bad);
    CHECK(dd2.lhs.status == Homogeneity::inhomogeneous);
    CHECK(dd2.rhs.status == Homogeneity::zero);
    CHECK(!dd2.common.has_value());
}
