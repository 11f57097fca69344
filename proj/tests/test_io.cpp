#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ainf/fixtures.hpp"
#include "ainf/io.hpp"
#include "ainf/suites.hpp"

using namespace ainf;
namespace fs = std::filesystem;

namespace {
const Field Q = Field::rationals();

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "ainf_io_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}
}  // namespace

TEST_CASE("category files round-trip byte-identically") {
    auto dir = temp_dir();
    for (const auto* name : {"P1", "P2", "2OBJ1"}) {
        auto files = make_fixture_files(name, dir);
        auto cat_path = files[0];
        std::string first = slurp(cat_path);
        auto cat = parse_category(cat_path);
        auto second_path = dir / (std::string(name) + ".roundtrip.cat");
        emit_category(*cat, second_path);
        CHECK(slurp(second_path) == first);
    }
}

TEST_CASE("generated fixtures pass their own checks") {
    auto dir = temp_dir();
    for (const auto* name : {"P1", "P3", "2OBJ1", "CONE_H1"}) {
        auto files = make_fixture_files(name, dir);
        auto cat = parse_category(files[0]);
        CHECK(check_ainf_relations(*cat).pass);
        CHECK(check_strict_unital(*cat).pass);
        auto cp = find_cp_data(cat);
        REQUIRE(cp.has_value());
        CHECK(classify_cp_object(cat, cp->v, cp->h, cp->n, cp->integral).pass);
    }
}

TEST_CASE("malformed mu entries are rejected with precise diagnostics") {
    auto dir = temp_dir();
    auto path = dir / "bad_degree.cat";
    spit(path,
         "ainf-category v1\n"
         "field Q\n"
         "arity_bound 2\n"
         "object V\n"
         "hom V V e 0\n"
         "hom V V h 2\n"
         "mu 2 V V V | h h | e | 1\n");  // output degree 0, expected 4
    CHECK_THROWS_AS(parse_category(path), ParseError);
    try {
        parse_category(path);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("degree rule") != std::string::npos);
    }

    auto path2 = dir / "bad_prime.cat";
    spit(path2, "ainf-category v1\nfield Fp 6\n");
    CHECK_THROWS_AS(parse_category(path2), ParseError);

    auto path3 = dir / "bad_token.cat";
    spit(path3, "ainf-category v1\nfield Q\nfrobnicate 3\n");
    CHECK_THROWS_AS(parse_category(path3), ParseError);
}

TEST_CASE("mod-2 coefficients normalize on parse and emit canonically") {
    auto dir = temp_dir();
    auto path = dir / "f2.cat";
    spit(path,
         "ainf-category v1\n"
         "field Fp 2\n"
         "arity_bound 2\n"
         "object V\n"
         "hom V V e 0\n"
         "mu 2 V V V | e e | e | 3\n");
    auto cat = parse_category(path);
    CHECK(cat->field.characteristic() == 2);
    CHECK(cat->mu_eval({"V", "V", "V"}, {"e", "e"}) == Vec{{"e", Scalar(cat->field, 1)}});
    std::string canon = category_to_string(*cat);
    CHECK(canon.find("| e | 1") != std::string::npos);
    // coefficients summing to zero mod 2 drop out entirely
    auto path2 = dir / "f2zero.cat";
    spit(path2,
         "ainf-category v1\n"
         "field Fp 2\n"
         "arity_bound 2\n"
         "object V\n"
         "hom V V e 0\n"
         "mu 2 V V V | e e | e | 1\n"
         "mu 2 V V V | e e | e | 1\n");
    CHECK(parse_category(path2)->mu.empty());
}

TEST_CASE("module and morphism files round-trip through parse") {
    auto dir = temp_dir();
    auto cat = make_fix_p(1);
    auto y = yoneda_module(cat, "V");
    auto mod_path = dir / "yon.mod";
    emit_module(*y, mod_path);
    auto parsed = parse_module(mod_path, cat);
    CHECK(parsed->mu == y->mu);
    CHECK(parsed->space("V").dims_by_degree() == y->space("V").dims_by_degree());

    // sign-twisted identity as a morphism file; quasi-iso must hold
    PreModuleHom t;
    t.source = parsed;
    t.target = parsed;
    t.degree = 0;
    for (const auto& [n, g] : parsed->space("V").basis())
        t.table[ModKey{{"V"}, n, {}}] = Vec{{n, Scalar(Q, g % 2 ? -1 : 1)}};
    auto mor_path = dir / "tw_id.mor";
    emit_morphism(t, "yon.mod", "yon.mod", mor_path);
    auto tp = parse_morphism(mor_path, cat);
    CHECK(tp.table == t.table);
    CHECK(quasi_iso_check(tp).is_quasi_iso);
}

TEST_CASE("twisted complex files round-trip and validate") {
    auto dir = temp_dir();
    auto cat = make_fix_p(1);
    auto files = make_fixture_files("P1", dir / "twcx");
    auto wh = parse_twcx(dir / "twcx" / "P1.cone_h.twcx", cat);
    CHECK(validate_twisted(*wh).pass);
    CHECK(wh->under.summands.size() == 2);
    auto second = dir / "twcx" / "again.twcx";
    emit_twcx(*wh, second);
    CHECK(slurp(second) == slurp(dir / "twcx" / "P1.cone_h.twcx"));

    // a triangularity violation is rejected at parse time
    auto bad = dir / "bad.twcx";
    spit(bad,
         "ainf-twcx v1\n"
         "summand s0 V\n"
         "mbasis s0 k0 0\n"
         "summand s1 V\n"
         "mbasis s1 k0 1\n"
         "delta s1 k0 s0 k0 h -1\n");  // upper triangular in listed order
    CHECK_THROWS_AS(parse_twcx(bad, cat), ParseError);
}

TEST_CASE("integral files round-trip") {
    auto dir = temp_dir();
    auto cat = make_fix_p(2);
    auto integral = make_canonical_integral(cat, "V", 4);
    auto path = dir / "p2.integral";
    emit_integral(integral, path);
    auto parsed = parse_integral(path, cat);
    CHECK(parsed.object == integral.object);
    CHECK(parsed.top_degree == integral.top_degree);
    CHECK(parsed.functional == integral.functional);
    CHECK(integral_well_defined(cat, parsed));
}

TEST_CASE("verification reports are deterministic") {
    auto cat = make_fix_p(1);
    auto in = make_suite_input("P1", cat);
    auto r1 = run_suite("relations", {in});
    auto r2 = run_suite("relations", {in});
    CHECK(r1.to_json() == r2.to_json());
    auto a1 = run_suite("all", {in});
    auto a2 = run_suite("all", {in});
    CHECK(a1.to_json() == a2.to_json());
    CHECK(a1.pass());
}

TEST_CASE("find_cp_data locates the fixture structures") {
    auto p2 = find_cp_data(make_fix_p(2));
    REQUIRE(p2.has_value());
    CHECK(p2->v == "V");
    CHECK(p2->n == 2);
    CHECK(p2->h == Vec{{"h", Scalar(Q, 1)}});
    auto obj2 = find_cp_data(make_fix_2obj(1));
    REQUIRE(obj2.has_value());
    CHECK(obj2->n == 1);
}
