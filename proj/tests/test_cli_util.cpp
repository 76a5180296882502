#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wunits/cli_util.hpp"

using namespace wunits;

namespace {

bool close(const Real& r, double want) {
    return std::abs(r.to_double() - want) <= 1e-12 * std::max(1.0, std::abs(want));
}

std::string write_temp(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    out.close();
    return path.string();
}

}  // namespace

TEST_CASE("complex literals") {
    auto z = parse_complex_literal("1.5", 128);
    CHECK(close(z.re(), 1.5));
    CHECK(z.im().is_zero());

    z = parse_complex_literal("2i", 128);
    CHECK(z.re().is_zero());
    CHECK(close(z.im(), 2.0));

    z = parse_complex_literal("i", 128);
    CHECK(close(z.im(), 1.0));
    z = parse_complex_literal("-i", 128);
    CHECK(close(z.im(), -1.0));
    z = parse_complex_literal("+I", 128);
    CHECK(close(z.im(), 1.0));

    z = parse_complex_literal("0.3+1.25i", 128);
    CHECK(close(z.re(), 0.3));
    CHECK(close(z.im(), 1.25));

    z = parse_complex_literal("1e-2-2.5i", 128);
    CHECK(close(z.re(), 0.01));
    CHECK(close(z.im(), -2.5));

    // exponent signs do not split the literal
    z = parse_complex_literal("-1.5E2+2E-1i", 128);
    CHECK(close(z.re(), -150.0));
    CHECK(close(z.im(), 0.2));

    z = parse_complex_literal("3-i", 128);
    CHECK(close(z.re(), 3.0));
    CHECK(close(z.im(), -1.0));

    z = parse_complex_literal(" 2 + 3 i ", 128);
    CHECK(close(z.re(), 2.0));
    CHECK(close(z.im(), 3.0));

    CHECK_THROWS_AS(parse_complex_literal("", 128), domain_error);
    CHECK_THROWS_AS(parse_complex_literal("   ", 128), domain_error);
    CHECK_THROWS_AS(parse_complex_literal("abc", 128), domain_error);
    CHECK_THROWS_AS(parse_complex_literal("1+2j", 128), domain_error);
    CHECK_THROWS_AS(parse_complex_literal("2ii", 128), domain_error);
    CHECK_THROWS_AS(parse_complex_literal("1+", 128), domain_error);
    CHECK_THROWS_AS(parse_complex_literal("1.2.3", 128), domain_error);
}

TEST_CASE("long lists and ranges") {
    CHECK(parse_long_list("4,6-9,12") == std::vector<long>{4, 6, 7, 8, 9, 12});
    CHECK(parse_long_list("5") == std::vector<long>{5});
    CHECK(parse_long_list("3,1,2,3") == std::vector<long>{1, 2, 3});
    CHECK(parse_long_list("-23,-7") == std::vector<long>{-23, -7});
    // '-' after a digit starts a range; leading '-' is a sign
    CHECK(parse_long_list("-3--1") == std::vector<long>{-3, -2, -1});
    CHECK(parse_long_list(" 1 , 2-4 ") == std::vector<long>{1, 2, 3, 4});

    CHECK_THROWS_AS(parse_long_list(""), domain_error);
    CHECK_THROWS_AS(parse_long_list("1,,2"), domain_error);
    CHECK_THROWS_AS(parse_long_list("9-4"), domain_error);
    CHECK_THROWS_AS(parse_long_list("1-9999999"), domain_error);
    CHECK_THROWS_AS(parse_long_list("a,b"), domain_error);
}

TEST_CASE("config files") {
    std::string path = write_temp("wunits_test_ok.conf",
                                  "# defaults for local runs\n"
                                  "prec = 768\n"
                                  "guard=96   # trailing comment\n"
                                  "\n"
                                  "format = csv\n");
    FileConfig cfg = parse_config_file(path);
    REQUIRE(cfg.prec.has_value());
    CHECK(*cfg.prec == 768);
    REQUIRE(cfg.guard.has_value());
    CHECK(*cfg.guard == 96);
    CHECK(!cfg.jobs.has_value());
    REQUIRE(cfg.format.has_value());
    CHECK(*cfg.format == "csv");
    std::remove(path.c_str());

    std::string bad = write_temp("wunits_test_bad.conf", "precision = 512\n");
    CHECK_THROWS_WITH_AS(parse_config_file(bad), doctest::Contains("unknown key"), domain_error);
    std::remove(bad.c_str());

    std::string noeq = write_temp("wunits_test_noeq.conf", "prec 512\n");
    CHECK_THROWS_WITH_AS(parse_config_file(noeq), doctest::Contains(":1:"), domain_error);
    std::remove(noeq.c_str());

    std::string notint = write_temp("wunits_test_notint.conf", "jobs = many\n");
    CHECK_THROWS_AS(parse_config_file(notint), domain_error);
    std::remove(notint.c_str());

    CHECK_THROWS_WITH_AS(parse_config_file("/nonexistent/wunits.conf"),
                         doctest::Contains("cannot read"), domain_error);
}

TEST_CASE("character vector arguments") {
    CharacterVector v = parse_char_vector("1,4,12");
    CHECK(v.a == 1);
    CHECK(v.b == 4);
    CHECK(v.N == 12);

    // reduced mod Z^2 into the canonical box
    v = parse_char_vector("13,-8,12");
    CHECK(v.a == 1);
    CHECK(v.b == 4);
    CHECK(v.N == 12);

    v = parse_char_vector(" 0 , 1 , 2 ");
    CHECK(v.a == 0);
    CHECK(v.b == 1);

    CHECK_THROWS_WITH_AS(parse_char_vector("1,2"), doctest::Contains("a,b,N"), domain_error);
    CHECK_THROWS_WITH_AS(parse_char_vector("1,2,3,4"), doctest::Contains("a,b,N"), domain_error);
    CHECK_THROWS_WITH_AS(parse_char_vector("0,0,5"), doctest::Contains("integral"), domain_error);
    CHECK_THROWS_WITH_AS(parse_char_vector("5,10,5"), doctest::Contains("integral"), domain_error);
    CHECK_THROWS_WITH_AS(parse_char_vector("1,1,0"), doctest::Contains("N > 0"), domain_error);
    CHECK_THROWS_WITH_AS(parse_char_vector("1,1,-4"), doctest::Contains("N > 0"), domain_error);
    CHECK_THROWS_AS(parse_char_vector("x,1,4"), domain_error);
}
