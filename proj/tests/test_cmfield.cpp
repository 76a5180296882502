#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "wunits/cmfield.hpp"

using namespace wunits;

TEST_CASE("field construction") {
    IQField K = make_field(-23);
    CHECK(K.d_K == -23);
    CHECK(K.B_K == 23);
    CHECK(K.C_K == 138);
    CHECK(K.h_K == 3);

    PrecisionPolicy pol(256, 64);
    Complex th = K.theta(pol);
    CHECK(th.re().to_double() == doctest::Approx(-11.5));
    CHECK(th.im().to_double() == doctest::Approx(2.3979157616563597708).epsilon(1e-15));
    // theta^2 + B*theta + C = 0
    Complex z = th * th + th * Real::from_long(23, 256) + Complex::from_long(138, 256);
    CHECK(z.abs() < Real::pow2(-180, 64));

    CHECK(make_field(-7).h_K == 1);
    CHECK(make_field(-15).h_K == 2);
    CHECK(make_field(-163).h_K == 1);

    CHECK_THROWS_AS(make_field(-4), domain_error);
    CHECK_THROWS_AS(make_field(-12), domain_error);
    CHECK_THROWS_AS(make_field(-21), domain_error);  // -21 = 3 mod 4, not a discriminant
    CHECK_THROWS_AS(make_field(5), domain_error);
}

TEST_CASE("kronecker symbol") {
    CHECK(kronecker(-23, 2) == 1);
    CHECK(kronecker(-23, 3) == 1);
    CHECK(kronecker(-23, 5) == -1);
    CHECK(kronecker(-23, 13) == 1);
    CHECK(kronecker(-23, 23) == 0);
    CHECK(kronecker(-7, 3) == -1);
    CHECK(kronecker(-7, 2) == 1);
}

TEST_CASE("class numbers") {
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-7) == 1);
    CHECK(class_number(-15) == 2);
    CHECK(class_number(-47) == 5);
    CHECK(class_number(-163) == 1);
}

TEST_CASE("prime factors") {
    CHECK(prime_factors(12) == std::vector<long>{2, 3});
    CHECK(prime_factors(7) == std::vector<long>{7});
    CHECK(prime_factors(360) == std::vector<long>{2, 3, 5});
}

TEST_CASE("hypothesis screening") {
    IQField K = make_field(-23);
    CHECK(hypothesis_violations(K, 6, 2).empty());
    CHECK(hypothesis_violations(K, 6, 4).empty());
    CHECK(hypothesis_violations(K, 6, 13).empty());

    // 5 is inert for d = -23, so m = 10 is never admissible there
    auto v0 = hypothesis_violations(K, 10, 3);
    REQUIRE(v0.size() == 1);
    CHECK(v0[0].find("hypothesis (ii)") != std::string::npos);
    CHECK(v0[0].find("5") != std::string::npos);

    auto v1 = hypothesis_violations(K, 4, 3);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].find("hypothesis (i)") != std::string::npos);

    IQField K7 = make_field(-7);
    auto v2 = hypothesis_violations(K7, 6, 1);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].find("hypothesis (ii)") != std::string::npos);
    CHECK(v2[0].find("3") != std::string::npos);

    auto v3 = hypothesis_violations(K, 1, 1);
    REQUIRE(!v3.empty());
    CHECK(v3[0].find("parameter m") != std::string::npos);
    auto v4 = hypothesis_violations(K, 6, 0);
    REQUIRE(!v4.empty());
    CHECK(v4[0].find("parameter n") != std::string::npos);

    // hypothesis (ii) looks at primes of mn, not just m
    CHECK(!hypothesis_violations(K, 6, 5).empty());
}

TEST_CASE("W enumeration matches index formula") {
    IQField K = make_field(-23);
    CHECK(enumerate_W(K, 12).size() == 8);
    for (long N = 2; N <= 40; ++N)
        CHECK((long)enumerate_W(K, N).size() == w_count_formula(K, N));

    // representatives act invertibly at the level
    for (const auto& w : enumerate_W(K, 24)) {
        GL2ModN g = w.matrix(K);
        long det = g.det_mod();
        CHECK(std::gcd(det, 24L) == 1);
    }
}

TEST_CASE("galois generators of L_F over K_(1)") {
    CHECK(enumerate_gal_LF(6, 1) == std::vector<long>{1});
    CHECK(enumerate_gal_LF(6, 2) == std::vector<long>{1, 5});
    CHECK(enumerate_gal_LF(6, 4) == std::vector<long>{1, 5, 7, 11});
    CHECK(enumerate_gal_LF(10, 3) == std::vector<long>{1, 11});
}
