#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wunits/cmfield.hpp"
#include "wunits/modfunc.hpp"
#include "wunits/recog.hpp"

using namespace wunits;

namespace {
const PrecisionPolicy kPol(256, 64);

std::optional<IntPolynomial> dep(const Complex& x, long deg) { return algdep(x, deg, kPol); }

Complex creal(const Real& r) { return Complex(r, Real(r.prec())); }
}  // namespace

TEST_CASE("polynomial basics") {
    IntPolynomial p{{-2, 0, 1}};  // X^2 - 2
    CHECK(p.degree() == 2);
    CHECK(p.height() == 2);
    CHECK(p.to_string() == "X^2 - 2");
    CHECK(p.coeff_strings() == std::vector<std::string>{"-2", "0", "1"});
    CHECK(is_monic_integral(p));
    CHECK(!is_unit_poly(p));
    CHECK(is_unit_poly(IntPolynomial{{1, 85, 8129, 3729, 897, -61, 1}}));
    CHECK(!is_monic_integral(IntPolynomial{{1, 3, 2}}));

    // trailing zeros stripped, sign fixed
    auto qn = IntPolynomial::normalized({0, -3, 0, 0});
    REQUIRE(qn.has_value());
    CHECK(qn->degree() == 1);
    CHECK(qn->c.back() > 0);
    CHECK(!IntPolynomial::normalized({0, 0}));

    Complex x = Complex::from_long(3, 128);
    IntPolynomial r{{1, -2, 1}};  // (X-1)^2
    CHECK((r.eval(x) - Complex::from_long(4, 128)).abs() < Real::pow2(-100, 64));
}

TEST_CASE("lll reduces a skewed basis") {
    // rows: (1, 0, 10000), (0, 1, 10001), (0, 0, 10002) -- shortest vectors mix rows
    LatticeBasis b;
    b.rows = {{1, 0, 10000}, {0, 1, 10001}, {0, 0, 10002}};
    LatticeBasis red = lll_reduce(b, mpq_class(3, 4));
    CHECK(abs(det_exact(b)) == abs(det_exact(red)));
    // first vector got short
    mpz_class n0 = red.rows[0][0] * red.rows[0][0] + red.rows[0][1] * red.rows[0][1] +
                   red.rows[0][2] * red.rows[0][2];
    CHECK(n0 <= 16);
}

TEST_CASE("algdep corpus") {
    auto p = dep(creal(Real::from_long(2, 256).sqrt()), 4);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{-2, 0, 1});

    p = dep(creal((Real::from_long(5, 256).sqrt() + 1) / 2), 4);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{-1, -1, 1});

    p = dep(Complex(Real(256), Real::from_long(1, 256)), 4);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{1, 0, 1});

    p = dep(Complex::from_long(1728, 256), 4);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{-1728, 1});

    Real fifth = (Real::from_long(2, 256).log() / 5).exp();  // 2^(1/5)
    p = dep(creal(fifth), 5);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{-2, 0, 0, 0, 0, 1});

    // (1 + i*sqrt(7))/2 has minimal polynomial X^2 - X + 2
    Complex z(Real::from_mpq(mpq_class(1, 2), 256), Real::from_long(7, 256).sqrt() / 2);
    p = dep(z, 4);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{2, -1, 1});
}

TEST_CASE("algdep rejects non-algebraic and junk") {
    CHECK(!dep(creal(Real::pi(256)), 6));
    CHECK(!dep(creal(Real::from_long(2, 256).log()), 4));
    Complex e_gamma(Real::from_long(1, 256).exp(), Real::from_double(0.5772156649, 256));
    CHECK(!dep(e_gamma, 5));
}

TEST_CASE("algdep tiny values collapse to X") {
    auto p = dep(Complex::zero(256), 4);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{0, 1});

    // below the certainty threshold 2^-(P-G), indistinguishable from zero
    p = dep(Complex(Real::pow2(-200, 256), Real(256)), 4);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{0, 1});
}

TEST_CASE("algdep class polynomial oracle") {
    PrecisionPolicy pol(512, 64);
    IQField K = make_field(-23);
    Complex j = j_invariant(K.theta(pol), pol);
    auto p = algdep(j, 6, pol);
    REQUIRE(p.has_value());
    CHECK(p->c == std::vector<mpz_class>{mpz_class("12771880859375"), mpz_class("-5151296875"),
                                         mpz_class("3491750"), 1});
}

TEST_CASE("recognition is stable under precision increase") {
    PrecisionPolicy p384(384, 64);
    Real s = Real::from_long(3, 384).sqrt();
    auto a = algdep(creal(s), 4, p384);
    auto b = algdep(creal(s.round_to(256)).round_to(256), 4, kPol);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->c == b->c);
}
