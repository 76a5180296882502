#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wunits/modfunc.hpp"

using namespace wunits;

namespace {
const PrecisionPolicy kPol(256, 64);
Complex tp(double re, double im, long prec = 256) {
    return Complex(Real::from_double(re, prec), Real::from_double(im, prec));
}
}  // namespace

TEST_CASE("character vector canonical form") {
    CharacterVector v(1, 5, 12);
    CHECK(v.a == 1);
    CHECK(v.b == 5);
    CHECK(v.denominator() == 12);

    auto w = CharacterVector::reduced(2, 2, 4);
    REQUIRE(w.has_value());
    CHECK(*w == CharacterVector(1, 1, 2));

    CHECK(!CharacterVector::reduced(0, 0, 3));
    CHECK(!CharacterVector::reduced(3, 6, 3));
    CHECK(!CharacterVector::reduced(1, 1, 0));

    CHECK(CharacterVector(-1, 5, 12) == CharacterVector(11, 5, 12));
    CHECK(CharacterVector(1, 4, 12).negated() == CharacterVector(11, 8, 12));
    CHECK(CharacterVector(11, 8, 12).normalize_pm() == CharacterVector(1, 4, 12));
    CHECK(CharacterVector(1, 4, 12).normalize_pm() == CharacterVector(1, 4, 12));
    CHECK(CharacterVector(1, 4, 12).r() == mpq_class(1, 12));
    CHECK(CharacterVector(1, 4, 12).s() == mpq_class(1, 3));
}

TEST_CASE("cv_combine") {
    CharacterVector v(1, 0, 2);
    CHECK(!cv_combine(v, v, 1));  // [1/2;0] + [1/2;0] is integral
    auto w = cv_combine(CharacterVector(1, 4, 12), CharacterVector(3, 4, 12), 1);
    REQUIRE(w.has_value());
    CHECK(*w == CharacterVector(1, 2, 3));
}

TEST_CASE("galois action on subscripts") {
    CharacterVector v(1, 4, 12);
    CHECK(act_transpose(GL2ModN::identity(12), v) == v);
    // scalar t acts as v -> t*v mod Z^2
    CHECK(act_transpose(GL2ModN::scalar(5, 12), v) == CharacterVector(5, 8, 12));
    GL2ModN g(12, 1, 2, 3, 7);
    CHECK(g.det_mod() == 1);
    GL2ModN gg = mat_mul(g, GL2ModN::scalar(5, 12));
    CHECK(gg.det_mod() == 25 % 12);
}

TEST_CASE("eta at i") {
    // |eta(i)| = sqrt(2*pi) * Gamma(1/4) / (2*pi^(3/4)), argument pi/4
    Complex e = eta(Complex(Real(256), Real::from_long(1, 256)), kPol);
    Real want = Real::from_string("0.768225422326056659002594179576180644517866914", 256) *
                (Real::pi(256) * 2).sqrt();
    CHECK((e.abs() - want).abs() < Real::from_double(1e-30, 64));
    CHECK((e.re() - e.im()).abs() < Real::pow2(-190, 64));
}

TEST_CASE("j at CM points") {
    PrecisionPolicy pol(512, 64);
    Complex ji = j_invariant(Complex(Real(512), Real::from_long(1, 512)), pol);
    CHECK((ji - Complex::from_long(1728, 512)).abs() < Real::pow2(-400, 64));

    Complex j2i = j_invariant(Complex(Real(512), Real::from_long(2, 512)), pol);
    CHECK((j2i - Complex::from_long(287496, 512)).abs() < Real::pow2(-400, 64));

    // h(-163) = 1, so j((1+sqrt(-163))/2) = -640320^3 exactly
    Complex t163(Real::from_mpq(mpq_class(1, 2), 512), Real::from_long(163, 512).sqrt() / 2);
    Complex j163 = j_invariant(t163, pol);
    Real gap = (j163 + Complex(Real::from_string("262537412640768000", 512), Real(512))).abs();
    CHECK(gap.mul_2si(-59) < Real::pow2(-380, 64));  // relative to |j| ~ 2^58
}

TEST_CASE("delta equals eta^24") {
    for (double re : {-0.4, 0.0, 0.37}) {
        Complex tau = tp(re, 0.8 + re * re);
        CHECK(residual_scaled(delta(tau, kPol), eta(tau, kPol).pow_si(24)) <
              Real::pow2(-192, 64));
    }
}

TEST_CASE("eisenstein discriminant combination") {
    Complex tau = tp(0.21, 1.37);
    auto [g2, g3] = eisenstein_g2g3(tau, kPol);
    Complex d = g2.pow_si(3) - g3.pow_si(2) * 27;
    CHECK(residual_scaled(d, delta(tau, kPol)) < Real::pow2(-150, 64));
}

TEST_CASE("wp even in v") {
    Complex tau = tp(0.13, 1.02);
    CharacterVector v(2, 7, 9);
    CHECK(residual_scaled(wp_char(v, tau, kPol), wp_char(v.negated(), tau, kPol)) <
          Real::pow2(-192, 64));
}

TEST_CASE("fricke sign invariance is exact") {
    Complex tau = tp(-0.31, 0.77);
    CharacterVector v(5, 11, 24);
    Complex a = fricke(v, tau, kPol), b = fricke(v.negated(), tau, kPol);
    CHECK((a - b).is_zero());
}

TEST_CASE("siegel quasi-periodicity") {
    Complex tau = tp(0.11, 0.93);
    long P = 256;
    // g_{[r+1;s]} = -exp(-pi*i*s) g_{[r;s]}
    mpq_class r(1, 4), s(1, 3);
    Complex lhs = siegel_rs(r + 1, s, tau, kPol);
    Complex mult = exp_2pii(Complex(Real::from_mpq(-s / 2, P), Real(P)), P);
    Complex rhs = -(mult * siegel_rs(r, s, tau, kPol));
    CHECK(residual_scaled(lhs, rhs) < Real::pow2(-192, 64));

    // g_{-v} = -g_v
    Complex gm = siegel_rs(-r, -s, tau, kPol);
    CHECK(residual_scaled(gm, -siegel_rs(r, s, tau, kPol)) < Real::pow2(-192, 64));

    // canonical-range agreement with siegel()
    CHECK(residual_scaled(siegel(CharacterVector(3, 4, 12), tau, kPol),
                          siegel_rs(r, s, tau, kPol)) < Real::pow2(-192, 64));
}

TEST_CASE("weierstrass unit dual paths") {
    Complex tau = tp(0.29, 1.18);
    CHECK_NOTHROW(weierstrass_unit(6, 2, tau, kPol));
    CHECK_NOTHROW(weierstrass_unit(10, 3, tau, kPol));
    Complex one = Complex::one(256);
    CHECK((weierstrass_unit(6, 1, tau, kPol) - one).abs() < Real::pow2(-180, 64));
    CHECK_THROWS_AS(weierstrass_unit(1, 2, tau, kPol), domain_error);
    CHECK_THROWS_AS(weierstrass_unit(6, 0, tau, kPol), domain_error);
}

TEST_CASE("weierstrass unit frozen value") {
    PrecisionPolicy pol(512, 64);
    // theta for d = -23
    Complex theta(Real::from_mpq(mpq_class(-23, 2), 512), Real::from_long(23, 512).sqrt() / 2);
    Complex h = weierstrass_unit(6, 2, theta, pol);
    Complex want(Real::from_string("3.53091426837299755112641117149", 512),
                 Real::from_string("-0.126382923483542058167495816", 512));
    CHECK((h - want).abs() < Real::from_double(1e-26, 64));
}
