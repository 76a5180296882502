#include "wunits/bignum.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace wunits {

Real::Real(long prec) { mpfr_init2(v_, prec < 2 ? 2 : prec); mpfr_set_zero(v_, 1); }
Real::Real(const Real& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
Real::Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, 2);
    mpfr_set_zero(o.v_, 1);
}
Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}
Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real Real::from_long(long v, long prec) {
    Real r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}
Real Real::from_mpz(const mpz_class& v, long prec) {
    Real r(prec);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}
Real Real::from_mpq(const mpq_class& v, long prec) {
    Real r(prec);
    mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}
Real Real::from_double(double v, long prec) {
    Real r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}
Real Real::from_string(const std::string& s, long prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw domain_error("unparseable decimal literal: " + s);
    return r;
}
Real Real::pi(long prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}
Real Real::pow2(long e, long prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::operator+(const Real& o) const {
    Real r(join(*this, o));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::operator-(const Real& o) const {
    Real r(join(*this, o));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::operator*(const Real& o) const {
    Real r(join(*this, o));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::operator/(const Real& o) const {
    Real r(join(*this, o));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}
Real Real::operator*(long o) const {
    Real r(prec());
    mpfr_mul_si(r.v_, v_, o, MPFR_RNDN);
    return r;
}
Real Real::operator/(long o) const {
    Real r(prec());
    mpfr_div_si(r.v_, v_, o, MPFR_RNDN);
    return r;
}
Real Real::operator+(long o) const {
    Real r(prec());
    mpfr_add_si(r.v_, v_, o, MPFR_RNDN);
    return r;
}
Real Real::operator-(long o) const {
    Real r(prec());
    mpfr_sub_si(r.v_, v_, o, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::sqrt() const {
    if (mpfr_sgn(v_) < 0) throw domain_error("sqrt of negative real");
    Real r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::exp() const {
    Real r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::log() const {
    if (mpfr_sgn(v_) <= 0) throw domain_error("log of non-positive real");
    Real r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::log2() const {
    if (mpfr_sgn(v_) <= 0) throw domain_error("log2 of non-positive real");
    Real r(prec());
    mpfr_log2(r.v_, v_, MPFR_RNDN);
    return r;
}
Real Real::mul_2si(long e) const {
    Real r(prec());
    mpfr_mul_2si(r.v_, v_, e, MPFR_RNDN);
    return r;
}
Real Real::round_to(long prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}
void Real::sin_cos(Real& s, Real& c) const {
    Real ss(prec()), cc(prec());
    mpfr_sin_cos(ss.v_, cc.v_, v_, MPFR_RNDN);
    s = std::move(ss);
    c = std::move(cc);
}
mpz_class Real::round_to_mpz() const {
    mpfr_t t;
    mpfr_init2(t, prec());
    mpfr_round(t, v_);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

std::string Real::to_sci(int sig_digits) const {
    if (sig_digits < 1) sig_digits = 1;
    if (mpfr_zero_p(v_)) {
        std::string s = "0.";
        for (int i = 1; i < sig_digits; ++i) s += "0";
        return s + "e+00";
    }
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*Re", sig_digits - 1, v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

std::string Real::to_dec() const {
    long digits = (long)std::floor(prec() * 0.30102999566398119) + 2;
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*Re", (int)digits, v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

Complex Complex::from_long(long re, long prec) {
    return Complex(Real::from_long(re, prec), Real::from_long(0, prec));
}
Complex Complex::operator-() const { return Complex(-re_, -im_); }
Complex Complex::conj() const { return Complex(re_, -im_); }
Complex Complex::operator+(const Complex& o) const { return Complex(re_ + o.re_, im_ + o.im_); }
Complex Complex::operator-(const Complex& o) const { return Complex(re_ - o.re_, im_ - o.im_); }
Complex Complex::operator*(const Complex& o) const {
    return Complex(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
}
Complex Complex::operator/(const Complex& o) const {
    Real d = o.abs2();
    if (d.is_zero()) throw domain_error("complex division by zero");
    return Complex((re_ * o.re_ + im_ * o.im_) / d, (im_ * o.re_ - re_ * o.im_) / d);
}
Complex Complex::operator*(const Real& o) const { return Complex(re_ * o, im_ * o); }
Complex Complex::operator*(long o) const { return Complex(re_ * o, im_ * o); }

Real Complex::abs() const {
    Real r(prec());
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    return r;
}
Real Complex::abs2() const { return re_ * re_ + im_ * im_; }

Complex Complex::exp() const {
    Real m = re_.exp();
    Real s(prec()), c(prec());
    im_.sin_cos(s, c);
    return Complex(m * c, m * s);
}
Complex Complex::log() const {
    if (is_zero()) throw domain_error("log of complex zero");
    Real mag = abs().log();
    Real arg(prec());
    mpfr_atan2(arg.raw(), im_.raw(), re_.raw(), MPFR_RNDN);
    return Complex(mag, arg);
}
Complex Complex::inv() const { return one(prec()) / *this; }
Complex Complex::pow_si(long e) const {
    if (e == 0) return one(prec());
    bool invert = e < 0;
    unsigned long k = invert ? (unsigned long)(-(e + 1)) + 1ul : (unsigned long)e;
    Complex base = *this, acc = one(prec());
    while (k) {
        if (k & 1ul) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return invert ? acc.inv() : acc;
}
Complex Complex::mul_2si(long e) const { return Complex(re_.mul_2si(e), im_.mul_2si(e)); }
Complex Complex::round_to(long prec) const { return Complex(re_.round_to(prec), im_.round_to(prec)); }

std::string Complex::to_string(int sig_digits) const {
    std::string s = re_.to_sci(sig_digits);
    std::string t = im_.to_sci(sig_digits);
    if (!t.empty() && t[0] == '-') return s + " - " + t.substr(1) + "i";
    return s + " + " + t + "i";
}

Real residual_scaled(const Complex& a, const Complex& b) {
    Real diff = (a - b).abs();
    Real scale = Real::from_long(1, diff.prec());
    Real aa = a.abs(), bb = b.abs();
    if (aa > scale) scale = aa;
    if (bb > scale) scale = bb;
    return diff / scale;
}
bool close_bits(const Complex& a, const Complex& b, long bits) {
    return residual_scaled(a, b) < Real::pow2(-bits, a.prec());
}
bool close_bits(const Real& a, const Real& b, long bits) {
    return close_bits(Complex(a, Real::from_long(0, a.prec())),
                      Complex(b, Real::from_long(0, b.prec())), bits);
}

Complex exp_2pii(const Complex& z, long prec) {
    // Pad for the argument reduction of sin/cos at |2*pi*Re(z)| and for the
    // scale of the real exponential.
    long zexp = 0;
    if (!z.re().is_zero()) zexp = mpfr_get_exp(z.re().raw());
    if (!z.im().is_zero()) {
        long e2 = mpfr_get_exp(z.im().raw());
        if (e2 > zexp) zexp = e2;
    }
    long wp = prec + 32 + (zexp > 0 ? zexp + 3 : 0);
    Real two_pi = Real::pi(wp) * 2;
    Real zre = z.re().round_to(wp), zim = z.im().round_to(wp);
    // exp(2*pi*i*(x+iy)) = exp(-2*pi*y) * (cos(2*pi*x) + i sin(2*pi*x))
    Real mag = (-(two_pi * zim)).exp();
    Real s(wp), c(wp);
    (two_pi * zre).sin_cos(s, c);
    return Complex((mag * c).round_to(prec), (mag * s).round_to(prec));
}

Complex eval_q(const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    if (!(tau.im() > Real::from_long(0, tau.im().prec())))
        throw domain_error("tau must have positive imaginary part");
    return exp_2pii(tau, policy.working_bits);
}

Complex frac_exp(const mpq_class& r, const mpq_class& s, const Complex& tau,
                 const PrecisionPolicy& policy) {
    policy.validate();
    if (!(tau.im() > Real::from_long(0, tau.im().prec())))
        throw domain_error("tau must have positive imaginary part");
    long wp = policy.working_bits + 32;
    Real rr = Real::from_mpq(r, wp), ss = Real::from_mpq(s, wp);
    Complex z(rr * tau.re().round_to(wp) + ss, rr * tau.im().round_to(wp));
    return exp_2pii(z, policy.working_bits);
}

long terms_needed(const Real& im_tau, const mpq_class& r_min, const PrecisionPolicy& policy,
                  double prefactor_bound) {
    policy.validate();
    double y = im_tau.to_double();
    if (!(y > 0)) throw domain_error("im_tau must be positive");
    if (prefactor_bound < 1.0) prefactor_bound = 1.0;
    const double bits_per_index = 2.0 * 3.14159265358979323846 * y / 0.69314718055994530942;
    double rmin = mpq_class(r_min).get_d();
    double absq = std::exp(-2.0 * 3.14159265358979323846 * y);
    double target = (double)(policy.working_bits + policy.guard_bits) + std::log2(prefactor_bound) -
                    std::log2(1.0 - absq);
    // tail(T) = C * |q|^{T+1+r_min} / (1-|q|) < 2^{-(P+G)}
    auto ok = [&](long T) { return ((double)T + 1.0 + rmin) * bits_per_index > target; };
    long T = (long)std::ceil(target / bits_per_index - 1.0 - rmin);
    if (T < 0) T = 0;
    while (!ok(T)) ++T;
    while (T > 0 && ok(T - 1)) --T;
    return T;
}

}  // namespace wunits
