#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace wunits {

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionPolicy {
    long working_bits = 512;
    long guard_bits = 64;

    PrecisionPolicy() = default;
    PrecisionPolicy(long p, long g) : working_bits(p), guard_bits(g) { validate(); }

    void validate() const {
        if (working_bits < 128) throw domain_error("precision policy: working_bits must be >= 128");
        if (guard_bits < 32) throw domain_error("precision policy: guard_bits must be >= 32");
        if (guard_bits >= working_bits) throw domain_error("precision policy: guard_bits must be < working_bits");
    }
};

// Value-semantic arbitrary-precision real. The precision of every value is
// explicit; binary operations round to the larger operand precision and never
// extend it silently.
class Real {
  public:
    explicit Real(long prec = 64);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real from_long(long v, long prec);
    static Real from_mpz(const mpz_class& v, long prec);
    static Real from_mpq(const mpq_class& v, long prec);
    static Real from_double(double v, long prec);
    static Real from_string(const std::string& s, long prec);
    static Real pi(long prec);
    static Real pow2(long e, long prec);  // 2^e exactly

    long prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    Real operator-() const;
    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    Real operator*(long o) const;
    Real operator/(long o) const;
    Real operator+(long o) const;
    Real operator-(long o) const;

    Real abs() const;
    Real sqrt() const;  // requires *this >= 0
    Real exp() const;
    Real log() const;   // requires *this > 0
    Real log2() const;  // requires *this > 0
    Real mul_2si(long e) const;
    Real round_to(long prec) const;

    void sin_cos(Real& s, Real& c) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_neg() const { return mpfr_sgn(v_) < 0; }
    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpz_class round_to_mpz() const;
    // Base-10 scientific string with the given significant digits.
    std::string to_sci(int sig_digits) const;
    // Full-precision decimal string.
    std::string to_dec() const;

  private:
    mpfr_t v_;
    static long join(const Real& a, const Real& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }
};

class Complex {
  public:
    explicit Complex(long prec = 64) : re_(prec), im_(prec) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

    static Complex from_long(long re, long prec);
    static Complex zero(long prec) { return from_long(0, prec); }
    static Complex one(long prec) { return from_long(1, prec); }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    long prec() const { return re_.prec() > im_.prec() ? re_.prec() : im_.prec(); }

    Complex operator-() const;
    Complex conj() const;
    Complex operator+(const Complex& o) const;
    Complex operator-(const Complex& o) const;
    Complex operator*(const Complex& o) const;
    Complex operator/(const Complex& o) const;
    Complex operator*(const Real& o) const;
    Complex operator*(long o) const;

    Real abs() const;
    Real abs2() const;  // |z|^2, no square root
    Complex exp() const;
    Complex log() const;  // principal branch
    Complex pow_si(long e) const;
    Complex inv() const;
    Complex mul_2si(long e) const;
    Complex round_to(long prec) const;

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    std::string to_string(int sig_digits) const;

  private:
    Real re_, im_;
};

// |a - b| against 2^{-bits} * max(1, |a|, |b|).
Real residual_scaled(const Complex& a, const Complex& b);
bool close_bits(const Complex& a, const Complex& b, long bits);
bool close_bits(const Real& a, const Real& b, long bits);

// exp(2*pi*i*z), computed with internal padding to keep the argument
// reduction of the trigonometric part accurate.
Complex exp_2pii(const Complex& z, long prec);

// q = exp(2*pi*i*tau). Requires Im(tau) > 0.
Complex eval_q(const Complex& tau, const PrecisionPolicy& policy);

// exp(2*pi*i*(r*tau + s)) for exact rationals r, s; the only sanctioned way
// to form q^r e^{2*pi*i*s}. Requires Im(tau) > 0.
Complex frac_exp(const mpq_class& r, const mpq_class& s, const Complex& tau,
                 const PrecisionPolicy& policy);

// Smallest T with prefactor_bound * sum_{k>T} |q|^{k+r_min} < 2^{-(P+G)},
// where |q| = exp(-2*pi*im_tau).
long terms_needed(const Real& im_tau, const mpq_class& r_min, const PrecisionPolicy& policy,
                  double prefactor_bound = 1.0);

}  // namespace wunits
