#include "wunits/modfunc.hpp"

#include <cmath>
#include <numeric>

namespace wunits {

namespace {

long mod_pos(long x, long n) {
    long r = x % n;
    return r < 0 ? r + n : r;
}

long log2ceil(long n) {
    long b = 0;
    while ((1L << b) < n) ++b;
    return b;
}

PrecisionPolicy padded(const PrecisionPolicy& policy, long extra) {
    return PrecisionPolicy(policy.working_bits + extra, policy.guard_bits);
}

void require_upper_half(const Complex& tau) {
    if (!(tau.im() > Real::from_long(0, 32)))
        throw domain_error("tau must lie in the upper half-plane");
}

mpz_class mpq_floor(const mpq_class& q) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

// g2, g3 at the caller-supplied (already padded) precision, unrounded.
std::pair<Complex, Complex> eisenstein_raw(const Complex& tau, const PrecisionPolicy& pol) {
    const long wp = pol.working_bits;
    Complex q = eval_q(tau, pol);
    long T = 2 * terms_needed(tau.im(), mpq_class(0), pol, 1000.0);
    if (T < 4) T = 4;

    std::vector<mpz_class> s3(static_cast<size_t>(T) + 1), s5(static_cast<size_t>(T) + 1);
    for (long d = 1; d <= T; ++d) {
        mpz_class d3 = mpz_class(d) * d * d;
        mpz_class d5 = d3 * d * d;
        for (long n = d; n <= T; n += d) {
            s3[static_cast<size_t>(n)] += d3;
            s5[static_cast<size_t>(n)] += d5;
        }
    }

    Complex e4 = Complex::one(wp);
    Complex e6 = Complex::one(wp);
    Complex qn = Complex::one(wp);
    for (long n = 1; n <= T; ++n) {
        qn = qn * q;
        e4 = e4 + qn * Real::from_mpz(240 * s3[static_cast<size_t>(n)], wp);
        e6 = e6 - qn * Real::from_mpz(504 * s5[static_cast<size_t>(n)], wp);
    }

    Real twopi = Real::pi(wp).mul_2si(1);
    Real twopi2 = twopi * twopi;
    Real c4 = twopi2 * twopi2 / 12;
    Real c6 = c4 * twopi2 / 18;
    return {e4 * c4, e6 * c6};
}

// Headroom for the g2^3 - 27 g3^2 cancellation (leading terms agree through
// O(q)); ~ 2*log2(1/|q|) bits plus slack.
long cancel_pad(const Complex& tau) {
    double im = tau.im().to_double();
    return static_cast<long>(std::ceil(4.0 * M_PI * im / std::log(2.0))) + 32;
}

Complex delta_from(const Complex& g2, const Complex& g3, const PrecisionPolicy& pol,
                   long guard_bits) {
    Complex g23 = g2 * g2 * g2;
    Complex d = g23 - (g3 * g3) * 27L;
    Real scale = g23.abs();
    Real alt = (g3 * g3).abs() * 27L;
    if (alt > scale) scale = alt;
    if (d.abs() < scale.mul_2si(-(pol.working_bits - guard_bits)))
        throw internal_error("delta: cancellation exhausted working precision");
    return d;
}

// Core Siegel product for 0 <= r,s < 1, (r,s) != (0,0).
Complex siegel_core(const mpq_class& r, const mpq_class& s, const Complex& tau,
                    const PrecisionPolicy& policy) {
    long T = terms_needed(tau.im(), -r, policy, 16.0);
    PrecisionPolicy pol = padded(policy, 32 + log2ceil(T + 2));
    const long wp = pol.working_bits;

    Complex q = eval_q(tau, pol);
    Complex w = frac_exp(r, s, tau, pol);
    // -q^{B(r)} e^{pi i s (r-1)} with B(r) = (r^2 - r + 1/6)/2, folded into one
    // exponential exp(2*pi*i*(B*tau + s*(r-1)/2)).
    mpq_class big_b = (r * r - r + mpq_class(1, 6)) / 2;
    mpq_class half_phase = s * (r - 1) / 2;
    Complex pre = frac_exp(big_b, half_phase, tau, pol);

    Complex one = Complex::one(wp);
    Complex acc = one - w;
    Complex winv = w.inv();
    Complex qn = one;
    for (long n = 1; n <= T; ++n) {
        qn = qn * q;
        acc = acc * (one - qn * w) * (one - qn * winv);
    }
    return (-(pre * acc)).round_to(policy.working_bits);
}

}  // namespace

CharacterVector::CharacterVector(long a_, long b_, long N_) {
    if (N_ <= 0) throw domain_error("character vector: denominator must be positive");
    a = mod_pos(a_, N_);
    b = mod_pos(b_, N_);
    long g = std::gcd(std::gcd(a, b), N_);
    if (g == N_) throw domain_error("character vector: lies in Z^2");
    a /= g;
    b /= g;
    N = N_ / g;
}

std::optional<CharacterVector> CharacterVector::reduced(long a_, long b_, long N_) {
    if (N_ <= 0) return std::nullopt;
    if (mod_pos(a_, N_) == 0 && mod_pos(b_, N_) == 0) return std::nullopt;
    return CharacterVector(a_, b_, N_);
}

mpq_class CharacterVector::r() const {
    mpq_class q(a, N);
    q.canonicalize();
    return q;
}

mpq_class CharacterVector::s() const {
    mpq_class q(b, N);
    q.canonicalize();
    return q;
}

CharacterVector CharacterVector::negated() const { return CharacterVector(-a, -b, N); }

CharacterVector CharacterVector::normalize_pm() const {
    CharacterVector m = negated();
    return m < *this ? m : *this;
}

std::optional<CharacterVector> cv_combine(const CharacterVector& v1, const CharacterVector& v2,
                                          int sign) {
    long l = std::lcm(v1.N, v2.N);
    long na = v1.a * (l / v1.N) + sign * v2.a * (l / v2.N);
    long nb = v1.b * (l / v1.N) + sign * v2.b * (l / v2.N);
    return CharacterVector::reduced(na, nb, l);
}

GL2ModN::GL2ModN(long N_, long a, long b, long c, long d) : N(N_) {
    if (N_ <= 0) throw domain_error("matrix level must be positive");
    e00 = mod_pos(a, N_);
    e01 = mod_pos(b, N_);
    e10 = mod_pos(c, N_);
    e11 = mod_pos(d, N_);
    if (std::gcd(det_mod(), N_) != 1) throw domain_error("matrix not invertible mod N");
}

GL2ModN GL2ModN::identity(long N) { return GL2ModN(N, 1, 0, 0, 1); }

GL2ModN GL2ModN::scalar(long t, long N) { return GL2ModN(N, t, 0, 0, t); }

long GL2ModN::det_mod() const { return mod_pos(e00 * e11 - e01 * e10, N); }

CharacterVector act_transpose(const GL2ModN& gamma, const CharacterVector& v) {
    if (gamma.N % v.N != 0)
        throw domain_error("act_transpose: vector denominator must divide matrix level");
    long f = gamma.N / v.N;
    long an = mod_pos(v.a * f, gamma.N);
    long bn = mod_pos(v.b * f, gamma.N);
    long a2 = gamma.e00 * an + gamma.e10 * bn;
    long b2 = gamma.e01 * an + gamma.e11 * bn;
    return CharacterVector(a2, b2, gamma.N);
}

GL2ModN mat_mul(const GL2ModN& a, const GL2ModN& b) {
    if (a.N != b.N) throw domain_error("mat_mul: level mismatch");
    return GL2ModN(a.N, a.e00 * b.e00 + a.e01 * b.e10, a.e00 * b.e01 + a.e01 * b.e11,
                   a.e10 * b.e00 + a.e11 * b.e10, a.e10 * b.e01 + a.e11 * b.e11);
}

Complex eta(const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    long T = terms_needed(tau.im(), mpq_class(0), policy, 2.0);
    PrecisionPolicy pol = padded(policy, 32 + log2ceil(T + 2));
    const long wp = pol.working_bits;

    Complex q = eval_q(tau, pol);
    // sqrt(2 pi) * zeta_8 * q^{1/24} = sqrt(2 pi) * exp(2 pi i (tau/24 + 1/8))
    Complex pre = frac_exp(mpq_class(1, 24), mpq_class(1, 8), tau, pol);
    Real s2pi = Real::pi(wp).mul_2si(1).sqrt();

    Complex one = Complex::one(wp);
    Complex prod = one;
    Complex qn = one;
    for (long n = 1; n <= T; ++n) {
        qn = qn * q;
        prod = prod * (one - qn);
    }
    return (pre * prod * s2pi).round_to(policy.working_bits);
}

std::pair<Complex, Complex> eisenstein_g2g3(const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    PrecisionPolicy pol = padded(policy, 32);
    auto [g2, g3] = eisenstein_raw(tau, pol);
    return {g2.round_to(policy.working_bits), g3.round_to(policy.working_bits)};
}

Complex delta(const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    PrecisionPolicy pol = padded(policy, cancel_pad(tau));
    auto [g2, g3] = eisenstein_raw(tau, pol);
    return delta_from(g2, g3, pol, policy.guard_bits).round_to(policy.working_bits);
}

Complex j_invariant(const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    PrecisionPolicy pol = padded(policy, cancel_pad(tau) + 32);
    auto [g2, g3] = eisenstein_raw(tau, pol);
    Complex d = delta_from(g2, g3, pol, policy.guard_bits);
    Complex g23 = g2 * g2 * g2;
    return ((g23 * 1728L) / d).round_to(policy.working_bits);
}

Complex wp_char(const CharacterVector& v, const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    mpq_class r = v.r(), s = v.s();
    long T = terms_needed(tau.im(), -r, policy, 512.0);
    PrecisionPolicy pol = padded(policy, 32 + log2ceil(T + 2));
    const long wp = pol.working_bits;

    Complex q = eval_q(tau, pol);
    Complex u = frac_exp(r, s, tau, pol);
    Complex one = Complex::one(wp);
    auto sq = [](const Complex& z) { return z * z; };

    Complex x = Complex(Real::from_mpq(mpq_class(1, 12), wp), Real::from_long(0, wp)) +
                u / sq(one - u);
    Complex uinv = u.inv();
    Complex qn = one;
    for (long n = 1; n <= T; ++n) {
        qn = qn * q;
        Complex cu = qn * u;
        Complex cd = qn * uinv;
        x = x + cu / sq(one - cu) + cd / sq(one - cd) - (qn / sq(one - qn)).mul_2si(1);
    }
    Real pi = Real::pi(wp);
    Real m4pi2 = -(pi * pi).mul_2si(2);  // (2 pi i)^2
    return (x * m4pi2).round_to(policy.working_bits);
}

Complex fricke(const CharacterVector& v, const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    CharacterVector w = v.normalize_pm();
    PrecisionPolicy pol = padded(policy, cancel_pad(tau) + 32);
    auto [g2, g3] = eisenstein_raw(tau, pol);
    Complex d = delta_from(g2, g3, pol, policy.guard_bits);
    Complex pv = wp_char(w, tau, pol);
    return ((g2 * g3 / d) * pv).round_to(policy.working_bits);
}

Complex siegel(const CharacterVector& v, const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    return siegel_core(v.r(), v.s(), tau, policy);
}

Complex siegel_rs(const mpq_class& r, const mpq_class& s, const Complex& tau,
                  const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    mpz_class k = mpq_floor(r), j = mpq_floor(s);
    mpq_class r0 = r - k, s0 = s - j;
    if (r0 == 0 && s0 == 0) throw domain_error("siegel: character vector lies in Z^2");
    if (k == 0 && j == 0) return siegel_core(r0, s0, tau, policy);

    mpq_class phase = (j * r0 - k * s) / 2;
    mpz_class kj = k + j;
    if (mpz_odd_p(kj.get_mpz_t())) phase += mpq_class(1, 2);
    PrecisionPolicy pol = padded(policy, 32);
    Complex mult = frac_exp(mpq_class(0), phase, tau, pol);
    return (mult * siegel_core(r0, s0, tau, pol)).round_to(policy.working_bits);
}

Complex weierstrass_unit(long m, long n, const Complex& tau, const PrecisionPolicy& policy) {
    policy.validate();
    require_upper_half(tau);
    if (m < 2) throw domain_error("weierstrass_unit: m must be >= 2");
    if (n < 1) throw domain_error("weierstrass_unit: n must be >= 1");
    if (n == 1) return Complex::one(policy.working_bits);

    long mn = m * n;
    PrecisionPolicy pol = padded(policy, 32);

    Complex p_num = wp_char(CharacterVector(0, 1, mn), tau, pol);
    Complex p_mid = wp_char(CharacterVector(1, 0, m), tau, pol);
    Complex p_den = wp_char(CharacterVector(0, 1, m), tau, pol);
    Complex ratio = (p_num - p_mid) / (p_den - p_mid);

    auto g = [&](const mpq_class& rr, const mpq_class& ss) {
        return siegel_rs(rr, ss, tau, pol);
    };
    mpq_class om(1, m), omn(1, mn);
    Complex num = g(om, omn) * g(-om, omn) * g(0, om).pow_si(2);
    Complex den = g(om, om) * g(-om, om) * g(0, omn).pow_si(2);
    Complex hval = num / den;

    if (residual_scaled(ratio, hval) > Real::pow2(-(policy.working_bits / 2), 64))
        throw internal_error("weierstrass_unit: wp-ratio and Siegel forms disagree");
    return hval.round_to(policy.working_bits);
}

}  // namespace wunits
