#include "wunits/reference.hpp"

#include <algorithm>
#include <numeric>

namespace wunits {

Complex wp_lattice_sum(const mpq_class& r, const mpq_class& s, const Complex& tau, long cutoff,
                       long prec) {
    if (cutoff < 1) throw domain_error("wp_lattice_sum: cutoff must be >= 1");
    if (!(tau.im() > Real(prec))) throw domain_error("wp_lattice_sum: tau must have Im > 0");
    if (r.get_den() == 1 && s.get_den() == 1)
        throw domain_error("wp_lattice_sum: (r, s) is a lattice point");
    Complex z = tau * Real::from_mpq(r, prec) + Complex(Real::from_mpq(s, prec), Real(prec));

    Complex acc = z.pow_si(-2);
    Complex two = Complex::from_long(2, prec);
    // one representative per {omega, -omega} pair
    for (long m = 0; m <= cutoff; ++m) {
        for (long n = (m == 0 ? 1 : -cutoff); n <= cutoff; ++n) {
            Complex w = tau * Real::from_long(m, prec) + Complex::from_long(n, prec);
            acc = acc + (z - w).pow_si(-2) + (z + w).pow_si(-2) - two * w.pow_si(-2);
        }
    }
    return acc;
}

std::vector<std::array<long, 3>> reduced_forms(long d) {
    if (d >= 0 || (d % 4 != 0 && ((d % 4) + 4) % 4 != 1))
        throw domain_error("reduced_forms: d must be a negative discriminant");
    std::vector<std::array<long, 3>> out;
    for (long a = 1; 3 * a * a <= -d; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            long g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
            if (g != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntPolynomial class_poly_reference(long d, const PrecisionPolicy& policy) {
    policy.validate();
    long P = policy.working_bits;
    auto forms = reduced_forms(d);

    std::vector<Complex> coeff{Complex::one(P)};
    for (const auto& f : forms) {
        Real sq = Real::from_long(-d, P).sqrt();
        Complex tauq(Real::from_long(-f[1], P) / (2 * f[0]), sq / (2 * f[0]));
        Complex jq = j_invariant(tauq, policy);
        coeff.push_back(Complex::zero(P));
        for (size_t k = coeff.size() - 1; k >= 1; --k)
            coeff[k] = coeff[k - 1] - jq * coeff[k];
        coeff[0] = -jq * coeff[0];
    }

    Real quarter = Real::from_mpq(mpq_class(1, 4), 64);
    std::vector<mpz_class> c;
    c.reserve(coeff.size());
    for (const auto& v : coeff) {
        mpz_class n = v.re().round_to_mpz();
        Real err = (v.re() - Real::from_mpz(n, P)).abs();
        if (err > quarter || v.im().abs() > quarter)
            throw internal_error("class_poly_reference: coefficient not near an integer");
        c.push_back(std::move(n));
    }
    return IntPolynomial{std::move(c)};
}

Real wp_siegel_identity_residual(const CharacterVector& v1, const CharacterVector& v2,
                                 const Complex& tau, const PrecisionPolicy& policy) {
    mpq_class rp = v1.r() + v2.r(), sp = v1.s() + v2.s();
    mpq_class rm = v1.r() - v2.r(), sm = v1.s() - v2.s();
    if ((rp.get_den() == 1 && sp.get_den() == 1) || (rm.get_den() == 1 && sm.get_den() == 1))
        throw domain_error("wp_siegel_identity_residual: v1 = +-v2 mod Z^2");

    Complex lhs = wp_char(v1, tau, policy) - wp_char(v2, tau, policy);
    Complex e4 = eta(tau, policy).pow_si(4);
    Complex num = siegel_rs(rp, sp, tau, policy) * siegel_rs(rm, sm, tau, policy) * e4;
    Complex den = siegel(v1, tau, policy).pow_si(2) * siegel(v2, tau, policy).pow_si(2);
    Complex rhs = -(num / den);
    return residual_scaled(lhs, rhs);
}

std::pair<Real, Real> j_series_gap(const Complex& tau, const PrecisionPolicy& policy) {
    long P = policy.working_bits;
    Complex j = j_invariant(tau, policy);
    Complex q = eval_q(tau, policy);
    Complex series = q.inv() + Complex::from_long(744, P) + q * Real::from_long(196884, P) +
                     q.pow_si(2) * Real::from_long(21493760, P) +
                     q.pow_si(3) * Real::from_long(864299970, P);
    Real c4 = Real::from_string("20245856256", 64);
    Real qa = q.abs();
    Real bound = c4 * qa * qa * qa * qa * 2;
    return {(j - series).abs(), bound};
}

}  // namespace wunits
