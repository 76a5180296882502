#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wunits/bignum.hpp"

namespace wunits {

// [r;s] = [a/N; b/N] in (1/N)Z^2 \ Z^2, stored canonically: 0 <= a,b < N and
// gcd(a,b,N) = 1, so N is the primitive denominator M.
struct CharacterVector {
    long a = 0, b = 1, N = 2;

    CharacterVector(long a_, long b_, long N_);
    static std::optional<CharacterVector> reduced(long a_, long b_, long N_);

    mpq_class r() const;
    mpq_class s() const;
    long denominator() const { return N; }

    CharacterVector negated() const;
    // The lexicographically smaller of v and -v (mod Z^2).
    CharacterVector normalize_pm() const;

    bool operator==(const CharacterVector& o) const = default;
    auto operator<=>(const CharacterVector& o) const = default;
};

// v1 + sign*v2 reduced mod Z^2; nullopt if the result is integral.
std::optional<CharacterVector> cv_combine(const CharacterVector& v1, const CharacterVector& v2,
                                          int sign);

struct GL2ModN {
    long N;
    long e00, e01, e10, e11;

    GL2ModN(long N_, long a, long b, long c, long d);
    static GL2ModN identity(long N);
    static GL2ModN scalar(long t, long N);
    long det_mod() const;
};

// Canonical form of (transpose gamma) * v mod Z^2; the Galois action on
// function-value subscripts. v's denominator must divide gamma's level.
CharacterVector act_transpose(const GL2ModN& gamma, const CharacterVector& v);

// Matrix product mod the common level.
GL2ModN mat_mul(const GL2ModN& a, const GL2ModN& b);

// eta(tau) = sqrt(2*pi) * zeta_8 * q^{1/24} * prod_{n>=1} (1 - q^n)
Complex eta(const Complex& tau, const PrecisionPolicy& policy);

// (g2, g3) via the normalized weight-4/6 Eisenstein q-series.
std::pair<Complex, Complex> eisenstein_g2g3(const Complex& tau, const PrecisionPolicy& policy);

// g2^3 - 27*g3^2, computed with enough internal headroom to absorb the
// leading-term cancellation.
Complex delta(const Complex& tau, const PrecisionPolicy& policy);

// 1728*g2^3/Delta.
Complex j_invariant(const Complex& tau, const PrecisionPolicy& policy);

// wp_{[r;s]}(tau) = wp(r*tau + s; [tau, 1]) by the standard q-expansion.
Complex wp_char(const CharacterVector& v, const Complex& tau, const PrecisionPolicy& policy);

// Fricke value (g2*g3/Delta) * wp_v; computed on normalize_pm(v).
Complex fricke(const CharacterVector& v, const Complex& tau, const PrecisionPolicy& policy);

// Siegel function g_{[r;s]} for the canonical vector (0 <= r,s < 1).
Complex siegel(const CharacterVector& v, const Complex& tau, const PrecisionPolicy& policy);

// Siegel function at arbitrary exact rationals, reduced to the canonical
// range by the quasi-periodicity multiplier
//   g_{[r;s]} = (-1)^{k+j} exp(2*pi*i*(j*r0 - k*s)/2) g_{[r0;s0]},
// k = floor(r), j = floor(s).
Complex siegel_rs(const mpq_class& r, const mpq_class& s, const Complex& tau,
                  const PrecisionPolicy& policy);

// h_{m,n}: evaluates both the wp-ratio and the Siegel-product form, enforces
// their agreement within 2^{-(P/2)}, returns the Siegel-form value.
Complex weierstrass_unit(long m, long n, const Complex& tau, const PrecisionPolicy& policy);

}  // namespace wunits
