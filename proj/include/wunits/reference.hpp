#pragma once

#include <array>
#include <utility>
#include <vector>

#include "wunits/bignum.hpp"
#include "wunits/modfunc.hpp"
#include "wunits/recog.hpp"

namespace wunits {

// Independent reference implementations used to cross-check the q-series
// paths. They share no series code with modfunc.

// wp(r*tau + s; [tau, 1]) by the symmetrized direct lattice sum over
// |m|, |n| <= cutoff. Converges like O(cutoff^-2): a coarse oracle for
// catching structural errors, not a precision tool.
Complex wp_lattice_sum(const mpq_class& r, const mpq_class& s, const Complex& tau, long cutoff,
                       long prec);

// Reduced primitive binary quadratic forms (a, b, c) of discriminant d < 0,
// sorted ascending.
std::vector<std::array<long, 3>> reduced_forms(long d);

// prod over reduced forms Q of (X - j(tau_Q)), tau_Q = (-b + sqrt(d))/(2a),
// expanded numerically and rounded to exact integers. Throws internal_error
// if any coefficient is farther than 1/4 from an integer.
IntPolynomial class_poly_reference(long d, const PrecisionPolicy& policy);

// Scale-normalized residual of
//   wp_{v1} - wp_{v2} = -g_{v1+v2} g_{v1-v2} eta^4 / (g_{v1}^2 g_{v2}^2)
// with the index sums taken as exact unreduced rationals. Requires
// v1 != +-v2 mod Z^2 (both sums nonintegral).
Real wp_siegel_identity_residual(const CharacterVector& v1, const CharacterVector& v2,
                                 const Complex& tau, const PrecisionPolicy& policy);

// |j(tau) - (q^-1 + 744 + 196884 q + 21493760 q^2 + 864299970 q^3)| paired
// with the dominating next-term bound 2*c4*|q|^4, c4 = 20245856256.
std::pair<Real, Real> j_series_gap(const Complex& tau, const PrecisionPolicy& policy);

}  // namespace wunits
