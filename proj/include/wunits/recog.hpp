#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wunits/bignum.hpp"

namespace wunits {

// Primitive integer polynomial, coefficients ascending, degree >= 1,
// leading coefficient > 0.
struct IntPolynomial {
    std::vector<mpz_class> c;

    static std::optional<IntPolynomial> normalized(std::vector<mpz_class> raw);

    long degree() const { return static_cast<long>(c.size()) - 1; }
    mpz_class height() const;
    Complex eval(const Complex& x) const;
    std::vector<std::string> coeff_strings() const;
    std::string to_string() const;  // human form, descending powers

    bool operator==(const IntPolynomial&) const = default;
};

struct LatticeBasis {
    std::vector<std::vector<mpz_class>> rows;
};

// Exact-rational LLL; the output generates the same lattice. If transform is
// non-null it receives the unimodular row transformation U with out = U * in.
LatticeBasis lll_reduce(const LatticeBasis& basis, const mpq_class& delta,
                        LatticeBasis* transform = nullptr);

// Determinant of a square integer matrix (fraction-free elimination); used to
// confirm |det U| = 1 on reduction transforms.
mpz_class det_exact(const LatticeBasis& basis);

// Minimal-degree integer relation for x by two-embedding lattice reduction.
// Values within 2^{-(P-G)} of zero yield X; otherwise candidates have X^k
// factors divided out (they would assert x = 0). A candidate of degree d with
// height H and residual r1 (runner-up r2) is accepted only if all of
//   (a) r1 < 2^{-(P/2)} * H * max(1,|x|)^d,
//   (b) r1 < 2^{-64 - d*bits(H)} * max(1,|x|)^d for real x, with the
//       exponent d*bits(H) weakened to (d-1)*bits(H)/2 for complex x,
//   (c) r1 < 2^{-64} * r2,
//   (d) rebuilding the lattice 128 bits coarser yields the same polynomial;
// (b) demands the relation beat the height-H pigeonhole floor (1-D for real
// values, 2-D for complex ones) by a 64-bit margin, (c) and (d) reject
// relations that an honest error budget could still fake. Returns nullopt
// when no degree passes.
std::optional<IntPolynomial> algdep(const Complex& x, long max_deg, const PrecisionPolicy& policy);

bool is_monic_integral(const IntPolynomial& p);
bool is_unit_poly(const IntPolynomial& p);

}  // namespace wunits
