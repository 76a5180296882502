#pragma once

#include <string>
#include <vector>

#include "wunits/bignum.hpp"
#include "wunits/modfunc.hpp"

namespace wunits {

// Imaginary quadratic field K = Q(sqrt(d_K)), d_K a negative fundamental
// discriminant other than -3 and -4.
struct IQField {
    long d_K;
    long B_K;  // -d_K
    long C_K;  // (d_K^2 - d_K)/4
    long h_K;

    // theta_K = (d_K + sqrt(d_K))/2, the root of X^2 + B_K X + C_K in the
    // upper half-plane.
    Complex theta(const PrecisionPolicy& policy) const;
};

IQField make_field(long d);

// Kronecker symbol (d|p): +1 split, 0 ramified, -1 inert for p prime.
int kronecker(long d, long p);

// Class number by enumeration of reduced binary quadratic forms.
long class_number(long d);

// Distinct prime factors, ascending.
std::vector<long> prime_factors(long n);

struct ModulusParams {
    long m, n;
    std::vector<long> m_primes;
    std::vector<long> mn_primes;
};

// Violations of the two admissibility hypotheses ((i) m has at least two distinct
// prime factors, (ii) every prime dividing mn splits in K); empty when valid.
std::vector<std::string> hypothesis_violations(const IQField& K, long m, long n);

// Throws domain_error listing every violated hypothesis.
ModulusParams validate(const IQField& K, long m, long n);

// Class of (t,s) mod +-1 with det(t^2 - B_K t s + C_K s^2) coprime to N;
// stored as the lexicographically smaller of (t,s) and (-t,-s) mod N.
struct WElement {
    long t, s, N;
    GL2ModN matrix(const IQField& K) const;  // [[t - B_K s, -C_K s], [s, t]]
    bool operator==(const WElement&) const = default;
};

std::vector<WElement> enumerate_W(const IQField& K, long N);

// N^2 prod_{p|N} (1 - 1/p)(1 - (d_K|p)/p), halved when -I != I mod N.
long w_count_formula(const IQField& K, long N);

// Representatives t of Gal(K_(mn)/K(h_{m,n}(theta_K))): t in (Z/mn)^* with
// t = +-1 mod m, one per {t,-t} class, sorted ascending.
std::vector<long> enumerate_gal_LF(long m, long n);

}  // namespace wunits
