#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wunits/cmfield.hpp"
#include "wunits/expr.hpp"
#include "wunits/recog.hpp"

namespace wunits {

struct CheckRecord {
    std::string name;
    std::string status;  // "pass" | "fail" | "flag"
    std::string residual;
    std::optional<std::vector<std::string>> polynomial;
};

struct Certificate {
    long d_K = 0, m = 0, n = 0;
    long precision_bits = 0;
    long ell = 0;
    std::vector<long> galois_reps;
    std::vector<CheckRecord> checks;
    std::string verdict;  // "pass" | "fail" | "flag"
    long runtime_ms = 0;

    // Deterministic pretty JSON (format version "1"); runtime_ms is the only
    // run-dependent field.
    std::string to_json() const;
};

// prod over enumerate_W(K, N) of e conjugated and evaluated at theta_K: the
// norm from K_(N) down to the Hilbert class field K_(1).
Complex rel_norm_to_K1(const ExprPtr& e, const IQField& K, long N, Evaluator& ev);
Complex rel_norm_to_K1(const ExprPtr& e, const IQField& K, long N,
                       const PrecisionPolicy& policy);

// detT for T_{jk} = sum_i a_i^{j+k} (0 <= j,k < ell) and the squared
// Vandermonde product prod_{k1<k2} (a_{k1} - a_{k2})^2.
std::pair<Complex, Complex> trace_and_vandermonde(const std::vector<Complex>& conjugates);

// Whether (N) = N O_K is a power of a single prime ideal.
bool ideal_is_prime_power(long d, long N);

// Full power-integral-basis certificate for h_{m,n}(theta_K) over
// K(j(theta_K)). A positive absolute_degree adds an "alpha_absolute" check
// that recognizes h_{m,n}(theta_K) itself over Q at that degree bound.
Certificate verify_pib(long d, long m, long n, const PrecisionPolicy& policy,
                       long absolute_degree = 0);

// Siegel-Ramachandra unit certificate for g_[0;u/N](theta_K)^{12N}.
Certificate verify_siegel_ramachandra(long d, long N, long u, const PrecisionPolicy& policy);

}  // namespace wunits
