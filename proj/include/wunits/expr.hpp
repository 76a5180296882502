#pragma once

#include <map>
#include <memory>
#include <vector>

#include "wunits/bignum.hpp"
#include "wunits/cmfield.hpp"
#include "wunits/modfunc.hpp"

namespace wunits {

// Rational expression tree over Fricke-value leaves f_v (and Siegel-power
// leaves g_v^e for the ramified-unit checks). Leaf vectors are stored
// +-canonical; both leaf kinds depend only on the +- class (Siegel leaves
// carry an even exponent).
struct FrickeExpr {
    enum class Kind { constant, fricke_leaf, siegel_pow_leaf, add, sub, mul, div };

    Kind kind;
    mpq_class cval;                          // constant
    CharacterVector vec{0, 1, 2};            // leaves
    long pow = 0;                            // siegel_pow_leaf exponent (even)
    std::shared_ptr<const FrickeExpr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const FrickeExpr>;

ExprPtr expr_const(const mpq_class& v);
ExprPtr expr_fricke(const CharacterVector& v);
ExprPtr expr_siegel_pow(const CharacterVector& v, long e);
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_div(ExprPtr a, ExprPtr b);

// Leaf substitution v -> transpose(gamma) * v; the Galois action on values.
ExprPtr conjugate_expr(const ExprPtr& e, const GL2ModN& gamma);
// Scalar matrix t*I_2 at level N.
ExprPtr conjugate_expr(const ExprPtr& e, long t, long N);

// Sorted distinct leaf vectors.
std::vector<CharacterVector> expr_leaves(const ExprPtr& e);

// h_{m,n} as (f_[0;1/mn] - f_[1/m;0]) / (f_[0;1/m] - f_[1/m;0]).
ExprPtr alpha_expr(long m, long n);

// alpha^{tI_2} - alpha simplified to
// (f_[0;t/mn] - f_[0;1/mn]) / (f_[0;1/m] - f_[1/m;0]); requires t != 1.
ExprPtr delta_expr(long m, long n, long t);

// Expression evaluation at a fixed (tau, policy) with per-leaf caching.
// Quotients whose denominator falls below 2^{-(P/2)}*max(1,|num|) abort.
class Evaluator {
  public:
    Evaluator(Complex tau, PrecisionPolicy policy);

    Complex eval(const ExprPtr& e);
    const Complex& tau() const { return tau_; }
    const PrecisionPolicy& policy() const { return policy_; }

  private:
    Complex leaf_value(const FrickeExpr& e);

    Complex tau_;
    PrecisionPolicy policy_;
    bool have_prefactor_ = false;
    Complex fricke_prefactor_;  // g2*g3/Delta at tau
    std::map<CharacterVector, Complex> wp_cache_;
    std::map<std::pair<CharacterVector, long>, Complex> siegel_cache_;
};

}  // namespace wunits
