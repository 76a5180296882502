#include "wunits/expr.hpp"

#include <numeric>
#include <set>

namespace wunits {

namespace {

ExprPtr make_node(FrickeExpr e) { return std::make_shared<const FrickeExpr>(std::move(e)); }

ExprPtr make_binary(FrickeExpr::Kind k, ExprPtr a, ExprPtr b) {
    if (!a || !b) throw domain_error("expression: null operand");
    FrickeExpr e;
    e.kind = k;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make_node(std::move(e));
}

}  // namespace

ExprPtr expr_const(const mpq_class& v) {
    FrickeExpr e;
    e.kind = FrickeExpr::Kind::constant;
    e.cval = v;
    return make_node(std::move(e));
}

ExprPtr expr_fricke(const CharacterVector& v) {
    FrickeExpr e;
    e.kind = FrickeExpr::Kind::fricke_leaf;
    e.vec = v.normalize_pm();
    return make_node(std::move(e));
}

ExprPtr expr_siegel_pow(const CharacterVector& v, long ex) {
    if (ex <= 0 || ex % 2 != 0)
        throw domain_error("expr_siegel_pow: exponent must be positive and even");
    FrickeExpr e;
    e.kind = FrickeExpr::Kind::siegel_pow_leaf;
    e.vec = v.normalize_pm();
    e.pow = ex;
    return make_node(std::move(e));
}

ExprPtr expr_add(ExprPtr a, ExprPtr b) { return make_binary(FrickeExpr::Kind::add, std::move(a), std::move(b)); }
ExprPtr expr_sub(ExprPtr a, ExprPtr b) { return make_binary(FrickeExpr::Kind::sub, std::move(a), std::move(b)); }
ExprPtr expr_mul(ExprPtr a, ExprPtr b) { return make_binary(FrickeExpr::Kind::mul, std::move(a), std::move(b)); }
ExprPtr expr_div(ExprPtr a, ExprPtr b) { return make_binary(FrickeExpr::Kind::div, std::move(a), std::move(b)); }

ExprPtr conjugate_expr(const ExprPtr& e, const GL2ModN& gamma) {
    if (!e) throw domain_error("conjugate_expr: null expression");
    switch (e->kind) {
        case FrickeExpr::Kind::constant:
            return e;
        case FrickeExpr::Kind::fricke_leaf:
            return expr_fricke(act_transpose(gamma, e->vec));
        case FrickeExpr::Kind::siegel_pow_leaf:
            return expr_siegel_pow(act_transpose(gamma, e->vec), e->pow);
        default: {
            FrickeExpr out;
            out.kind = e->kind;
            out.lhs = conjugate_expr(e->lhs, gamma);
            out.rhs = conjugate_expr(e->rhs, gamma);
            return make_node(std::move(out));
        }
    }
}

ExprPtr conjugate_expr(const ExprPtr& e, long t, long N) {
    return conjugate_expr(e, GL2ModN::scalar(t, N));
}

namespace {

void collect_leaves(const ExprPtr& e, std::set<CharacterVector>& out) {
    if (!e) return;
    if (e->kind == FrickeExpr::Kind::fricke_leaf ||
        e->kind == FrickeExpr::Kind::siegel_pow_leaf)
        out.insert(e->vec);
    collect_leaves(e->lhs, out);
    collect_leaves(e->rhs, out);
}

}  // namespace

std::vector<CharacterVector> expr_leaves(const ExprPtr& e) {
    std::set<CharacterVector> s;
    collect_leaves(e, s);
    return {s.begin(), s.end()};
}

ExprPtr alpha_expr(long m, long n) {
    if (m < 2) throw domain_error("alpha_expr: m must be >= 2");
    if (n < 1) throw domain_error("alpha_expr: n must be >= 1");
    long mn = m * n;
    ExprPtr f_num = expr_fricke(CharacterVector(0, 1, mn));
    ExprPtr f_mid = expr_fricke(CharacterVector(1, 0, m));
    ExprPtr f_den = expr_fricke(CharacterVector(0, 1, m));
    return expr_div(expr_sub(f_num, f_mid), expr_sub(f_den, f_mid));
}

ExprPtr delta_expr(long m, long n, long t) {
    if (m < 2 || n < 1) throw domain_error("delta_expr: invalid modulus parameters");
    long mn = m * n;
    long tr = ((t % mn) + mn) % mn;
    if (tr == 1 || tr == mn - 1)
        throw domain_error("delta_expr: t must not be congruent to +-1 mod mn");
    if (std::gcd(tr, mn) != 1) throw domain_error("delta_expr: t must be coprime to mn");
    long tm = tr % m;
    if (tm != 1 && tm != m - 1)
        throw domain_error("delta_expr: t must be congruent to +-1 mod m");
    ExprPtr num = expr_sub(expr_fricke(CharacterVector(0, tr, mn)),
                           expr_fricke(CharacterVector(0, 1, mn)));
    ExprPtr den = expr_sub(expr_fricke(CharacterVector(0, 1, m)),
                           expr_fricke(CharacterVector(1, 0, m)));
    return expr_div(num, den);
}

Evaluator::Evaluator(Complex tau, PrecisionPolicy policy)
    : tau_(std::move(tau)), policy_(policy), fricke_prefactor_(2) {
    policy_.validate();
    if (!(tau_.im() > Real::from_long(0, 32)))
        throw domain_error("evaluator: tau must lie in the upper half-plane");
}

Complex Evaluator::leaf_value(const FrickeExpr& e) {
    PrecisionPolicy pol(policy_.working_bits + 64, policy_.guard_bits);
    if (e.kind == FrickeExpr::Kind::fricke_leaf) {
        auto it = wp_cache_.find(e.vec);
        if (it == wp_cache_.end()) {
            if (!have_prefactor_) {
                auto [g2, g3] = eisenstein_g2g3(tau_, pol);
                Complex dl = delta(tau_, pol);
                fricke_prefactor_ = g2 * g3 / dl;
                have_prefactor_ = true;
            }
            Complex val = fricke_prefactor_ * wp_char(e.vec, tau_, pol);
            it = wp_cache_.emplace(e.vec, val.round_to(policy_.working_bits)).first;
        }
        return it->second;
    }
    auto key = std::make_pair(e.vec, e.pow);
    auto it = siegel_cache_.find(key);
    if (it == siegel_cache_.end()) {
        Complex val = siegel(e.vec, tau_, pol).pow_si(e.pow);
        it = siegel_cache_.emplace(key, val.round_to(policy_.working_bits)).first;
    }
    return it->second;
}

Complex Evaluator::eval(const ExprPtr& e) {
    if (!e) throw domain_error("eval: null expression");
    const long P = policy_.working_bits;
    switch (e->kind) {
        case FrickeExpr::Kind::constant:
            return Complex(Real::from_mpq(e->cval, P), Real::from_long(0, P));
        case FrickeExpr::Kind::fricke_leaf:
        case FrickeExpr::Kind::siegel_pow_leaf:
            return leaf_value(*e);
        case FrickeExpr::Kind::add:
            return eval(e->lhs) + eval(e->rhs);
        case FrickeExpr::Kind::sub:
            return eval(e->lhs) - eval(e->rhs);
        case FrickeExpr::Kind::mul:
            return eval(e->lhs) * eval(e->rhs);
        case FrickeExpr::Kind::div: {
            Complex num = eval(e->lhs);
            Complex den = eval(e->rhs);
            Real scale = num.abs();
            if (scale < Real::from_long(1, 64)) scale = Real::from_long(1, P);
            if (den.abs() < scale.mul_2si(-(P / 2)))
                throw internal_error("expression denominator numerically indistinguishable from zero");
            return num / den;
        }
    }
    throw internal_error("eval: unreachable expression kind");
}

}  // namespace wunits
