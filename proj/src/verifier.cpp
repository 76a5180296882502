#include "wunits/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>

#include "json.hpp"

namespace wunits {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* kZeroResidual = "0.00e+00";

struct UnitRecognition {
    bool ok;
    std::string residual;
    std::optional<std::vector<std::string>> polynomial;
};

// Recognition of nv at degree <= max_deg, then re-verification of the
// recognized polynomial against nv2_fn(), an independent evaluation of the
// same quantity at twice the precision (deferred: it only runs when
// recognition produced a candidate).
UnitRecognition recognize_unit_value(const Complex& nv, const std::function<Complex()>& nv2_fn,
                                     long max_deg, const PrecisionPolicy& pol,
                                     const PrecisionPolicy& pol2) {
    auto p = algdep(nv, max_deg, pol);
    if (!p) return {false, kZeroResidual, std::nullopt};

    Complex nv2 = nv2_fn();
    Real rr = p->eval(nv2).abs();
    long p2 = pol2.working_bits;
    mpz_class h = p->height();
    long hbits = static_cast<long>(mpz_sizeinbase(h.get_mpz_t(), 2));
    Real ax = nv2.abs();
    Real axm = ax < Real::from_long(1, 64) ? Real::from_long(1, 64) : ax;
    Real xpow = Real::from_long(1, axm.prec());
    for (long i = 0; i < p->degree(); ++i) xpow = xpow * axm;
    Real bound = Real::pow2(-(p2 / 2), 64) * Real::from_mpz(h, hbits + 8) * xpow;

    bool ok = rr < bound && is_monic_integral(*p) && is_unit_poly(*p);
    return {ok, rr.to_sci(3), p->coeff_strings()};
}

UnitRecognition recognize_unit_norm(const ExprPtr& e, const IQField& K, long N, Evaluator& ev,
                                    Evaluator& ev2) {
    Complex nv = rel_norm_to_K1(e, K, N, ev);
    auto again = [&] { return rel_norm_to_K1(e, K, N, ev2); };
    return recognize_unit_value(nv, again, 2 * K.h_K, ev.policy(), ev2.policy());
}

std::string status_of(bool ok) { return ok ? "pass" : "fail"; }

struct CertClock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void finish(Certificate& cert, const CertClock& clock) {
    bool any_fail = false, any_flag = false;
    for (const auto& c : cert.checks) {
        if (c.status == "fail") any_fail = true;
        if (c.status == "flag") any_flag = true;
    }
    cert.verdict = any_fail ? "fail" : (any_flag ? "flag" : "pass");
    cert.runtime_ms = clock.elapsed_ms();
}

}  // namespace

std::string Certificate::to_json() const {
    ordered_json j;
    j["format_version"] = "1";
    j["inputs"]["d_K"] = d_K;
    j["inputs"]["m"] = m;
    j["inputs"]["n"] = n;
    j["inputs"]["precision_bits"] = precision_bits;
    j["ell"] = ell;
    j["galois_reps"] = galois_reps;
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json rec;
        rec["name"] = c.name;
        rec["status"] = c.status;
        rec["residual"] = c.residual;
        rec["polynomial"] = c.polynomial ? ordered_json(*c.polynomial) : ordered_json(nullptr);
        j["checks"].push_back(std::move(rec));
    }
    j["verdict"] = verdict;
    j["runtime_ms"] = runtime_ms;
    return j.dump(2) + "\n";
}

Complex rel_norm_to_K1(const ExprPtr& e, const IQField& K, long N, Evaluator& ev) {
    auto W = enumerate_W(K, N);
    Complex acc = Complex::one(ev.policy().working_bits);
    for (const auto& w : W) acc = acc * ev.eval(conjugate_expr(e, w.matrix(K)));
    return acc;
}

Complex rel_norm_to_K1(const ExprPtr& e, const IQField& K, long N,
                       const PrecisionPolicy& policy) {
    Evaluator ev(K.theta(policy), policy);
    return rel_norm_to_K1(e, K, N, ev);
}

std::pair<Complex, Complex> trace_and_vandermonde(const std::vector<Complex>& conjugates) {
    const size_t ell = conjugates.size();
    if (ell == 0) throw domain_error("trace_and_vandermonde: empty conjugate list");
    long wp = 64;
    for (const auto& a : conjugates) wp = std::max(wp, a.prec());
    wp += 64;

    std::vector<Complex> ps(2 * ell - 1, Complex::zero(wp));
    for (const auto& a : conjugates) {
        Complex pw = Complex::one(wp);
        for (size_t k = 0; k + 1 < 2 * ell; ++k) {
            ps[k] = ps[k] + pw;
            pw = pw * a;
        }
    }

    std::vector<std::vector<Complex>> t(ell, std::vector<Complex>(ell, Complex::zero(wp)));
    for (size_t j = 0; j < ell; ++j)
        for (size_t k = 0; k < ell; ++k) t[j][k] = ps[j + k];

    Complex det = Complex::one(wp);
    for (size_t col = 0; col < ell; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < ell; ++r)
            if (t[r][col].abs() > t[piv][col].abs()) piv = r;
        if (t[piv][col].is_zero()) {
            det = Complex::zero(wp);
            break;
        }
        if (piv != col) {
            std::swap(t[piv], t[col]);
            det = -det;
        }
        det = det * t[col][col];
        for (size_t r = col + 1; r < ell; ++r) {
            Complex f = t[r][col] / t[col][col];
            for (size_t c2 = col; c2 < ell; ++c2) t[r][c2] = t[r][c2] - f * t[col][c2];
        }
    }

    Complex vprod = Complex::one(wp);
    for (size_t i = 0; i < ell; ++i)
        for (size_t j = i + 1; j < ell; ++j) {
            Complex d = conjugates[i] - conjugates[j];
            vprod = vprod * d * d;
        }
    return {det, vprod};
}

bool ideal_is_prime_power(long d, long N) {
    if (N < 2) throw domain_error("ideal_is_prime_power: N must be >= 2");
    auto f = prime_factors(N);
    if (f.size() != 1) return false;
    return kronecker(d, f[0]) != 1;
}

Certificate verify_pib(long d, long m, long n, const PrecisionPolicy& policy,
                       long absolute_degree) {
    policy.validate();
    CertClock clock;
    IQField K = make_field(d);
    const long P = policy.working_bits;
    if (m < 2) throw domain_error("verify_pib: m must be >= 2");
    if (n < 1) throw domain_error("verify_pib: n must be >= 1");

    Certificate cert;
    cert.d_K = d;
    cert.m = m;
    cert.n = n;
    cert.precision_bits = P;

    auto viol = hypothesis_violations(K, m, n);
    bool hyp_i = true, hyp_ii = true;
    for (const auto& v : viol) {
        if (v.find("hypothesis (i):") != std::string::npos) hyp_i = false;
        if (v.find("hypothesis (ii):") != std::string::npos) hyp_ii = false;
    }
    cert.checks.push_back({"hypothesis_i", status_of(hyp_i), kZeroResidual, std::nullopt});
    cert.checks.push_back({"hypothesis_ii", status_of(hyp_ii), kZeroResidual, std::nullopt});
    if (!viol.empty()) {
        finish(cert, clock);
        return cert;
    }

    long mn = m * n;
    auto reps = enumerate_gal_LF(m, n);
    cert.ell = static_cast<long>(reps.size());
    cert.galois_reps = reps;

    Complex theta = K.theta(policy);
    PrecisionPolicy policy2(2 * P, policy.guard_bits);
    Evaluator ev(theta, policy);
    Evaluator ev2(K.theta(policy2), policy2);
    ExprPtr alpha = alpha_expr(m, n);

    // (2) expression evaluation agrees with the independent dual-path value
    try {
        Complex a_expr = ev.eval(alpha);
        Complex a_dual = weierstrass_unit(m, n, theta, policy);
        Real res = residual_scaled(a_expr, a_dual);
        bool ok = res < Real::pow2(-(P / 2), 64);
        cert.checks.push_back({"alpha_dual_path", status_of(ok), res.to_sci(3), std::nullopt});
    } catch (const internal_error&) {
        cert.checks.push_back({"alpha_dual_path", "flag", kZeroResidual, std::nullopt});
    }

    // (3) conjugates pairwise distinct
    std::vector<Complex> conj;
    conj.reserve(reps.size());
    for (long t : reps) conj.push_back(ev.eval(conjugate_expr(alpha, t, mn)));
    if (conj.size() < 2) {
        cert.checks.push_back({"conjugate_separation", "pass", kZeroResidual, std::nullopt});
    } else {
        Real sep(64);
        bool first = true;
        Real scale = Real::from_long(1, 64);
        for (size_t i = 0; i < conj.size(); ++i) {
            Real a = conj[i].abs();
            if (a > scale) scale = a;
            for (size_t j = i + 1; j < conj.size(); ++j) {
                Real dd = (conj[i] - conj[j]).abs();
                if (first || dd < sep) sep = dd;
                first = false;
            }
        }
        bool ok = sep > scale.mul_2si(-(P / 4));
        cert.checks.push_back(
            {"conjugate_separation", ok ? "pass" : "flag", sep.to_sci(3), std::nullopt});
    }

    // (4) alpha is a unit: norm down to K_(1) has a monic minimal polynomial
    // with unit constant term
    try {
        UnitRecognition r = recognize_unit_norm(alpha, K, mn, ev, ev2);
        cert.checks.push_back({"alpha_unit", status_of(r.ok), r.residual, r.polynomial});
    } catch (const internal_error&) {
        cert.checks.push_back({"alpha_unit", "flag", kZeroResidual, std::nullopt});
    }

    // optional: recognize alpha itself over Q at a caller-supplied degree
    if (absolute_degree > 0) {
        try {
            Complex av = ev.eval(alpha);
            auto again = [&] { return ev2.eval(alpha); };
            UnitRecognition r =
                recognize_unit_value(av, again, absolute_degree, ev.policy(), ev2.policy());
            cert.checks.push_back({"alpha_absolute", status_of(r.ok), r.residual, r.polynomial});
        } catch (const internal_error&) {
            cert.checks.push_back({"alpha_absolute", "flag", kZeroResidual, std::nullopt});
        }
    }

    // (5) every conjugate difference is a unit
    for (size_t i = 0; i < reps.size(); ++i) {
        for (size_t j = i + 1; j < reps.size(); ++j) {
            std::string name =
                "diff_unit_t" + std::to_string(reps[i]) + "_t" + std::to_string(reps[j]);
            try {
                ExprPtr diff = expr_sub(conjugate_expr(alpha, reps[i], mn),
                                        conjugate_expr(alpha, reps[j], mn));
                UnitRecognition r = recognize_unit_norm(diff, K, mn, ev, ev2);
                cert.checks.push_back({name, status_of(r.ok), r.residual, r.polynomial});
            } catch (const internal_error&) {
                cert.checks.push_back({name, "flag", kZeroResidual, std::nullopt});
            }
        }
    }

    // (6) det T equals the squared Vandermonde product
    try {
        auto [dt, vp] = trace_and_vandermonde(conj);
        Real res = residual_scaled(dt, vp);
        bool ok = res < Real::pow2(-(P / 2), 64);
        cert.checks.push_back({"trace_vandermonde", status_of(ok), res.to_sci(3), std::nullopt});
    } catch (const internal_error&) {
        cert.checks.push_back({"trace_vandermonde", "flag", kZeroResidual, std::nullopt});
    }

    // (7) each delta_t against the closed Siegel-product form
    for (long t : reps) {
        if (t == 1) continue;
        std::string name = "delta_cross_t" + std::to_string(t);
        try {
            Complex lhs = ev.eval(delta_expr(m, n, t));
            auto g = [&](const mpq_class& rr, const mpq_class& ss) {
                return siegel_rs(rr, ss, theta, policy);
            };
            mpq_class om(1, m), omn(1, mn), tmn(t, mn);
            mpq_class tp(t + 1, mn), tm(t - 1, mn);
            tp.canonicalize();
            tm.canonicalize();
            Complex num = g(0, tp) * g(0, tm) * g(0, om).pow_si(2) * g(om, 0).pow_si(2);
            Complex den = g(om, om) * g(-om, om) * g(0, tmn).pow_si(2) * g(0, omn).pow_si(2);
            Complex rhs = num / den;
            Real res = residual_scaled(lhs, rhs);
            bool ok = res < Real::pow2(-(P / 2), 64);
            cert.checks.push_back({name, status_of(ok), res.to_sci(3), std::nullopt});
        } catch (const internal_error&) {
            cert.checks.push_back({name, "flag", kZeroResidual, std::nullopt});
        }
    }

    finish(cert, clock);
    return cert;
}

Certificate verify_siegel_ramachandra(long d, long N, long u, const PrecisionPolicy& policy) {
    policy.validate();
    CertClock clock;
    IQField K = make_field(d);
    const long P = policy.working_bits;
    if (N < 2) throw domain_error("verify_siegel_ramachandra: N must be >= 2");
    long ur = ((u % N) + N) % N;
    if (std::gcd(ur, N) != 1)
        throw domain_error("verify_siegel_ramachandra: u must be coprime to N");

    Certificate cert;
    cert.d_K = d;
    cert.m = N;
    cert.n = ur;
    cert.precision_bits = P;
    cert.ell = 1;
    cert.galois_reps = {ur};

    bool modulus_ok = !ideal_is_prime_power(d, N);
    cert.checks.push_back(
        {"modulus_not_prime_ideal_power", status_of(modulus_ok), kZeroResidual, std::nullopt});
    if (!modulus_ok) {
        finish(cert, clock);
        return cert;
    }

    PrecisionPolicy policy2(2 * P, policy.guard_bits);
    Evaluator ev(K.theta(policy), policy);
    Evaluator ev2(K.theta(policy2), policy2);
    ExprPtr leaf = expr_siegel_pow(CharacterVector(0, ur, N), 12 * N);

    try {
        UnitRecognition r = recognize_unit_norm(leaf, K, N, ev, ev2);
        cert.checks.push_back({"norm_unit", status_of(r.ok), r.residual, r.polynomial});
    } catch (const internal_error&) {
        cert.checks.push_back({"norm_unit", "flag", kZeroResidual, std::nullopt});
    }

    try {
        ExprPtr base = expr_siegel_pow(CharacterVector(0, 1, N), 12 * N);
        Complex lhs = ev.eval(leaf);
        Complex rhs = ev.eval(conjugate_expr(base, ur, N));
        Real res = residual_scaled(lhs, rhs);
        bool ok = res < Real::pow2(-(P / 2), 64);
        cert.checks.push_back({"scalar_conjugacy", status_of(ok), res.to_sci(3), std::nullopt});
    } catch (const internal_error&) {
        cert.checks.push_back({"scalar_conjugacy", "flag", kZeroResidual, std::nullopt});
    }

    finish(cert, clock);
    return cert;
}

}  // namespace wunits
