#include "wunits/selftest.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "wunits/cmfield.hpp"
#include "wunits/modfunc.hpp"
#include "wunits/recog.hpp"
#include "wunits/reference.hpp"

namespace wunits {

namespace {

constexpr unsigned long long kSeed = 0x5745494552535452ull;

// Uniform draws via raw engine output; std::uniform_*_distribution is not
// pinned across standard libraries.
double unit_interval(std::mt19937_64& rng) {
    return double(rng() >> 11) * (1.0 / 9007199254740992.0);
}

long draw_mod(std::mt19937_64& rng, long k) { return long(rng() % (unsigned long long)k); }

Complex random_tau(std::mt19937_64& rng, long prec) {
    double re = unit_interval(rng) - 0.5;
    double im = 0.5 + 4.5 * unit_interval(rng);
    return Complex(Real::from_double(re, prec), Real::from_double(im, prec));
}

std::string sci(const Real& x) { return x.to_sci(3); }

SuiteResult suite_delta_eta(const PrecisionPolicy& policy) {
    long P = policy.working_bits, G = policy.guard_bits;
    std::mt19937_64 rng(kSeed ^ 1);
    Real worst(P);
    for (int k = 0; k < 8; ++k) {
        Complex tau = random_tau(rng, P);
        Real r = residual_scaled(delta(tau, policy), eta(tau, policy).pow_si(24));
        if (r > worst) worst = r;
    }
    bool ok = worst < Real::pow2(-(P - G), 64);
    std::ostringstream os;
    os << "discriminant vs eta^24 at 8 points: max residual " << sci(worst) << " (tol 2^-"
       << (P - G) << ")";
    return {"delta_eta", ok, os.str()};
}

SuiteResult suite_wtog(const PrecisionPolicy& policy) {
    long P = policy.working_bits, G = policy.guard_bits;
    std::vector<CharacterVector> vs;
    for (long N = 2; N <= 6; ++N)
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b)
                if (auto v = CharacterVector::reduced(a, b, N)) {
                    if (std::find(vs.begin(), vs.end(), *v) == vs.end()) vs.push_back(*v);
                }
    std::sort(vs.begin(), vs.end());

    PrecisionPolicy pol = policy;
    std::vector<Complex> taus = {
        Complex(Real::from_double(0.21, P), Real::from_double(0.9, P)),
        Complex(Real::from_double(-0.37, P), Real::from_double(1.45, P))};
    Real worst(P);
    long pairs = 0;
    for (size_t i = 0; i < vs.size() && pairs < 12; ++i) {
        for (size_t j = i + 1; j < vs.size() && pairs < 12; ++j) {
            mpq_class rp = vs[i].r() + vs[j].r(), sp = vs[i].s() + vs[j].s();
            mpq_class rm = vs[i].r() - vs[j].r(), sm = vs[i].s() - vs[j].s();
            if (rp.get_den() == 1 && sp.get_den() == 1) continue;
            if (rm.get_den() == 1 && sm.get_den() == 1) continue;
            ++pairs;
            for (const Complex& tau : taus) {
                Real r = wp_siegel_identity_residual(vs[i], vs[j], tau, pol);
                if (r > worst) worst = r;
            }
        }
    }
    bool ok = pairs == 12 && worst < Real::pow2(-(P - G), 64);
    std::ostringstream os;
    os << "wp-difference vs Siegel-product identity, " << pairs
       << " vector pairs x 2 points: max residual " << sci(worst) << " (tol 2^-" << (P - G) << ")";
    return {"wtog", ok, os.str()};
}

SuiteResult suite_pm(const PrecisionPolicy& policy) {
    long P = policy.working_bits, G = policy.guard_bits;
    std::mt19937_64 rng(kSeed ^ 2);
    Complex tau(Real::from_double(0.13, P), Real::from_double(1.2, P));
    Real worst_wp(P), worst_g(P), worst_f(P);
    int done = 0;
    while (done < 50) {
        long N = 2 + draw_mod(rng, 23);
        auto v = CharacterVector::reduced(draw_mod(rng, N), draw_mod(rng, N), N);
        if (!v) continue;
        ++done;
        CharacterVector w = v->negated();
        Real rw = residual_scaled(wp_char(*v, tau, policy), wp_char(w, tau, policy));
        Real rf = residual_scaled(fricke(*v, tau, policy), fricke(w, tau, policy));
        long e = 12 * v->denominator();
        Real rg = residual_scaled(siegel(*v, tau, policy).pow_si(e),
                                  siegel(w, tau, policy).pow_si(e));
        if (rw > worst_wp) worst_wp = rw;
        if (rf > worst_f) worst_f = rf;
        if (rg > worst_g) worst_g = rg;
    }
    bool ok = worst_wp < Real::pow2(-(P - G), 64) && worst_f < Real::pow2(-(P - G), 64) &&
              worst_g < Real::pow2(-(P - G) + 16, 64);
    std::ostringstream os;
    os << "sign invariance at 50 vectors (M <= 24): wp " << sci(worst_wp) << ", fricke "
       << sci(worst_f) << ", siegel^12M " << sci(worst_g);
    return {"pm", ok, os.str()};
}

SuiteResult suite_jseries(const PrecisionPolicy& policy) {
    bool ok = true;
    std::ostringstream os;
    os << "j vs q^-1 + 744 + 196884q + 21493760q^2 + 864299970q^3:";
    for (long t : {4L, 5L}) {
        Complex tau(Real(policy.working_bits), Real::from_long(t, policy.working_bits));
        auto [gap, bound] = j_series_gap(tau, policy);
        ok = ok && gap <= bound;
        os << " tau=" << t << "i gap " << sci(gap) << " bound " << sci(bound) << ";";
    }
    return {"jseries", ok, os.str()};
}

SuiteResult suite_wp(const PrecisionPolicy&) {
    PrecisionPolicy pol{128, 32};
    struct Case {
        CharacterVector v;
        double re, im;
    };
    std::vector<Case> cases = {{CharacterVector(3, 4, 12), 0.3, 1.1},
                               {CharacterVector(5, 2, 10), -0.2, 0.8},
                               {CharacterVector(1, 5, 6), 0.1, 1.7}};
    Real worst(128);
    for (const auto& c : cases) {
        Complex tau(Real::from_double(c.re, 128), Real::from_double(c.im, 128));
        Complex direct = wp_lattice_sum(c.v.r(), c.v.s(), tau, 400, 128);
        Complex series = wp_char(c.v, tau, pol);
        Real rel = (series - direct).abs() / direct.abs();
        if (rel > worst) worst = rel;
    }
    bool ok = worst < Real::from_double(5e-3, 64);
    std::ostringstream os;
    os << "q-series wp vs direct lattice sum (cutoff 400) at 3 points: max rel err " << sci(worst)
       << " (tol 5e-3)";
    return {"wp", ok, os.str()};
}

SuiteResult suite_wcount(const PrecisionPolicy&) {
    IQField K = make_field(-23);
    bool ok = true;
    std::ostringstream os;
    for (long N = 2; N <= 60; ++N) {
        long got = (long)enumerate_W(K, N).size();
        long want = w_count_formula(K, N);
        if (got != want) {
            ok = false;
            os << " N=" << N << " |W|=" << got << " formula=" << want << ";";
        }
    }
    auto check_lf = [&](long m, long n, std::vector<long> want) {
        auto got = enumerate_gal_LF(m, n);
        if (got != want) {
            ok = false;
            os << " gal(" << m << "," << n << ") mismatch;";
        }
    };
    check_lf(6, 1, {1});
    check_lf(6, 2, {1, 5});
    check_lf(6, 4, {1, 5, 7, 11});
    check_lf(10, 3, {1, 11});
    std::string detail = ok ? "|W| matches index formula for N = 2..60 (d = -23); "
                              "Galois generators match at (6,1), (6,2), (6,4), (10,3)"
                            : "mismatches:" + os.str();
    return {"wcount", ok, detail};
}

SuiteResult suite_algdep(const PrecisionPolicy& policy) {
    long P = policy.working_bits;
    bool ok = true;
    std::ostringstream os;
    auto expect = [&](const Complex& x, long deg, const char* want, const char* label) {
        auto p = algdep(x, deg, policy);
        std::string got = p ? p->to_string() : "none";
        if (got != want) {
            ok = false;
            os << " " << label << ": got " << got << " want " << want << ";";
        }
    };
    Complex sqrt2(Real::from_long(2, P).sqrt(), Real(P));
    expect(sqrt2, 4, "X^2 - 2", "sqrt2");
    Complex phi((Real::from_long(5, P).sqrt() + 1) / 2, Real(P));
    expect(phi, 4, "X^2 - X - 1", "phi");
    expect(Complex(Real(P), Real::from_long(1, P)), 4, "X^2 + 1", "i");
    expect(Complex::from_long(1728, P), 4, "X - 1728", "1728");
    expect(Complex(Real::pi(P), Real(P)), 6, "none", "pi");
    std::string detail = ok ? "recognized sqrt2, phi, i, 1728; rejected pi (degree <= 6)"
                            : "failures:" + os.str();
    return {"algdep", ok, detail};
}

}  // namespace

std::vector<std::string> selftest_suite_names() {
    return {"delta_eta", "wtog", "pm", "jseries", "wp", "wcount", "algdep"};
}

std::vector<SuiteResult> run_selftests(const std::vector<std::string>& suites,
                                       const PrecisionPolicy& policy) {
    policy.validate();
    auto known = selftest_suite_names();
    for (const auto& s : suites)
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw domain_error("unknown selftest suite: " + s);
    auto wanted = [&](const char* name) {
        return suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end();
    };
    std::vector<SuiteResult> out;
    if (wanted("delta_eta")) out.push_back(suite_delta_eta(policy));
    if (wanted("wtog")) out.push_back(suite_wtog(policy));
    if (wanted("pm")) out.push_back(suite_pm(policy));
    if (wanted("jseries")) out.push_back(suite_jseries(policy));
    if (wanted("wp")) out.push_back(suite_wp(policy));
    if (wanted("wcount")) out.push_back(suite_wcount(policy));
    if (wanted("algdep")) out.push_back(suite_algdep(policy));
    return out;
}

}  // namespace wunits
