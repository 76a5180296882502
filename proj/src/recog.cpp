#include "wunits/recog.hpp"

#include <algorithm>

namespace wunits {

namespace {

constexpr long kGapBits = 64;
constexpr long kRescaleBits = 128;

mpz_class round_rational(const mpq_class& v) {
    mpq_class t = v + mpq_class(1, 2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return q;
}

}  // namespace

std::optional<IntPolynomial> IntPolynomial::normalized(std::vector<mpz_class> raw) {
    while (!raw.empty() && raw.back() == 0) raw.pop_back();
    if (raw.size() < 2) return std::nullopt;
    mpz_class g = 0;
    for (const auto& v : raw) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    for (auto& v : raw) v /= g;
    if (raw.back() < 0)
        for (auto& v : raw) v = -v;
    return IntPolynomial{std::move(raw)};
}

mpz_class IntPolynomial::height() const {
    mpz_class h = 0;
    for (const auto& v : c) {
        mpz_class a = abs(v);
        if (a > h) h = a;
    }
    return h;
}

Complex IntPolynomial::eval(const Complex& x) const {
    long P = x.prec() + 32;
    Complex acc = Complex::zero(P);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + Complex(Real::from_mpz(*it, P), Real::from_long(0, P));
    return acc;
}

std::vector<std::string> IntPolynomial::coeff_strings() const {
    std::vector<std::string> out;
    out.reserve(c.size());
    for (const auto& v : c) out.push_back(v.get_str());
    return out;
}

std::string IntPolynomial::to_string() const {
    std::string s;
    for (long i = degree(); i >= 0; --i) {
        if (c[static_cast<size_t>(i)] == 0) continue;
        mpz_class v = c[static_cast<size_t>(i)];
        if (!s.empty()) {
            s += v < 0 ? " - " : " + ";
            v = abs(v);
        } else if (v < 0) {
            s += "-";
            v = abs(v);
        }
        if (i == 0 || v != 1) s += v.get_str();
        if (i >= 1) s += i == 1 ? "X" : "X^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

LatticeBasis lll_reduce(const LatticeBasis& basis, const mpq_class& delta,
                        LatticeBasis* transform) {
    if (!(delta > mpq_class(1, 4) && delta < 1))
        throw domain_error("lll_reduce: delta must lie in (1/4, 1)");
    const size_t n = basis.rows.size();
    if (n == 0) throw domain_error("lll_reduce: empty basis");
    const size_t m = basis.rows[0].size();
    for (const auto& r : basis.rows)
        if (r.size() != m) throw domain_error("lll_reduce: ragged rows");

    std::vector<std::vector<mpz_class>> b = basis.rows;
    std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;

    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n, 0));
    std::vector<mpq_class> bn(n, 0);  // squared norms of the GSO vectors
    {
        std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(m, 0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t t = 0; t < m; ++t) bs[i][t] = b[i][t];
            for (size_t j = 0; j < i; ++j) {
                mpq_class dot = 0;
                for (size_t t = 0; t < m; ++t) dot += mpq_class(b[i][t]) * bs[j][t];
                mu[i][j] = dot / bn[j];
                for (size_t t = 0; t < m; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
            }
            mpq_class nn = 0;
            for (size_t t = 0; t < m; ++t) nn += bs[i][t] * bs[i][t];
            if (nn == 0) throw domain_error("lll_reduce: rank-deficient basis");
            bn[i] = nn;
        }
    }

    auto red = [&](size_t k, size_t l) {
        if (abs(mu[k][l]) * 2 <= 1) return;
        mpz_class q = round_rational(mu[k][l]);
        for (size_t t = 0; t < m; ++t) b[k][t] -= q * b[l][t];
        for (size_t t = 0; t < n; ++t) u[k][t] -= q * u[l][t];
        mu[k][l] -= q;
        for (size_t j = 0; j < l; ++j) mu[k][j] -= mpq_class(q) * mu[l][j];
    };

    size_t k = 1;
    while (k < n) {
        red(k, k - 1);
        if (bn[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            std::swap(b[k], b[k - 1]);
            std::swap(u[k], u[k - 1]);
            mpq_class muk = mu[k][k - 1];
            mpq_class bk = bn[k] + muk * muk * bn[k - 1];
            mu[k][k - 1] = muk * bn[k - 1] / bk;
            bn[k] = bn[k - 1] * bn[k] / bk;
            bn[k - 1] = bk;
            for (size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            for (size_t i = k + 1; i < n; ++i) {
                mpq_class t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - muk * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = k > 1 ? k - 1 : 1;
        } else {
            for (size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }

    if (transform) transform->rows = std::move(u);
    return LatticeBasis{std::move(b)};
}

mpz_class det_exact(const LatticeBasis& basis) {
    const size_t n = basis.rows.size();
    for (const auto& r : basis.rows)
        if (r.size() != n) throw domain_error("det_exact: matrix must be square");
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = basis.rows[i][j];
    mpq_class det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0) continue;
            mpq_class f = a[i][col] / a[col][col];
            for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    det.canonicalize();
    if (det.get_den() != 1) throw internal_error("det_exact: non-integral determinant");
    return det.get_num();
}

namespace {

struct RelCandidate {
    Real residual;
    std::vector<mpz_class> vec;  // content- and sign-normalized, ascending
};

struct PassResult {
    Real r1, r2;
    IntPolynomial poly;
};

// One lattice pass at the given column scale: best degree >= 1 candidate with
// its residual and the runner-up residual. X^k factors are divided out of
// every candidate (they assert x = 0, and algdep only reaches here for x
// certified nonzero) with the residual recomputed. Degree-0 rows still rank
// (their residual |c0| >= 1 is the honest "nothing found" signal for the gap
// gate) but are never returned.
std::optional<PassResult> lattice_pass(const Complex& x, long d, long scale_bits) {
    long wp = x.prec() + 32;
    std::vector<Complex> pw;
    pw.reserve(static_cast<size_t>(d) + 1);
    pw.push_back(Complex::one(wp));
    for (long i = 1; i <= d; ++i) pw.push_back(pw.back() * x);

    LatticeBasis basis;
    basis.rows.assign(static_cast<size_t>(d) + 1,
                      std::vector<mpz_class>(static_cast<size_t>(d) + 3, 0));
    for (long i = 0; i <= d; ++i) {
        auto& row = basis.rows[static_cast<size_t>(i)];
        row[static_cast<size_t>(i)] = 1;
        row[static_cast<size_t>(d) + 1] = pw[static_cast<size_t>(i)].re().mul_2si(scale_bits).round_to_mpz();
        row[static_cast<size_t>(d) + 2] = pw[static_cast<size_t>(i)].im().mul_2si(scale_bits).round_to_mpz();
    }

    LatticeBasis red = lll_reduce(basis, mpq_class(99, 100));

    std::vector<RelCandidate> cands;
    for (const auto& row : red.rows) {
        std::vector<mpz_class> coeffs(row.begin(), row.begin() + d + 1);
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
        size_t lead = 0;
        while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
        coeffs.erase(coeffs.begin(), coeffs.begin() + lead);
        if (coeffs.empty()) continue;
        mpz_class g = 0;
        for (const auto& v : coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        for (auto& v : coeffs) v /= g;
        if (coeffs.back() < 0)
            for (auto& v : coeffs) v = -v;
        bool dup = false;
        for (const auto& c : cands)
            if (c.vec == coeffs) {
                dup = true;
                break;
            }
        if (dup) continue;
        Complex val = Complex::zero(wp);
        for (size_t i = 0; i < coeffs.size(); ++i)
            val = val + pw[i] * Real::from_mpz(coeffs[i], wp);
        cands.push_back(RelCandidate{val.abs(), std::move(coeffs)});
    }
    if (cands.size() < 2) return std::nullopt;
    std::sort(cands.begin(), cands.end(),
              [](const RelCandidate& a, const RelCandidate& b) { return a.residual < b.residual; });
    if (cands[0].vec.size() < 2) return std::nullopt;
    return PassResult{std::move(cands[0].residual), std::move(cands[1].residual),
                      IntPolynomial{std::move(cands[0].vec)}};
}

}  // namespace

std::optional<IntPolynomial> algdep(const Complex& x, long max_deg,
                                    const PrecisionPolicy& policy) {
    policy.validate();
    if (max_deg < 1) throw domain_error("algdep: max_deg must be >= 1");
    const long P = policy.working_bits;
    const long G = policy.guard_bits;
    if (P < 32 * max_deg)
        throw domain_error("algdep: working precision below 32 bits per degree");

    Real ax = x.abs();
    if (!(ax > Real::pow2(-(P - G), 64))) return IntPolynomial{{0, 1}};
    Real axm = ax < Real::from_long(1, 64) ? Real::from_long(1, ax.prec()) : ax;
    bool real_like = !(x.im().abs() > Real::pow2(-(P / 2), 64) * axm);
    long scale_hi = P - G;
    long scale_lo = std::max(scale_hi - kRescaleBits, 64L);

    for (long d = 1; d <= max_deg; ++d) {
        auto hi = lattice_pass(x, d, scale_hi);
        if (!hi) continue;
        long deg = hi->poly.degree();
        mpz_class h = hi->poly.height();
        long hbits = static_cast<long>(mpz_sizeinbase(h.get_mpz_t(), 2));

        Real xpow = Real::from_long(1, axm.prec());
        for (long i = 0; i < deg; ++i) xpow = xpow * axm;

        Real height_bound = Real::pow2(-(P / 2), 64) * Real::from_mpz(h, hbits + 8) * xpow;
        long floor_shift = real_like ? (deg + 1) * hbits : ((deg - 1) * hbits + 1) / 2;
        Real pigeonhole = Real::pow2(-kGapBits - floor_shift, 64) * xpow;
        if (!(hi->r1 < height_bound)) continue;
        if (!(hi->r1 < pigeonhole)) continue;
        if (!(hi->r1 < Real::pow2(-kGapBits, 64) * hi->r2)) continue;

        auto lo = lattice_pass(x, d, scale_lo);
        if (!lo || !(lo->poly == hi->poly)) continue;
        return hi->poly;
    }
    return std::nullopt;
}

bool is_monic_integral(const IntPolynomial& p) { return p.c.back() == 1; }

bool is_unit_poly(const IntPolynomial& p) {
    return is_monic_integral(p) && abs(p.c.front()) == 1;
}

}  // namespace wunits
