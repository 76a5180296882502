#include "wunits/cmfield.hpp"

#include <numeric>
#include <set>

namespace wunits {

namespace {

long mod_pos(long x, long n) {
    long r = x % n;
    return r < 0 ? r + n : r;
}

bool squarefree(long v) {
    if (v < 0) v = -v;
    for (long p = 2; p * p <= v; ++p)
        if (v % (p * p) == 0) return false;
    return true;
}

bool is_fundamental(long d) {
    if (d >= 0) return false;
    long m4 = mod_pos(d, 4);
    if (m4 == 1) return squarefree(d);
    if (m4 == 0) {
        long q = d / 4;
        long qm = mod_pos(q, 4);
        return (qm == 2 || qm == 3) && squarefree(q);
    }
    return false;
}

}  // namespace

Complex IQField::theta(const PrecisionPolicy& policy) const {
    policy.validate();
    long P = policy.working_bits;
    Real re = Real::from_mpq(mpq_class(d_K, 2), P);
    Real im = Real::from_long(-d_K, P).sqrt() / 2;
    return Complex(re, im);
}

IQField make_field(long d) {
    if (d >= 0) throw domain_error("field discriminant must be negative");
    if (d == -3 || d == -4)
        throw domain_error("fields Q(sqrt(-1)) and Q(sqrt(-3)) are excluded");
    if (!is_fundamental(d))
        throw domain_error("discriminant " + std::to_string(d) + " is not fundamental");
    IQField K;
    K.d_K = d;
    K.B_K = -d;
    K.C_K = (d * d - d) / 4;
    K.h_K = class_number(d);
    return K;
}

int kronecker(long d, long p) {
    mpz_class dd(d), pp(p);
    return mpz_kronecker(dd.get_mpz_t(), pp.get_mpz_t());
}

long class_number(long d) {
    if (d >= 0 || !is_fundamental(d)) throw domain_error("class_number: d must be fundamental < 0");
    long h = 0;
    for (long a = 1; 3 * a * a <= -d; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            ++h;
        }
    }
    return h;
}

std::vector<long> prime_factors(long n) {
    if (n < 0) n = -n;
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::string> hypothesis_violations(const IQField& K, long m, long n) {
    std::vector<std::string> out;
    if (m < 2) out.push_back("parameter m = " + std::to_string(m) + " must be >= 2");
    if (n < 1) out.push_back("parameter n = " + std::to_string(n) + " must be >= 1");
    if (!out.empty()) return out;
    if (prime_factors(m).size() < 2)
        out.push_back("hypothesis (i): m = " + std::to_string(m) +
                      " has fewer than two distinct prime factors");
    for (long p : prime_factors(m * n))
        if (kronecker(K.d_K, p) != 1)
            out.push_back("hypothesis (ii): prime " + std::to_string(p) +
                          " dividing mn does not split in K (kronecker = " +
                          std::to_string(kronecker(K.d_K, p)) + ")");
    return out;
}

ModulusParams validate(const IQField& K, long m, long n) {
    auto viol = hypothesis_violations(K, m, n);
    if (!viol.empty()) {
        std::string msg = "hypothesis validation failed";
        for (const auto& v : viol) msg += "; " + v;
        throw domain_error(msg);
    }
    return ModulusParams{m, n, prime_factors(m), prime_factors(m * n)};
}

GL2ModN WElement::matrix(const IQField& K) const {
    return GL2ModN(N, t - K.B_K * s, -K.C_K * s, s, t);
}

std::vector<WElement> enumerate_W(const IQField& K, long N) {
    if (N < 2) throw domain_error("enumerate_W: N must be >= 2");
    long bk = mod_pos(K.B_K, N), ck = mod_pos(K.C_K, N);
    std::set<std::pair<long, long>> classes;
    for (long t = 0; t < N; ++t) {
        for (long s = 0; s < N; ++s) {
            long det = mod_pos(t * t % N - bk * t % N * s % N + ck * s % N * s % N, N);
            if (std::gcd(det, N) != 1) continue;
            std::pair<long, long> v{t, s}, w{mod_pos(-t, N), mod_pos(-s, N)};
            classes.insert(std::min(v, w));
        }
    }
    std::vector<WElement> out;
    out.reserve(classes.size());
    for (auto [t, s] : classes) out.push_back(WElement{t, s, N});
    return out;
}

long w_count_formula(const IQField& K, long N) {
    if (N < 2) throw domain_error("w_count_formula: N must be >= 2");
    mpq_class acc(N);
    acc *= N;
    for (long p : prime_factors(N)) {
        acc *= mpq_class(p - 1, p);
        acc *= mpq_class(p - kronecker(K.d_K, p), p);
    }
    if (N > 2) acc /= 2;
    acc.canonicalize();
    if (acc.get_den() != 1) throw internal_error("w_count_formula: non-integral count");
    return acc.get_num().get_si();
}

std::vector<long> enumerate_gal_LF(long m, long n) {
    if (m < 2) throw domain_error("enumerate_gal_LF: m must be >= 2");
    if (n < 1) throw domain_error("enumerate_gal_LF: n must be >= 1");
    long mn = m * n;
    std::set<long> reps;
    for (long t = 1; t < mn; ++t) {
        if (std::gcd(t, mn) != 1) continue;
        long tm = t % m;
        if (tm != 1 % m && tm != m - 1) continue;
        reps.insert(std::min(t, mn - t));
    }
    return {reps.begin(), reps.end()};
}

}  // namespace wunits
