#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the routines it is used to check.

#include <sqfdisc/polynomial.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

using sqfdisc::Integer;
using sqfdisc::IntPoly;
using sqfdisc::Rational;
using sqfdisc::RatPoly;

inline bool trial_division_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// prime -> exponent of |n|, by trial division.
inline std::map<std::uint64_t, unsigned> trial_division_factor(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            out[d] += 1;
            n /= d;
        }
    if (n > 1) out[n] += 1;
    return out;
}

/// No d >= 2 with d^2 | m.
inline bool squarefree_by_scan(std::int64_t m) {
    std::uint64_t a = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
    for (std::uint64_t d = 2; d * d <= a; ++d)
        if (a % (d * d) == 0) return false;
    return true;
}

/// Smallest x in [0, prod moduli) meeting every congruence, by exhaustive scan.
inline std::optional<std::int64_t> crt_by_scan(const std::vector<std::pair<std::int64_t, std::int64_t>>& system) {
    std::int64_t total = 1;
    for (auto [r, m] : system) total *= m;
    for (std::int64_t x = 0; x < total; ++x) {
        bool ok = true;
        for (auto [r, m] : system) ok = ok && ((x - r) % m + m) % m == 0;
        if (ok) return x;
    }
    return std::nullopt;
}

/// Discriminant of x^2 + b x + c.
inline Integer quadratic_discriminant(const Integer& b, const Integer& c) { return b * b - 4 * c; }

/// Discriminant of x^3 + a x^2 + b x + c through the depressed cubic t^3 + P t + Q
/// (x = t - a/3): -4 P^3 - 27 Q^2, computed over the rationals.
inline Rational cubic_discriminant(const Integer& a, const Integer& b, const Integer& c) {
    Rational A(a), B(b), C(c);
    Rational P = B - A * A / 3;
    Rational Q = 2 * A * A * A / 27 - A * B / 3 + C;
    return Rational(-4 * P * P * P - 27 * Q * Q);
}

/// Roots in [0, p) of f mod p by evaluating every residue.
inline std::vector<std::uint64_t> roots_by_scan(const IntPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < p; ++x) {
        Integer acc = 0;
        for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = (acc * x + *it) % Integer(std::to_string(p));
        if (acc == 0) out.push_back(x);
    }
    return out;
}

namespace detail {

/// Remainder of f by monic g over F_p; coefficient vectors in ascending order.
inline std::vector<std::uint64_t> remainder_mod_p(std::vector<std::uint64_t> f, const std::vector<std::uint64_t>& g,
                                                  std::uint64_t p) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = f.size(); i-- > dg;) {
        std::uint64_t lead = f[i] % p;
        if (lead == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) f[i - dg + j] = (f[i - dg + j] + (p - lead) * g[j]) % p;
    }
    f.resize(dg);
    return f;
}

}  // namespace detail

/// f irreducible mod p (leading coefficient a unit) by dividing by every monic
/// polynomial of degree 1..deg/2. Only for small p and degree.
inline bool irreducible_by_trial_division(const IntPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    Integer P(std::to_string(p));
    for (const auto& v : f.coeffs()) {
        Integer r = v % P;
        if (r < 0) r += P;
        c.push_back(r.get_ui());
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    const std::size_t n = c.size() - 1;
    for (std::size_t d = 1; 2 * d <= n; ++d) {
        std::vector<std::uint64_t> g(d + 1, 0);
        g[d] = 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < d; ++i) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t x = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = x % p;
                x /= p;
            }
            auto r = detail::remainder_mod_p(c, g, p);
            bool zero = true;
            for (auto v : r) zero = zero && v == 0;
            if (zero) return false;
        }
    }
    return true;
}

namespace detail {

using Vec = std::vector<std::uint64_t>;

inline void trim(Vec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

/// f mod g over F_p for any nonzero g.
inline Vec rem(Vec f, const Vec& g, std::uint64_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    const std::uint64_t li = inv_mod(g.back(), p);
    while (f.size() >= g.size()) {
        std::uint64_t q = f.back() * li % p;
        std::size_t shift = f.size() - g.size();
        for (std::size_t j = 0; j <= dg; ++j) f[shift + j] = (f[shift + j] + (p - q) * g[j]) % p;
        trim(f);
    }
    return f;
}

inline Vec gcd_mod_p(Vec a, Vec b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

/// Irreducibility mod p (p < 2^32, leading coefficient a unit) with
/// Berlekamp's criterion: f squarefree and the fixed space of the Frobenius
/// map on F_p[x]/(f) is one-dimensional.
inline bool irreducible_by_berlekamp(const IntPoly& fz, std::uint64_t p) {
    using detail::Vec;
    Vec f;
    Integer P(std::to_string(p));
    for (const auto& v : fz.coeffs()) {
        Integer r = v % P;
        if (r < 0) r += P;
        f.push_back(r.get_ui());
    }
    detail::trim(f);
    const std::size_t n = f.size() - 1;
    if (n == 1) return true;
    Vec df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * (i % p) % p);
    detail::trim(df);
    if (df.empty() || detail::gcd_mod_p(f, df, p).size() > 1) return false;
    // rows: x^(p i) mod f, built by multiplying by x one step at a time
    std::vector<Vec> rows;
    Vec cur{1};
    for (std::size_t i = 0; i < n; ++i) {
        Vec row = cur;
        row.resize(n, 0);
        rows.push_back(row);
        for (std::uint64_t k = 0; k < p; ++k) {
            cur.insert(cur.begin(), 0);
            cur = detail::rem(cur, f, p);
        }
    }
    // rank of (Q - I)
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = (rows[i][i] + p - 1) % p;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && rows[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(rows[piv], rows[rank]);
        std::uint64_t li = detail::inv_mod(rows[rank][col], p);
        for (auto& v : rows[rank]) v = v * li % p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            std::uint64_t m = rows[r][col];
            for (std::size_t c = 0; c < n; ++c) rows[r][c] = (rows[r][c] + (p - m) * rows[rank][c]) % p;
        }
        ++rank;
    }
    return n - rank == 1;
}

namespace detail {

inline int descartes_variations(const RatPoly& q) {
    int count = 0, last = 0;
    for (const auto& c : q.coeffs()) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

/// (1+x)^n P((lo + hi x)/(1+x)): its positive roots correspond to roots of P in (lo, hi).
inline RatPoly moebius(const RatPoly& p, const Rational& lo, const Rational& hi) {
    int n = p.degree();
    RatPoly num{lo, hi};
    RatPoly den{Rational(1), Rational(1)};
    RatPoly out;
    for (int i = 0; i <= n; ++i) {
        RatPoly term = RatPoly::constant(p.coeff(i));
        for (int k = 0; k < i; ++k) term *= num;
        for (int k = i; k < n; ++k) term *= den;
        out += term;
    }
    return out;
}

inline int isolate(const RatPoly& p, const Rational& lo, const Rational& hi, int depth) {
    int v = descartes_variations(moebius(p, lo, hi));
    if (v <= 1) return v;
    if (depth > 200) throw std::runtime_error("bisection did not terminate (input not squarefree?)");
    Rational mid = (lo + hi) / 2;
    int at_mid = p(mid) == 0 ? 1 : 0;
    return isolate(p, lo, mid, depth + 1) + at_mid + isolate(p, mid, hi, depth + 1);
}

}  // namespace detail

/// Real roots of a squarefree polynomial by Descartes-rule interval bisection
/// over (-B, B) with the Cauchy bound B.
inline int bisection_real_root_count(const IntPoly& p) {
    RatPoly q;
    {
        std::vector<Rational> c;
        for (const auto& v : p.coeffs()) c.emplace_back(v);
        q = RatPoly(std::move(c));
    }
    Rational bound = 1;
    for (const auto& c : q.coeffs()) {
        Rational r = abs(c / q.lead());
        if (r + 1 > bound) bound = r + 1;
    }
    return detail::isolate(q, Rational(-bound), bound, 0);
}

/// #{x in [0, p^2) : prod (c_i x + d_i) not divisible by p^2}, directly.
inline std::uint64_t nonvanishing_by_scan(const std::vector<std::pair<long, long>>& forms, std::uint64_t p) {
    const long m = static_cast<long>(p * p);
    std::uint64_t good = 0;
    for (long x = 0; x < m; ++x) {
        Integer acc = 1;
        for (const auto& [c, d] : forms) acc *= Integer(c) * x + d;
        if (acc % m != 0) ++good;
    }
    return good;
}

/// Pairs (x, y) in [0, p^2)^2, not both divisible by p, with
/// prod (c_i x + d_i y^n) not divisible by p^2.
inline std::uint64_t coprime_pairs_by_scan(const std::vector<std::pair<long, long>>& forms, int n, std::uint64_t p) {
    const long m = static_cast<long>(p * p);
    const long pl = static_cast<long>(p);
    std::uint64_t good = 0;
    for (long y = 0; y < m; ++y) {
        Integer yn = 1;
        for (int k = 0; k < n; ++k) yn *= y;
        for (long x = 0; x < m; ++x) {
            if (x % pl == 0 && y % pl == 0) continue;
            Integer acc = 1;
            for (const auto& [c, d] : forms) acc *= Integer(c) * x + Integer(d) * yn;
            if (acc % m != 0) ++good;
        }
    }
    return good;
}

}  // namespace oracle
