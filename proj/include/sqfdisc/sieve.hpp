#pragma once

// Local squarefree densities of products of linear forms, truncated Euler
// products with an explicit tail bound, and Brakenhoff's densities for the
// discriminant of a random monic polynomial.

#include "factor.hpp"
#include "family.hpp"
#include "primes.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace sqfdisc {

enum class DensityMethod { enumeration, closed_form };

inline const char* to_string(DensityMethod m) { return m == DensityMethod::enumeration ? "enumeration" : "closed_form"; }

struct LocalDensity {
    std::uint64_t p = 0;
    Rational value;
    DensityMethod method = DensityMethod::enumeration;
    friend bool operator==(const LocalDensity&, const LocalDensity&) = default;
};

/// Univariate: A(x) = prod (c_i x + d_i), x running over residues mod p^2.
/// Bivariate: A(x, y^n) = prod (c_i x + d_i y^n) over coprime pairs, with the
/// class y = 1 mod t (primes dividing t fall back to the univariate count).
struct SieveVariant {
    bool bivariate = false;
    int n = 1;
    Integer t = 1;
    friend bool operator==(const SieveVariant&, const SieveVariant&) = default;
};

/// Enumeration is brute force below these primes; above them exceptional
/// primes use the exact residue-class count and the rest the closed form.
struct DensityConfig {
    std::uint64_t univariate_enumeration_limit = 97;
    std::uint64_t bivariate_enumeration_limit = 23;
};

namespace detail {

inline void check_sieve_system(const LinearFactorSystem& sys) {
    for (const auto& f : sys.factors)
        if (f.c == 0) throw std::invalid_argument("sieve: constant factor in the linear system");
    if (!sys.pairwise_coprime()) throw std::invalid_argument("sieve: linear system is not squarefree (repeated factor)");
}

inline bool divides(std::uint64_t p, const Integer& z) { return mpz_divisible_ui_p(z.get_mpz_t(), p) != 0; }

/// #{x mod p^2 : prod (c_i x + e_i) != 0 mod p^2}, restricted to p-adic units
/// x when units_only is set. Exact for every p, O(k log k): the residue x0 mod p
/// only matters at the roots of the unit-leading factors and at the vanishing
/// point of a p-divisible factor; everywhere else the count is uniform.
inline Integer count_nonvanishing_mod_p2(const std::vector<std::pair<Integer, Integer>>& forms, std::uint64_t pu,
                                         bool units_only = false) {
    const Integer p = from_u64(pu);
    struct Point {
        unsigned extra = 0;  // fixed-factor valuation beyond the base
        unsigned m = 0;      // unit-leading factors vanishing mod p
    };
    std::map<Integer, Point> special;
    unsigned base = 0;
    for (const auto& [c, e] : forms) {
        if (!divides(pu, c)) {
            special[mod(Integer(-e * mod_inverse(c, p)), p)].m++;
            continue;
        }
        if (!divides(pu, e)) continue;  // a unit for every x
        ++base;
        // c = p c', e = p e': valuation >= 2 exactly where c' x0 + e' = 0 mod p
        Integer c1 = c / p, e1 = e / p;
        if (divides(pu, c1)) {
            if (divides(pu, e1)) base += 1;  // >= 2 everywhere
        } else {
            special[mod(Integer(-e1 * mod_inverse(c1, p)), p)].extra++;
        }
    }
    auto lifts = [&](unsigned val, unsigned m) -> Integer {
        // surviving lifts x0 + p x1 for one residue x0
        if (val + m >= 2) return 0;
        if (m == 1) return p - 1;
        return p;
    };
    if (units_only) special.try_emplace(Integer(0));
    Integer total = 0;
    Integer generic = p - static_cast<unsigned long>(special.size());
    total += generic * lifts(base, 0);
    for (const auto& [x0, pt] : special) {
        if (units_only && x0 == 0) continue;
        total += lifts(base + pt.extra, pt.m);
    }
    return total;
}

inline std::vector<std::pair<Integer, Integer>> forms_of(const LinearFactorSystem& sys) {
    std::vector<std::pair<Integer, Integer>> out;
    for (const auto& f : sys.factors) out.emplace_back(f.c, f.d);
    return out;
}

inline std::uint64_t mulmod_small(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return mulmod64(a, b, m); }

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> reduced_forms(const LinearFactorSystem& sys, std::uint64_t m) {
    Integer M = from_u64(m);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& f : sys.factors) out.emplace_back(to_u64(mod(f.c, M)), to_u64(mod(f.d, M)));
    return out;
}

inline std::uint64_t brute_univariate(const LinearFactorSystem& sys, std::uint64_t p) {
    const std::uint64_t m = p * p;
    auto forms = reduced_forms(sys, m);
    std::uint64_t good = 0;
    for (std::uint64_t x = 0; x < m; ++x) {
        std::uint64_t acc = 1 % m;
        for (const auto& [c, d] : forms) acc = mulmod_small(acc, (mulmod_small(c, x, m) + d) % m, m);
        if (acc != 0) ++good;
    }
    return good;
}

inline std::uint64_t brute_bivariate(const LinearFactorSystem& sys, int n, std::uint64_t p) {
    const std::uint64_t m = p * p;
    auto forms = reduced_forms(sys, m);
    std::uint64_t good = 0;
    for (std::uint64_t y = 0; y < m; ++y) {
        std::uint64_t yn = powmod64(y, static_cast<std::uint64_t>(n), m);
        for (std::uint64_t x = 0; x < m; ++x) {
            if (x % p == 0 && y % p == 0) continue;
            std::uint64_t acc = 1 % m;
            for (const auto& [c, d] : forms) acc = mulmod_small(acc, (mulmod_small(c, x, m) + mulmod_small(d, yn, m)) % m, m);
            if (acc != 0) ++good;
        }
    }
    return good;
}

/// Exact coprime-pair count for A(x, y^n) mod p^2, any p. Units y reduce to
/// the univariate count by homogeneity (x -> x y^n); for p | y only p-adic
/// unit x remain and y^n = 0 mod p^2 once n >= 2.
inline Integer structured_bivariate(const LinearFactorSystem& sys, int n, std::uint64_t pu) {
    const Integer p = from_u64(pu);
    auto forms = forms_of(sys);
    Integer total = p * (p - 1) * count_nonvanishing_mod_p2(forms, pu);
    if (n >= 2) {
        std::vector<std::pair<Integer, Integer>> at_zero;
        for (const auto& [c, d] : forms) at_zero.emplace_back(c, Integer(0));
        total += p * count_nonvanishing_mod_p2(at_zero, pu, true);
        return total;
    }
    // n == 1, y = p y': unit-leading factors never vanish mod p; a p-divisible
    // factor contributes p (c' x + d y')
    std::vector<const std::pair<Integer, Integer>*> fixed;
    for (const auto& f : forms)
        if (divides(pu, f.first)) fixed.push_back(&f);
    Integer unit_x = p * (p - 1);
    if (fixed.size() >= 2) return total;
    if (fixed.empty()) return total + p * unit_x;
    const Integer c1 = fixed[0]->first / p;
    const Integer& d = fixed[0]->second;
    // pairs (x0 unit mod p, y' mod p) with c1 x0 + d y' = 0 mod p
    Integer bad_pairs;
    if (!divides(pu, c1))
        bad_pairs = divides(pu, d) ? Integer(0) : Integer(p - 1);
    else
        bad_pairs = divides(pu, d) ? Integer(p * (p - 1)) : Integer(p - 1);
    return total + p * unit_x - p * bad_pairs;
}

}  // namespace detail

/// p divides some c_i or some c_i d_j - c_j d_i: the residues killed by
/// different factors may overlap or the count per factor may change.
inline bool is_exceptional(const LinearFactorSystem& sys, std::uint64_t p) {
    for (const auto& f : sys.factors)
        if (detail::divides(p, f.c)) return true;
    for (std::size_t i = 0; i < sys.factors.size(); ++i)
        for (std::size_t j = i + 1; j < sys.factors.size(); ++j) {
            Integer r = sys.factors[i].c * sys.factors[j].d - sys.factors[j].c * sys.factors[i].d;
            if (detail::divides(p, r)) return true;
        }
    return false;
}

inline LocalDensity local_density_univariate(const LinearFactorSystem& sys, std::uint64_t p, const DensityConfig& cfg = {}) {
    detail::check_sieve_system(sys);
    if (!is_prime_u64(p)) throw std::invalid_argument("local_density: p must be prime");
    const Integer p2 = from_u64(p) * from_u64(p);
    if (p <= cfg.univariate_enumeration_limit)
        return {p, make_rational(from_u64(detail::brute_univariate(sys, p)), p2), DensityMethod::enumeration};
    if (is_exceptional(sys, p))
        return {p, make_rational(detail::count_nonvanishing_mod_p2(detail::forms_of(sys), p), p2), DensityMethod::enumeration};
    long killed = 0;
    for (const auto& f : sys.factors)
        if (!detail::divides(p, f.c)) ++killed;
    return {p, Rational(1) - make_rational(Integer(killed), p2), DensityMethod::closed_form};
}

/// Proportion of coprime residue pairs mod p^2 (there are p^4 - p^2 of them)
/// on which A(x, y^n) is not divisible by p^2; the univariate value when p | t.
inline LocalDensity local_density_bivariate(const LinearFactorSystem& sys, int n, const Integer& t, std::uint64_t p,
                                            const DensityConfig& cfg = {}) {
    detail::check_sieve_system(sys);
    if (n < 1 || t < 1) throw std::invalid_argument("local_density_bivariate: need n >= 1 and t >= 1");
    if (detail::divides(p, t)) return local_density_univariate(sys, p, cfg);
    if (!is_prime_u64(p)) throw std::invalid_argument("local_density: p must be prime");
    const Integer P = from_u64(p);
    const Integer pairs = P * P * (P * P - 1);
    if (p <= cfg.bivariate_enumeration_limit)
        return {p, make_rational(from_u64(detail::brute_bivariate(sys, n, p)), pairs), DensityMethod::enumeration};
    if (is_exceptional(sys, p))
        return {p, make_rational(detail::structured_bivariate(sys, n, p), pairs), DensityMethod::enumeration};
    // each factor removes the p(p-1) pairs with y a unit and x = -d y^n / c
    auto k = static_cast<long>(sys.factors.size());
    return {p, Rational(1) - make_rational(Integer(k), P * (P + 1)), DensityMethod::closed_form};
}

struct SieveProfile {
    LinearFactorSystem system;
    SieveVariant variant;
    std::map<std::uint64_t, LocalDensity> densities;  // every p <= cutoff, plus exceptional p above it
    std::uint64_t cutoff = 0;
    Rational tail_bound;  // k / cutoff, bounds sum over non-exceptional p > cutoff of (1 - a(p))
    Rational product_lower;
    Rational product_upper;
    bool exceptional_complete = true;  // every exceptional prime was found
};

/// Primes dividing some c_i or some c_i d_j - c_j d_i (and t in the bivariate
/// case). nullopt if one of these numbers could not be factored.
inline std::optional<std::set<std::uint64_t>> exceptional_primes(const LinearFactorSystem& sys, const Integer& t = 1,
                                                                  const FactorBudget& budget = {}) {
    std::vector<Integer> targets{t};
    for (const auto& f : sys.factors) targets.push_back(f.c);
    for (std::size_t i = 0; i < sys.factors.size(); ++i)
        for (std::size_t j = i + 1; j < sys.factors.size(); ++j)
            targets.push_back(sys.factors[i].c * sys.factors[j].d - sys.factors[j].c * sys.factors[i].d);
    std::set<std::uint64_t> out;
    for (const auto& z : targets) {
        if (z == 0) continue;
        auto f = factorize(z, budget);
        if (!f) return std::nullopt;
        for (const auto& pp : f->factors) {
            // primes beyond 2^64 would need an unreachable cutoff; keep the set honest
            if (!fits_u64(pp.prime)) return std::nullopt;
            out.insert(to_u64(pp.prime));
        }
    }
    return out;
}

/// (lower, upper) for prod_p a(p) from the stored densities:
/// upper = product of the stored values, lower = upper * (1 - k/cutoff),
/// using sum_{m > cutoff} m^-2 < 1/cutoff for the non-exceptional tail.
inline std::pair<Rational, Rational> truncated_product(const SieveProfile& profile) {
    Rational upper = 1;
    for (const auto& [p, d] : profile.densities) {
        if (d.value == 0) return {Rational(0), Rational(0)};
        upper *= d.value;
    }
    Rational factor = Rational(1) - profile.tail_bound;
    if (factor < 0) factor = 0;
    return {upper * factor, upper};
}

inline SieveProfile build_profile(const LinearFactorSystem& sys, std::uint64_t cutoff, const SieveVariant& variant = {},
                                  const DensityConfig& cfg = {}) {
    detail::check_sieve_system(sys);
    if (cutoff < 2) throw std::invalid_argument("build_profile: cutoff must be >= 2");
    SieveProfile prof{sys, variant, {}, cutoff, make_rational(Integer(static_cast<long>(sys.factors.size())), from_u64(cutoff)),
                      0, 0, true};
    auto density = [&](std::uint64_t p) {
        return variant.bivariate ? local_density_bivariate(sys, variant.n, variant.t, p, cfg)
                                 : local_density_univariate(sys, p, cfg);
    };
    for (auto p : detail::sieve_primes(static_cast<std::uint32_t>(cutoff))) prof.densities.emplace(p, density(p));
    auto extra = exceptional_primes(sys, variant.bivariate ? variant.t : Integer(1));
    if (!extra) {
        prof.exceptional_complete = false;
    } else {
        for (auto p : *extra)
            if (p > cutoff) prof.densities.emplace(p, density(p));
    }
    std::tie(prof.product_lower, prof.product_upper) = truncated_product(prof);
    return prof;
}

// --- Brakenhoff densities --------------------------------------------------

/// Probability that p^2 does not divide the discriminant of a random monic
/// degree-n polynomial.
inline Rational brakenhoff_density(int n, std::uint64_t p) {
    if (n < 2) throw std::invalid_argument("brakenhoff_density: n must be >= 2");
    if (!is_prime_u64(p)) throw std::invalid_argument("brakenhoff_density: p must be prime");
    if (p == 2) return Rational(1, 2);
    const Rational P(from_u64(p));
    if (n == 2) return 1 - 1 / (P * P);
    if (n == 3) return 1 - 2 / (P * P) + 1 / (P * P * P);
    // (-p)^{-(n-2)}
    Rational neg = pow(Rational(-P), static_cast<unsigned long>(n - 2));
    Rational tail = 1 - 1 / neg;
    return 1 - 1 / P + (P - 1) * (P - 1) * tail / (P * P * (P + 1));
}

namespace detail {

/// Discriminant of a monic integer polynomial via the Sylvester determinant of
/// (f, f'), fraction-free Bareiss elimination in 128-bit arithmetic. Callers
/// guarantee the Hadamard bound fits.
inline __int128 small_monic_discriminant(const std::vector<std::int64_t>& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    const int size = 2 * n - 1;
    std::vector<std::vector<__int128>> m(static_cast<std::size_t>(size), std::vector<__int128>(static_cast<std::size_t>(size), 0));
    for (int r = 0; r < n - 1; ++r)
        for (int j = 0; j <= n; ++j) m[r][r + j] = coeffs[n - j];
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) m[n - 1 + r][r + j] = static_cast<__int128>(n - j) * coeffs[n - j];
    __int128 prev = 1;
    int swaps = 0;
    for (int k = 0; k < size - 1; ++k) {
        if (m[k][k] == 0) {
            int piv = k + 1;
            while (piv < size && m[piv][k] == 0) ++piv;
            if (piv == size) return 0;
            std::swap(m[k], m[piv]);
            ++swaps;
        }
        for (int i = k + 1; i < size; ++i)
            for (int j = k + 1; j < size; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    __int128 res = m[size - 1][size - 1];
    if (swaps % 2) res = -res;
    // Res(f, f') = det(Sylvester); disc = (-1)^{n(n-1)/2} Res(f, f') for monic f
    if ((n * (n - 1) / 2) % 2) res = -res;
    return res;
}

inline bool small_discriminant_fits(int n, std::uint64_t bound) {
    // Hadamard: every row norm <= sqrt(n+1) * n * bound; minors of Bareiss stay below the full bound
    double row = std::sqrt(static_cast<double>(n + 1)) * static_cast<double>(n) * static_cast<double>(bound);
    return (2 * n - 1) * std::log2(row) < 120.0;
}

inline Integer monic_discriminant(const std::vector<std::int64_t>& coeffs, std::uint64_t bound) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (small_discriminant_fits(n, bound)) {
        __int128 d = small_monic_discriminant(coeffs);
        bool neg = d < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-d) : static_cast<unsigned __int128>(d);
        Integer z = from_u64(static_cast<std::uint64_t>(u >> 64));
        z <<= 64;
        z += from_u64(static_cast<std::uint64_t>(u));
        return neg ? Integer(-z) : z;
    }
    std::vector<Integer> c;
    for (auto v : coeffs) c.push_back(from_i64(v));
    return discriminant(IntPoly(std::move(c)));
}

}  // namespace detail

struct EmpiricalDensity {
    bool exhaustive = false;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;  // discriminant not divisible by p^2
    Rational fraction;
    double mean = 0;
    double std_error = 0;  // zero for exhaustive runs
};

struct BrakenhoffConfig {
    bool exhaustive = true;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    std::uint64_t work_limit = 1'000'000;  // exhaustive mode: p^{2n} must not exceed it
};

/// Fraction of monic degree-n coefficient tuples mod p^2 whose discriminant is
/// not divisible by p^2: all p^{2n} tuples, or uniform samples.
inline EmpiricalDensity brakenhoff_empirical(int n, std::uint64_t p, const BrakenhoffConfig& cfg = {}) {
    if (n < 2) throw std::invalid_argument("brakenhoff_empirical: n must be >= 2");
    if (!is_prime_u64(p) || p > (1u << 20)) throw std::invalid_argument("brakenhoff_empirical: p must be a small prime");
    const std::uint64_t m = p * p;
    const Integer M = from_u64(m);
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(n) + 1, 0);
    coeffs[static_cast<std::size_t>(n)] = 1;
    auto good = [&]() { return !mpz_divisible_p(detail::monic_discriminant(coeffs, m).get_mpz_t(), M.get_mpz_t()); };

    EmpiricalDensity out;
    out.exhaustive = cfg.exhaustive;
    if (cfg.exhaustive) {
        Integer work = pow(M, static_cast<unsigned long>(n));
        if (work > from_u64(cfg.work_limit))
            throw std::out_of_range("brakenhoff_empirical: p^(2n) = " + to_string(work) + " exceeds the work limit");
        const std::uint64_t total = to_u64(work);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t rest = idx;
            for (int i = 0; i < n; ++i) {
                coeffs[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rest % m);
                rest /= m;
            }
            if (good()) ++out.hits;
        }
        out.trials = total;
    } else {
        if (cfg.samples == 0) throw std::invalid_argument("brakenhoff_empirical: need at least one sample");
        std::mt19937_64 rng(cfg.seed);
        for (std::uint64_t s = 0; s < cfg.samples; ++s) {
            for (int i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rng() % m);
            if (good()) ++out.hits;
        }
        out.trials = cfg.samples;
    }
    out.fraction = make_rational(from_u64(out.hits), from_u64(out.trials));
    out.mean = to_double(out.fraction);
    if (!cfg.exhaustive) out.std_error = std::sqrt(out.mean * (1 - out.mean) / static_cast<double>(out.trials));
    return out;
}

}  // namespace sqfdisc
