#pragma once

// Parameter search: the auxiliary primes p0, p1, p2, the tuple a', the
// congruences that pin down a_1..a_{n-1} and b, and a direction A whose
// b-line contains an interval where P_{A,b} has exactly r real roots.
//
// Every search result is re-verified before it is returned; nothing the
// construction promises is taken on trust.

#include "errors.hpp"
#include "family.hpp"
#include "fp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sqfdisc {

using PrimeList = std::vector<std::uint64_t>;

namespace detail {

inline PrimeList primes_up_to(std::uint64_t n) {
    PrimeList out;
    for (std::uint64_t p = 2; p <= n; p = next_prime(p)) out.push_back(p);
    return out;
}

inline bool contains(const PrimeList& set, std::uint64_t p) { return std::binary_search(set.begin(), set.end(), p); }

/// Nearest integer y = c.residue (mod c.modulus) to target (ties go down).
inline Integer snap(const Integer& target, const Congruence& c) {
    Integer base = target - mod(Integer(target - c.residue), c.modulus);
    Integer up = base + c.modulus;
    return (up - target < target - base) ? up : base;
}

/// Residue in (-m/2, m/2].
inline Integer centered(const Congruence& c) {
    Integer r = mod(c.residue, c.modulus);
    if (2 * r > c.modulus) r -= c.modulus;
    return r;
}

}  // namespace detail

/// Sorted, deduplicated prime set; throws InvalidTarget on a non-prime entry.
inline PrimeList normalize_prime_set(std::span<const std::uint64_t> S) {
    PrimeList out(S.begin(), S.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (auto p : out)
        if (!is_prime_u64(p)) throw InvalidTarget("avoided prime set contains non-prime " + std::to_string(p));
    return out;
}

/// r + 2s = n with r, s >= 0.
inline void check_signature(int n, int r) {
    if (n < 2) throw InvalidTarget("degree must be >= 2");
    if (r < 0 || r > n) throw InvalidTarget("real root count " + std::to_string(r) + " outside 0.." + std::to_string(n));
    if ((n - r) % 2 != 0) throw InvalidTarget("real root count " + std::to_string(r) + " has the wrong parity for degree " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// p0, R, p1

/// x^n - p0^(n-1) x + p0
inline IntPoly eisenstein_polynomial(int n, std::uint64_t p0) {
    std::vector<Integer> c(static_cast<std::size_t>(n + 1), Integer(0));
    c[0] = from_u64(p0);
    c[1] = -pow(from_u64(p0), static_cast<unsigned long>(n - 1));
    c[static_cast<std::size_t>(n)] += 1;
    return IntPoly(std::move(c));
}

struct EisensteinPair {
    std::uint64_t p0 = 0;
    std::uint64_t p1 = 0;
    IntPoly R;
    std::vector<std::uint64_t> rprime_roots;  // sorted residues mod p1
};

inline std::uint64_t smallest_prime_not_dividing(std::uint64_t m) {
    std::uint64_t p = 2;
    while (m % p == 0) p = next_prime(p);
    return p;
}

/// R irreducible mod p1 and R' split into n-1 distinct roots mod p1, with the
/// structural side conditions on p0 and p1.
inline bool verify_eisenstein_pair(int n, const EisensteinPair& e) {
    auto nn = static_cast<std::uint64_t>(n);
    if (!is_prime_u64(e.p0) || (nn * (nn - 1)) % e.p0 == 0) return false;
    if (!is_prime_u64(e.p1) || e.p1 <= nn) return false;
    if (e.R != eisenstein_polynomial(n, e.p0)) return false;
    if (!fp_is_irreducible(FpPoly::from(e.R, e.p1))) return false;
    auto roots = fp_distinct_linear_split(FpPoly::from(e.R.derivative(), e.p1));
    return roots && *roots == e.rprime_roots;
}

/// p0 = smallest prime not dividing n(n-1); p1 = first prime > n outside S for
/// which R is irreducible and R' splits into distinct linear factors.
/// scan_limit counts candidate primes examined.
inline EisensteinPair find_eisenstein_pair(int n, const PrimeList& S, std::size_t scan_limit = 100'000) {
    if (n < 2) throw InvalidTarget("degree must be >= 2");
    auto nn = static_cast<std::uint64_t>(n);
    EisensteinPair out;
    out.p0 = smallest_prime_not_dividing(nn * (nn - 1));
    out.R = eisenstein_polynomial(n, out.p0);
    IntPoly rprime = out.R.derivative();
    std::uint64_t p = nn;
    for (std::size_t scanned = 0; scanned < scan_limit;) {
        p = next_prime(p);
        if (detail::contains(S, p)) continue;
        ++scanned;
        auto roots = fp_distinct_linear_split(FpPoly::from(rprime, p));
        if (!roots || !fp_is_irreducible(FpPoly::from(out.R, p))) continue;
        out.p1 = p;
        out.rprime_roots = std::move(*roots);
        return out;
    }
    throw SearchExhausted("find_eisenstein_pair", "no p1 among the first " + std::to_string(scan_limit) + " candidate primes");
}

// ---------------------------------------------------------------------------
// a' and p2

/// P_{a,0} at each critical point a_1/n, a_2, ..., a_{n-1} (no n^n scaling).
inline std::vector<Rational> critical_levels(int n, std::span<const Rational> a) {
    RatPoly p0 = build_P(n, a, Rational(0));
    std::vector<Rational> out;
    for (const auto& c : critical_points(n, a)) out.push_back(p0(c));
    return out;
}

inline bool pairwise_distinct(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

/// A tuple a' with pairwise distinct critical levels. Tries critical points
/// 1, 2, 4, ..., 2^(n-2) first, then seeded random increasing tuples.
inline std::vector<Rational> find_distinct_value_tuple(int n, int attempts = 1000, std::uint64_t seed = 1) {
    if (n < 2) throw InvalidTarget("degree must be >= 2");
    if (n == 2) return {Rational(1)};
    std::vector<Rational> a{Rational(n)};
    for (int i = 2; i < n; ++i) a.emplace_back(Integer(1) << (i - 1));
    if (pairwise_distinct(critical_levels(n, a))) return a;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < attempts; ++k) {
        long c = 1 + static_cast<long>(rng() % 10);
        a.assign(1, Rational(n * c));
        for (int i = 2; i < n; ++i) {
            c += 1 + static_cast<long>(rng() % 10);
            a.emplace_back(c);
        }
        if (pairwise_distinct(critical_levels(n, a))) return a;
    }
    throw SearchExhausted("find_distinct_value_tuple", "no tuple with distinct critical values");
}

/// Smallest prime outside S, {2..n} and {p1}, not dividing any denominator,
/// modulo which the critical levels of a' stay pairwise distinct.
inline std::uint64_t find_p2(int n, std::span<const Rational> a_prime, const PrimeList& S, std::uint64_t p1,
                             std::size_t scan_limit = 100'000) {
    auto levels = critical_levels(n, a_prime);
    if (!pairwise_distinct(levels)) throw std::invalid_argument("find_p2: critical levels of a' are not distinct");
    std::uint64_t p = static_cast<std::uint64_t>(n);
    for (std::size_t scanned = 0; scanned < scan_limit;) {
        p = next_prime(p);
        if (p == p1 || detail::contains(S, p)) continue;
        ++scanned;
        Integer m = from_u64(p);
        bool ok = true;
        for (const auto& x : a_prime) ok = ok && mod(Integer(x.get_den()), m) != 0;
        for (const auto& x : levels) ok = ok && mod(Integer(x.get_den()), m) != 0;
        if (!ok) continue;
        std::vector<Integer> reduced;
        for (const auto& x : levels) reduced.push_back(mod(x, m));
        std::sort(reduced.begin(), reduced.end());
        if (std::adjacent_find(reduced.begin(), reduced.end()) == reduced.end()) return p;
    }
    throw SearchExhausted("find_p2", "no admissible p2 among the first " + std::to_string(scan_limit) + " candidate primes");
}

// ---------------------------------------------------------------------------
// Congruence assembly

struct ParamCertificate {
    int n = 2;
    PrimeList S;
    std::uint64_t p0 = 0;
    std::uint64_t p1 = 0;
    IntPoly R;
    std::vector<std::uint64_t> rprime_roots;
    std::vector<Rational> a_prime;
    std::uint64_t p2 = 0;
    std::vector<Congruence> a_congruences;  // one per index, conditions (a)-(c)
    std::uint64_t b1 = 0;                   // residue of b mod p1
    std::map<std::uint64_t, std::uint64_t> b_p;  // residue of b mod each p in S and each p <= n
    Congruence b_congruence;                // merged, modulus t
    Integer assembled_modulus;              // n! p1 p2 prod(S); scales q must be 1 modulo this

    /// Smallest nonnegative representative of every a-congruence.
    [[nodiscard]] std::vector<Integer> base_a() const {
        std::vector<Integer> out;
        for (const auto& c : a_congruences) out.push_back(c.residue);
        return out;
    }
};

/// Per-index congruences for a_1..a_{n-1}:
///   a_1: 1 mod each prime dividing n; 0 mod n-1, mod each p in S with p not
///        dividing n, and mod each prime <= n not dividing n; n*rho_1 mod p1; a'_1 mod p2.
///   a_i: 0 mod n! and mod each p in S; rho_i mod p1; a'_i mod p2.
/// rho are the roots of R' mod p1 in increasing order.
inline std::vector<Congruence> assemble_base_params(int n, const PrimeList& S, const ParamCertificate& cert) {
    auto nn = static_cast<std::uint64_t>(n);
    Integer P1 = from_u64(cert.p1), P2 = from_u64(cert.p2);
    std::vector<Congruence> out;

    std::vector<Congruence> first;
    if (n - 1 > 1) first.push_back({0, Integer(n - 1)});
    for (auto p : S)
        if (nn % p != 0) first.push_back({0, from_u64(p)});
    for (auto p : detail::primes_up_to(nn)) first.push_back({nn % p == 0 ? 1 : 0, from_u64(p)});
    first.push_back({mod(Integer(n * from_u64(cert.rprime_roots[0])), P1), P1});
    first.push_back({mod(cert.a_prime[0], P2), P2});
    out.push_back(crt_solve(first));

    Integer nfact = factorial(static_cast<unsigned long>(n));
    for (int i = 1; i < n - 1; ++i) {
        std::vector<Congruence> sys{{0, nfact}};
        for (auto p : S) sys.push_back({0, from_u64(p)});
        sys.push_back({from_u64(cert.rprime_roots[static_cast<std::size_t>(i)]), P1});
        sys.push_back({mod(cert.a_prime[static_cast<std::size_t>(i)], P2), P2});
        out.push_back(crt_solve(sys));
    }
    return out;
}

struct BCongruence {
    std::uint64_t b1 = 0;
    std::map<std::uint64_t, std::uint64_t> b_p;
    Congruence merged;
};

/// b = 1 mod every p in S and every prime <= n; b = b1 mod p1 where
/// b1 = p0 mod p1 makes P_{a,b1} = R mod p1. b1 is re-verified (irreducible
/// mod p1) and, should that fail, found by scanning 0..p1-1.
inline BCongruence b_congruence(const ParamCertificate& cert) {
    const int n = cert.n;
    BCongruence out;
    for (auto p : cert.S) out.b_p[p] = 1;
    for (auto p : detail::primes_up_to(static_cast<std::uint64_t>(n))) out.b_p[p] = 1;
    auto a = cert.base_a();
    auto irreducible_at = [&](std::uint64_t b) {
        return fp_is_irreducible(FpPoly::from(build_integer_P(n, a, from_u64(b)), cert.p1));
    };
    out.b1 = cert.p0 % cert.p1;
    if (!irreducible_at(out.b1)) {
        bool found = false;
        for (std::uint64_t b = 0; b < cert.p1 && !found; ++b)
            if (irreducible_at(b)) {
                out.b1 = b;
                found = true;
            }
        if (!found) throw SearchExhausted("b_congruence", "no b1 mod p1 makes P_{a,b} irreducible");
    }
    std::vector<Congruence> sys;
    for (auto [p, r] : out.b_p) sys.push_back({from_u64(r), from_u64(p)});
    sys.push_back({from_u64(out.b1), from_u64(cert.p1)});
    out.merged = crt_solve(sys);
    return out;
}

/// Conditions (i)-(v) for a concrete tuple a, as direct checks. Returns the
/// list of violated conditions (empty when everything holds).
inline std::vector<std::string> check_family_conditions(std::span<const Integer> a, const ParamCertificate& cert) {
    const int n = cert.n;
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!cert.a_congruences[i].contains(a[i])) failures.push_back("a_" + std::to_string(i + 1) + " leaves its congruence class");
    if (!has_integral_family(n, a)) {
        failures.emplace_back("(i) P_{a,0} has non-integral coefficients");
        return failures;
    }
    auto sys = disc_linear_factorization(n, a);
    Integer d1 = sys.evaluate(Integer(1));
    PrimeList small = detail::primes_up_to(static_cast<std::uint64_t>(n));
    for (auto p : cert.S) small.push_back(p);
    for (auto p : small)
        if (mod(d1, from_u64(p)) == 0) failures.push_back("(ii) Delta_{a,1} divisible by " + std::to_string(p));
    // critical points reduce to the roots of R' mod p1
    Integer P1 = from_u64(cert.p1);
    std::vector<std::uint64_t> reduced;
    for (const auto& c : critical_points(n, detail::as_rationals(a))) reduced.push_back(to_u64(mod(c, P1)));
    std::sort(reduced.begin(), reduced.end());
    if (reduced != cert.rprime_roots) failures.emplace_back("(b) critical points do not reduce to the roots of R' mod p1");
    if (!fp_is_irreducible(FpPoly::from(build_integer_P(n, a, from_u64(cert.b1)), cert.p1)))
        failures.emplace_back("(iv) P_{a,b1} reducible mod p1");
    if (!sys.pairwise_coprime()) failures.emplace_back("(v) linear factors of Delta_{a,b} not pairwise coprime");
    return failures;
}

/// Re-verifies every conclusion recorded in the certificate.
inline void verify_certificate(const ParamCertificate& cert) {
    const int n = cert.n;
    auto nn = static_cast<std::uint64_t>(n);
    auto fail = [](const std::string& what) { throw CertificationFailure("certificate: " + what); };
    if (!verify_eisenstein_pair(n, {cert.p0, cert.p1, cert.R, cert.rprime_roots})) fail("Eisenstein pair does not re-verify");
    if (detail::contains(cert.S, cert.p1)) fail("p1 lies in S");
    auto levels = critical_levels(n, cert.a_prime);
    if (!pairwise_distinct(levels)) fail("critical levels of a' are not distinct");
    if (cert.p2 <= nn || cert.p2 == cert.p1 || detail::contains(cert.S, cert.p2) || !is_prime_u64(cert.p2)) fail("p2 is not admissible");
    std::vector<Integer> reduced;
    for (const auto& x : levels) reduced.push_back(mod(x, from_u64(cert.p2)));
    std::sort(reduced.begin(), reduced.end());
    if (std::adjacent_find(reduced.begin(), reduced.end()) != reduced.end()) fail("critical levels of a' collide mod p2");
    auto failures = check_family_conditions(cert.base_a(), cert);
    if (!failures.empty()) fail(failures.front());
    for (auto [p, r] : cert.b_p)
        if (mod(Integer(cert.b_congruence.residue - from_u64(r)), from_u64(p)) != 0) fail("b congruence misses b_p at " + std::to_string(p));
    if (mod(Integer(cert.b_congruence.residue - from_u64(cert.b1)), from_u64(cert.p1)) != 0) fail("b congruence misses b1");
}

struct CertificateConfig {
    std::size_t prime_scan_limit = 100'000;
    int tuple_attempts = 1000;
    std::uint64_t seed = 1;
};

/// Runs p0/p1 -> a' -> p2 -> congruence assembly -> b congruence, and verifies.
inline ParamCertificate build_certificate(int n, std::span<const std::uint64_t> S_in, const CertificateConfig& cfg = {}) {
    ParamCertificate cert;
    cert.n = n;
    cert.S = normalize_prime_set(S_in);
    auto pair = find_eisenstein_pair(n, cert.S, cfg.prime_scan_limit);
    cert.p0 = pair.p0;
    cert.p1 = pair.p1;
    cert.R = pair.R;
    cert.rprime_roots = pair.rprime_roots;
    cert.a_prime = find_distinct_value_tuple(n, cfg.tuple_attempts, cfg.seed);
    cert.p2 = find_p2(n, cert.a_prime, cert.S, cert.p1, cfg.prime_scan_limit);
    cert.a_congruences = assemble_base_params(n, cert.S, cert);
    auto b = b_congruence(cert);
    cert.b1 = b.b1;
    cert.b_p = b.b_p;
    cert.b_congruence = b.merged;
    cert.assembled_modulus = factorial(static_cast<unsigned long>(n)) * from_u64(cert.p1) * from_u64(cert.p2);
    for (auto p : cert.S) cert.assembled_modulus *= from_u64(p);
    verify_certificate(cert);
    return cert;
}

// ---------------------------------------------------------------------------
// Signature control

struct SignatureCell {
    RationalInterval range;
    int real_roots = 0;
    Rational sample;
};

/// Splits the b-line at the degenerate values -v1/n^n, -v_i and counts the
/// real roots of P_{A,b} at one rational point per open cell.
inline std::vector<SignatureCell> signature_intervals(int n, std::span<const Integer> A) {
    auto crit = critical_values(n, A);
    auto cuts = crit.degenerate_b(n);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto ra = detail::as_rationals(A);
    auto count_at = [&](const Rational& b) { return real_root_count(build_P(n, ra, b)); };
    std::vector<SignatureCell> cells;
    Rational left = cuts.front() - 1;
    cells.push_back({{std::nullopt, cuts.front()}, count_at(left), left});
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational mid = (cuts[i] + cuts[i + 1]) / 2;
        cells.push_back({{cuts[i], cuts[i + 1]}, count_at(mid), mid});
    }
    Rational right = cuts.back() + 1;
    cells.push_back({{cuts.back(), std::nullopt}, count_at(right), right});
    return cells;
}

struct SignatureRegion {
    int target_r = 0;
    std::vector<Integer> A;
    RationalInterval I;
    Rational witness_B;
};

struct DirectionSearchConfig {
    int lattice_radius = -1;   // offsets per coordinate in the small box; -1 picks by degree
    int max_doublings = 48;    // pattern scales base * 2^j, j < max_doublings
    int random_per_scale = 8;  // seeded random patterns tried at each scale
    std::uint64_t seed = 1;
    Integer min_width_factor = 256;  // bounded cells must be at least this many b-moduli wide
};

namespace detail {

/// Three rational points inside the interval (both ends and the middle).
inline std::vector<Rational> probe_points(const RationalInterval& iv, const Rational& witness) {
    if (iv.bounded()) {
        Rational w = *iv.hi - *iv.lo;
        return {*iv.lo + w / 8, witness, *iv.hi - w / 8};
    }
    if (iv.lo) return {*iv.lo + Rational(1, 2), witness, *iv.lo + 1000};
    if (iv.hi) return {*iv.hi - Rational(1, 2), witness, *iv.hi - 1000};
    return {Rational(-1000), witness, Rational(1000)};
}

/// Picks the cell to use for target r: prefer one containing 0, then an
/// unbounded one, then the one closest to 0; bounded cells must be wide enough.
inline std::optional<SignatureCell> pick_cell(const std::vector<SignatureCell>& cells, int r, const Rational& min_width) {
    std::optional<SignatureCell> best;
    auto key = [](const SignatureCell& c) {
        Rational dist = 0;
        if (!c.range.contains(Rational(0))) {
            if (c.range.lo && *c.range.lo >= 0) dist = *c.range.lo;
            if (c.range.hi && *c.range.hi <= 0) dist = -*c.range.hi;
        }
        return std::make_tuple(c.range.contains(Rational(0)) ? 0 : 1, c.range.bounded() ? 1 : 0, dist);
    };
    for (const auto& c : cells) {
        if (c.real_roots != r) continue;
        if (c.range.bounded() && *c.range.hi - *c.range.lo < min_width) continue;
        if (!best || key(c) < key(*best)) best = c;
    }
    return best;
}

/// Integer near f * M for a double f in [-8, 8] (2^-20 resolution).
inline Integer scaled(double f, const Integer& M) {
    Integer num = from_i64(std::llround(f * 1048576.0));
    return floor_div(Integer(num * M), Integer(1048576));
}

/// Target critical-point multisets for r real roots at scale M.
inline std::vector<std::vector<Integer>> critical_patterns(int n, int r, const Integer& M, std::mt19937_64& rng, int random_count) {
    const int pairs = (n - r) / 2;
    std::vector<std::vector<Integer>> out;
    auto with_pairs = [&](std::vector<Integer> band, int side) {
        for (int j = 0; j < pairs; ++j) {
            Integer at = scaled(side * (2.0 + 3.0 * j), M);
            band.push_back(at);
            band.push_back(at + scaled(side * 0.25, M));
        }
        return band;
    };
    std::vector<Integer> cheb, even;
    for (int j = 1; j < r; ++j) {
        cheb.push_back(scaled(std::cos(j * std::numbers::pi / r), M));
        even.push_back(scaled(-1.0 + 2.0 * j / r, M));
    }
    // with r <= 1 the band is empty and every critical point sits in a pair;
    // n - 1 odd then leaves one extra point
    auto pad = [&](std::vector<Integer> pts) {
        while (static_cast<int>(pts.size()) < n - 1) pts.push_back(scaled(-3.0 - static_cast<double>(pts.size()), M));
        pts.resize(static_cast<std::size_t>(n - 1));
        return pts;
    };
    out.push_back(pad(with_pairs(cheb, 1)));
    out.push_back(pad(with_pairs(cheb, -1)));
    out.push_back(pad(with_pairs(even, 1)));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < random_count; ++k) {
        std::vector<Integer> pts;
        for (int i = 0; i < n - 1; ++i) pts.push_back(scaled(unit(rng), M));
        out.push_back(pts);
    }
    return out;
}

}  // namespace detail

/// Finds A satisfying the assembled congruences whose b-line has a cell with
/// exactly r real roots: first a small box of representatives around the
/// centred residues (smallest first), then critical-point patterns at growing
/// scales snapped into the congruence classes.
inline SignatureRegion find_signature_direction(int n, int r, const ParamCertificate& cert,
                                                const DirectionSearchConfig& cfg = {}) {
    check_signature(n, r);
    if (cert.n != n) throw std::invalid_argument("find_signature_direction: certificate is for another degree");
    const auto& cong = cert.a_congruences;
    const Rational min_width(cfg.min_width_factor * cert.b_congruence.modulus);

    auto finish = [&](std::vector<Integer> A, const SignatureCell& cell) {
        SignatureRegion region{r, std::move(A), cell.range, cell.sample};
        auto ra = detail::as_rationals(region.A);
        for (const auto& x : detail::probe_points(region.I, region.witness_B)) {
            if (!region.I.contains(x) || real_root_count(build_P(n, ra, x)) != r)
                throw CertificationFailure("signature region does not have " + std::to_string(r) + " real roots at " + to_string(x));
        }
        return region;
    };
    auto attempt = [&](const std::vector<Integer>& A) -> std::optional<SignatureRegion> {
        auto pts = critical_points(n, detail::as_rationals(A));
        if (!pairwise_distinct(pts) && r > 2) return std::nullopt;
        auto cell = detail::pick_cell(signature_intervals(n, A), r, min_width);
        if (!cell) return std::nullopt;
        return finish(A, *cell);
    };

    // Stage 1: small box of representatives
    int radius = cfg.lattice_radius >= 0 ? cfg.lattice_radius : (n <= 4 ? 3 : n == 5 ? 2 : 1);
    {
        std::vector<Integer> centre;
        for (const auto& c : cong) centre.push_back(detail::centered(c));
        std::vector<std::vector<Integer>> box{{}};
        for (std::size_t i = 0; i < cong.size(); ++i) {
            std::vector<std::vector<Integer>> next;
            for (const auto& prefix : box)
                for (int k = -radius; k <= radius; ++k) {
                    auto t = prefix;
                    t.push_back(centre[i] + k * cong[i].modulus);
                    next.push_back(std::move(t));
                }
            box = std::move(next);
        }
        auto size_key = [](const std::vector<Integer>& A) {
            Integer mx = 0, sum = 0;
            for (const auto& x : A) {
                mx = std::max(mx, Integer(abs(x)));
                sum += abs(x);
            }
            return std::make_pair(mx, sum);
        };
        std::stable_sort(box.begin(), box.end(), [&](const auto& x, const auto& y) { return size_key(x) < size_key(y); });
        for (const auto& A : box)
            if (auto region = attempt(A)) return *region;
    }

    // Stage 2: spread patterns at doubling scales
    Integer base = 16;
    for (const auto& c : cong) base = std::max(base, Integer(4 * c.modulus));
    std::mt19937_64 rng(cfg.seed);
    for (int j = 0; j < cfg.max_doublings; ++j) {
        Integer M = base << j;
        for (auto pts : detail::critical_patterns(n, r, M, rng, cfg.random_per_scale)) {
            std::vector<Integer> A;
            A.push_back(detail::snap(Integer(n * pts[0]), cong[0]));
            for (std::size_t i = 1; i < pts.size(); ++i) A.push_back(detail::snap(pts[i], cong[i]));
            if (auto region = attempt(A)) return *region;
        }
    }
    throw SearchExhausted("find_signature_direction", "no direction with a " + std::to_string(r) + "-real-root cell");
}

/// a = A q with q = 1 (mod n! p1 p2 prod S), b-interval q^n I; re-checks conditions.
inline FamilyParams scale_params(const SignatureRegion& region, const ParamCertificate& cert, const Integer& q) {
    if (q < 1 || mod(Integer(q - 1), cert.assembled_modulus) != 0)
        throw std::invalid_argument("scale_params: q must be positive and 1 modulo " + to_string(cert.assembled_modulus));
    const int n = cert.n;
    FamilyParams out;
    out.n = n;
    for (const auto& x : region.A) out.a.push_back(x * q);
    out.b_congruence = cert.b_congruence;
    out.q = q;
    Rational qn(pow(q, static_cast<unsigned long>(n)));
    RationalInterval iv;
    if (region.I.lo) iv.lo = *region.I.lo * qn;
    if (region.I.hi) iv.hi = *region.I.hi * qn;
    out.b_interval = iv;
    auto failures = check_family_conditions(out.a, cert);
    if (!failures.empty()) throw CertificationFailure("scale_params: " + failures.front());
    return out;
}

}  // namespace sqfdisc
