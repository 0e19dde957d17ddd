#include <gtest/gtest.h>

#include <sqfdisc/paramsearch.hpp>

#include "oracles.hpp"

#include <chrono>
#include <random>

using namespace sqfdisc;

namespace {

std::vector<Integer> iv(std::initializer_list<long> c) { return {c.begin(), c.end()}; }

// Independent check of a pair: R irreducible by trial division, R' roots by scan.
void expect_pair_reverifies(int n, const EisensteinPair& e) {
    EXPECT_NE((static_cast<std::uint64_t>(n) * (n - 1)) % e.p0, 0u);
    EXPECT_GT(e.p1, static_cast<std::uint64_t>(n));
    EXPECT_TRUE(oracle::irreducible_by_berlekamp(e.R, e.p1)) << "n=" << n << " p1=" << e.p1;
    auto scanned = oracle::roots_by_scan(e.R.derivative(), e.p1);
    EXPECT_EQ(scanned.size(), static_cast<std::size_t>(n - 1));
    EXPECT_EQ(scanned, e.rprime_roots);
    EXPECT_TRUE(verify_eisenstein_pair(n, e));
}

}  // namespace

TEST(EisensteinPair, DegreeTwo) {
    // p0 = 3 is the smallest prime not dividing n(n-1) = 2. R = x^2 - 3x + 3 is
    // x^2 mod 3; mod 5 its discriminant -3 = 2 is a non-residue, and R' = 2x - 3
    // has the root 3 * 2^-1 = 4.
    auto e = find_eisenstein_pair(2, {});
    EXPECT_EQ(e.p0, 3u);
    EXPECT_EQ(e.p1, 5u);
    EXPECT_EQ(e.rprime_roots, (std::vector<std::uint64_t>{4}));
    expect_pair_reverifies(2, e);
}

TEST(EisensteinPair, SkipsAvoidedPrimes) {
    // with 5 excluded: -3 = 4 is a square mod 7, -3 = 8 is not a square mod 11
    auto e = find_eisenstein_pair(2, {5});
    EXPECT_EQ(e.p1, 11u);
    expect_pair_reverifies(2, e);
    EXPECT_EQ(find_eisenstein_pair(2, {3}).p1, 5u);
}

TEST(EisensteinPair, AllDegreesReverify) {
    auto start = std::chrono::steady_clock::now();
    for (int n = 2; n <= 7; ++n) {
        auto e = find_eisenstein_pair(n, {}, 10'000);
        expect_pair_reverifies(n, e);
        auto e25 = find_eisenstein_pair(n, {2, 5}, 10'000);
        EXPECT_NE(e25.p1, 5u);
        expect_pair_reverifies(n, e25);
    }
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(60));
}

TEST(EisensteinPair, ExhaustedScanThrows) { EXPECT_THROW(find_eisenstein_pair(7, {}, 1), SearchExhausted); }

TEST(DistinctValueTuple, Examples) {
    EXPECT_EQ(find_distinct_value_tuple(2), (std::vector<Rational>{Rational(1)}));
    EXPECT_EQ(find_distinct_value_tuple(3), (std::vector<Rational>{Rational(3), Rational(2)}));
    // equally spaced critical points 1, 2, 3 are symmetric about 2, so P(1) = P(3)
    std::vector<Rational> spaced{Rational(4), Rational(2), Rational(3)};
    auto levels = critical_levels(4, spaced);
    EXPECT_EQ(levels[0], levels[2]);
    for (int n = 2; n <= 8; ++n) EXPECT_TRUE(pairwise_distinct(critical_levels(n, find_distinct_value_tuple(n)))) << n;
}

TEST(FindP2, Examples) {
    // n = 2: one value, so the smallest admissible prime (> 2, not p1 = 5) wins
    EXPECT_EQ(find_p2(2, std::vector<Rational>{Rational(1)}, {}, 5), 3u);
    // n = 3, a' = (3, 2): the two levels must reduce to different residues
    std::vector<Rational> a{Rational(3), Rational(2)};
    auto levels = critical_levels(3, a);
    std::uint64_t p2 = find_p2(3, a, {}, 7);
    EXPECT_GT(p2, 3u);
    EXPECT_NE(p2, 7u);
    Integer diff = Rational(levels[0] - levels[1]).get_num();
    EXPECT_NE(mod(diff, from_u64(p2)), 0);
    // every smaller admissible prime must divide the difference
    for (std::uint64_t p = 5; p < p2; p = next_prime(p))
        if (p != 7) {
            EXPECT_EQ(mod(diff, from_u64(p)), 0) << p;
        }
}

TEST(Assembly, DegreeTwoNoAvoidedPrimes) {
    auto cert = build_certificate(2, std::vector<std::uint64_t>{});
    EXPECT_EQ(cert.p0, 3u);
    EXPECT_EQ(cert.p1, 5u);
    EXPECT_EQ(cert.p2, 3u);
    ASSERT_EQ(cert.a_congruences.size(), 1u);
    // a_1 odd, a_1 = 2 * 4 mod 5, a_1 = a'_1 = 1 mod 3
    auto scanned = oracle::crt_by_scan({{1, 2}, {3, 5}, {1, 3}});
    ASSERT_TRUE(scanned);
    EXPECT_EQ(cert.a_congruences[0], (Congruence{Integer(*scanned), Integer(30)}));
    // b = 1 mod 2, b = p0 = 3 mod 5
    EXPECT_EQ(cert.b1, 3u);
    EXPECT_EQ(cert.b_congruence, (Congruence{Integer(*oracle::crt_by_scan({{1, 2}, {3, 5}})), Integer(10)}));
    // x^2 - a_1 x + b1 is irreducible mod 5
    EXPECT_TRUE(oracle::irreducible_by_trial_division(build_integer_P(2, cert.base_a(), Integer(3)), 5));
}

TEST(Oracles, TrialDivisionAndBerlekampAgree) {
    std::mt19937_64 rng(12);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL}) {
        for (int i = 0; i < 200; ++i) {
            std::vector<Integer> c;
            int d = 1 + static_cast<int>(rng() % 6);
            for (int k = 0; k < d; ++k) c.emplace_back(static_cast<unsigned long>(rng() % p));
            c.emplace_back(1);
            IntPoly f(std::move(c));
            EXPECT_EQ(oracle::irreducible_by_trial_division(f, p), oracle::irreducible_by_berlekamp(f, p)) << to_string(f) << " mod " << p;
        }
    }
}

TEST(Assembly, AvoidedPrimesEnterTheCongruences) {
    auto cert = build_certificate(3, std::vector<std::uint64_t>{2});
    // a_2 divisible by 3! = 6 and by 2
    EXPECT_EQ(mod(cert.a_congruences[1].residue, Integer(6)), 0);
    EXPECT_EQ(mod(cert.a_congruences[1].modulus, Integer(6)), 0);

    auto c5 = build_certificate(3, std::vector<std::uint64_t>{5});
    for (std::uint64_t p : {2u, 3u, 5u}) EXPECT_EQ(mod(c5.b_congruence.residue, from_u64(p)), 1) << p;
    EXPECT_EQ(mod(c5.b_congruence.residue, from_u64(c5.p1)), from_u64(c5.b1));
    EXPECT_EQ(c5.b_congruence.modulus, 30 * from_u64(c5.p1));
}

TEST(Assembly, ConditionsHoldForEveryDegree) {
    for (int n = 2; n <= 7; ++n) {
        for (const auto& S : {std::vector<std::uint64_t>{}, std::vector<std::uint64_t>{2, 5}, std::vector<std::uint64_t>{3, 7, 11}}) {
            auto cert = build_certificate(n, S);
            auto a = cert.base_a();
            EXPECT_TRUE(check_family_conditions(a, cert).empty()) << "n=" << n;
            // direct re-derivation, independent of check_family_conditions
            EXPECT_TRUE(has_integral_family(n, a));
            auto sys = disc_linear_factorization(n, a);
            Integer d1 = discriminant(build_integer_P(n, a, Integer(1)));
            for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(n); ++p)
                if (oracle::trial_division_is_prime(p)) {
                    EXPECT_NE(mod(d1, from_u64(p)), 0) << "n=" << n << " p=" << p;
                }
            for (auto p : S) EXPECT_NE(mod(d1, from_u64(p)), 0) << "n=" << n << " p=" << p;
            auto roots = oracle::roots_by_scan(to_integer(build_Q(n, a)), cert.p1);
            EXPECT_EQ(roots.size(), static_cast<std::size_t>(n - 1));
            EXPECT_TRUE(sys.pairwise_coprime());
            EXPECT_TRUE(oracle::irreducible_by_berlekamp(build_integer_P(n, a, from_u64(cert.b1)), cert.p1));
        }
    }
}

TEST(Assembly, InvalidPrimeSetRejected) {
    EXPECT_THROW(build_certificate(3, std::vector<std::uint64_t>{4}), InvalidTarget);
}

TEST(SignatureIntervals, Examples) {
    // x^2 - 2x + b: two roots for b < 1, none for b > 1
    auto c2 = signature_intervals(2, iv({2}));
    ASSERT_EQ(c2.size(), 2u);
    EXPECT_EQ(c2[0].range, (RationalInterval{std::nullopt, Rational(1)}));
    EXPECT_EQ(c2[0].real_roots, 2);
    EXPECT_EQ(c2[1].real_roots, 0);

    // coinciding critical points: only an inflection, one real root either side of -1
    auto c31 = signature_intervals(3, iv({3, 1}));
    ASSERT_EQ(c31.size(), 2u);
    for (const auto& c : c31) EXPECT_EQ(c.real_roots, 1);

    // critical points 3 and 1
    auto c91 = signature_intervals(3, iv({9, 1}));
    bool has_three = false;
    for (const auto& c : c91) has_three = has_three || c.real_roots == 3;
    EXPECT_TRUE(has_three);
}

TEST(SignatureIntervals, CountsChangeOnlyAtCuts) {
    for (auto [n, A] : std::vector<std::pair<int, std::vector<Integer>>>{{3, iv({9, 1})}, {4, iv({0, 24, -48})}, {5, iv({5, 240, -120, 480})}}) {
        auto cells = signature_intervals(n, A);
        auto ra = std::vector<Rational>(A.begin(), A.end());
        for (const auto& c : cells) {
            IntPoly p = clear_denominators(build_P(n, ra, c.sample));
            EXPECT_EQ(c.real_roots, oracle::bisection_real_root_count(squarefree_part(p)));
        }
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
            Rational cut = *cells[i].range.hi;
            Rational eps = Rational(1, 1000000);
            EXPECT_EQ(real_root_count(build_P(n, ra, cut - eps)), cells[i].real_roots);
            EXPECT_EQ(real_root_count(build_P(n, ra, cut + eps)), cells[i + 1].real_roots);
        }
    }
}

TEST(SignatureDirection, EverySignatureUpToDegreeFive) {
    for (int n = 2; n <= 5; ++n) {
        auto cert = build_certificate(n, std::vector<std::uint64_t>{2, 5});
        for (int r = n % 2; r <= n; r += 2) {
            auto region = find_signature_direction(n, r, cert);
            EXPECT_TRUE(check_family_conditions(region.A, cert).empty()) << n << " " << r;
            ASSERT_TRUE(region.I.contains(region.witness_B));
            IntPoly p = clear_denominators(build_P(n, std::vector<Rational>(region.A.begin(), region.A.end()), region.witness_B));
            EXPECT_EQ(oracle::bisection_real_root_count(squarefree_part(p)), r) << n << " " << r;
            if (region.I.bounded()) {
                EXPECT_GE(*region.I.hi - *region.I.lo, Rational(256 * cert.b_congruence.modulus));
            }
        }
    }
}

TEST(SignatureDirection, WrongParityRejected) {
    auto cert = build_certificate(3, std::vector<std::uint64_t>{});
    EXPECT_THROW(find_signature_direction(3, 2, cert), InvalidTarget);
    EXPECT_THROW(find_signature_direction(3, 5, cert), InvalidTarget);
}

TEST(ScaleParams, IdentityAndScaledInterval) {
    auto cert = build_certificate(3, std::vector<std::uint64_t>{2, 5});
    auto region = find_signature_direction(3, 3, cert);
    auto same = scale_params(region, cert, Integer(1));
    EXPECT_EQ(same.a, region.A);
    EXPECT_EQ(*same.b_interval, region.I);

    Integer q = 1 + cert.assembled_modulus;
    auto scaled = scale_params(region, cert, q);
    Rational q3(q * q * q);
    ASSERT_TRUE(region.I.bounded());
    EXPECT_EQ(*scaled.b_interval->lo, *region.I.lo * q3);
    EXPECT_EQ(*scaled.b_interval->hi, *region.I.hi * q3);
    Integer b = floor((*scaled.b_interval->lo + *scaled.b_interval->hi) / 2);
    EXPECT_EQ(real_root_count(build_integer_P(3, scaled.a, b)), 3);

    EXPECT_THROW(scale_params(region, cert, Integer(2)), std::invalid_argument);
}
