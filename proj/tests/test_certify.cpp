#include <gtest/gtest.h>

#include <sqfdisc/certify.hpp>

#include "oracles.hpp"

#include <random>

using namespace sqfdisc;

namespace {

IntPoly ip(std::initializer_list<long> c) { return IntPoly(std::vector<Integer>(c.begin(), c.end())); }

FamilyParams family(int n, std::initializer_list<long> a) {
    FamilyParams f;
    f.n = n;
    f.a.assign(a.begin(), a.end());
    return f;
}

}  // namespace

TEST(IrreducibleOverQ, Examples) {
    EXPECT_EQ(irreducible_over_Q(ip({1, 0, 1}), 100), 3u);
    EXPECT_FALSE(irreducible_over_Q(ip({-1, 0, 1}), 10'000).has_value());
    EXPECT_FALSE(irreducible_over_Q(ip({1, 2, 1}), 100).has_value());  // (x+1)^2
    EXPECT_EQ(irreducible_over_Q(ip({-1, -1, 0, 1}), 100), 2u);        // x^3 - x - 1 mod 2
    EXPECT_THROW(irreducible_over_Q(ip({1, 2}), 100).value(), std::invalid_argument);
}

TEST(IrreducibleOverQ, WitnessIsIrreducibleModP) {
    std::mt19937_64 rng(5);
    int found = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<Integer> c;
        for (int i = 0; i < n; ++i) c.emplace_back(static_cast<long>(rng() % 41) - 20);
        c.emplace_back(1);
        IntPoly f(std::move(c));
        auto w = irreducible_over_Q(f, 200);
        if (!w) continue;
        ++found;
        EXPECT_TRUE(oracle::irreducible_by_berlekamp(f, *w));
        EXPECT_NE(discriminant(f) % Integer(static_cast<unsigned long>(*w)), 0);
    }
    EXPECT_GT(found, 100);
}

TEST(SnEvidence, Examples) {
    auto quad = sn_evidence(ip({1, 0, 1}), 100);
    EXPECT_TRUE(quad.cycle_types.count({2}));
    EXPECT_TRUE(quad.cycle_types.count({1, 1}));
    ASSERT_TRUE(quad.certificate.has_value());

    auto cubic = sn_evidence(ip({-1, -1, 0, 1}), 100);
    EXPECT_TRUE(cubic.cycle_types.count({3}));
    EXPECT_TRUE(cubic.cycle_types.count({2, 1}));
    EXPECT_TRUE(cubic.cycle_types.count({1, 1, 1}));
    ASSERT_TRUE(cubic.certificate.has_value());
    std::uint64_t total = 0;
    for (const auto& [t, count] : cubic.cycle_types) {
        int sum = 0;
        for (int c : t) sum += c;
        EXPECT_EQ(sum, 3);
        total += count;
    }
    EXPECT_EQ(total, cubic.sampled_primes);
    // 23 is the only prime dividing the discriminant below 100
    EXPECT_EQ(cubic.sampled_primes, 24u);

    EXPECT_THROW(sn_evidence(ip({-1, 0, 1}), 100), std::invalid_argument);
    EXPECT_THROW(sn_evidence(ip({1, 2, 1}), 100), std::invalid_argument);
}

TEST(SnEvidence, SmallerGroupsGetNoCertificate) {
    // cyclic cubic: only the types {3} and {1,1,1} occur
    auto c3 = sn_evidence(ip({1, -3, 0, 1}), 500);
    EXPECT_FALSE(c3.certificate.has_value());
    EXPECT_FALSE(c3.cycle_types.count({2, 1}));
    // x^4 - 2 has group D4: transpositions but never a 3-cycle
    auto d4 = sn_evidence(ip({-2, 0, 0, 0, 1}), 500);
    EXPECT_FALSE(d4.certificate.has_value());
    EXPECT_FALSE(d4.cycle_types.count({3, 1}));
    // x^5 - x - 1 has group S5
    auto s5 = sn_evidence(ip({-1, -1, 0, 0, 0, 1}), 500);
    ASSERT_TRUE(s5.certificate.has_value());
    EXPECT_EQ(s5.certificate->transitive_prime, irreducible_over_Q(ip({-1, -1, 0, 0, 0, 1}), 500));
}

TEST(CertifyRecord, QuadraticExamples) {
    auto f = family(2, {2});
    auto r5 = certify_record(f, Integer(5));
    EXPECT_EQ(r5.poly, ip({5, -2, 1}));
    EXPECT_EQ(r5.disc, -16);
    EXPECT_EQ(r5.squarefree, Verdict::no);
    EXPECT_EQ(r5.real_roots, 0);
    EXPECT_EQ(certify_record(f, Integer(2)).disc, -4);
    EXPECT_EQ(certify_record(f, Integer(2)).squarefree, Verdict::no);
    EXPECT_EQ(certify_record(f, Integer(3)).squarefree, Verdict::no);
    // Delta = 4 - 4b is never squarefree: the reason a_1 must be odd for n = 2
    for (long b = -50; b <= 50; ++b) EXPECT_NE(certify_record(f, Integer(b)).squarefree, Verdict::yes);

    auto odd = family(2, {1});
    std::uint64_t S[] = {2};
    auto r1 = certify_record(odd, Integer(1), S);
    EXPECT_EQ(r1.disc, -3);
    EXPECT_EQ(r1.squarefree, Verdict::yes);
    EXPECT_TRUE(r1.coprime_to_S);
    EXPECT_TRUE(r1.certified());
    ASSERT_TRUE(r1.disc_factorization.has_value());
    EXPECT_EQ(r1.disc_factorization->value(), -3);
}

TEST(CertifyRecord, DegenerateMember) {
    // x^3 - 9x^2 + 108 = (x - 6)^2 (x + 3)
    auto f = family(3, {0, 6});
    auto rec = certify_record(f, Integer(108));
    EXPECT_EQ(rec.disc, 0);
    EXPECT_EQ(rec.squarefree, Verdict::no);
    EXPECT_FALSE(rec.disc_factorization.has_value());
    EXPECT_EQ(rec.real_roots, 2);
    EXPECT_FALSE(rec.irreducibility_witness.has_value());
    EXPECT_FALSE(rec.certified());
}

TEST(CertifyRecord, RejectsInadmissibleB) {
    auto f = family(2, {1});
    f.b_congruence = {Integer(1), Integer(4)};
    EXPECT_NO_THROW(certify_record(f, Integer(5)));
    EXPECT_THROW(certify_record(f, Integer(6)), std::invalid_argument);
    f.b_interval = RationalInterval{Rational(0), Rational(10)};
    EXPECT_THROW(certify_record(f, Integer(13)), std::invalid_argument);
}

TEST(CertifyRecord, AgreesWithOraclesOnSmallFamilies) {
    for (auto f : {family(2, {1}), family(2, {3}), family(3, {2, 6}), family(3, {4, -6}), family(4, {3, 24, -24})}) {
        Certifier cert(f, std::vector<std::uint64_t>{2, 3});
        for (long b = -300; b <= 300; ++b) {
            auto rec = cert.certify(Integer(b));
            EXPECT_EQ(rec.disc, discriminant(build_integer_P(f.n, f.a, Integer(b))));
            if (rec.disc == 0) continue;
            EXPECT_EQ(rec.real_roots, oracle::bisection_real_root_count(rec.poly));
            ASSERT_TRUE(rec.disc_factorization.has_value());
            EXPECT_EQ(rec.disc_factorization->value(), rec.disc);
            if (abs(rec.disc) < Integer("1000000000000")) {
                EXPECT_EQ(rec.squarefree == Verdict::yes, oracle::squarefree_by_scan(rec.disc.get_si())) << rec.disc;
            }
            EXPECT_EQ(rec.coprime_to_S, rec.disc % 2 != 0 && rec.disc % 3 != 0);
            if (rec.squarefree == Verdict::yes) {
                EXPECT_FALSE(cert.obviously_not_squarefree(Integer(b)));
            }
            if (rec.irreducibility_witness) {
                EXPECT_TRUE(oracle::irreducible_by_berlekamp(rec.poly, *rec.irreducibility_witness));
            }
        }
    }
}

TEST(CertifyRecord, IndeterminateFactorizationPropagates) {
    CertifyConfig cfg;
    cfg.budget.trial_bound = 10;
    cfg.budget.rho_iterations = 1;
    cfg.sn_evidence = false;
    // Delta = 1 - 4b = -(1000003 * 1000033) at b chosen below
    Integer target = Integer(1000003) * Integer(1000033);
    Integer b = (target + 1) / 4;
    ASSERT_EQ(1 - 4 * b, -target);
    auto rec = certify_record(family(2, {1}), b, {}, cfg);
    EXPECT_EQ(rec.squarefree, Verdict::indeterminate);
    EXPECT_FALSE(rec.disc_factorization.has_value());
    EXPECT_FALSE(rec.certified());
}

TEST(CertifyPolynomial, ExternalInput) {
    std::uint64_t S[] = {2, 5};
    auto rec = Certifier::certify_polynomial(ip({-1, -1, 0, 0, 0, 1}), S);
    EXPECT_EQ(rec.disc, 2869);  // 19 * 151
    EXPECT_EQ(rec.squarefree, Verdict::yes);
    EXPECT_TRUE(rec.coprime_to_S);
    EXPECT_EQ(rec.real_roots, 1);
    EXPECT_TRUE(rec.sn.certificate.has_value());
    EXPECT_THROW(Certifier::certify_polynomial(ip({1, 2}), S), std::invalid_argument);
}
