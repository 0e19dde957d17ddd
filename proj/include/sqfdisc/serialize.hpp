#pragma once

// JSON forms of the library's values. Big integers are decimal strings and
// rationals "num/den" strings, so nothing passes through a double.

#include "certify.hpp"
#include "paramsearch.hpp"
#include "pipeline.hpp"
#include "sieve.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>

namespace sqfdisc {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline std::string exact(const Rational& q) { return q.get_num().get_str(10) + "/" + q.get_den().get_str(10); }

/// 12 significant digits.
inline std::string decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}
inline std::string decimal(const Rational& q) { return decimal(to_double(q)); }

inline ordered_json strings(std::span<const Integer> v) {
    ordered_json out = ordered_json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline ordered_json to_json(const RationalInterval& iv) {
    return ordered_json::array({iv.lo ? ordered_json(exact(*iv.lo)) : ordered_json(nullptr),
                                iv.hi ? ordered_json(exact(*iv.hi)) : ordered_json(nullptr)});
}

inline RationalInterval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval: expected [lo, hi]");
    RationalInterval iv;
    if (!j[0].is_null()) iv.lo = make_rational(j[0].get<std::string>());
    if (!j[1].is_null()) iv.hi = make_rational(j[1].get<std::string>());
    return iv;
}

inline ordered_json to_json(const FamilyParams& f) {
    ordered_json j;
    j["n"] = f.n;
    j["a"] = strings(f.a);
    j["b_residue"] = to_string(f.b_congruence.residue);
    j["b_modulus"] = to_string(f.b_congruence.modulus);
    j["q"] = to_string(f.q);
    j["b_interval"] = f.b_interval ? to_json(*f.b_interval) : ordered_json(nullptr);
    return j;
}

inline FamilyParams family_params_from_json(const json& j) {
    FamilyParams f;
    f.n = j.at("n").get<int>();
    for (const auto& x : j.at("a")) f.a.push_back(make_integer(x.get<std::string>()));
    f.b_congruence = {make_integer(j.value("b_residue", std::string("0"))), make_integer(j.value("b_modulus", std::string("1")))};
    f.q = make_integer(j.value("q", std::string("1")));
    if (j.contains("b_interval") && !j["b_interval"].is_null()) f.b_interval = interval_from_json(j["b_interval"]);
    f.validate();
    return f;
}

inline ordered_json to_json(const Factorization& f) {
    ordered_json out = ordered_json::array();
    for (const auto& pp : f.factors) out.push_back(ordered_json::array({to_string(pp.prime), pp.exponent}));
    return out;
}

inline ordered_json to_json(const SnReport& s) {
    ordered_json j;
    j["sampled_primes"] = s.sampled_primes;
    ordered_json types = ordered_json::array();
    for (const auto& [t, count] : s.cycle_types) types.push_back({{"type", t}, {"count", count}});
    j["cycle_types"] = types;
    if (s.certificate) {
        j["certificate"] = {{"criterion", s.certificate->criterion},
                            {"transitive_prime", s.certificate->transitive_prime},
                            {"primitive_prime", s.certificate->primitive_prime},
                            {"transposition_prime", s.certificate->transposition_prime}};
    } else {
        j["certificate"] = nullptr;
    }
    return j;
}

inline ordered_json to_json(const DiscRecord& r) {
    ordered_json j;
    j["n"] = r.n;
    j["q"] = to_string(r.q);
    j["b"] = to_string(r.b);
    j["poly"] = strings(r.poly.coeffs());
    j["disc"] = to_string(r.disc);
    j["disc_factorization"] = r.disc_factorization ? to_json(*r.disc_factorization) : ordered_json(nullptr);
    j["squarefree"] = to_string(r.squarefree);
    j["coprime_to_S"] = r.coprime_to_S;
    j["real_roots"] = r.real_roots;
    j["irreducibility_witness"] = r.irreducibility_witness ? ordered_json(*r.irreducibility_witness) : ordered_json(nullptr);
    j["sn_evidence"] = to_json(r.sn);
    j["primality"] = describe(r.primality);
    return j;
}

inline std::string to_jsonl(const DiscRecord& r) { return to_json(r).dump() + "\n"; }

inline ordered_json to_json(const Congruence& c) { return {{"residue", to_string(c.residue)}, {"modulus", to_string(c.modulus)}}; }

inline ordered_json to_json(const ParamCertificate& c) {
    ordered_json j;
    j["n"] = c.n;
    j["S"] = c.S;
    j["p0"] = c.p0;
    j["p1"] = c.p1;
    j["R"] = strings(c.R.coeffs());
    j["rprime_roots"] = c.rprime_roots;
    ordered_json ap = ordered_json::array();
    for (const auto& x : c.a_prime) ap.push_back(exact(x));
    j["a_prime"] = ap;
    j["p2"] = c.p2;
    ordered_json ac = ordered_json::array();
    for (const auto& x : c.a_congruences) ac.push_back(to_json(x));
    j["a_congruences"] = ac;
    j["b1"] = c.b1;
    ordered_json bp = ordered_json::object();
    for (auto [p, r] : c.b_p) bp[std::to_string(p)] = r;
    j["b_p"] = bp;
    j["b_congruence"] = to_json(c.b_congruence);
    j["assembled_modulus"] = to_string(c.assembled_modulus);
    return j;
}

inline ordered_json to_json(const SignatureRegion& r) {
    return {{"target_r", r.target_r}, {"A", strings(r.A)}, {"I", to_json(r.I)}, {"witness_B", exact(r.witness_B)}};
}

inline ordered_json to_json(const LocalDensity& d) {
    return {{"p", d.p}, {"a_p_exact", exact(d.value)}, {"a_p_decimal", decimal(d.value)}, {"method", to_string(d.method)}};
}

inline ordered_json to_json(const SieveProfile& prof) {
    ordered_json j;
    j["cutoff"] = prof.cutoff;
    j["factors"] = prof.system.factors.size();
    j["tail_bound"] = exact(prof.tail_bound);
    j["product_lower"] = exact(prof.product_lower);
    j["product_lower_decimal"] = decimal(prof.product_lower);
    j["product_upper"] = exact(prof.product_upper);
    j["product_upper_decimal"] = decimal(prof.product_upper);
    j["exceptional_complete"] = prof.exceptional_complete;
    ordered_json ds = ordered_json::array();
    for (const auto& [p, d] : prof.densities) ds.push_back(to_json(d));
    j["densities"] = ds;
    return j;
}

inline ordered_json to_json(const DensityReport& r) {
    ordered_json j;
    j["scanned"] = r.scanned;
    j["squarefree"] = r.squarefree;
    j["indeterminate"] = r.indeterminate;
    j["empirical"] = exact(r.empirical);
    j["empirical_decimal"] = decimal(r.empirical);
    j["sigma"] = decimal(r.sigma);
    j["consistent_3sigma"] = r.consistent();
    j["profile"] = to_json(r.profile);
    return j;
}

inline ordered_json to_json(const RunReport& r) {
    ordered_json j;
    j["params"] = to_json(r.params);
    j["records_scanned"] = r.records_scanned;
    j["squarefree_count"] = r.squarefree_count;
    j["indeterminate_count"] = r.indeterminate_count;
    j["distinct_discriminants"] = r.distinct_discriminants;
    ordered_json cps = ordered_json::array();
    for (const auto& c : r.checkpoints) cps.push_back({{"N", to_string(c.N)}, {"distinct", c.distinct}});
    j["checkpoints"] = cps;
    j["empirical_density"] = exact(r.empirical_density);
    j["empirical_density_decimal"] = decimal(r.empirical_density);
    j["predicted_density"] = {exact(r.predicted_lower), exact(r.predicted_upper)};
    j["predicted_density_decimal"] = {decimal(r.predicted_lower), decimal(r.predicted_upper)};
    j["exponent_fit"] = r.exponent_fit ? ordered_json(*r.exponent_fit) : ordered_json(nullptr);
    j["saturated"] = r.saturated;
    j["log"] = r.log;
    return j;
}

inline ordered_json to_json(const EmpiricalDensity& e) {
    ordered_json j;
    j["exhaustive"] = e.exhaustive;
    j["trials"] = e.trials;
    j["hits"] = e.hits;
    j["fraction"] = exact(e.fraction);
    j["mean"] = decimal(e.mean);
    j["std_error"] = decimal(e.std_error);
    return j;
}

}  // namespace sqfdisc
