// sqfdisc command-line front end.
//
// Exit codes: 0 success, 2 search exhausted, 3 certification failure,
// 4 invalid target or arguments.

#include <sqfdisc/sqfdisc.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace sqfdisc;

namespace {

enum Exit { ok = 0, exhausted = 2, cert_failure = 3, invalid = 4 };

/// "1e6", "250000" or "10^5" as an exact integer.
Integer parse_count(const std::string& text) {
    auto split = text.find_first_of("eE^");
    if (split == std::string::npos) return make_integer(text);
    Integer mant = make_integer(text.substr(0, split));
    std::size_t ex = split + 1;
    if (text[split] == '^') return pow(mant, std::stoul(text.substr(ex)));
    return mant * pow(Integer(10), std::stoul(text.substr(ex)));
}

// ---------------------------------------------------------------- config

std::vector<std::string> config_values(const json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
        for (const auto& x : v) {
            auto part = config_values(x);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else if (v.is_string()) {
        out.push_back(v.get<std::string>());
    } else if (v.is_boolean()) {
        out.emplace_back(v.get<bool>() ? "true" : "false");
    } else if (v.is_number()) {
        out.push_back(v.dump());
    } else if (!v.is_null()) {
        throw std::invalid_argument("config: unsupported value " + v.dump());
    }
    return out;
}

/// Fills options of `sub` that were not given on the command line from the
/// JSON object in `path`; keys are flag names without the dashes.
void apply_config(CLI::App& sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json cfg = json::parse(in);
    if (!cfg.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& [key, value] : cfg.items()) {
        std::string name = key;
        std::replace(name.begin(), name.end(), '_', '-');
        if (name == "config") continue;
        CLI::Option* opt = sub.get_option_no_throw("--" + name);
        if (!opt) throw std::invalid_argument("config: '" + key + "' is not an option of '" + sub.get_name() + "'");
        if (opt->count() > 0) continue;  // flags override
        for (const auto& s : config_values(value)) opt->add_result(s);
        opt->run_callback();
    }
}

/// Required options are checked after the config file is merged, so either
/// source may supply them.
void require(const CLI::App& sub) {
    static const std::map<std::string, std::vector<std::string>> needed{
        {"generate", {"n", "signature"}}, {"count", {"n", "signature"}}, {"explain", {"n", "signature"}},
        {"verify", {"poly"}},            {"density", {"params"}},       {"brakenhoff", {"n", "p"}}};
    for (const auto& name : needed.at(sub.get_name()))
        if (sub.get_option("--" + name)->count() == 0) throw std::invalid_argument("--" + name + " is required (flag or config)");
}

// ---------------------------------------------------------------- options

struct TargetArgs {
    int n = 2;
    std::vector<int> signature;
    std::vector<std::uint64_t> avoid;
    std::uint64_t seed = 1;
    std::size_t q_max = 16;
    std::uint64_t scan_budget = 2'000'000;
    unsigned threads = 1;
    std::uint64_t trial_bound = 100'000;
    std::uint64_t rho_iterations = 1u << 22;
};

void add_target_options(CLI::App* sub, TargetArgs& t) {
    sub->add_option("--n", t.n, "degree (required)");
    sub->add_option("--signature", t.signature, "R,S: real roots and complex pairs (required)")->delimiter(',')->expected(2);
    sub->add_option("--avoid-primes", t.avoid, "primes that must not divide the discriminant")->delimiter(',');
    sub->add_option("--seed", t.seed, "seed for the parameter search");
    sub->add_option("--q-max", t.q_max, "number of scales q_j to try");
    sub->add_option("--scan-budget", t.scan_budget, "b values examined before giving up");
    sub->add_option("--threads", t.threads, "worker threads");
    sub->add_option("--trial-bound", t.trial_bound, "trial division bound for factoring");
    sub->add_option("--rho-iterations", t.rho_iterations, "Pollard rho budget per factorization");
}

GenerationTarget make_target(const TargetArgs& a) {
    if (a.signature.size() != 2) throw InvalidTarget("--signature takes R,S");
    GenerationTarget t;
    t.n = a.n;
    t.r = a.signature[0];
    t.s = a.signature[1];
    t.S = a.avoid;
    t.seed = a.seed;
    t.q_max = a.q_max;
    t.scan_budget = a.scan_budget;
    t.threads = std::max(1u, a.threads);
    t.certify.budget = {a.trial_bound, a.rho_iterations};
    return t;
}

// ---------------------------------------------------------------- commands

int run_generate(const TargetArgs& args, std::size_t budget, const std::string& bound, bool sn, const std::string& out_path) {
    GenerationTarget t = make_target(args);
    t.record_budget = budget;
    t.certify.sn_evidence = sn;
    if (!bound.empty()) t.N = parse_count(bound);
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw std::invalid_argument("cannot open " + out_path);
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    auto stats = generate_stream(t, [&](const DiscRecord& r) {
        os << to_jsonl(r);
        os.flush();
        return true;
    });
    std::cerr << "scanned " << stats.scanned << ", emitted " << stats.emitted << ", not squarefree " << stats.not_squarefree
              << ", indeterminate " << stats.indeterminate << "\n";
    for (const auto& line : stats.log) std::cerr << line << "\n";
    return ok;
}

int run_verify(const std::vector<std::string>& coeffs, const std::vector<std::uint64_t>& avoid, std::uint64_t trial_bound,
               std::uint64_t rho) {
    std::vector<Integer> c;
    for (const auto& s : coeffs) c.push_back(make_integer(s));
    IntPoly poly(c);
    CertifyConfig cfg;
    cfg.budget = {trial_bound, rho};
    auto rec = Certifier::certify_polynomial(poly, normalize_prime_set(avoid), cfg);
    auto j = to_json(rec);
    j["certified"] = rec.certified();
    std::cout << j.dump(2) << "\n";
    return ok;
}

int run_density(const std::string& params_path, std::vector<std::uint64_t> avoid, std::uint64_t scan_length, std::uint64_t cutoff,
                unsigned threads, bool csv) {
    std::ifstream in(params_path);
    if (!in) throw std::invalid_argument("cannot open " + params_path);
    json j = json::parse(in);
    FamilyParams params = family_params_from_json(j);
    if (avoid.empty() && j.contains("S"))
        for (const auto& p : j["S"]) avoid.push_back(p.is_string() ? std::stoull(p.get<std::string>()) : p.get<std::uint64_t>());
    auto rep = density_report(params, normalize_prime_set(avoid), scan_length, cutoff, std::max(1u, threads));
    if (csv) {
        std::cout << "p,a_p_exact,a_p_decimal,method\n";
        for (const auto& [p, d] : rep.profile.densities)
            std::cout << p << "," << exact(d.value) << "," << decimal(d.value) << "," << to_string(d.method) << "\n";
    } else {
        auto out = to_json(rep);
        out["params"] = to_json(params);
        std::cout << out.dump(2) << "\n";
    }
    return ok;
}

int run_brakenhoff(int n, std::uint64_t p, bool exhaustive, std::uint64_t samples, std::uint64_t seed, const std::string& work_limit) {
    BrakenhoffConfig cfg;
    cfg.exhaustive = exhaustive;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.work_limit = to_u64(parse_count(work_limit));
    Rational formula = brakenhoff_density(n, p);
    auto emp = brakenhoff_empirical(n, p, cfg);
    ordered_json j;
    j["n"] = n;
    j["p"] = p;
    j["formula"] = exact(formula);
    j["formula_decimal"] = decimal(formula);
    j["empirical"] = to_json(emp);
    if (exhaustive) j["agrees"] = emp.fraction == formula;
    else j["z_score"] = emp.std_error > 0 ? (emp.mean - to_double(formula)) / emp.std_error : 0.0;
    std::cout << j.dump(2) << "\n";
    return ok;
}

int run_count(const TargetArgs& args, const std::vector<std::string>& checkpoints, std::uint64_t cutoff, bool sn) {
    GenerationTarget t = make_target(args);
    t.certify.sn_evidence = sn;
    std::vector<Integer> cps;
    for (const auto& s : checkpoints) cps.push_back(parse_count(s));
    CountConfig cfg;
    cfg.cutoff = cutoff;
    auto rep = count_distinct_discriminants(t, cps, cfg);
    std::cout << to_json(rep).dump(2) << "\n";
    return ok;
}

ordered_json check(const std::string& what, bool passed, const std::string& detail = {}) {
    ordered_json j;
    j["check"] = what;
    j["passed"] = passed;
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

int run_explain(const TargetArgs& args) {
    GenerationTarget t = make_target(args);
    auto plan = plan_generation(t);
    const auto& c = plan.cert;
    const int n = c.n;
    ordered_json checks = ordered_json::array();

    checks.push_back(check("R = x^n - p0^(n-1) x + p0 irreducible mod p1, R' splits into n-1 distinct roots",
                           verify_eisenstein_pair(n, {c.p0, c.p1, c.R, c.rprime_roots})));
    auto levels = critical_levels(n, c.a_prime);
    checks.push_back(check("critical levels of a' pairwise distinct", pairwise_distinct(levels)));
    std::set<Integer> reduced;
    for (const auto& x : levels) reduced.insert(mod(x, from_u64(c.p2)));
    checks.push_back(check("critical levels of a' distinct mod p2", reduced.size() == levels.size()));
    auto base = check_family_conditions(c.base_a(), c);
    checks.push_back(check("base residues satisfy the family conditions", base.empty(), base.empty() ? "" : base.front()));
    auto chosen = check_family_conditions(plan.region.A, c);
    checks.push_back(check("chosen A satisfies the family conditions", chosen.empty(), chosen.empty() ? "" : chosen.front()));
    bool cert_ok = true;
    std::string cert_detail;
    try {
        verify_certificate(c);
    } catch (const CertificationFailure& e) {
        cert_ok = false;
        cert_detail = e.what();
    }
    checks.push_back(check("full certificate re-verification", cert_ok, cert_detail));
    int roots = real_root_count(build_P(n, std::span<const Integer>(plan.region.A), plan.region.witness_B));
    checks.push_back(check("P_{A,B} has r real roots at the witness B", roots == t.r, "real roots " + std::to_string(roots)));
    checks.push_back(check("witness B lies in I", plan.region.I.contains(plan.region.witness_B)));

    ordered_json j;
    j["certificate"] = to_json(c);
    j["region"] = to_json(plan.region);
    j["first_family"] = to_json(scale_params(plan.region, c, Integer(1)));
    j["checks"] = checks;
    std::cout << j.dump(2) << "\n";
    bool all = std::all_of(checks.begin(), checks.end(), [](const ordered_json& x) { return x["passed"].get<bool>(); });
    return all ? ok : cert_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monic polynomials with squarefree discriminant, prescribed signature and avoided primes"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with the same keys as the flags; flags override")->check(CLI::ExistingFile);

    TargetArgs gen_args;
    std::size_t budget = 10;
    std::string bound, out_path;
    bool gen_no_sn = false;
    auto* gen = app.add_subcommand("generate", "emit certified records as JSON lines");
    add_target_options(gen, gen_args);
    gen->add_option("--budget", budget, "number of records to emit");
    gen->add_option("--bound", bound, "only emit records with |disc| <= N");
    gen->add_option("--out", out_path, "write JSONL here instead of stdout");
    gen->add_flag("--no-sn-evidence", gen_no_sn, "skip Frobenius cycle-type sampling");

    std::vector<std::string> poly;
    std::vector<std::uint64_t> verify_avoid;
    std::uint64_t verify_trial = 100'000, verify_rho = 1u << 22;
    auto* ver = app.add_subcommand("verify", "certify one externally supplied polynomial");
    ver->add_option("--poly", poly, "coefficients c0,c1,...,1 (required)")->delimiter(',');
    ver->add_option("--avoid-primes", verify_avoid)->delimiter(',');
    ver->add_option("--trial-bound", verify_trial);
    ver->add_option("--rho-iterations", verify_rho);

    std::string params_path;
    std::vector<std::uint64_t> dens_avoid;
    std::uint64_t scan_length = 10'000, dens_cutoff = 1000;
    unsigned dens_threads = 1;
    bool csv = false;
    auto* den = app.add_subcommand("density", "squarefree fraction of a family against the sieve prediction");
    den->add_option("--params", params_path, "family parameters as JSON (required)");
    den->add_option("--avoid-primes", dens_avoid)->delimiter(',');
    den->add_option("--scan-length", scan_length);
    den->add_option("--cutoff", dens_cutoff, "sieve prime cutoff");
    den->add_option("--threads", dens_threads);
    den->add_flag("--csv", csv, "print the local densities as CSV");

    int bn = 2;
    std::uint64_t bp = 2, samples = 100'000, bseed = 1;
    std::string work_limit = "1e6";
    bool exhaustive = false;
    auto* bra = app.add_subcommand("brakenhoff", "density of monic polynomials with p^2 not dividing the discriminant");
    bra->add_option("--n", bn, "(required)");
    bra->add_option("--p", bp, "(required)");
    auto* ex_flag = bra->add_flag("--exhaustive", exhaustive, "enumerate every residue tuple mod p^2");
    bra->add_option("--samples", samples)->excludes(ex_flag);
    bra->add_option("--seed", bseed);
    bra->add_option("--work-limit", work_limit, "largest p^(2n) enumerated");

    TargetArgs count_args;
    std::vector<std::string> checkpoints{"1e3", "1e4", "1e5", "1e6"};
    std::uint64_t count_cutoff = 1000;
    bool count_sn = false;
    auto* cnt = app.add_subcommand("count", "distinct squarefree discriminants below each checkpoint");
    add_target_options(cnt, count_args);
    cnt->add_option("--checkpoints", checkpoints, "increasing bounds N")->delimiter(',');
    cnt->add_option("--budget", count_args.scan_budget, "b values examined in total");
    cnt->add_option("--cutoff", count_cutoff, "sieve prime cutoff for the predicted density");
    cnt->add_flag("--sn-evidence", count_sn, "also sample Frobenius cycle types");

    TargetArgs explain_args;
    auto* exp = app.add_subcommand("explain", "print and re-verify the parameter certificate chain");
    add_target_options(exp, explain_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) apply_config(*sub, config_path);
        require(*sub);
        if (sub == gen) return run_generate(gen_args, budget, bound, !gen_no_sn, out_path);
        if (sub == ver) return run_verify(poly, verify_avoid, verify_trial, verify_rho);
        if (sub == den) return run_density(params_path, dens_avoid, scan_length, dens_cutoff, dens_threads, csv);
        if (sub == bra) return run_brakenhoff(bn, bp, exhaustive, samples, bseed, work_limit);
        if (sub == cnt) return run_count(count_args, checkpoints, count_cutoff, count_sn);
        if (sub == exp) return run_explain(explain_args);
    } catch (const SearchExhausted& e) {
        std::cerr << "search exhausted: " << e.what() << "\n";
        return exhausted;
    } catch (const CertificationFailure& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return cert_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid target: " << e.what() << "\n";
        return invalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid target: " << e.what() << "\n";
        return invalid;
    } catch (const json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return invalid;
    }
    return invalid;
}
