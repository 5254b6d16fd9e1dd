// Command-line front end: check families for clusters, run exact extremal
// searches, count cluster isomorphism classes, trace the cyclic-permutation
// aggregation, and run seeded randomized verification suites.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clusterforge/clusters.hpp"
#include "clusterforge/cycle.hpp"
#include "clusterforge/family_io.hpp"
#include "clusterforge/operators.hpp"
#include "clusterforge/random_families.hpp"
#include "clusterforge/report.hpp"
#include "clusterforge/search.hpp"

namespace cf = clusterforge;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct GlobalFlags {
    bool json = false;
    int threads = 1;
    bool force = false;
};

void emit(const cf::Report& report, bool json) {
    if (json)
        std::cout << report.to_json() << '\n';
    else
        std::cout << report.to_text();
}

cf::ordered_json rational_json(const cf::Rational& r) { return r.str(); }

cf::ordered_json witness_json(const cf::FoundCluster& found) {
    cf::ordered_json w = cf::ordered_json::object();
    cf::ordered_json sets = cf::ordered_json::array();
    for (cf::KSet s : found.cluster.sets) sets.push_back(cf::kset_to_json(s));
    w["sets"] = sets;
    w["union_size"] = found.cluster.union_size;
    if (found.simple) {
        cf::ordered_json simple = cf::ordered_json::object();
        simple["b"] = cf::kset_to_json(found.simple->b);
        simple["b_prime"] = cf::kset_to_json(found.simple->b_prime);
        cf::ordered_json reducers = cf::ordered_json::array();
        for (cf::KSet s : found.simple->reducers) reducers.push_back(cf::kset_to_json(s));
        simple["reducers"] = reducers;
        simple["labels"] = found.simple->labels;
        w["simple_form"] = simple;
    }
    return w;
}

// ---------------------------------------------------------------- check ---

int run_check(const std::string& file, int d, bool simple, const GlobalFlags& flags) {
    cf::Family f = cf::read_family_file(file, d);
    cf::Report report;
    report.command = "check";
    report.params = f.params;
    report.details["file"] = file;
    report.details["mode"] = simple ? "simple_cluster" : "cluster";
    report.details["family_size"] = f.size();
    auto found = cf::find_cluster(f, d, simple);
    report.details["cluster_found"] = found.has_value();
    if (found) {
        report.details["witness"] = witness_json(*found);
        report.outcome = "fail";
        report.exit_code = exit_violation;
    } else {
        report.outcome = "pass";
        report.exit_code = exit_pass;
    }
    emit(report, flags.json);
    return report.exit_code;
}

// --------------------------------------------------------------- search ---

cf::ordered_json census_json(const cf::ExtremalCensus& census) {
    cf::ordered_json c = cf::ordered_json::object();
    c["stars"] = census.stars;
    c["full"] = census.full;
    c["other"] = census.other;
    return c;
}

int run_search(int n, int k, int d, bool simple, bool weighted, long long max_nodes,
               double max_seconds, int reps, const GlobalFlags& flags) {
    cf::Params params{n, k, d};
    cf::SearchMode mode = weighted ? cf::SearchMode::weighted
                          : simple ? cf::SearchMode::simple_cluster_free
                                   : cf::SearchMode::cluster_free;
    cf::SearchProblem problem{params, mode, {max_nodes, max_seconds}, flags.force,
                              flags.threads, reps};
    cf::SearchResult result = mode == cf::SearchMode::weighted ? cf::max_weighted(problem)
                                                               : cf::max_cluster_free(problem);
    const bool regime = cf::mode_regime_ok(params, mode);
    cf::Report report;
    report.command = "search";
    report.params = params;
    report.details["mode"] = cf::to_string(mode);
    report.details["optimum"] = result.optimum;
    if (regime) report.details["expected_optimum"] = cf::mode_expected_optimum(params, mode);
    report.details["exhausted"] = result.exhausted;
    report.details["extremal_count"] = result.extremal_count;
    report.details["census"] = census_json(result.census);
    cf::ordered_json rep_arr = cf::ordered_json::array();
    for (const cf::Family& r : result.representatives) rep_arr.push_back(cf::family_to_json(r));
    report.details["representatives"] = rep_arr;

    if (!result.exhausted) {
        report.outcome = "fail";
        report.exit_code = exit_budget;
    } else if (!regime) {
        report.outcome = "value";  // exploratory run, nothing asserted
        report.exit_code = exit_pass;
    } else {
        bool ok = result.optimum == cf::mode_expected_optimum(params, mode);
        if (mode == cf::SearchMode::cluster_free && !(d == 2 && n == 2 * k))
            ok = ok && result.census.other == 0 && result.census.stars == n;
        report.outcome = ok ? "pass" : "fail";
        report.exit_code = ok ? exit_pass : exit_violation;
    }
    emit(report, flags.json);
    return report.exit_code;
}

// --------------------------------------------------------------- census ---

int run_census(int k, int d, bool simple, bool emit_reps, long long tuple_budget,
               const GlobalFlags& flags) {
    cf::Report report;
    report.command = "census";
    report.params = cf::Params{2 * k, k, d};
    report.details["kind"] = simple ? "simple" : "all";
    std::vector<cf::CanonicalCluster> classes =
        simple ? cf::census_simple_classes(k, d) : cf::census_all_classes(k, d, tuple_budget);
    report.details["class_count"] = static_cast<long long>(classes.size());
    if (emit_reps) {
        cf::ordered_json arr = cf::ordered_json::array();
        for (const cf::CanonicalCluster& c : classes) {
            cf::ordered_json entry = cf::ordered_json::object();
            entry["support_size"] = c.support_size;
            entry["sets"] = c.sets();
            arr.push_back(entry);
        }
        report.details["representatives"] = arr;
    }
    report.outcome = "value";
    report.exit_code = exit_pass;
    emit(report, flags.json);
    return report.exit_code;
}

// ---------------------------------------------------------- cycle-stats ---

cf::ordered_json trace_json(const cf::AggregateTrace& trace) {
    cf::ordered_json t = cf::ordered_json::object();
    t["hypothesis_ok"] = trace.hypothesis_ok;
    if (!trace.hypothesis_ok) {
        t["hypothesis_message"] = trace.hypothesis_message;
        return t;
    }
    t["boundary_two_k"] = trace.boundary_two_k;
    t["counts"] = trace.partition.counts;
    t["total_permutations"] = trace.partition.total;
    t["incidence_factor"] = trace.incidence_factor;
    t["sum_arcs_outside"] = trace.sum_arcs_outside;
    t["sum_arcs_star"] = trace.sum_arcs_star;
    t["outside_identity_ok"] = trace.outside_identity_ok;
    t["star_identity_ok"] = trace.star_identity_ok;
    t["star_sum_bound_ok"] = trace.star_sum_bound_ok;
    t["lhs"] = rational_json(trace.lhs);
    t["combined_bound"] = rational_json(trace.combined_bound);
    t["regrouped_bound"] = rational_json(trace.regrouped_bound);
    t["regroup_ok"] = trace.regroup_ok;
    t["coefficients_ok"] = trace.coefficients_ok;
    t["final_bound"] = rational_json(trace.final_bound);
    t["chain_ok"] = trace.chain_ok;
    t["equality"] = trace.equality;
    t["equality_partition_ok"] = trace.equality_partition_ok;
    return t;
}

int run_cycle_stats(const std::string& file, const std::string& fstar_file,
                    const GlobalFlags& flags) {
    cf::Family f = cf::read_family_file(file, 2);
    cf::Family fstar = cf::read_family_file(fstar_file, 2);
    cf::AggregateTrace trace = cf::aggregate_inequality(f, fstar);
    cf::Report report;
    report.command = "cycle-stats";
    report.params = f.params;
    report.details["file"] = file;
    report.details["fstar_file"] = fstar_file;
    report.details["family_size"] = f.size();
    report.details["fstar_size"] = fstar.size();
    report.details["trace"] = trace_json(trace);
    bool ok = trace.ok() && trace.equality_partition_ok;
    report.outcome = ok ? "pass" : "fail";
    report.exit_code = ok ? exit_pass : exit_violation;
    emit(report, flags.json);
    return report.exit_code;
}

// --------------------------------------------------------------- verify ---

struct SuiteResult {
    std::string name;
    long long instances = 0;
    long long violations = 0;
    cf::ordered_json details = cf::ordered_json::object();
};

SuiteResult suite_identities(std::uint64_t seed, long long trials) {
    SuiteResult result;
    result.name = "identities";
    std::mt19937_64 rng(seed);
    const cf::Params shapes[] = {cf::Params{6, 2, 2}, cf::Params{7, 3, 3}};
    long long sum_identity_failures = 0;
    long long bound_failures = 0;
    long long link_complement_failures = 0;
    for (const cf::Params& params : shapes) {
        for (long long t = 0; t < trials; ++t) {
            double density = 0.05 + 0.9 * uniform01(rng);
            cf::Family f = cf::random_family(params, density, rng);
            ++result.instances;
            auto [lhs, rhs] = cf::check_sum_identity(f);
            if (lhs != rhs) ++sum_identity_failures;
            if (!cf::unique_extension_bound(f).holds()) ++bound_failures;
            int x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(params.n));
            long long both = cf::link(f, x).size() +
                             cf::link(cf::complement_family(f), x).size();
            if (both != cf::binom(params.n - 1, params.k - 1)) ++link_complement_failures;
        }
    }
    result.violations = sum_identity_failures + bound_failures + link_complement_failures;
    result.details["sum_identity_failures"] = sum_identity_failures;
    result.details["unique_extension_bound_failures"] = bound_failures;
    result.details["link_complement_failures"] = link_complement_failures;
    return result;
}

SuiteResult suite_trianglepart(std::uint64_t seed, long long trials) {
    SuiteResult result;
    result.name = "trianglepart";
    std::mt19937_64 rng(seed);
    cf::Params params{7, 3, 3};
    long long hypothesis_failures = 0;
    for (long long t = 0; t < trials; ++t) {
        double density = 0.05 + 0.6 * uniform01(rng);
        cf::Family f = cf::random_family(params, density, rng);
        cf::Family fstar = cf::cluster_members(f, params.d);
        int x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(params.n));
        cf::ViolationReport report = cf::check_link_clusters(f, fstar, x, params.d);
        ++result.instances;
        if (report.kind == cf::ViolationReport::Kind::violation) ++result.violations;
        if (report.kind == cf::ViolationReport::Kind::hypothesis_failure) ++hypothesis_failures;
    }
    result.details["hypothesis_failures"] = hypothesis_failures;
    return result;
}

SuiteResult suite_propint(std::uint64_t seed, long long trials) {
    SuiteResult result;
    result.name = "propint";
    std::mt19937_64 rng(seed);
    cf::Params params{7, 3, 3};
    long long hypothesis_failures = 0;
    long long star_fallbacks = 0;
    for (long long t = 0; t < trials; ++t) {
        cf::GeneratedFamily gen =
            cf::random_cluster_free_family(params, /*simple_only=*/true, 0.3, 40, rng);
        if (gen.info.method == "star_subset") ++star_fallbacks;
        cf::ViolationReport report = cf::check_pair_intersections(gen.family, params.d);
        ++result.instances;
        if (report.kind == cf::ViolationReport::Kind::violation) ++result.violations;
        if (report.kind == cf::ViolationReport::Kind::hypothesis_failure) ++hypothesis_failures;
    }
    result.details["hypothesis_failures"] = hypothesis_failures;
    result.details["star_fallbacks"] = star_fallbacks;
    return result;
}

SuiteResult suite_cycle(std::uint64_t seed, long long trials, int n, int k) {
    SuiteResult result;
    result.name = "cycle";
    std::mt19937_64 rng(seed);
    cf::Params params{n, k, 2};
    long long incidence_failures = 0;
    long long expected_incidence = 1;
    for (int i = 2; i <= k; ++i) expected_incidence *= i;
    for (int i = 2; i <= n - k; ++i) expected_incidence *= i;
    cf::for_each_kset(n, k, [&](cf::KSet b) {
        if (cf::incidence_count(b, params) != expected_incidence) ++incidence_failures;
    });

    long long claim_violations = 0;
    long long aggregate_violations = 0;
    long long equality_mismatches = 0;
    long long equality_hits = 0;
    auto run_instance = [&](const cf::Family& f) {
        cf::Family fstar = cf::cluster_members(f, 2);
        ++result.instances;
        cf::for_each_cyclic_perm(n, [&](const cf::CyclicPerm& sigma) {
            cf::ClaimReport claims = cf::verify_cycle_claims(f, fstar, sigma);
            if (!claims.ok()) ++claim_violations;
        });
        cf::AggregateTrace trace = cf::aggregate_inequality(f, fstar);
        if (!trace.ok() || !trace.equality_partition_ok) ++aggregate_violations;
        bool is_full = static_cast<long long>(f.size()) == cf::binom(n, k);
        bool is_max_star =
            cf::classify_family_shape(f).cls == cf::ExtremalClass::star && fstar.empty();
        if (trace.equality != (is_full || is_max_star)) ++equality_mismatches;
        if (trace.equality) ++equality_hits;
    };
    // The two shapes that attain the bound, then the random sweep.
    run_instance(cf::star(params, 1));
    run_instance(cf::full_family(params));
    for (long long t = 0; t < trials; ++t) {
        double density = 0.05 + 0.9 * uniform01(rng);
        run_instance(cf::random_family(params, density, rng));
    }
    result.violations =
        incidence_failures + claim_violations + aggregate_violations + equality_mismatches;
    result.details["incidence_expected"] = expected_incidence;
    result.details["incidence_failures"] = incidence_failures;
    result.details["claim_violations"] = claim_violations;
    result.details["aggregate_violations"] = aggregate_violations;
    result.details["equality_mismatches"] = equality_mismatches;
    result.details["equality_hits"] = equality_hits;
    return result;
}

SuiteResult suite_avgid(std::uint64_t seed, long long trials) {
    SuiteResult result;
    result.name = "avgid";
    std::mt19937_64 rng(seed);
    for (long long t = 0; t < trials; ++t) {
        size_t len = 1 + rng() % 12;
        std::vector<long long> rs(len);
        for (auto& r : rs) r = static_cast<long long>(rng() % 41);
        long long l = static_cast<long long>(rng() % 13);
        auto [lhs, rhs] = cf::avg_binom_bound(rs, l);
        ++result.instances;
        if (lhs < rhs) ++result.violations;
    }
    return result;
}

int run_verify(const std::string& suite, std::uint64_t seed, std::optional<long long> trials,
               int n, int k, const GlobalFlags& flags) {
    std::vector<SuiteResult> results;
    auto pick = [&](long long fallback) { return trials.value_or(fallback); };
    if (suite == "identities" || suite == "all")
        results.push_back(suite_identities(seed, pick(1000)));
    if (suite == "trianglepart" || suite == "all")
        results.push_back(suite_trianglepart(seed, pick(100)));
    if (suite == "propint" || suite == "all")
        results.push_back(suite_propint(seed, pick(100)));
    if (suite == "cycle" || suite == "all")
        results.push_back(suite_cycle(seed, pick(200), n, k));
    if (suite == "avgid" || suite == "all")
        results.push_back(suite_avgid(seed, pick(10000)));

    cf::Report report;
    report.command = "verify";
    report.params = cf::Params{n, k, 2};
    report.details["suite"] = suite;
    report.details["seed"] = seed;
    long long total_violations = 0;
    cf::ordered_json suites = cf::ordered_json::object();
    for (const SuiteResult& r : results) {
        cf::ordered_json entry = cf::ordered_json::object();
        entry["instances"] = r.instances;
        entry["violations"] = r.violations;
        for (auto it = r.details.begin(); it != r.details.end(); ++it)
            entry[it.key()] = it.value();
        suites[r.name] = entry;
        total_violations += r.violations;
    }
    report.details["suites"] = suites;
    report.details["total_violations"] = total_violations;
    report.outcome = total_violations == 0 ? "pass" : "fail";
    report.exit_code = total_violations == 0 ? exit_pass : exit_violation;
    emit(report, flags.json);
    return report.exit_code;
}

int env_threads() {
    if (const char* env = std::getenv("CLUSTERFORGE_THREADS")) {
        try {
            int value = std::stoi(env);
            if (value >= 1) return value;
        } catch (...) {
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of k-uniform set families: cluster detection, "
                 "isomorphism censuses, cyclic-permutation traces, extremal searches"};
    app.require_subcommand(1);
    GlobalFlags flags;
    flags.threads = env_threads();
    app.add_flag("--json", flags.json, "machine-readable single-line JSON report");
    app.add_option("--threads", flags.threads,
                   "worker threads for searches (default: CLUSTERFORGE_THREADS or 1)");
    app.add_flag("--force", flags.force, "run searches outside the validity regime");

    auto* check = app.add_subcommand("check", "test a family file for (simple) d-clusters");
    check->fallthrough();
    std::string check_file;
    int check_d = 2;
    bool check_simple = false;
    check->add_option("--file", check_file, "family file")->required()->check(CLI::ExistingFile);
    check->add_option("--d", check_d, "cluster size d")->required();
    check->add_flag("--simple", check_simple, "look for simple d-clusters only");

    auto* search = app.add_subcommand("search", "exact extremal search over all k-set families");
    search->fallthrough();
    int s_n = 0, s_k = 0, s_d = 0, s_reps = 8;
    bool s_simple = false, s_weighted = false;
    long long s_max_nodes = 1'000'000'000;
    double s_max_seconds = 600.0;
    search->add_option("--n", s_n, "ground set size")->required();
    search->add_option("--k", s_k, "set size")->required();
    search->add_option("--d", s_d, "cluster size")->required();
    auto* simple_flag =
        search->add_flag("--simple", s_simple, "forbid simple d-clusters instead of d-clusters");
    search->add_flag("--weighted", s_weighted, "maximize k|marked| + n|rest| instead of size")
        ->excludes(simple_flag);
    search->add_option("--max-nodes", s_max_nodes, "node budget (default 1e9)");
    search->add_option("--max-seconds", s_max_seconds, "time budget (default 600)");
    search->add_option("--reps", s_reps, "maximum representatives to report (default 8)");

    auto* census = app.add_subcommand("census", "count cluster isomorphism classes at n = 2k");
    census->fallthrough();
    int c_k = 0, c_d = 0;
    bool c_simple = false, c_emit = false;
    long long c_budget = 50'000'000;
    census->add_option("--k", c_k, "set size")->required();
    census->add_option("--d", c_d, "cluster size")->required();
    census->add_flag("--simple", c_simple, "simple d-clusters only");
    census->add_flag("--emit", c_emit, "include canonical representatives");
    census->add_option("--budget", c_budget, "tuple enumeration guard (default 5e7)");

    auto* cycle = app.add_subcommand(
        "cycle-stats", "aggregate arc counts over all cyclic permutations for (F, Fstar)");
    cycle->fallthrough();
    std::string cy_file, cy_fstar;
    cycle->add_option("--file", cy_file, "family file for F")
        ->required()
        ->check(CLI::ExistingFile);
    cycle->add_option("--fstar-file", cy_fstar, "family file for Fstar")
        ->required()
        ->check(CLI::ExistingFile);

    auto* verify = app.add_subcommand("verify", "seeded randomized verification suites");
    verify->fallthrough();
    std::string v_suite;
    std::uint64_t v_seed = 12345;
    long long v_trials = -1;
    int v_n = 6, v_k = 2;
    verify->add_option("suite", v_suite, "identities|trianglepart|propint|cycle|avgid|all")
        ->required()
        ->check(CLI::IsMember({"identities", "trianglepart", "propint", "cycle", "avgid", "all"}));
    verify->add_option("--seed", v_seed, "random seed (default 12345)");
    verify->add_option("--trials", v_trials, "instances per suite (default per suite)");
    verify->add_option("--n", v_n, "ground size for the cycle suite (default 6)");
    verify->add_option("--k", v_k, "set size for the cycle suite (default 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (app.got_subcommand(check))
            return run_check(check_file, check_d, check_simple, flags);
        if (app.got_subcommand(search))
            return run_search(s_n, s_k, s_d, s_simple, s_weighted, s_max_nodes, s_max_seconds,
                              s_reps, flags);
        if (app.got_subcommand(census))
            return run_census(c_k, c_d, c_simple, c_emit, c_budget, flags);
        if (app.got_subcommand(cycle)) return run_cycle_stats(cy_file, cy_fstar, flags);
        if (app.got_subcommand(verify))
            return run_verify(v_suite, v_seed,
                              v_trials >= 0 ? std::optional<long long>(v_trials) : std::nullopt,
                              v_n, v_k, flags);
    } catch (const cf::resource_guard_error& e) {
        std::cerr << "resource guard: " << e.what() << '\n';
        return exit_budget;
    } catch (const cf::family_parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_violation;
    }
    return exit_usage;
}
