#include "clusterforge/cycle.hpp"

#include <stdexcept>

namespace clusterforge {

namespace {

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_cycle_ground(int n) {
    if (n > max_cycle_ground)
        throw resource_guard_error("cyclic-permutation enumeration limited to n <= " +
                                   std::to_string(max_cycle_ground) + ", got " +
                                   std::to_string(n));
}

// Arcs by sliding window: drop the element leaving the window, add the
// one entering. Output is indexed by starting position.
std::vector<KSet> window_arcs(const std::vector<int>& order, int k) {
    const int n = static_cast<int>(order.size());
    std::vector<KSet> result(static_cast<size_t>(n));
    KSet window{0};
    for (int i = 0; i < k; ++i) window = window.with(order[static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i) {
        result[static_cast<size_t>(i)] = window;
        window = window.without(order[static_cast<size_t>(i)])
                     .with(order[static_cast<size_t>((i + k) % n)]);
    }
    return result;
}

// Distinct member sets of g among the arcs; distinct starting positions
// give distinct sets unless k = n, where all n arcs coincide.
long long distinct_member_arcs(const std::vector<KSet>& arc_sets, const Family& g) {
    const size_t n = arc_sets.size();
    if (g.params.k == static_cast<int>(n))
        return g.contains(arc_sets.front()) ? 1 : 0;
    long long count = 0;
    for (KSet a : arc_sets)
        if (g.contains(a)) ++count;
    return count;
}

}  // namespace

CyclicPerm CyclicPerm::of(std::vector<int> arrangement) {
    const int n = static_cast<int>(arrangement.size());
    if (n < 1 || n > max_ground_size)
        throw std::invalid_argument("cyclic arrangement must have between 1 and " +
                                    std::to_string(max_ground_size) + " entries");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : arrangement) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("arrangement is not a permutation of [1,n]");
        seen[static_cast<size_t>(v)] = 1;
    }
    size_t pivot = 0;
    while (arrangement[pivot] != 1) ++pivot;
    std::rotate(arrangement.begin(), arrangement.begin() + static_cast<long>(pivot),
                arrangement.end());
    return CyclicPerm{std::move(arrangement)};
}

std::vector<KSet> arcs(const CyclicPerm& sigma, int k) {
    if (k < 1 || k > sigma.n())
        throw std::invalid_argument("arc length must lie in [1,n]");
    return window_arcs(sigma.order, k);
}

ArcFamily arc_family(const CyclicPerm& sigma, const Family& g) {
    if (g.params.n != sigma.n())
        throw std::invalid_argument("family ground set does not match the permutation");
    ArcFamily result{sigma, {}};
    std::vector<KSet> arc_sets = window_arcs(sigma.order, g.params.k);
    for (int i = 0; i < static_cast<int>(arc_sets.size()); ++i)
        if (g.contains(arc_sets[static_cast<size_t>(i)]))
            result.members.emplace_back(i, arc_sets[static_cast<size_t>(i)]);
    return result;
}

long long arc_count(const CyclicPerm& sigma, const Family& g) {
    if (g.params.n != sigma.n())
        throw std::invalid_argument("family ground set does not match the permutation");
    return distinct_member_arcs(window_arcs(sigma.order, g.params.k), g);
}

long long incidence_count(KSet b, const Params& params) {
    check_cycle_ground(params.n);
    const int k = b.size();
    if (k < 1) throw std::invalid_argument("incidence target must be nonempty");
    for (int e : b.elements())
        if (e > params.n) throw std::invalid_argument("incidence target leaves [1,n]");
    long long count = 0;
    for_each_cyclic_perm(params.n, [&](const CyclicPerm& sigma) {
        for (KSet a : window_arcs(sigma.order, k))
            if (a == b) {
                ++count;
                return;
            }
    });
    return count;
}

namespace {

// Shared hypothesis for the per-permutation claims and the aggregate:
// Fstar inside F, 2 <= k <= n/2, and every disjoint pair captured.
std::string cycle_hypothesis_message(const Family& f, const Family& fstar) {
    if (fstar.params.n != f.params.n || fstar.params.k != f.params.k)
        return "subfamily parameters do not match";
    if (!fstar.subfamily_of(f)) return "the designated subfamily is not contained in the family";
    const int k = f.params.k;
    const int n = f.params.n;
    if (k < 2 || 2 * k > n) return "the claims need 2 <= k <= n/2";
    for (size_t i = 0; i < f.members.size(); ++i)
        for (size_t j = i + 1; j < f.members.size(); ++j) {
            if (!(f.members[i] & f.members[j]).empty()) continue;
            if (fstar.contains(f.members[i]) && fstar.contains(f.members[j])) continue;
            return "disjoint pair " + f.members[i].str() + ", " + f.members[j].str() +
                   " escapes the designated subfamily";
        }
    return {};
}

Family outside_part(const Family& f, const Family& fstar) {
    Family outside{f.params, {}};
    for (KSet b : f.members)
        if (!fstar.contains(b)) outside.members.push_back(b);
    return outside;
}

}  // namespace

ClaimReport verify_cycle_claims(const Family& f, const Family& fstar, const CyclicPerm& sigma) {
    if (sigma.n() != f.params.n)
        throw std::invalid_argument("permutation length does not match the ground set");
    ClaimReport report;
    report.hypothesis_message = cycle_hypothesis_message(f, fstar);
    report.hypothesis_ok = report.hypothesis_message.empty();
    Family outside = outside_part(f, fstar);
    std::vector<KSet> arc_sets = window_arcs(sigma.order, f.params.k);
    report.arcs_outside = distinct_member_arcs(arc_sets, outside);
    report.arcs_star = distinct_member_arcs(arc_sets, fstar);
    const int k = f.params.k;
    report.bound_outside_ok = report.arcs_outside <= k;
    report.star_bound_applicable = report.arcs_outside >= 1;
    report.bound_star_ok =
        !report.star_bound_applicable || report.arcs_star <= 2 * (k - report.arcs_outside);
    return report;
}

CyclePartition cycle_partition(const Family& f, const Family& fstar) {
    check_cycle_ground(f.params.n);
    if (fstar.params.n != f.params.n || fstar.params.k != f.params.k)
        throw std::invalid_argument("subfamily parameters do not match");
    Family outside = outside_part(f, fstar);
    CyclePartition partition;
    partition.counts.assign(static_cast<size_t>(f.params.k) + 1, 0);
    for_each_cyclic_perm(f.params.n, [&](const CyclicPerm& sigma) {
        long long j = distinct_member_arcs(window_arcs(sigma.order, f.params.k), outside);
        if (j >= static_cast<long long>(partition.counts.size()))
            partition.counts.resize(static_cast<size_t>(j) + 1, 0);
        ++partition.counts[static_cast<size_t>(j)];
        ++partition.total;
    });
    return partition;
}

AggregateTrace aggregate_inequality(const Family& f, const Family& fstar) {
    check_cycle_ground(f.params.n);
    const int n = f.params.n;
    const int k = f.params.k;
    AggregateTrace trace;
    trace.hypothesis_message = cycle_hypothesis_message(f, fstar);
    trace.hypothesis_ok = trace.hypothesis_message.empty();
    if (!trace.hypothesis_ok) return trace;
    trace.boundary_two_k = (n == 2 * k);

    Family outside = outside_part(f, fstar);
    trace.partition.counts.assign(static_cast<size_t>(k) + 1, 0);
    for_each_cyclic_perm(n, [&](const CyclicPerm& sigma) {
        std::vector<KSet> arc_sets = window_arcs(sigma.order, k);
        long long j = distinct_member_arcs(arc_sets, outside);
        long long s = distinct_member_arcs(arc_sets, fstar);
        ++trace.partition.counts[static_cast<size_t>(j)];  // hypothesis gives j <= k
        ++trace.partition.total;
        trace.sum_arcs_outside += j;
        trace.sum_arcs_star += s;
    });
    const std::vector<long long>& c = trace.partition.counts;
    trace.incidence_factor = factorial(k) * factorial(n - k);

    long long weighted_outside = 0;  // sum of j * c_j
    long long star_cap = static_cast<long long>(n) * c[0];  // claims' per-count cap on star arcs
    for (int j = 1; j <= k; ++j) {
        weighted_outside += static_cast<long long>(j) * c[static_cast<size_t>(j)];
        star_cap += 2LL * (k - j) * c[static_cast<size_t>(j)];
    }
    trace.outside_identity_ok =
        static_cast<long long>(outside.size()) * trace.incidence_factor ==
            trace.sum_arcs_outside &&
        trace.sum_arcs_outside == weighted_outside;
    trace.star_identity_ok =
        static_cast<long long>(fstar.size()) * trace.incidence_factor == trace.sum_arcs_star;
    trace.star_sum_bound_ok = trace.sum_arcs_star <= star_cap;

    const Rational ratio = Rational::of(n, k);
    trace.lhs = Rational::of(fstar.size()) + ratio * Rational::of(outside.size());
    const Rational factor = Rational::of(trace.incidence_factor);
    trace.combined_bound =
        (Rational::of(star_cap) + ratio * Rational::of(weighted_outside)) / factor;
    Rational regrouped = Rational::of(static_cast<long long>(n) *
                                      (c[0] + c[static_cast<size_t>(k)]));
    trace.coefficients_ok = true;
    for (int j = 1; j <= k - 1; ++j) {
        Rational coeff = Rational::of(static_cast<long long>(j) * n +
                                          2LL * k * (k - j),
                                      k);
        if (!(coeff <= Rational::of(n))) trace.coefficients_ok = false;
        regrouped = regrouped + coeff * Rational::of(c[static_cast<size_t>(j)]);
    }
    trace.regrouped_bound = regrouped / factor;
    trace.regroup_ok = trace.combined_bound == trace.regrouped_bound;
    trace.final_bound = Rational::of(binom(n, k));
    trace.chain_ok = trace.outside_identity_ok && trace.star_identity_ok &&
                     trace.star_sum_bound_ok && trace.regroup_ok && trace.coefficients_ok &&
                     trace.lhs <= trace.combined_bound &&
                     trace.combined_bound <= trace.final_bound;
    trace.equality = trace.lhs == trace.final_bound;
    bool middle_clear = true;
    for (int j = 1; j <= k - 1; ++j)
        if (c[static_cast<size_t>(j)] != 0) middle_clear = false;
    trace.equality_partition_ok = !trace.equality || trace.boundary_two_k || middle_clear;
    return trace;
}

}  // namespace clusterforge
