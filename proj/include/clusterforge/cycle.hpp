#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "clusterforge/ground.hpp"
#include "clusterforge/rational.hpp"

namespace clusterforge {

/// Exhaustive enumeration of cyclic permutations is bounded at n <= 10
/// (9! representatives); callers beyond that get a resource_guard_error.
inline constexpr int max_cycle_ground = 10;

/// A cyclic arrangement of [1,n], rotation-canonicalized so order[0] == 1.
/// Two arrangements equal up to rotation compare equal; reflections are
/// distinct arrangements.
struct CyclicPerm {
    std::vector<int> order;

    int n() const { return static_cast<int>(order.size()); }

    /// Validates a permutation of [1,n] and rotates element 1 to front.
    static CyclicPerm of(std::vector<int> arrangement);

    bool operator==(const CyclicPerm&) const = default;
};

/// The n length-k arcs of sigma, indexed by starting point: arc i is
/// {order[i], order[i+1], ..., order[i+k-1]} with indices mod n.
std::vector<KSet> arcs(const CyclicPerm& sigma, int k);

/// Members of G that occur as arcs of sigma, with their starting points.
/// When k = n all n positional arcs coincide as sets; members then lists
/// every starting point for the one qualifying set.
struct ArcFamily {
    CyclicPerm perm;
    std::vector<std::pair<int, KSet>> members;

    int size() const { return static_cast<int>(members.size()); }
};
ArcFamily arc_family(const CyclicPerm& sigma, const Family& g);

/// Number of distinct member sets of G that are arcs of sigma (each set
/// counted once even when k = n makes all positions coincide).
long long arc_count(const CyclicPerm& sigma, const Family& g);

/// Visit every rotation-canonical cyclic permutation of [1,n], i.e. all
/// (n-1)! arrangements with 1 first, in lexicographic order of the tail.
template <typename Fn>
void for_each_cyclic_perm(int n, Fn&& fn) {
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i + 1;
    CyclicPerm sigma{std::move(order)};
    do {
        fn(static_cast<const CyclicPerm&>(sigma));
    } while (std::next_permutation(sigma.order.begin() + 1, sigma.order.end()));
}

/// Exact number of cyclic permutations having b as an arc; always equals
/// k!(n-k)! with k = |b|. Exhaustive over (n-1)! representatives, so the
/// n <= 10 guard applies.
long long incidence_count(KSet b, const Params& params);

/// Evaluation of the two per-permutation claims for a pair (F, Fstar):
/// (i) at most k arcs of F - Fstar, and (ii) when F - Fstar has at least
/// one arc, at most 2(k - that count) arcs of Fstar.
struct ClaimReport {
    bool hypothesis_ok = true;
    std::string hypothesis_message;
    long long arcs_outside = 0;  // |arcs of F - Fstar|
    long long arcs_star = 0;     // |arcs of Fstar|
    bool bound_outside_ok = false;
    bool star_bound_applicable = false;
    bool bound_star_ok = true;  // vacuously true when not applicable

    bool ok() const { return hypothesis_ok && bound_outside_ok && bound_star_ok; }
};

/// Hypothesis: Fstar ⊆ F, every disjoint pair of F lies in Fstar, and
/// 2 <= k <= n/2. A failing hypothesis is reported, not thrown.
ClaimReport verify_cycle_claims(const Family& f, const Family& fstar, const CyclicPerm& sigma);

/// counts[j] = number of rotation-canonical cyclic permutations carrying
/// exactly j arcs of F - Fstar, j = 0..k; the counts sum to (n-1)!.
struct CyclePartition {
    std::vector<long long> counts;
    long long total = 0;
};
CyclePartition cycle_partition(const Family& f, const Family& fstar);

/// Full trace of the aggregation over all cyclic permutations: the two
/// incidence identities, the combined and regrouped upper bounds, the
/// per-count coefficient comparison, and the final binomial bound, all in
/// exact arithmetic.
struct AggregateTrace {
    bool hypothesis_ok = true;
    std::string hypothesis_message;
    bool boundary_two_k = false;  // n == 2k: the equality analysis excludes this edge

    CyclePartition partition;
    long long incidence_factor = 0;   // k!(n-k)!
    long long sum_arcs_outside = 0;   // sum over sigma of |arcs of F - Fstar|
    long long sum_arcs_star = 0;      // sum over sigma of |arcs of Fstar|
    bool outside_identity_ok = false; // |F - Fstar|·factor == sum_arcs_outside == Σ j·counts[j]
    bool star_identity_ok = false;    // |Fstar|·factor == sum_arcs_star
    bool star_sum_bound_ok = false;   // sum_arcs_star <= n·counts[0] + Σ_{j>=1} 2(k-j)·counts[j]

    Rational lhs;              // |Fstar| + (n/k)|F - Fstar|
    Rational combined_bound;   // (n·c_0 + Σ 2(k-j)c_j + (n/k)·Σ j·c_j) / factor
    Rational regrouped_bound;  // (n·c_0 + n·c_k + Σ_{1<=j<=k-1} ((jn + 2k(k-j))/k)·c_j) / factor
    bool regroup_ok = false;   // combined_bound == regrouped_bound
    bool coefficients_ok = false;  // (jn + 2k(k-j))/k <= n for every 1 <= j <= k-1
    Rational final_bound;      // binom(n,k)
    bool chain_ok = false;     // lhs <= combined_bound <= final_bound plus all identities

    bool equality = false;             // lhs == final_bound
    bool equality_partition_ok = true; // equality with n > 2k forces counts[j] = 0 for 0 < j < k

    bool ok() const { return hypothesis_ok && chain_ok; }
};
AggregateTrace aggregate_inequality(const Family& f, const Family& fstar);

}  // namespace clusterforge
