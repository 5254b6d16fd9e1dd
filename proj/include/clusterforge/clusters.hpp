#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clusterforge/ground.hpp"

namespace clusterforge {

/// d distinct k-sets with |union| <= 2k and empty common intersection.
struct ClusterWitness {
    std::vector<KSet> sets;
    int union_size = 0;
};

/// The special shape: b and b_prime meet exactly in the labels, and each
/// reducer removes exactly one label from b (b - reducers[i] = {labels[i]}).
/// For d = 2 the label and reducer lists are empty and the witness is just
/// a disjoint pair.
struct SimpleClusterWitness {
    KSet b;
    KSet b_prime;
    std::vector<KSet> reducers;
    std::vector<int> labels;

    /// b, b_prime, then the reducers, in witness order.
    std::vector<KSet> all_sets() const;
};

/// Compare two sets as sorted element lists (lexicographic). Differs from
/// numeric mask order: {1,4} precedes {2,3} here.
inline bool set_list_less(KSet a, KSet b) {
    if (a.bits == b.bits) return false;
    std::uint64_t diff = a.bits ^ b.bits;
    std::uint64_t low = diff & (~diff + 1);
    return (a.bits & low) != 0;
}

/// Isomorphism-invariant form of a cluster: members relabeled onto [1,u]
/// (u = support size) so that the sorted list of sorted element-lists is
/// minimal over all permutations of the support. Equal values <=> the
/// witnesses are related by a ground-set permutation.
struct CanonicalCluster {
    int support_size = 0;
    /// Sorted by set_list_less; bit i corresponds to label i+1.
    std::vector<std::uint64_t> masks;

    std::vector<std::vector<int>> sets() const;
    std::string str() const;

    bool operator==(const CanonicalCluster&) const = default;
    bool operator<(const CanonicalCluster& other) const;
};

/// True iff the d sets form a cluster: |union| <= 2k and empty intersection.
/// Throws std::invalid_argument when |sets| != params.d, on duplicates, or
/// on sets that are not k-subsets of [1,n].
bool is_cluster(const std::vector<KSet>& sets, const Params& params);

/// Role assignment satisfying the simple-cluster shape, if one exists.
/// All choices of (b, b_prime) among the given sets are tried in index
/// order and the first valid assignment is returned; the reducer-to-label
/// matching is forced once (b, b_prime) is fixed. Throws on wrong count
/// or duplicates.
std::optional<SimpleClusterWitness> as_simple_cluster(const std::vector<KSet>& sets,
                                                      const Params& params);

/// A cluster found inside a family. `simple` is populated exactly when the
/// search was restricted to simple clusters.
struct FoundCluster {
    ClusterWitness cluster;
    std::optional<SimpleClusterWitness> simple;
};

/// First d-subset of F (in lexicographic DFS order over the canonical
/// member order) that forms a cluster; with simple_only, the first that
/// forms a simple cluster. Returns nothing when F is cluster-free.
std::optional<FoundCluster> find_cluster(const Family& f, int d, bool simple_only);

/// The subfamily of sets belonging to at least one d-cluster within F:
/// the unique minimal choice of marked subfamily that contains every
/// d-cluster of F.
Family cluster_members(const Family& f, int d);

/// Minimal relabeling over all permutations of the witness's support.
/// Throws resource_guard_error when the support exceeds 16 elements or
/// the labeling enumeration would be too large.
CanonicalCluster canonicalize(const ClusterWitness& w);

/// Number of isomorphism classes of simple d-clusters made of k-sets.
/// The ground set is taken as [1,2k], which any cluster's support fits in.
long long census_simple(int k, int d);

/// Number of isomorphism classes of all d-clusters made of k-sets, ground
/// set [1,2k]. Throws resource_guard_error when the enumeration space
/// exceeds tuple_budget.
long long census_all(int k, int d, long long tuple_budget = 50'000'000);

/// Canonical representatives, one per isomorphism class, sorted. Drives
/// the census counts above and the CLI --emit output.
std::vector<CanonicalCluster> census_simple_classes(int k, int d);
std::vector<CanonicalCluster> census_all_classes(int k, int d,
                                                 long long tuple_budget = 50'000'000);

}  // namespace clusterforge
