#pragma once

#include <string>
#include <vector>

#include "clusterforge/ground.hpp"

namespace clusterforge {

enum class SearchMode { cluster_free, simple_cluster_free, weighted };

std::string to_string(SearchMode mode);

struct SearchBudget {
    long long max_nodes = 1'000'000'000;
    double max_seconds = 600.0;
};

/// An exact extremal search instance. The mode-specific parameter gate
/// (see mode_regime_ok) is enforced unless force is set; threads controls
/// parallel subtree exploration and never affects results of exhausted
/// searches.
struct SearchProblem {
    Params params;
    SearchMode mode = SearchMode::cluster_free;
    SearchBudget budget;
    bool force = false;
    int threads = 1;
    int max_representatives = 8;
};

/// The parameter regime under which the mode's extremal value is pinned:
/// n(d-1) >= dk for cluster_free, n >= 3k-2d+4 for simple_cluster_free,
/// 2k <= n for weighted.
bool mode_regime_ok(const Params& params, SearchMode mode);

/// The pinned extremal value inside the regime: binom(n-1,k-1) for the
/// freeness modes, k·binom(n,k) for weighted.
long long mode_expected_optimum(const Params& params, SearchMode mode);

struct ExtremalCensus {
    long long stars = 0;
    long long full = 0;
    long long other = 0;

    bool operator==(const ExtremalCensus&) const = default;
};

/// optimum is |F| for the freeness modes and the integer rescaling
/// k|Fstar| + n|F - Fstar| for weighted mode (Fstar = the sets lying in
/// some d-cluster). When exhausted, the census over all optimum-attaining
/// families is complete and representatives holds the canonically least
/// family of each nonempty class (ascending, capped by
/// max_representatives). A budget-tripped search reports exhausted=false
/// with best-found optimum and an empty census.
struct SearchResult {
    long long optimum = 0;
    bool exhausted = false;
    long long extremal_count = 0;
    ExtremalCensus census;
    std::vector<Family> representatives;
};

/// Exact maximum family size without any d-cluster (mode cluster_free) or
/// without any simple d-cluster (mode simple_cluster_free), plus the full
/// extremal census when the search exhausts. Branch and bound over the
/// lexicographic list of all k-sets; requires binom(n,k) <= 256.
SearchResult max_cluster_free(const SearchProblem& problem);

/// Exact maximum of k|Fstar| + n|F - Fstar| over all families F, where
/// Fstar is the subfamily of sets lying in some d-cluster of F (the
/// minimal valid marking, which is also optimal since n > k).
SearchResult max_weighted(const SearchProblem& problem);

/// Unpruned enumeration of every subfamily of the k-set universe; same
/// contract as the searches above. Validates the branch-and-bound.
/// Guards: binom(n,k) <= 25 (freeness modes), <= 20 (weighted).
SearchResult oracle_exhaustive(const SearchProblem& problem);

enum class ExtremalClass { star, full, other };

struct ExtremalClassification {
    ExtremalClass cls = ExtremalClass::other;
    int center = 0;  // star center when cls == star
};

/// Structural classification of an optimum-attaining family. Requires the
/// mode regime (so the extremal value is known) and throws
/// std::invalid_argument when F is infeasible for the mode or its
/// objective misses that value.
ExtremalClassification classify_extremal(const Family& f, const SearchProblem& problem);

/// Classification helper shared with the census: no extremality check.
ExtremalClassification classify_family_shape(const Family& f);

}  // namespace clusterforge
