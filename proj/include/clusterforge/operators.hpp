#pragma once

#include <string>
#include <utility>
#include <vector>

#include "clusterforge/ground.hpp"
#include "clusterforge/rational.hpp"

namespace clusterforge {

/// The (k-1)-sets D over [n]-{x} with D ∪ {x} in the source family.
/// params carries the source family's (n,k,d); members never contain x
/// and are kept in canonical ascending order.
struct LinkFamily {
    Params params;
    int x = 0;
    std::vector<KSet> members;

    int size() const { return static_cast<int>(members.size()); }
    bool contains(KSet s) const;
};

/// The elements y of base removable by a single exchange: some B' in the
/// family has base - B' = {y}. members is a subset of base.
struct AlphaSet {
    KSet base;
    KSet members;
};

LinkFamily link(const Family& f, int x);

/// All members of F containing the (k-1)-set D. Throws on |D| != k-1.
Family upset(const Family& f, KSet d_set);

/// Throws std::invalid_argument when b is not a member of f.
AlphaSet alpha(const Family& f, KSet b);

/// (members containing x, members avoiding x); a partition of F.
std::pair<Family, Family> split(const Family& f, int x);

/// The (k-1)-sets D over [n]-{x} whose intersection with some member B
/// avoiding x is exactly a (d-2)-subset of alpha(F,B). For d = 2 the
/// (d-2)-subset is empty, so the condition reads D ∩ B = ∅.
LinkFamily r_family(const Family& f, int x, int d);

/// The (k-1)-sets D over [n]-{x} with D = B - {y} for some member B
/// avoiding x and some y in B outside alpha(F,B).
LinkFamily s_family(const Family& f, int x);

/// Sub-link of link(F,x): the D with a unique extension in F, together
/// with the link of Fstar. Throws when Fstar is not a subfamily of F.
LinkFamily link_star(const Family& f, const Family& fstar, int x);

/// (sum over x of |link(F,x)|, k·|F|). The two sides are always equal;
/// returning both keeps the check honest.
std::pair<long long, long long> check_sum_identity(const Family& f);

/// Count of (k-1)-sets with exactly one extension in F, against the exact
/// bound (n·binom(n-1,k-1) - k|F|)/(n-k). Requires k < n.
struct UniqueExtensionBound {
    long long count_unique = 0;
    Rational bound;

    bool holds() const { return Rational::of(count_unique) <= bound; }
};
UniqueExtensionBound unique_extension_bound(const Family& f);

/// Outcome of a hypothesis-guarded property check. `violation` means the
/// asserted conclusion failed on `offending`; `hypothesis_failure` means
/// the input did not satisfy the property's hypothesis in the first place.
struct ViolationReport {
    enum class Kind { none, violation, hypothesis_failure };
    Kind kind = Kind::none;
    std::string message;
    std::vector<KSet> offending;

    bool ok() const { return kind == Kind::none; }
};

/// For every (d-1)-cluster among the link of F at x, every member D must
/// have a unique extension in F or lie in the link of Fstar. Requires
/// 3 <= d <= k and n(d-1) >= dk; the hypothesis is that every d-cluster
/// of F lies inside Fstar (checked, reported as hypothesis_failure).
/// Enumeration is in lexicographic DFS order, so the first violating
/// cluster is deterministic.
ViolationReport check_link_clusters(const Family& f, const Family& fstar, int x, int d);

/// For every ordered pair B, B' of distinct members with
/// |alpha(F,B) ∩ B'| >= d-2, assert |B ∩ B'| >= d-1. Requires
/// n >= 2k-d+2; the hypothesis is that F has no simple d-cluster
/// (checked, reported as hypothesis_failure).
ViolationReport check_pair_intersections(const Family& f, int d);

/// (sum of binom(r_i, l), m * binom(floor(mean r_i), l)). The left side
/// is always at least the right. Throws on an empty list.
std::pair<long long, long long> avg_binom_bound(const std::vector<long long>& rs, long long l);

}  // namespace clusterforge
