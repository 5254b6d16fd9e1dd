#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace clusterforge {

/// Hard cap on the ground-set size: a set of elements of [1,n] is one
/// 64-bit word. Desk-scale runs stay far below this.
inline constexpr int max_ground_size = 64;

/// Thrown when an exhaustive computation would exceed its configured
/// resource guard. The CLI maps this to the budget exit code.
struct resource_guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ground-set parameters (n, k, d). Construction checks the structural
/// constraints (2 <= d <= k <= n <= 64); the regime flags below are
/// computed on demand and never assumed.
struct Params {
    int n = 0;
    int k = 0;
    int d = 2;

    Params(int n, int k, int d);

    /// n >= dk/(d-1), evaluated in exact integer form n(d-1) >= dk.
    bool cluster_regime_ok() const { return static_cast<long long>(n) * (d - 1) >= static_cast<long long>(d) * k; }
    /// 2k <= n (the weighted bound's hypothesis).
    bool weighted_regime_ok() const { return 2 * k <= n; }
    /// n >= 2k-d+2 (simple clusters are defined).
    bool simple_regime_ok() const { return n >= 2 * k - d + 2; }
    /// n >= 3k-2d+4 (the simple-cluster-free bound's hypothesis).
    bool simple_bound_regime_ok() const { return n >= 3 * k - 2 * d + 4; }

    bool operator==(const Params&) const = default;
};

/// A k-element subset of [1,n]: bit i set <=> element i+1 present.
/// Elements are 1-based everywhere outside this struct; only the bit
/// positions are 0-based.
struct KSet {
    std::uint64_t bits = 0;

    int size() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }
    bool contains(int element) const { return (bits >> (element - 1)) & 1u; }
    bool subset_of(KSet other) const { return (bits & ~other.bits) == 0; }

    KSet with(int element) const { return KSet{bits | (std::uint64_t{1} << (element - 1))}; }
    KSet without(int element) const { return KSet{bits & ~(std::uint64_t{1} << (element - 1))}; }

    friend KSet operator&(KSet a, KSet b) { return KSet{a.bits & b.bits}; }
    friend KSet operator|(KSet a, KSet b) { return KSet{a.bits | b.bits}; }
    friend KSet operator-(KSet a, KSet b) { return KSet{a.bits & ~b.bits}; }

    /// Smallest element, or 0 if empty.
    int min_element() const { return bits ? std::countr_zero(bits) + 1 : 0; }

    std::vector<int> elements() const;
    std::string str() const;  // "{1,2,3}"

    static KSet of(std::initializer_list<int> elems);
    static KSet of(const std::vector<int>& elems);

    auto operator<=>(const KSet&) const = default;
};

/// A deduplicated family of k-sets with shared parameters. Members are
/// kept strictly increasing by numeric bit-vector value; that order is
/// the canonical one and fixes tie-breaking everywhere downstream.
struct Family {
    Params params;
    std::vector<KSet> members;

    int size() const { return static_cast<int>(members.size()); }
    bool empty() const { return members.empty(); }
    bool contains(KSet s) const;

    /// True when every member of this family is a member of `other`.
    bool subfamily_of(const Family& other) const;

    bool operator==(const Family&) const = default;
};

/// Build a family from 1-based element lists; permuted duplicates collapse.
/// Throws std::invalid_argument on out-of-range elements or wrong cardinality.
Family make_family(const Params& params, const std::vector<std::vector<int>>& sets);

/// Internal builder: validates cardinality/range, sorts, dedupes.
Family family_from_ksets(const Params& params, std::vector<KSet> sets);

/// All (n-1 choose k-1) k-sets containing x.
Family star(const Params& params, int x);

/// All (n choose k) k-sets.
Family full_family(const Params& params);

/// ([n] choose k) minus F.
Family complement_family(const Family& f);

/// Exact binomial coefficient; 0 when b > a. Throws std::overflow_error
/// instead of wrapping.
long long binom(long long a, long long b);

/// Visit every k-subset of {1..n} as a KSet, in ascending numeric mask
/// order (the canonical family order).
template <typename Fn>
void for_each_kset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        fn(KSet{0});
        return;
    }
    const std::uint64_t limit = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    std::uint64_t v = (std::uint64_t{1} << k) - 1;
    while (true) {
        fn(KSet{v});
        if (k == n) break;
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t low = v & (~v + 1);
        std::uint64_t ripple = v + low;
        v = ripple | (((v ^ ripple) >> 2) / low);
        if (v > limit) break;
    }
}

std::vector<KSet> all_ksets(int n, int k);

}  // namespace clusterforge
