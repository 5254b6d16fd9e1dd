#include "clusterforge/operators.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "clusterforge/clusters.hpp"

namespace clusterforge {

namespace {

void check_element(const Params& params, int x) {
    if (x < 1 || x > params.n)
        throw std::invalid_argument("element " + std::to_string(x) + " outside [1," +
                                    std::to_string(params.n) + "]");
}

long long extension_count(const Family& f, KSet d_set) {
    long long count = 0;
    for (KSet b : f.members)
        if (d_set.subset_of(b)) ++count;
    return count;
}

}  // namespace

bool LinkFamily::contains(KSet s) const {
    return std::binary_search(members.begin(), members.end(), s);
}

LinkFamily link(const Family& f, int x) {
    check_element(f.params, x);
    LinkFamily result{f.params, x, {}};
    for (KSet b : f.members)
        if (b.contains(x)) result.members.push_back(b.without(x));
    // Removing the same bit from masks that all carry it preserves order.
    return result;
}

Family upset(const Family& f, KSet d_set) {
    if (d_set.size() != f.params.k - 1)
        throw std::invalid_argument("up-set base must have k-1 elements, got " +
                                    std::to_string(d_set.size()));
    Family result{f.params, {}};
    for (KSet b : f.members)
        if (d_set.subset_of(b)) result.members.push_back(b);
    return result;
}

AlphaSet alpha(const Family& f, KSet b) {
    if (!f.contains(b)) throw std::invalid_argument("alpha base set is not a family member");
    AlphaSet result{b, KSet{0}};
    for (KSet other : f.members) {
        if (other == b) continue;
        KSet diff = b - other;
        if (diff.size() == 1) result.members = result.members | diff;
    }
    return result;
}

std::pair<Family, Family> split(const Family& f, int x) {
    check_element(f.params, x);
    Family with_x{f.params, {}};
    Family without_x{f.params, {}};
    for (KSet b : f.members) (b.contains(x) ? with_x : without_x).members.push_back(b);
    return {std::move(with_x), std::move(without_x)};
}

LinkFamily r_family(const Family& f, int x, int d) {
    check_element(f.params, x);
    if (d < 2 || d > f.params.k)
        throw std::invalid_argument("cluster size must satisfy 2 <= d <= k");
    std::vector<KSet> avoiders;
    std::vector<KSet> alphas;
    for (KSet b : f.members)
        if (!b.contains(x)) {
            avoiders.push_back(b);
            alphas.push_back(alpha(f, b).members);
        }
    LinkFamily result{f.params, x, {}};
    for_each_kset(f.params.n, f.params.k - 1, [&](KSet d_set) {
        if (d_set.contains(x)) return;
        for (size_t i = 0; i < avoiders.size(); ++i) {
            KSet inter = d_set & avoiders[i];
            if (inter.size() == d - 2 && inter.subset_of(alphas[i])) {
                result.members.push_back(d_set);
                return;
            }
        }
    });
    return result;
}

LinkFamily s_family(const Family& f, int x) {
    check_element(f.params, x);
    LinkFamily result{f.params, x, {}};
    for (KSet b : f.members) {
        if (b.contains(x)) continue;
        KSet removable = alpha(f, b).members;
        for (int y : (b - removable).elements()) result.members.push_back(b.without(y));
    }
    std::sort(result.members.begin(), result.members.end());
    result.members.erase(std::unique(result.members.begin(), result.members.end()),
                         result.members.end());
    return result;
}

LinkFamily link_star(const Family& f, const Family& fstar, int x) {
    if (fstar.params.n != f.params.n || fstar.params.k != f.params.k)
        throw std::invalid_argument("subfamily parameters do not match");
    if (!fstar.subfamily_of(f))
        throw std::invalid_argument("link_star needs Fstar to be a subfamily of F");
    LinkFamily base = link(f, x);
    LinkFamily starred = link(fstar, x);
    LinkFamily result{f.params, x, {}};
    for (KSet d_set : base.members)
        if (extension_count(f, d_set) == 1 || starred.contains(d_set))
            result.members.push_back(d_set);
    return result;
}

std::pair<long long, long long> check_sum_identity(const Family& f) {
    long long lhs = 0;
    for (int x = 1; x <= f.params.n; ++x) lhs += link(f, x).size();
    long long rhs = static_cast<long long>(f.params.k) * f.size();
    return {lhs, rhs};
}

UniqueExtensionBound unique_extension_bound(const Family& f) {
    const Params& p = f.params;
    if (p.k >= p.n) throw std::invalid_argument("unique-extension bound needs k < n");
    UniqueExtensionBound result;
    for_each_kset(p.n, p.k - 1, [&](KSet d_set) {
        if (extension_count(f, d_set) == 1) ++result.count_unique;
    });
    result.bound = Rational::of(p.n * binom(p.n - 1, p.k - 1) -
                                    static_cast<long long>(p.k) * f.size(),
                                p.n - p.k);
    return result;
}

namespace {

ViolationReport cluster_containment_hypothesis(const Family& f, const Family& fstar, int d) {
    Family in_clusters = cluster_members(f, d);
    std::vector<KSet> outside;
    for (KSet b : in_clusters.members)
        if (!fstar.contains(b)) outside.push_back(b);
    if (outside.empty()) return {};
    ViolationReport report;
    report.kind = ViolationReport::Kind::hypothesis_failure;
    report.message = "a " + std::to_string(d) +
                     "-cluster member lies outside the designated subfamily, e.g. " +
                     outside.front().str();
    report.offending = std::move(outside);
    return report;
}

}  // namespace

ViolationReport check_link_clusters(const Family& f, const Family& fstar, int x, int d) {
    const Params& p = f.params;
    check_element(p, x);
    if (d < 3 || d > p.k)
        throw std::invalid_argument("link-cluster check needs 3 <= d <= k");
    if (static_cast<long long>(p.n) * (d - 1) < static_cast<long long>(d) * p.k)
        throw std::invalid_argument("link-cluster check needs n(d-1) >= dk");
    if (fstar.params.n != p.n || fstar.params.k != p.k)
        throw std::invalid_argument("subfamily parameters do not match");
    ViolationReport hypothesis = cluster_containment_hypothesis(f, fstar, d);
    if (!hypothesis.ok()) return hypothesis;

    const LinkFamily base = link(f, x);
    const LinkFamily starred = link(fstar, x);
    const int count = base.size();
    std::vector<char> member_ok(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        member_ok[static_cast<size_t>(i)] =
            extension_count(f, base.members[static_cast<size_t>(i)]) == 1 ||
            starred.contains(base.members[static_cast<size_t>(i)]);

    // Lexicographic DFS over (d-1)-subsets of the link, pruning once the
    // union exceeds 2(k-1); leaves with empty intersection are clusters.
    ViolationReport report;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from, KSet uni, KSet inter) -> bool {
        if (static_cast<int>(pick.size()) == d - 1) {
            if (!inter.empty()) return true;
            for (int i : pick) {
                if (member_ok[static_cast<size_t>(i)]) continue;
                report.kind = ViolationReport::Kind::violation;
                report.message = "link cluster member " +
                                 base.members[static_cast<size_t>(i)].str() +
                                 " has several extensions and lies outside the subfamily link";
                for (int j : pick) report.offending.push_back(base.members[static_cast<size_t>(j)]);
                return false;
            }
            return true;
        }
        for (int i = from; i < count; ++i) {
            KSet s = base.members[static_cast<size_t>(i)];
            KSet next_uni = uni | s;
            if (next_uni.size() > 2 * (p.k - 1)) continue;
            pick.push_back(i);
            bool keep = self(self, i + 1, next_uni, pick.size() == 1 ? s : (inter & s));
            pick.pop_back();
            if (!keep) return false;
        }
        return true;
    };
    rec(rec, 0, KSet{0}, KSet{0});
    return report;
}

ViolationReport check_pair_intersections(const Family& f, int d) {
    const Params& p = f.params;
    if (d < 2 || d > p.k)
        throw std::invalid_argument("pair-intersection check needs 2 <= d <= k");
    if (p.n < 2 * p.k - d + 2)
        throw std::invalid_argument("pair-intersection check needs n >= 2k-d+2");
    if (auto found = find_cluster(f, d, /*simple_only=*/true)) {
        ViolationReport report;
        report.kind = ViolationReport::Kind::hypothesis_failure;
        report.message = "the family contains a simple " + std::to_string(d) + "-cluster";
        report.offending = found->cluster.sets;
        return report;
    }
    std::vector<KSet> alphas;
    alphas.reserve(f.members.size());
    for (KSet b : f.members) alphas.push_back(alpha(f, b).members);
    for (size_t i = 0; i < f.members.size(); ++i)
        for (size_t j = 0; j < f.members.size(); ++j) {
            if (i == j) continue;
            KSet b = f.members[i];
            KSet b_prime = f.members[j];
            if ((alphas[i] & b_prime).size() < d - 2) continue;
            if ((b & b_prime).size() >= d - 1) continue;
            ViolationReport report;
            report.kind = ViolationReport::Kind::violation;
            report.message = "pair " + b.str() + ", " + b_prime.str() +
                             " meets the exchange condition but shares only " +
                             std::to_string((b & b_prime).size()) + " elements";
            report.offending = {b, b_prime};
            return report;
        }
    return {};
}

std::pair<long long, long long> avg_binom_bound(const std::vector<long long>& rs, long long l) {
    if (rs.empty()) throw std::invalid_argument("average bound needs a nonempty list");
    if (l < 0) throw std::invalid_argument("subset size must be nonnegative");
    __int128 lhs = 0;
    __int128 total = 0;
    for (long long r : rs) {
        if (r < 0) throw std::invalid_argument("counts must be nonnegative");
        lhs += binom(r, l);
        total += r;
    }
    long long m = static_cast<long long>(rs.size());
    long long mean_floor = static_cast<long long>(total / m);
    __int128 rhs = static_cast<__int128>(m) * binom(mean_floor, l);
    constexpr __int128 cap = std::numeric_limits<long long>::max();
    if (lhs > cap || rhs > cap) throw std::overflow_error("binomial sum exceeds 64 bits");
    return {static_cast<long long>(lhs), static_cast<long long>(rhs)};
}

}  // namespace clusterforge
