#include "clusterforge/clusters.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace clusterforge {

namespace {

// Sorted-element-list order on label masks, same rule as set_list_less.
bool mask_less(std::uint64_t a, std::uint64_t b) {
    if (a == b) return false;
    std::uint64_t diff = a ^ b;
    std::uint64_t low = diff & (~diff + 1);
    return (a & low) != 0;
}

bool mask_list_less(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    size_t m = std::min(a.size(), b.size());
    for (size_t i = 0; i < m; ++i) {
        if (a[i] != b[i]) return mask_less(a[i], b[i]);
    }
    return a.size() < b.size();
}

void validate_cluster_input(const std::vector<KSet>& sets, const Params& params) {
    if (static_cast<int>(sets.size()) != params.d)
        throw std::invalid_argument("expected " + std::to_string(params.d) + " sets, got " +
                                    std::to_string(sets.size()));
    const std::uint64_t ground =
        (params.n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << params.n) - 1);
    for (size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].size() != params.k)
            throw std::invalid_argument("set " + sets[i].str() + " is not a " +
                                        std::to_string(params.k) + "-set");
        if (sets[i].bits & ~ground)
            throw std::invalid_argument("set " + sets[i].str() + " leaves the ground set [1," +
                                        std::to_string(params.n) + "]");
        for (size_t j = i + 1; j < sets.size(); ++j)
            if (sets[i] == sets[j])
                throw std::invalid_argument("duplicate set " + sets[i].str());
    }
}

// Enumeration order for d-subsets of family indices: lexicographic on the
// ascending index tuple. Visits prefixes; fn returns false to prune the
// subtree below the current prefix.
template <typename Visit>
void for_each_index_tuple(int count, int depth, Visit&& visit) {
    std::vector<int> tuple;
    tuple.reserve(static_cast<size_t>(depth));
    auto rec = [&](auto&& self, int next) -> bool {
        if (static_cast<int>(tuple.size()) == depth) return visit(tuple, true);
        for (int i = next; i < count; ++i) {
            tuple.push_back(i);
            bool keep_going = visit(tuple, false) ? self(self, i + 1) : true;
            tuple.pop_back();
            if (!keep_going) return false;
        }
        return true;
    };
    rec(rec, 0);
}

}  // namespace

std::vector<KSet> SimpleClusterWitness::all_sets() const {
    std::vector<KSet> out;
    out.reserve(reducers.size() + 2);
    out.push_back(b);
    out.push_back(b_prime);
    out.insert(out.end(), reducers.begin(), reducers.end());
    return out;
}

std::vector<std::vector<int>> CanonicalCluster::sets() const {
    std::vector<std::vector<int>> out;
    out.reserve(masks.size());
    for (std::uint64_t m : masks) {
        std::vector<int> elems;
        for (int i = 0; i < support_size; ++i)
            if ((m >> i) & 1u) elems.push_back(i + 1);
        out.push_back(std::move(elems));
    }
    return out;
}

std::string CanonicalCluster::str() const {
    std::string out = "{";
    bool first_set = true;
    for (const auto& elems : sets()) {
        if (!first_set) out += ',';
        out += '{';
        for (size_t i = 0; i < elems.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(elems[i]);
        }
        out += '}';
        first_set = false;
    }
    out += '}';
    return out;
}

bool CanonicalCluster::operator<(const CanonicalCluster& other) const {
    if (support_size != other.support_size) return support_size < other.support_size;
    return mask_list_less(masks, other.masks);
}

bool is_cluster(const std::vector<KSet>& sets, const Params& params) {
    validate_cluster_input(sets, params);
    KSet uni{0};
    KSet inter{~std::uint64_t{0}};
    for (KSet s : sets) {
        uni = uni | s;
        inter = inter & s;
    }
    return uni.size() <= 2 * params.k && inter.empty();
}

std::optional<SimpleClusterWitness> as_simple_cluster(const std::vector<KSet>& sets,
                                                      const Params& params) {
    validate_cluster_input(sets, params);
    const int d = params.d;
    for (int bi = 0; bi < d; ++bi) {
        for (int pi = 0; pi < d; ++pi) {
            if (pi == bi) continue;
            KSet b = sets[static_cast<size_t>(bi)];
            KSet bp = sets[static_cast<size_t>(pi)];
            KSet inter = b & bp;
            if (inter.size() != d - 2) continue;
            // Each remaining set must remove exactly one label from b, and
            // the removed labels must cover the intersection exactly.
            std::vector<KSet> reducers;
            std::vector<int> labels;
            KSet used{0};
            bool valid = true;
            for (int ri = 0; ri < d && valid; ++ri) {
                if (ri == bi || ri == pi) continue;
                KSet removed = b - sets[static_cast<size_t>(ri)];
                if (removed.size() != 1 || !removed.subset_of(inter) ||
                    !(removed & used).empty()) {
                    valid = false;
                    break;
                }
                used = used | removed;
                reducers.push_back(sets[static_cast<size_t>(ri)]);
                labels.push_back(removed.min_element());
            }
            if (valid && used == inter)
                return SimpleClusterWitness{b, bp, std::move(reducers), std::move(labels)};
        }
    }
    return std::nullopt;
}

std::optional<FoundCluster> find_cluster(const Family& f, int d, bool simple_only) {
    if (d < 2 || d > f.params.k)
        throw std::invalid_argument("cluster size d=" + std::to_string(d) +
                                    " outside [2,k] for k=" + std::to_string(f.params.k));
    const Params probe{f.params.n, f.params.k, d};
    const auto& members = f.members;
    std::optional<FoundCluster> found;
    for_each_index_tuple(
        static_cast<int>(members.size()), d, [&](const std::vector<int>& tuple, bool complete) {
            KSet uni{0};
            for (int idx : tuple) uni = uni | members[static_cast<size_t>(idx)];
            if (uni.size() > 2 * probe.k) return false;  // unions only grow
            if (!complete) return true;
            std::vector<KSet> sets;
            sets.reserve(static_cast<size_t>(d));
            for (int idx : tuple) sets.push_back(members[static_cast<size_t>(idx)]);
            KSet inter{~std::uint64_t{0}};
            for (KSet s : sets) inter = inter & s;
            if (!inter.empty()) return true;
            if (simple_only) {
                auto simple = as_simple_cluster(sets, probe);
                if (!simple) return true;
                found = FoundCluster{ClusterWitness{std::move(sets), uni.size()},
                                     std::move(simple)};
            } else {
                found = FoundCluster{ClusterWitness{std::move(sets), uni.size()}, std::nullopt};
            }
            return false;  // stop the whole enumeration
        });
    return found;
}

Family cluster_members(const Family& f, int d) {
    if (d < 2 || d > f.params.k)
        throw std::invalid_argument("cluster size d=" + std::to_string(d) +
                                    " outside [2,k] for k=" + std::to_string(f.params.k));
    const auto& members = f.members;
    std::vector<char> marked(members.size(), 0);
    for_each_index_tuple(
        static_cast<int>(members.size()), d, [&](const std::vector<int>& tuple, bool complete) {
            KSet uni{0};
            for (int idx : tuple) uni = uni | members[static_cast<size_t>(idx)];
            if (uni.size() > 2 * f.params.k) return false;
            if (!complete) return true;
            KSet inter{~std::uint64_t{0}};
            for (int idx : tuple) inter = inter & members[static_cast<size_t>(idx)];
            if (inter.empty())
                for (int idx : tuple) marked[static_cast<size_t>(idx)] = 1;
            return true;
        });
    std::vector<KSet> result;
    for (size_t i = 0; i < members.size(); ++i)
        if (marked[i]) result.push_back(members[i]);
    return Family{f.params, std::move(result)};
}

namespace {

constexpr int max_canonical_support = 16;
constexpr long long canonical_leaf_budget = 5'000'000;

struct LabelingEnumerator {
    int support = 0;
    int nsets = 0;
    std::vector<std::uint64_t> class_rows;  // bit j set: class members lie in set j
    std::vector<int> remaining;             // per class, elements left to label
    std::vector<std::uint64_t> masks;       // per set, labels assigned so far
    std::vector<std::uint64_t> best;
    bool have_best = false;
    std::vector<std::uint64_t> scratch;

    void run(int pos) {
        if (pos == support) {
            scratch = masks;
            std::sort(scratch.begin(), scratch.end(), mask_less);
            if (!have_best || mask_list_less(scratch, best)) {
                best = scratch;
                have_best = true;
            }
            return;
        }
        const std::uint64_t bit = std::uint64_t{1} << pos;
        for (size_t c = 0; c < class_rows.size(); ++c) {
            if (remaining[c] == 0) continue;
            --remaining[c];
            std::uint64_t row = class_rows[c];
            for (int j = 0; j < nsets; ++j)
                if ((row >> j) & 1u) masks[static_cast<size_t>(j)] |= bit;
            run(pos + 1);
            for (int j = 0; j < nsets; ++j)
                if ((row >> j) & 1u) masks[static_cast<size_t>(j)] &= ~bit;
            ++remaining[c];
        }
    }
};

}  // namespace

CanonicalCluster canonicalize(const ClusterWitness& w) {
    const int nsets = static_cast<int>(w.sets.size());
    if (nsets == 0) throw std::invalid_argument("cannot canonicalize an empty witness");
    if (nsets > 63) throw std::invalid_argument("too many sets to canonicalize");
    KSet support{0};
    for (KSet s : w.sets) support = support | s;
    const int u = support.size();
    if (u > max_canonical_support)
        throw resource_guard_error("canonical labeling limited to supports of at most " +
                                   std::to_string(max_canonical_support) + " elements, got " +
                                   std::to_string(u));

    // Row of a support element: which sets contain it. Elements with equal
    // rows are interchangeable, so labelings are enumerated per class, not
    // per element: u! collapses to a multinomial.
    std::vector<std::uint64_t> rows;
    rows.reserve(static_cast<size_t>(u));
    for (int e : support.elements()) {
        std::uint64_t row = 0;
        for (int j = 0; j < nsets; ++j)
            if (w.sets[static_cast<size_t>(j)].contains(e)) row |= std::uint64_t{1} << j;
        rows.push_back(row);
    }
    std::vector<std::uint64_t> class_rows = rows;
    std::sort(class_rows.begin(), class_rows.end());
    class_rows.erase(std::unique(class_rows.begin(), class_rows.end()), class_rows.end());
    std::vector<int> counts(class_rows.size(), 0);
    for (std::uint64_t row : rows) {
        size_t c = static_cast<size_t>(
            std::lower_bound(class_rows.begin(), class_rows.end(), row) - class_rows.begin());
        ++counts[c];
    }

    long long leaves = 1;
    {
        int assigned = 0;
        for (size_t c = 0; c < counts.size(); ++c) {
            for (int i = 1; i <= counts[c]; ++i) {
                leaves = leaves * (assigned + i) / i;  // running multinomial, always exact
                if (leaves > canonical_leaf_budget)
                    throw resource_guard_error(
                        "canonical labeling enumeration exceeds its budget");
            }
            assigned += counts[c];
        }
    }

    LabelingEnumerator en;
    en.support = u;
    en.nsets = nsets;
    en.class_rows = std::move(class_rows);
    en.remaining = std::move(counts);
    en.masks.assign(static_cast<size_t>(nsets), 0);
    en.run(0);
    return CanonicalCluster{u, std::move(en.best)};
}

namespace {

ClusterWitness make_witness(std::vector<KSet> sets) {
    std::sort(sets.begin(), sets.end());
    KSet uni{0};
    for (KSet s : sets) uni = uni | s;
    return ClusterWitness{std::move(sets), uni.size()};
}

}  // namespace

std::vector<CanonicalCluster> census_simple_classes(int k, int d) {
    const Params params(2 * k, k, d);  // any cluster's support fits in 2k elements
    const KSet base = [&] {
        KSet s{0};
        for (int e = 1; e <= k; ++e) s = s.with(e);
        return s;
    }();
    std::set<CanonicalCluster> classes;

    // Normal form: b = [1,k]; the k-d+2 elements of b_prime outside the
    // labels sit at [k+1, 2k-d+2]; the reducers' replacement elements range
    // over all of [k+1, 2k]. Every isomorphism class contains such a
    // witness, and canonical dedup removes the overlap.
    KSet prime_tail{0};
    for (int e = k + 1; e <= 2 * k - d + 2; ++e) prime_tail = prime_tail.with(e);
    for_each_kset(k, d - 2, [&](KSet label_set) {
        KSet bp = label_set | prime_tail;
        std::vector<int> labels = label_set.elements();
        const int nred = d - 2;
        std::vector<int> z(static_cast<size_t>(nred), k + 1);
        while (true) {
            std::vector<KSet> sets;
            sets.reserve(static_cast<size_t>(d));
            sets.push_back(base);
            sets.push_back(bp);
            for (int i = 0; i < nred; ++i)
                sets.push_back(base.without(labels[static_cast<size_t>(i)])
                                   .with(z[static_cast<size_t>(i)]));
            bool distinct = true;
            for (size_t a = 0; a < sets.size() && distinct; ++a)
                for (size_t b = a + 1; b < sets.size(); ++b)
                    if (sets[a] == sets[b]) {
                        distinct = false;
                        break;
                    }
            assert(distinct);
            if (distinct) {
                assert(is_cluster(sets, params));
                classes.insert(canonicalize(make_witness(std::move(sets))));
            }
            int pos = nred - 1;
            while (pos >= 0 && z[static_cast<size_t>(pos)] == 2 * k) {
                z[static_cast<size_t>(pos)] = k + 1;
                --pos;
            }
            if (pos < 0) break;
            ++z[static_cast<size_t>(pos)];
        }
    });
    return std::vector<CanonicalCluster>(classes.begin(), classes.end());
}

std::vector<CanonicalCluster> census_all_classes(int k, int d, long long tuple_budget) {
    const Params params(2 * k, k, d);
    long long universe_size;
    long long tuples;
    try {
        universe_size = binom(2 * k, k);
        tuples = binom(universe_size - 1, d - 1);
    } catch (const std::overflow_error&) {
        throw resource_guard_error("cluster census enumeration space overflows");
    }
    if (tuples > tuple_budget)
        throw resource_guard_error("cluster census needs " + std::to_string(tuples) +
                                   " tuples, over the budget of " +
                                   std::to_string(tuple_budget));

    // Every isomorphism class has a representative containing [1,k] (relabel
    // any one member onto it), so that set is pinned and only the d-1
    // companions are enumerated.
    const std::vector<KSet> universe = all_ksets(2 * k, k);
    std::set<CanonicalCluster> classes;
    std::vector<KSet> chosen{universe[0]};
    auto rec = [&](auto&& self, int next, KSet uni, KSet inter) -> void {
        if (static_cast<int>(chosen.size()) == d) {
            if (inter.empty()) classes.insert(canonicalize(make_witness(chosen)));
            return;
        }
        for (size_t i = static_cast<size_t>(next); i < universe.size(); ++i) {
            KSet nu = uni | universe[i];
            if (nu.size() > 2 * k) continue;
            chosen.push_back(universe[i]);
            self(self, static_cast<int>(i) + 1, nu, inter & universe[i]);
            chosen.pop_back();
        }
    };
    rec(rec, 1, universe[0], universe[0]);
    return std::vector<CanonicalCluster>(classes.begin(), classes.end());
}

long long census_simple(int k, int d) {
    return static_cast<long long>(census_simple_classes(k, d).size());
}

long long census_all(int k, int d, long long tuple_budget) {
    return static_cast<long long>(census_all_classes(k, d, tuple_budget).size());
}

}  // namespace clusterforge
