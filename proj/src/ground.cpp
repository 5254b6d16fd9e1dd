#include "clusterforge/ground.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace clusterforge {

Params::Params(int n_, int k_, int d_) : n(n_), k(k_), d(d_) {
    if (n < 1) throw std::invalid_argument("params: n must be at least 1");
    if (n > max_ground_size)
        throw std::invalid_argument("params: n exceeds the ground-set cap of 64");
    if (d < 2) throw std::invalid_argument("params: d must be at least 2");
    if (d > k) throw std::invalid_argument("params: d must not exceed k");
    if (k > n) throw std::invalid_argument("params: k must not exceed n");
}

std::vector<int> KSet::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(size()));
    std::uint64_t b = bits;
    while (b) {
        out.push_back(std::countr_zero(b) + 1);
        b &= b - 1;
    }
    return out;
}

std::string KSet::str() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
    }
    out += '}';
    return out;
}

KSet KSet::of(std::initializer_list<int> elems) {
    return of(std::vector<int>(elems));
}

KSet KSet::of(const std::vector<int>& elems) {
    KSet s;
    for (int e : elems) {
        if (e < 1 || e > max_ground_size)
            throw std::invalid_argument("set element " + std::to_string(e) + " out of range");
        s.bits |= std::uint64_t{1} << (e - 1);
    }
    return s;
}

bool Family::contains(KSet s) const {
    return std::binary_search(members.begin(), members.end(), s);
}

bool Family::subfamily_of(const Family& other) const {
    return std::all_of(members.begin(), members.end(),
                       [&](KSet s) { return other.contains(s); });
}

Family family_from_ksets(const Params& params, std::vector<KSet> sets) {
    const std::uint64_t ground =
        (params.n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << params.n) - 1);
    for (KSet s : sets) {
        if (s.bits & ~ground)
            throw std::invalid_argument("set " + s.str() + " has an element out of [1," +
                                        std::to_string(params.n) + "]");
        if (s.size() != params.k)
            throw std::invalid_argument("set " + s.str() + " has cardinality " +
                                        std::to_string(s.size()) + ", expected " +
                                        std::to_string(params.k));
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return Family{params, std::move(sets)};
}

Family make_family(const Params& params, const std::vector<std::vector<int>>& sets) {
    std::vector<KSet> ksets;
    ksets.reserve(sets.size());
    for (const auto& elems : sets) {
        KSet s = KSet::of(elems);
        if (static_cast<int>(elems.size()) != params.k || s.size() != params.k)
            throw std::invalid_argument("set with " + std::to_string(elems.size()) +
                                        " entries is not a " + std::to_string(params.k) +
                                        "-set (repeated or missing elements?)");
        ksets.push_back(s);
    }
    return family_from_ksets(params, std::move(ksets));
}

Family star(const Params& params, int x) {
    if (x < 1 || x > params.n)
        throw std::invalid_argument("star center " + std::to_string(x) + " out of [1," +
                                    std::to_string(params.n) + "]");
    std::vector<KSet> members;
    for_each_kset(params.n, params.k, [&](KSet s) {
        if (s.contains(x)) members.push_back(s);
    });
    return Family{params, std::move(members)};
}

Family full_family(const Params& params) {
    return Family{params, all_ksets(params.n, params.k)};
}

Family complement_family(const Family& f) {
    std::vector<KSet> members;
    for_each_kset(f.params.n, f.params.k, [&](KSet s) {
        if (!f.contains(s)) members.push_back(s);
    });
    return Family{f.params, std::move(members)};
}

long long binom(long long a, long long b) {
    if (a < 0 || b < 0) throw std::invalid_argument("binom: negative argument");
    if (b > a) return 0;
    b = std::min(b, a - b);
    unsigned __int128 r = 1;
    for (long long i = 1; i <= b; ++i) {
        r *= static_cast<unsigned __int128>(a - b + i);
        r /= static_cast<unsigned __int128>(i);
        if (r > static_cast<unsigned __int128>(std::numeric_limits<long long>::max()))
            throw std::overflow_error("binom(" + std::to_string(a) + "," + std::to_string(b) +
                                      ") overflows 64 bits");
    }
    return static_cast<long long>(r);
}

std::vector<KSet> all_ksets(int n, int k) {
    std::vector<KSet> out;
    for_each_kset(n, k, [&](KSet s) { out.push_back(s); });
    return out;
}

}  // namespace clusterforge
