#include "clusterforge/random_families.hpp"

#include <utility>
#include <vector>

#include "clusterforge/clusters.hpp"

namespace clusterforge {

namespace {

// 53-bit uniform in [0,1); spelled out so results do not depend on the
// standard library's distribution implementations.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Family random_family(const Params& params, double density, std::mt19937_64& rng) {
    std::vector<KSet> picked;
    for_each_kset(params.n, params.k, [&](KSet s) {
        if (uniform01(rng) < density) picked.push_back(s);
    });
    return Family{params, std::move(picked)};
}

GeneratedFamily random_cluster_free_family(const Params& params, bool simple_only,
                                           double initial_density, int max_attempts,
                                           std::mt19937_64& rng) {
    double density = initial_density;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Family candidate = random_family(params, density, rng);
        if (!find_cluster(candidate, params.d, simple_only))
            return {std::move(candidate), {"rejection", density, attempt}};
        density *= 0.7;
    }
    // Any subfamily of a star shares the center across all members, so no
    // collection of its sets can have empty intersection.
    int center = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(params.n));
    Family whole_star = star(params, center);
    std::vector<KSet> picked;
    for (KSet s : whole_star.members)
        if (uniform01(rng) < 0.5) picked.push_back(s);
    return {Family{params, std::move(picked)}, {"star_subset", 0.5, max_attempts}};
}

}  // namespace clusterforge
