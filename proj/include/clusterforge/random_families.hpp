#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "clusterforge/ground.hpp"

namespace clusterforge {

/// How a random instance was produced; recorded in reports so any run can
/// be reproduced from (seed, method, parameters) alone.
struct GeneratorInfo {
    std::string method;  // "density", "rejection", or "star_subset"
    double density = 0.0;
    int attempts = 0;
};

struct GeneratedFamily {
    Family family;
    GeneratorInfo info;
};

/// Each k-set of [1,n] is included independently with probability density.
Family random_family(const Params& params, double density, std::mt19937_64& rng);

/// A family with no d-cluster (simple_only: no simple d-cluster), found by
/// rejection from density sampling with a decaying density schedule, then
/// by taking a random subfamily of a random star when rejection runs out
/// of attempts. The star fallback is always valid, so this never fails.
GeneratedFamily random_cluster_free_family(const Params& params, bool simple_only,
                                           double initial_density, int max_attempts,
                                           std::mt19937_64& rng);

}  // namespace clusterforge
