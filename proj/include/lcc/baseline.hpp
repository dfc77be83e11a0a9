#ifndef LCC_BASELINE_HPP
#define LCC_BASELINE_HPP

#include <cstdint>
#include <vector>

#include "lcc/dtw.hpp"
#include "lcc/types.hpp"

namespace lcc {

struct KMedoidsResult {
    std::vector<int> medoids;
    Partition partition;
    double total_cost = 0;
    int iterations = 0;
};

struct KMedoidsOptions {
    int max_iterations = 100;
    bool random_init = false; // default: greedy farthest-point seeding
    std::uint64_t seed = 0;
};

// PAM-style alternation on a precomputed distance matrix: assign each
// curve to its nearest medoid (lowest medoid index on ties), recompute
// each cluster's medoid, stop at a fixpoint or the cap.
// Throws InvalidK unless 2 <= k <= n.
KMedoidsResult k_medoids(const DistanceMatrix& dm, int k,
                         const KMedoidsOptions& opts = {});

// Baseline with the cluster count matched to a community-detection run.
KMedoidsResult match_cluster_counts(const Partition& reference,
                                    const DistanceMatrix& dm,
                                    const KMedoidsOptions& opts = {});

} // namespace lcc

#endif
