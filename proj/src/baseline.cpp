#include "lcc/baseline.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "lcc/errors.hpp"

namespace lcc {

namespace {

std::vector<int> farthest_point_seeds(const DistanceMatrix& dm, int k) {
    const int n = dm.size();
    // First medoid: the curve minimizing its total distance to everyone.
    int first = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double sum = 0;
        for (int j = 0; j < n; ++j) sum += dm.at(i, j);
        if (sum < best) {
            best = sum;
            first = i;
        }
    }
    std::vector<int> seeds{first};
    std::vector<double> min_dist(n);
    for (int i = 0; i < n; ++i) min_dist[i] = dm.at(i, first);
    while (static_cast<int>(seeds.size()) < k) {
        int next = -1;
        double far = -1;
        for (int i = 0; i < n; ++i) {
            if (min_dist[i] > far) {
                far = min_dist[i];
                next = i;
            }
        }
        seeds.push_back(next);
        for (int i = 0; i < n; ++i)
            min_dist[i] = std::min(min_dist[i], dm.at(i, next));
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

std::vector<int> random_seeds(const DistanceMatrix& dm, int k, std::uint64_t seed) {
    const int n = dm.size();
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace

KMedoidsResult k_medoids(const DistanceMatrix& dm, int k,
                         const KMedoidsOptions& opts) {
    const int n = dm.size();
    if (k < 2 || k > n)
        throw InvalidK("k_medoids: k=" + std::to_string(k) + " with n=" +
                       std::to_string(n));

    KMedoidsResult res;
    res.medoids = opts.random_init ? random_seeds(dm, k, opts.seed)
                                   : farthest_point_seeds(dm, k);
    res.partition.labels.assign(n, 0);

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        res.iterations = iter;

        // Assignment: nearest medoid, lowest medoid index on ties.
        res.total_cost = 0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = dm.at(i, res.medoids[0]);
            for (int c = 1; c < k; ++c) {
                double d = dm.at(i, res.medoids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            res.partition.labels[i] = best;
            res.total_cost += best_d;
        }

        // Update: recompute each cluster's medoid.
        std::vector<std::vector<int>> clusters(k);
        for (int i = 0; i < n; ++i) clusters[res.partition.labels[i]].push_back(i);
        bool changed = false;
        for (int c = 0; c < k; ++c) {
            if (clusters[c].empty()) continue; // medoid keeps its slot
            int best = -1;
            double best_sum = std::numeric_limits<double>::infinity();
            for (int i : clusters[c]) {
                double sum = 0;
                for (int j : clusters[c]) sum += dm.at(i, j);
                if (sum < best_sum) {
                    best_sum = sum;
                    best = i;
                }
            }
            if (best != res.medoids[c]) {
                res.medoids[c] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }

    // Keep the assignment consistent when the iteration cap cut off the
    // final update.
    res.total_cost = 0;
    for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = dm.at(i, res.medoids[0]);
        for (int c = 1; c < k; ++c) {
            double d = dm.at(i, res.medoids[c]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        res.partition.labels[i] = best;
        res.total_cost += best_d;
    }
    return res;
}

KMedoidsResult match_cluster_counts(const Partition& reference,
                                    const DistanceMatrix& dm,
                                    const KMedoidsOptions& opts) {
    int k = reference.num_clusters();
    if (k < 2)
        throw InvalidK("match_cluster_counts: reference has k=" +
                       std::to_string(k) + "; comparison needs k >= 2");
    return k_medoids(dm, k, opts);
}

} // namespace lcc
