#include "lcc/centers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcc/errors.hpp"

namespace lcc {

int medoid(const std::vector<int>& members, const DistanceMatrix& dm) {
    if (members.empty()) throw EmptyCluster("medoid: empty cluster");
    int best = -1;
    double best_sum = std::numeric_limits<double>::infinity();
    for (int i : members) {
        double sum = 0;
        for (int j : members) sum += dm.at(i, j);
        if (sum < best_sum || (sum == best_sum && i < best)) {
            best_sum = sum;
            best = i;
        }
    }
    return best;
}

TypicalLoadProfile dba(const std::vector<const NormalizedCurve*>& members,
                       const std::vector<double>& init, const DbaOptions& opts) {
    if (members.empty()) throw EmptyCluster("dba: empty cluster");
    const std::size_t len = init.size();
    for (const auto* m : members)
        if (m->values.size() != len)
            throw LengthMismatch("dba: member length differs from center");

    TypicalLoadProfile tlp;
    tlp.values = init;

    std::vector<double> pool_sum(len), next(len);
    std::vector<int> pool_count(len);

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        std::fill(pool_sum.begin(), pool_sum.end(), 0.0);
        std::fill(pool_count.begin(), pool_count.end(), 0);
        double cost = 0;
        for (const auto* m : members) {
            auto [dist, path] =
                dtw_path(tlp.values, m->values, opts.window, opts.cost_mode);
            // Squared DP totals are already sums of squares.
            cost += (opts.cost_mode == CostMode::Squared) ? dist : dist * dist;
            for (auto [ci, mj] : path.steps) {
                pool_sum[ci] += m->values[mj];
                pool_count[ci]++;
            }
        }
        tlp.final_cost = cost;
        tlp.iterations_used = iter;

        double max_change = 0;
        for (std::size_t i = 0; i < len; ++i) {
            next[i] = pool_sum[i] / pool_count[i];
            max_change = std::max(max_change, std::abs(next[i] - tlp.values[i]));
        }
        tlp.values = next;
        if (max_change < opts.tolerance) break;
    }
    return tlp;
}

std::vector<TypicalLoadProfile> extract_tlps(const Partition& partition,
                                             const std::vector<NormalizedCurve>& curves,
                                             const DistanceMatrix& dm,
                                             const DbaOptions& opts) {
    const int k = partition.num_clusters();
    std::vector<std::vector<int>> clusters(k);
    for (std::size_t i = 0; i < partition.labels.size(); ++i)
        clusters[partition.labels[i]].push_back(static_cast<int>(i));

    std::vector<TypicalLoadProfile> tlps;
    tlps.reserve(k);
    for (int c = 0; c < k; ++c) {
        int seed = medoid(clusters[c], dm);
        std::vector<const NormalizedCurve*> members;
        members.reserve(clusters[c].size());
        for (int i : clusters[c]) members.push_back(&curves[i]);
        TypicalLoadProfile tlp = dba(members, curves[seed].values, opts);
        tlp.cluster_label = c;
        tlps.push_back(std::move(tlp));
    }
    return tlps;
}

} // namespace lcc
