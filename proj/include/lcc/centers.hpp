#ifndef LCC_CENTERS_HPP
#define LCC_CENTERS_HPP

#include <vector>

#include "lcc/dtw.hpp"
#include "lcc/types.hpp"

namespace lcc {

struct TypicalLoadProfile {
    int cluster_label = -1;
    std::vector<double> values;
    int iterations_used = 0;
    double final_cost = 0; // within-cluster sum of squared DTW distances
};

// Member minimizing the summed distance to the rest of the cluster,
// lowest index on ties. Throws EmptyCluster.
int medoid(const std::vector<int>& members, const DistanceMatrix& dm);

struct DbaOptions {
    int window = 4;
    CostMode cost_mode = CostMode::AbsDiff;
    int max_iterations = 30;
    double tolerance = 1e-6; // max absolute coordinate change
};

// DTW barycenter averaging: align every member to the current center,
// pool member coordinates per center slot, replace each slot by its pool
// mean. Stops at the tolerance or the iteration cap.
TypicalLoadProfile dba(const std::vector<const NormalizedCurve*>& members,
                       const std::vector<double>& init,
                       const DbaOptions& opts = {});

// One medoid-initialized DBA center per cluster, labels ascending.
std::vector<TypicalLoadProfile> extract_tlps(const Partition& partition,
                                             const std::vector<NormalizedCurve>& curves,
                                             const DistanceMatrix& dm,
                                             const DbaOptions& opts = {});

} // namespace lcc

#endif
