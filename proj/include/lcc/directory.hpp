#ifndef LCC_DIRECTORY_HPP
#define LCC_DIRECTORY_HPP

#include <vector>

#include "lcc/centers.hpp"
#include "lcc/community.hpp"
#include "lcc/validity.hpp"

namespace lcc {

struct SweepPoint {
    double gamma = 0;
    int k = 0;
    double vcn = 0;
    bool vcn_defined = false; // false when k < 2
    double q = 0;
    Partition partition;
    double variance = 0; // mean within-cluster variance
};

// Half-open interval [lo, hi) on the cluster count; hi < 0 means open-ended.
struct KInterval {
    int lo = 1;
    int hi = -1;
    bool contains(int k) const { return k >= lo && (hi < 0 || k < hi); }
};

struct SweepOptions {
    double gamma_start = 1.00;
    double gamma_end = 0.70;
    double gamma_step = 0.01;
    GammaMode gamma_mode = GammaMode::GainTerm;
    DbaOptions dba;
    ValidityOptions validity;
    int threads = 1;
};

// Mean over clusters of the mean squared DTW distance from members to
// their cluster center.
double within_cluster_variance(const Partition& p,
                               const std::vector<NormalizedCurve>& curves,
                               const std::vector<std::vector<double>>& centers,
                               int window,
                               CostMode mode = CostMode::AbsDiff);

// One point per gamma on the descending grid; VCN uses DBA centers.
std::vector<SweepPoint> gamma_sweep(const WeightedGraph& g,
                                    const std::vector<NormalizedCurve>& curves,
                                    const DistanceMatrix& dm,
                                    const SweepOptions& opts = {});

struct DirectoryLayer {
    KInterval interval;
    bool empty = true;
    SweepPoint point;
    std::vector<TypicalLoadProfile> tlps;
    double mean_variance = 0;
};

struct TlpDirectory {
    std::vector<DirectoryLayer> layers;
};

// Per interval, picks the sweep point with max VCN (larger gamma on
// ties) and extracts its TLPs. k = 1 points are never selected. Throws
// EmptyDirectory when every interval is empty.
TlpDirectory build_directory(const std::vector<SweepPoint>& sweep,
                             const std::vector<KInterval>& intervals,
                             const std::vector<NormalizedCurve>& curves,
                             const DistanceMatrix& dm,
                             const DbaOptions& dba_opts = {});

} // namespace lcc

#endif
