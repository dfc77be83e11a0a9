#ifndef LCC_VALIDITY_HPP
#define LCC_VALIDITY_HPP

#include <string>
#include <vector>

#include "lcc/dtw.hpp"
#include "lcc/types.hpp"

namespace lcc {

// Score-function exponent: Corrected uses bcd - wcd, AsPublished bcd + wcd
// (the published formula appears to carry a sign typo).
enum class SfMode { Corrected, AsPublished };
// S_Dbw point-counting: Corrected counts points within stdev of the probe,
// AsPublished counts points beyond it.
enum class DensityMode { Corrected, AsPublished };

struct ValidityOptions {
    int window = 4;
    CostMode cost_mode = CostMode::AbsDiff;
    SfMode sf_mode = SfMode::Corrected;
    DensityMode density_mode = DensityMode::Corrected;
};

// All indices measure distance with banded DTW. Centers are one curve per
// cluster (DBA profile or medoid curve), indexed by cluster label.

double davies_bouldin(const Partition& p,
                      const std::vector<std::vector<double>>& centers,
                      const std::vector<NormalizedCurve>& curves,
                      const ValidityOptions& opts = {});

double vcn(const Partition& p,
           const std::vector<std::vector<double>>& centers,
           const std::vector<NormalizedCurve>& curves,
           const ValidityOptions& opts = {});

double s_dbw(const Partition& p,
             const std::vector<std::vector<double>>& centers,
             const std::vector<NormalizedCurve>& curves,
             const ValidityOptions& opts = {});

double score_function(const Partition& p,
                      const std::vector<std::vector<double>>& centers,
                      const std::vector<NormalizedCurve>& curves,
                      const ValidityOptions& opts = {});

double cop(const Partition& p,
           const std::vector<std::vector<double>>& centers,
           const std::vector<NormalizedCurve>& curves,
           const DistanceMatrix& dm,
           const ValidityOptions& opts = {});

// Shannon entropy (natural log) of each household's distribution of days
// over clusters, plus the mean over households.
struct EntropyResult {
    std::vector<std::pair<std::string, double>> per_household;
    double mean = 0;
};
EntropyResult consumer_entropy(const Partition& p,
                               const std::vector<std::string>& household_by_curve);

struct ValidityReport {
    double db = 0;
    double vcn = 0;
    double s_dbw = 0;
    double sf = 0;
    double cop = 0;
    double mean_entropy = 0;
    int k = 0;
    std::string center_mode; // "averaged" | "medoid"

    std::string to_json() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

ValidityReport compute_report(const Partition& p,
                              const std::vector<std::vector<double>>& centers,
                              const std::vector<NormalizedCurve>& curves,
                              const DistanceMatrix& dm,
                              const std::vector<std::string>& household_by_curve,
                              const std::string& center_mode,
                              const ValidityOptions& opts = {});

} // namespace lcc

#endif
