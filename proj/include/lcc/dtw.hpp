#ifndef LCC_DTW_HPP
#define LCC_DTW_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcc/types.hpp"

namespace lcc {

enum class CostMode { AbsDiff, Squared };

// Alignment between two equal-length series. Steps run from (0,0) to
// (n-1,n-1), each index non-decreasing with increments of at most 1, and
// |i-j| < window on every step.
struct WarpingPath {
    std::vector<std::pair<int, int>> steps;
};

double cell_cost(double a, double b, CostMode mode);

// Banded DTW distance. Cells with |i-j| >= window are forbidden.
// Throws LengthMismatch on unequal lengths.
double dtw_distance(std::span<const double> x, std::span<const double> y,
                    int window, CostMode mode = CostMode::AbsDiff);

// Distance plus the optimal path. Backtrace ties prefer diagonal, then
// (i-1,j), then (i,j-1), so paths are deterministic.
std::pair<double, WarpingPath> dtw_path(std::span<const double> x,
                                        std::span<const double> y,
                                        int window,
                                        CostMode mode = CostMode::AbsDiff);

// Symmetric pairwise distances, strict upper triangle stored row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(int n, int window, CostMode mode, std::vector<int> curve_ids);

    int size() const { return n_; }
    int window() const { return window_; }
    CostMode cost_mode() const { return mode_; }
    const std::vector<int>& curve_ids() const { return ids_; }

    double at(int i, int j) const;
    void set(int i, int j, double d); // i != j

    void save(const std::string& path) const; // flat binary, bit-exact
    static DistanceMatrix load(const std::string& path, std::vector<int> curve_ids);

    const std::vector<double>& raw_upper() const { return upper_; }

private:
    std::size_t index(int i, int j) const; // requires i < j

    int n_ = 0;
    int window_ = 0;
    CostMode mode_ = CostMode::AbsDiff;
    std::vector<int> ids_;
    std::vector<double> upper_;
};

// Computes all unordered pairs. Pairs are distributed across `threads`
// workers, each writing to disjoint slots; results are identical for any
// thread count.
DistanceMatrix pairwise_distances(const std::vector<NormalizedCurve>& curves,
                                  int window,
                                  CostMode mode = CostMode::AbsDiff,
                                  int threads = 1);

} // namespace lcc

#endif
