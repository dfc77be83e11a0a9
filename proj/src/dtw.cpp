#include "lcc/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <thread>

#include "lcc/errors.hpp"

namespace lcc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr char kMagic[8] = {'L', 'C', 'D', 'M', 'A', 'T', '0', '1'};

void check_inputs(std::span<const double> x, std::span<const double> y, int window) {
    if (x.size() != y.size())
        throw LengthMismatch("dtw: series lengths differ (" +
                             std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()) + ")");
    if (x.empty()) throw LengthMismatch("dtw: empty series");
    if (window < 1) throw Error("dtw: window must be >= 1");
}

} // namespace

double cell_cost(double a, double b, CostMode mode) {
    double d = std::abs(a - b);
    return mode == CostMode::Squared ? d * d : d;
}

double dtw_distance(std::span<const double> x, std::span<const double> y,
                    int window, CostMode mode) {
    check_inputs(x, y, window);
    const int n = static_cast<int>(x.size());

    // Two-row DP; cells outside the band stay at +inf.
    std::vector<double> prev(n, kInf), cur(n, kInf);
    for (int i = 0; i < n; ++i) {
        const int j_lo = std::max(0, i - window + 1);
        const int j_hi = std::min(n - 1, i + window - 1);
        std::fill(cur.begin(), cur.end(), kInf);
        for (int j = j_lo; j <= j_hi; ++j) {
            double best;
            if (i == 0 && j == 0) {
                best = 0;
            } else {
                best = kInf;
                if (i > 0) best = std::min(best, prev[j]);
                if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
                if (j > 0) best = std::min(best, cur[j - 1]);
            }
            cur[j] = best + cell_cost(x[i], y[j], mode);
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

std::pair<double, WarpingPath> dtw_path(std::span<const double> x,
                                        std::span<const double> y,
                                        int window, CostMode mode) {
    check_inputs(x, y, window);
    const int n = static_cast<int>(x.size());

    std::vector<double> acc(static_cast<std::size_t>(n) * n, kInf);
    auto cell = [&](int i, int j) -> double& { return acc[static_cast<std::size_t>(i) * n + j]; };

    for (int i = 0; i < n; ++i) {
        const int j_lo = std::max(0, i - window + 1);
        const int j_hi = std::min(n - 1, i + window - 1);
        for (int j = j_lo; j <= j_hi; ++j) {
            double best;
            if (i == 0 && j == 0) {
                best = 0;
            } else {
                best = kInf;
                if (i > 0) best = std::min(best, cell(i - 1, j));
                if (i > 0 && j > 0) best = std::min(best, cell(i - 1, j - 1));
                if (j > 0) best = std::min(best, cell(i, j - 1));
            }
            cell(i, j) = best + cell_cost(x[i], y[j], mode);
        }
    }

    // Backtrace, diagonal preferred, then (i-1,j), then (i,j-1).
    WarpingPath path;
    int i = n - 1, j = n - 1;
    path.steps.emplace_back(i, j);
    while (i > 0 || j > 0) {
        double diag = (i > 0 && j > 0) ? cell(i - 1, j - 1) : kInf;
        double up = (i > 0) ? cell(i - 1, j) : kInf;
        double left = (j > 0) ? cell(i, j - 1) : kInf;
        if (diag <= up && diag <= left) {
            --i; --j;
        } else if (up <= left) {
            --i;
        } else {
            --j;
        }
        path.steps.emplace_back(i, j);
    }
    std::reverse(path.steps.begin(), path.steps.end());
    return {cell(n - 1, n - 1), std::move(path)};
}

DistanceMatrix::DistanceMatrix(int n, int window, CostMode mode,
                               std::vector<int> curve_ids)
    : n_(n), window_(window), mode_(mode), ids_(std::move(curve_ids)) {
    if (n_ < 0) throw Error("DistanceMatrix: negative size");
    if (!ids_.empty() && static_cast<int>(ids_.size()) != n_)
        throw Error("DistanceMatrix: id count does not match n");
    if (ids_.empty()) {
        ids_.resize(n_);
        for (int i = 0; i < n_; ++i) ids_[i] = i;
    }
    upper_.assign(static_cast<std::size_t>(n_) * (n_ - 1) / 2, 0.0);
}

std::size_t DistanceMatrix::index(int i, int j) const {
    // strict upper triangle, i < j
    return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

double DistanceMatrix::at(int i, int j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return upper_[index(i, j)];
}

void DistanceMatrix::set(int i, int j, double d) {
    if (i == j) throw Error("DistanceMatrix: diagonal is fixed at zero");
    if (i > j) std::swap(i, j);
    upper_[index(i, j)] = d;
}

void DistanceMatrix::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(kMagic, sizeof kMagic);
    std::uint64_t n64 = static_cast<std::uint64_t>(n_);
    std::uint32_t w32 = static_cast<std::uint32_t>(window_);
    std::uint32_t m32 = static_cast<std::uint32_t>(mode_);
    out.write(reinterpret_cast<const char*>(&n64), sizeof n64);
    out.write(reinterpret_cast<const char*>(&w32), sizeof w32);
    out.write(reinterpret_cast<const char*>(&m32), sizeof m32);
    out.write(reinterpret_cast<const char*>(upper_.data()),
              static_cast<std::streamsize>(upper_.size() * sizeof(double)));
    if (!out) throw Error("short write to " + path);
}

DistanceMatrix DistanceMatrix::load(const std::string& path,
                                    std::vector<int> curve_ids) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw FormatError(path + ": not a distance-matrix file");
    std::uint64_t n64 = 0;
    std::uint32_t w32 = 0, m32 = 0;
    in.read(reinterpret_cast<char*>(&n64), sizeof n64);
    in.read(reinterpret_cast<char*>(&w32), sizeof w32);
    in.read(reinterpret_cast<char*>(&m32), sizeof m32);
    if (!in || m32 > 1) throw FormatError(path + ": corrupt header");
    DistanceMatrix dm(static_cast<int>(n64), static_cast<int>(w32),
                      static_cast<CostMode>(m32), std::move(curve_ids));
    in.read(reinterpret_cast<char*>(dm.upper_.data()),
            static_cast<std::streamsize>(dm.upper_.size() * sizeof(double)));
    if (!in) throw FormatError(path + ": truncated payload");
    return dm;
}

DistanceMatrix pairwise_distances(const std::vector<NormalizedCurve>& curves,
                                  int window, CostMode mode, int threads) {
    const int n = static_cast<int>(curves.size());
    if (n < 2) throw TooFewCurves("pairwise_distances: need at least 2 curves");
    const std::size_t len = curves[0].values.size();
    for (const auto& c : curves)
        if (c.values.size() != len)
            throw LengthMismatch("pairwise_distances: curve " +
                                 std::to_string(c.curve_id) + " has length " +
                                 std::to_string(c.values.size()));

    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = curves[i].curve_id;
    DistanceMatrix dm(n, window, mode, std::move(ids));

    threads = std::max(1, threads);
    auto worker = [&](int t) {
        for (int i = t; i < n; i += threads)
            for (int j = i + 1; j < n; ++j)
                dm.set(i, j, dtw_distance(curves[i].values, curves[j].values,
                                          window, mode));
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    return dm;
}

} // namespace lcc
