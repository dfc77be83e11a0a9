#include "lcc/directory.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "lcc/errors.hpp"

namespace lcc {

double within_cluster_variance(const Partition& p,
                               const std::vector<NormalizedCurve>& curves,
                               const std::vector<std::vector<double>>& centers,
                               int window, CostMode mode) {
    const int k = p.num_clusters();
    if (k < 1) return 0;
    std::vector<double> sum(k, 0.0);
    std::vector<int> count(k, 0);
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        int c = p.labels[i];
        double d = dtw_distance(curves[i].values, centers[c], window, mode);
        sum[c] += d * d;
        count[c]++;
    }
    double total = 0;
    for (int c = 0; c < k; ++c) total += sum[c] / count[c];
    return total / k;
}

namespace {

SweepPoint evaluate_point(double gamma, const WeightedGraph& g,
                          const std::vector<NormalizedCurve>& curves,
                          const DistanceMatrix& dm, const SweepOptions& opts) {
    SweepPoint pt;
    pt.gamma = gamma;
    LouvainResult lr = louvain(g, gamma, opts.gamma_mode);
    pt.partition = std::move(lr.partition);
    pt.q = lr.final_q;
    pt.k = pt.partition.num_clusters();
    if (pt.k >= 2) {
        auto tlps = extract_tlps(pt.partition, curves, dm, opts.dba);
        std::vector<std::vector<double>> centers;
        centers.reserve(tlps.size());
        for (auto& t : tlps) centers.push_back(t.values);
        pt.vcn = vcn(pt.partition, centers, curves, opts.validity);
        pt.vcn_defined = true;
        pt.variance = within_cluster_variance(pt.partition, curves, centers,
                                              opts.dba.window, opts.dba.cost_mode);
    } else {
        // Single community: VCN undefined, variance against the lone TLP.
        auto tlps = extract_tlps(pt.partition, curves, dm, opts.dba);
        pt.variance = within_cluster_variance(pt.partition, curves,
                                              {tlps[0].values}, opts.dba.window,
                                              opts.dba.cost_mode);
    }
    return pt;
}

} // namespace

std::vector<SweepPoint> gamma_sweep(const WeightedGraph& g,
                                    const std::vector<NormalizedCurve>& curves,
                                    const DistanceMatrix& dm,
                                    const SweepOptions& opts) {
    if (opts.gamma_start <= opts.gamma_end || opts.gamma_end <= 0 ||
        opts.gamma_step <= 0)
        throw Error("gamma_sweep: need gamma_start > gamma_end > 0 and step > 0");

    // Descending grid, index-based so step rounding cannot skip points.
    std::vector<double> grid;
    int steps = static_cast<int>(
        std::floor((opts.gamma_start - opts.gamma_end) / opts.gamma_step + 1e-9));
    for (int i = 0; i <= steps; ++i)
        grid.push_back(opts.gamma_start - i * opts.gamma_step);

    std::vector<SweepPoint> points(grid.size());
    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            points[i] = evaluate_point(grid[i], g, curves, dm, opts);
    } else {
        std::vector<std::future<void>> jobs;
        for (int t = 0; t < threads; ++t) {
            jobs.push_back(std::async(std::launch::async, [&, t] {
                for (std::size_t i = t; i < grid.size(); i += threads)
                    points[i] = evaluate_point(grid[i], g, curves, dm, opts);
            }));
        }
        for (auto& j : jobs) j.get();
    }
    return points;
}

TlpDirectory build_directory(const std::vector<SweepPoint>& sweep,
                             const std::vector<KInterval>& intervals,
                             const std::vector<NormalizedCurve>& curves,
                             const DistanceMatrix& dm,
                             const DbaOptions& dba_opts) {
    if (sweep.empty()) throw Error("build_directory: empty sweep");

    TlpDirectory dir;
    bool any = false;
    for (const auto& iv : intervals) {
        DirectoryLayer layer;
        layer.interval = iv;
        const SweepPoint* best = nullptr;
        for (const auto& pt : sweep) {
            if (!pt.vcn_defined || !iv.contains(pt.k)) continue;
            if (!best || pt.vcn > best->vcn ||
                (pt.vcn == best->vcn && pt.gamma > best->gamma))
                best = &pt;
        }
        if (best) {
            layer.empty = false;
            layer.point = *best;
            layer.tlps = extract_tlps(best->partition, curves, dm, dba_opts);
            layer.mean_variance = best->variance;
            any = true;
        }
        dir.layers.push_back(std::move(layer));
    }
    if (!any) throw EmptyDirectory("build_directory: no interval matched any sweep point");
    return dir;
}

} // namespace lcc
