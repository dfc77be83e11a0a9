#include "lcc/netbuild.hpp"

#include <algorithm>

#include "lcc/errors.hpp"

namespace lcc {

double WeightedGraph::total_weight_2m() const {
    double s = 0;
    for (const auto& e : edges) s += (e.u == e.v) ? e.weight : 2 * e.weight;
    return s;
}

std::vector<double> vertex_thresholds(const DistanceMatrix& dm, double lambda,
                                      ThresholdMode mode) {
    const int n = dm.size();
    if (n < 2) throw TooFewCurves("vertex_thresholds: need at least 2 curves");
    if (lambda <= 0) throw Error("vertex_thresholds: lambda must be positive");

    std::vector<double> eps(n, 0.0);
    if (mode == ThresholdMode::GlobalMean) {
        double sum = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) sum += dm.at(i, j);
        double mean = sum / (static_cast<double>(n) * (n - 1) / 2);
        std::fill(eps.begin(), eps.end(), lambda * mean);
        return eps;
    }
    for (int i = 0; i < n; ++i) {
        double sum = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) sum += dm.at(i, j);
        eps[i] = lambda * sum / (n - 1);
    }
    return eps;
}

WeightedGraph build_graph(const DistanceMatrix& dm, double lambda,
                          EdgeRule rule, ThresholdMode mode) {
    const std::vector<double> eps = vertex_thresholds(dm, lambda, mode);
    const int n = dm.size();

    WeightedGraph g;
    g.n = n;
    g.curve_ids = dm.curve_ids();

    double d_max = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = dm.at(i, j);
            bool below_i = d < eps[i];
            bool below_j = d < eps[j];
            bool keep = (rule == EdgeRule::Union) ? (below_i || below_j)
                                                  : (below_i && below_j);
            if (!keep) continue;
            g.edges.push_back({i, j, d}); // weight holds the distance until d_max is known
            d_max = std::max(d_max, d);
        }
    }
    if (g.edges.empty())
        throw EmptyGraph("build_graph: no edges at lambda=" + std::to_string(lambda) +
                         "; raise lambda");
    g.d_max = d_max;
    for (auto& e : g.edges)
        e.weight = (d_max > 0) ? 1.0 - e.weight / d_max : 1.0;
    return g;
}

} // namespace lcc
