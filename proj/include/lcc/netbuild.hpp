#ifndef LCC_NETBUILD_HPP
#define LCC_NETBUILD_HPP

#include <vector>

#include "lcc/dtw.hpp"

namespace lcc {

enum class EdgeRule { Union, Intersection };
enum class ThresholdMode { PerVertex, GlobalMean };

struct WeightedEdge {
    int u = 0;
    int v = 0;          // u <= v; u == v only on coarsened self-loops
    double weight = 0;  // in [0,1] for built graphs
};

struct WeightedGraph {
    int n = 0;
    std::vector<WeightedEdge> edges;
    std::vector<int> curve_ids; // vertex index -> curve id
    double d_max = 0;           // max distance over formed edges

    double total_weight_2m() const; // sum over i,j of A_ij
};

// Per-vertex thresholds eps_i = lambda * mean_{j != i} d(i,j). In
// GlobalMean mode every eps_i equals lambda times the overall mean
// pairwise distance. Throws TooFewCurves when n < 2.
std::vector<double> vertex_thresholds(const DistanceMatrix& dm, double lambda,
                                      ThresholdMode mode = ThresholdMode::PerVertex);

// eps-nearest-neighbor network. Under the Union rule an edge {i,j} forms
// when d(i,j) < eps_i or d(i,j) < eps_j; Intersection requires both.
// Edge weight is 1 - d/d_max over formed edges. Throws EmptyGraph when no
// edge forms.
WeightedGraph build_graph(const DistanceMatrix& dm, double lambda,
                          EdgeRule rule = EdgeRule::Union,
                          ThresholdMode mode = ThresholdMode::PerVertex);

} // namespace lcc

#endif
