#ifndef LCC_COMMUNITY_HPP
#define LCC_COMMUNITY_HPP

#include <functional>
#include <vector>

#include "lcc/netbuild.hpp"
#include "lcc/types.hpp"

namespace lcc {

// Where the resolution parameter acts in the move gain: GainTerm scales
// the incoming-weight term, NullModel scales the degree null model.
enum class GammaMode { GainTerm, NullModel };

// Weighted modularity of a partition. Self-loop edges contribute A_ii
// once; off-diagonal edges contribute A_ij = A_ji. Throws EmptyGraph when
// the total weight is zero.
double modularity(const WeightedGraph& g, const Partition& p);

// Running sums needed by the move gain for one candidate community.
struct CommunityAggregates {
    double sigma_in = 0;   // sum over ordered member pairs of A_uv (internal)
    double sigma_tot = 0;  // sum of weighted degrees of members
    double k_j = 0;        // weighted degree of the moving vertex
    double k_j_in = 0;     // sum over ordered pairs of A between j and members
    double two_m = 0;      // total weight, sum over i,j of A_ij
};

// Gain of inserting an isolated vertex into the candidate community.
double delta_q(const CommunityAggregates& agg, double gamma,
               GammaMode mode = GammaMode::GainTerm);

// Called for every evaluated insertion during the local-move phase.
// `labels` is the current working assignment with the vertex isolated;
// `gain` is the Eq-style move gain for placing it into `target`.
struct MoveEval {
    const WeightedGraph& level_graph;
    const std::vector<int>& labels;
    int vertex;
    int target;
    double gain;
    int level;
};
using MoveObserver = std::function<void(const MoveEval&)>;

struct LouvainResult {
    Partition partition;           // flat partition over original vertices
    std::vector<double> q_history; // modularity after each outer pass
    int passes = 0;
    double final_q = 0;
};

// Deterministic Louvain: ascending vertex scan, lowest-label tie-break,
// strict-improvement moves, coarsen and repeat until no pass changes
// anything.
LouvainResult louvain(const WeightedGraph& g, double gamma,
                      GammaMode mode = GammaMode::GainTerm,
                      const MoveObserver& observer = {});

} // namespace lcc

#endif
