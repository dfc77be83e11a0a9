#include "lcc/community.hpp"

#include <algorithm>
#include <unordered_map>

#include "lcc/errors.hpp"

namespace lcc {

namespace {

struct AdjGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> nbr; // u != v
    std::vector<double> self;                             // A_ii
    std::vector<double> degree;                           // k_i = sum_j A_ij
    double two_m = 0;

    static AdjGraph from(const WeightedGraph& g) {
        AdjGraph a;
        a.n = g.n;
        a.nbr.resize(g.n);
        a.self.assign(g.n, 0.0);
        a.degree.assign(g.n, 0.0);
        for (const auto& e : g.edges) {
            if (e.u == e.v) {
                a.self[e.u] += e.weight;
            } else {
                a.nbr[e.u].emplace_back(e.v, e.weight);
                a.nbr[e.v].emplace_back(e.u, e.weight);
            }
        }
        for (int i = 0; i < a.n; ++i) {
            double k = a.self[i];
            for (auto& [j, w] : a.nbr[i]) k += w;
            a.degree[i] = k;
            a.two_m += k;
        }
        return a;
    }

    WeightedGraph to_weighted() const {
        WeightedGraph g;
        g.n = n;
        for (int i = 0; i < n; ++i) {
            if (self[i] != 0) g.edges.push_back({i, i, self[i]});
            for (auto& [j, w] : nbr[i])
                if (i < j) g.edges.push_back({i, j, w});
        }
        return g;
    }
};

} // namespace

double modularity(const WeightedGraph& g, const Partition& p) {
    if (static_cast<int>(p.labels.size()) != g.n)
        throw Error("modularity: partition does not cover the graph");
    double two_m = g.total_weight_2m();
    if (two_m <= 0) throw EmptyGraph("modularity: graph has no weight");

    std::unordered_map<int, double> sigma_in, sigma_tot;
    std::vector<double> degree(g.n, 0.0);
    for (const auto& e : g.edges) {
        if (e.u == e.v) {
            degree[e.u] += e.weight;
        } else {
            degree[e.u] += e.weight;
            degree[e.v] += e.weight;
        }
        if (p.labels[e.u] == p.labels[e.v])
            sigma_in[p.labels[e.u]] += (e.u == e.v) ? e.weight : 2 * e.weight;
    }
    for (int i = 0; i < g.n; ++i) sigma_tot[p.labels[i]] += degree[i];

    double q = 0;
    for (auto& [c, tot] : sigma_tot) {
        double in = 0;
        if (auto it = sigma_in.find(c); it != sigma_in.end()) in = it->second;
        q += in / two_m - (tot / two_m) * (tot / two_m);
    }
    return q;
}

double delta_q(const CommunityAggregates& a, double gamma, GammaMode mode) {
    const double m2 = a.two_m;
    auto sq = [](double x) { return x * x; };
    if (mode == GammaMode::GainTerm) {
        return ((a.sigma_in + gamma * a.k_j_in) / m2 - sq((a.sigma_tot + a.k_j) / m2)) -
               (a.sigma_in / m2 - sq(a.sigma_tot / m2) - sq(a.k_j / m2));
    }
    // Resolution on the null model instead of the gain term.
    return a.k_j_in / m2 - gamma * 2 * a.sigma_tot * a.k_j / (m2 * m2);
}

LouvainResult louvain(const WeightedGraph& g, double gamma, GammaMode mode,
                      const MoveObserver& observer) {
    if (g.n == 0) throw EmptyGraph("louvain: empty graph");
    if (g.total_weight_2m() <= 0) throw EmptyGraph("louvain: graph has no weight");

    AdjGraph work = AdjGraph::from(g);
    std::vector<int> vertex_to_coarse(g.n);
    for (int v = 0; v < g.n; ++v) vertex_to_coarse[v] = v;

    LouvainResult result;
    int level = 0;

    while (true) {
        const int n = work.n;
        const double two_m = work.two_m;
        std::vector<int> labels(n);
        std::vector<double> sigma_tot(n, 0.0);
        std::vector<double> sigma_in(n, 0.0);
        for (int v = 0; v < n; ++v) {
            labels[v] = v;
            sigma_tot[v] = work.degree[v];
            sigma_in[v] = work.self[v];
        }

        WeightedGraph level_snapshot;
        if (observer) level_snapshot = work.to_weighted();

        bool level_changed = false;
        bool local_change = true;
        while (local_change) {
            local_change = false;
            for (int j = 0; j < n; ++j) {
                const int old_label = labels[j];
                const double k_j = work.degree[j];

                // Weight from j to each adjacent community (single count).
                std::unordered_map<int, double> w_to;
                w_to[old_label]; // candidate even without remaining links
                for (auto& [u, w] : work.nbr[j]) w_to[labels[u]] += w;

                // Isolate j.
                sigma_tot[old_label] -= k_j;
                double internal = 2 * w_to[old_label] + work.self[j];
                sigma_in[old_label] -= internal;
                labels[j] = -1;

                auto gain_of = [&](int c) {
                    CommunityAggregates agg;
                    agg.sigma_in = sigma_in[c];
                    agg.sigma_tot = sigma_tot[c];
                    agg.k_j = k_j;
                    auto it = w_to.find(c);
                    agg.k_j_in = (it == w_to.end()) ? 0.0 : 2 * it->second;
                    agg.two_m = two_m;
                    return delta_q(agg, gamma, mode);
                };

                // Deterministic candidate order: ascending community label.
                std::vector<int> candidates;
                candidates.reserve(w_to.size());
                for (auto& [c, w] : w_to) candidates.push_back(c);
                std::sort(candidates.begin(), candidates.end());

                double gain_old = gain_of(old_label);
                int best_label = old_label;
                double best_gain = gain_old;
                for (int c : candidates) {
                    double gain = gain_of(c);
                    if (observer)
                        observer({level_snapshot, labels, j, c, gain, level});
                    if (gain > best_gain ||
                        (gain == best_gain && c < best_label)) {
                        best_gain = gain;
                        best_label = c;
                    }
                }

                // Strict improvement over staying put, or no move.
                int target = (best_gain > gain_old) ? best_label : old_label;
                labels[j] = target;
                sigma_tot[target] += k_j;
                auto it = w_to.find(target);
                double w_in = (it == w_to.end()) ? 0.0 : it->second;
                sigma_in[target] += 2 * w_in + work.self[j];
                if (target != old_label) {
                    local_change = true;
                    level_changed = true;
                }
            }
        }

        // Dense community relabel, ordered by lowest member vertex.
        std::unordered_map<int, int> dense;
        int k = 0;
        for (int v = 0; v < n; ++v)
            if (dense.emplace(labels[v], k).second) ++k;
        for (int v = 0; v < n; ++v) labels[v] = dense[labels[v]];

        for (int& c : vertex_to_coarse) c = labels[c];

        Partition flat;
        flat.labels = vertex_to_coarse;
        flat.compact();
        result.q_history.push_back(modularity(g, flat));
        result.partition = std::move(flat);
        ++result.passes;
        ++level;

        if (!level_changed) break;

        // Coarsen communities into super-vertices with self-loops.
        AdjGraph coarse;
        coarse.n = k;
        coarse.nbr.resize(k);
        coarse.self.assign(k, 0.0);
        coarse.degree.assign(k, 0.0);
        std::unordered_map<std::int64_t, double> agg_edges;
        for (int u = 0; u < n; ++u) {
            coarse.self[labels[u]] += work.self[u];
            for (auto& [v, w] : work.nbr[u]) {
                if (u > v) continue;
                int cu = labels[u], cv = labels[v];
                if (cu == cv) {
                    coarse.self[cu] += 2 * w;
                } else {
                    if (cu > cv) std::swap(cu, cv);
                    agg_edges[static_cast<std::int64_t>(cu) * k + cv] += w;
                }
            }
        }
        for (auto& [key, w] : agg_edges) {
            int cu = static_cast<int>(key / k);
            int cv = static_cast<int>(key % k);
            coarse.nbr[cu].emplace_back(cv, w);
            coarse.nbr[cv].emplace_back(cu, w);
        }
        for (auto& lst : coarse.nbr)
            std::sort(lst.begin(), lst.end());
        for (int i = 0; i < k; ++i) {
            double deg = coarse.self[i];
            for (auto& [j, w] : coarse.nbr[i]) deg += w;
            coarse.degree[i] = deg;
            coarse.two_m += deg;
        }
        work = std::move(coarse);
    }

    result.final_q = result.q_history.back();
    return result;
}

} // namespace lcc
