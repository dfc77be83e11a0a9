#include "lcc/validity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lcc/errors.hpp"
#include "lcc/util.hpp"

namespace lcc {

namespace {

std::vector<std::vector<int>> group_by_cluster(const Partition& p, int k) {
    std::vector<std::vector<int>> clusters(k);
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        clusters[p.labels[i]].push_back(static_cast<int>(i));
    return clusters;
}

double dist(const std::vector<double>& a, const std::vector<double>& b,
            const ValidityOptions& o) {
    return dtw_distance(a, b, o.window, o.cost_mode);
}

// Mean member-to-own-center distance per cluster (Davies-Bouldin scatter).
std::vector<double> cluster_scatter(const std::vector<std::vector<int>>& clusters,
                                    const std::vector<std::vector<double>>& centers,
                                    const std::vector<NormalizedCurve>& curves,
                                    const ValidityOptions& o) {
    std::vector<double> s(clusters.size(), 0.0);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (int i : clusters[c]) s[c] += dist(curves[i].values, centers[c], o);
        s[c] /= static_cast<double>(clusters[c].size());
    }
    return s;
}

std::vector<double> data_centroid(const std::vector<NormalizedCurve>& curves) {
    std::vector<double> mean(curves[0].values.size(), 0.0);
    for (const auto& c : curves)
        for (std::size_t t = 0; t < mean.size(); ++t) mean[t] += c.values[t];
    for (double& m : mean) m /= static_cast<double>(curves.size());
    return mean;
}

} // namespace

double davies_bouldin(const Partition& p,
                      const std::vector<std::vector<double>>& centers,
                      const std::vector<NormalizedCurve>& curves,
                      const ValidityOptions& o) {
    const int k = p.num_clusters();
    if (k < 2) throw UndefinedForSingleCluster("davies_bouldin: needs k >= 2");
    auto clusters = group_by_cluster(p, k);
    auto scatter = cluster_scatter(clusters, centers, curves, o);

    double total = 0;
    for (int i = 0; i < k; ++i) {
        double worst = 0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            double cd = dist(centers[i], centers[j], o);
            if (cd <= 0)
                throw CoincidentCenters("davies_bouldin: centers " +
                                        std::to_string(i) + " and " +
                                        std::to_string(j) + " coincide");
            worst = std::max(worst, (scatter[i] + scatter[j]) / cd);
        }
        total += worst;
    }
    return total / k;
}

double vcn(const Partition& p, const std::vector<std::vector<double>>& centers,
           const std::vector<NormalizedCurve>& curves, const ValidityOptions& o) {
    const int k = p.num_clusters();
    if (k < 2) throw UndefinedForSingleCluster("vcn: needs k >= 2");
    auto clusters = group_by_cluster(p, k);

    double total = 0;
    for (int i = 0; i < k; ++i) {
        // Mean distance of this cluster's members to every center.
        std::vector<double> mean_to(k, 0.0);
        for (int x : clusters[i])
            for (int j = 0; j < k; ++j)
                mean_to[j] += dist(curves[x].values, centers[j], o);
        for (double& m : mean_to) m /= static_cast<double>(clusters[i].size());

        double wd = mean_to[i];
        double bd = std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j)
            if (j != i) bd = std::min(bd, mean_to[j]);

        double denom = std::max(bd, wd);
        total += (denom > 0) ? (bd - wd) / denom : 0.0;
    }
    return total / k;
}

double s_dbw(const Partition& p, const std::vector<std::vector<double>>& centers,
             const std::vector<NormalizedCurve>& curves, const ValidityOptions& o) {
    const int k = p.num_clusters();
    if (k < 2) throw UndefinedForSingleCluster("s_dbw: needs k >= 2");
    auto clusters = group_by_cluster(p, k);
    const int n = static_cast<int>(curves.size());

    // Per-cluster variance and overall data variance (squared distances).
    std::vector<double> sigma(k, 0.0);
    for (int c = 0; c < k; ++c) {
        for (int i : clusters[c]) {
            double d = dist(curves[i].values, centers[c], o);
            sigma[c] += d * d;
        }
        sigma[c] /= static_cast<double>(clusters[c].size());
    }
    std::vector<double> dbar = data_centroid(curves);
    double sigma_d = 0;
    for (const auto& c : curves) {
        double d = dist(c.values, dbar, o);
        sigma_d += d * d;
    }
    sigma_d /= n;
    if (sigma_d <= 0)
        throw DegenerateDensity("s_dbw: zero data variance");

    double scat = 0;
    for (double s : sigma) scat += s;
    scat = (scat / k) / sigma_d;

    double sum_sigma = 0;
    for (double s : sigma) sum_sigma += s;
    double stdev = std::sqrt(sum_sigma) / k;

    auto density = [&](const std::vector<double>& probe,
                       const std::vector<int>& points) {
        int count = 0;
        for (int i : points) {
            double d = dist(curves[i].values, probe, o);
            bool within = d <= stdev;
            if (o.density_mode == DensityMode::Corrected ? within : !within)
                ++count;
        }
        return count;
    };

    double dens_bw = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            std::vector<int> both = clusters[i];
            both.insert(both.end(), clusters[j].begin(), clusters[j].end());
            std::vector<double> mid(centers[i].size());
            for (std::size_t t = 0; t < mid.size(); ++t)
                mid[t] = 0.5 * (centers[i][t] + centers[j][t]);
            int di = density(centers[i], both);
            int dj = density(centers[j], both);
            int dm = density(mid, both);
            int denom = std::max(di, dj);
            if (denom == 0) {
                if (dm == 0) continue; // nothing near either probe
                throw DegenerateDensity("s_dbw: zero density at both centers");
            }
            dens_bw += static_cast<double>(dm) / denom;
        }
    }
    dens_bw /= static_cast<double>(k) * (k - 1);

    return scat + dens_bw;
}

double score_function(const Partition& p,
                      const std::vector<std::vector<double>>& centers,
                      const std::vector<NormalizedCurve>& curves,
                      const ValidityOptions& o) {
    const int k = p.num_clusters();
    if (k < 1) throw UndefinedForSingleCluster("score_function: empty partition");
    auto clusters = group_by_cluster(p, k);
    const int n = static_cast<int>(curves.size());

    std::vector<double> dbar = data_centroid(curves);
    double bcd = 0;
    for (int c = 0; c < k; ++c)
        bcd += dist(centers[c], dbar, o) * static_cast<double>(clusters[c].size());
    bcd /= static_cast<double>(n) * k;

    double wcd = 0;
    for (int c = 0; c < k; ++c) {
        double s = 0;
        for (int i : clusters[c]) s += dist(curves[i].values, centers[c], o);
        wcd += s / static_cast<double>(clusters[c].size());
    }

    double expo = (o.sf_mode == SfMode::Corrected) ? bcd - wcd : bcd + wcd;
    return 1.0 - 1.0 / std::exp(std::exp(expo));
}

double cop(const Partition& p, const std::vector<std::vector<double>>& centers,
           const std::vector<NormalizedCurve>& curves, const DistanceMatrix& dm,
           const ValidityOptions& o) {
    const int k = p.num_clusters();
    if (k < 2) throw UndefinedForSingleCluster("cop: needs k >= 2");
    auto clusters = group_by_cluster(p, k);
    const int n = static_cast<int>(curves.size());

    double total = 0;
    for (int c = 0; c < k; ++c) {
        double intra = 0;
        for (int i : clusters[c]) intra += dist(curves[i].values, centers[c], o);
        intra /= static_cast<double>(clusters[c].size());

        // min over outsiders of the max distance to a member
        double denom = std::numeric_limits<double>::infinity();
        for (int m = 0; m < n; ++m) {
            if (p.labels[m] == c) continue;
            double far = 0;
            for (int i : clusters[c]) far = std::max(far, dm.at(m, i));
            denom = std::min(denom, far);
        }
        if (denom > 0)
            total += clusters[c].size() * intra / denom;
        // denom == 0 implies intra == 0 as well (duplicates); contributes 0
    }
    return total / n;
}

EntropyResult consumer_entropy(const Partition& p,
                               const std::vector<std::string>& household_by_curve) {
    if (household_by_curve.size() != p.labels.size())
        throw Error("consumer_entropy: household list does not match partition");

    std::map<std::string, std::map<int, int>> counts;
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        counts[household_by_curve[i]][p.labels[i]]++;

    EntropyResult res;
    for (auto& [hh, dist] : counts) {
        int total = 0;
        for (auto& [c, cnt] : dist) total += cnt;
        double s = 0;
        for (auto& [c, cnt] : dist) {
            double pi = static_cast<double>(cnt) / total;
            s -= pi * std::log(pi);
        }
        res.per_household.emplace_back(hh, s);
        res.mean += s;
    }
    if (!res.per_household.empty()) res.mean /= static_cast<double>(res.per_household.size());
    return res;
}

std::string ValidityReport::to_json() const {
    std::ostringstream os;
    os << "{\"db\": " << format_g12(db) << ", \"vcn\": " << format_g12(vcn)
       << ", \"s_dbw\": " << format_g12(s_dbw) << ", \"sf\": " << format_g12(sf)
       << ", \"cop\": " << format_g12(cop)
       << ", \"mean_entropy\": " << format_g12(mean_entropy)
       << ", \"k\": " << k << ", \"center_mode\": \"" << center_mode << "\"}";
    return os.str();
}

std::string ValidityReport::csv_header() {
    return "db,vcn,s_dbw,sf,cop,mean_entropy,k,center_mode";
}

std::string ValidityReport::to_csv_row() const {
    std::ostringstream os;
    os << format_g12(db) << ',' << format_g12(vcn) << ',' << format_g12(s_dbw)
       << ',' << format_g12(sf) << ',' << format_g12(cop) << ','
       << format_g12(mean_entropy) << ',' << k << ',' << center_mode;
    return os.str();
}

ValidityReport compute_report(const Partition& p,
                              const std::vector<std::vector<double>>& centers,
                              const std::vector<NormalizedCurve>& curves,
                              const DistanceMatrix& dm,
                              const std::vector<std::string>& household_by_curve,
                              const std::string& center_mode,
                              const ValidityOptions& opts) {
    ValidityReport r;
    r.k = p.num_clusters();
    r.center_mode = center_mode;
    r.db = davies_bouldin(p, centers, curves, opts);
    r.vcn = vcn(p, centers, curves, opts);
    r.s_dbw = s_dbw(p, centers, curves, opts);
    r.sf = score_function(p, centers, curves, opts);
    r.cop = cop(p, centers, curves, dm, opts);
    r.mean_entropy = consumer_entropy(p, household_by_curve).mean;
    return r;
}

} // namespace lcc
