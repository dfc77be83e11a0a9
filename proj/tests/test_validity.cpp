#include <cmath>
#include <random>

#include "doctest.h"
#include "lcc/errors.hpp"
#include "lcc/validity.hpp"
#include "oracles.hpp"

using namespace lcc;

namespace {

NormalizedCurve curve(std::vector<double> v, int id = 0) {
    NormalizedCurve c;
    c.curve_id = id;
    c.values = std::move(v);
    return c;
}

// Random small instance: k blobs, per-cluster medoid-as-mean centers.
oracle::Instance random_instance(std::mt19937& rng, int n, int k, int len = 8) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.05);
    oracle::Instance in;
    std::vector<std::vector<double>> bases(k);
    for (auto& b : bases) {
        b.resize(len);
        for (auto& x : b) x = u(rng);
    }
    for (int i = 0; i < n; ++i) {
        int c = i % k; // every cluster non-empty
        std::vector<double> v = bases[c];
        for (auto& x : v) x = std::max(0.0, x + noise(rng));
        in.curves.push_back(curve(std::move(v), i));
        in.labels.push_back(c);
    }
    // centers: elementwise means per cluster (any fixed rule works here)
    in.centers.assign(k, std::vector<double>(len, 0.0));
    std::vector<int> count(k, 0);
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < len; ++t) in.centers[in.labels[i]][t] += in.curves[i].values[t];
        count[in.labels[i]]++;
    }
    for (int c = 0; c < k; ++c)
        for (int t = 0; t < len; ++t) in.centers[c][t] /= count[c];
    return in;
}

Partition to_partition(const std::vector<int>& labels) {
    Partition p;
    p.labels = labels;
    return p;
}

} // namespace

TEST_CASE("all six indices match their naive oracles on random instances") {
    std::mt19937 rng(41);
    ValidityOptions opts;
    for (int rep = 0; rep < 25; ++rep) {
        int k = 2 + static_cast<int>(rng() % 4);
        int n = k * (2 + static_cast<int>(rng() % 8));
        auto in = random_instance(rng, n, k);
        auto p = to_partition(in.labels);
        auto dm = pairwise_distances(in.curves, opts.window);

        CHECK(davies_bouldin(p, in.centers, in.curves, opts) ==
              doctest::Approx(oracle::naive_db(in)).epsilon(1e-9));
        CHECK(vcn(p, in.centers, in.curves, opts) ==
              doctest::Approx(oracle::naive_vcn(in)).epsilon(1e-9));
        CHECK(score_function(p, in.centers, in.curves, opts) ==
              doctest::Approx(oracle::naive_sf(in, true)).epsilon(1e-9));
        CHECK(cop(p, in.centers, in.curves, dm, opts) ==
              doctest::Approx(oracle::naive_cop(in)).epsilon(1e-9));
        CHECK(s_dbw(p, in.centers, in.curves, opts) ==
              doctest::Approx(oracle::naive_sdbw(in, true)).epsilon(1e-9));

        ValidityOptions literal = opts;
        literal.sf_mode = SfMode::AsPublished;
        literal.density_mode = DensityMode::AsPublished;
        CHECK(score_function(p, in.centers, in.curves, literal) ==
              doctest::Approx(oracle::naive_sf(in, false)).epsilon(1e-9));
        CHECK(s_dbw(p, in.centers, in.curves, literal) ==
              doctest::Approx(oracle::naive_sdbw(in, false)).epsilon(1e-9));
    }
}

TEST_CASE("DB: hand case with S=1 and center distance 4 gives 0.5") {
    // two clusters, each member exactly 1 away from its center along flat curves
    std::vector<NormalizedCurve> curves;
    curves.push_back(curve(std::vector<double>(4, 0.75)));  // center 0 at 0.5: d = 4*0.25 = 1
    curves.push_back(curve(std::vector<double>(4, 0.25)));
    curves.push_back(curve(std::vector<double>(4, 1.75)));  // center 1 at 1.5
    curves.push_back(curve(std::vector<double>(4, 1.25)));
    std::vector<std::vector<double>> centers{std::vector<double>(4, 0.5),
                                             std::vector<double>(4, 1.5)};
    Partition p = to_partition({0, 0, 1, 1});
    // flat curves: DTW = 4*|level difference|; S = 1 each, d(centers) = 4
    CHECK(davies_bouldin(p, centers, curves) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("DB tends to zero for tight, far-apart clusters") {
    std::vector<NormalizedCurve> curves;
    for (int i = 0; i < 3; ++i) curves.push_back(curve(std::vector<double>(4, 0.0), i));
    for (int i = 3; i < 6; ++i) curves.push_back(curve(std::vector<double>(4, 5.0), i));
    std::vector<std::vector<double>> centers{std::vector<double>(4, 0.0),
                                             std::vector<double>(4, 5.0)};
    Partition p = to_partition({0, 0, 0, 1, 1, 1});
    CHECK(davies_bouldin(p, centers, curves) == doctest::Approx(0.0));
}

TEST_CASE("DB rejects coincident centers") {
    std::vector<NormalizedCurve> curves{curve({0.1, 0.9}), curve({0.9, 0.1})};
    std::vector<std::vector<double>> centers{{0.5, 0.5}, {0.5, 0.5}};
    Partition p = to_partition({0, 1});
    CHECK_THROWS_AS(davies_bouldin(p, centers, curves), CoincidentCenters);
}

TEST_CASE("VCN anchors: perfect separation gives 1, bd=wd gives 0") {
    std::vector<NormalizedCurve> curves;
    for (int i = 0; i < 3; ++i) curves.push_back(curve({0.0, 0.0, 0.0}, i));
    for (int i = 3; i < 6; ++i) curves.push_back(curve({1.0, 1.0, 1.0}, i));
    std::vector<std::vector<double>> centers{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
    Partition p = to_partition({0, 0, 0, 1, 1, 1});
    CHECK(vcn(p, centers, curves) == doctest::Approx(1.0));

    // members equidistant to both centers
    std::vector<NormalizedCurve> mid{curve({0.5, 0.5, 0.5}, 0), curve({0.5, 0.5, 0.5}, 1)};
    Partition pm = to_partition({0, 1});
    CHECK(vcn(pm, centers, mid) == doctest::Approx(0.0));
}

TEST_CASE("VCN stays within [-1, 1]") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        auto in = random_instance(rng, 24, 3);
        auto v = vcn(to_partition(in.labels), in.centers, in.curves);
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("SF anchor: bcd == wcd gives 1 - 1/e in corrected mode") {
    // one curve per cluster placed so bcd and wcd are both zero
    std::vector<NormalizedCurve> curves{curve({0.2, 0.2}), curve({0.2, 0.2})};
    std::vector<std::vector<double>> centers{{0.2, 0.2}, {0.2, 0.2}};
    Partition p = to_partition({0, 1});
    CHECK(score_function(p, centers, curves) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("S_Dbw is zero for well-separated duplicate clusters") {
    std::vector<NormalizedCurve> curves;
    for (int i = 0; i < 4; ++i) curves.push_back(curve({0.0, 0.0}, i));
    for (int i = 4; i < 8; ++i) curves.push_back(curve({3.0, 3.0}, i));
    std::vector<std::vector<double>> centers{{0.0, 0.0}, {3.0, 3.0}};
    Partition p = to_partition({0, 0, 0, 0, 1, 1, 1, 1});
    CHECK(s_dbw(p, centers, curves) == doctest::Approx(0.0));
}

TEST_CASE("S_Dbw punishes an artificially split cluster") {
    std::mt19937 rng(43);
    // one blob split in half vs the same blob against a far-away blob
    std::normal_distribution<double> noise(0.0, 0.05);
    std::vector<NormalizedCurve> curves;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> v(6, 0.5);
        for (auto& x : v) x += noise(rng);
        curves.push_back(curve(std::move(v), i));
    }
    std::vector<std::vector<double>> centers{std::vector<double>(6, 0.5),
                                             std::vector<double>(6, 0.5001)};
    Partition split = to_partition(std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1, 0, 1,
                                                    0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
    double bad = s_dbw(split, centers, curves);
    CHECK(bad > 0.9); // midpoint about as dense as the centers
}

TEST_CASE("COP anchors") {
    std::vector<NormalizedCurve> curves;
    for (int i = 0; i < 3; ++i) curves.push_back(curve({0.0, 0.0}, i));
    for (int i = 3; i < 6; ++i) curves.push_back(curve({2.0, 2.0}, i));
    std::vector<std::vector<double>> centers{{0.0, 0.0}, {2.0, 2.0}};
    Partition p = to_partition({0, 0, 0, 1, 1, 1});
    auto dm = pairwise_distances(curves, 4);
    CHECK(cop(p, centers, curves, dm) == doctest::Approx(0.0));

    // two singleton clusters: intra terms are zero
    std::vector<NormalizedCurve> two{curve({0.0, 0.0}, 0), curve({1.0, 0.0}, 1)};
    auto dm2 = pairwise_distances(two, 4);
    Partition p2 = to_partition({0, 1});
    std::vector<std::vector<double>> c2{{0.0, 0.0}, {1.0, 0.0}};
    CHECK(cop(p2, c2, two, dm2) == doctest::Approx(0.0));
    CHECK_THROWS_AS(cop(to_partition({0, 0}), c2, two, dm2, {}),
                    UndefinedForSingleCluster);
}

TEST_CASE("consumer entropy anchors") {
    Partition p = to_partition({0, 0, 0, 0, 1, 1, 0, 0, 0, 1});
    std::vector<std::string> hh{"a", "a", "a", "a",  // all in cluster 0 -> S=0
                                "b", "b", "b", "b",  // 2/2 split -> ln 2
                                "c", "c"};           // split 1/1 -> ln 2
    auto res = consumer_entropy(p, hh);
    REQUIRE(res.per_household.size() == 3);
    CHECK(res.per_household[0].second == doctest::Approx(0.0));
    CHECK(std::abs(res.per_household[1].second - std::log(2.0)) <= 1e-12);
    CHECK(std::abs(res.per_household[2].second - std::log(2.0)) <= 1e-12);

    // 3/1 split
    Partition p31 = to_partition({0, 0, 0, 1});
    auto r31 = consumer_entropy(p31, {"x", "x", "x", "x"});
    double expected = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
    CHECK(r31.per_household[0].second == doctest::Approx(expected).epsilon(1e-9));
    CHECK(r31.per_household[0].second == doctest::Approx(0.5623).epsilon(1e-3));
}

TEST_CASE("indices are invariant under cluster relabeling") {
    std::mt19937 rng(44);
    auto in = random_instance(rng, 18, 3);
    auto dm = pairwise_distances(in.curves, 4);
    auto p = to_partition(in.labels);

    // swap labels 0<->2 and reorder centers accordingly
    auto swapped = in.labels;
    for (auto& l : swapped) l = (l == 0) ? 2 : (l == 2 ? 0 : l);
    auto pc = to_partition(swapped);
    std::vector<std::vector<double>> centers2{in.centers[2], in.centers[1],
                                              in.centers[0]};

    CHECK(davies_bouldin(p, in.centers, in.curves) ==
          doctest::Approx(davies_bouldin(pc, centers2, in.curves)).epsilon(1e-12));
    CHECK(vcn(p, in.centers, in.curves) ==
          doctest::Approx(vcn(pc, centers2, in.curves)).epsilon(1e-12));
    CHECK(s_dbw(p, in.centers, in.curves) ==
          doctest::Approx(s_dbw(pc, centers2, in.curves)).epsilon(1e-12));
    CHECK(score_function(p, in.centers, in.curves) ==
          doctest::Approx(score_function(pc, centers2, in.curves)).epsilon(1e-12));
    CHECK(cop(p, in.centers, in.curves, dm) ==
          doctest::Approx(cop(pc, centers2, in.curves, dm)).epsilon(1e-12));
}

TEST_CASE("validity report serialization is stable") {
    ValidityReport r;
    r.db = 1.5;
    r.vcn = 0.25;
    r.s_dbw = 0.125;
    r.sf = 0.5;
    r.cop = 0.75;
    r.mean_entropy = 0.0;
    r.k = 3;
    r.center_mode = "averaged";
    CHECK(r.to_json() ==
          "{\"db\": 1.5, \"vcn\": 0.25, \"s_dbw\": 0.125, \"sf\": 0.5, "
          "\"cop\": 0.75, \"mean_entropy\": 0, \"k\": 3, "
          "\"center_mode\": \"averaged\"}");
    CHECK(r.to_csv_row() == "1.5,0.25,0.125,0.5,0.75,0,3,averaged");
}
