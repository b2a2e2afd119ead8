#include "chromaname/clustering.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "chromaname/delta_e.hpp"
#include "chromaname/error.hpp"
#include "oracles.hpp"

namespace chromaname {
namespace {

std::vector<LabPoint> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> L(0.0, 100.0);
    std::uniform_real_distribution<double> ab(-80.0, 80.0);
    std::vector<LabPoint> pts(n);
    for (auto& p : pts) p = {L(rng), ab(rng), ab(rng)};
    return pts;
}

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

TEST(KMeans, SeparatesTwoPureGroups) {
    std::vector<LabPoint> pts(5, LabPoint{0, 0, 0});
    pts.insert(pts.end(), 5, LabPoint{100, 0, 0});
    const auto model = kmeans(pts, 2, {42});
    ASSERT_EQ(model.centroids.size(), 2u);
    const bool ordered = model.centroids[0].L == 0.0;
    EXPECT_EQ(model.centroids[ordered ? 0 : 1], (LabPoint{0, 0, 0}));
    EXPECT_EQ(model.centroids[ordered ? 1 : 0], (LabPoint{100, 0, 0}));
    EXPECT_EQ(model.objective, 0.0);
    EXPECT_TRUE(model.converged);
}

TEST(KMeans, SingleClusterIsTheMean) {
    std::mt19937_64 rng(3);
    const auto pts = random_points(rng, 50);
    LabPoint mean;
    for (const auto& p : pts) {
        mean.L += p.L / 50.0;
        mean.a += p.a / 50.0;
        mean.b += p.b / 50.0;
    }
    double sse = 0.0;
    for (const auto& p : pts) sse += squared_distance(p, mean);
    const auto model = kmeans(pts, 1, {1});
    EXPECT_NEAR(model.centroids[0].L, mean.L, 1e-9);
    EXPECT_NEAR(model.centroids[0].a, mean.a, 1e-9);
    EXPECT_NEAR(model.centroids[0].b, mean.b, 1e-9);
    EXPECT_NEAR(model.objective, sse, 1e-9 * sse);
}

TEST(KMeans, RecoversEightBlobs) {
    const auto blobs = testing::make_blobs(8, 808);
    const auto model = kmeans(blobs.points, 8, {2025}, {.restarts = kFinalRestarts});
    EXPECT_TRUE(testing::perfectly_pure(blobs.labels, model.assignments, 8));
}

TEST(KMeans, RejectsInvalidRequests) {
    const std::vector<LabPoint> dup(10, LabPoint{1, 2, 3});
    EXPECT_EQ(error_of([&] { kmeans(dup, 2, {0}); }), ErrorCode::TooFewDistinctPoints);
    EXPECT_EQ(error_of([&] { kmeans({}, 1, {0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([&] { kmeans(dup, 0, {0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([&] { kmeans(dup, 1, {0}, {.restarts = 0}); }), ErrorCode::InvalidArgument);
}

TEST(KMeans, DeterministicForFixedSeed) {
    std::mt19937_64 rng(11);
    const auto pts = random_points(rng, 400);
    const auto a = kmeans(pts, 12, {77}, {.restarts = 3});
    const auto b = kmeans(pts, 12, {77}, {.restarts = 3});
    ASSERT_EQ(a.centroids.size(), b.centroids.size());
    EXPECT_EQ(std::memcmp(a.centroids.data(), b.centroids.data(), a.centroids.size() * sizeof(LabPoint)), 0);
    EXPECT_EQ(a.assignments, b.assignments);
    EXPECT_EQ(a.objective, b.objective);
    const auto c = kmeans(pts, 12, {78}, {.restarts = 3});
    EXPECT_NE(a.objective_trace, c.objective_trace);
}

TEST(KMeans, ConvergedModelInvariants) {
    std::mt19937_64 rng(21);
    for (int instance = 0; instance < 10; ++instance) {
        const std::size_t n = 50 + rng() % 500;
        const auto pts = random_points(rng, n);
        const std::size_t k = 1 + rng() % 20;
        const auto model = kmeans(pts, k, {rng()}, {.restarts = 2});
        ASSERT_TRUE(model.converged);
        std::vector<LabPoint> sums(k);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = model.assignments[i];
            ASSERT_LT(c, k);
            sums[c].L += pts[i].L;
            sums[c].a += pts[i].a;
            sums[c].b += pts[i].b;
            ++counts[c];
            // Brute-force nearest centroid.
            double best = squared_distance(pts[i], model.centroids[c]);
            for (std::size_t j = 0; j < k; ++j) EXPECT_GE(squared_distance(pts[i], model.centroids[j]), best - 1e-9);
        }
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) objective += squared_distance(pts[i], model.centroids[model.assignments[i]]);
        EXPECT_NEAR(model.objective, objective, 1e-6 * objective);
        for (std::size_t c = 0; c < k; ++c) {
            ASSERT_GT(counts[c], 0u);
            EXPECT_NEAR(model.centroids[c].L, sums[c].L / counts[c], 1e-9);
            EXPECT_NEAR(model.centroids[c].a, sums[c].a / counts[c], 1e-9);
            EXPECT_NEAR(model.centroids[c].b, sums[c].b / counts[c], 1e-9);
        }
    }
}

TEST(KMeans, ObjectiveNeverIncreases) {
    std::mt19937_64 rng(31);
    for (int instance = 0; instance < 20; ++instance) {
        const auto pts = random_points(rng, 100 + rng() % 300);
        const auto model = kmeans(pts, 2 + rng() % 30, {rng()}, {.restarts = 1});
        for (std::size_t i = 1; i < model.objective_trace.size(); ++i) {
            EXPECT_LE(model.objective_trace[i], model.objective_trace[i - 1] * (1.0 + 1e-12));
        }
    }
}

TEST(KMeans, EmptyClusterRepairKeepsK) {
    // Many duplicates plus a few outliers invite empty clusters during Lloyd.
    std::vector<LabPoint> pts(200, LabPoint{50, 0, 0});
    for (int i = 1; i <= 12; ++i) pts.push_back({50.0 + i, 3.0 * i, -2.0 * i});
    const auto model = kmeans(pts, 13, {5}, {.restarts = 4});
    std::vector<std::size_t> counts(13, 0);
    for (const auto a : model.assignments) ++counts[a];
    for (const auto c : counts) EXPECT_GT(c, 0u);
}

LabPoint at_distance(const LabPoint& from, double target) {
    double lo = 0.0, hi = 50.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2.0;
        (ciede2000(from, {from.L + mid, from.a, from.b}) < target ? lo : hi) = mid;
    }
    return {from.L + (lo + hi) / 2.0, from.a, from.b};
}

TEST(MeanIntraDe, ZeroWhenPointsSitOnCentroids) {
    std::vector<LabPoint> pts = {{10, 1, 1}, {10, 1, 1}, {60, -5, 5}};
    ClusterModel model;
    model.k = 2;
    model.centroids = {{10, 1, 1}, {60, -5, 5}};
    model.assignments = {0, 0, 1};
    EXPECT_EQ(mean_intra_de(pts, model), 0.0);
}

TEST(MeanIntraDe, AveragesPerClusterMeans) {
    const LabPoint c0{30, 0, 0};
    const LabPoint c1{60, 10, 10};
    // Cluster 0 members at 3 and 5 (mean 4), cluster 1 member at 2.
    std::vector<LabPoint> pts = {at_distance(c0, 3.0), at_distance(c0, 5.0), at_distance(c1, 2.0)};
    ClusterModel model;
    model.k = 3;  // cluster 2 stays empty and is skipped
    model.centroids = {c0, c1, {90, 0, 0}};
    model.assignments = {0, 0, 1};
    EXPECT_NEAR(mean_intra_de(pts, model), 3.0, 1e-9);
}

TEST(MeanIntraDe, MatchesBruteForce) {
    std::mt19937_64 rng(41);
    const auto pts = random_points(rng, 100);
    const auto model = kmeans(pts, 5, {9});
    EXPECT_NEAR(mean_intra_de(pts, model),
                testing::brute_force_mean_intra_de(pts, model.centroids, model.assignments), 1e-9);
}

TEST(KRange, DefaultSweep) {
    const auto ks = k_range(50, 990, 10);
    ASSERT_EQ(ks.size(), 95u);
    EXPECT_EQ(ks.front(), 50u);
    EXPECT_EQ(ks[1], 60u);
    EXPECT_EQ(ks.back(), 990u);
    EXPECT_EQ(error_of([] { k_range(10, 5, 1); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([] { k_range(1, 5, 0); }), ErrorCode::InvalidArgument);
}

TEST(ElbowSweep, CoincidentPointsScoreZero) {
    const std::vector<LabPoint> pts(20, LabPoint{40, 5, 5});
    const std::vector<std::size_t> ks = {1};
    const auto curve = elbow_sweep(pts, ks, {3});
    EXPECT_EQ(curve.scores, (std::vector<double>{0.0}));
}

TEST(ElbowSweep, IndependentOfThreadCount) {
    std::mt19937_64 rng(51);
    const auto pts = random_points(rng, 300);
    const auto ks = k_range(2, 12, 1);
    const auto serial = elbow_sweep(pts, ks, {8}, 2, 1);
    const auto parallel = elbow_sweep(pts, ks, {8}, 2, 4);
    EXPECT_EQ(serial.scores, parallel.scores);
}

TEST(ElbowSweep, PropagatesErrors) {
    const std::vector<LabPoint> pts = {{1, 1, 1}, {2, 2, 2}};
    const std::vector<std::size_t> ks = {1, 2, 3};
    EXPECT_EQ(error_of([&] { elbow_sweep(pts, ks, {0}); }), ErrorCode::TooFewDistinctPoints);
}

TEST(ElbowSweep, EightBlobCurveAndKnee) {
    const auto blobs = testing::make_blobs(8, 808);
    const auto ks = k_range(2, 20, 1);
    const auto curve = elbow_sweep(blobs.points, ks, {2025});
    // Non-increasing up to 5% of the curve's scale (its first score).
    const double slack = 0.05 * curve.scores.front();
    for (std::size_t i = 1; i < curve.scores.size(); ++i) {
        EXPECT_LE(curve.scores[i], curve.scores[i - 1] + slack) << "k=" << curve.ks[i];
    }
    const auto knee = detect_knee(curve);
    EXPECT_GE(knee, 7u);
    EXPECT_LE(knee, 9u);
}

TEST(DetectKnee, HandComputedCurve) {
    const ElbowCurve curve{{1, 2, 3, 4, 5, 6}, {10, 5, 2, 1.9, 1.8, 1.7}};
    EXPECT_EQ(detect_knee(curve), 3u);
}

TEST(DetectKnee, NoKneeOnLinearOrFlatCurves) {
    EXPECT_EQ(error_of([] { detect_knee({{1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}}); }), ErrorCode::NoKneeFound);
    EXPECT_EQ(error_of([] { detect_knee({{1, 2, 3, 4}, {2, 2, 2, 2}}); }), ErrorCode::NoKneeFound);
    EXPECT_EQ(error_of([] { detect_knee({{1, 2, 3, 4}, {1, 2, 3, 4}}); }), ErrorCode::NoKneeFound);
    EXPECT_EQ(error_of([] { detect_knee({{1, 2}, {5, 1}}); }), ErrorCode::NoKneeFound);
}

TEST(ModelJson, RoundTrip) {
    std::mt19937_64 rng(61);
    const auto pts = random_points(rng, 60);
    const auto model = kmeans(pts, 4, {12});
    std::string digest;
    const auto loaded = model_from_json(model_to_json(model, "abc"), digest);
    EXPECT_EQ(digest, "abc");
    EXPECT_EQ(loaded.k, model.k);
    EXPECT_EQ(loaded.seed.value, 12u);
    EXPECT_EQ(loaded.assignments, model.assignments);
    ASSERT_EQ(loaded.centroids.size(), model.centroids.size());
    for (std::size_t i = 0; i < model.k; ++i) EXPECT_EQ(loaded.centroids[i], model.centroids[i]);
    EXPECT_EQ(error_of([] {
                  std::string d;
                  model_from_json("{\"version\":1}", d);
              }),
              ErrorCode::SchemaViolation);
}

TEST(ElbowExport, CsvShape) {
    const ElbowCurve curve{{5, 10}, {3.25, 1.5}};
    EXPECT_EQ(elbow_csv(curve), "k,mean_de00\n5,3.250000\n10,1.500000\n");
    const auto svg = elbow_svg(curve, 10);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find("k* = 10"), std::string::npos);
}

}  // namespace
}  // namespace chromaname
