#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chromaname/color.hpp"

namespace chromaname {

/// Drives every stochastic choice; a fixed seed gives bit-identical models.
struct RandomSeed {
    std::uint64_t value = 0;
};

struct ClusterModel {
    std::size_t k = 0;
    RandomSeed seed;
    std::vector<LabPoint> centroids;
    std::vector<std::size_t> assignments;
    /// Within-cluster sum of squared Euclidean LAB distances.
    double objective = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Objective after the seeding assignment and after every subsequent
    /// update and assignment step of the winning run.
    std::vector<double> objective_trace;
};

struct KMeansOptions {
    std::size_t restarts = 4;
    std::size_t max_iterations = 300;
};

inline constexpr std::size_t kSweepRestarts = 4;
inline constexpr std::size_t kFinalRestarts = 16;

/// k-means++ seeding followed by Lloyd iterations under squared Euclidean
/// distance; the lowest-objective run of `restarts` wins (earliest on ties).
/// Throws Error(TooFewDistinctPoints) when k exceeds the distinct point count,
/// Error(InvalidArgument) for empty input, k == 0 or restarts == 0.
ClusterModel kmeans(std::span<const LabPoint> points, std::size_t k, RandomSeed seed,
                    const KMeansOptions& options = {});

/// Sum of squared distances from each point to its assigned centroid.
double clustering_objective(std::span<const LabPoint> points, std::span<const LabPoint> centroids,
                            std::span<const std::size_t> assignments);

/// Mean over non-empty clusters of the mean CIEDE2000 distance from members
/// to their centroid.
double mean_intra_de(std::span<const LabPoint> points, const ClusterModel& model);

std::size_t count_distinct(std::span<const LabPoint> points);

struct ElbowCurve {
    std::vector<std::size_t> ks;
    std::vector<double> scores;
};

/// {min, min+step, ..., <= max}. Throws Error(InvalidArgument) on an empty range or step 0.
std::vector<std::size_t> k_range(std::size_t min, std::size_t max, std::size_t step);

/// kmeans + mean_intra_de for every k. Candidates run on up to `threads`
/// workers (0 = hardware concurrency); results do not depend on scheduling.
ElbowCurve elbow_sweep(std::span<const LabPoint> points, std::span<const std::size_t> ks, RandomSeed seed,
                       std::size_t restarts = kSweepRestarts, std::size_t threads = 0);

/// CSV `k,mean_de00`, one row per candidate.
std::string elbow_csv(const ElbowCurve& curve);

/// Line plot of the curve as SVG, with the knee marked when given.
std::string elbow_svg(const ElbowCurve& curve, std::optional<std::size_t> knee);

/// JSON document holding centroids, assignments and the provenance needed to
/// rebuild a palette. Throws Error(SchemaViolation) on load.
std::string model_to_json(const ClusterModel& model, const std::string& corpus_digest);
ClusterModel model_from_json(std::string_view text, std::string& corpus_digest);

/// Kneedle on a decreasing convex curve (sensitivity 1, 3-point smoothing of
/// the difference curve). Throws Error(NoKneeFound) when the difference curve
/// has no positive interior maximum.
std::size_t detect_knee(const ElbowCurve& curve);

}  // namespace chromaname
