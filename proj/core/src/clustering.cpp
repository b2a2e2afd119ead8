#include "chromaname/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "chromaname/delta_e.hpp"
#include "chromaname/error.hpp"

namespace chromaname {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t run_seed(RandomSeed seed, std::size_t k, std::size_t restart) {
    return splitmix64(splitmix64(splitmix64(seed.value) ^ k) ^ restart);
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t nearest_centroid(const LabPoint& p, std::span<const LabPoint> centroids, double& best_d) {
    std::size_t best = 0;
    best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(p, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::vector<LabPoint> seed_plus_plus(std::span<const LabPoint> points, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = points.size();
    std::vector<LabPoint> centroids;
    centroids.reserve(k);
    centroids.push_back(points[std::min(n - 1, static_cast<std::size_t>(unit_interval(rng) * n))]);

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points[i], centroids[0]);

    while (centroids.size() < k) {
        double total = 0.0;
        for (const double d : d2) total += d;
        const double target = unit_interval(rng) * total;
        std::size_t pick = n;
        std::size_t last_positive = 0;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] <= 0.0) continue;
            last_positive = i;
            cumulative += d2[i];
            if (cumulative > target) {
                pick = i;
                break;
            }
        }
        if (pick == n) pick = last_positive;
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
        }
    }
    return centroids;
}

void recompute_means(std::span<const LabPoint> points, std::span<const std::size_t> assignments,
                     std::vector<LabPoint>& centroids, std::vector<std::size_t>& counts) {
    const std::size_t k = centroids.size();
    std::vector<LabPoint> sums(k);
    counts.assign(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto& s = sums[assignments[i]];
        s.L += points[i].L;
        s.a += points[i].a;
        s.b += points[i].b;
        ++counts[assignments[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        const double n = static_cast<double>(counts[c]);
        centroids[c] = {sums[c].L / n, sums[c].a / n, sums[c].b / n};
    }
}

// Moves the point farthest from its centroid into every empty cluster.
void repair_empty(std::span<const LabPoint> points, std::vector<std::size_t>& assignments,
                  std::vector<LabPoint>& centroids, std::vector<std::size_t>& counts) {
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        if (counts[c] != 0) continue;
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = squared_distance(points[i], centroids[assignments[i]]);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        const std::size_t donor = assignments[far];
        assignments[far] = c;
        centroids[c] = points[far];
        counts[c] = 1;
        --counts[donor];
        LabPoint sum;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (assignments[i] != donor) continue;
            sum.L += points[i].L;
            sum.a += points[i].a;
            sum.b += points[i].b;
        }
        const double n = static_cast<double>(counts[donor]);
        centroids[donor] = {sum.L / n, sum.a / n, sum.b / n};
    }
}

ClusterModel lloyd_run(std::span<const LabPoint> points, std::size_t k, std::uint64_t seed,
                       std::size_t max_iterations) {
    std::mt19937_64 rng(seed);
    ClusterModel model;
    model.k = k;
    model.centroids = seed_plus_plus(points, k, rng);
    model.assignments.assign(points.size(), 0);

    double d = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        model.assignments[i] = nearest_centroid(points[i], model.centroids, d);
    }
    model.objective_trace.push_back(clustering_objective(points, model.centroids, model.assignments));

    std::vector<std::size_t> counts;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        recompute_means(points, model.assignments, model.centroids, counts);
        repair_empty(points, model.assignments, model.centroids, counts);
        model.objective_trace.push_back(clustering_objective(points, model.centroids, model.assignments));
        ++model.iterations;

        bool changed = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const std::size_t best = nearest_centroid(points[i], model.centroids, d);
            // Keep the current cluster on exact ties.
            if (best != model.assignments[i] &&
                d < squared_distance(points[i], model.centroids[model.assignments[i]])) {
                model.assignments[i] = best;
                changed = true;
            }
        }
        if (!changed) {
            model.converged = true;
            break;
        }
        model.objective_trace.push_back(clustering_objective(points, model.centroids, model.assignments));
    }
    model.objective = model.objective_trace.back();
    return model;
}

}  // namespace

double clustering_objective(std::span<const LabPoint> points, std::span<const LabPoint> centroids,
                            std::span<const std::size_t> assignments) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) total += squared_distance(points[i], centroids[assignments[i]]);
    return total;
}

std::size_t count_distinct(std::span<const LabPoint> points) {
    std::vector<LabPoint> sorted(points.begin(), points.end());
    const auto less = [](const LabPoint& x, const LabPoint& y) {
        if (x.L != y.L) return x.L < y.L;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    };
    std::sort(sorted.begin(), sorted.end(), less);
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

ClusterModel kmeans(std::span<const LabPoint> points, std::size_t k, RandomSeed seed,
                    const KMeansOptions& options) {
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "kmeans needs at least one point");
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "kmeans needs k >= 1");
    if (options.restarts == 0) throw Error(ErrorCode::InvalidArgument, "kmeans needs restarts >= 1");
    const std::size_t distinct = count_distinct(points);
    if (k > distinct) {
        throw Error(ErrorCode::TooFewDistinctPoints,
                    "k = " + std::to_string(k) + " exceeds " + std::to_string(distinct) + " distinct points");
    }

    ClusterModel best;
    for (std::size_t r = 0; r < options.restarts; ++r) {
        ClusterModel run = lloyd_run(points, k, run_seed(seed, k, r), options.max_iterations);
        if (r == 0 || run.objective < best.objective) best = std::move(run);
    }
    best.seed = seed;
    return best;
}

double mean_intra_de(std::span<const LabPoint> points, const ClusterModel& model) {
    std::vector<double> sums(model.k, 0.0);
    std::vector<std::size_t> counts(model.k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t c = model.assignments[i];
        sums[c] += ciede2000(points[i], model.centroids[c]);
        ++counts[c];
    }
    double total = 0.0;
    std::size_t clusters = 0;
    for (std::size_t c = 0; c < model.k; ++c) {
        if (counts[c] == 0) continue;
        total += sums[c] / static_cast<double>(counts[c]);
        ++clusters;
    }
    return clusters == 0 ? 0.0 : total / static_cast<double>(clusters);
}

std::vector<std::size_t> k_range(std::size_t min, std::size_t max, std::size_t step) {
    if (step == 0) throw Error(ErrorCode::InvalidArgument, "k step must be >= 1");
    if (min == 0 || min > max) {
        throw Error(ErrorCode::InvalidArgument,
                    "k range [" + std::to_string(min) + ", " + std::to_string(max) + "] is empty");
    }
    std::vector<std::size_t> ks;
    for (std::size_t k = min; k <= max; k += step) ks.push_back(k);
    return ks;
}

ElbowCurve elbow_sweep(std::span<const LabPoint> points, std::span<const std::size_t> ks, RandomSeed seed,
                       std::size_t restarts, std::size_t threads) {
    ElbowCurve curve;
    curve.ks.assign(ks.begin(), ks.end());
    for (std::size_t i = 1; i < curve.ks.size(); ++i) {
        if (curve.ks[i] <= curve.ks[i - 1]) throw Error(ErrorCode::InvalidArgument, "ks must be strictly increasing");
    }
    curve.scores.assign(ks.size(), 0.0);
    std::vector<std::exception_ptr> failures(ks.size());

    std::atomic<std::size_t> next{0};
    // Largest k first keeps the slowest jobs from trailing.
    auto worker = [&] {
        for (std::size_t j = next++; j < ks.size(); j = next++) {
            const std::size_t idx = ks.size() - 1 - j;
            try {
                const ClusterModel model = kmeans(points, ks[idx], seed, {.restarts = restarts});
                curve.scores[idx] = mean_intra_de(points, model);
            } catch (...) {
                failures[idx] = std::current_exception();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, ks.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return curve;
}

std::size_t detect_knee(const ElbowCurve& curve) {
    const std::size_t n = curve.ks.size();
    if (n != curve.scores.size()) throw Error(ErrorCode::InvalidArgument, "ks and scores differ in length");
    if (n < 3) throw Error(ErrorCode::NoKneeFound, "knee detection needs at least 3 points");

    const double x_min = static_cast<double>(curve.ks.front());
    const double x_span = static_cast<double>(curve.ks.back()) - x_min;
    const auto [lo, hi] = std::minmax_element(curve.scores.begin(), curve.scores.end());
    const double y_span = *hi - *lo;
    if (x_span <= 0.0 || y_span <= 0.0) throw Error(ErrorCode::NoKneeFound, "flat curve has no knee");

    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (static_cast<double>(curve.ks[i]) - x_min) / x_span;
        const double y = 1.0 - (curve.scores[i] - *lo) / y_span;
        diff[i] = y - x;
    }

    // Endpoints keep their raw value; the peak must be interior and positive.
    std::vector<double> smoothed = diff;
    for (std::size_t i = 1; i + 1 < n; ++i) smoothed[i] = (diff[i - 1] + diff[i] + diff[i + 1]) / 3.0;
    const auto peak = std::max_element(smoothed.begin(), smoothed.end());
    const auto best = static_cast<std::size_t>(peak - smoothed.begin());
    constexpr double kMinPeak = 1e-9;
    if (best == 0 || best + 1 == n || *peak <= kMinPeak) {
        throw Error(ErrorCode::NoKneeFound, "difference curve has no interior maximum");
    }
    return curve.ks[best];
}

}  // namespace chromaname
