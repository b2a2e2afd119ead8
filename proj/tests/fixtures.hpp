#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "chromaname/clustering.hpp"
#include "chromaname/corpus.hpp"
#include "chromaname/palette.hpp"

namespace chromaname::testing {

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("chromaname-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Model with k clusters built from a cluster label per entry; centroids are
// the LAB means of each cluster's members.
inline ClusterModel model_from_labels(const Corpus& corpus, const std::vector<std::size_t>& labels, std::size_t k) {
    ClusterModel model;
    model.k = k;
    model.assignments = labels;
    model.centroids.assign(k, LabPoint{});
    std::vector<std::size_t> counts(k, 0);
    const auto lab = lab_matrix(corpus);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        model.centroids[labels[i]].L += lab[i].L;
        model.centroids[labels[i]].a += lab[i].a;
        model.centroids[labels[i]].b += lab[i].b;
        ++counts[labels[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        const double n = static_cast<double>(counts[c]);
        model.centroids[c] = {model.centroids[c].L / n, model.centroids[c].a / n, model.centroids[c].b / n};
    }
    return model;
}

// Random corpus: colors scattered in RGB, names drawn with a skewed
// distribution from a small pool so clusters have repeated names.
inline Corpus random_corpus(std::mt19937_64& rng, std::size_t n) {
    static const std::vector<std::string> pool = {
        "red", "crimson", "cherry", "ruby", "blue", "navy", "sky blue", "green", "lime",
        "forest green", "gold", "amber", "ochre", "grey", "slate grey", "pink", "rose", "teal"};
    std::vector<ColorEntry> entries;
    for (std::size_t i = 0; i < n; ++i) {
        const RgbColor c{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                         static_cast<std::uint8_t>(rng())};
        const std::size_t a = rng() % pool.size();
        const std::size_t b = rng() % pool.size();
        entries.push_back(make_entry(pool[std::min(a, b)], c, "src" + std::to_string(rng() % 3)));
    }
    return Corpus(std::move(entries));
}

}  // namespace chromaname::testing
