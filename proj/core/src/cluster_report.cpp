#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "chromaname/clustering.hpp"
#include "chromaname/error.hpp"

namespace chromaname {

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::SchemaViolation, where + ": " + what);
}

}  // namespace

std::string elbow_csv(const ElbowCurve& curve) {
    std::string out = "k,mean_de00\n";
    for (std::size_t i = 0; i < curve.ks.size(); ++i) {
        out += std::to_string(curve.ks[i]) + "," + fixed(curve.scores[i], 6) + "\n";
    }
    return out;
}

std::string elbow_svg(const ElbowCurve& curve, std::optional<std::size_t> knee) {
    constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                      "viewBox=\"0 0 640 400\">\n<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    if (curve.ks.empty()) return svg + "</svg>\n";

    const double x0 = static_cast<double>(curve.ks.front());
    const double x1 = static_cast<double>(curve.ks.back());
    const double y1 = *std::max_element(curve.scores.begin(), curve.scores.end());
    const auto sx = [&](double x) {
        return x1 > x0 ? kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin) : kWidth / 2;
    };
    const auto sy = [&](double y) { return y1 > 0 ? kHeight - kMargin - y / y1 * (kHeight - 2 * kMargin) : kHeight - kMargin; };

    svg += "<line x1=\"50\" y1=\"350\" x2=\"590\" y2=\"350\" stroke=\"black\"/>\n";
    svg += "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"350\" stroke=\"black\"/>\n";
    svg += "<text x=\"320\" y=\"385\" text-anchor=\"middle\" font-size=\"14\">number of clusters k</text>\n";
    svg += "<text x=\"15\" y=\"200\" transform=\"rotate(-90 15 200)\" text-anchor=\"middle\" font-size=\"14\">"
           "mean intra-cluster dE00</text>\n";
    svg += "<text x=\"50\" y=\"366\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(curve.ks.front()) + "</text>\n";
    svg += "<text x=\"590\" y=\"366\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(curve.ks.back()) + "</text>\n";
    svg += "<text x=\"45\" y=\"54\" text-anchor=\"end\" font-size=\"11\">" + fixed(y1, 2) + "</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.ks.size(); ++i) {
        if (i > 0) svg += ' ';
        svg += fixed(sx(static_cast<double>(curve.ks[i])), 2) + "," + fixed(sy(curve.scores[i]), 2);
    }
    svg += "\"/>\n";
    if (knee) {
        const auto it = std::find(curve.ks.begin(), curve.ks.end(), *knee);
        if (it != curve.ks.end()) {
            const double kx = sx(static_cast<double>(*knee));
            const double ky = sy(curve.scores[static_cast<std::size_t>(it - curve.ks.begin())]);
            svg += "<line x1=\"" + fixed(kx, 2) + "\" y1=\"50\" x2=\"" + fixed(kx, 2) +
                   "\" y2=\"350\" stroke=\"crimson\" stroke-dasharray=\"4 4\"/>\n";
            svg += "<circle cx=\"" + fixed(kx, 2) + "\" cy=\"" + fixed(ky, 2) + "\" r=\"4\" fill=\"crimson\"/>\n";
            svg += "<text x=\"" + fixed(kx + 6, 2) + "\" y=\"64\" font-size=\"12\" fill=\"crimson\">k* = " +
                   std::to_string(*knee) + "</text>\n";
        }
    }
    return svg + "</svg>\n";
}

std::string model_to_json(const ClusterModel& model, const std::string& corpus_digest) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["corpus_digest"] = corpus_digest;
    doc["seed"] = model.seed.value;
    doc["k"] = model.k;
    doc["objective"] = model.objective;
    doc["iterations"] = model.iterations;
    doc["converged"] = model.converged;
    auto& centroids = doc["centroids"] = nlohmann::ordered_json::array();
    for (const auto& c : model.centroids) centroids.push_back({c.L, c.a, c.b});
    doc["assignments"] = model.assignments;
    return doc.dump(1) + "\n";
}

ClusterModel model_from_json(std::string_view text, std::string& corpus_digest) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        schema_error("$", std::string("not valid JSON: ") + e.what());
    }
    const auto require = [&](const char* key) -> const nlohmann::json& {
        if (!doc.is_object() || !doc.contains(key)) schema_error(std::string("$.") + key, "missing");
        return doc.at(key);
    };
    ClusterModel model;
    try {
        if (require("version").get<int>() != 1) schema_error("$.version", "unsupported version");
        corpus_digest = require("corpus_digest").get<std::string>();
        model.seed.value = require("seed").get<std::uint64_t>();
        model.k = require("k").get<std::size_t>();
        model.objective = require("objective").get<double>();
        model.iterations = require("iterations").get<std::size_t>();
        model.converged = require("converged").get<bool>();
        for (const auto& c : require("centroids")) {
            if (!c.is_array() || c.size() != 3) schema_error("$.centroids", "expected [L, a, b]");
            model.centroids.push_back({c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
        }
        model.assignments = require("assignments").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        schema_error("$", std::string("wrong field type: ") + e.what());
    }
    if (model.centroids.size() != model.k) schema_error("$.centroids", "length differs from k");
    for (const auto a : model.assignments) {
        if (a >= model.k) schema_error("$.assignments", "index out of range");
    }
    return model;
}

}  // namespace chromaname
