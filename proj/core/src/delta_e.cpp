#include "chromaname/delta_e.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chromaname {

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double rad) { return rad * 180.0 / kPi; }
double rad(double deg) { return deg * kPi / 180.0; }

double pow7(double x) {
    const double x2 = x * x;
    const double x3 = x2 * x;
    return x3 * x3 * x;
}

// Hue angle of (a, b) in degrees, [0, 360); 0 for the neutral axis.
double hue_angle(double a, double b) {
    if (a == 0.0 && b == 0.0) return 0.0;
    double h = deg(std::atan2(b, a));
    return h < 0.0 ? h + 360.0 : h;
}

}  // namespace

double ciede2000(const LabPoint& p, const LabPoint& q) noexcept {
    constexpr double k25_7 = 6103515625.0;  // 25^7

    const double c1 = std::hypot(p.a, p.b);
    const double c2 = std::hypot(q.a, q.b);
    const double c_bar7 = pow7((c1 + c2) / 2.0);
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + k25_7)));

    const double a1 = (1.0 + g) * p.a;
    const double a2 = (1.0 + g) * q.a;
    const double c1p = std::hypot(a1, p.b);
    const double c2p = std::hypot(a2, q.b);
    const double h1p = hue_angle(a1, p.b);
    const double h2p = hue_angle(a2, q.b);

    const double dLp = q.L - p.L;
    const double dCp = c2p - c1p;

    const double chroma_product = c1p * c2p;
    double dhp = 0.0;
    if (chroma_product != 0.0) {
        dhp = h2p - h1p;
        if (dhp > 180.0) {
            dhp -= 360.0;
        } else if (dhp < -180.0) {
            dhp += 360.0;
        }
    }
    const double dHp = 2.0 * std::sqrt(chroma_product) * std::sin(rad(dhp / 2.0));

    const double L_bar = (p.L + q.L) / 2.0;
    const double C_bar = (c1p + c2p) / 2.0;

    double h_bar = h1p + h2p;
    if (chroma_product != 0.0) {
        if (std::abs(h1p - h2p) <= 180.0) {
            h_bar /= 2.0;
        } else if (h1p + h2p < 360.0) {
            h_bar = (h_bar + 360.0) / 2.0;
        } else {
            h_bar = (h_bar - 360.0) / 2.0;
        }
    }

    const double t = 1.0 - 0.17 * std::cos(rad(h_bar - 30.0)) + 0.24 * std::cos(rad(2.0 * h_bar)) +
                     0.32 * std::cos(rad(3.0 * h_bar + 6.0)) -
                     0.20 * std::cos(rad(4.0 * h_bar - 63.0));

    const double d_theta = 30.0 * std::exp(-std::pow((h_bar - 275.0) / 25.0, 2.0));
    const double C_bar7 = pow7(C_bar);
    const double rc = 2.0 * std::sqrt(C_bar7 / (C_bar7 + k25_7));
    const double lm50 = (L_bar - 50.0) * (L_bar - 50.0);
    const double sl = 1.0 + 0.015 * lm50 / std::sqrt(20.0 + lm50);
    const double sc = 1.0 + 0.045 * C_bar;
    const double sh = 1.0 + 0.015 * C_bar * t;
    const double rt = -std::sin(rad(2.0 * d_theta)) * rc;

    const double lt = dLp / sl;
    const double ct = dCp / sc;
    const double ht = dHp / sh;
    const double sum = lt * lt + ct * ct + ht * ht + rt * ct * ht;
    return std::sqrt(std::max(sum, 0.0));
}

}  // namespace chromaname
