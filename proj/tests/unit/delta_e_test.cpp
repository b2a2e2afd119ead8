#include "chromaname/delta_e.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace chromaname {
namespace {

TEST(Ciede2000, IdenticalPointsHaveZeroDifference) {
    EXPECT_EQ(ciede2000({50, 0, 0}, {50, 0, 0}), 0.0);
    EXPECT_EQ(ciede2000({31.2, -12.5, 44.0}, {31.2, -12.5, 44.0}), 0.0);
}

TEST(Ciede2000, MatchesVerificationDataset) {
    for (std::size_t i = 0; i < testing::kSharmaPairs.size(); ++i) {
        const auto& p = testing::kSharmaPairs[i];
        const double forward = ciede2000({p.L1, p.a1, p.b1}, {p.L2, p.a2, p.b2});
        EXPECT_NEAR(forward, p.expected, 1e-4) << "pair " << i + 1;
    }
}

TEST(Ciede2000, SymmetricAndNonNegative) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> L(0.0, 100.0);
    std::uniform_real_distribution<double> ab(-128.0, 128.0);
    for (int i = 0; i < 1000; ++i) {
        const LabPoint p{L(rng), ab(rng), ab(rng)};
        const LabPoint q{L(rng), ab(rng), ab(rng)};
        const double d1 = ciede2000(p, q);
        const double d2 = ciede2000(q, p);
        EXPECT_GE(d1, 0.0);
        EXPECT_NEAR(d1, d2, 1e-12);
        EXPECT_GT(d1, 0.0);
    }
}

TEST(Ciede2000, NeutralAxisUsesZeroHueDifference) {
    // One achromatic operand: the chroma product is zero, so only lightness
    // and chroma terms contribute.
    const double d = ciede2000({50, 0, 0}, {50, 0, 0.0001});
    EXPECT_GT(d, 0.0);
    EXPECT_LT(d, 1e-3);
}

}  // namespace
}  // namespace chromaname
