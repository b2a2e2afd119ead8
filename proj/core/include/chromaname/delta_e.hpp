#pragma once

#include "chromaname/color.hpp"

namespace chromaname {

/// CIEDE2000 color difference with kL = kC = kH = 1. Symmetric, non-negative,
/// and not a metric (the triangle inequality does not hold).
double ciede2000(const LabPoint& p, const LabPoint& q) noexcept;

}  // namespace chromaname
