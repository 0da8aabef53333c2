#pragma once

#include <span>

namespace lgh {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t count = 0;
};

// Ordinary least squares y = intercept + slope * x. A constant y gives r2 = 1.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace lgh
