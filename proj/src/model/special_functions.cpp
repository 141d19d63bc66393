#include "bsa/model/special_functions.hpp"

#include <cmath>
#include <limits>

namespace bsa::model {

namespace {
constexpr double kShift = 12.0;
}

double digamma(double x) {
  if (!(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  while (x < kShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // Bernoulli-number series: -1/12, 1/120, -1/252, 1/240, -1/132, 691/32760
  const double series =
      r * (-1.0 / 12 + r * (1.0 / 120 + r * (-1.0 / 252 + r * (1.0 / 240 + r * (-1.0 / 132 + r * (691.0 / 32760))))));
  return acc + std::log(x) - 0.5 / x + series;
}

double trigamma(double x) {
  if (!(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  while (x < kShift) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  const double series =
      1.0 / x + 0.5 * r +
      (r / x) * (1.0 / 6 + r * (-1.0 / 30 + r * (1.0 / 42 + r * (-1.0 / 30 + r * (5.0 / 66 + r * (-691.0 / 2730))))));
  return acc + series;
}

}  // namespace bsa::model
