#include "torfit/cosine_sums.hpp"

#include <cmath>

#include "torfit/errors.hpp"

namespace torfit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double cosine_power_sum(int s, double x) {
  if (s < 2 || s % 2 != 0) throw input_error("cosine_power_sum: s must be even and >= 2");
  if (!(x >= 0.0 && x <= 1.0)) throw input_error("cosine_power_sum: x must lie in [0,1]");

  const double p2 = kPi * kPi;
  if (s == 2) {
    // pi^2 (x^2 - x + 1/6)
    return p2 * (x * (x - 1.0) + 1.0 / 6.0);
  }
  if (s == 4) {
    // -(pi^4/3)(x^4 - 2x^3 + x^2 - 1/30)
    double b4 = ((x - 2.0) * x + 1.0) * x * x - 1.0 / 30.0;
    return -(p2 * p2 / 3.0) * b4;
  }
  if (s == 6) {
    // (2 pi^6/45)(x^6 - 3x^5 + 5/2 x^4 - 1/2 x^2 + 1/42)
    double b6 = ((((x - 3.0) * x + 2.5) * x * x - 0.5) * x * x) + 1.0 / 42.0;
    return (2.0 * p2 * p2 * p2 / 45.0) * b6;
  }

  // Direct summation; choose L so the integral tail L^(1-s)/(s-1) <= 1e-16.
  int L = 2;
  while (std::pow(static_cast<double>(L), 1 - s) / (s - 1) > 1e-16 && L < 100000) ++L;
  double sum = 0.0, comp = 0.0;
  for (int l = L; l >= 1; --l) {
    double term = std::cos(2.0 * kPi * l * x) * std::pow(static_cast<double>(l), -s);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace torfit
