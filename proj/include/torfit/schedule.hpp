#pragma once

#include <array>

#include "torfit/torus.hpp"

namespace torfit {

// Exponents of the coupled refinement schedule lambda = zeta^-beta,
// omega_i = kappa_i zeta^-alpha, driven by a discrepancy value zeta.
struct ScheduleParams {
  double alpha;
  double beta;
  int k;
  Vec kappa;  // one entry per axis
};

// The seven exponent constraints whose minimum is the feasibility margin.
struct MarginBreakdown {
  std::array<double, 7> terms;
  double margin;  // min of terms
};

MarginBreakdown margin_breakdown(double alpha, double beta, int k);
double margin(double alpha, double beta, int k);

struct ScheduleInstance {
  double zeta;
  double lambda;
  IVec omega;
  bool lambda_clamped;
};

// Concrete (lambda, omega) for a given zeta.  Throws infeasible_error when
// the margin is not positive, unless force is set.  lambda is clamped to
// [1e-6, 1e12] with a flag when the guard bites.
ScheduleInstance instantiate(const ScheduleParams& params, double zeta,
                             bool force = false);

// Best (alpha, beta) on the 0.01-step grid in (0,1)^2 for dimension m, with
// k = floor(m/2) + 1 and unit kappa.  Ties break toward smaller alpha, then
// smaller beta.
ScheduleParams suggest(int m);

}  // namespace torfit
