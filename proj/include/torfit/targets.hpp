#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "torfit/solver.hpp"

namespace torfit {

// A benchmark function on the torus with exact Fourier data.  At jump points
// eval returns the midpoint of the one-sided limits.
struct TargetFunction {
  std::string name;
  std::string description;
  int m;
  std::function<double(const TorusPoint&)> eval;
  // Complex Fourier coefficient for lattice index l.
  std::function<std::complex<double>(const IVec&)> fourier;
  double l2_norm_sq;                        // exact squared L2 norm
  std::optional<double> total_variation;    // exact Vitali variation, if known
  // Returns the point moved off the discontinuity set if it lies within
  // 1e-9 of it (shift 1e-6); identity otherwise.
  std::function<TorusPoint(const TorusPoint&)> nudge;
};

const std::vector<TargetFunction>& target_registry();
const TargetFunction& find_target(const std::string& name);

// Evaluate the target at the given sites, first moving any site that is
// within 1e-9 of a discontinuity; every shift is reported on stderr.
ScatteredData sample_target(const TargetFunction& target,
                            const std::vector<TorusPoint>& sites);

// Squared L2 distance between the target and its degree-omega Fourier
// projection: exact, computed as l2_norm_sq minus the retained mass.
double projection_error_sq(const TargetFunction& target, const IVec& omega);

}  // namespace torfit
