#include "torfit/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace torfit {

MarginBreakdown margin_breakdown(double alpha, double beta, int k) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw input_error("margin: alpha and beta must lie in (0, 1)");
  if (k < 1) throw input_error("margin: k must be >= 1");
  MarginBreakdown b;
  b.terms = {1.0 + 2.0 * alpha - beta,
             2.0 - (alpha + beta),
             1.0 - alpha * (2.0 * k - 1.0),
             1.0 + beta,
             1.0 - alpha,
             beta - alpha * (2.0 * k - 1.0),
             2.0 * beta};
  b.margin = *std::min_element(b.terms.begin(), b.terms.end());
  return b;
}

double margin(double alpha, double beta, int k) {
  return margin_breakdown(alpha, beta, k).margin;
}

ScheduleInstance instantiate(const ScheduleParams& params, double zeta, bool force) {
  if (!(zeta > 0.0) || !(zeta < 1.0))
    throw input_error("instantiate: zeta must lie in (0, 1)");
  if (params.kappa.size() == 0)
    throw input_error("instantiate: kappa must have one entry per axis");
  for (Eigen::Index i = 0; i < params.kappa.size(); ++i)
    if (!(params.kappa[i] > 0.0))
      throw input_error("instantiate: kappa entries must be positive");

  double r = margin(params.alpha, params.beta, params.k);
  if (r <= 0.0 && !force)
    throw infeasible_error("instantiate: margin " + std::to_string(r) +
                           " is not positive (use force to override)");

  ScheduleInstance inst;
  inst.zeta = zeta;
  inst.lambda = std::pow(zeta, -params.beta);
  inst.lambda_clamped = false;
  if (inst.lambda < 1e-6) {
    inst.lambda = 1e-6;
    inst.lambda_clamped = true;
  } else if (inst.lambda > 1e12) {
    inst.lambda = 1e12;
    inst.lambda_clamped = true;
  }
  inst.omega.resize(params.kappa.size());
  double scale = std::pow(zeta, -params.alpha);
  for (Eigen::Index i = 0; i < params.kappa.size(); ++i) {
    long w = std::lround(params.kappa[i] * scale);
    inst.omega[i] = static_cast<int>(std::max(1L, w));
  }
  return inst;
}

ScheduleParams suggest(int m) {
  if (m < 1) throw input_error("suggest: m must be >= 1");
  const int k = m / 2 + 1;
  double best = -1e300;
  double best_alpha = 0.0, best_beta = 0.0;
  for (int ia = 1; ia <= 99; ++ia) {
    double alpha = ia / 100.0;
    for (int ib = 1; ib <= 99; ++ib) {
      double beta = ib / 100.0;
      double r = margin(alpha, beta, k);
      if (r > best + 1e-12) {
        best = r;
        best_alpha = alpha;
        best_beta = beta;
      }
    }
  }
  ScheduleParams p;
  p.alpha = best_alpha;
  p.beta = best_beta;
  p.k = k;
  p.kappa = Vec::Ones(m);
  return p;
}

}  // namespace torfit
