#pragma once

#include <optional>

#include "torfit/torus.hpp"

namespace torfit {

// How to truncate the lattice sum defining the full kernel: either a fixed
// cube radius, or a target bound on the neglected tail (the radius is then
// chosen automatically).
struct TruncationPolicy {
  static TruncationPolicy radius(int R);
  static TruncationPolicy tolerance(double tol);

  bool fixed_radius = false;
  int R = 0;
  double tol = 1e-10;
};

// Parameters of the reproducing kernel on the m-torus.  omega present means
// the degree-limited kernel w (plain box sum); omega absent means the full
// kernel g, evaluated under the truncation policy.
struct KernelSpec {
  KernelSpec(int m, int k, double lambda,
             std::optional<IVec> omega = std::nullopt,
             TruncationPolicy trunc = TruncationPolicy::tolerance(1e-10));

  int m;
  int k;       // smoothness order, requires 2k > m
  double lambda;
  std::optional<IVec> omega;
  TruncationPolicy trunc;

  // 1 / (1 + lambda * sum |l_i|^(2k))
  double symbol(const IVec& l) const;
};

// Upper bound on the absolute tail sum_{||l||_inf > R} 1/(1 + lambda ||l||^(2k)),
// uniform in x.  Monotone nonincreasing in R.
double tail_bound(int R, const KernelSpec& spec);

// Smallest radius whose tail bound is <= spec.trunc.tol (or the fixed radius).
// Throws numerical_error if no radius below the enumeration cap achieves it,
// reporting the bound that was achieved.
int effective_radius(const KernelSpec& spec);

// Plain partial sum of the full-kernel series over the cube ||l||_inf <= R.
double cube_partial_g(const TorusPoint& x, const KernelSpec& spec, int R);

// Full kernel g_lambda(x), accurate to within the policy tolerance.  For
// m = 1 the tail beyond a modest cube is resummed through closed-form cosine
// power sums, so the default 1e-10 tolerance is reachable for any lambda in
// the guard range; for m >= 2 the cube partial sum is used directly.
double eval_g(const TorusPoint& x, const KernelSpec& spec);

// Degree-limited kernel w_lambda(x): exact box sum over -omega <= l <= omega.
double eval_w(const TorusPoint& x, const KernelSpec& spec);

// Normalized one-sided Dirichlet-type kernel: the sum of cos(2 pi r.x) over
// 0 <= r <= omega divided by the number of terms, so the value at 0 is
// exactly 1.
double eval_dirichlet(const TorusPoint& x, const IVec& omega);

// s_r(x) = sum_{l != 0} cos(2 pi l.x) / ||l||^(2kr); requires 2kr > m.
double eval_s_r(const TorusPoint& x, int r, const KernelSpec& spec);

// Partial sum 1 + sum_{r=1..order} (-1)^(r+1) lambda^(-r) s_r(x) of the
// large-lambda expansion of g.  Requires lambda > 1.
double asymptotic_g(const TorusPoint& x, const KernelSpec& spec, int order);

}  // namespace torfit
