#pragma once

#include "torfit/solver.hpp"
#include "torfit/targets.hpp"

namespace torfit {

// A trigonometric polynomial in explicit cosine/sine form over the box
// -omega <= l <= omega: u(x) = a0 + sum_h a_h cos(2 pi l_h.x) + b_h sin(...),
// with l_h running over the half box.
struct CoeffVector {
  IVec omega;
  std::vector<IVec> modes;  // half box, lexicographic
  double a0 = 0.0;
  Vec a, b;

  static CoeffVector zero(const IVec& omega);

  double eval(const TorusPoint& x) const;
  Vec eval_at(const std::vector<TorusPoint>& xs) const;
  double l2_norm_sq() const;
  // Squared seminorm sum_l ||l||^(2k) |u_hat_l|^2 (no 2 pi power, matching
  // the kernel symbol convention).
  double gradk_norm_sq(int k) const;

  CoeffVector operator+(const CoeffVector& other) const;
};

// The regularized objective
//   (lambda^2/n) sum_i (u(p_i)-q_i)^2 + lambda |u|_k^2 + ||u||^2
// evaluated exactly through Parseval.  Empty data contributes zero.
double functional_value(const CoeffVector& u, const ScatteredData& data,
                        double lambda, int k);

// Same objective for a fitted model, folded to coefficient form first.
double functional_value(const FittedModel& model, const ScatteredData& data,
                        double lambda, int k);

// Exact fold of a degree-limited representer into coefficient form.
CoeffVector to_coefficients(const FittedModel& model);

// Independent minimizer of the same objective: dense normal equations in
// coefficient space, no kernel involved.  Basis size capped at 1e5.
CoeffVector direct_minimize(const ScatteredData& data, double lambda, int k,
                            const IVec& omega);

// Fourier projection of a registry target onto the box.
CoeffVector project_target(const TargetFunction& target, const IVec& omega);

}  // namespace torfit
