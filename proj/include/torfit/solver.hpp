#pragma once

#include <vector>

#include "torfit/kernel.hpp"

namespace torfit {

// Scattered samples (p_i, q_i) on the m-torus.
struct ScatteredData {
  std::vector<TorusPoint> points;
  Vec values;

  int n() const { return static_cast<int>(points.size()); }
  int dim() const { return points.empty() ? 0 : points.front().dim(); }
  void validate() const;  // sizes agree, finite values, consistent dimension
};

// Kernel Gram matrix K with K(i,j) = kernel(p_i - p_j); symmetric by
// construction.  Duplicate sites (periodic distance < 1e-12) are rejected.
struct KernelMatrix {
  Eigen::MatrixXd values;
  KernelSpec spec;
  std::vector<TorusPoint> points;
};

KernelMatrix assemble(const std::vector<TorusPoint>& points, const KernelSpec& spec);

// K/n + I/lambda^2, the system matrix of the regularized fit.
Eigen::MatrixXd system_matrix(const KernelMatrix& km);

// A fitted minimizer in representer form: u(x) = sum_i (c_i/n) w(x - p_i).
struct FittedModel {
  std::vector<TorusPoint> points;
  Vec coeffs;
  KernelSpec spec;

  int n() const { return static_cast<int>(points.size()); }
};

struct FitOptions {
  double lambda_min = 1e-6;
  double lambda_max = 1e12;
  int n_cap = 4096;
  double duplicate_tol = 1e-12;
};

FittedModel fit(const ScatteredData& data, const KernelSpec& spec,
                const FitOptions& opts = {});

double evaluate(const FittedModel& model, const TorusPoint& x);
Vec evaluate_at(const FittedModel& model, const std::vector<TorusPoint>& xs);

// Values on the uniform tensor grid {j/res_i}, row-major with the last axis
// fastest.  For degree-limited kernels this goes through the coefficient
// representation, so large grids stay cheap.
std::vector<double> evaluate_grid(const FittedModel& model, const IVec& res);

// u(p_i) - q_i at the fitting sites.
Vec site_residuals(const FittedModel& model, const ScatteredData& data);

struct ConditionDiagnostics {
  double min_eig;
  double max_eig;
  double kappa_measured;
  double kappa_bound;  // 1 + lambda^2 g_lambda(0), data independent
};

ConditionDiagnostics condition_diagnostics(const KernelMatrix& km);

// Sorted (descending) eigenvalues of the full-kernel Gram matrix for each
// lambda; result is n x lambda_list.size().
Eigen::MatrixXd eigen_diagnostics(const std::vector<TorusPoint>& points, int k,
                                  const std::vector<double>& lambda_list,
                                  double trunc_tol = 1e-12);

}  // namespace torfit
