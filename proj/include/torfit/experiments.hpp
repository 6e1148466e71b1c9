#pragma once

#include <string>

#include "torfit/oracle.hpp"
#include "torfit/sampling.hpp"
#include "torfit/schedule.hpp"
#include "torfit/targets.hpp"

namespace torfit {

struct ConvergenceRow {
  int n;
  double zeta_proxy;
  double zeta_measured;  // NaN when m > 3
  double lambda;
  IVec omega;
  double l2_error;
  double linf_error;
  double data_rmse;
  double kappa_measured;
  double kappa_bound;
  double wall_ms;
};

struct ConvergenceReport {
  std::string target;
  std::string sampler;
  std::uint64_t seed;
  ScheduleParams params;
  IVec grid_res;
  std::vector<ConvergenceRow> rows;
};

// One fit per n: sites from the sampler, (lambda, omega) from the schedule
// driven by the discrepancy proxy, errors from tensor-grid quadrature.
ConvergenceReport run_convergence(const TargetFunction& target,
                                  const ScheduleParams& params,
                                  const std::vector<int>& n_list,
                                  const PointSetSpec& sampler,
                                  const IVec& grid_res, bool force = false);

// CSV with a fixed header; float columns printed with 17 significant digits;
// written atomically (temp file, then rename).  A JSON sidecar with the run
// configuration and a hash of it goes to path + ".meta.json".
void write_csv(const ConvergenceReport& report, const std::string& path);

struct InterpolationRow {
  double lambda;
  double max_residual;
};

struct InterpolationReport {
  std::vector<InterpolationRow> rows;
  double slope;  // least-squares slope of log(max_residual) vs log(lambda)
};

// Fixed data and degree bound, sweeping lambda upward.
InterpolationReport run_interpolation_limit(const ScatteredData& data,
                                            const KernelSpec& base_spec,
                                            const std::vector<double>& lambda_list);

struct ConditionRow {
  int n;
  double kappa_measured;
  double kappa_bound;
};

struct ConditionReport {
  std::vector<ConditionRow> rows;
  double slope;  // least-squares slope of log(kappa) vs log(n)
};

// Condition number of the system matrix as n grows, full kernel, fixed lambda.
ConditionReport run_condition_study(int m, int k, double lambda,
                                    const std::vector<int>& n_list,
                                    const PointSetSpec& sampler);

struct KhRow {
  int n;
  double dstar_lower;
  double dstar_upper;
  double qmc_mean;
  double integral;
  double qmc_error;
  double bound;  // dstar_upper * total variation
  bool holds;
};

// Quasi-Monte Carlo means of the target against the discrepancy bound.
// Requires the target to carry an exact variation value.
std::vector<KhRow> run_kh_check(const TargetFunction& target,
                                const PointSetSpec& sampler,
                                const std::vector<int>& n_list);

}  // namespace torfit
