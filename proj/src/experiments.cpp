#include "torfit/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

namespace torfit {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string omega_str(const IVec& omega) {
  std::string s;
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(omega[i]);
  }
  return s;
}

double ls_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
  const int n = static_cast<int>(logx.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += logx[i];
    my += logy[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += (logx[i] - mx) * (logy[i] - my);
    den += (logx[i] - mx) * (logx[i] - mx);
  }
  return num / den;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.flush()) throw input_error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw input_error("rename to '" + path + "' failed");
}

// Uniform tensor-grid quadrature of the squared and max deviation between a
// model and a target.  The uniform grid makes the mean an exact trapezoid
// rule for periodic functions.
void grid_errors(const FittedModel& model, const TargetFunction& target,
                 const IVec& res, double& l2, double& linf) {
  std::vector<double> uvals = evaluate_grid(model, res);
  const int m = model.spec.m;
  double sq = 0.0, mx = 0.0;
  IVec idx = IVec::Zero(m);
  for (std::size_t c = 0; c < uvals.size(); ++c) {
    Vec x(m);
    for (int a = 0; a < m; ++a) x[a] = static_cast<double>(idx[a]) / res[a];
    double d = uvals[c] - target.eval(TorusPoint(x));
    sq += d * d;
    mx = std::max(mx, std::fabs(d));
    int axis = m - 1;
    while (axis >= 0 && ++idx[axis] == res[axis]) {
      idx[axis] = 0;
      --axis;
    }
  }
  l2 = std::sqrt(sq / uvals.size());
  linf = mx;
}

}  // namespace

ConvergenceReport run_convergence(const TargetFunction& target,
                                  const ScheduleParams& params,
                                  const std::vector<int>& n_list,
                                  const PointSetSpec& sampler,
                                  const IVec& grid_res, bool force) {
  if (n_list.empty()) throw input_error("run_convergence: empty n list");
  if (params.kappa.size() != target.m)
    throw input_error("run_convergence: kappa size != target dimension");

  ConvergenceReport rep;
  rep.target = target.name;
  rep.sampler = sampler_name(sampler.kind);
  rep.seed = sampler.seed;
  rep.params = params;
  rep.grid_res = grid_res;

  for (int n : n_list) {
    auto t0 = std::chrono::steady_clock::now();
    ConvergenceRow row;
    row.n = n;
    row.zeta_proxy = discrepancy_proxy(n, target.m);

    std::vector<TorusPoint> sites = generate(sampler, n, target.m);
    row.zeta_measured = target.m <= 3 ? star_discrepancy(sites).upper
                                      : std::nan("");

    ScheduleInstance inst = instantiate(params, row.zeta_proxy, force);
    row.lambda = inst.lambda;
    row.omega = inst.omega;

    ScatteredData data = sample_target(target, sites);
    KernelSpec spec(target.m, params.k, inst.lambda, inst.omega);
    FittedModel model = fit(data, spec);

    ConditionDiagnostics diag = condition_diagnostics(assemble(data.points, spec));
    row.kappa_measured = diag.kappa_measured;
    row.kappa_bound = diag.kappa_bound;

    grid_errors(model, target, grid_res, row.l2_error, row.linf_error);
    Vec r = site_residuals(model, data);
    row.data_rmse = std::sqrt(r.squaredNorm() / r.size());

    auto t1 = std::chrono::steady_clock::now();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

void write_csv(const ConvergenceReport& report, const std::string& path) {
  std::string csv =
      "n,zeta_proxy,zeta_measured,lambda,omega,l2_error,linf_error,"
      "data_rmse,kappa_measured,kappa_bound,wall_ms\n";
  for (const auto& r : report.rows) {
    csv += std::to_string(r.n) + ',' + fmt17(r.zeta_proxy) + ',' +
           fmt17(r.zeta_measured) + ',' + fmt17(r.lambda) + ',' +
           omega_str(r.omega) + ',' + fmt17(r.l2_error) + ',' +
           fmt17(r.linf_error) + ',' + fmt17(r.data_rmse) + ',' +
           fmt17(r.kappa_measured) + ',' + fmt17(r.kappa_bound) + ',' +
           fmt17(r.wall_ms) + '\n';
  }
  atomic_write(path, csv);

  nlohmann::json meta;
  meta["target"] = report.target;
  meta["sampler"] = report.sampler;
  meta["seed"] = report.seed;
  meta["alpha"] = report.params.alpha;
  meta["beta"] = report.params.beta;
  meta["k"] = report.params.k;
  meta["kappa"] = std::vector<double>(report.params.kappa.data(),
                                     report.params.kappa.data() +
                                         report.params.kappa.size());
  meta["grid_res"] = std::vector<int>(report.grid_res.data(),
                                      report.grid_res.data() +
                                          report.grid_res.size());
  std::string canon = report.target + '|' + report.sampler + '|' +
                      std::to_string(report.seed) + '|' +
                      fmt17(report.params.alpha) + '|' +
                      fmt17(report.params.beta) + '|' +
                      std::to_string(report.params.k);
  char hash[20];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(canon)));
  meta["config_hash"] = hash;
  atomic_write(path + ".meta.json", meta.dump(2) + "\n");
}

InterpolationReport run_interpolation_limit(const ScatteredData& data,
                                            const KernelSpec& base_spec,
                                            const std::vector<double>& lambda_list) {
  if (lambda_list.size() < 2)
    throw input_error("run_interpolation_limit: need at least two lambdas");
  for (std::size_t i = 1; i < lambda_list.size(); ++i)
    if (lambda_list[i] <= lambda_list[i - 1])
      throw input_error("run_interpolation_limit: lambda list must increase");

  InterpolationReport rep;
  std::vector<double> lx, ly;
  for (double lam : lambda_list) {
    KernelSpec spec(base_spec.m, base_spec.k, lam, base_spec.omega, base_spec.trunc);
    FittedModel model = fit(data, spec);
    double mx = site_residuals(model, data).cwiseAbs().maxCoeff();
    rep.rows.push_back({lam, mx});
    lx.push_back(std::log(lam));
    ly.push_back(std::log(std::max(mx, 1e-300)));
  }
  rep.slope = ls_slope(lx, ly);
  return rep;
}

ConditionReport run_condition_study(int m, int k, double lambda,
                                    const std::vector<int>& n_list,
                                    const PointSetSpec& sampler) {
  if (n_list.empty()) throw input_error("run_condition_study: empty n list");
  ConditionReport rep;
  std::vector<double> lx, ly;
  for (int n : n_list) {
    KernelSpec spec(m, k, lambda);
    auto sites = generate(sampler, n, m);
    ConditionDiagnostics d = condition_diagnostics(assemble(sites, spec));
    rep.rows.push_back({n, d.kappa_measured, d.kappa_bound});
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(d.kappa_measured));
  }
  rep.slope = ls_slope(lx, ly);
  return rep;
}

std::vector<KhRow> run_kh_check(const TargetFunction& target,
                                const PointSetSpec& sampler,
                                const std::vector<int>& n_list) {
  if (!target.total_variation)
    throw input_error("run_kh_check: target has no recorded variation");
  const double V = *target.total_variation;
  const double integral = target.fourier(IVec::Zero(target.m)).real();

  std::vector<KhRow> rows;
  for (int n : n_list) {
    auto sites = generate(sampler, n, target.m);
    DiscrepancyEstimate d = star_discrepancy(sites);
    double mean = 0.0;
    for (const auto& p : sites) mean += target.eval(p);
    mean /= n;
    KhRow row;
    row.n = n;
    row.dstar_lower = d.lower;
    row.dstar_upper = d.upper;
    row.qmc_mean = mean;
    row.integral = integral;
    row.qmc_error = std::fabs(mean - integral);
    row.bound = d.upper * V;
    row.holds = row.qmc_error <= row.bound * (1.0 + 1e-12);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace torfit
