#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "torfit/experiments.hpp"
#include "torfit/model_io.hpp"

namespace {

using namespace torfit;

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw input_error(std::string(what) + ": bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw input_error(std::string(what) + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw input_error(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw input_error(std::string(what) + ": empty list");
  return out;
}

IVec to_ivec(const std::vector<int>& v) {
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// shortest decimal that reads back to the same double, for human-facing output
std::string fmt_short(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

struct CommonFitArgs {
  std::string input;
  int m = 1;
  int k = 1;
  double lambda = 10.0;
  std::string omega;  // comma list; empty means full kernel
  double tol = 1e-10;
  int radius = 0;
  std::string out;
};

KernelSpec make_spec(const CommonFitArgs& a) {
  std::optional<IVec> omega;
  if (!a.omega.empty()) {
    omega = to_ivec(parse_int_list(a.omega, "--omega"));
    if (omega->size() != a.m) throw input_error("--omega: needs one entry per axis");
  }
  TruncationPolicy trunc = a.radius > 0 ? TruncationPolicy::radius(a.radius)
                                        : TruncationPolicy::tolerance(a.tol);
  return KernelSpec(a.m, a.k, a.lambda, omega, trunc);
}

int cmd_fit(const CommonFitArgs& a) {
  ScatteredData data = load_sites(a.input, a.m);
  KernelSpec spec = make_spec(a);
  FittedModel model = fit(data, spec);
  Vec r = site_residuals(model, data);
  ConditionDiagnostics diag = condition_diagnostics(assemble(data.points, spec));
  std::cout << "n " << model.n() << "\nlambda " << fmt17(spec.lambda)
            << "\nmax_residual " << fmt17(r.cwiseAbs().maxCoeff())
            << "\ndata_rmse " << fmt17(std::sqrt(r.squaredNorm() / r.size()))
            << "\nkappa_measured " << fmt17(diag.kappa_measured)
            << "\nkappa_bound " << fmt17(diag.kappa_bound) << "\n";
  if (!a.out.empty()) {
    save_model(model, a.out);
    std::cout << "model " << a.out << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& queries,
             const std::string& grid, const std::string& out) {
  FittedModel model = load_model(model_path);
  std::vector<double> values;
  if (!queries.empty()) {
    std::ifstream in(queries);
    if (!in) throw input_error("cannot open queries file '" + queries + "'");
    std::string line;
    int lineno = 0;
    std::vector<TorusPoint> pts;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      Vec x(model.spec.m);
      if (!(ls >> x[0])) continue;
      for (int axis = 1; axis < model.spec.m; ++axis)
        if (!(ls >> x[axis]))
          throw input_error("queries line " + std::to_string(lineno) +
                            ": expected " + std::to_string(model.spec.m) +
                            " coordinates");
      pts.emplace_back(x);
    }
    Vec v = evaluate_at(model, pts);
    values.assign(v.data(), v.data() + v.size());
  } else if (!grid.empty()) {
    IVec res = to_ivec(parse_int_list(grid, "--grid-res"));
    if (res.size() == 1 && model.spec.m > 1)
      res = IVec::Constant(model.spec.m, res[0]);
    values = evaluate_grid(model, res);
  } else {
    throw input_error("eval: need --queries or --grid-res");
  }
  std::ostream* os = &std::cout;
  std::ofstream file;
  std::string buffer;
  for (double v : values) buffer += fmt17(v) + "\n";
  if (!out.empty()) {
    std::string tmp = out + ".tmp";
    file.open(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw input_error("cannot open '" + tmp + "'");
    file << buffer;
    file.close();
    if (std::rename(tmp.c_str(), out.c_str()) != 0)
      throw input_error("rename to '" + out + "' failed");
  } else {
    *os << buffer;
  }
  return 0;
}

int cmd_convergence(const std::string& target_name, double alpha, double beta,
                    const std::string& kappa_s, const std::string& sampler_s,
                    std::uint64_t seed, const std::string& n_list_s,
                    const std::string& grid_s, const std::string& out,
                    bool force) {
  const TargetFunction& target = find_target(target_name);
  ScheduleParams params;
  if (alpha > 0.0 && beta > 0.0) {
    params.alpha = alpha;
    params.beta = beta;
    params.k = target.m / 2 + 1;
  } else {
    params = suggest(target.m);
  }
  params.kappa = Vec::Constant(target.m, 4.0);
  if (!kappa_s.empty()) {
    auto kv = parse_double_list(kappa_s, "--kappa");
    if (kv.size() == 1)
      params.kappa = Vec::Constant(target.m, kv[0]);
    else if (static_cast<int>(kv.size()) == target.m)
      params.kappa = Eigen::Map<Vec>(kv.data(), kv.size());
    else
      throw input_error("--kappa: needs 1 or m entries");
  }
  double r = margin(params.alpha, params.beta, params.k);
  if (r <= 0.0 && !force)
    throw infeasible_error("schedule margin " + std::to_string(r) +
                           " is not positive; pass --force to override");

  PointSetSpec sampler;
  sampler.kind = parse_sampler(sampler_s);
  sampler.seed = seed;

  std::vector<int> n_list = parse_int_list(n_list_s, "--n-list");
  IVec grid_res = grid_s.empty()
                      ? IVec::Constant(target.m, target.m == 1 ? 8192 : 512)
                      : to_ivec(parse_int_list(grid_s, "--grid-res"));
  if (grid_res.size() == 1 && target.m > 1)
    grid_res = IVec::Constant(target.m, grid_res[0]);

  ConvergenceReport rep =
      run_convergence(target, params, n_list, sampler, grid_res, force);
  write_csv(rep, out);
  std::cout << "report " << out << " (" << rep.rows.size() << " rows, alpha "
            << params.alpha << ", beta " << params.beta << ", k " << params.k
            << ", margin " << fmt17(r) << ")\n";
  return 0;
}

int cmd_cond(int m, int k, double lambda, const std::string& n_list_s,
             const std::string& sampler_s, std::uint64_t seed) {
  PointSetSpec sampler;
  sampler.kind = parse_sampler(sampler_s);
  sampler.seed = seed;
  ConditionReport rep =
      run_condition_study(m, k, lambda, parse_int_list(n_list_s, "--n-list"), sampler);
  std::cout << "n,kappa_measured,kappa_bound\n";
  for (const auto& r : rep.rows)
    std::cout << r.n << ',' << fmt17(r.kappa_measured) << ','
              << fmt17(r.kappa_bound) << "\n";
  std::cout << "slope " << fmt17(rep.slope) << "\n";
  return 0;
}

int cmd_limit(const std::string& input, int m, int k, const std::string& omega_s,
              const std::string& lambda_list_s) {
  ScatteredData data = load_sites(input, m);
  IVec omega = to_ivec(parse_int_list(omega_s, "--omega"));
  if (omega.size() == 1 && m > 1) omega = IVec::Constant(m, omega[0]);
  KernelSpec spec(m, k, 1.0, omega);
  InterpolationReport rep = run_interpolation_limit(
      data, spec, parse_double_list(lambda_list_s, "--lambda-list"));
  std::cout << "lambda,max_residual\n";
  for (const auto& r : rep.rows)
    std::cout << fmt17(r.lambda) << ',' << fmt17(r.max_residual) << "\n";
  std::cout << "slope " << fmt17(rep.slope) << "\n";
  return 0;
}

int cmd_kh(const std::string& target_name, const std::string& sampler_s,
           std::uint64_t seed, const std::string& n_list_s) {
  const TargetFunction& target = find_target(target_name);
  PointSetSpec sampler;
  sampler.kind = parse_sampler(sampler_s);
  sampler.seed = seed;
  auto rows = run_kh_check(target, sampler, parse_int_list(n_list_s, "--n-list"));
  std::cout << "n,dstar,qmc_error,bound,holds\n";
  bool all = true;
  for (const auto& r : rows) {
    std::cout << r.n << ',' << fmt17(r.dstar_upper) << ',' << fmt17(r.qmc_error)
              << ',' << fmt17(r.bound) << ',' << (r.holds ? 1 : 0) << "\n";
    all = all && r.holds;
  }
  if (!all) throw numerical_error("discrepancy bound violated");
  return 0;
}

int cmd_feasibility(double alpha, double beta, int k) {
  MarginBreakdown b = margin_breakdown(alpha, beta, k);
  const char* names[7] = {"1+2a-b", "2-(a+b)", "1-a(2k-1)", "1+b",
                          "1-a",    "b-a(2k-1)", "2b"};
  for (int i = 0; i < 7; ++i)
    std::cout << names[i] << ' ' << fmt_short(b.terms[i]) << "\n";
  std::cout << "margin " << fmt_short(b.margin) << "\n";
  if (b.margin <= 0.0)
    throw infeasible_error("margin is not positive");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scattered-data fitting on the torus with trigonometric polynomials"};
  app.require_subcommand(1);

  CommonFitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "fit a model to a sites file");
  fit_cmd->add_option("--input", fa.input, "sites file")->required();
  fit_cmd->add_option("--m", fa.m, "dimension");
  fit_cmd->add_option("--k", fa.k, "smoothness order");
  fit_cmd->add_option("--lambda", fa.lambda, "regularization weight");
  fit_cmd->add_option("--omega", fa.omega, "degree bounds w1,w2,... (empty: full kernel)");
  fit_cmd->add_option("--tol", fa.tol, "full-kernel truncation tolerance");
  fit_cmd->add_option("--radius", fa.radius, "full-kernel fixed cube radius");
  fit_cmd->add_option("--out", fa.out, "model output path");

  std::string model_path, queries, grid, eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a saved model");
  eval_cmd->add_option("--model", model_path, "model file")->required();
  eval_cmd->add_option("--queries", queries, "query points file");
  eval_cmd->add_option("--grid-res", grid, "uniform grid resolution r1,r2,...");
  eval_cmd->add_option("--out", eval_out, "values output path (default stdout)");

  std::string cv_target = "square", cv_kappa, cv_sampler = "halton";
  std::string cv_nlist = "64,256,1024", cv_grid, cv_out = "convergence.csv";
  double cv_alpha = 0.0, cv_beta = 0.0;
  std::uint64_t cv_seed = 0;
  bool cv_force = false;
  auto* cv_cmd = app.add_subcommand("convergence", "schedule-driven convergence study");
  cv_cmd->add_option("--target", cv_target, "registry target name");
  cv_cmd->add_option("--alpha", cv_alpha, "schedule exponent alpha (default: suggest)");
  cv_cmd->add_option("--beta", cv_beta, "schedule exponent beta (default: suggest)");
  cv_cmd->add_option("--kappa", cv_kappa, "degree prefactor(s), comma separated");
  cv_cmd->add_option("--sampler", cv_sampler, "halton|kronecker|random|grid");
  cv_cmd->add_option("--seed", cv_seed, "random sampler seed");
  cv_cmd->add_option("--n-list", cv_nlist, "comma-separated site counts");
  cv_cmd->add_option("--grid-res", cv_grid, "quadrature grid resolution");
  cv_cmd->add_option("--out", cv_out, "CSV output path");
  cv_cmd->add_flag("--force", cv_force, "run even if the schedule is infeasible");

  int c_m = 1, c_k = 1;
  double c_lambda = 10.0;
  std::string c_nlist = "16,64,256,1024", c_sampler = "halton";
  std::uint64_t c_seed = 0;
  auto* cond_cmd = app.add_subcommand("cond", "condition number growth study");
  cond_cmd->add_option("--m", c_m, "dimension");
  cond_cmd->add_option("--k", c_k, "smoothness order");
  cond_cmd->add_option("--lambda", c_lambda, "regularization weight");
  cond_cmd->add_option("--n-list", c_nlist, "comma-separated site counts");
  cond_cmd->add_option("--sampler", c_sampler, "halton|kronecker|random|grid");
  cond_cmd->add_option("--seed", c_seed, "random sampler seed");

  std::string l_input, l_omega = "32", l_lambdas = "16,64,256,1024,4096,16384";
  int l_m = 1, l_k = 1;
  auto* limit_cmd = app.add_subcommand("limit", "near-interpolation residual sweep");
  limit_cmd->add_option("--input", l_input, "sites file")->required();
  limit_cmd->add_option("--m", l_m, "dimension");
  limit_cmd->add_option("--k", l_k, "smoothness order");
  limit_cmd->add_option("--omega", l_omega, "degree bounds");
  limit_cmd->add_option("--lambda-list", l_lambdas, "increasing lambda values");

  std::string kh_target = "sawtooth", kh_sampler = "halton", kh_nlist = "64,256,1024";
  std::uint64_t kh_seed = 0;
  auto* kh_cmd = app.add_subcommand("kh", "quasi-Monte Carlo discrepancy bound check");
  kh_cmd->add_option("--target", kh_target, "registry target name");
  kh_cmd->add_option("--sampler", kh_sampler, "halton|kronecker|random|grid");
  kh_cmd->add_option("--seed", kh_seed, "random sampler seed");
  kh_cmd->add_option("--n-list", kh_nlist, "comma-separated site counts");

  double f_alpha = 0.0, f_beta = 0.0;
  int f_k = 1;
  auto* feas_cmd = app.add_subcommand("feasibility", "schedule margin breakdown");
  feas_cmd->add_option("--alpha", f_alpha, "exponent alpha")->required();
  feas_cmd->add_option("--beta", f_beta, "exponent beta")->required();
  feas_cmd->add_option("--k", f_k, "smoothness order");

  try {
    app.parse(argc, argv);
    if (fit_cmd->parsed()) return cmd_fit(fa);
    if (eval_cmd->parsed()) return cmd_eval(model_path, queries, grid, eval_out);
    if (cv_cmd->parsed())
      return cmd_convergence(cv_target, cv_alpha, cv_beta, cv_kappa, cv_sampler,
                             cv_seed, cv_nlist, cv_grid, cv_out, cv_force);
    if (cond_cmd->parsed()) return cmd_cond(c_m, c_k, c_lambda, c_nlist, c_sampler, c_seed);
    if (limit_cmd->parsed()) return cmd_limit(l_input, l_m, l_k, l_omega, l_lambdas);
    if (kh_cmd->parsed()) return cmd_kh(kh_target, kh_sampler, kh_seed, kh_nlist);
    if (feas_cmd->parsed()) return cmd_feasibility(f_alpha, f_beta, f_k);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const torfit::infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const torfit::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const torfit::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
