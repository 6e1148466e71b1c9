#include "torfit/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace torfit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_duplicates(const std::vector<TorusPoint>& points, double tol) {
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (periodic_dist(points[i], points[j]) < tol)
        throw input_error("duplicate sites: indices " + std::to_string(i) +
                          " and " + std::to_string(j) +
                          " coincide up to periodic distance " + std::to_string(tol));
}

// Phase matrices of the half-box modes: C(i,h) = cos(2 pi l_h . p_i), likewise
// sine.  The Gram matrix of the degree-limited kernel factors through these.
void phase_matrices(const std::vector<TorusPoint>& points,
                    const std::vector<IVec>& half, Eigen::MatrixXd& C,
                    Eigen::MatrixXd& S) {
  const int n = static_cast<int>(points.size());
  const int K = static_cast<int>(half.size());
  C.resize(n, K);
  S.resize(n, K);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < K; ++h) {
      double th = 0.0;
      for (int a = 0; a < points[i].dim(); ++a) th += half[h][a] * points[i][a];
      th *= 2.0 * kPi;
      C(i, h) = std::cos(th);
      S(i, h) = std::sin(th);
    }
}

}  // namespace

void ScatteredData::validate() const {
  if (points.empty()) throw input_error("ScatteredData: no sites");
  if (values.size() != static_cast<Eigen::Index>(points.size()))
    throw input_error("ScatteredData: sizes of points and values differ");
  const int m = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != m) throw input_error("ScatteredData: inconsistent dimensions");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw input_error("ScatteredData: non-finite value at index " + std::to_string(i));
}

KernelMatrix assemble(const std::vector<TorusPoint>& points, const KernelSpec& spec) {
  if (points.empty()) throw input_error("assemble: no sites");
  for (const auto& p : points)
    if (p.dim() != spec.m) throw input_error("assemble: point dimension != spec.m");
  check_duplicates(points, 1e-12);

  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd K(n, n);

  if (spec.omega && box_size(*spec.omega) <= 40001 && n >= 48) {
    const auto half = enumerate_half_box(*spec.omega);
    Eigen::VectorXd g2(half.size());
    for (std::size_t h = 0; h < half.size(); ++h) g2[h] = 2.0 * spec.symbol(half[h]);
    const double g0 = spec.symbol(IVec::Zero(spec.m));
    Eigen::MatrixXd C, S;
    phase_matrices(points, half, C, S);
    K = C * g2.asDiagonal() * C.transpose() + S * g2.asDiagonal() * S.transpose();
    K.array() += g0;
    K = ((K + K.transpose()) * 0.5).eval();
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        TorusPoint d = periodic_diff(points[i], points[j]);
        double v = spec.omega ? eval_w(d, spec) : eval_g(d, spec);
        K(i, j) = v;
        K(j, i) = v;
      }
    }
  }
  return KernelMatrix{std::move(K), spec, points};
}

Eigen::MatrixXd system_matrix(const KernelMatrix& km) {
  const int n = static_cast<int>(km.points.size());
  Eigen::MatrixXd M = km.values / static_cast<double>(n);
  M.diagonal().array() += 1.0 / (km.spec.lambda * km.spec.lambda);
  return M;
}

FittedModel fit(const ScatteredData& data, const KernelSpec& spec,
                const FitOptions& opts) {
  data.validate();
  if (data.dim() != spec.m) throw input_error("fit: data dimension != spec.m");
  if (data.n() > opts.n_cap)
    throw input_error("fit: n = " + std::to_string(data.n()) +
                      " exceeds cap " + std::to_string(opts.n_cap));
  if (spec.lambda < opts.lambda_min || spec.lambda > opts.lambda_max)
    throw input_error("fit: lambda outside guard range [" +
                      std::to_string(opts.lambda_min) + ", " +
                      std::to_string(opts.lambda_max) + "]");
  check_duplicates(data.points, opts.duplicate_tol);

  KernelMatrix km = assemble(data.points, spec);
  Eigen::MatrixXd M = system_matrix(km);

  Vec c;
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() == Eigen::Success) {
    c = llt.solve(data.values);
  } else {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
      throw numerical_error(
          "fit: system matrix is not numerically positive definite "
          "(LLT failed, LDLT min pivot " +
          std::to_string(ldlt.info() == Eigen::Success
                             ? ldlt.vectorD().minCoeff()
                             : std::nan("")) +
          ")");
    c = ldlt.solve(data.values);
  }
  return FittedModel{data.points, std::move(c), spec};
}

namespace {

// Fold the representer into cosine/sine amplitudes over the half box:
// u(x) = a0 + sum_h a_h cos(2 pi l_h.x) + b_h sin(2 pi l_h.x).
struct Amplitudes {
  std::vector<IVec> half;
  double a0;
  Eigen::VectorXd a, b;
};

Amplitudes fold_coefficients(const FittedModel& model) {
  const auto& omega = *model.spec.omega;
  Amplitudes amp;
  amp.half = enumerate_half_box(omega);
  const int n = model.n();
  Eigen::MatrixXd C, S;
  phase_matrices(model.points, amp.half, C, S);
  Vec w = model.coeffs / static_cast<double>(n);
  amp.a = Eigen::VectorXd(amp.half.size());
  amp.b = Eigen::VectorXd(amp.half.size());
  Eigen::VectorXd ca = C.transpose() * w;
  Eigen::VectorXd sa = S.transpose() * w;
  for (std::size_t h = 0; h < amp.half.size(); ++h) {
    double g = model.spec.symbol(amp.half[h]);
    amp.a[h] = 2.0 * g * ca[h];
    amp.b[h] = 2.0 * g * sa[h];
  }
  amp.a0 = model.spec.symbol(IVec::Zero(model.spec.m)) * w.sum();
  return amp;
}

double eval_amplitudes(const Amplitudes& amp, const TorusPoint& x) {
  double v = amp.a0;
  for (std::size_t h = 0; h < amp.half.size(); ++h) {
    double th = 0.0;
    for (int a = 0; a < x.dim(); ++a) th += amp.half[h][a] * x[a];
    th *= 2.0 * kPi;
    v += amp.a[h] * std::cos(th) + amp.b[h] * std::sin(th);
  }
  return v;
}

}  // namespace

double evaluate(const FittedModel& model, const TorusPoint& x) {
  if (x.dim() != model.spec.m) throw input_error("evaluate: dimension mismatch");
  double v = 0.0;
  const double n = model.n();
  for (int i = 0; i < model.n(); ++i) {
    TorusPoint d = periodic_diff(x, model.points[i]);
    double kv = model.spec.omega ? eval_w(d, model.spec) : eval_g(d, model.spec);
    v += model.coeffs[i] / n * kv;
  }
  return v;
}

Vec evaluate_at(const FittedModel& model, const std::vector<TorusPoint>& xs) {
  Vec out(xs.size());
  if (model.spec.omega && xs.size() * enumerate_half_box(*model.spec.omega).size() >
                              static_cast<std::size_t>(4 * model.n())) {
    Amplitudes amp = fold_coefficients(model);
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval_amplitudes(amp, xs[i]);
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = evaluate(model, xs[i]);
  }
  return out;
}

std::vector<double> evaluate_grid(const FittedModel& model, const IVec& res) {
  if (res.size() != model.spec.m) throw input_error("evaluate_grid: res dimension mismatch");
  std::uint64_t total = 1;
  for (Eigen::Index i = 0; i < res.size(); ++i) {
    if (res[i] < 1) throw input_error("evaluate_grid: resolution must be >= 1");
    total *= static_cast<std::uint64_t>(res[i]);
    if (total > (std::uint64_t(1) << 28))
      throw input_error("evaluate_grid: grid exceeds 2^28 points");
  }
  std::vector<TorusPoint> pts;
  pts.reserve(total);
  const int m = model.spec.m;
  IVec idx = IVec::Zero(m);
  for (std::uint64_t c = 0; c < total; ++c) {
    Vec x(m);
    for (int a = 0; a < m; ++a) x[a] = static_cast<double>(idx[a]) / res[a];
    pts.emplace_back(x);
    int axis = m - 1;
    while (axis >= 0 && ++idx[axis] == res[axis]) {
      idx[axis] = 0;
      --axis;
    }
  }
  Vec v = evaluate_at(model, pts);
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vec site_residuals(const FittedModel& model, const ScatteredData& data) {
  return evaluate_at(model, data.points) - data.values;
}

namespace {

double largest_eig_power(const Eigen::MatrixXd& M) {
  const int n = static_cast<int>(M.rows());
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.001 * i;
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXd w = M * v;
    double rho = v.dot(w);
    v = w.normalized();
    if (it > 4 && std::fabs(rho - prev) <= 1e-12 * std::fabs(rho)) return rho;
    prev = rho;
  }
  return prev;
}

double smallest_eig_inverse_power(const Eigen::MatrixXd& M) {
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw numerical_error("condition_diagnostics: LLT failed in inverse iteration");
  const int n = static_cast<int>(M.rows());
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 - 0.0005 * i;
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXd w = llt.solve(v);
    double rho = v.dot(M * v);
    v = w.normalized();
    if (it > 4 && std::fabs(rho - prev) <= 1e-12 * std::fabs(rho)) return rho;
    prev = rho;
  }
  return prev;
}

}  // namespace

ConditionDiagnostics condition_diagnostics(const KernelMatrix& km) {
  Eigen::MatrixXd M = system_matrix(km);
  const int n = static_cast<int>(M.rows());
  double lo, hi;
  if (n <= 1024) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numerical_error("condition_diagnostics: eigensolver failed");
    lo = es.eigenvalues().minCoeff();
    hi = es.eigenvalues().maxCoeff();
  } else {
    hi = largest_eig_power(M);
    lo = smallest_eig_inverse_power(M);
  }
  if (!(lo > 0.0))
    throw numerical_error("condition_diagnostics: nonpositive smallest eigenvalue " +
                          std::to_string(lo));

  const double lam = km.spec.lambda;
  double g0, slack;
  try {
    KernelSpec full(km.spec.m, km.spec.k, lam, std::nullopt,
                    TruncationPolicy::tolerance(1e-10));
    g0 = eval_g(TorusPoint(Vec::Zero(km.spec.m)), full);
    slack = 1e-10;
  } catch (const numerical_error&) {
    KernelSpec full(km.spec.m, km.spec.k, lam, std::nullopt,
                    TruncationPolicy::tolerance(1e-6));
    g0 = eval_g(TorusPoint(Vec::Zero(km.spec.m)), full);
    slack = 1e-6;
  }
  double bound = 1.0 + lam * lam * (g0 + slack);
  return ConditionDiagnostics{lo, hi, hi / lo, bound};
}

Eigen::MatrixXd eigen_diagnostics(const std::vector<TorusPoint>& points, int k,
                                  const std::vector<double>& lambda_list,
                                  double trunc_tol) {
  if (lambda_list.empty()) throw input_error("eigen_diagnostics: empty lambda list");
  for (std::size_t i = 0; i < lambda_list.size(); ++i) {
    if (!(lambda_list[i] > 1.0))
      throw input_error("eigen_diagnostics: lambda values must exceed 1");
    if (i > 0 && lambda_list[i] <= lambda_list[i - 1])
      throw input_error("eigen_diagnostics: lambda list must be strictly increasing");
  }
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd out(n, lambda_list.size());
  for (std::size_t c = 0; c < lambda_list.size(); ++c) {
    KernelSpec spec(points.front().dim(), k, lambda_list[c], std::nullopt,
                    TruncationPolicy::tolerance(trunc_tol));
    KernelMatrix km = assemble(points, spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(km.values, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numerical_error("eigen_diagnostics: eigensolver failed");
    out.col(c) = es.eigenvalues().reverse();
  }
  return out;
}

}  // namespace torfit
