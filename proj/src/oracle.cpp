#include "torfit/oracle.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace torfit {

namespace {
constexpr double kPi = 3.14159265358979323846;

double phase(const IVec& l, const TorusPoint& x) {
  double th = 0.0;
  for (int a = 0; a < x.dim(); ++a) th += l[a] * x[a];
  return 2.0 * kPi * th;
}
}  // namespace

CoeffVector CoeffVector::zero(const IVec& omega) {
  CoeffVector u;
  u.omega = omega;
  u.modes = enumerate_half_box(omega);
  u.a = Vec::Zero(u.modes.size());
  u.b = Vec::Zero(u.modes.size());
  return u;
}

double CoeffVector::eval(const TorusPoint& x) const {
  double v = a0;
  for (std::size_t h = 0; h < modes.size(); ++h) {
    double th = phase(modes[h], x);
    v += a[h] * std::cos(th) + b[h] * std::sin(th);
  }
  return v;
}

Vec CoeffVector::eval_at(const std::vector<TorusPoint>& xs) const {
  Vec out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval(xs[i]);
  return out;
}

double CoeffVector::l2_norm_sq() const {
  return a0 * a0 + 0.5 * (a.squaredNorm() + b.squaredNorm());
}

double CoeffVector::gradk_norm_sq(int k) const {
  double s = 0.0;
  for (std::size_t h = 0; h < modes.size(); ++h)
    s += norm_2k_pow(modes[h], k) * 0.5 * (a[h] * a[h] + b[h] * b[h]);
  return s;
}

CoeffVector CoeffVector::operator+(const CoeffVector& other) const {
  if (omega.size() != other.omega.size() ||
      (omega.array() != other.omega.array()).any())
    throw input_error("CoeffVector: degree boxes differ");
  CoeffVector u = *this;
  u.a0 += other.a0;
  u.a += other.a;
  u.b += other.b;
  return u;
}

double functional_value(const CoeffVector& u, const ScatteredData& data,
                        double lambda, int k) {
  if (!(lambda > 0.0)) throw input_error("functional_value: lambda must be positive");
  double data_term = 0.0;
  if (data.n() > 0) {
    data.validate();
    Vec r = u.eval_at(data.points) - data.values;
    data_term = lambda * lambda / data.n() * r.squaredNorm();
  }
  return data_term + lambda * u.gradk_norm_sq(k) + u.l2_norm_sq();
}

double functional_value(const FittedModel& model, const ScatteredData& data,
                        double lambda, int k) {
  return functional_value(to_coefficients(model), data, lambda, k);
}

CoeffVector to_coefficients(const FittedModel& model) {
  IVec omega;
  if (model.spec.omega) {
    omega = *model.spec.omega;
  } else {
    // Full kernel: fold over the cube the truncation policy resolves to.
    omega = IVec::Constant(model.spec.m, effective_radius(model.spec));
  }
  CoeffVector u = CoeffVector::zero(omega);
  const double n = model.n();
  double wsum = 0.0;
  for (int i = 0; i < model.n(); ++i) wsum += model.coeffs[i] / n;
  u.a0 = model.spec.symbol(IVec::Zero(model.spec.m)) * wsum;
  for (std::size_t h = 0; h < u.modes.size(); ++h) {
    double g = model.spec.symbol(u.modes[h]);
    double ca = 0.0, sa = 0.0;
    for (int i = 0; i < model.n(); ++i) {
      double th = phase(u.modes[h], model.points[i]);
      ca += model.coeffs[i] / n * std::cos(th);
      sa += model.coeffs[i] / n * std::sin(th);
    }
    u.a[h] = 2.0 * g * ca;
    u.b[h] = 2.0 * g * sa;
  }
  return u;
}

CoeffVector direct_minimize(const ScatteredData& data, double lambda, int k,
                            const IVec& omega) {
  data.validate();
  if (!(lambda > 0.0)) throw input_error("direct_minimize: lambda must be positive");
  if (omega.size() != data.dim()) throw input_error("direct_minimize: dimension mismatch");
  if (2 * k <= data.dim()) throw input_error("direct_minimize: need 2k > m");
  if (box_size(omega) > 100000)
    throw input_error("direct_minimize: coefficient basis exceeds 1e5");

  CoeffVector u = CoeffVector::zero(omega);
  const int H = static_cast<int>(u.modes.size());
  const int K = 1 + 2 * H;  // constant, cosines, sines
  const int n = data.n();

  Eigen::MatrixXd Phi(n, K);
  for (int i = 0; i < n; ++i) {
    Phi(i, 0) = 1.0;
    for (int h = 0; h < H; ++h) {
      double th = phase(u.modes[h], data.points[i]);
      Phi(i, 1 + h) = std::cos(th);
      Phi(i, 1 + H + h) = std::sin(th);
    }
  }
  Vec reg(K);
  reg[0] = 1.0;
  for (int h = 0; h < H; ++h) {
    double w = 0.5 * (1.0 + lambda * norm_2k_pow(u.modes[h], k));
    reg[1 + h] = w;
    reg[1 + H + h] = w;
  }
  const double wdata = lambda * lambda / n;
  Eigen::MatrixXd A = wdata * (Phi.transpose() * Phi);
  A += reg.asDiagonal();
  Vec rhs = wdata * (Phi.transpose() * data.values);
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw numerical_error("direct_minimize: normal equations not positive definite");
  Vec theta = llt.solve(rhs);

  u.a0 = theta[0];
  u.a = theta.segment(1, H);
  u.b = theta.segment(1 + H, H);
  return u;
}

CoeffVector project_target(const TargetFunction& target, const IVec& omega) {
  if (omega.size() != target.m) throw input_error("project_target: dimension mismatch");
  CoeffVector u = CoeffVector::zero(omega);
  u.a0 = target.fourier(IVec::Zero(target.m)).real();
  for (std::size_t h = 0; h < u.modes.size(); ++h) {
    std::complex<double> c = target.fourier(u.modes[h]);
    u.a[h] = 2.0 * c.real();
    u.b[h] = -2.0 * c.imag();
  }
  return u;
}

}  // namespace torfit
