#include "torfit/kernel.hpp"

#include <cmath>
#include <string>

#include "torfit/cosine_sums.hpp"

namespace torfit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kCubeCap = std::uint64_t(1) << 26;

double dot2pi(const IVec& l, const TorusPoint& x) {
  double d = 0.0;
  for (int i = 0; i < x.dim(); ++i) d += l[i] * x[i];
  return 2.0 * kPi * d;
}

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// Count of lattice points with ||l||_inf exactly t (t >= 1).
double shell_count(int t, int m) {
  return std::pow(2.0 * t + 1.0, m) - std::pow(2.0 * t - 1.0, m);
}

// Upper bound on sum_{||l||_inf > R} ||l||_{2k}^{-2k}, via ||l||^{2k} >= t^{2k}
// on shell t, explicit shells up to R + 1024, then an integral remainder.
double inv_norm_tail(int R, int m, int twok) {
  KahanSum acc;
  const int T = R + 1024;
  for (int t = R + 1; t <= T; ++t)
    acc.add(shell_count(t, m) * std::pow(static_cast<double>(t), -twok));
  // shells beyond T: count <= 2m(3t)^(m-1), sum_{t>T} t^(m-1-2k) <= T^(m-2k)/(2k-m)
  double rem = 2.0 * m * std::pow(3.0, m - 1) *
               std::pow(static_cast<double>(T), m - twok) / (twok - m);
  return acc.s + rem;
}

int max_cube_radius(int m) {
  double side = std::pow(static_cast<double>(kCubeCap), 1.0 / m);
  int R = static_cast<int>((side - 1.0) / 2.0);
  return R < 1 ? 1 : R;
}

}  // namespace

TruncationPolicy TruncationPolicy::radius(int R) {
  if (R < 1) throw input_error("TruncationPolicy: radius must be >= 1");
  TruncationPolicy p;
  p.fixed_radius = true;
  p.R = R;
  return p;
}

TruncationPolicy TruncationPolicy::tolerance(double tol) {
  if (!(tol > 0.0)) throw input_error("TruncationPolicy: tolerance must be positive");
  TruncationPolicy p;
  p.fixed_radius = false;
  p.tol = tol;
  return p;
}

KernelSpec::KernelSpec(int m_, int k_, double lambda_, std::optional<IVec> omega_,
                       TruncationPolicy trunc_)
    : m(m_), k(k_), lambda(lambda_), omega(std::move(omega_)), trunc(trunc_) {
  if (m < 1) throw input_error("KernelSpec: m must be >= 1");
  if (2 * k <= m) throw input_error("KernelSpec: need 2k > m");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw input_error("KernelSpec: lambda must be positive and finite");
  if (omega) {
    if (omega->size() != m) throw input_error("KernelSpec: omega has wrong dimension");
    for (int i = 0; i < m; ++i)
      if ((*omega)[i] < 0) throw input_error("KernelSpec: omega must be nonnegative");
  }
}

double KernelSpec::symbol(const IVec& l) const {
  return 1.0 / (1.0 + lambda * norm_2k_pow(l, k));
}

double tail_bound(int R, const KernelSpec& spec) {
  if (R < 1) throw input_error("tail_bound: R must be >= 1");
  // 1/(1 + lambda ||l||^{2k}) <= 1/(lambda ||l||^{2k})
  return inv_norm_tail(R, spec.m, 2 * spec.k) / spec.lambda;
}

int effective_radius(const KernelSpec& spec) {
  if (spec.trunc.fixed_radius) return spec.trunc.R;
  const int Rmax = max_cube_radius(spec.m);
  if (tail_bound(Rmax, spec) > spec.trunc.tol) {
    throw numerical_error(
        "effective_radius: tolerance " + std::to_string(spec.trunc.tol) +
        " unreachable; best bound " + std::to_string(tail_bound(Rmax, spec)) +
        " at radius " + std::to_string(Rmax));
  }
  int lo = 1, hi = Rmax;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (tail_bound(mid, spec) <= spec.trunc.tol)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

double cube_partial_g(const TorusPoint& x, const KernelSpec& spec, int R) {
  if (x.dim() != spec.m) throw input_error("cube_partial_g: dimension mismatch");
  if (box_size(IVec::Constant(spec.m, R)) > kCubeCap)
    throw input_error("cube_partial_g: cube exceeds enumeration cap");
  KahanSum acc;
  for_each_box_index(IVec::Constant(spec.m, R), [&](const IVec& l) {
    acc.add(std::cos(dot2pi(l, x)) * spec.symbol(l));
  });
  return acc.s;
}

namespace {

// m = 1 full kernel: direct sum over |l| <= R0, then the tail resummed as a
// finite alternating series in 1/lambda whose coefficients are cosine power
// sums.  The geometric remainder is certified by an integral bound; one step
// shrinks it by at least lambda * R0^{2k} >= 100, so a handful of terms reach
// any tolerance above the double-precision floor.
double eval_g_line(double x, const KernelSpec& spec) {
  const int twok = 2 * spec.k;
  const double lam = spec.lambda;
  int R0 = 32;
  {
    double need = std::pow(100.0 / lam, 1.0 / twok);
    if (need > R0) R0 = static_cast<int>(std::ceil(need));
  }

  std::vector<double> cos_t(R0 + 1);
  for (int l = 0; l <= R0; ++l) cos_t[l] = std::cos(2.0 * kPi * l * x);

  KahanSum direct;
  direct.add(1.0);
  for (int l = R0; l >= 1; --l)
    direct.add(2.0 * cos_t[l] / (1.0 + lam * std::pow(static_cast<double>(l), twok)));

  const double goal = std::max(spec.trunc.tol, 1e-15) / 2.0;
  double total = direct.s;
  double sign = 1.0;
  double lam_pow = 1.0;
  for (int j = 1; j <= 48; ++j) {
    lam_pow *= lam;
    int s = twok * j;
    // remainder after j terms: 2 lambda^-(j+1) sum_{l>R0} l^{-2k(j+1)}
    double rem = 2.0 / (lam_pow * lam) *
                 std::pow(static_cast<double>(R0), 1.0 - twok * (j + 1)) /
                 (twok * (j + 1) - 1.0);
    KahanSum head;
    for (int l = R0; l >= 1; --l)
      head.add(cos_t[l] * std::pow(static_cast<double>(l), -s));
    total += sign * 2.0 / lam_pow * (cosine_power_sum(s, x) - head.s);
    sign = -sign;
    if (rem <= goal) return total;
  }
  throw numerical_error("eval_g: tail resummation failed to reach tolerance");
}

}  // namespace

double eval_g(const TorusPoint& x, const KernelSpec& spec) {
  if (x.dim() != spec.m) throw input_error("eval_g: dimension mismatch");
  if (spec.trunc.fixed_radius) return cube_partial_g(x, spec, spec.trunc.R);
  if (spec.m == 1) return eval_g_line(x[0], spec);
  return cube_partial_g(x, spec, effective_radius(spec));
}

double eval_w(const TorusPoint& x, const KernelSpec& spec) {
  if (!spec.omega) throw input_error("eval_w: spec has no degree bound omega");
  if (x.dim() != spec.m) throw input_error("eval_w: dimension mismatch");
  KahanSum acc;
  for_each_box_index(*spec.omega, [&](const IVec& l) {
    acc.add(std::cos(dot2pi(l, x)) * spec.symbol(l));
  });
  return acc.s;
}

double eval_dirichlet(const TorusPoint& x, const IVec& omega) {
  const int m = static_cast<int>(omega.size());
  if (x.dim() != m) throw input_error("eval_dirichlet: dimension mismatch");
  double count = 1.0;
  for (int i = 0; i < m; ++i) {
    if (omega[i] < 0) throw input_error("eval_dirichlet: omega must be nonnegative");
    count *= omega[i] + 1.0;
  }
  KahanSum acc;
  IVec r = IVec::Zero(m);
  for (;;) {
    acc.add(std::cos(dot2pi(r, x)));
    int axis = m - 1;
    while (axis >= 0 && r[axis] == omega[axis]) {
      r[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
    ++r[axis];
  }
  return acc.s / count;
}

double eval_s_r(const TorusPoint& x, int r, const KernelSpec& spec) {
  if (r < 1) throw input_error("eval_s_r: r must be >= 1");
  const int p = 2 * spec.k * r;
  if (p <= spec.m) throw input_error("eval_s_r: need 2kr > m for convergence");
  if (x.dim() != spec.m) throw input_error("eval_s_r: dimension mismatch");
  if (spec.m == 1) return 2.0 * cosine_power_sum(p, x[0]);

  const double tol = spec.trunc.fixed_radius ? 0.0 : spec.trunc.tol;
  int R;
  if (spec.trunc.fixed_radius) {
    R = spec.trunc.R;
  } else {
    const int Rmax = max_cube_radius(spec.m);
    R = 1;
    while (R < Rmax && inv_norm_tail(R, spec.m, p) > tol) R *= 2;
    if (R > Rmax) R = Rmax;
    if (inv_norm_tail(R, spec.m, p) > tol)
      throw numerical_error(
          "eval_s_r: tolerance unreachable; best bound " +
          std::to_string(inv_norm_tail(Rmax, spec.m, p)));
  }
  KahanSum acc;
  for_each_box_index(IVec::Constant(spec.m, R), [&](const IVec& l) {
    if (l.isZero()) return;
    acc.add(std::cos(dot2pi(l, x)) / std::pow(norm_2k_pow(l, spec.k), r));
  });
  return acc.s;
}

double asymptotic_g(const TorusPoint& x, const KernelSpec& spec, int order) {
  if (!(spec.lambda > 1.0))
    throw input_error("asymptotic_g: expansion requires lambda > 1");
  if (order < 0) throw input_error("asymptotic_g: order must be >= 0");
  double total = 1.0;
  double sign = 1.0;
  double lam_pow = 1.0;
  for (int r = 1; r <= order; ++r) {
    lam_pow *= spec.lambda;
    total += sign * eval_s_r(x, r, spec) / lam_pow;
    sign = -sign;
  }
  return total;
}

}  // namespace torfit
