#include "torfit/torus.hpp"

#include <cmath>
#include <limits>

namespace torfit {

namespace {

double wrap_coord(double x) {
  double w = x - std::floor(x);
  // floor can land exactly on 1.0 when x is a tiny negative number.
  if (w >= 1.0) w = 0.0;
  return w;
}

}  // namespace

TorusPoint::TorusPoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0) throw input_error("TorusPoint: empty coordinate vector");
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i]))
      throw input_error("TorusPoint: non-finite coordinate at axis " + std::to_string(i));
    coords_[i] = wrap_coord(coords_[i]);
  }
}

TorusPoint wrap(const Vec& raw) { return TorusPoint(raw); }

TorusPoint periodic_diff(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim()) throw input_error("periodic_diff: dimension mismatch");
  return TorusPoint(a.coords() - b.coords());
}

double periodic_dist(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim()) throw input_error("periodic_dist: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    double d = std::fabs(a[i] - b[i]);
    d = std::min(d, 1.0 - d);
    s += d * d;
  }
  return std::sqrt(s);
}

double norm_2k_pow(const IVec& l, int k) {
  if (k < 1) throw input_error("norm_2k_pow: k must be >= 1");
  constexpr std::int64_t cap = std::int64_t(1) << 62;
  std::int64_t sum = 0;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    std::int64_t base = std::abs(static_cast<std::int64_t>(l[i]));
    std::int64_t p = 1;
    for (int e = 0; e < 2 * k; ++e) {
      if (base != 0 && p > cap / base)
        throw input_error("norm_2k_pow: |l_i|^(2k) exceeds 2^62");
      p *= base;
    }
    if (sum > cap - p) throw input_error("norm_2k_pow: sum exceeds 2^62");
    sum += p;
  }
  return static_cast<double>(sum);
}

std::uint64_t box_size(const IVec& omega) {
  constexpr std::uint64_t cap = std::uint64_t(1) << 62;
  std::uint64_t n = 1;
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    if (omega[i] < 0) throw input_error("box_size: negative bound");
    std::uint64_t side = 2 * static_cast<std::uint64_t>(omega[i]) + 1;
    if (n > cap / side) throw input_error("box_size: index box exceeds 2^62 points");
    n *= side;
  }
  return n;
}

std::vector<IVec> enumerate_box(const IVec& omega) {
  std::uint64_t n = box_size(omega);
  if (n > (std::uint64_t(1) << 26))
    throw input_error("enumerate_box: refusing to materialize more than 2^26 indices");
  std::vector<IVec> out;
  out.reserve(static_cast<std::size_t>(n));
  for_each_box_index(omega, [&](const IVec& l) { out.push_back(l); });
  return out;
}

std::vector<IVec> enumerate_cube(int R, int m) {
  if (R < 0 || m < 1) throw input_error("enumerate_cube: need R >= 0 and m >= 1");
  return enumerate_box(IVec::Constant(m, R));
}

std::vector<IVec> enumerate_half_box(const IVec& omega) {
  std::vector<IVec> out;
  for (const IVec& l : enumerate_box(omega)) {
    for (Eigen::Index i = 0; i < l.size(); ++i) {
      if (l[i] > 0) {
        out.push_back(l);
        break;
      }
      if (l[i] < 0) break;
    }
  }
  return out;
}

}  // namespace torfit
