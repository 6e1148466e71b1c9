#include "torfit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

namespace torfit {

namespace {

const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

// Deterministic, platform-independent uniform doubles in [0,1).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }
};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, x = 0.0;
  while (i > 0) {
    x += (i % base) * f;
    i /= base;
    f *= inv;
  }
  return x;
}

void fix_collisions(std::vector<TorusPoint>& pts) {
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (periodic_dist(pts[i], pts[j]) < 1e-12) {
        std::cerr << "generate: sites " << i << " and " << j
                  << " collide; perturbing site " << j << " by 1e-6\n";
        Vec c = pts[j].coords();
        c.array() += 1e-6 * (1.0 + j % 7);
        pts[j] = TorusPoint(c);
      }
}

}  // namespace

SamplerKind parse_sampler(const std::string& name) {
  if (name == "random") return SamplerKind::UniformRandom;
  if (name == "halton") return SamplerKind::Halton;
  if (name == "kronecker") return SamplerKind::Kronecker;
  if (name == "grid") return SamplerKind::Grid;
  throw input_error("unknown sampler '" + name + "'");
}

std::string sampler_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::UniformRandom: return "random";
    case SamplerKind::Halton: return "halton";
    case SamplerKind::Kronecker: return "kronecker";
    case SamplerKind::Grid: return "grid";
  }
  return "?";
}

std::vector<TorusPoint> generate(const PointSetSpec& spec, int n, int m) {
  if (n < 1) throw input_error("generate: n must be >= 1");
  if (m < 1 || m > 10) throw input_error("generate: m must be in [1, 10]");
  std::vector<TorusPoint> pts;
  pts.reserve(n);

  switch (spec.kind) {
    case SamplerKind::UniformRandom: {
      SplitMix64 rng(spec.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
      for (int i = 0; i < n; ++i) {
        Vec x(m);
        for (int a = 0; a < m; ++a) x[a] = rng.next_double();
        pts.emplace_back(x);
      }
      break;
    }
    case SamplerKind::Halton: {
      for (int i = 1; i <= n; ++i) {
        Vec x(m);
        for (int a = 0; a < m; ++a) x[a] = radical_inverse(i, kPrimes[a]);
        pts.emplace_back(x);
      }
      break;
    }
    case SamplerKind::Kronecker: {
      Vec alpha = spec.alpha;
      if (alpha.size() == 0) {
        alpha.resize(m);
        if (m == 1) {
          alpha[0] = 0.6180339887498948482;  // golden ratio fraction
        } else {
          for (int a = 0; a < m; ++a)
            alpha[a] = std::sqrt(static_cast<double>(kPrimes[a])) -
                       std::floor(std::sqrt(static_cast<double>(kPrimes[a])));
        }
      }
      if (alpha.size() != m) throw input_error("generate: kronecker alpha has wrong size");
      Vec acc = Vec::Zero(m);
      for (int i = 1; i <= n; ++i) {
        acc += alpha;
        for (int a = 0; a < m; ++a) acc[a] -= std::floor(acc[a]);
        pts.emplace_back(acc);
      }
      break;
    }
    case SamplerKind::Grid: {
      int side = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 / m)));
      while (std::pow(static_cast<double>(side), m) < n) ++side;
      IVec idx = IVec::Zero(m);
      for (int i = 0; i < n; ++i) {
        Vec x(m);
        for (int a = 0; a < m; ++a) x[a] = static_cast<double>(idx[a]) / side;
        pts.emplace_back(x);
        int axis = m - 1;
        while (axis >= 0 && ++idx[axis] == side) {
          idx[axis] = 0;
          --axis;
        }
      }
      break;
    }
  }
  fix_collisions(pts);
  return pts;
}

double mesh_norm(const std::vector<TorusPoint>& sites, int probe_res) {
  if (sites.empty()) throw input_error("mesh_norm: no sites");
  if (probe_res < 1) throw input_error("mesh_norm: probe_res must be >= 1");
  const int m = sites.front().dim();
  double total = std::pow(static_cast<double>(probe_res), m);
  if (total > double(1 << 24)) throw input_error("mesh_norm: probe grid too large");

  double worst = 0.0;
  IVec idx = IVec::Zero(m);
  const std::uint64_t count = static_cast<std::uint64_t>(total);
  for (std::uint64_t c = 0; c < count; ++c) {
    Vec x(m);
    for (int a = 0; a < m; ++a) x[a] = static_cast<double>(idx[a]) / probe_res;
    TorusPoint p(x);
    double best = 1e300;
    for (const auto& s : sites) best = std::min(best, periodic_dist(p, s));
    worst = std::max(worst, best);
    int axis = m - 1;
    while (axis >= 0 && ++idx[axis] == probe_res) {
      idx[axis] = 0;
      --axis;
    }
  }
  return worst;
}

namespace {

DiscrepancyEstimate star_1d(const std::vector<TorusPoint>& sites) {
  const int n = static_cast<int>(sites.size());
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = sites[i][0];
  std::sort(x.begin(), x.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i)
    d = std::max(d, std::fabs(x[i] - (2.0 * i + 1.0) / (2.0 * n)));
  d += 1.0 / (2.0 * n);
  return {d, d};
}

// Exact supremum over anchored half-open boxes via the coordinate-induced
// grid: within each cell the count is constant, so the extremes sit at cell
// corners.
DiscrepancyEstimate star_2d(const std::vector<TorusPoint>& sites) {
  const int n = static_cast<int>(sites.size());
  std::vector<double> xs, ys;
  xs.reserve(n);
  ys.reserve(n);
  for (const auto& p : sites) {
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  if (static_cast<std::int64_t>(nx + 1) * (ny + 1) > 40000000)
    throw input_error("star_discrepancy: point set too large for exact 2D bracket");

  // closed(i,j) = #points with x <= xs[i-1], y <= ys[j-1]; row/col 0 is zero.
  std::vector<std::int32_t> closed((nx + 1) * (ny + 1), 0);
  auto at = [&](int i, int j) -> std::int32_t& { return closed[i * (ny + 1) + j]; };
  for (const auto& p : sites) {
    int i = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), p[0]) - xs.begin()) + 1;
    int j = static_cast<int>(std::lower_bound(ys.begin(), ys.end(), p[1]) - ys.begin()) + 1;
    ++at(i, j);
  }
  for (int i = 1; i <= nx; ++i)
    for (int j = 1; j <= ny; ++j)
      at(i, j) += at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1);

  auto coord = [](const std::vector<double>& v, int i) {
    return i == 0 ? 0.0 : v[i - 1];
  };
  double d = 0.0;
  for (int i = 0; i <= nx; ++i) {
    double xlow = coord(xs, i);
    double xhigh = i == nx ? 1.0 : xs[i];
    for (int j = 0; j <= ny; ++j) {
      double ylow = coord(ys, j);
      double yhigh = j == ny ? 1.0 : ys[j];
      double a = static_cast<double>(at(i, j)) / n;  // count in the open cell
      d = std::max(d, a - xlow * ylow);
      d = std::max(d, xhigh * yhigh - a);
    }
  }
  return {d, d};
}

DiscrepancyEstimate star_3d(const std::vector<TorusPoint>& sites) {
  const int n = static_cast<int>(sites.size());
  std::vector<std::vector<double>> c(3);
  for (const auto& p : sites)
    for (int a = 0; a < 3; ++a) c[a].push_back(p[a]);
  for (auto& v : c) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  const int n0 = static_cast<int>(c[0].size()), n1 = static_cast<int>(c[1].size()),
            n2 = static_cast<int>(c[2].size());
  if (static_cast<std::int64_t>(n0 + 1) * (n1 + 1) * (n2 + 1) > 30000000)
    throw input_error("star_discrepancy: point set too large for exact 3D bracket");
  std::vector<std::int32_t> cl((n0 + 1) * (n1 + 1) * (n2 + 1), 0);
  auto at = [&](int i, int j, int k) -> std::int32_t& {
    return cl[(i * (n1 + 1) + j) * (n2 + 1) + k];
  };
  for (const auto& p : sites) {
    int i = static_cast<int>(std::lower_bound(c[0].begin(), c[0].end(), p[0]) - c[0].begin()) + 1;
    int j = static_cast<int>(std::lower_bound(c[1].begin(), c[1].end(), p[1]) - c[1].begin()) + 1;
    int k = static_cast<int>(std::lower_bound(c[2].begin(), c[2].end(), p[2]) - c[2].begin()) + 1;
    ++at(i, j, k);
  }
  for (int i = 1; i <= n0; ++i)
    for (int j = 0; j <= n1; ++j)
      for (int k = 0; k <= n2; ++k) at(i, j, k) += at(i - 1, j, k);
  for (int i = 0; i <= n0; ++i)
    for (int j = 1; j <= n1; ++j)
      for (int k = 0; k <= n2; ++k) at(i, j, k) += at(i, j - 1, k);
  for (int i = 0; i <= n0; ++i)
    for (int j = 0; j <= n1; ++j)
      for (int k = 1; k <= n2; ++k) at(i, j, k) += at(i, j, k - 1);

  auto coord = [](const std::vector<double>& v, int i) {
    return i == 0 ? 0.0 : v[i - 1];
  };
  double d = 0.0;
  for (int i = 0; i <= n0; ++i) {
    double xl = coord(c[0], i), xh = i == n0 ? 1.0 : c[0][i];
    for (int j = 0; j <= n1; ++j) {
      double yl = coord(c[1], j), yh = j == n1 ? 1.0 : c[1][j];
      for (int k = 0; k <= n2; ++k) {
        double zl = coord(c[2], k), zh = k == n2 ? 1.0 : c[2][k];
        double a = static_cast<double>(at(i, j, k)) / n;
        d = std::max(d, a - xl * yl * zl);
        d = std::max(d, xh * yh * zh - a);
      }
    }
  }
  return {d, d};
}

}  // namespace

DiscrepancyEstimate star_discrepancy(const std::vector<TorusPoint>& sites) {
  if (sites.empty()) throw input_error("star_discrepancy: no sites");
  switch (sites.front().dim()) {
    case 1: return star_1d(sites);
    case 2: return star_2d(sites);
    case 3: return star_3d(sites);
    default:
      throw input_error("star_discrepancy: supported for m in {1, 2, 3}");
  }
}

double discrepancy_proxy(int n, int m) {
  if (n < 2) throw input_error("discrepancy_proxy: n must be >= 2");
  if (m < 1) throw input_error("discrepancy_proxy: m must be >= 1");
  return std::pow(std::log(static_cast<double>(n)), m) / n;
}

}  // namespace torfit
