#include "torfit/targets.hpp"

#include <cmath>
#include <iostream>

namespace torfit {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cd = std::complex<double>;

double dist_mod1(double x, double a) {
  double d = std::fabs(x - a);
  return std::min(d, 1.0 - d);
}

// Shift x by 1e-6 when within 1e-9 of any anchor (mod 1).
TorusPoint nudge_axis_points(const TorusPoint& p, int axis,
                             const std::vector<double>& anchors) {
  for (double a : anchors) {
    if (dist_mod1(p[axis], a) < 1e-9) {
      Vec c = p.coords();
      c[axis] += 1e-6;
      return TorusPoint(c);
    }
  }
  return p;
}

// Fourier coefficient of the indicator of [a,b] on the circle.
cd interval_coeff(int l, double a, double b) {
  if (l == 0) return cd(b - a, 0.0);
  cd i2pl(0.0, 2.0 * kPi * l);
  return (std::exp(-i2pl * a) - std::exp(-i2pl * b)) / i2pl;
}

// Indicator of [a,b] with midpoint values on the boundary.
double interval_eval(double x, double a, double b) {
  if (x == a || x == b) return 0.5;
  return (x > a && x < b) ? 1.0 : 0.0;
}

std::vector<TargetFunction> build_registry() {
  std::vector<TargetFunction> reg;

  {
    TargetFunction t;
    t.name = "square";
    t.description = "square wave sign(sin 2 pi x); jumps at 0 and 1/2";
    t.m = 1;
    t.eval = [](const TorusPoint& p) {
      double s = std::sin(2.0 * kPi * p[0]);
      if (p[0] == 0.0 || p[0] == 0.5) return 0.0;
      return s > 0.0 ? 1.0 : -1.0;
    };
    t.fourier = [](const IVec& l) {
      int v = l[0];
      if (v == 0 || v % 2 == 0) return cd(0.0, 0.0);
      return cd(0.0, -2.0 / (kPi * v));
    };
    t.l2_norm_sq = 1.0;
    t.total_variation = 4.0;
    t.nudge = [](const TorusPoint& p) { return nudge_axis_points(p, 0, {0.0, 0.5}); };
    reg.push_back(std::move(t));
  }

  {
    TargetFunction t;
    t.name = "sawtooth";
    t.description = "sawtooth x - 1/2 with midpoint value 0 at the jump";
    t.m = 1;
    t.eval = [](const TorusPoint& p) {
      if (p[0] == 0.0) return 0.0;
      return p[0] - 0.5;
    };
    t.fourier = [](const IVec& l) {
      int v = l[0];
      if (v == 0) return cd(0.0, 0.0);
      return cd(0.0, 1.0 / (2.0 * kPi * v));
    };
    t.l2_norm_sq = 1.0 / 12.0;
    t.total_variation = 2.0;
    t.nudge = [](const TorusPoint& p) { return nudge_axis_points(p, 0, {0.0}); };
    reg.push_back(std::move(t));
  }

  {
    TargetFunction t;
    t.name = "hat";
    t.description = "triangle wave 1 - 4|x - 1/2|; continuous, kinks at 0 and 1/2";
    t.m = 1;
    t.eval = [](const TorusPoint& p) { return 1.0 - 4.0 * std::fabs(p[0] - 0.5); };
    t.fourier = [](const IVec& l) {
      int v = l[0];
      if (v == 0 || v % 2 == 0) return cd(0.0, 0.0);
      return cd(-4.0 / (kPi * kPi * v * v), 0.0);
    };
    t.l2_norm_sq = 1.0 / 3.0;
    t.total_variation = 4.0;
    t.nudge = [](const TorusPoint& p) { return p; };
    reg.push_back(std::move(t));
  }

  {
    TargetFunction t;
    t.name = "smooth";
    t.description = "trigonometric polynomial of degree 2";
    t.m = 1;
    t.eval = [](const TorusPoint& p) {
      double th = 2.0 * kPi * p[0];
      return 0.3 + 0.2 * std::cos(th) + 0.1 * std::sin(th) + 0.05 * std::cos(2.0 * th);
    };
    t.fourier = [](const IVec& l) {
      switch (l[0]) {
        case 0: return cd(0.3, 0.0);
        case 1: return cd(0.1, -0.05);
        case -1: return cd(0.1, 0.05);
        case 2: return cd(0.025, 0.0);
        case -2: return cd(0.025, 0.0);
        default: return cd(0.0, 0.0);
      }
    };
    t.l2_norm_sq = 0.09 + 2.0 * (0.01 + 0.0025) + 2.0 * 0.000625;
    t.total_variation = std::nullopt;
    t.nudge = [](const TorusPoint& p) { return p; };
    reg.push_back(std::move(t));
  }

  {
    TargetFunction t;
    t.name = "box2d";
    t.description = "indicator of [0.2,0.7] x [0.3,0.6]; midpoint values on edges";
    t.m = 2;
    t.eval = [](const TorusPoint& p) {
      return interval_eval(p[0], 0.2, 0.7) * interval_eval(p[1], 0.3, 0.6);
    };
    t.fourier = [](const IVec& l) {
      return interval_coeff(l[0], 0.2, 0.7) * interval_coeff(l[1], 0.3, 0.6);
    };
    t.l2_norm_sq = 0.5 * 0.3;
    t.total_variation = 4.0;  // Vitali sense: one unit per corner
    t.nudge = [](const TorusPoint& p) {
      TorusPoint q = nudge_axis_points(p, 0, {0.2, 0.7});
      return nudge_axis_points(q, 1, {0.3, 0.6});
    };
    reg.push_back(std::move(t));
  }

  return reg;
}

}  // namespace

const std::vector<TargetFunction>& target_registry() {
  static const std::vector<TargetFunction> reg = build_registry();
  return reg;
}

const TargetFunction& find_target(const std::string& name) {
  for (const auto& t : target_registry())
    if (t.name == name) return t;
  throw input_error("unknown target '" + name + "'");
}

ScatteredData sample_target(const TargetFunction& target,
                            const std::vector<TorusPoint>& sites) {
  ScatteredData data;
  data.points.reserve(sites.size());
  data.values.resize(static_cast<Eigen::Index>(sites.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i].dim() != target.m)
      throw input_error("sample_target: site dimension != target dimension");
    TorusPoint p = target.nudge(sites[i]);
    if (periodic_dist(p, sites[i]) > 0.0) {
      std::cerr << "sample_target: site " << i
                << " within 1e-9 of a discontinuity of '" << target.name
                << "'; shifted by 1e-6\n";
    }
    data.values[static_cast<Eigen::Index>(i)] = target.eval(p);
    data.points.push_back(std::move(p));
  }
  data.validate();
  return data;
}

double projection_error_sq(const TargetFunction& target, const IVec& omega) {
  if (omega.size() != target.m) throw input_error("projection_error_sq: dimension mismatch");
  double retained = 0.0;
  for_each_box_index(omega, [&](const IVec& l) { retained += std::norm(target.fourier(l)); });
  double tail = target.l2_norm_sq - retained;
  return tail > 0.0 ? tail : 0.0;
}

}  // namespace torfit
