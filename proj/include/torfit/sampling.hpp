#pragma once

#include <cstdint>

#include "torfit/torus.hpp"

namespace torfit {

enum class SamplerKind { UniformRandom, Halton, Kronecker, Grid };

struct PointSetSpec {
  SamplerKind kind = SamplerKind::Halton;
  std::uint64_t seed = 0;   // uniform-random only
  Vec alpha;                // kronecker shift; empty = default irrational shift
};

SamplerKind parse_sampler(const std::string& name);
std::string sampler_name(SamplerKind kind);

// First n points of the chosen sequence in dimension m.  Halton, Kronecker
// and seeded uniform-random sequences are prefix-nested: generating n' > n
// reproduces the first n points.  The grid sampler lays n points on a tensor
// grid and is not nested across different n.
std::vector<TorusPoint> generate(const PointSetSpec& spec, int n, int m);

// Largest distance from a probe-grid point to the nearest site (periodic
// metric); probe grid has probe_res points per axis.
double mesh_norm(const std::vector<TorusPoint>& sites, int probe_res);

struct DiscrepancyEstimate {
  double lower;
  double upper;
};

// Star discrepancy of the point set.  m = 1: exact closed form (lower ==
// upper).  m = 2 or 3: bracketed through the coordinate-induced grid.
DiscrepancyEstimate star_discrepancy(const std::vector<TorusPoint>& sites);

// (ln n)^m / n, the schedule driver used in place of the measured value.
double discrepancy_proxy(int n, int m);

}  // namespace torfit
