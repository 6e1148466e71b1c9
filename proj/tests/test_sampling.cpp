#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "torfit/sampling.hpp"

using namespace torfit;

namespace {
PointSetSpec kind(SamplerKind k, std::uint64_t seed = 0) {
  PointSetSpec s;
  s.kind = k;
  s.seed = seed;
  return s;
}
}  // namespace

TEST_CASE("halton base-2 radical inverse prefix") {
  auto pts = generate(kind(SamplerKind::Halton), 4, 1);
  CHECK(pts[0][0] == doctest::Approx(0.5));
  CHECK(pts[1][0] == doctest::Approx(0.25));
  CHECK(pts[2][0] == doctest::Approx(0.75));
  CHECK(pts[3][0] == doctest::Approx(0.125));
}

TEST_CASE("prefix nesting for sequential samplers") {
  for (auto k : {SamplerKind::Halton, SamplerKind::Kronecker, SamplerKind::UniformRandom}) {
    auto small = generate(kind(k, 42), 16, 2);
    auto big = generate(kind(k, 42), 64, 2);
    for (int i = 0; i < 16; ++i) CHECK(periodic_dist(small[i], big[i]) == 0.0);
  }
}

TEST_CASE("seeded randomness is reproducible and seed-dependent") {
  auto a = generate(kind(SamplerKind::UniformRandom, 7), 10, 1);
  auto b = generate(kind(SamplerKind::UniformRandom, 7), 10, 1);
  auto c = generate(kind(SamplerKind::UniformRandom, 8), 10, 1);
  for (int i = 0; i < 10; ++i) CHECK(a[i][0] == b[i][0]);
  bool differs = false;
  for (int i = 0; i < 10; ++i) differs = differs || a[i][0] != c[i][0];
  CHECK(differs);
}

TEST_CASE("grid sampler in one dimension") {
  auto pts = generate(kind(SamplerKind::Grid), 4, 1);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0][0] == 0.0);
  CHECK(pts[1][0] == 0.25);
  CHECK(pts[2][0] == 0.5);
  CHECK(pts[3][0] == 0.75);
}

TEST_CASE("kronecker default uses the golden ratio in one dimension") {
  auto pts = generate(kind(SamplerKind::Kronecker), 3, 1);
  double g = 0.6180339887498948482;
  CHECK(pts[0][0] == doctest::Approx(g));
  CHECK(pts[1][0] == doctest::Approx(2.0 * g - 1.0));
  CHECK(pts[2][0] == doctest::Approx(3.0 * g - 1.0));
}

TEST_CASE("mesh norm of the uniform grid") {
  auto pts = generate(kind(SamplerKind::Grid), 8, 1);
  CHECK(mesh_norm(pts, 1024) == doctest::Approx(1.0 / 16.0).epsilon(1e-2));
}

TEST_CASE("star discrepancy closed forms in one dimension") {
  std::vector<TorusPoint> single;
  Vec v(1);
  v << 0.5;
  single.emplace_back(v);
  auto d = star_discrepancy(single);
  CHECK(d.lower == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.upper == d.lower);

  // centered grid achieves the optimum 1/(2n)
  const int n = 16;
  std::vector<TorusPoint> centered;
  for (int i = 0; i < n; ++i) {
    Vec x(1);
    x << (2.0 * i + 1.0) / (2.0 * n);
    centered.emplace_back(x);
  }
  CHECK(star_discrepancy(centered).upper == doctest::Approx(1.0 / (2 * n)).epsilon(1e-14));
}

TEST_CASE("star discrepancy of a single midpoint in two dimensions") {
  std::vector<TorusPoint> pts;
  Vec v(2);
  v << 0.5, 0.5;
  pts.emplace_back(v);
  auto d = star_discrepancy(pts);
  CHECK(d.upper == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("two-dimensional estimate dominates sampled box discrepancies") {
  auto pts = generate(kind(SamplerKind::Halton), 128, 2);
  auto d = star_discrepancy(pts);
  PointSetSpec probe = kind(SamplerKind::UniformRandom, 3);
  for (const auto& t : generate(probe, 200, 2)) {
    int count = 0;
    for (const auto& p : pts)
      if (p[0] < t[0] && p[1] < t[1]) ++count;
    double local = std::fabs(count / 128.0 - t[0] * t[1]);
    CHECK(local <= d.upper + 1e-12);
  }
}

TEST_CASE("halton discrepancy decreases with n") {
  auto d64 = star_discrepancy(generate(kind(SamplerKind::Halton), 64, 2));
  auto d1024 = star_discrepancy(generate(kind(SamplerKind::Halton), 1024, 2));
  CHECK(d1024.upper < d64.upper);
}

TEST_CASE("discrepancy proxy") {
  CHECK(discrepancy_proxy(4096, 1) == doctest::Approx(std::log(4096.0) / 4096.0));
  CHECK(discrepancy_proxy(100, 2) ==
        doctest::Approx(std::pow(std::log(100.0), 2) / 100.0));
  CHECK_THROWS_AS(discrepancy_proxy(1, 1), input_error);
}

TEST_CASE("sampler names round-trip") {
  for (auto k : {SamplerKind::UniformRandom, SamplerKind::Halton,
                 SamplerKind::Kronecker, SamplerKind::Grid})
    CHECK(parse_sampler(sampler_name(k)) == k);
  CHECK_THROWS_AS(parse_sampler("sobol"), input_error);
}
