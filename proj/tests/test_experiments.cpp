#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "torfit/experiments.hpp"

using namespace torfit;

namespace {

PointSetSpec halton() {
  PointSetSpec s;
  s.kind = SamplerKind::Halton;
  return s;
}

}  // namespace

TEST_CASE("interpolation sweep: residuals fall as lambda grows") {
  PointSetSpec s = halton();
  auto sites = generate(s, 8, 1);
  ScatteredData data = sample_target(find_target("smooth"), sites);
  KernelSpec base(1, 1, 1.0, IVec::Constant(1, 8));
  InterpolationReport rep =
      run_interpolation_limit(data, base, {16.0, 64.0, 256.0, 1024.0});
  REQUIRE(rep.rows.size() == 4);
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].max_residual <= rep.rows[i - 1].max_residual * 1.01);
  CHECK(rep.slope < -0.4);
  CHECK_THROWS_AS(run_interpolation_limit(data, base, {16.0, 8.0}), input_error);
}

TEST_CASE("discrepancy bound holds for the sawtooth") {
  auto rows = run_kh_check(find_target("sawtooth"), halton(), {64, 256});
  for (const auto& r : rows) {
    CHECK(r.holds);
    CHECK(r.integral == 0.0);
  }
  PointSetSpec g;
  g.kind = SamplerKind::Grid;
  auto grows = run_kh_check(find_target("sawtooth"), g, {64});
  // the grid starts at 0, whose sample is nudged, so the mean is near zero
  CHECK(std::fabs(grows[0].qmc_mean) <= grows[0].bound);
}

TEST_CASE("kh check requires a recorded variation") {
  CHECK_THROWS_AS(run_kh_check(find_target("smooth"), halton(), {16}), input_error);
}

TEST_CASE("condition study stays below the data-independent bound") {
  ConditionReport rep = run_condition_study(1, 1, 10.0, {16, 64}, halton());
  REQUIRE(rep.rows.size() == 2);
  for (const auto& r : rep.rows) CHECK(r.kappa_measured <= r.kappa_bound);
}

TEST_CASE("convergence run: errors shrink and the functional chain holds") {
  ScheduleParams params = suggest(1);
  params.kappa = Vec::Constant(1, 4.0);
  ConvergenceReport rep =
      run_convergence(find_target("square"), params, {64, 256}, halton(),
                      IVec::Constant(1, 2048));
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[1].l2_error < rep.rows[0].l2_error);
  for (const auto& r : rep.rows) {
    CHECK(r.kappa_measured <= r.kappa_bound);
    CHECK(r.l2_error * r.l2_error >=
          0.99 * projection_error_sq(find_target("square"), r.omega));
  }

  // minimizer value is below the value of the projected target
  const auto& target = find_target("square");
  for (const auto& r : rep.rows) {
    PointSetSpec s = halton();
    auto sites = generate(s, r.n, 1);
    ScatteredData data = sample_target(target, sites);
    KernelSpec spec(1, params.k, r.lambda, r.omega);
    FittedModel model = fit(data, spec);
    double fitted = functional_value(model, data, r.lambda, params.k);
    double projected =
        functional_value(project_target(target, r.omega), data, r.lambda, params.k);
    CHECK(fitted <= projected * (1.0 + 1e-12));
  }
}

TEST_CASE("csv output: header, row count, determinism apart from wall time") {
  ScheduleParams params = suggest(1);
  params.kappa = Vec::Constant(1, 2.0);
  ConvergenceReport rep =
      run_convergence(find_target("smooth"), params, {32, 64}, halton(),
                      IVec::Constant(1, 1024));
  write_csv(rep, "test_report.csv");

  std::ifstream in("test_report.csv");
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "n,zeta_proxy,zeta_measured,lambda,omega,l2_error,linf_error,"
        "data_rmse,kappa_measured,kappa_bound,wall_ms");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);

  std::ifstream meta("test_report.csv.meta.json");
  CHECK(meta.good());

  ConvergenceReport rep2 =
      run_convergence(find_target("smooth"), params, {32, 64}, halton(),
                      IVec::Constant(1, 1024));
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].l2_error == rep2.rows[i].l2_error);
    CHECK(rep.rows[i].linf_error == rep2.rows[i].linf_error);
    CHECK(rep.rows[i].data_rmse == rep2.rows[i].data_rmse);
    CHECK(rep.rows[i].kappa_measured == rep2.rows[i].kappa_measured);
    CHECK(rep.rows[i].lambda == rep2.rows[i].lambda);
  }
}
