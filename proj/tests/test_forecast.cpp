#include <doctest.h>

#include <cmath>

#include "windcast/errors.hpp"
#include "windcast/estimation.hpp"
#include "windcast/forecast.hpp"
#include "windcast/simulate.hpp"

using namespace windcast;

namespace {

// Degenerate mean (intercept pinned at zero) so the error filter is the whole
// story.
FitResult pure_error_fit(ArfimaParams arf) {
  FitResult fr;
  fr.kind = ModelKind::fourier;
  fr.orders = Orders{static_cast<int>(arf.ar.size()), static_cast<int>(arf.ma.size()), 0, 0};
  fr.spec = SeasonalSpec::make(100.0, 10.0, Eigen::MatrixXi::Zero(1, 1), false, 1.0);
  fr.params.theta = VecX::Zero(1);
  fr.params.arfima = std::move(arf);
  fr.params.aparch = AparchParams::make(1.0, VecX(), VecX(), VecX(), 2.0);
  fr.params.skewt = SkewTParams::make(1.0, 8.0);
  return fr;
}

} // namespace

TEST_SUITE("forecast") {

TEST_CASE("autoregressive decay from the last innovation") {
  const FitResult fr = pure_error_fit(
      ArfimaParams::make(0.0, (VecX(1) << 0.5).finished(), VecX(), 100));
  VecX hist = VecX::Zero(40);
  hist[39] = 1.0;
  const VecX f = forecast_mean(fr, hist, 0.0, 39, 3);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(f[2] == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("moving-average memory stops after q steps") {
  const FitResult fr = pure_error_fit(
      ArfimaParams::make(0.0, VecX(), (VecX(1) << 0.4).finished(), 100));
  VecX hist(2);
  hist << 1.0, 0.5;
  const VecX f = forecast_mean(fr, hist, 0.0, 1, 3);
  // z_0 = 1, z_1 = 0.5 - 0.4 = 0.1; one step ahead theta_1 z_1, then nothing
  CHECK(f[0] == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(std::abs(f[1]) < 1e-15);
  CHECK(std::abs(f[2]) < 1e-15);
}

TEST_CASE("mixed filter matches the hand recursion") {
  const FitResult fr = pure_error_fit(ArfimaParams::make(
      0.0, (VecX(1) << 0.6).finished(), (VecX(1) << 0.4).finished(), 100));
  VecX hist(3);
  hist << 0.2, -1.0, 0.7;
  const VecX f = forecast_mean(fr, hist, 0.0, 2, 3);
  CHECK(f[0] == doctest::Approx(1.1319999999999999).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(0.67919999999999991).epsilon(1e-12));
  CHECK(f[2] == doctest::Approx(0.40751999999999994).epsilon(1e-12));
}

TEST_CASE("fractional forecast matches the recursive tail sum") {
  const FitResult fr = pure_error_fit(ArfimaParams::make(0.3, VecX(), VecX(), 1000));
  VecX hist(4);
  hist << 1.0, -0.5, 0.25, 0.8;
  const VecX f = forecast_mean(fr, hist, 0.0, 3, 3);
  CHECK(f[0] == doctest::Approx(0.27666249999999998).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(0.19151275000000001).epsilon(1e-12));
  CHECK(f[2] == doctest::Approx(0.15256475).epsilon(1e-12));
}

TEST_CASE("deterministic mean reappears in the forecast") {
  // noiseless seasonal path under known coefficients: the forecast must
  // continue it exactly, pinning the time indexing of the regressors
  Eigen::MatrixXi ind = Eigen::MatrixXi::Zero(2, 2);
  ind(0, 1) = 1;
  ind(1, 0) = 1;
  const index_t n = 800;
  const SeasonalSpec sp = SeasonalSpec::make(200.0, 20.0, ind, true, double(n));
  const VecX theta = (VecX(4) << 5.0, 0.4, 1.5, 0.7).finished();
  const double t0 = 37.0;
  const VecX w = design_matrix(sp, t0, n) * theta;

  FitResult fr;
  fr.kind = ModelKind::fourier;
  fr.orders = Orders{1, 1, 1, 1};
  fr.spec = sp;
  fr.params.theta = theta;
  fr.params.arfima = ArfimaParams::make(
      0.21, (VecX(1) << 0.5).finished(), (VecX(1) << -0.3).finished(), 400);
  fr.params.aparch = AparchParams::make(0.05, (VecX(1) << 0.1).finished(),
                                        (VecX(1) << -0.1).finished(),
                                        (VecX(1) << 0.6).finished(), 1.3);
  fr.params.skewt = SkewTParams::make(1.1, 8.0);

  const VecX f = forecast_mean(fr, w, t0, n - 1, 12);
  for (int h = 1; h <= 12; ++h) {
    const double expect = regressor_row(sp, t0 + double(n - 1 + h)).dot(theta);
    CHECK(f[h - 1] == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("ignores observations past the origin") {
  const FitResult fr = pure_error_fit(
      ArfimaParams::make(0.0, (VecX(1) << 0.5).finished(), VecX(), 100));
  VecX hist = VecX::Zero(50);
  hist[30] = 2.0;
  VecX hist2 = hist;
  hist2.tail(19).setConstant(123.0);
  const VecX a = forecast_mean(fr, hist, 0.0, 30, 5);
  const VecX b = forecast_mean(fr, hist2, 0.0, 30, 5);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("horizon and origin guards") {
  const FitResult fr = pure_error_fit(ArfimaParams::make(0.1, VecX(), VecX(), 100));
  const VecX hist = VecX::Ones(20);
  CHECK_THROWS_AS(forecast_mean(fr, hist, 0.0, 19, 145), ConfigError);
  CHECK_THROWS_AS(forecast_mean(fr, hist, 0.0, 19, 200, 144), ConfigError);
  CHECK_NOTHROW(forecast_mean(fr, hist, 0.0, 19, 200, 220));
  CHECK_THROWS_AS(forecast_mean(fr, hist, 0.0, 25, 3), std::invalid_argument);
  CHECK_THROWS_AS(forecast_mean(fr, hist, 0.0, 19, 0), std::invalid_argument);
}

TEST_CASE("scale recursion one step by hand") {
  ModelParams prm;
  prm.theta = VecX::Zero(1);
  prm.arfima = ArfimaParams::make(0.0, VecX(), VecX(), 10);
  prm.aparch = AparchParams::make(0.3, (VecX(1) << 0.2).finished(),
                                  (VecX(1) << -0.25).finished(),
                                  (VecX(1) << 0.4).finished(), 1.7);
  prm.skewt = SkewTParams::make(1.2, 7.0);

  VecX z(3);
  z << 0.5, -1.4, 0.9;
  ArrX sd(3);
  sd << 1.0, 1.1, 1.3;

  const VecX f = forecast_scale_from_paths(prm, z, sd, 3);
  const double kappa = asym_power_moment(-0.25, 1.7, prm.skewt);
  const double e1 = 0.3 + 0.2 * std::pow(std::abs(0.9) + 0.25 * 0.9, 1.7) + 0.4 * 1.3;
  CHECK(f[0] == doctest::Approx(e1).epsilon(1e-12));
  const double e2 = 0.3 + 0.2 * kappa * e1 + 0.4 * e1;
  CHECK(f[1] == doctest::Approx(e2).epsilon(1e-12));
  const double e3 = 0.3 + 0.2 * kappa * e2 + 0.4 * e2;
  CHECK(f[2] == doctest::Approx(e3).epsilon(1e-12));
}

TEST_CASE("scale forecast relaxes to the stationary level") {
  ModelParams prm;
  prm.theta = VecX::Zero(1);
  prm.arfima = ArfimaParams::make(0.0, VecX(), VecX(), 10);
  prm.aparch = AparchParams::make(0.2, (VecX(1) << 0.1).finished(),
                                  (VecX(1) << 0.0).finished(),
                                  (VecX(1) << 0.45).finished(), 2.0);
  prm.skewt = SkewTParams::make(1.0, 9.0);
  const double level = stationary_scale_level(prm.aparch, prm.skewt);

  VecX z(4);
  z << 3.0, -2.0, 2.5, -3.5;  // loud recent past, far above the level
  ArrX sd(4);
  sd << 9.0, 8.0, 10.0, 12.0;
  const VecX f = forecast_scale_from_paths(prm, z, sd, 400);
  CHECK(f[0] > level);
  CHECK(f[399] == doctest::Approx(level).epsilon(1e-10));
  // monotone relaxation from above
  for (int h = 1; h < 400; ++h) CHECK(f[h] <= f[h - 1] + 1e-12);
}

TEST_CASE("short path guard") {
  ModelParams prm;
  prm.theta = VecX::Zero(1);
  prm.arfima = ArfimaParams::make(0.0, VecX(), VecX(), 10);
  prm.aparch = AparchParams::make(0.2, (VecX(2) << 0.1, 0.05).finished(),
                                  (VecX(2) << 0.0, 0.0).finished(),
                                  (VecX(1) << 0.45).finished(), 2.0);
  prm.skewt = SkewTParams::make(1.0, 9.0);
  VecX z(1);
  z << 1.0;
  ArrX sd(1);
  sd << 1.0;
  CHECK_THROWS_AS(forecast_scale_from_paths(prm, z, sd, 2), std::invalid_argument);
}

TEST_CASE("scale forecast from a fit wraps the path form") {
  FitResult fr = pure_error_fit(ArfimaParams::make(0.0, VecX(), VecX(), 10));
  fr.params.aparch = AparchParams::make(0.3, (VecX(1) << 0.2).finished(),
                                        (VecX(1) << -0.25).finished(),
                                        (VecX(1) << 0.4).finished(), 1.7);
  fr.params.skewt = SkewTParams::make(1.2, 7.0);
  fr.z = (VecX(3) << 0.5, -1.4, 0.9).finished();
  fr.sigma = (VecX(3) << 1.0, 1.1, 1.3).finished();
  const VecX a = forecast_scale(fr, 5);
  const VecX b = forecast_scale_from_paths(
      fr.params, fr.z, fr.sigma.array().pow(1.7), 5);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(forecast_scale(fr, 145), ConfigError);
  fr.z.resize(0);
  CHECK_THROWS_AS(forecast_scale(fr, 3), std::invalid_argument);
}

TEST_CASE("persistence repeats the origin value") {
  VecX hist(5);
  hist << 1.0, 2.0, 3.0, 4.0, 5.0;
  const VecX f = persistence_forecast(hist, 2, 4);
  REQUIRE(f.size() == 4);
  CHECK((f.array() == 3.0).all());
  CHECK_THROWS_AS(persistence_forecast(hist, 5, 2), std::invalid_argument);
  CHECK_THROWS_AS(persistence_forecast(hist, 2, 0), std::invalid_argument);
}

}
