#include <doctest.h>

#include <cmath>

#include "qcorr/simplex.hpp"

using qcorr::nelder_mead;

TEST_CASE("simplex: shifted quadratic") {
  auto f = [](std::span<const double> x) {
    return (x[0] - 1.5) * (x[0] - 1.5) + 3 * (x[1] + 0.25) * (x[1] + 0.25) + 2.0;
  };
  const auto r = nelder_mead(f, {0.0, 0.0});
  CHECK(r.converged);
  CHECK(r.f == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.x[0] == doctest::Approx(1.5).epsilon(1e-3));
  CHECK(r.x[1] == doctest::Approx(-0.25).epsilon(1e-3));
}

TEST_CASE("simplex: Rosenbrock") {
  auto f = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  qcorr::SimplexOptions opts;
  opts.max_iters = 5000;
  const auto r = nelder_mead(f, {-1.2, 1.0}, opts);
  CHECK(r.f < 1e-7);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-3);
}

TEST_CASE("simplex: iteration budget is respected") {
  auto f = [](std::span<const double> x) { return std::cos(x[0]) + x[1] * x[1]; };
  qcorr::SimplexOptions opts;
  opts.max_iters = 5;
  const auto r = nelder_mead(f, {0.3, 0.3}, opts);
  CHECK(r.iterations <= 5);
  CHECK_FALSE(r.converged);
}

TEST_CASE("simplex: non-finite values are treated as +inf") {
  auto f = [](std::span<const double> x) { return x[0] < 0 ? NAN : (x[0] - 1) * (x[0] - 1); };
  const auto r = nelder_mead(f, {0.2});
  CHECK(r.f == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("simplex: zero-dimensional input evaluates once") {
  int calls = 0;
  auto f = [&](std::span<const double>) { ++calls; return 4.0; };
  const auto r = nelder_mead(f, {});
  CHECK(calls == 1);
  CHECK(r.f == 4.0);
}
