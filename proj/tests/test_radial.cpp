#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "liouville/radial.hpp"

using namespace liouville::radial;

TEST_CASE("q = 0 reproduces the classical bubble") {
  for (int n = 3; n <= 8; ++n) {
    const auto prof = make_profile(n, 0.0, 0.7);
    CHECK(prof.p == doctest::Approx((n + 2.0) / (n - 2.0)));
    CHECK(prof.K == doctest::Approx(1.0 / (n * (n - 2.0))).epsilon(1e-12));
    // Match lambda^2 = K c^kappa and compare with [lambda sqrt(n(n-2)) / (lambda^2 + r^2)]^((n-2)/2).
    const double kappa = 4.0 / (n - 2);
    const double lambda = std::sqrt(prof.K * std::pow(prof.c, kappa));
    for (double r : log_spaced(1e-3, 1e3, 50)) {
      const double bubble = std::pow(lambda * std::sqrt(n * (n - 2.0)) / (lambda * lambda + r * r), (n - 2) / 2.0);
      CHECK(eval_profile(prof, r).v == doctest::Approx(bubble).epsilon(1e-8));
    }
  }
}

TEST_CASE("derived K matches the closed form and is isolated") {
  for (int n = 3; n <= 8; ++n) {
    for (double q : {0.0, 0.25, 0.5, 0.75, 0.9}) {
      const auto rep = derive_K_report(n, q);
      const double beta = (2 - q) / (1 - q);
      CHECK(rep.roots_found == 1);
      CHECK(rep.K == doctest::Approx(std::pow(n - 2.0, q - 1) / (beta + n - 2)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(derive_K(5, 0.97), std::domain_error);
}

TEST_CASE("ODE residual and its sensitivity to K") {
  const auto radii = log_spaced(1e-3, 1e3, 100);
  for (int n : {3, 5, 8}) {
    for (double q : {0.0, 0.3, 0.6, 0.9}) {
      auto prof = make_profile(n, q);
      for (double r : radii) CHECK(ode_residual_relative(prof, r) <= 1e-8);
      prof.K *= 1.01;
      double worst = 0;
      for (double r : radii) worst = std::max(worst, ode_residual_relative(prof, r));
      CHECK(worst > 1e-4);
    }
  }
  const auto prof = make_profile(4, 0.5);
  CHECK(std::abs(ode_residual(prof, 1e6)) < 1e-20);
}

TEST_CASE("one K serves the whole family") {
  for (int n : {3, 6}) {
    for (double q : {0.0, 0.5}) {
      for (double c : log_spaced(1e-2, 1e2, 10)) {
        const auto prof = make_profile(n, q, c);
        for (double r : log_spaced(1e-2, 1e2, 30)) CHECK(ode_residual_relative(prof, r) <= 1e-8);
      }
    }
  }
}

TEST_CASE("structural proportionality") {
  for (int n : {3, 4, 7}) {
    for (double q : {0.0, 0.4, 0.8}) {
      const auto prof = make_profile(n, q);
      const auto radii = log_spaced(1e-2, 1e2, 100);
      const auto fit = structural_proportionality(prof, radii);
      CHECK(fit.S == doctest::Approx(1.0 / (n - (n - 1) * q)).epsilon(1e-10));
      CHECK(fit.Q == doctest::Approx((1 - fit.S) / (n - 1)).epsilon(1e-10));
      double mean = 0, sq = 0;
      std::vector<double> cs;
      // v'' and S Lap v cancel to relative order r^beta near the origin, so c is read off
      // away from it.
      for (double r : log_spaced(0.5, 1e3, 100)) {
        const auto v = eval_profile(prof, r);
        cs.push_back(-(v.d2v - fit.S * laplacian(prof, r)) * v.v / (v.dv * v.dv));
      }
      CHECK(structural_proportionality(prof, 1.0).S == doctest::Approx(fit.S).epsilon(1e-6));
      for (double c : cs) mean += c / cs.size();
      for (double c : cs) sq += (c - mean) * (c - mean) / cs.size();
      CHECK(std::sqrt(sq) < 1e-9 * std::abs(mean));
      CHECK(mean == doctest::Approx(-(n - 1.0) / (n - 2.0)).epsilon(1e-9));
      CHECK(fit.c == doctest::Approx(mean).epsilon(1e-6));
      if (q == 0.0) CHECK(fit.S == doctest::Approx(1.0 / n));
    }
  }
}

TEST_CASE("shooting oracle") {
  for (int n = 3; n <= 8; ++n) {
    for (double q : {0.0, 0.5, 0.9}) {
      const auto prof = make_profile(n, q);
      const std::vector<double> radii{0.0, 0.1, 0.5, 1.0, 3.0, 10.0};
      const auto shot = shoot(n, q, eval_profile(prof, 0.0).v, radii);
      for (std::size_t k = 0; k < radii.size(); ++k) {
        CHECK(shot[k] == doctest::Approx(eval_profile(prof, radii[k]).v).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("origin limits") {
  const auto prof = make_profile(5, 0.0);
  const auto at0 = eval_profile(prof, 0.0);
  CHECK(at0.dv == 0.0);
  CHECK(laplacian(prof, 0.0) == doctest::Approx(laplacian(prof, 1e-7)).epsilon(1e-6));
  const auto mid = make_profile(5, 0.4);  // beta = 8/3
  CHECK(std::isnan(eval_profile(mid, 0.0).d3v));
}

TEST_CASE("fixture round trip") {
  const auto prof = make_profile(6, 0.3, 2.0);
  std::stringstream s;
  write_fixture(s, prof, log_spaced(1e-2, 1e2, 25));
  const auto fx = read_fixture(s);
  CHECK(fx.profile.n == 6);
  CHECK(fx.profile.q == prof.q);
  CHECK(fx.profile.K == prof.K);
  CHECK(fx.profile.c == prof.c);
  REQUIRE(fx.rows.size() == 25);
  const auto again = sample_profile(prof, log_spaced(1e-2, 1e2, 25));
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(fx.rows[i].r == again[i].r);
    CHECK(fx.rows[i].v == again[i].v);
    CHECK(fx.rows[i].d2v == again[i].d2v);
  }
  std::istringstream bad("r,v\n1,2\n");
  CHECK_THROWS(read_fixture(bad));
}
