#include <doctest.h>

#include <cmath>
#include <random>

#include "liouville/certify.hpp"
#include "liouville/coeffs.hpp"
#include "liouville/regions.hpp"
#include "liouville/young.hpp"

using namespace liouville;
using namespace liouville::young;

TEST_CASE("B with alpha = 0 at p = 1") {
  for (double gamma : {-1.0, 0.0, 0.7}) {
    for (double q : {0.0, 0.5, 1.5}) {
      const double expect = (gamma + 4) * (gamma + 2) / (gamma + 4 + gamma + 2 * q);
      CHECK(compute_B(5, q, gamma, 0.0, 1.0).B == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("determinant identity and exponent ratios") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double q = 1.9 * unit(rng);
    const double gamma = -1 + 3 * unit(rng);
    const double alpha = -1 + 3 * unit(rng);
    const double p = 0.2 + 3 * unit(rng);
    const auto parts = compute_B(6, q, gamma, alpha, p);
    CHECK(parts.determinant + (gamma + 2 * q) * (alpha + gamma + 2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    try {
      const auto y = young_exponents(6, q, gamma, alpha, p);
      CHECK(y.inv_p1 + y.inv_q1 + y.inv_sigma1 == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(y.p1 == doctest::Approx((gamma + 4) / y.B).epsilon(1e-12));
      CHECK(y.q1 == doctest::Approx((gamma + 2 * q) / (gamma + 2 - y.B)).epsilon(1e-10));
      CHECK(y.A == doctest::Approx((alpha - 2) * y.B / (gamma + 4)).epsilon(1e-12));
      CHECK(G_of_p(6, q, gamma, alpha, p) == doctest::Approx(y.inv_p1 + y.inv_q1).epsilon(1e-12));
      CHECK(G_of_p(6, q, gamma, alpha, 1 - q) == doctest::Approx(1.0).epsilon(1e-12));
      // B > gamma + 2 exactly when (gamma + 2q)(gamma + 2 + alpha) < 0, for cp + d > 0.
      if (parts.c * p + parts.d > 0 && p > 1 - q) {
        CHECK((y.B > gamma + 2) == ((gamma + 2 * q) * (gamma + 2 + alpha) < 0));
      }
    } catch (const coeffs::DegenerateDenominator&) {
    }
  }
}

TEST_CASE("window at p = 1 - q is closed on the upper side") {
  const int n = 6;
  const double q = 0.1;
  const double gamma = coeffs::gamma_lowq(n, q, 0.0);
  const double alpha = 0.3;
  const auto y = young_exponents(n, q, gamma, alpha, 1 - q);
  const auto w = window_check(y, n);
  CHECK_FALSE(w.upper_ok);
  CHECK(std::abs(w.upper_margin) < 1e-12);
}

TEST_CASE("low-q certificates open the whole window") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const int n = 3 + k % 6;
    const double q = unit(rng) / (n - 1);
    const double p = 1 - q + 1e-3 + (regions::p_star(n, q) - 2e-3 - (1 - q)) * unit(rng);
    const auto c = certify::certify_lowq(ProblemPoint(n, p, q));
    CHECK(window_check(c.young, n).all());
  }
  const auto ref = certify::certify_lowq(ProblemPoint(6, 1.5, 0.1));
  CHECK(ref.young.p1 > 0);
  CHECK(ref.young.q1 > 0);
  CHECK(window_check(ref.young, 6).all());
}

TEST_CASE("B decreases and meets the window at p_star") {
  for (int n = 3; n <= 8; ++n) {
    for (int j = 1; j <= 5; ++j) {
      const double q = j / (5.0 * (n - 1));
      const double gamma = (n - 1) * q * q - (n + 1) * q;
      const double alpha = -(n - 1.0) / (n - 2.0) * (gamma + 2.0 / (n - 1));
      const double ps = regions::p_star(n, q);
      double prev = compute_B(n, q, gamma, alpha, 1 - q).B;
      for (int k = 1; k <= 1000; ++k) {
        const double b = compute_B(n, q, gamma, alpha, 1 - q + (ps - 1 + q) * k / 1000.0).B;
        CHECK(b < prev);
        prev = b;
      }
      const double closed =
          (gamma + 4) / (2 - q) * (1 - q) * (n + 1 - (2.0 * n - 2) * q) / (n + 1 - (n - 1.0) * q);
      CHECK(prev == doctest::Approx(closed).epsilon(1e-10));
      CHECK(prev >= (gamma + 4) / (n * (2 - q)) * (n - (n - 1.0) * q) * (1 - q) - 1e-12);
    }
  }
}

TEST_CASE("high-q positivity chain") {
  for (int n = 3; n <= 12; ++n) {
    const double lo = 1.0 / (n - 1);
    const double hi = regions::thm2_q_upper(n);
    for (int j = 1; j < 100; ++j) {
      const double q = lo + (hi - lo) * j / 100.0;
      const double gamma = coeffs::gamma_highq(n, q);
      const double p2 = regions::root_p2(n, q);
      const double a2 = coeffs::alpha2(n, q, p2);
      CHECK(a2 + gamma + q > 0);
      for (double p : {1 - q + 1e-6, 1 - q + 0.5, p2}) {
        if (p <= 0) continue;
        const auto parts = compute_B(n, q, gamma, a2, p);
        CHECK(parts.c * p + parts.d > (2 - q) * (a2 + gamma + 2));
        CHECK((2 - q) * (a2 + gamma + 2) > 0);
      }
      if (q >= 1) {
        for (double p : {0.05, 0.5, 2.0, p2}) {
          try {
            CHECK(window_check(young_exponents(n, q, gamma, a2, p), n).lower_ok);
          } catch (const coeffs::DegenerateDenominator&) {
          }
        }
      }
      const double g1 = G_of_p(n, q, gamma, a2, 1 - q + 0.1);
      const double g2 = G_of_p(n, q, gamma, a2, 1 - q + 0.2);
      CHECK(g2 < g1);
    }
  }
}
