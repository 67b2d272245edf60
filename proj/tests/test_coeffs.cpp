#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "liouville/coeffs.hpp"
#include "liouville/regions.hpp"

using namespace liouville;
using namespace liouville::coeffs;

namespace {

ParamChoice structural(int n, double q, double eps1, double alpha = 0.0) {
  ParamChoice prm;
  const auto sq = structural_SQ(n, q);
  prm.S = sq.S;
  prm.Q = sq.Q;
  prm.gamma = gamma_lowq(n, q, eps1);
  prm.alpha = alpha;
  prm.eps1 = eps1;
  return prm;
}

bool contains_near(const std::vector<double>& xs, double x, double tol) {
  return std::any_of(xs.begin(), xs.end(), [&](double y) { return std::abs(y - x) < tol; });
}

} // namespace

TEST_CASE("structural S and Q") {
  auto sq = structural_SQ(3, 0.5);
  CHECK(sq.S == doctest::Approx(0.5));
  CHECK(sq.Q == doctest::Approx(0.25));
  sq = structural_SQ(3, 0.0);
  CHECK(sq.S == doctest::Approx(1.0 / 3));
  CHECK(sq.Q == doctest::Approx(1.0 / 3));
  sq = structural_SQ(6, 0.2);
  CHECK(sq.S == doctest::Approx(0.2));
  CHECK(sq.Q == doctest::Approx(4.0 / 25));
  CHECK(std::abs(structural_defect(6, sq.S, sq.Q)) < 1e-15);
}

TEST_CASE("gamma choices") {
  CHECK(gamma_lowq(3, 0.5, 0.0) == doctest::Approx(-1.5));
  CHECK(gamma_lowq(6, 0.0, 0.0) == 0.0);
  CHECK(gamma_lowq(6, 0.1, 1e-3) == doctest::Approx(-0.649));
  CHECK(gamma_highq(4, 1.0) == doctest::Approx(0.0));
  CHECK(gamma_highq(3, 2.0 / 3) == doctest::Approx(-4.0 / 3));
  CHECK(gamma_highq(3, 2.0 / 3) > -1.5);
  CHECK(gamma_highq(6, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("b2 quadratic vanishing identically") {
  for (int n : {3, 5, 8}) {
    const double q = 1.0 / (n - 1);
    const double g0 = (n - 1) * q * q - (n + 1) * q;
    for (double c : b2_quadratic_in_S(n, q, g0)) CHECK(std::abs(c) < 1e-13);
    const auto roots = solve_b2_for_S(n, q, g0);
    const double w = n - (n - 1) * q;
    CHECK(contains_near(roots, 1.0 / w, 1e-12));
    CHECK(contains_near(roots, (2.0 - q) / (q * w), 1e-12));
  }
}

TEST_CASE("b2 roots in S") {
  const double gamma = -1.5;
  const auto roots = solve_b2_for_S(3, 0.5, gamma);
  REQUIRE(!roots.empty());
  CHECK(contains_near(roots, 0.5, 1e-12));
  CHECK(contains_near(roots, 1.5, 1e-12));
  for (double S : roots) {
    ParamChoice prm;
    prm.gamma = gamma;
    prm.S = S;
    prm.Q = (1.0 - S) / 2.0;
    try {
      CHECK(std::abs(coefficient_set(3, 1.0, 0.5, prm).b2) < 1e-10);
    } catch (const DegenerateDenominator&) {
    }
  }

  const auto r6 = solve_b2_for_S(6, 0.1, -0.65);
  CHECK(contains_near(r6, 1.0 / 5.5, 1e-12));
  ParamChoice prm = structural(6, 0.1, 0.0);
  CHECK(std::abs(coefficient_set(6, 1.5, 0.1, prm).b2) < 1e-12);

  const double S0 = 1.0 / 5.5;
  double prev = 1.0;
  for (double e : {1e-2, 1e-3, 1e-4}) {
    const double S = track_b2_root(6, 0.1, gamma_lowq(6, 0.1, e), S0);
    CHECK(std::abs(S - S0) < prev);
    prev = std::abs(S - S0);
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("coefficient relations at structural parameters") {
  for (int n : {3, 5, 8}) {
    const double q = 0.5 / (n - 1);
    const auto prm = structural(n, q, 0.0, 0.3);
    const auto c = coefficient_set(n, 1.7, q, prm);
    CHECK(std::abs(c.b2) < 1e-12);
    CHECK(c.a1 * (1.0 - prm.S) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.a2 == doctest::Approx((1 + prm.gamma) * c.a1));
    CHECK(c.a4 == doctest::Approx((2 + prm.gamma) * c.a1));
  }
}

TEST_CASE("denominator guard") {
  ParamChoice prm;
  prm.gamma = 0.0;
  prm.S = 1.0;
  prm.Q = 0.0;
  // D = 1 - S^2 + gS - gS^2 - (n-1) Q^2 = 0.
  CHECK_THROWS_AS(coefficient_set(4, 1.0, 0.5, prm), DegenerateDenominator);
  try {
    coefficient_set(4, 1.0, 0.5, prm);
  } catch (const DegenerateDenominator& e) {
    CHECK(e.which() == "D");
  }
}

TEST_CASE("alpha1 at the unperturbed structural choice") {
  const int n = 6;
  const double q = 0.1;
  auto prm = structural(n, q, 0.0);
  CHECK(prm.gamma == doctest::Approx(-0.65));
  const auto c = coefficient_set(n, 1.5, q, prm);
  const double x = lowq_upper_limit(n, prm.gamma, prm.S, c);
  CHECK(alpha1(n, prm.gamma, prm.S, x, c) == doctest::Approx(0.3125).epsilon(1e-12));

  double prev = 1.0;
  for (double e : {1e-2, 1e-3, 1e-4}) {
    ParamChoice pe = structural(n, q, e);
    pe.S = track_b2_root(n, q, pe.gamma, prm.S);
    pe.Q = (1.0 - pe.S) / (n - 1);
    const auto ce = coefficient_set(n, 1.5, q, pe);
    const double xe = lowq_upper_limit(n, pe.gamma, pe.S, ce);
    const double diff = std::abs(alpha1(n, pe.gamma, pe.S, xe, ce) - 0.3125);
    CHECK(diff < prev);
    prev = diff;
  }
}

TEST_CASE("discriminant collapses at P = 0 with vanishing linear term") {
  const int n = 5;
  const double q = 0.2;
  auto prm = structural(n, q, 0.0);
  prm.P = 0.0;
  // Choose alpha so b1 = 0: a1 alpha (g+3) = (alpha + p)(g+2).
  const double p = 1.3;
  const auto c0 = coefficient_set(n, p, q, prm);
  prm.alpha = p * (prm.gamma + 2) / (c0.a1 * (prm.gamma + 3) - (prm.gamma + 2));
  const auto c = coefficient_set(n, p, q, prm);
  CHECK(std::abs(c.b1) < 1e-12);
  const double expect = 4.0 * (static_cast<double>(n) / (n - 1) + prm.gamma) * c.a1 * c.a3 - c.b1 * c.b1;
  CHECK(discriminant(n, c, prm) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("low-q discriminant factorisation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const int n = 3 + k % 8;
    const double q = unit(rng) / (n - 1);
    const double p = 0.1 + 3 * unit(rng);
    auto prm = structural(n, q, 0.0);
    const auto c0 = coefficient_set(n, p, q, prm);
    prm.alpha = alpha1(n, prm.gamma, prm.S, p, c0);
    const auto c = coefficient_set(n, p, q, prm);
    const double m = 2.0 / (n - 1) + prm.gamma;
    const double u = -p / (c.a1 * c.T - m * (c.a1 * (1 - prm.S) - 1));
    const double factored = 4 * c.a1 * c.a1 * u * (double(n) / (n - 1) + prm.gamma) * ((2.0 - n) / (n - 1) * u - 1);
    CHECK(discriminant(n, c, prm) == doctest::Approx(factored).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("s closed form is the eps1 -> 0 limit of its defining expression") {
  const int n = 6;
  const double q = 0.1;
  const double p = 1.4;
  double errs[3];
  int i = 0;
  for (double e : {1e-3, 1e-4, 1e-5}) {
    auto prm = structural(n, q, e);
    prm.S = track_b2_root(n, q, prm.gamma, 1.0 / (n - (n - 1) * q));
    prm.Q = (1 - prm.S) / (n - 1);
    const auto c0 = coefficient_set(n, p, q, prm);
    prm.alpha = alpha1(n, prm.gamma, prm.S, p, c0);
    const auto c = coefficient_set(n, p, q, prm);
    errs[i++] = std::abs(s_defining(q, c, prm.alpha) - s_closed_form(n, q, p));
  }
  CHECK(errs[1] <= errs[0] / 9.0);
  CHECK(errs[2] <= errs[1] / 9.0);
  CHECK(errs[2] < 1e-6);
}

TEST_CASE("high-q structural choice") {
  for (int n : {3, 4, 7, 12}) {
    const double q = 0.5 * (1.0 / (n - 1) + regions::thm2_q_upper(n));
    ParamChoice prm;
    prm.gamma = gamma_highq(n, q);
    prm.S = 0.0;
    prm.Q = 1.0 / (n - 1);
    const double x = regions::root_p2(n, q);
    prm.alpha = alpha2(n, q, x);
    const auto c = coefficient_set(n, 1.0, q, prm);
    CHECK(std::abs(c.b2) < 1e-12);
    CHECK(c.a1 == doctest::Approx((n - 1.0) / (n - 2.0)));
    const double r = (n - 1.0) / (n - 2.0);
    CHECK(alpha2_denominator(n, q) == doctest::Approx((q - r) * (q - r) + 4.0 / (n - 2)));
  }
}
