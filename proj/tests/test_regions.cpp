#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "liouville/problem.hpp"
#include "liouville/regions.hpp"

using namespace liouville;
using namespace liouville::regions;

TEST_CASE("problem point domain") {
  CHECK_THROWS_AS(ProblemPoint(2, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ProblemPoint(3, -0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ProblemPoint(3, 1.0, 2.0), std::invalid_argument);
  CHECK_FALSE(ProblemPoint(6, 0.4, 0.4).supercritical());
  CHECK(ProblemPoint(6, 0.7, 0.4).supercritical());
}

TEST_CASE("b polynomial values") {
  CHECK(eval_b(3, 0.0) == doctest::Approx(-5.0));
  CHECK(eval_b(6, 1.0) == doctest::Approx(-19.0));
  CHECK(eval_b(3, 2.0) == doctest::Approx(-3.0));
}

TEST_CASE("G values") {
  CHECK(std::abs(eval_G(ProblemPoint(3, 5.0, 0.0))) < 1e-12);
  CHECK(eval_G(ProblemPoint(3, 0.0, 0.0)) == 0.0);
  CHECK(eval_G(ProblemPoint(6, 1.0, 1.0)) == doctest::Approx(4.0));
}

TEST_CASE("H values") {
  for (double q : {0.0, 0.3, 1.0, 1.7}) CHECK(eval_H(ProblemPoint(3, 1.0, q)) == doctest::Approx(-4.0));
  CHECK(std::abs(eval_H(ProblemPoint(4, 11.0 / 4.0, 1.0 / 3.0))) < 1e-12);
  CHECK(eval_H(ProblemPoint(4, 0.0, 0.0)) == doctest::Approx(0.25));
  // H(1/(n-2), q) = -(n-1)^2/(n-2)^3 for every q.
  for (int n = 3; n <= 10; ++n) {
    const double expect = -std::pow(n - 1.0, 2) / std::pow(n - 2.0, 3);
    CHECK(H_value(n, 1.0 / (n - 2), 1.3) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("existence threshold") {
  CHECK(p_star(3, 0.0) == doctest::Approx(5.0));
  CHECK(p_star(6, 0.0) == doctest::Approx(2.0));
  CHECK(p_star(5, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(p_star(6, 1.0), std::domain_error);
  CHECK_THROWS_AS(p_star(6, 1.0 - 1e-7), std::domain_error);
}

TEST_CASE("larger roots") {
  CHECK(root_p2(4, 1.0 / 3.0) == doctest::Approx(11.0 / 4.0));
  CHECK(root_p2(3, 1.0) == doctest::Approx(2.0 + std::sqrt(5.0)));
  const double b = 5.0 / 4.0 * 2.0 - 33.0 / 16.0;
  const double c = (1.0 - 10.0) / 16.0;
  CHECK(root_p2(6, 2.0 - 1e-9) == doctest::Approx((-b + std::sqrt(b * b - 4 * c)) / 2).epsilon(1e-8));
  CHECK(root_pM(3, 0.0) == doctest::Approx(5.0));
  CHECK(root_pM(6, 0.0) == doctest::Approx(2.0));
  CHECK(root_pM(3, 1.0) == doctest::Approx((10.0 + std::sqrt(100.0 + 60.0)) / 10.0));
}

TEST_CASE("classification examples") {
  CHECK(classify(ProblemPoint(6, 1.5, 0.1)) == Region::ConstantThm1);
  CHECK(classify(ProblemPoint(6, 0.4, 0.4)) == Region::Subthreshold);
  CHECK(classify(ProblemPoint(6, 3.0, 0.0)) == Region::ExistsRadial);
  CHECK(classify(ProblemPoint(6, 1.0, 1.0)) == Region::ConstantThm2);
  CHECK(region_from_name(name(Region::ConstantG)) == Region::ConstantG);
  CHECK_THROWS_AS(region_from_name("nowhere"), std::invalid_argument);
}

TEST_CASE("G-negative points are H-negative above the critical q") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  long hits = 0;
  for (int k = 0; k < 20000; ++k) {
    const int n = 3 + static_cast<int>(unit(rng) * 8);
    const double q = 1.0 / (n - 1) + (2.0 - 1.0 / (n - 1)) * unit(rng);
    const double p = 6.0 * unit(rng);
    if (q >= 2.0 || p + q <= 1.0 || G_value(n, p, q) >= 0.0) continue;
    ++hits;
    CHECK(H_value(n, p, q) < 0.0);
  }
  CHECK(hits > 1000);
}

TEST_CASE("comparison chain is exact") {
  const auto report = verify_compare_chain();
  for (const auto& s : report.steps) {
    INFO(s.name << ": " << s.detail);
    CHECK(s.holds);
  }
  CHECK(report.all_hold());
}

TEST_CASE("curve samples") {
  const auto f1 = curve_samples(6, Curve::F1, 3);
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].first == 0.0);
  CHECK(f1[0].second == doctest::Approx(1.0));
  CHECK(f1[1].first == doctest::Approx(1.0));
  CHECK(f1[1].second == doctest::Approx(0.0).epsilon(1e-12));
  for (const auto& [q, p] : curve_samples(6, Curve::F3, 200)) CHECK(std::abs(G_value(6, p, q)) < 1e-9);
  for (const auto& [q, p] : curve_samples(6, Curve::F4, 200)) {
    CHECK(std::abs(H_value(6, p, q)) < 1e-9);
    CHECK(q > 1.0 / 5.0);
  }
  for (const auto& [q, p] : curve_samples(6, Curve::F5, 50)) CHECK(q == 1.0);
  for (const auto& [q, p] : curve_samples(6, Curve::F2, 400)) CHECK(std::abs(q - 1.0) >= 1e-6);
  CHECK_THROWS_AS(curve_from_name("f9"), std::invalid_argument);
}
