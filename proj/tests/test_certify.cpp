#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <cmath>
#include <random>
#include <stdexcept>

#include "liouville/certify.hpp"
#include "liouville/regions.hpp"

using namespace liouville;
using namespace liouville::certify;

namespace {

bool fails(const Certificate& c, const std::string& check) {
  const auto f = c.failures();
  return std::find(f.begin(), f.end(), check) != f.end();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("low-q certificate at the reference point") {
  const auto c = certify_lowq(ProblemPoint(6, 1.5, 0.1));
  INFO(serialize(c));
  CHECK(c.feasible());
  CHECK(c.delta > 0.0);
  CHECK(c.regime == Regime::LowQ);
  CHECK(c.young.p1 > 0.0);
  CHECK(c.young.q1 > 0.0);

  // The factored form of the discriminant.
  const int n = 6;
  const auto& k = c.coeffs;
  const double m = 2.0 / (n - 1) + c.params.gamma;
  const double u = -c.p_minus_P() / (k.a1 * k.T - m * (k.a1 * (1 - c.params.S) - 1));
  const double factored = 4 * k.a1 * k.a1 * u * (6.0 / 5 + c.params.gamma) * (-4.0 / 5 * u - 1);
  CHECK(c.delta == doctest::Approx(factored).epsilon(1e-9));
}

TEST_CASE("low-q preconditions") {
  const auto above = certify_lowq(ProblemPoint(6, regions::p_star(6, 0.1) + 0.1, 0.1));
  CHECK_FALSE(above.feasible());
  CHECK(fails(above, "below_p_star"));

  CHECK(regions::p_star(3, 0.5) == doctest::Approx(5.0));
  CHECK(certify_lowq(ProblemPoint(3, 2.0, 0.5)).feasible());

  const auto edge = certify_lowq(ProblemPoint(6, 0.9, 0.1));
  CHECK_FALSE(edge.feasible());
  CHECK((fails(edge, "window_upper") || fails(edge, "supercritical")));
}

TEST_CASE("high-q certificates") {
  CHECK(regions::H_value(4, 2.0, 0.5) == doctest::Approx(-9.0 / 8));
  CHECK(certify_highq(ProblemPoint(4, 2.0, 0.5)).feasible());
  CHECK(regions::H_value(6, 1.0, 1.0) == doctest::Approx(-1.0 / 16));
  CHECK(certify_highq(ProblemPoint(6, 1.0, 1.0)).feasible());

  const auto band = certify_highq(ProblemPoint(3, 1.0, 1.5));
  CHECK_FALSE(band.feasible());
  CHECK(fails(band, "regime_band"));

  const auto positive = certify_highq(ProblemPoint(6, 3.5, 1.0));
  CHECK_FALSE(positive.feasible());
  CHECK(fails(positive, "H_negative"));
}

TEST_CASE("high-q boundary degeneracy") {
  for (int n : {4, 6, 9}) {
    for (double q : {0.5, 1.0, 1.5}) {
      const double p2 = regions::root_p2(n, q);
      const auto c = certify_highq(ProblemPoint(n, 1.0, q), coeffs::kDefaultEps, p2);
      const double scale = std::max(1.0, std::pow(coeffs::shifted_b1(c.coeffs, c.params), 2));
      CHECK(std::abs(c.delta) < 1e-8 * scale);
      CHECK(fails(c, "discriminant_margin"));
    }
  }
}

TEST_CASE("tampering with P fails only the sign check") {
  auto c = certify_lowq(ProblemPoint(6, 1.5, 0.1));
  REQUIRE(c.feasible());
  c.params.P = std::abs(c.params.P) + 0.25;
  c.checks = validate_certificate(c);
  const auto f = c.failures();
  REQUIRE(f.size() == 1);
  CHECK(f[0] == "P_nonpositive");
}

TEST_CASE("validation reproduces the stored discriminant") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int n = 3 + k % 6;
    const double q = unit(rng) / (n - 1);
    const double p = 1 - q + 1e-3 + (regions::p_star(n, q) - 2e-3 - (1 - q)) * unit(rng);
    const auto c = certify_lowq(ProblemPoint(n, p, q));
    REQUIRE(c.feasible());
    const auto re = coeffs::coefficient_set(n, p, q, c.params);
    CHECK(coeffs::discriminant(n, re, c.params) == doctest::Approx(c.delta).epsilon(1e-10));
    CHECK(re.a3 == doctest::Approx(c.coeffs.a3).epsilon(1e-12));
  }
}

TEST_CASE("serialization round trip is bit exact") {
  for (const auto& c : {certify_lowq(ProblemPoint(6, 1.5, 0.1)), certify_highq(ProblemPoint(5, 1.2, 1.3)),
                        certify_lowq(ProblemPoint(6, 4.0, 0.1))}) {
    const auto text = serialize(c);
    const auto back = deserialize(text);
    CHECK(serialize(back) == text);
    CHECK(back.problem.n() == c.problem.n());
    CHECK(same_bits(back.problem.p(), c.problem.p()));
    CHECK(same_bits(back.params.alpha, c.params.alpha));
    CHECK(same_bits(back.params.P, c.params.P));
    CHECK(same_bits(back.delta, c.delta));
    CHECK(same_bits(back.young.sigma1, c.young.sigma1));
    CHECK(back.regime == c.regime);
    CHECK(back.feasible() == c.feasible());
    CHECK(back.checks.size() == c.checks.size());
  }
  CHECK_THROWS_AS(deserialize("problem.n = 6\nregime = sideways\n"), std::invalid_argument);
  CHECK_THROWS_AS(deserialize("not a record"), std::invalid_argument);
}

TEST_CASE("search dominates the closed forms and replays") {
  const ProblemPoint pt(6, 1.5, 0.1);
  REQUIRE(certify_lowq(pt).feasible());
  const auto a = search_certificate(pt, 400, 5);
  CHECK(a.feasible());
  const auto b = search_certificate(pt, 400, 5);
  CHECK(serialize(a) == serialize(b));

  const ProblemPoint hi(5, 0.5, 1.3);
  REQUIRE(certify_highq(hi).feasible());
  CHECK(search_certificate(hi, 400, 2).feasible());
}

TEST_CASE("search never claims more than validation allows") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const ProblemPoint pt(6, 0.5 + 3 * unit(rng), 1.9 * unit(rng));
    auto c = search_certificate(pt, 200, k);
    const auto checks = validate_certificate(c);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& x) { return x.satisfied; });
    CHECK(c.feasible() == ok);
  }
}

TEST_CASE("open region stays uncertified") {
  // H > 0 and below the existence curve: no certificate is expected.
  const ProblemPoint pt(6, 1.56, 0.5);
  REQUIRE(regions::H_value(6, 1.56, 0.5) > 0.0);
  REQUIRE(1.56 < regions::p_star(6, 0.5));
  CHECK_FALSE(search_certificate(pt, 400, 1).feasible());
}

TEST_CASE("factorisation claim") {
  for (int n = 3; n <= 12; ++n) {
    const auto r = verify_claim_F(n);
    for (const auto& s : r.steps) {
      INFO("n=" << n << " " << s.name << ": " << s.detail);
      CHECK(s.holds);
    }
  }
}

TEST_CASE("J claim") {
  for (int n = 4; n <= 12; ++n) {
    const auto r = verify_claim_J(n);
    for (const auto& s : r.steps) {
      INFO("n=" << n << " " << s.name << ": " << s.detail);
      CHECK(s.holds);
    }
  }
}

TEST_CASE("claim values quoted in the reports") {
  auto detail = [](const regions::ChainReport& r, const std::string& prefix) {
    for (const auto& s : r.steps) {
      if (s.name.rfind(prefix, 0) == 0) return s.detail;
    }
    return std::string("missing");
  };
  CHECK(detail(verify_claim_J(4), "J(1)") == "J(1) = 0");
  CHECK(detail(verify_claim_J(6), "J(1)") == "J(1) = 17/2");
  CHECK(detail(verify_claim_J(8), "K'(-1)") == "K'(-1) = -17");
}
