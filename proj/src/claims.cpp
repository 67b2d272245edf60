#include <sstream>

#include "liouville/certify.hpp"
#include "liouville/polynomial.hpp"

namespace liouville::certify {

namespace {

using regions::ChainReport;
using regions::ChainStep;

ChainStep compare(std::string name, const Poly1& lhs, const Poly1& rhs, const char* var) {
  const Poly1 diff = lhs - rhs;
  return {std::move(name), diff.is_zero(), diff.is_zero() ? "" : "difference " + to_string(diff, {var})};
}

ChainStep holds(std::string name, bool ok, std::string detail = {}) { return {std::move(name), ok, std::move(detail)}; }

std::string str(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

} // namespace

ChainReport verify_claim_F(int n, int samples) {
  require_dimension(n);
  ChainReport report;
  const Rational N(n);
  const Rational d = N - 2;
  const Poly1 w = Poly1::variable(0);
  const Poly1 one(1);

  // q = Nw / ((n-2) w) and p2 = P2w / (n-2).
  const Poly1 Nw = Poly1(-d) * w * w + Poly1(N - 1) * w + one;
  const Poly1 P2w = Poly1(N - 1) * w + one;

  // (n-2)^3 w^3 q^k = Nw^k (n-2)^(3-k) w^(3-k); the c_k carry one power of 1/(n-2) each via p2.
  const Rational c2_const = -2 * (N * N - N - 1) / d;
  const Rational c1_const = (N - 1) * (N * N + 4 * N - 11) / (d * d);
  const Rational c0_const = (-2 * N * N - 2 * N + 10) / (d * d);
  const Poly1 c2 = P2w + Poly1(c2_const);                        // (n-2) p2 + const
  const Poly1 c1 = Poly1(-(N - 1) / d) * P2w + Poly1(c1_const);  // -(n-1) p2 + const
  const Poly1 c0 = Poly1(Rational(2) / d) * P2w + Poly1(c0_const);
  const Poly1 lhs = Poly1(N - 1) * Nw.pow(3) + c2 * Nw.pow(2) * Poly1(d) * w + c1 * Nw * Poly1(d * d) * w * w +
                    c0 * Poly1(d * d * d) * w.pow(3);

  const Poly1 f1 = w + one;
  const Poly1 f2 = Poly1(-d) * w + Poly1(N - 1);
  const Poly1 f3 = Poly1(d) * w * w + one;
  const Poly1 f4 = Poly1(d) * w + one;
  const Poly1 product = f1 * f2 * f3 * f4;
  report.steps.push_back(compare("(n-2)^3 w^3 F equals the four-factor product", lhs, product, "w"));

  // H(p2(w), q(w)) = 0: multiply (n-2)^2 H by (n-2) w to clear denominators.
  const Poly1 h = w * P2w * P2w + (Poly1(N - 1) * Nw - Poly1(N * N - 3) * w) * P2w / d + w - Poly1(N - 1) * Nw / d;
  report.steps.push_back(compare("w-parametrisation lies on H = 0", h, Poly1(), "w"));

  // The band p2 in (1/(n-2), (n^2-n-1)/(n-2)^2) maps onto w in (0, (n-1)/(n-2)).
  const Rational w_hi = (N - 1) / d;
  report.steps.push_back(holds("p2 at w = 0 is 1/(n-2)", P2w.evaluate({Rational(0)}) / d == 1 / d));
  report.steps.push_back(
      holds("p2 at the upper w end is (n^2-n-1)/(n-2)^2", P2w.evaluate({w_hi}) / d == (N * N - N - 1) / (d * d)));
  report.steps.push_back(holds("q at the upper w end is 1/(n-1)",
                               Nw.evaluate({w_hi}) / (d * w_hi) == 1 / (N - 1),
                               "q = " + str(Nw.evaluate({w_hi}) / (d * w_hi))));

  // Each factor is positive on the open interval: linear factors by their endpoint values,
  // the quadratic because it is 1 plus a square multiple.
  const bool linear_ok = f1.evaluate({Rational(0)}) > 0 && f1.evaluate({w_hi}) > 0 && f2.evaluate({Rational(0)}) > 0 &&
                         f2.evaluate({w_hi}) == 0 && f4.evaluate({Rational(0)}) > 0 && f4.evaluate({w_hi}) > 0;
  report.steps.push_back(holds("linear factors positive on (0, (n-1)/(n-2))", linear_ok));
  report.steps.push_back(holds("(n-2) w^2 + 1 > 0", d > 0));

  bool samples_ok = true;
  std::string worst;
  for (int k = 1; k <= samples; ++k) {
    const Rational x = w_hi * Rational(k, samples + 1);
    const Rational v = product.evaluate({x});
    if (v <= 0 || lhs.evaluate({x}) != v) {
      samples_ok = false;
      worst = "w = " + str(x);
      break;
    }
  }
  report.steps.push_back(holds("F > 0 at sampled rational w", samples_ok, worst));
  return report;
}

ChainReport verify_claim_J(int n) {
  if (n < 4) throw std::invalid_argument("the J analysis needs n >= 4");
  ChainReport report;
  const Rational N(n);
  const Rational d = N - 2;
  const Poly1 q = Poly1::variable(0);
  const Poly1 one(1);

  const Poly1 M = Poly1(d) * q * q - Poly1(N - 1) * q + Poly1(2);
  const Poly1 lin = Poly1(N - 1) * q - Poly1((N * N - 3) / d);
  const Poly1 J = Poly1(4) * (Poly1(N - 1) * q - one) + Poly1(2) * lin * M - M * M;

  report.steps.push_back(holds("J(2) = 0", J.evaluate({Rational(2)}) == 0, "J(2) = " + str(J.evaluate({Rational(2)}))));
  const Rational j1 = J.evaluate({Rational(1)});
  const Rational j1_printed = 4 * (N - Rational(7, 4)) * (N - 4) / d;
  report.steps.push_back(holds("J(1) = 4(n - 7/4)(n - 4)/(n - 2)", j1 == j1_printed, "J(1) = " + str(j1)));

  // The condition, cleared of (n-2)^2 M^2, equals ((n-1) q - 1) J.
  const Poly1 X = Poly1(2 * N - 2) * q - Poly1(2);
  const Poly1 cond = X * X + lin * X * M + (one - Poly1(N - 1) * q) * M * M;
  report.steps.push_back(
      compare("cleared condition equals ((n-1) q - 1) J", cond, (Poly1(N - 1) * q - one) * J, "q"));

  const Poly1 t = Poly1::variable(0);
  const Poly1 K = Poly1(-(d * d)) * t.pow(3) - Poly1(4 * N * N - 20 * N + 24) * t * t -
                  Poly1(5 * N * N - 26 * N + 37) * t - Poly1(2 * (N - 1) * (N - 1) * (N - 3) / d);
  const Poly1 J_shift = J.substitute(0, t + Poly1(2));
  report.steps.push_back(compare("J(t + 2) = t K(t)", J_shift, t * K, "t"));

  const Poly1 Kp = K.derivative(0);
  const Poly1 Kp_printed = Poly1(-3 * d * d) * t * t - Poly1(2 * (4 * N * N - 20 * N + 24)) * t -
                           Poly1(5 * N * N - 26 * N + 37);
  report.steps.push_back(compare("K' as printed", Kp, Kp_printed, "t"));

  const Rational Km1 = K.evaluate({Rational(-1)});
  report.steps.push_back(holds("K(-1) <= 0", Km1 <= 0, "K(-1) = " + str(Km1)));

  if (n <= 7) {
    const Rational b = 4 * N * N - 20 * N + 24;
    const Rational disc = 4 * b * b - 12 * d * d * (5 * N * N - 26 * N + 37);
    report.steps.push_back(holds("discriminant of K' < 0", disc < 0, "discriminant = " + str(disc)));
    report.steps.push_back(holds("K' has negative leading coefficient", -3 * d * d < 0));
  } else {
    const Rational kpm1 = Kp.evaluate({Rational(-1)});
    report.steps.push_back(holds("K'(-1) = -2n - 1", kpm1 == -2 * N - 1, "K'(-1) = " + str(kpm1)));
    // K'' is linear, so its sign on [-1, 0] is decided by the endpoints.
    const Poly1 Kpp = Kp.derivative(0);
    const Rational a = Kpp.evaluate({Rational(-1)});
    const Rational b = Kpp.evaluate({Rational(0)});
    report.steps.push_back(holds("K'' <= 0 on [-1, 0]", a <= 0 && b <= 0, "K''(-1) = " + str(a) + ", K''(0) = " + str(b)));
  }

  // Dense exact sampling of J on (1, 2).
  bool samples_ok = true;
  std::string where;
  const int m = 400;
  for (int k = 1; k < m; ++k) {
    const Rational x = 1 + Rational(k, m);
    if (J.evaluate({x}) <= 0) {
      samples_ok = false;
      where = "q = " + str(x);
      break;
    }
  }
  report.steps.push_back(holds("J > 0 at sampled rational q in (1, 2)", samples_ok, where));
  return report;
}

} // namespace liouville::certify
