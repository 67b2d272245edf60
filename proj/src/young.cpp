#include "liouville/young.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/coeffs.hpp"
#include "liouville/problem.hpp"

namespace liouville::young {

namespace {

void guard(const char* which, double value) {
  if (!(std::abs(value) >= coeffs::kDenominatorGuard)) throw coeffs::DegenerateDenominator(which, value);
}

} // namespace

BParts compute_B(int n, double q, double gamma, double alpha, double p) {
  require_dimension(n);
  BParts parts;
  parts.a = gamma + 2.0;
  parts.b = (1.0 - q) * alpha;
  parts.c = gamma + 4.0;
  parts.d = (2.0 - q) * alpha + gamma + 2.0 * q;
  const double denom = parts.c * p + parts.d;
  guard("c p + d", denom);
  parts.B = (gamma + 4.0) * (parts.a * p + parts.b) / denom;
  parts.determinant = parts.b * parts.c - parts.a * parts.d;
  return parts;
}

YoungExponents young_exponents(int n, double q, double gamma, double alpha, double p) {
  const BParts parts = compute_B(n, q, gamma, alpha, p);
  guard("gamma + 4", gamma + 4.0);
  guard("B", parts.B);

  YoungExponents e;
  e.B = parts.B;
  e.A = (alpha - 2.0) * parts.B / (gamma + 4.0);
  e.inv_p1 = parts.B / (gamma + 4.0);
  e.p1 = (gamma + 4.0) / parts.B;
  // gamma + 2q and gamma + 2 - B vanish together at q = 2/n in the high-q regime; the
  // equivalent (alpha - A)/(alpha + 2p) stays finite there.
  if (std::abs(gamma + 2.0 * q) >= 1e-8) {
    guard("gamma + 2 - B", gamma + 2.0 - parts.B);
    e.inv_q1 = (gamma + 2.0 - parts.B) / (gamma + 2.0 * q);
    e.q1 = (gamma + 2.0 * q) / (gamma + 2.0 - parts.B);
  } else {
    guard("alpha + 2p", alpha + 2.0 * p);
    guard("alpha - A", alpha - e.A);
    e.inv_q1 = (alpha - e.A) / (alpha + 2.0 * p);
    e.q1 = (alpha + 2.0 * p) / (alpha - e.A);
  }
  e.inv_sigma1 = 1.0 - e.inv_p1 - e.inv_q1;
  e.sigma1 = 1.0 / e.inv_sigma1;
  return e;
}

WindowCheck window_check(const YoungExponents& exps, int n) {
  require_dimension(n);
  const double sum = exps.inv_p1 + exps.inv_q1;
  WindowCheck w;
  w.lower_margin = sum - (1.0 - 2.0 / n);
  w.upper_margin = 1.0 - sum;
  w.positive_margin = std::min({exps.inv_p1, exps.inv_q1, exps.inv_sigma1});
  w.lower_ok = w.lower_margin > kStrictMargin;
  w.upper_ok = w.upper_margin > kStrictMargin;
  w.positive_ok = w.positive_margin > kStrictMargin && std::isfinite(w.positive_margin);
  return w;
}

double G_of_p(int n, double q, double gamma, double alpha, double p) {
  const BParts parts = compute_B(n, q, gamma, alpha, p);
  guard("gamma + 4", parts.c);
  return 2.0 * (2.0 - q) * (alpha + gamma + 2.0) / (parts.c * parts.c * p + parts.c * parts.d) +
         (gamma + 2.0) / (gamma + 4.0);
}

} // namespace liouville::young
