#include "liouville/regions.hpp"

#include <algorithm>

#include "liouville/polynomial.hpp"

namespace liouville::regions {

namespace {

const std::array<const char*, 3> kNames{"n", "p", "q"};

// All coefficients strictly positive: the polynomial is positive on the closed
// nonnegative orthant of its variables.
bool strictly_positive_coefficients(const Poly3& poly) {
  if (poly.coefficient({0, 0, 0}) <= 0) return false;
  return std::all_of(poly.terms().begin(), poly.terms().end(),
                     [](const auto& term) { return term.second > 0; });
}

ChainStep compare(std::string name, const Poly3& lhs, const Poly3& rhs) {
  const Poly3 diff = lhs - rhs;
  return {std::move(name), diff.is_zero(),
          diff.is_zero() ? "coefficient-exact" : "difference " + to_string(diff, kNames)};
}

ChainStep positive(std::string name, const Poly3& poly) {
  const bool ok = strictly_positive_coefficients(poly);
  return {std::move(name), ok, ok ? "all coefficients positive" : to_string(poly, kNames)};
}

} // namespace

bool ChainReport::all_hold() const {
  return std::all_of(steps.begin(), steps.end(), [](const ChainStep& s) { return s.holds; });
}

ChainReport verify_compare_chain() {
  const Poly3 n = Poly3::variable(0);
  const Poly3 p = Poly3::variable(1);
  const Poly3 q = Poly3::variable(2);
  const Poly3 one(1);

  const Poly3 b = n * (n - one) * q * q - (n * n + n - one) * q - n - Poly3(2);
  const Poly3 lead = (n - one) * (n - one) * q + n - Poly3(2);
  const Poly3 G = lead * p * p + b * p - n * q * q;
  // (n-2)^2 H, cleared of denominators.
  const Poly3 Hs = (n - Poly3(2)) * (n - Poly3(2)) * p * p +
                   ((n - one) * (n - Poly3(2)) * q - (n * n - Poly3(3))) * p + one - (n - one) * q;
  const Poly3 n2sq = (n - Poly3(2)) * (n - Poly3(2));

  // n = m + 3 and q = 1 + s shifts for orthant positivity arguments.
  const Poly3 m_plus_3 = n + Poly3(3);
  const Poly3 s_plus_1 = q + one;

  ChainReport report;

  // Leading coefficient of G is positive for n >= 3, q >= 0, so dividing by it keeps the sign.
  report.steps.push_back(positive("leading coefficient (n-1)^2 q + n - 2 > 0", lead.substitute(0, m_plus_3)));

  // H < G / lead  <=>  linear-in-p expression > 0; the p^2 terms cancel.
  const Poly3 slope_lhs = n2sq * b - lead * ((n - one) * (n - Poly3(2)) * q - n * n + Poly3(3));
  const Poly3 constant_lhs = -(n2sq * n * q * q) - lead * (one - (n - one) * q);
  report.steps.push_back(compare("(n-2)^2 G - lead (n-2)^2 H is linear in p", n2sq * G - lead * Hs,
                                 slope_lhs * p + constant_lhs));

  const Poly3 slope = -(n - one) * (n - Poly3(2)) * q * q + (Poly3(4) * n * n - Poly3(10) * n + Poly3(5)) * q + n -
                      Poly3(2);
  report.steps.push_back(compare("slope reduces to -(n-1)(n-2)q^2 + (4n^2-10n+5)q + n - 2", slope_lhs, slope));
  // The slope is concave in q, so positivity at q = 0 and q = 2 covers [0, 2].
  report.steps.push_back(positive("slope > 0 at q = 0", slope.substitute(2, Poly3(0)).substitute(0, m_plus_3)));
  report.steps.push_back(positive("slope > 0 at q = 2", slope.substitute(2, Poly3(2)).substitute(0, m_plus_3)));

  const Poly3 constant_printed = (n * n - n - one) * q * q - (n - one) * q - n + Poly3(2);
  report.steps.push_back(compare("constant part numerator for 1 <= q < 2", constant_lhs, constant_printed));
  report.steps.push_back(compare("constant part intermediate form", constant_lhs,
                                 -(n * n2sq * q * q) + (n - one).pow(3) * q * q - (n - one).pow(2) * q - n +
                                     Poly3(2) + (n - Poly3(2)) * (n - one) * q));
  report.steps.push_back(positive("constant part > 0 for q >= 1",
                                  constant_printed.substitute(2, s_plus_1).substitute(0, m_plus_3)));

  // Remaining case 1/(n-1) < q < 1 evaluated at p_min = 1 - q.
  const Poly3 one_minus_q = one - q;
  const Poly3 g_side = b * one_minus_q - n * q * q;
  const Poly3 h_side = ((n - one) * (n - Poly3(2)) * q - n * n + Poly3(3)) * one_minus_q + one - (n - one) * q;
  report.steps.push_back(compare("G side at p = 1 - q", g_side,
                                 -(n * (n - one)) * q.pow(3) + (Poly3(2) * n * n - n - one) * q * q -
                                     (n * n - Poly3(3)) * q - n - Poly3(2)));
  report.steps.push_back(compare("H side at p = 1 - q", h_side,
                                 -(n - one) * (n - Poly3(2)) * q * q + (Poly3(2) * n * n - Poly3(4) * n) * q - n * n +
                                     Poly3(4)));
  const Poly3 final_form = (n - one) * (n - Poly3(2)) * (q.pow(3) - Poly3(4) * q * q + Poly3(4) * q);
  report.steps.push_back(compare("reduction to (n-1)(n-2)(q^3 - 4q^2 + 4q)", n2sq * g_side - lead * h_side, final_form));
  report.steps.push_back(
      compare("q^3 - 4q^2 + 4q = q (q - 2)^2", q.pow(3) - Poly3(4) * q * q + Poly3(4) * q, q * (q - Poly3(2)).pow(2)));

  // Consistency: the slope-and-constant form at p = 1 - q equals the final reduction.
  report.steps.push_back(compare("linear form evaluated at p = 1 - q",
                                 (slope_lhs * p + constant_lhs).substitute(1, one_minus_q), final_form));

  // (n-2)^3 H(1/(n-2), q), term by term from the cleared form of H.
  const Poly3 h_at = (n - Poly3(2)) + ((n - one) * (n - Poly3(2)) * q - (n * n - Poly3(3))) +
                     (n - Poly3(2)) * (one - (n - one) * q);
  report.steps.push_back(compare("(n-2)^3 H(1/(n-2), q) = -(n-1)^2", h_at, -((n - one).pow(2))));
  return report;
}

} // namespace liouville::regions
