#include "liouville/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/problem.hpp"
#include "liouville/quadratic.hpp"

namespace liouville::coeffs {

DegenerateDenominator::DegenerateDenominator(const std::string& which, double value)
    : std::domain_error("vanishing denominator " + which + " = " + std::to_string(value)),
      which_(which),
      value_(value) {}

namespace {

void guard(const char* which, double value) {
  if (!(std::abs(value) >= kDenominatorGuard)) throw DegenerateDenominator(which, value);
}

} // namespace

StructuralPair structural_SQ(int n, double q) {
  require_dimension(n);
  const double denom = n - (n - 1) * q;
  guard("n - (n-1) q", denom);
  const double S = 1.0 / denom;
  return {S, (1.0 - S) / (n - 1)};
}

double structural_defect(int n, double S, double Q) { return (n - 1) * Q + S - 1.0; }

CoefficientSet coefficient_set(int n, double p, double q, const ParamChoice& params) {
  require_dimension(n);
  const double g = params.gamma;
  const double S = params.S;
  const double Q = params.Q;
  const double a = params.alpha;

  CoefficientSet c;
  c.D = 1.0 - S * S + g * S - g * S * S - (n - 1) * Q * Q;
  c.E = 1.0 + g * S + q * S;
  c.T = 1.0 + g * S + 2.0 * S;
  guard("D", c.D);
  guard("T", c.T);

  c.a1 = c.E / c.D;
  c.a2 = c.a1 * (1.0 + g);
  c.a4 = c.a1 * (2.0 + g);
  c.a3 = -(a + p) * (a - 1.0) / c.T + c.a1 * a * (a - 1.0) * (1.0 - S) / c.T;
  c.b1 = c.a1 * a * (g + 3.0) / c.T - (a + p) * (g + 2.0) / c.T;
  c.b2 = g + q + c.a1 * (2.0 * g * S - g + 2.0 * S - 2.0 * Q);
  return c;
}

std::vector<double> b2_quadratic_in_S(int n, double q, double gamma) {
  require_dimension(n);
  const double g = gamma;
  const double k = 1.0 / (n - 1);
  // D(S) with Q = (1 - S)/(n-1).
  const double d0 = 1.0 - k;
  const double d1 = g + 2.0 * k;
  const double d2 = -1.0 - g - k;
  // (1 + (g+q) S) * ((-g - 2k) + (2g + 2 + 2k) S).
  const double f0 = -g - 2.0 * k;
  const double f1 = 2.0 * g + 2.0 + 2.0 * k;
  const double e0 = f0;
  const double e1 = f1 + (g + q) * f0;
  const double e2 = (g + q) * f1;
  return {(g + q) * d0 + e0, (g + q) * d1 + e1, (g + q) * d2 + e2};
}

std::vector<double> solve_b2_for_S(int n, double q, double gamma) {
  const auto c = b2_quadratic_in_S(n, q, gamma);
  const double scale = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
  if (scale <= 1e-13) {
    // At gamma = (n-1)q^2 - (n+1)q the quadratic carries the factor (n-1)q - 1, so it
    // vanishes identically at q = 1/(n-1); report the roots of the reduced quadratic.
    const double g0 = (n - 1) * q * q - (n + 1) * q;
    const double w = n - (n - 1) * q;
    if (std::abs(gamma - g0) <= 1e-12 && q > 0.0) return {1.0 / w, (2.0 - q) / (q * w)};
    throw std::domain_error("b2 = 0 has no isolated S root (degenerate expression)");
  }
  if (std::abs(c[2]) <= 1e-14 * scale) {
    if (std::abs(c[1]) <= 1e-14 * scale) throw std::domain_error("b2 = 0 has no S root");
    return {-c[0] / c[1]};
  }
  const auto roots = real_roots(c[2], c[1], c[0]);
  if (!roots) throw std::domain_error("b2 = 0 has no real S root");
  return {roots->first, roots->second};
}

double track_b2_root(int n, double q, double gamma, double reference) {
  const auto roots = solve_b2_for_S(n, q, gamma);
  return *std::min_element(roots.begin(), roots.end(), [reference](double x, double y) {
    return std::abs(x - reference) < std::abs(y - reference);
  });
}

double gamma_lowq(int n, double q, double eps1) {
  require_dimension(n);
  if (q < 0.0 || q > 1.0 / (n - 1) + 1e-15) {
    throw std::domain_error("gamma_lowq requires 0 <= q <= 1/(n-1)");
  }
  if (eps1 < 0.0) throw std::invalid_argument("eps1 must be >= 0");
  const double gamma = (n - 1) * q * q - (n + 1) * q + eps1;
  // The quadratic attains -n/(n-1) at q = 1/(n-1); allow rounding at the endpoint.
  if (gamma < -static_cast<double>(n) / (n - 1) + eps1 - 1e-12) {
    throw std::logic_error("gamma_lowq lower bound violated");
  }
  return gamma;
}

double gamma_highq(int n, double q) {
  require_dimension(n);
  if (q <= 1.0 / (n - 1) || q >= 2.0) {
    throw std::domain_error("gamma_highq requires 1/(n-1) < q < 2");
  }
  return (n - 2) * q - 2.0;
}

double alpha1(int n, double gamma, double S, double p_minus_P, const CoefficientSet& coeffs) {
  const double aT = coeffs.a1 * coeffs.T;
  guard("a1 T", aT);
  const double m = 2.0 / (n - 1) + gamma;
  const double c1 = -p_minus_P / aT * m;
  const double c2 = (coeffs.a1 * (1.0 - S) - 1.0) / aT * m;
  guard("1 - C2", 1.0 - c2);
  return c1 / (1.0 - c2);
}

double alpha2_denominator(int n, double q) {
  const double r = (n - 1.0) / (n - 2.0);
  return q * q - 2.0 * q * r + 4.0 / (n - 2.0) + r * r;
}

double alpha2(int n, double q, double p_minus_P) {
  require_dimension(n);
  const double x = p_minus_P;
  const double nd = n;
  const double numer = -(nd - 1.0) * x * q - 2.0 * (nd - 1.0) / (nd - 2.0) * q + 2.0 * x + 2.0 / (nd - 2.0) +
                       (nd - 2.0) * x * q * q;
  return numer / alpha2_denominator(n, q);
}

double shifted_b1(const CoefficientSet& coeffs, const ParamChoice& params) {
  return coeffs.b1 + params.P * (params.gamma + 2.0) / coeffs.T;
}

double shifted_a3(const CoefficientSet& coeffs, const ParamChoice& params) {
  return coeffs.a3 + params.P * (params.alpha - 1.0) / coeffs.T;
}

double discriminant(int n, const CoefficientSet& coeffs, const ParamChoice& params) {
  const double lin = shifted_b1(coeffs, params);
  return 4.0 * (static_cast<double>(n) / (n - 1) + params.gamma) * coeffs.a1 * shifted_a3(coeffs, params) -
         lin * lin;
}

double s_defining(double q, const CoefficientSet& coeffs, double alpha) {
  return (2.0 - q) * coeffs.a3 / (coeffs.a1 * (alpha - 1.0)) + 1.0;
}

double s_closed_form(int n, double q, double p) {
  const double nd = n;
  return -(nd - 1.0) * (2.0 - q) * (1.0 - q) * p / (2.0 + nd - 2.0 * nd * q + (nd - 1.0) * q * q) + 1.0;
}

double lowq_upper_limit(int n, double gamma, double S, const CoefficientSet& coeffs) {
  const double m = 2.0 / (n - 1) + gamma;
  return (n - 1.0) / (n - 2.0) * (coeffs.a1 * coeffs.T - m * (coeffs.a1 * (1.0 - S) - 1.0));
}

} // namespace liouville::coeffs
