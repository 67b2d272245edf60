#include "liouville/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace liouville::certify {

namespace {

constexpr double kEqualityTolerance = 1e-10;
constexpr double kStructuralTolerance = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Check inequality(std::string name, double slack, double margin = young::kStrictMargin) {
  return {std::move(name), slack > margin, slack};
}

Check nonstrict(std::string name, double slack) { return {std::move(name), slack >= 0.0, slack}; }

Check equality(std::string name, double defect, double tol) {
  return {std::move(name), std::abs(defect) <= tol, std::abs(defect)};
}

Check failed(std::string name) { return {std::move(name), false, kNaN}; }

bool in_lowq_band(int n, double q) { return q >= 0.0 && q <= 1.0 / (n - 1) + 1e-15; }

bool in_highq_band(int n, double q) { return q > 1.0 / (n - 1) && q < regions::thm2_q_upper(n); }

Certificate finish(const ProblemPoint& point, Regime regime, const coeffs::ParamChoice& params) {
  Certificate cert{point, regime, params, {}, kNaN, {}, {}};
  try {
    cert.coeffs = coeffs::coefficient_set(point.n(), point.p(), point.q(), params);
    cert.delta = coeffs::discriminant(point.n(), cert.coeffs, params);
  } catch (const std::domain_error&) {
  }
  try {
    cert.young = young::young_exponents(point.n(), point.q(), params.gamma, params.alpha, point.p());
  } catch (const std::domain_error&) {
    const double nan = kNaN;
    cert.young = {nan, nan, nan, nan, nan, nan, nan, nan};
  }
  cert.checks = validate_certificate(cert);
  return cert;
}

} // namespace

std::string_view name(Regime r) {
  switch (r) {
    case Regime::LowQ: return "low_q";
    case Regime::HighQ: return "high_q";
    case Regime::Searched: return "searched";
  }
  return "searched";
}

Regime regime_from_name(std::string_view s) {
  if (s == "low_q") return Regime::LowQ;
  if (s == "high_q") return Regime::HighQ;
  if (s == "searched") return Regime::Searched;
  throw std::invalid_argument("unknown regime: " + std::string(s));
}

bool Certificate::feasible() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.satisfied; });
}

std::vector<std::string> Certificate::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.satisfied) out.push_back(c.name);
  }
  return out;
}

std::vector<Check> validate_certificate(const Certificate& cert) {
  const int n = cert.problem.n();
  const double p = cert.problem.p();
  const double q = cert.problem.q();
  const auto& prm = cert.params;
  std::vector<Check> checks;

  switch (cert.regime) {
    case Regime::LowQ:
      checks.push_back({"regime_band", in_lowq_band(n, q), 1.0 / (n - 1) - q});
      if (q < 1.0 - regions::kUnitGuard) {
        checks.push_back(inequality("below_p_star", regions::p_star(n, q) - p));
      } else {
        checks.push_back(failed("below_p_star"));
      }
      break;
    case Regime::HighQ:
      checks.push_back(
          {"regime_band", in_highq_band(n, q), std::min(q - 1.0 / (n - 1), regions::thm2_q_upper(n) - q)});
      checks.push_back(inequality("H_negative", -regions::H_value(n, p, q)));
      break;
    case Regime::Searched:
      break;
  }

  checks.push_back(inequality("supercritical", p + q - 1.0));
  checks.push_back(equality("structural_constraint", coeffs::structural_defect(n, prm.S, prm.Q), kStructuralTolerance));
  checks.push_back(nonstrict("P_nonpositive", -prm.P));

  coeffs::CoefficientSet c;
  bool have_coeffs = true;
  try {
    c = coeffs::coefficient_set(n, p, q, prm);
    checks.push_back({"denominators", true, std::min(std::abs(c.D), std::abs(c.T))});
  } catch (const coeffs::DegenerateDenominator& e) {
    have_coeffs = false;
    checks.push_back({"denominators", false, e.value()});
  }
  if (have_coeffs) {
    checks.push_back(equality("b2_zero", c.b2, kEqualityTolerance));
    checks.push_back(inequality("a1_positive", c.a1));
    checks.push_back(nonstrict("a4_nonnegative", c.a4));
    const double lin = c.b1 + prm.P * (prm.gamma + 2.0) / c.T;
    const double delta = 4.0 * (static_cast<double>(n) / (n - 1) + prm.gamma) * c.a1 *
                             (c.a3 + prm.P * (prm.alpha - 1.0) / c.T) -
                         lin * lin;
    const double required = prm.eps * std::max(1.0, lin * lin);
    checks.push_back({"discriminant_margin", std::isfinite(delta) && delta >= required && delta > 0.0,
                      delta - required});
  } else {
    for (const char* nm : {"b2_zero", "a1_positive", "a4_nonnegative", "discriminant_margin"}) {
      checks.push_back(failed(nm));
    }
  }

  try {
    const auto y = young::young_exponents(n, q, prm.gamma, prm.alpha, p);
    const auto w = young::window_check(y, n);
    checks.push_back(inequality("p1_positive", y.inv_p1));
    checks.push_back(inequality("q1_positive", y.inv_q1));
    checks.push_back(inequality("sigma1_positive", y.inv_sigma1));
    checks.push_back({"window_lower", w.lower_ok, w.lower_margin});
    checks.push_back({"window_upper", w.upper_ok, w.upper_margin});
  } catch (const coeffs::DegenerateDenominator&) {
    for (const char* nm : {"p1_positive", "q1_positive", "sigma1_positive", "window_lower", "window_upper"}) {
      checks.push_back(failed(nm));
    }
  }
  return checks;
}

Certificate certify_lowq(const ProblemPoint& point, double eps1, double eps) {
  const int n = point.n();
  const double p = point.p();
  const double q = point.q();

  coeffs::ParamChoice prm;
  prm.eps1 = eps1;
  prm.eps = eps;
  if (!in_lowq_band(n, q)) {
    // Keep the record well-formed; the band check reports the violation.
    prm.gamma = (n - 1) * q * q - (n + 1) * q + eps1;
    return finish(point, Regime::LowQ, prm);
  }

  prm.gamma = coeffs::gamma_lowq(n, q, eps1);
  try {
    prm.S = coeffs::track_b2_root(n, q, prm.gamma, coeffs::structural_SQ(n, q).S);
    prm.Q = (1.0 - prm.S) / (n - 1);
    const auto base = coeffs::coefficient_set(n, p, q, prm);
    const double x_max = coeffs::lowq_upper_limit(n, prm.gamma, prm.S, base);
    const double x = x_max > p ? 0.5 * (p + x_max) : p;
    prm.alpha = coeffs::alpha1(n, prm.gamma, prm.S, x, base);
    prm.P = p - x;
  } catch (const std::domain_error&) {
  }
  return finish(point, Regime::LowQ, prm);
}

Certificate certify_highq(const ProblemPoint& point, double eps, std::optional<double> p_minus_P) {
  const int n = point.n();
  const double p = point.p();
  const double q = point.q();

  coeffs::ParamChoice prm;
  prm.eps1 = 0.0;
  prm.eps = eps;
  prm.S = 0.0;
  prm.Q = 1.0 / (n - 1);
  if (!in_highq_band(n, q)) {
    prm.gamma = (n - 2) * q - 2.0;
    return finish(point, Regime::HighQ, prm);
  }
  prm.gamma = coeffs::gamma_highq(n, q);

  double x = p;
  if (p_minus_P) {
    x = *p_minus_P;
  } else {
    try {
      const double p2 = regions::root_p2(n, q);
      const double lo = std::max(p, 1.0 - q);
      x = p2 > lo ? p2 - 0.5 * (p2 - lo) : p;
    } catch (const std::domain_error&) {
    }
  }
  prm.alpha = coeffs::alpha2(n, q, x);
  prm.P = p - x;
  return finish(point, Regime::HighQ, prm);
}

} // namespace liouville::certify
