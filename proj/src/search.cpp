#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "liouville/certify.hpp"

namespace liouville::certify {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

struct Evaluator {
  int n;
  double p;
  double q;
  double eps;
  int evaluations = 0;

  /// Smallest normalised slack over all strict constraints; S is placed on the b2 branch
  /// nearest to `S_ref`, which follows the search.
  double operator()(const std::array<double, 3>& x, double& S_ref, coeffs::ParamChoice* out = nullptr) {
    ++evaluations;
    coeffs::ParamChoice prm;
    prm.gamma = x[0];
    prm.alpha = x[1];
    prm.P = std::min(0.0, x[2]);
    prm.eps = eps;
    prm.eps1 = 0.0;
    try {
      prm.S = coeffs::track_b2_root(n, q, prm.gamma, S_ref);
      prm.Q = (1.0 - prm.S) / (n - 1);
      const auto c = coeffs::coefficient_set(n, p, q, prm);
      const double lin = coeffs::shifted_b1(c, prm);
      const double delta = coeffs::discriminant(n, c, prm);
      const auto y = young::young_exponents(n, q, prm.gamma, prm.alpha, p);
      const auto w = young::window_check(y, n);
      double m = delta / std::max(1.0, lin * lin) - eps;
      m = std::min({m, w.lower_margin, w.upper_margin, w.positive_margin, c.a1, c.a4});
      if (!std::isfinite(m)) return kNegInf;
      S_ref = prm.S;
      if (out) *out = prm;
      return m;
    } catch (const std::domain_error&) {
      return kNegInf;
    }
  }
};

std::optional<coeffs::ParamChoice> lowq_seed(int n, double p, double q) {
  if (q >= 1.0 - regions::kUnitGuard) return std::nullopt;
  try {
    coeffs::ParamChoice prm;
    prm.gamma = (n - 1) * q * q - (n + 1) * q + coeffs::kDefaultEps1;
    prm.S = coeffs::track_b2_root(n, q, prm.gamma, coeffs::structural_SQ(n, q).S);
    prm.Q = (1.0 - prm.S) / (n - 1);
    const auto base = coeffs::coefficient_set(n, p, q, prm);
    const double x_max = coeffs::lowq_upper_limit(n, prm.gamma, prm.S, base);
    const double x = x_max > p ? 0.5 * (p + x_max) : p;
    prm.alpha = coeffs::alpha1(n, prm.gamma, prm.S, x, base);
    prm.P = p - x;
    return prm;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

std::optional<coeffs::ParamChoice> highq_seed(int n, double p, double q) {
  coeffs::ParamChoice prm;
  prm.gamma = (n - 2) * q - 2.0;
  prm.S = 0.0;
  prm.Q = 1.0 / (n - 1);
  double x = p;
  if (q > 1.0 / (n - 1)) {
    try {
      const double p2 = regions::root_p2(n, q);
      const double lo = std::max(p, 1.0 - q);
      if (p2 > lo) x = p2 - 0.5 * (p2 - lo);
    } catch (const std::domain_error&) {
    }
  }
  prm.alpha = coeffs::alpha2(n, q, x);
  prm.P = p - x;
  return prm;
}

} // namespace

Certificate search_certificate(const ProblemPoint& point, int budget, std::uint64_t seed) {
  const int n = point.n();
  const double p = point.p();
  const double q = point.q();
  Evaluator f{n, p, q, coeffs::kDefaultEps};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, 1.0);

  std::vector<coeffs::ParamChoice> seeds;
  if (auto s = lowq_seed(n, p, q)) seeds.push_back(*s);
  if (auto s = highq_seed(n, p, q)) seeds.push_back(*s);
  {
    coeffs::ParamChoice classical;
    classical.S = 1.0 / n;
    classical.Q = 1.0 / n;
    seeds.push_back(classical);
  }

  // A closed-form seed that already validates is kept as the fallback result.
  std::optional<Certificate> fallback;
  for (auto prm : seeds) {
    prm.eps = coeffs::kDefaultEps;
    Certificate c{point, Regime::Searched, prm, {}, 0.0, {}, {}};
    c.checks = validate_certificate(c);
    if (c.feasible()) {
      fallback = c;
      break;
    }
  }

  std::array<double, 3> best_x{};
  double best_S = 0.0;
  double best_value = kNegInf;
  coeffs::ParamChoice best_params;
  for (const auto& s : seeds) {
    double S_ref = s.S;
    coeffs::ParamChoice prm;
    const std::array<double, 3> x{s.gamma, s.alpha, std::min(0.0, s.P)};
    const double v = f(x, S_ref, &prm);
    if (v > best_value) {
      best_value = v;
      best_x = x;
      best_S = S_ref;
      best_params = prm;
    }
  }

  std::array<double, 3> x = best_x;
  double S_cur = best_S;
  double value = best_value;
  double step = 0.5;
  while (f.evaluations < budget) {
    bool improved = false;
    for (int k = 0; k < 3 && f.evaluations < budget; ++k) {
      double lo = x[k] - step;
      double hi = x[k] + step;
      if (k == 2) hi = std::min(hi, 0.0);
      if (lo >= hi) continue;
      auto at = [&](double t) {
        auto y = x;
        y[k] = t;
        double S_ref = S_cur;
        return f(y, S_ref);
      };
      double a = hi - kGolden * (hi - lo);
      double b = lo + kGolden * (hi - lo);
      double fa = at(a);
      double fb = at(b);
      for (int it = 0; it < 16 && f.evaluations < budget; ++it) {
        if (fa >= fb) {
          hi = b;
          b = a;
          fb = fa;
          a = hi - kGolden * (hi - lo);
          fa = at(a);
        } else {
          lo = a;
          a = b;
          fa = fb;
          b = lo + kGolden * (hi - lo);
          fb = at(b);
        }
      }
      auto y = x;
      y[k] = fa >= fb ? a : b;
      double S_ref = S_cur;
      coeffs::ParamChoice prm;
      const double v = f(y, S_ref, &prm);
      if (v > value) {
        x = y;
        S_cur = S_ref;
        value = v;
        improved = true;
        if (v > best_value) {
          best_value = v;
          best_x = y;
          best_S = S_ref;
          best_params = prm;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < 1e-9) {
        // Restart from a jittered copy of the best point.
        step = 0.5;
        x = best_x;
        for (auto& xi : x) xi += 0.1 * jitter(rng);
        x[2] = std::min(0.0, x[2]);
        S_cur = best_S;
        value = f(x, S_cur);
      }
    }
  }

  if (best_value == kNegInf) {
    best_params = seeds.front();
  }
  best_params.eps = coeffs::kDefaultEps;
  Certificate cert{point, Regime::Searched, best_params, {}, std::numeric_limits<double>::quiet_NaN(), {}, {}};
  try {
    cert.coeffs = coeffs::coefficient_set(n, p, q, best_params);
    cert.delta = coeffs::discriminant(n, cert.coeffs, best_params);
    cert.young = young::young_exponents(n, q, best_params.gamma, best_params.alpha, p);
  } catch (const std::domain_error&) {
  }
  cert.checks = validate_certificate(cert);
  if (!cert.feasible() && fallback) {
    Certificate fb = *fallback;
    fb.coeffs = coeffs::coefficient_set(n, p, q, fb.params);
    fb.delta = coeffs::discriminant(n, fb.coeffs, fb.params);
    fb.young = young::young_exponents(n, q, fb.params.gamma, fb.params.alpha, p);
    return fb;
  }
  return cert;
}

} // namespace liouville::certify
