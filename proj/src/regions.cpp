#include "liouville/regions.hpp"

#include <cmath>
#include <stdexcept>

#include "liouville/quadratic.hpp"

namespace liouville::regions {

namespace {

constexpr std::string_view kRegionNames[] = {
    "subthreshold", "exists_radial", "constant_thm1", "constant_thm2", "constant_G", "open",
};

constexpr std::string_view kCurveNames[] = {"f1", "f2", "f3", "f4", "f5"};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  }
  return out;
}

// H(p, q) written as p^2 + hb p + hc.
std::pair<double, double> h_linear_constant(int n, double q) {
  const double nd = n;
  const double hb = (nd - 1.0) / (nd - 2.0) * q - (nd * nd - 3.0) / ((nd - 2.0) * (nd - 2.0));
  const double hc = (1.0 - (nd - 1.0) * q) / ((nd - 2.0) * (nd - 2.0));
  return {hb, hc};
}

} // namespace

std::string_view name(Region r) { return kRegionNames[static_cast<int>(r)]; }

Region region_from_name(std::string_view s) {
  for (int i = 0; i < 6; ++i) {
    if (kRegionNames[i] == s) return static_cast<Region>(i);
  }
  throw std::invalid_argument("unknown region label: " + std::string(s));
}

int priority(Region r) { return static_cast<int>(r); }

double eval_b(int n, double q) {
  require_dimension(n);
  const double nd = n;
  return nd * (nd - 1.0) * q * q - (nd * nd + nd - 1.0) * q - nd - 2.0;
}

double G_value(int n, double p, double q) {
  const double nd = n;
  return ((nd - 1.0) * (nd - 1.0) * q + nd - 2.0) * p * p + eval_b(n, q) * p - nd * q * q;
}

double H_value(int n, double p, double q) {
  require_dimension(n);
  const auto [hb, hc] = h_linear_constant(n, q);
  return p * p + hb * p + hc;
}

double eval_G(const ProblemPoint& pt) { return G_value(pt.n(), pt.p(), pt.q()); }
double eval_H(const ProblemPoint& pt) { return H_value(pt.n(), pt.p(), pt.q()); }

double p_star(int n, double q) {
  require_dimension(n);
  if (!(q >= 0.0) || q >= 1.0) {
    throw std::domain_error("p_star requires 0 <= q < 1");
  }
  if (1.0 - q < kUnitGuard) {
    throw std::domain_error("p_star is singular at q = 1; q lies inside the guard band");
  }
  const double nd = n;
  return ((nd - 1.0) * q * q - 2.0 * nd * q + nd + 2.0) / ((nd - 2.0) * (1.0 - q));
}

double root_p2(int n, double q) {
  require_dimension(n);
  const double lower = 1.0 / (n - 1);
  if (q < lower - 1e-12 || q > 2.0) {
    throw std::domain_error("root_p2 requires 1/(n-1) < q < 2");
  }
  const auto [hb, hc] = h_linear_constant(n, q);
  const auto roots = real_roots(1.0, hb, hc);
  if (!roots) {
    throw std::domain_error("H(., q) has complex roots");
  }
  return roots->second;
}

double root_pM(int n, double q) {
  require_dimension(n);
  const double nd = n;
  const double lead = (nd - 1.0) * (nd - 1.0) * q + nd - 2.0;
  const auto roots = real_roots(lead, eval_b(n, q), -nd * q * q);
  if (!roots) {
    throw std::domain_error("G(., q) has complex roots");
  }
  return roots->second;
}

double thm2_q_upper(int n) { return n == 3 ? 1.0 : 2.0; }

Region classify(const ProblemPoint& pt) {
  const int n = pt.n();
  const double p = pt.p();
  const double q = pt.q();
  const double tol = kBoundaryTolerance;
  const double q_crit = 1.0 / (n - 1);

  if (p + q <= 1.0 + tol) return Region::Subthreshold;

  const bool low_band = q < 1.0 - tol && 1.0 - q >= kUnitGuard;
  const double threshold = low_band ? p_star(n, q) : 0.0;

  if (low_band && p >= threshold - tol) return Region::ExistsRadial;
  if (low_band && q <= q_crit + tol && p < threshold - tol) return Region::ConstantThm1;
  if (q > q_crit + tol && q < thm2_q_upper(n) - tol && p < root_p2(n, q) - tol) {
    return Region::ConstantThm2;
  }
  if (p < root_pM(n, q) - tol) return Region::ConstantG;
  return Region::Open;
}

std::string_view name(Curve c) { return kCurveNames[static_cast<int>(c)]; }

Curve curve_from_name(std::string_view s) {
  for (int i = 0; i < 5; ++i) {
    if (kCurveNames[i] == s) return static_cast<Curve>(i);
  }
  throw std::invalid_argument("unknown curve id: " + std::string(s));
}

double plot_p_extent(int n) {
  require_dimension(n);
  return 2.0 * (n + 2.0) / (n - 2.0);
}

std::vector<std::pair<double, double>> curve_samples(int n, Curve curve, int resolution) {
  require_dimension(n);
  if (resolution < 2) {
    throw std::invalid_argument("curve resolution must be >= 2");
  }
  std::vector<std::pair<double, double>> out;
  switch (curve) {
    case Curve::F1:
      for (double q : linspace(0.0, 2.0, resolution)) {
        const double p = 1.0 - q;
        if (p >= 0.0) out.emplace_back(q, p);
      }
      break;
    case Curve::F2:
      for (double q : linspace(0.0, 1.0, resolution)) {
        if (1.0 - q < kUnitGuard) continue;
        out.emplace_back(q, p_star(n, q));
      }
      break;
    case Curve::F3:
      for (double q : linspace(0.0, 2.0, resolution)) out.emplace_back(q, root_pM(n, q));
      break;
    case Curve::F4: {
      const double lo = 1.0 / (n - 1);
      for (double q : linspace(lo, 2.0, resolution)) {
        if (q <= lo) continue;
        out.emplace_back(q, root_p2(n, q));
      }
      break;
    }
    case Curve::F5:
      for (double p : linspace(0.0, plot_p_extent(n), resolution)) out.emplace_back(1.0, p);
      break;
  }
  return out;
}

} // namespace liouville::regions
