#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "liouville/certify.hpp"
#include "liouville/jets.hpp"
#include "liouville/radial.hpp"
#include "liouville/sweep.hpp"
#include "liouville/young.hpp"

namespace liouville::sweep {

namespace {

/// Accumulates one suite: every case either passes or adds a failure note.
class Suite {
public:
  explicit Suite(std::string name) { r_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    ++r_.cases;
    if (!ok) {
      ++r_.failures;
      if (r_.detail.empty()) r_.detail = what;
    }
  }
  /// Records a normalised residual and checks it against `tol`.
  void residual(double value, double tol, const std::string& what) {
    r_.worst = std::max(r_.worst, std::isfinite(value) ? value : 1e300);
    expect(value <= tol, what);
  }
  SuiteResult done() {
    r_.passed = r_.failures == 0;
    return r_;
  }

private:
  SuiteResult r_;
};

long count(double base, double effort) { return std::max(1L, std::lround(base * effort)); }

std::string at(int n, double p, double q) {
  std::ostringstream s;
  s.precision(17);
  s << "(n=" << n << ", p=" << p << ", q=" << q << ")";
  return s.str();
}

SuiteResult regions_suite(std::mt19937_64& rng, const VerifyOptions& opt) {
  Suite s("regions");
  std::uniform_int_distribution<int> dim(3, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long samples = count(20000, opt.effort);
  for (long k = 0; k < samples; ++k) {
    const int n = dim(rng);
    const double q = 1.0 / (n - 1) + (2.0 - 1.0 / (n - 1)) * unit(rng);
    if (q >= 2.0) continue;
    const double p = std::max(1.0 - q, 0.0) + 8.0 * unit(rng);
    if (p + q <= 1.0 || regions::G_value(n, p, q) >= 0.0) continue;
    const double h = regions::H_value(n, p, q);
    s.expect(h < 0.0, "G < 0 but H >= 0 at " + at(n, p, q));
  }
  const auto chain = regions::verify_compare_chain();
  for (const auto& step : chain.steps) s.expect(step.holds, "comparison chain step failed: " + step.name);
  for (int n = 3; n <= 12; ++n) {
    const double lo = 1.0 / (n - 1);
    double prev = regions::root_p2(n, lo + 1e-9);
    for (int k = 1; k <= 400; ++k) {
      const double q = lo + (2.0 - lo) * k / 401.0;
      const double cur = regions::root_p2(n, q);
      s.expect(cur < prev, "p2 not decreasing at " + at(n, cur, q));
      s.expect(cur > 1.0 / (n - 2), "p2 <= 1/(n-2) at " + at(n, cur, q));
      prev = cur;
      const double h0 = regions::H_value(n, 1.0 / (n - 2), q);
      const double expect = -std::pow(n - 1.0, 2) / std::pow(n - 2.0, 3);
      s.residual(std::abs(h0 - expect) / std::abs(expect), 1e-12, "H(1/(n-2), q) closed form");
    }
  }
  return s.done();
}

SuiteResult coeffs_suite(std::mt19937_64& rng, const VerifyOptions& opt) {
  Suite s("coeffs");
  std::uniform_int_distribution<int> dim(3, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long samples = count(1000, opt.effort);
  for (long k = 0; k < samples; ++k) {
    const int n = dim(rng);
    const double q = unit(rng) / (n - 1);
    const double p = 0.1 + 3.0 * unit(rng);
    coeffs::ParamChoice prm;
    const auto sq = coeffs::structural_SQ(n, q);
    prm.S = sq.S;
    prm.Q = sq.Q;
    prm.gamma = (n - 1) * q * q - (n + 1) * q;
    prm.alpha = -2.0 + 4.0 * unit(rng);
    const auto c = opt.coefficient_set(n, p, q, prm);
    s.residual(std::abs(c.b2), 1e-12, "b2 does not vanish at structural low-q parameters " + at(n, p, q));
    s.residual(std::abs(c.a1 * (1.0 - prm.S) - 1.0), 1e-12, "a1 (1 - S) != 1 at structural S");
    s.residual(std::abs(c.a2 - (1.0 + prm.gamma) * c.a1), 1e-12 * std::max(1.0, std::abs(c.a2)), "a2 != (1+gamma) a1");
    s.residual(std::abs(c.a4 - (2.0 + prm.gamma) * c.a1), 1e-12 * std::max(1.0, std::abs(c.a4)), "a4 != (2+gamma) a1");

    // With alpha at the fixed point the discriminant factors exactly.
    const double x = p;
    prm.alpha = coeffs::alpha1(n, prm.gamma, prm.S, x, c);
    const auto c2 = opt.coefficient_set(n, p, q, prm);
    const double m = 2.0 / (n - 1) + prm.gamma;
    const double denom = c2.a1 * c2.T - m * (c2.a1 * (1.0 - prm.S) - 1.0);
    const double u = -x / denom;
    const double factored =
        4.0 * c2.a1 * c2.a1 * u * (static_cast<double>(n) / (n - 1) + prm.gamma) * ((2.0 - n) / (n - 1.0) * u - 1.0);
    const double delta = coeffs::discriminant(n, c2, prm);
    s.residual(std::abs(delta - factored) / std::max(1.0, std::abs(factored)), 1e-9,
               "low-q discriminant does not factor at " + at(n, p, q));

    const double qh = 1.0 / (n - 1) + (2.0 - 1.0 / (n - 1)) * unit(rng);
    if (qh < 2.0) {
      coeffs::ParamChoice hp;
      hp.gamma = coeffs::gamma_highq(n, qh);
      hp.S = 0.0;
      hp.Q = 1.0 / (n - 1);
      hp.alpha = coeffs::alpha2(n, qh, p);
      const auto ch = opt.coefficient_set(n, p, qh, hp);
      s.residual(std::abs(ch.b2), 1e-12, "b2 does not vanish at high-q parameters " + at(n, p, qh));
      s.residual(std::abs(ch.a1 - (n - 1.0) / (n - 2.0)), 1e-12, "high-q a1 != (n-1)/(n-2)");
    }
  }
  return s.done();
}

SuiteResult certify_suite(std::mt19937_64& rng, const VerifyOptions& opt) {
  Suite s("certify");
  std::uniform_int_distribution<int> low_dim(3, 8);
  std::uniform_int_distribution<int> high_dim(3, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long samples = count(300, opt.effort);
  for (long k = 0; k < samples; ++k) {
    const int n = low_dim(rng);
    const double q = std::max(1e-9, unit(rng) / (n - 1));
    const double lo = 1.0 - q + 1e-3;
    const double hi = regions::p_star(n, q) - 1e-3;
    const double p = lo + (hi - lo) * unit(rng);
    const auto cert = certify::certify_lowq(ProblemPoint(n, p, q));
    s.expect(cert.feasible(), "low-q certificate infeasible at " + at(n, p, q));
  }
  long done = 0;
  while (done < samples) {
    const int n = high_dim(rng);
    const double q = 1.0 / (n - 1) + (regions::thm2_q_upper(n) - 1.0 / (n - 1)) * unit(rng);
    if (q <= 1.0 / (n - 1) || q >= regions::thm2_q_upper(n)) continue;
    const double p = regions::root_p2(n, q) * unit(rng);
    if (p + q <= 1.0 || regions::H_value(n, p, q) >= -1e-3) continue;
    ++done;
    const auto cert = certify::certify_highq(ProblemPoint(n, p, q));
    s.expect(cert.feasible(), "high-q certificate infeasible at " + at(n, p, q));
  }
  for (int n = 3; n <= 12; ++n) {
    for (const auto& step : certify::verify_claim_F(n).steps) {
      s.expect(step.holds, "F claim, n=" + std::to_string(n) + ": " + step.name);
    }
  }
  for (int n = 4; n <= 12; ++n) {
    for (const auto& step : certify::verify_claim_J(n).steps) {
      s.expect(step.holds, "J claim, n=" + std::to_string(n) + ": " + step.name);
    }
  }
  return s.done();
}

SuiteResult young_suite(std::mt19937_64& rng, const VerifyOptions& opt) {
  Suite s("young");
  std::uniform_int_distribution<int> dim(3, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long samples = count(1000, opt.effort);
  for (long k = 0; k < samples; ++k) {
    const int n = dim(rng);
    const double q = 1.9 * unit(rng);
    const double gamma = -1.0 + 3.0 * unit(rng);
    const double alpha = -1.0 + 3.0 * unit(rng);
    try {
      const double g = young::G_of_p(n, q, gamma, alpha, 1.0 - q);
      s.residual(std::abs(g - 1.0), 1e-12, "G(1 - q) != 1");
      const double p = 0.2 + 3.0 * unit(rng);
      const auto y = young::young_exponents(n, q, gamma, alpha, p);
      s.residual(std::abs(y.inv_p1 + y.inv_q1 + y.inv_sigma1 - 1.0), 1e-12, "triple identity");
      s.residual(std::abs(young::G_of_p(n, q, gamma, alpha, p) - (y.inv_p1 + y.inv_q1)) /
                     std::max(1.0, std::abs(y.inv_p1 + y.inv_q1)),
                 1e-12, "closed-form G disagrees with 1/p1 + 1/q1");
      const auto parts = young::compute_B(n, q, gamma, alpha, p);
      s.residual(std::abs(parts.determinant + (gamma + 2.0 * q) * (alpha + gamma + 2.0)), 1e-12,
                 "bc - ad identity");
    } catch (const coeffs::DegenerateDenominator&) {
    }
  }
  // At the low-q choice with fixed alpha, B decreases strictly on (1 - q, p_star) and
  // B(p_star) has a closed form bounded below by the window threshold.
  for (int n = 3; n <= 8; ++n) {
    for (int j = 1; j <= 5; ++j) {
      const double q = j / (5.0 * (n - 1));
      const double gamma = (n - 1) * q * q - (n + 1) * q;
      const double alpha = -(n - 1.0) / (n - 2.0) * (gamma + 2.0 / (n - 1));
      const double ps = regions::p_star(n, q);
      double prev = young::compute_B(n, q, gamma, alpha, 1.0 - q).B;
      for (int k = 1; k <= 200; ++k) {
        const double p = (1.0 - q) + (ps - (1.0 - q)) * k / 200.0;
        const double b = young::compute_B(n, q, gamma, alpha, p).B;
        s.expect(b < prev, "B not strictly decreasing at " + at(n, p, q));
        prev = b;
      }
      const double closed = (gamma + 4.0) / (2.0 - q) * (1.0 - q) * (n + 1.0 - (2.0 * n - 2.0) * q) /
                            (n + 1.0 - (n - 1.0) * q);
      s.residual(std::abs(prev - closed) / std::abs(closed), 1e-10, "B(p_star) closed form");
      const double rhs = (gamma + 4.0) / (n * (2.0 - q)) * (n - (n - 1.0) * q) * (1.0 - q);
      s.expect(prev >= rhs - 1e-12, "B(p_star) below the window threshold");
    }
  }
  return s.done();
}

SuiteResult radial_suite(const VerifyOptions& opt) {
  Suite s("radial");
  const auto radii = radial::log_spaced(1e-3, 1e3, static_cast<int>(count(100, opt.effort)) + 1);
  for (int n = 3; n <= 8; ++n) {
    for (int j = 0; j <= 9; ++j) {
      const double q = 0.1 * j;
      const auto prof = radial::make_profile(n, q);
      s.expect(prof.K > 0.0, "K <= 0");
      double worst = 0.0;
      for (double r : radii) {
        worst = std::max(worst, radial::ode_residual_relative(prof, r));
      }
      s.residual(worst, 1e-8, "ODE residual too large for n=" + std::to_string(n) + " q=" + std::to_string(q));
      const auto fit = radial::structural_proportionality(prof, radii);
      s.residual(std::abs(fit.S - 1.0 / (n - (n - 1) * q)), 1e-10, "fitted S disagrees with 1/(n-(n-1)q)");
    }
  }
  for (int n : {3, 5, 8}) {
    for (double q : {0.0, 0.4, 0.8}) {
      const auto prof = radial::make_profile(n, q);
      const auto grid = std::vector<double>{0.0, 0.5, 1.0, 2.0, 5.0, 10.0};
      const auto shot = radial::shoot(n, q, radial::eval_profile(prof, 0.0).v, grid);
      double worst = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double v = radial::eval_profile(prof, grid[k]).v;
        worst = std::max(worst, std::abs(shot[k] - v) / v);
      }
      s.residual(worst, 1e-6, "shooting oracle disagrees with the profile");
    }
  }
  return s.done();
}

SuiteResult jets_suite(std::mt19937_64& rng, const VerifyOptions& opt) {
  Suite s("jets");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long samples = count(1000, opt.effort);
  for (int n : {3, 4, 6, 8}) {
    for (long k = 0; k < samples; ++k) {
      const auto jet = jets::random_jet(n, rng);
      const auto fj = jets::rotate_to_frame(jet);
      const double alpha = -2.0 + 4.0 * unit(rng);
      const double gamma = -1.5 + 3.0 * unit(rng);
      const double S = unit(rng);
      const double Q = (1.0 - S) / (n - 1);
      s.residual(jets::identity_equ111(fj, alpha, gamma, S).relative(), 1e-10, "first identity residual");
      s.residual(jets::identity_constrained(fj, alpha, gamma, S, Q).relative(), 1e-10, "constrained identity residual");

      const double q = 1.9 * unit(rng);
      const double p = 0.1 + 3.0 * unit(rng);
      coeffs::ParamChoice prm;
      prm.gamma = gamma;
      prm.alpha = alpha;
      try {
        const auto sq = coeffs::structural_SQ(n, q);
        prm.S = sq.S;
        prm.Q = sq.Q;
        const auto c = opt.coefficient_set(n, p, q, prm);
        const auto pj = jets::rotate_to_frame(jets::pde_project(jet, p, q));
        s.residual(jets::identity_sec2(pj, p, q, prm, c).relative(), 1e-9, "final identity residual");
      } catch (const coeffs::DegenerateDenominator&) {
      }
    }
  }
  return s.done();
}

} // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.passed; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "seed = " << seed << '\n';
  for (const auto& r : suites) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  cases=" << r.cases << " failures=" << r.failures
        << " worst=" << format_double(r.worst);
    if (!r.detail.empty()) out << "  first failure: " << r.detail;
    out << '\n';
  }
  out << (passed() ? "all suites passed" : "verification failures present") << '\n';
  return out.str();
}

VerifyReport run_verify_all(std::uint64_t seed, const VerifyOptions& opt) {
  VerifyReport report;
  report.seed = seed;
  // Each suite gets its own stream so adding cases to one does not shift the others.
  std::mt19937_64 r1(seed), r2(seed + 1), r3(seed + 2), r4(seed + 3), r5(seed + 4);
  report.suites.push_back(regions_suite(r1, opt));
  report.suites.push_back(coeffs_suite(r2, opt));
  report.suites.push_back(certify_suite(r3, opt));
  report.suites.push_back(young_suite(r4, opt));
  report.suites.push_back(radial_suite(opt));
  report.suites.push_back(jets_suite(r5, opt));
  return report;
}

} // namespace liouville::sweep
