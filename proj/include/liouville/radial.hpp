#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace liouville::radial {

/// q above this is refused: beta = (2-q)/(1-q) grows without bound as q -> 1.
inline constexpr double kMaxQ = 0.95;

/// Member of the explicit family
///   v_c(r) = c (K c^kappa + r^beta)^(-m),  beta = (2-q)/(1-q),  m = (n-2)/beta,
///   kappa = (2-q)^2 / ((n-2)(1-q)),
/// solving the equation with p on the equality curve p(n-2) + q(n-1) = n + beta.
struct RadialProfile {
  int n;
  double q;
  double p;
  double c;
  double K;
  double beta;
};

double equality_p(int n, double q);

/// Builds the profile, deriving K numerically.
RadialProfile make_profile(int n, double q, double c = 1.0);

struct RadialValues {
  double v;
  double dv;
  double d2v;
  /// NaN at r = 0 when the third derivative is unbounded there (2 < beta < 3).
  double d3v;
};

/// Closed-form value and radial derivatives; r = 0 is handled as the limit.
RadialValues eval_profile(const RadialProfile& profile, double r);

/// v'' + (n-1) v'/r, with the removable singularity at r = 0 taken as a limit.
double laplacian(const RadialProfile& profile, double r);

/// Lap v + v^p |v'|^q for r > 0.
double ode_residual(const RadialProfile& profile, double r);
/// |ode_residual| over the sum of the magnitudes of its three terms.
double ode_residual_relative(const RadialProfile& profile, double r);

struct KDerivation {
  double K;
  /// Sign changes of the one-point residual found on the scan; 1 means the root is isolated.
  int roots_found;
};

/// Solves the r = 1 residual equation for K (c = 1). Throws std::runtime_error if no
/// positive root is found, std::domain_error outside 0 <= q <= kMaxQ.
KDerivation derive_K_report(int n, double q);
double derive_K(int n, double q);

struct ProportionalityFit {
  double S;
  double Q;
  double c;
  /// Largest residual of G11 + c v^-1 |v'|^2 = 0 over the radii used, relative to |v''|.
  double residual;
};

/// Fits S and c in  v'' - S Lap v = -c v^-1 v'^2  by least squares over `radii`.
ProportionalityFit structural_proportionality(const RadialProfile& profile, std::span<const double> radii);
/// Two-radius fit using r and 2r.
ProportionalityFit structural_proportionality(const RadialProfile& profile, double r);

/// Integrates v'' = -(n-1) v'/r - v^p |v'|^q from v(0) = v0 with an adaptive
/// Runge-Kutta-Fehlberg 7(8) stepper. The start uses the leading-order expansion
/// at a small radius. Returns v at each requested radius (ascending, >= 0).
std::vector<double> shoot(int n, double q, double v0, std::span<const double> radii);

/// One row of a fixture table.
struct RadialSample {
  double r;
  double v;
  double dv;
  double d2v;
  double d3v;
};

std::vector<RadialSample> sample_profile(const RadialProfile& profile, std::span<const double> radii);
/// Comma-separated table with header r,v,dv,d2v,d3v and 17 significant digits.
void write_fixture(std::ostream& out, const RadialProfile& profile, std::span<const double> radii);
/// Reads a table written by write_fixture; returns the (n, q, p, c, K) header values too.
struct Fixture {
  RadialProfile profile;
  std::vector<RadialSample> rows;
};
Fixture read_fixture(std::istream& in);

std::vector<double> log_spaced(double lo, double hi, int count);

} // namespace liouville::radial
