#include "liouville/radial.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "liouville/problem.hpp"

namespace liouville::radial {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_band(double q) {
  if (!(q >= 0.0 && q <= kMaxQ)) {
    throw std::domain_error("radial family is evaluated for 0 <= q <= 0.95");
  }
}

double beta_of(double q) { return (2.0 - q) / (1.0 - q); }

double kappa_of(int n, double q) { return (2.0 - q) * (2.0 - q) / ((n - 2) * (1.0 - q)); }

double one_point_residual(int n, double q, double K) {
  const RadialProfile prof{n, q, equality_p(n, q), 1.0, K, beta_of(q)};
  return ode_residual(prof, 1.0);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

double equality_p(int n, double q) {
  require_dimension(n);
  return (n + beta_of(q) - q * (n - 1)) / (n - 2);
}

RadialProfile make_profile(int n, double q, double c) {
  require_dimension(n);
  require_band(q);
  if (!(c > 0.0)) throw std::invalid_argument("family parameter c must be positive");
  return {n, q, equality_p(n, q), c, derive_K(n, q), beta_of(q)};
}

RadialValues eval_profile(const RadialProfile& pr, double r) {
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  const double b = pr.beta;
  const double m = (pr.n - 2) / b;
  const double Kh = pr.K * std::pow(pr.c, kappa_of(pr.n, pr.q));
  const double cm = pr.c * m * b;
  if (r == 0.0) {
    const double v = pr.c * std::pow(Kh, -m);
    double d2 = 0.0;
    double d3 = 0.0;
    if (b == 2.0) {
      d2 = -cm * (b - 1.0) * std::pow(Kh, -m - 1.0);
    } else if (b == 3.0) {
      d3 = -cm * (b - 1.0) * std::pow(Kh, -m - 1.0);
    } else if (b < 3.0) {
      d3 = kNaN;
    }
    return {v, 0.0, d2, d3};
  }
  const double rb = std::pow(r, b);
  const double w = Kh + rb;
  const double h = (b - 1.0) * Kh - (pr.n - 1) * rb;
  const double v = pr.c * std::pow(w, -m);
  const double dv = -cm * std::pow(r, b - 1.0) * std::pow(w, -m - 1.0);
  const double d2v = -cm * std::pow(r, b - 2.0) * std::pow(w, -m - 2.0) * h;
  const double d3v = -cm * ((b - 2.0) * std::pow(r, b - 3.0) * std::pow(w, -m - 2.0) * h -
                            (m + 2.0) * b * std::pow(r, 2.0 * b - 3.0) * std::pow(w, -m - 3.0) * h -
                            (pr.n - 1) * b * std::pow(r, 2.0 * b - 3.0) * std::pow(w, -m - 2.0));
  return {v, dv, d2v, d3v};
}

double laplacian(const RadialProfile& pr, double r) {
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  const double b = pr.beta;
  const double m = (pr.n - 2) / b;
  const double Kh = pr.K * std::pow(pr.c, kappa_of(pr.n, pr.q));
  // v'' + (n-1) v'/r collapses to a single term; its r -> 0 limit is finite.
  const double rb2 = r == 0.0 ? (b == 2.0 ? 1.0 : 0.0) : std::pow(r, b - 2.0);
  const double w = Kh + (r == 0.0 ? 0.0 : std::pow(r, b));
  return -pr.c * m * b * (b + pr.n - 2.0) * Kh * rb2 * std::pow(w, -m - 2.0);
}

double ode_residual(const RadialProfile& pr, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ode_residual needs r > 0");
  const auto v = eval_profile(pr, r);
  return v.d2v + (pr.n - 1) * v.dv / r + std::pow(v.v, pr.p) * std::pow(std::abs(v.dv), pr.q);
}

double ode_residual_relative(const RadialProfile& pr, double r) {
  const auto v = eval_profile(pr, r);
  const double scale =
      std::abs(v.d2v) + (pr.n - 1) * std::abs(v.dv) / r + std::pow(v.v, pr.p) * std::pow(std::abs(v.dv), pr.q);
  return std::abs(ode_residual(pr, r)) / scale;
}

KDerivation derive_K_report(int n, double q) {
  require_dimension(n);
  require_band(q);
  // The residual is positive for small K (source dominates) and negative for large K.
  constexpr int kScan = 97;
  const double lo = -12.0;
  const double hi = 12.0;
  int changes = 0;
  double a = 0.0;
  double b = 0.0;
  double prev_k = std::pow(10.0, lo);
  double prev = one_point_residual(n, q, prev_k);
  for (int i = 1; i < kScan; ++i) {
    const double k = std::pow(10.0, lo + (hi - lo) * i / (kScan - 1));
    const double cur = one_point_residual(n, q, k);
    if ((prev > 0.0) != (cur > 0.0)) {
      if (changes == 0) {
        a = prev_k;
        b = k;
      }
      ++changes;
    }
    prev = cur;
    prev_k = k;
  }
  if (changes == 0) throw std::runtime_error("no positive root of the one-point residual");

  boost::uintmax_t iters = 200;
  const auto f = [n, q](double k) { return one_point_residual(n, q, k); };
  const auto [x0, x1] = boost::math::tools::toms748_solve(f, a, b, boost::math::tools::eps_tolerance<double>(53), iters);
  // Finish with a secant step on the bracket to land on the closest double.
  const double fx0 = f(x0);
  const double fx1 = f(x1);
  double K = std::abs(fx0) <= std::abs(fx1) ? x0 : x1;
  if (fx1 != fx0) {
    const double s = x0 - fx0 * (x1 - x0) / (fx1 - fx0);
    if (s >= std::min(x0, x1) && s <= std::max(x0, x1) && std::abs(f(s)) < std::abs(f(K))) K = s;
  }
  return {K, changes};
}

double derive_K(int n, double q) { return derive_K_report(n, q).K; }

ProportionalityFit structural_proportionality(const RadialProfile& pr, std::span<const double> radii) {
  if (radii.size() < 2) throw std::invalid_argument("need at least two radii");
  // Rows: v'' = S Lap v - c v'^2 / v, each scaled to unit size.
  double m11 = 0, m12 = 0, m22 = 0, r1 = 0, r2 = 0;
  struct Row {
    double x1, x2, y;
  };
  std::vector<Row> rows;
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
    const auto v = eval_profile(pr, r);
    const double lap = laplacian(pr, r);
    const double grad2 = v.dv * v.dv / v.v;
    const double scale = std::max({std::abs(v.d2v), std::abs(lap), grad2});
    Row row{lap / scale, -grad2 / scale, v.d2v / scale};
    m11 += row.x1 * row.x1;
    m12 += row.x1 * row.x2;
    m22 += row.x2 * row.x2;
    r1 += row.x1 * row.y;
    r2 += row.x2 * row.y;
    rows.push_back(row);
  }
  const double det = m11 * m22 - m12 * m12;
  if (det == 0.0) throw std::domain_error("proportionality fit is singular");
  const double S = (r1 * m22 - r2 * m12) / det;
  const double c = (m11 * r2 - m12 * r1) / det;
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, std::abs(S * row.x1 + c * row.x2 - row.y));
  return {S, (1.0 - S) / (pr.n - 1), c, worst};
}

ProportionalityFit structural_proportionality(const RadialProfile& pr, double r) {
  const std::array<double, 2> radii{r, 2.0 * r};
  return structural_proportionality(pr, radii);
}

std::vector<double> shoot(int n, double q, double v0, std::span<const double> radii) {
  require_dimension(n);
  require_band(q);
  if (!(v0 > 0.0)) throw std::invalid_argument("v0 must be positive");
  // Extended precision: rounding at small r survives as a constant offset, which is
  // large relative to the decaying tail.
  using Real = long double;
  using State = std::array<Real, 2>;
  namespace ode = boost::numeric::odeint;

  const Real p = equality_p(n, q);
  const Real b = beta_of(q);
  const Real V0 = v0;
  const Real A = std::pow(std::pow(V0, p) / (b + n - 2), 1 / (1 - Real(q)));
  // Start where the neglected higher-order terms are far below double rounding.
  const Real r0 = std::pow(Real(1e-12) * V0 * b / A, 1 / b);
  auto start = [&](Real r) -> State { return {V0 - A * std::pow(r, b) / b, -A * std::pow(r, b - 1)}; };

  std::vector<double> out(radii.size(), kNaN);
  std::vector<Real> times{r0};
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && radii[i] < radii[i - 1]) throw std::invalid_argument("radii must be ascending");
    if (radii[i] <= r0) {
      out[i] = static_cast<double>(start(radii[i])[0]);
    } else {
      times.push_back(radii[i]);
      slots.push_back(i);
    }
  }
  if (times.size() == 1) return out;

  const Real qq = q;
  auto rhs = [n, p, qq](const State& x, State& dxdr, Real r) {
    dxdr[0] = x[1];
    dxdr[1] = -(n - 1) * x[1] / r - std::pow(std::max(x[0], Real(0)), p) * std::pow(std::abs(x[1]), qq);
  };
  State x = start(r0);
  std::size_t k = 0;
  auto observe = [&](const State& s, Real) {
    if (k > 0) out[slots[k - 1]] = static_cast<double>(s[0]);
    ++k;
  };
  auto stepper = ode::make_controlled(Real(0), Real(1e-17), ode::runge_kutta_fehlberg78<State, Real>());
  ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), r0 / 100, observe);
  return out;
}

std::vector<RadialSample> sample_profile(const RadialProfile& pr, std::span<const double> radii) {
  std::vector<RadialSample> rows;
  rows.reserve(radii.size());
  for (double r : radii) {
    const auto v = eval_profile(pr, r);
    rows.push_back({r, v.v, v.dv, v.d2v, v.d3v});
  }
  return rows;
}

void write_fixture(std::ostream& out, const RadialProfile& pr, std::span<const double> radii) {
  out << "# n=" << pr.n << " q=" << fmt(pr.q) << " p=" << fmt(pr.p) << " c=" << fmt(pr.c) << " K=" << fmt(pr.K)
      << '\n';
  out << "r,v,dv,d2v,d3v\n";
  for (const auto& s : sample_profile(pr, radii)) {
    out << fmt(s.r) << ',' << fmt(s.v) << ',' << fmt(s.dv) << ',' << fmt(s.d2v) << ',' << fmt(s.d3v) << '\n';
  }
}

Fixture read_fixture(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw std::invalid_argument("missing fixture header");
  Fixture fx{{0, 0.0, 0.0, 1.0, 0.0, 0.0}, {}};
  std::istringstream hdr(line.substr(2));
  std::string tok;
  while (hdr >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad header token: " + tok);
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "n") fx.profile.n = std::stoi(val);
    else if (key == "q") fx.profile.q = std::stod(val);
    else if (key == "p") fx.profile.p = std::stod(val);
    else if (key == "c") fx.profile.c = std::stod(val);
    else if (key == "K") fx.profile.K = std::stod(val);
    else throw std::invalid_argument("unknown header key: " + key);
  }
  require_dimension(fx.profile.n);
  fx.profile.beta = beta_of(fx.profile.q);
  if (!std::getline(in, line) || line != "r,v,dv,d2v,d3v") throw std::invalid_argument("missing column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 5> vals{};
    std::istringstream row(line);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      std::string cell;
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("short fixture row: " + line);
      vals[i] = std::stod(cell);
    }
    fx.rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4]});
  }
  return fx;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw std::invalid_argument("log_spaced needs 0 < lo < hi, count >= 2");
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

} // namespace liouville::radial
