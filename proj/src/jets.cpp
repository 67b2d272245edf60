#include "liouville/jets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liouville::jets {

Jet3::Jet3(int dim) : n(dim), g(dim, 0.0), hess(dim * dim, 0.0), third(dim * dim * dim, 0.0) {
  if (dim < 1) throw std::invalid_argument("jet dimension must be positive");
}

void Jet3::symmetrize() {
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double m = 0.5 * (h(i, j) + h(j, i));
      h(i, j) = h(j, i) = m;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        const double m = (t(i, j, k) + t(i, k, j) + t(j, i, k) + t(j, k, i) + t(k, i, j) + t(k, j, i)) / 6.0;
        t(i, j, k) = t(i, k, j) = t(j, i, k) = t(j, k, i) = t(k, i, j) = t(k, j, i) = m;
      }
    }
  }
}

double Jet3::grad_norm() const {
  double s = 0.0;
  for (double x : g) s += x * x;
  return std::sqrt(s);
}

double Jet3::laplacian() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += h(i, i);
  return s;
}

double Jet3::hess_norm2() const {
  double s = 0.0;
  for (double x : hess) s += x * x;
  return s;
}

std::vector<double> Jet3::hess_g() const {
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += h(i, j) * g[j];
  }
  return out;
}

double Jet3::hess_gg() const {
  const auto hg = hess_g();
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += g[i] * hg[i];
  return s;
}

std::vector<double> Jet3::laplacian_gradient() const {
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += t(j, j, i);
  }
  return out;
}

Jet3 transform(const Jet3& jet, const std::vector<double>& R) {
  const int n = jet.n;
  if (R.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("rotation has the wrong size");
  auto r = [&](int a, int i) { return R[a * n + i]; };
  Jet3 out(n);
  out.u = jet.u;
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) out.g[a] += r(a, i) * jet.g[i];
  }
  std::vector<double> tmp(n * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) tmp[a * n + j] += r(a, i) * jet.h(i, j);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int j = 0; j < n; ++j) out.h(a, b) += tmp[a * n + j] * r(b, j);
    }
  }
  // Contract one index at a time: n^4 work instead of n^6.
  std::vector<double> t1(n * n * n, 0.0), t2(n * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) t1[(a * n + j) * n + k] += r(a, i) * jet.t(i, j, k);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) t2[(a * n + b) * n + k] += r(b, j) * t1[(a * n + j) * n + k];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int k = 0; k < n; ++k) out.t(a, b, c) += r(c, k) * t2[(a * n + b) * n + k];
  return out;
}

FramedJet rotate_to_frame(const Jet3& jet, FrameCompletion completion) {
  const int n = jet.n;
  const double s = jet.grad_norm();
  if (!(s > 0.0)) throw std::invalid_argument("rotate_to_frame needs a nonzero gradient");
  std::vector<double> e(n);
  for (int i = 0; i < n; ++i) e[i] = jet.g[i] / s;

  std::vector<double> R(n * n, 0.0);
  if (completion == FrameCompletion::Householder) {
    // Reflection exchanging e and e1; the identity when e is already e1.
    std::vector<double> w = e;
    w[0] -= 1.0;
    double w2 = 0.0;
    for (double x : w) w2 += x * x;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        R[i * n + j] = (i == j ? 1.0 : 0.0) - (w2 > 1e-30 ? 2.0 * w[i] * w[j] / w2 : 0.0);
      }
    }
  } else {
    // e first, then the coordinate axes in order, skipping the one most aligned with e.
    int skip = 0;
    for (int k = 1; k < n; ++k) {
      if (std::abs(e[k]) > std::abs(e[skip])) skip = k;
    }
    std::vector<std::vector<double>> basis{e};
    for (int k = 0; k < n; ++k) {
      if (k == skip) continue;
      std::vector<double> v(n, 0.0);
      v[k] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          double d = 0.0;
          for (int i = 0; i < n; ++i) d += b[i] * v[i];
          for (int i = 0; i < n; ++i) v[i] -= d * b[i];
        }
      }
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : v) x /= norm;
      basis.push_back(v);
    }
    for (int a = 0; a < n; ++a) {
      for (int i = 0; i < n; ++i) R[a * n + i] = basis[a][i];
    }
  }
  FramedJet fj{transform(jet, R), R};
  fj.jet.g[0] = s;
  for (int i = 1; i < n; ++i) fj.jet.g[i] = 0.0;
  return fj;
}

std::vector<double> g_tensor(const FramedJet& fj, double S, double Q) {
  const Jet3& j = fj.jet;
  const double lap = j.laplacian();
  std::vector<double> G = j.hess;
  G[0] -= S * lap;
  for (int i = 1; i < j.n; ++i) G[i * j.n + i] -= Q * lap;
  return G;
}

DivergenceTerms divergence_terms(const Jet3& jet, double alpha, double gamma) {
  const int n = jet.n;
  const double u = jet.u;
  const double s = jet.grad_norm();
  const double lap = jet.laplacian();
  const auto hg = jet.hess_g();
  const auto dlap = jet.laplacian_gradient();
  const double phi = std::pow(u, alpha) * std::pow(s, gamma);
  const double psi = std::pow(u, alpha - 1.0) * std::pow(s, gamma + 2.0);

  double g_dphi = 0.0, hg_dphi = 0.0, g_dpsi = 0.0, g_dlap = 0.0, div_hg = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dphi = alpha * std::pow(u, alpha - 1.0) * std::pow(s, gamma) * jet.g[i] +
                        gamma * std::pow(u, alpha) * std::pow(s, gamma - 2.0) * hg[i];
    const double dpsi = (alpha - 1.0) * std::pow(u, alpha - 2.0) * std::pow(s, gamma + 2.0) * jet.g[i] +
                        (gamma + 2.0) * std::pow(u, alpha - 1.0) * std::pow(s, gamma) * hg[i];
    g_dphi += dphi * jet.g[i];
    hg_dphi += dphi * hg[i];
    g_dpsi += dpsi * jet.g[i];
    g_dlap += dlap[i] * jet.g[i];
    for (int j = 0; j < n; ++j) div_hg += jet.t(i, i, j) * jet.g[j];
  }
  return {lap * g_dphi + phi * g_dlap + phi * lap * lap, hg_dphi + phi * div_hg + phi * jet.hess_norm2(),
          g_dpsi + psi * lap};
}

std::array<std::vector<double>, 3> divergence_fields(const Jet3& jet, double alpha, double gamma) {
  const double s = jet.grad_norm();
  const double phi = std::pow(jet.u, alpha) * std::pow(s, gamma);
  const double psi = std::pow(jet.u, alpha - 1.0) * std::pow(s, gamma + 2.0);
  const double lap = jet.laplacian();
  const auto hg = jet.hess_g();
  std::array<std::vector<double>, 3> f{std::vector<double>(jet.n), std::vector<double>(jet.n),
                                       std::vector<double>(jet.n)};
  for (int i = 0; i < jet.n; ++i) {
    f[0][i] = phi * lap * jet.g[i];
    f[1][i] = phi * hg[i];
    f[2][i] = psi * jet.g[i];
  }
  return f;
}

namespace {

void finish(IdentityEvaluation& ev) {
  ev.residual = 0.0;
  ev.scale = 0.0;
  for (const auto& [name, v] : ev.terms) {
    ev.residual += v;
    ev.scale = std::max(ev.scale, std::abs(v));
  }
}

struct Common {
  double u, s, lap, phi, psi, w4, G11;
  DivergenceTerms div;
};

Common common(const FramedJet& fj, double alpha, double gamma, double S) {
  const Jet3& j = fj.jet;
  Common c;
  c.u = j.u;
  c.s = j.g[0];
  c.lap = j.laplacian();
  c.phi = std::pow(c.u, alpha) * std::pow(c.s, gamma);
  c.psi = std::pow(c.u, alpha - 1.0) * std::pow(c.s, gamma + 2.0);
  c.w4 = std::pow(c.u, alpha - 2.0) * std::pow(c.s, gamma + 4.0);
  c.G11 = j.h(0, 0) - S * c.lap;
  c.div = divergence_terms(j, alpha, gamma);
  return c;
}

} // namespace

IdentityEvaluation identity_equ111(const FramedJet& fj, double alpha, double gamma, double S) {
  const Jet3& j = fj.jet;
  const int n = j.n;
  const Common c = common(fj, alpha, gamma, S);
  const double T = 1.0 + gamma * S + 2.0 * S;

  double off11 = 0.0;  // sum over (i, j) != (1, 1) of v_ij^2
  double g1i = 0.0;    // sum over i > 1 of G_i1^2
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == 0 && b == 0) continue;
      off11 += j.h(a, b) * j.h(a, b);
    }
  }
  for (int i = 1; i < n; ++i) g1i += j.h(i, 0) * j.h(i, 0);

  IdentityEvaluation ev;
  ev.terms = {
      {"lhs", -(1.0 - S * S + gamma * S - gamma * S * S) * c.phi * c.lap * c.lap},
      {"T1", c.div.T1},
      {"T2", -c.div.T2},
      {"T3", (alpha * S - alpha) / T * c.div.T3},
      {"offdiag_hessian", c.phi * off11},
      {"w4", alpha * (alpha - 1.0) * (1.0 - S) / T * c.w4},
      {"G11", alpha * (gamma + 3.0) / T * c.psi * c.G11},
      {"G11_lap", (2.0 * gamma * S - gamma + 2.0 * S) * c.phi * c.G11 * c.lap},
      {"G11_sq", (1.0 + gamma) * c.phi * c.G11 * c.G11},
      {"G1i_sq", gamma * c.phi * g1i},
  };
  finish(ev);
  return ev;
}

double identity_residual_equ111(const FramedJet& fj, double alpha, double gamma, double S) {
  return identity_equ111(fj, alpha, gamma, S).residual;
}

IdentityEvaluation identity_constrained(const FramedJet& fj, double alpha, double gamma, double S, double Q,
                                        bool require_constraint) {
  const Jet3& j = fj.jet;
  const int n = j.n;
  if (require_constraint && std::abs((n - 1) * Q + S - 1.0) > 1e-12) {
    throw std::invalid_argument("identity requires (n-1) Q + S = 1");
  }
  const Common c = common(fj, alpha, gamma, S);
  const double T = 1.0 + gamma * S + 2.0 * S;
  const auto G = g_tensor(fj, S, Q);

  double off11 = 0.0;
  double g1i = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == 0 && b == 0) continue;
      off11 += G[a * n + b] * G[a * n + b];
    }
  }
  for (int i = 1; i < n; ++i) g1i += G[i * n] * G[i * n];

  IdentityEvaluation ev;
  ev.terms = {
      {"lhs", -(1.0 - S * S + gamma * S - gamma * S * S - (n - 1) * Q * Q) * c.phi * c.lap * c.lap},
      {"T1", c.div.T1},
      {"T2", -c.div.T2},
      {"T3", (alpha * S - alpha) / T * c.div.T3},
      {"G_offdiag_sq", c.phi * off11},
      {"w4", alpha * (alpha - 1.0) * (1.0 - S) / T * c.w4},
      {"G11", alpha * (gamma + 3.0) / T * c.psi * c.G11},
      {"G11_lap", (2.0 * gamma * S - gamma + 2.0 * S - 2.0 * Q) * c.phi * c.G11 * c.lap},
      {"G11_sq", (1.0 + gamma) * c.phi * c.G11 * c.G11},
      {"G1i_sq", gamma * c.phi * g1i},
  };
  finish(ev);
  return ev;
}

double identity_residual_8_239_37(const FramedJet& fj, double alpha, double gamma, double S, double Q) {
  return identity_constrained(fj, alpha, gamma, S, Q).residual;
}

Jet3 pde_project(const Jet3& jet, double p, double q) {
  const int n = jet.n;
  const double s = jet.grad_norm();
  if (!(s > 0.0) || !(jet.u > 0.0)) throw std::invalid_argument("pde_project needs u > 0 and a nonzero gradient");
  Jet3 out = jet;
  const double target = -std::pow(jet.u, p) * std::pow(s, q);
  const double tau = (target - jet.laplacian()) / n;
  for (int i = 0; i < n; ++i) out.h(i, i) += tau;

  const auto hg = out.hess_g();
  const auto have = out.laplacian_gradient();
  std::vector<double> a(n);
  for (int k = 0; k < n; ++k) {
    const double want = -p * std::pow(jet.u, p - 1.0) * std::pow(s, q) * jet.g[k] -
                        q * std::pow(jet.u, p) * std::pow(s, q - 2.0) * hg[k];
    a[k] = (want - have[k]) / (n + 2);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        out.t(i, j, k) += (j == k ? a[i] : 0.0) + (i == k ? a[j] : 0.0) + (i == j ? a[k] : 0.0);
      }
    }
  }
  return out;
}

double pde_constraint_violation(const Jet3& jet, double p, double q) {
  const double s = jet.grad_norm();
  const double src = std::pow(jet.u, p) * std::pow(s, q);
  double worst = std::abs(jet.laplacian() + src) / std::max(1.0, src);
  const auto hg = jet.hess_g();
  const auto have = jet.laplacian_gradient();
  for (int k = 0; k < jet.n; ++k) {
    const double a = p * std::pow(jet.u, p - 1.0) * std::pow(s, q) * jet.g[k];
    const double b = q * std::pow(jet.u, p) * std::pow(s, q - 2.0) * hg[k];
    const double mag = std::max({1.0, std::abs(a), std::abs(b), std::abs(have[k])});
    worst = std::max(worst, std::abs(have[k] + a + b) / mag);
  }
  return worst;
}

std::array<double, 3> divergence_weights(double p, const coeffs::ParamChoice& prm, const coeffs::CoefficientSet& c) {
  return {c.a1 - 1.0, -c.a1, ((prm.alpha + p) - c.a1 * prm.alpha * (1.0 - prm.S)) / c.T};
}

IdentityEvaluation identity_sec2(const FramedJet& fj, double p, double q, const coeffs::ParamChoice& prm,
                                 const coeffs::CoefficientSet& c, double shift) {
  const Jet3& j = fj.jet;
  const int n = j.n;
  if (pde_constraint_violation(j, p, q) > 1e-9) {
    throw std::invalid_argument("jet does not satisfy the equation; project it first");
  }
  const Common cm = common(fj, prm.alpha, prm.gamma, prm.S);
  const auto G = g_tensor(fj, prm.S, prm.Q);
  const auto w = divergence_weights(p, prm, c);

  double gij = 0.0;
  double g1i = 0.0;
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) gij += G[a * n + b] * G[a * n + b];
    g1i += G[a * n] * G[a * n];
  }
  IdentityEvaluation ev;
  ev.terms = {
      {"W.T1", w[0] * cm.div.T1},
      {"W.T2", w[1] * cm.div.T2},
      {"W.T3", w[2] * cm.div.T3},
      {"a1", c.a1 * cm.phi * gij},
      {"a4", c.a4 * cm.phi * g1i},
      {"a2", c.a2 * cm.phi * cm.G11 * cm.G11},
      {"a3", c.a3 * cm.w4},
      {"b1", c.b1 * cm.psi * cm.G11},
      {"b2", c.b2 * cm.phi * (cm.G11 * cm.lap + shift)},
  };
  finish(ev);
  return ev;
}

double identity_residual_sec2(const FramedJet& fj, double p, double q, const coeffs::ParamChoice& prm,
                              const coeffs::CoefficientSet& c, double shift) {
  return identity_sec2(fj, p, q, prm, c, shift).residual;
}

Jet3 random_jet(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> value(0.5, 2.0);
  Jet3 jet(n);
  jet.u = value(rng);
  do {
    for (double& x : jet.g) x = entry(rng);
  } while (jet.grad_norm() < 1e-3);
  for (double& x : jet.hess) x = entry(rng);
  for (double& x : jet.third) x = entry(rng);
  jet.symmetrize();
  return jet;
}

Jet3 radial_jet(int n, const radial::RadialSample& s) {
  if (!(s.r > 0.0)) throw std::invalid_argument("radial_jet needs r > 0");
  Jet3 jet(n);
  jet.u = s.v;
  // At x = -r e1 the outward radial direction is -e1.
  jet.g[0] = -s.dv;
  jet.h(0, 0) = s.d2v;
  for (int i = 1; i < n; ++i) jet.h(i, i) = s.dv / s.r;
  jet.t(0, 0, 0) = -s.d3v;
  const double mixed = -(s.d2v / s.r - s.dv / (s.r * s.r));
  for (int i = 1; i < n; ++i) {
    jet.t(0, i, i) = jet.t(i, 0, i) = jet.t(i, i, 0) = mixed;
  }
  return jet;
}

} // namespace liouville::jets
