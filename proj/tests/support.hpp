#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "liouville/jets.hpp"

namespace liouville::testing {

// u(x) = c0 + g.x + x.H.x/2 + T[x,x,x]/6 with symmetric H and T.
struct Cubic {
  int n;
  double c0;
  std::vector<double> g;
  std::vector<double> H;
  std::vector<double> T;

  jets::Jet3 jet_at(const std::vector<double>& x) const {
    jets::Jet3 j(n);
    auto h = [&](int a, int b) { return H[a * n + b]; };
    auto t = [&](int a, int b, int c) { return T[(a * n + b) * n + c]; };
    double u = c0;
    for (int a = 0; a < n; ++a) {
      u += g[a] * x[a];
      for (int b = 0; b < n; ++b) {
        u += 0.5 * h(a, b) * x[a] * x[b];
        for (int c = 0; c < n; ++c) u += t(a, b, c) * x[a] * x[b] * x[c] / 6.0;
      }
    }
    j.u = u;
    for (int a = 0; a < n; ++a) {
      double ga = g[a];
      for (int b = 0; b < n; ++b) {
        ga += h(a, b) * x[b];
        for (int c = 0; c < n; ++c) ga += 0.5 * t(a, b, c) * x[b] * x[c];
        double hab = h(a, b);
        for (int c = 0; c < n; ++c) {
          hab += t(a, b, c) * x[c];
          j.t(a, b, c) = t(a, b, c);
        }
        j.h(a, b) = hab;
      }
      j.g[a] = ga;
    }
    return j;
  }
};

inline Cubic random_cubic(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto base = jets::random_jet(n, rng);
  Cubic c{n, 1.0 + 0.5 * std::abs(unit(rng)), base.g, base.hess, base.third};
  return c;
}

inline double fd_divergence(const Cubic& c, double alpha, double gamma, int which, double h) {
  double div = 0.0;
  std::vector<double> x(c.n, 0.0);
  for (int i = 0; i < c.n; ++i) {
    x[i] = h;
    const double plus = jets::divergence_fields(c.jet_at(x), alpha, gamma)[which][i];
    x[i] = -h;
    const double minus = jets::divergence_fields(c.jet_at(x), alpha, gamma)[which][i];
    x[i] = 0.0;
    div += (plus - minus) / (2.0 * h);
  }
  return div;
}

// Worst relative disagreement between the hand expansions and central differences.
inline double divergence_oracle_error(const Cubic& c, double alpha, double gamma) {
  const auto exact = jets::divergence_terms(c.jet_at(std::vector<double>(c.n, 0.0)), alpha, gamma);
  const double expanded[3] = {exact.T1, exact.T2, exact.T3};
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double fd = fd_divergence(c, alpha, gamma, k, 1e-5);
    worst = std::max(worst, std::abs(fd - expanded[k]) / std::max(1.0, std::abs(expanded[k])));
  }
  return worst;
}

} // namespace liouville::testing
