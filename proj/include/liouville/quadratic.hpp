#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace liouville {

/// Real roots of a*x^2 + b*x + c with the cancellation-free formula.
/// Returns the pair ordered (smaller, larger), or nullopt for complex roots.
/// a must be nonzero.
inline std::optional<std::pair<double, double>> real_roots(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double t = -0.5 * (b + std::copysign(s, b));
  double r1;
  double r2;
  if (t == 0.0) {
    r1 = r2 = 0.0;
  } else {
    r1 = t / a;
    r2 = c / t;
  }
  if (r1 > r2) std::swap(r1, r2);
  return std::make_pair(r1, r2);
}

} // namespace liouville
