#pragma once

namespace liouville::young {

/// Margin demanded of every strict inequality in the window checks.
inline constexpr double kStrictMargin = 1e-10;

/// B written as (gamma+4)(a p + b)/(c p + d).
struct BParts {
  double a;
  double b;
  double c;
  double d;
  double B;
  /// b c - a d; identically -(gamma + 2q)(alpha + gamma + 2).
  double determinant;
};

BParts compute_B(int n, double q, double gamma, double alpha, double p);

struct YoungExponents {
  double A = 0.0;
  double B = 0.0;
  double p1 = 0.0;
  double q1 = 0.0;
  double sigma1 = 0.0;
  /// Reciprocals are kept alongside because sigma1 is infinite when 1/p1 + 1/q1 = 1.
  double inv_p1 = 0.0;
  double inv_q1 = 0.0;
  double inv_sigma1 = 0.0;
};

/// Throws coeffs::DegenerateDenominator naming the vanishing quantity.
YoungExponents young_exponents(int n, double q, double gamma, double alpha, double p);

struct WindowCheck {
  bool lower_ok;
  bool upper_ok;
  bool positive_ok;
  /// 1/p1 + 1/q1 - (1 - 2/n)
  double lower_margin;
  /// 1 - 1/p1 - 1/q1
  double upper_margin;
  /// min(1/p1, 1/q1, 1/sigma1)
  double positive_margin;

  bool all() const { return lower_ok && upper_ok && positive_ok; }
};

WindowCheck window_check(const YoungExponents& exps, int n);

/// 1/p1 + 1/q1 in the closed form 2(2-q)(alpha+gamma+2)/(c^2 p + c d) + (gamma+2)/(gamma+4).
double G_of_p(int n, double q, double gamma, double alpha, double p);

} // namespace liouville::young
