#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace liouville::coeffs {

inline constexpr double kDefaultEps1 = 1e-3;
inline constexpr double kDefaultEps = 1e-6;
/// |D| or |T| below this is treated as the singular surface of the method.
inline constexpr double kDenominatorGuard = 1e-12;

/// Thrown when a coefficient formula hits a vanishing denominator.
class DegenerateDenominator : public std::domain_error {
public:
  DegenerateDenominator(const std::string& which, double value);
  const std::string& which() const noexcept { return which_; }
  double value() const noexcept { return value_; }

private:
  std::string which_;
  double value_;
};

/// Free parameters of one certificate attempt.
///
/// gamma and alpha weight |grad v| and v in the multiplier v^alpha |grad v|^gamma,
/// S and Q split the Hessian into the trace-adjusted tensor G, and P <= 0 is the
/// multiplier of the augmentation term. eps1 perturbs gamma in the low-q regime and
/// eps is the slack demanded of the discriminant.
struct ParamChoice {
  double gamma = 0.0;
  double S = 0.0;
  double Q = 0.0;
  double alpha = 0.0;
  double P = 0.0;
  double eps1 = kDefaultEps1;
  double eps = kDefaultEps;
};

/// Coefficients of the pointwise identity plus its shared denominators.
struct CoefficientSet {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double D = 0.0;  // 1 - S^2 + gamma S - gamma S^2 - (n-1) Q^2
  double E = 0.0;  // 1 + gamma S + q S
  double T = 0.0;  // 1 + gamma S + 2 S
};

struct StructuralPair {
  double S;
  double Q;
};

/// S = 1/(n - (n-1) q), Q = (1 - S)/(n-1): the choice under which the explicit
/// radial solutions make G11 proportional to v^-1 |grad v|^2.
StructuralPair structural_SQ(int n, double q);

/// (n-1) Q + S - 1, the trace constraint that makes G traceless.
double structural_defect(int n, double S, double Q);

/// Evaluates a1..a4, b1, b2 at exponent p. Throws DegenerateDenominator when |D| or |T|
/// falls below the guard.
CoefficientSet coefficient_set(int n, double p, double q, const ParamChoice& params);

/// Coefficients (c0, c1, c2) of the quadratic in S whose roots make b2 vanish,
/// with Q = (1 - S)/(n-1) eliminated.
std::vector<double> b2_quadratic_in_S(int n, double q, double gamma);

/// Real S-roots of b2 = 0 (after clearing D), ascending. Throws std::domain_error
/// when there is no real root. Where b2 vanishes for every S (gamma at its unperturbed
/// low-q value and q = 1/(n-1)) the two limiting roots are returned.
std::vector<double> solve_b2_for_S(int n, double q, double gamma);

/// The b2 root nearest to `reference`; used to follow the branch through 1/(n-(n-1)q).
double track_b2_root(int n, double q, double gamma, double reference);

/// gamma = (n-1) q^2 - (n+1) q + eps1 for 0 <= q <= 1/(n-1).
double gamma_lowq(int n, double q, double eps1);

/// gamma = (n-2) q - 2 for q > 1/(n-1).
double gamma_highq(int n, double q);

/// Solves alpha = C1 + C2 alpha exactly, with
///   C1 = -(p - P) / (a1 T) * (2/(n-1) + gamma)
///   C2 = (a1 (1 - S) - 1) / (a1 T) * (2/(n-1) + gamma).
/// `coeffs` supplies a1 and T; they do not depend on alpha or p.
double alpha1(int n, double gamma, double S, double p_minus_P, const CoefficientSet& coeffs);

/// Bracketed denominator of alpha2; equals (q - (n-1)/(n-2))^2 + 4/(n-2).
double alpha2_denominator(int n, double q);

/// alpha maximising the high-q discriminant for the given p - P.
double alpha2(int n, double q, double p_minus_P);

/// b1 + P (gamma + 2)/T, the linear coefficient after augmentation.
double shifted_b1(const CoefficientSet& coeffs, const ParamChoice& params);

/// a3 + P (alpha - 1)/T.
double shifted_a3(const CoefficientSet& coeffs, const ParamChoice& params);

/// 4 (n/(n-1) + gamma) a1 (a3 + P (alpha-1)/T) - (b1 + P (gamma+2)/T)^2.
double discriminant(int n, const CoefficientSet& coeffs, const ParamChoice& params);

/// s(p) = (2 - q) a3 / (a1 (alpha - 1)) + 1, evaluated from the coefficient set.
double s_defining(double q, const CoefficientSet& coeffs, double alpha);

/// Leading-order closed form -(n-1)(2-q)(1-q) p / (2 + n - 2nq + (n-1)q^2) + 1.
double s_closed_form(int n, double q, double p);

/// Upper end of the p - P interval on which the low-q discriminant is positive,
/// including the eps1 correction:
///   (n-1)/(n-2) * (a1 T - (2/(n-1) + gamma)(a1 (1 - S) - 1)).
double lowq_upper_limit(int n, double gamma, double S, const CoefficientSet& coeffs);

} // namespace liouville::coeffs
