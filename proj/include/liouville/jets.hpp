#pragma once

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "liouville/coeffs.hpp"
#include "liouville/radial.hpp"

namespace liouville::jets {

/// Value, gradient, Hessian and third-derivative tensor of a function at one point.
/// Storage is dense row-major; symmetrize() makes hess and third fully symmetric.
struct Jet3 {
  explicit Jet3(int dim);

  int n;
  double u = 1.0;
  std::vector<double> g;
  std::vector<double> hess;
  std::vector<double> third;

  double& h(int i, int j) { return hess[i * n + j]; }
  double h(int i, int j) const { return hess[i * n + j]; }
  double& t(int i, int j, int k) { return third[(i * n + j) * n + k]; }
  double t(int i, int j, int k) const { return third[(i * n + j) * n + k]; }

  void symmetrize();
  double grad_norm() const;
  double laplacian() const;
  /// Sum of v_ij^2.
  double hess_norm2() const;
  /// g . hess . g
  double hess_gg() const;
  /// (hess g)_i
  std::vector<double> hess_g() const;
  /// Gradient of the Laplacian: sum_j v_jji.
  std::vector<double> laplacian_gradient() const;
};

enum class FrameCompletion { Householder, GramSchmidt };

/// Jet expressed in an orthonormal frame whose first axis is grad v / |grad v|.
struct FramedJet {
  Jet3 jet;
  /// Rows are the frame vectors; jet.g = rotation * original g.
  std::vector<double> rotation;
};

/// Applies the orthogonal map R: g -> R g, hess -> R hess R^T, third -> R.R.R third.
Jet3 transform(const Jet3& jet, const std::vector<double>& R);

/// Throws std::invalid_argument for a vanishing gradient.
FramedJet rotate_to_frame(const Jet3& jet, FrameCompletion completion = FrameCompletion::Householder);

/// G11 = v11 - S Lap v, G_ij = v_ij - Q delta_ij Lap v otherwise (framed coordinates).
std::vector<double> g_tensor(const FramedJet& fj, double S, double Q);

/// The three divergence terms that make up W, expanded by the product rule:
///   T1 = (v^a |Dv|^g Lap v v_i)_i,  T2 = (v^a |Dv|^g v_ij v_j)_i,  T3 = (v^(a-1) |Dv|^(g+2) v_i)_i.
struct DivergenceTerms {
  double T1;
  double T2;
  double T3;
};
DivergenceTerms divergence_terms(const Jet3& jet, double alpha, double gamma);

/// The vector fields whose divergences are T1, T2, T3, evaluated from (u, g, hess).
std::array<std::vector<double>, 3> divergence_fields(const Jet3& jet, double alpha, double gamma);

/// Signed terms of an identity written as 0 = sum(terms).
struct IdentityEvaluation {
  std::vector<std::pair<std::string, double>> terms;
  double residual = 0.0;
  /// Largest |term|; relative residuals are taken against it.
  double scale = 0.0;

  double relative() const { return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual); }
};

/// Identity expressing (1 - S^2 + gS - gS^2) v^a |Dv|^g (Lap v)^2 through divergences
/// and G-terms; holds for every jet.
IdentityEvaluation identity_equ111(const FramedJet& fj, double alpha, double gamma, double S);
double identity_residual_equ111(const FramedJet& fj, double alpha, double gamma, double S);

/// The version with the full G tensor, valid when (n-1) Q + S = 1. With
/// `require_constraint` the constraint is checked (tolerance 1e-12) and a violation throws.
IdentityEvaluation identity_constrained(const FramedJet& fj, double alpha, double gamma, double S, double Q,
                                        bool require_constraint = true);
double identity_residual_8_239_37(const FramedJet& fj, double alpha, double gamma, double S, double Q);

/// Adjusts hess by a multiple of the identity so Lap v = -u^p |g|^q, then adds the
/// least-norm symmetric correction to third so that sum_i v_iij = -(u^p |g|^q)_j.
Jet3 pde_project(const Jet3& jet, double p, double q);

/// Largest violation of the two constraints enforced by pde_project, relative to the
/// size of the quantities involved.
double pde_constraint_violation(const Jet3& jet, double p, double q);

/// Weights (w1, w2, w3) with W = w1 T1 + w2 T2 + w3 T3.
std::array<double, 3> divergence_weights(double p, const coeffs::ParamChoice& params,
                                         const coeffs::CoefficientSet& coeffs);

/// The final identity 0 = W + a1 ... + b2 v^a |Dv|^g G11 Lap v on a jet satisfying the
/// equation. `g11_laplacian_shift` is added to G11 Lap v in the b2 term only, for probing
/// that coefficient. Throws std::invalid_argument if the jet violates the equation.
IdentityEvaluation identity_sec2(const FramedJet& fj, double p, double q, const coeffs::ParamChoice& params,
                                 const coeffs::CoefficientSet& coeffs, double g11_laplacian_shift = 0.0);
double identity_residual_sec2(const FramedJet& fj, double p, double q, const coeffs::ParamChoice& params,
                              const coeffs::CoefficientSet& coeffs, double g11_laplacian_shift = 0.0);

/// Entries uniform on (-1, 1), u uniform on (0.5, 2), symmetrised; the gradient is
/// redrawn while |g| < 1e-3.
Jet3 random_jet(int n, std::mt19937_64& rng);

/// Jet of the radial function at the point (-r, 0, ..., 0), where the gradient points
/// along +e1 because v is decreasing.
Jet3 radial_jet(int n, const radial::RadialSample& sample);

} // namespace liouville::jets
