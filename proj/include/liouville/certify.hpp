#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liouville/coeffs.hpp"
#include "liouville/problem.hpp"
#include "liouville/regions.hpp"
#include "liouville/young.hpp"

namespace liouville::certify {

enum class Regime { LowQ, HighQ, Searched };

std::string_view name(Regime r);
Regime regime_from_name(std::string_view s);

/// One constraint of a certificate. `residual` is |defect| for equality constraints
/// and the signed slack for inequalities (negative means violated).
struct Check {
  std::string name;
  bool satisfied = false;
  double residual = 0.0;
};

struct Certificate {
  ProblemPoint problem;
  Regime regime = Regime::Searched;
  coeffs::ParamChoice params;
  coeffs::CoefficientSet coeffs;
  double delta = 0.0;
  young::YoungExponents young;
  std::vector<Check> checks;

  bool feasible() const;
  /// Names of the unsatisfied checks, in report order.
  std::vector<std::string> failures() const;
  /// p - P, the exponent at which the discriminant is effectively evaluated.
  double p_minus_P() const { return problem.p() - params.P; }
};

/// Closed-form certificate for 0 <= q <= 1/(n-1) and 1 - q < p < p_star.
/// Violated preconditions produce a certificate whose failing checks say why.
Certificate certify_lowq(const ProblemPoint& point, double eps1 = coeffs::kDefaultEps1,
                         double eps = coeffs::kDefaultEps);

/// Closed-form certificate for the H-band. By default p - P is the midpoint between
/// max(p, 1 - q) and p2; passing `p_minus_P` pins it (p2 itself reproduces the
/// degenerate boundary where the discriminant vanishes).
Certificate certify_highq(const ProblemPoint& point, double eps = coeffs::kDefaultEps,
                          std::optional<double> p_minus_P = std::nullopt);

/// Numeric search over (gamma, alpha, P) with S on the b2 = 0 branch and
/// Q = (1 - S)/(n-1). `budget` bounds objective evaluations. Deterministic per seed.
Certificate search_certificate(const ProblemPoint& point, int budget, std::uint64_t seed);

/// Recomputes every constraint from (n, p, q, params) alone.
std::vector<Check> validate_certificate(const Certificate& cert);

/// Flat key = value record; doubles are written as hexadecimal floats.
std::string serialize(const Certificate& cert);
/// Throws std::invalid_argument on malformed input.
Certificate deserialize(std::string_view text);

/// Exact check of the factorisation of F in the high-q regime for dimension n.
/// `samples` rational points of (0, (n-1)/(n-2)) are additionally evaluated exactly.
regions::ChainReport verify_claim_F(int n, int samples = 64);

/// Exact check of the J / K analysis showing the q > 1 part of the H-band for n >= 4.
regions::ChainReport verify_claim_J(int n);

} // namespace liouville::certify
