#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liouville/problem.hpp"

namespace liouville::regions {

/// Distance below which a point counts as lying on a boundary curve.
inline constexpr double kBoundaryTolerance = 1e-9;
/// Half-width of the band around q = 1 where the existence threshold is not evaluated.
inline constexpr double kUnitGuard = 1e-6;

/// Region labels in plotting priority order (lower value wins when drawing overlaps).
enum class Region {
  Subthreshold = 0,  // p + q <= 1
  ExistsRadial = 1,  // nonconstant radial solutions exist
  ConstantThm1 = 2,  // q <= 1/(n-1) and below the existence curve
  ConstantThm2 = 3,  // H < 0 in the admissible q band
  ConstantG = 4,     // G < 0
  Open = 5,
};

std::string_view name(Region r);
Region region_from_name(std::string_view s);
int priority(Region r);

double eval_b(int n, double q);
double eval_G(const ProblemPoint& pt);
double eval_H(const ProblemPoint& pt);

/// Raw polynomial evaluations without the ProblemPoint domain restriction.
double G_value(int n, double p, double q);
double H_value(int n, double p, double q);

/// Existence threshold in p for 0 <= q < 1; equality case of the radial existence condition.
double p_star(int n, double q);

/// Larger root in p of H(., q); requires 1/(n-1) < q < 2.
double root_p2(int n, double q);

/// Larger root in p of G(., q).
double root_pM(int n, double q);

/// Upper end of the q band where the H-based theorem applies (1 for n = 3, 2 otherwise).
double thm2_q_upper(int n);

Region classify(const ProblemPoint& pt);

enum class Curve { F1, F2, F3, F4, F5 };

std::string_view name(Curve c);
Curve curve_from_name(std::string_view s);

/// Upper p extent used when sampling the vertical line f5 and when plotting.
double plot_p_extent(int n);

/// Samples (q, p) along the named curve; see the README for each curve's q domain.
std::vector<std::pair<double, double>> curve_samples(int n, Curve curve, int resolution);

/// Result of the exact expand-and-compare check of the G/H comparison chain.
struct ChainStep {
  std::string name;
  bool holds;
  std::string detail;
};

struct ChainReport {
  std::vector<ChainStep> steps;
  bool all_hold() const;
};

/// Expands every equivalence step of the G-versus-H comparison as polynomials
/// in (n, p, q) with exact rational coefficients and compares coefficients.
ChainReport verify_compare_chain();

} // namespace liouville::regions
