#pragma once

#include <string>

namespace liouville {

/// A point (n, p, q) of the parameter space of  -Lap v = v^p |grad v|^q  in R^n.
///
/// Construction enforces n >= 3, p >= 0 and 0 <= q < 2. The supercritical
/// condition p + q > 1 is not enforced; it is exposed through supercritical()
/// because points below the line are labelled rather than rejected.
class ProblemPoint {
public:
  ProblemPoint(int n, double p, double q);

  int n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  bool supercritical() const noexcept { return p_ + q_ > 1.0; }

  std::string to_string() const;

private:
  int n_;
  double p_;
  double q_;
};

void require_dimension(int n);

} // namespace liouville
