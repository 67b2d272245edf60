#include "liouville/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace liouville {

void require_dimension(int n) {
  if (n < 3) {
    throw std::invalid_argument("dimension n must be >= 3, got " + std::to_string(n));
  }
}

ProblemPoint::ProblemPoint(int n, double p, double q) : n_(n), p_(p), q_(q) {
  require_dimension(n);
  if (!std::isfinite(p) || p < 0.0) {
    throw std::invalid_argument("exponent p must be finite and >= 0");
  }
  if (!std::isfinite(q) || q < 0.0 || q >= 2.0) {
    throw std::invalid_argument("exponent q must lie in [0, 2)");
  }
}

std::string ProblemPoint::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << "(n=" << n_ << ", p=" << p_ << ", q=" << q_ << ")";
  return out.str();
}

} // namespace liouville
