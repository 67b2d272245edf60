#include "liouville/polynomial.hpp"

#include <sstream>

namespace liouville {

template <std::size_t Vars>
std::string to_string(const Polynomial<Vars>& poly, const std::array<const char*, Vars>& names) {
  if (poly.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest total degree first reads more naturally.
  for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    Rational mag = c < 0 ? Rational(-c) : c;
    bool constant = true;
    for (int k : e) constant = constant && k == 0;
    if (mag != 1 || constant) out << mag;
    for (std::size_t i = 0; i < Vars; ++i) {
      if (e[i] == 0) continue;
      out << names[i];
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

template std::string to_string<1>(const Poly1&, const std::array<const char*, 1>&);
template std::string to_string<2>(const Poly2&, const std::array<const char*, 2>&);
template std::string to_string<3>(const Poly3&, const std::array<const char*, 3>&);

int sign_at(const Poly1& poly, const Rational& x) {
  Rational v = poly.evaluate({x});
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

} // namespace liouville
