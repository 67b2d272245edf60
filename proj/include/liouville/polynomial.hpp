#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace liouville {

using Rational = boost::multiprecision::cpp_rational;

/// Sparse polynomial in `Vars` variables with exact rational coefficients.
///
/// Terms with a zero coefficient are never stored, so two polynomials are equal
/// exactly when their term maps are equal. This is what the identity checks rely on.
template <std::size_t Vars>
class Polynomial {
public:
  using Exponent = std::array<int, Vars>;
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c) { add_term(Exponent{}, c); }
  Polynomial(long long c) : Polynomial(Rational(c)) {}

  static Polynomial variable(std::size_t index) {
    Exponent e{};
    e.at(index) = 1;
    Polynomial out;
    out.add_term(e, Rational(1));
    return out;
  }

  static Polynomial monomial(const Exponent& e, const Rational& c) {
    Polynomial out;
    out.add_term(e, c);
    return out;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Highest exponent of variable `index` among the stored terms (-1 for zero).
  int degree(std::size_t index) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[index]);
    return d;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Polynomial& rhs) {
    *this = *this * rhs;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial{} - a; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e{};
        for (std::size_t i = 0; i < Vars; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend Polynomial operator/(Polynomial a, const Rational& c) {
    Polynomial out;
    for (auto& [e, v] : a.terms_) out.add_term(e, v / c);
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned k) const {
    Polynomial out(1);
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  /// Replace variable `index` by the polynomial `value` everywhere.
  Polynomial substitute(std::size_t index, const Polynomial& value) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
      Exponent rest = e;
      rest[index] = 0;
      out += monomial(rest, c) * value.pow(static_cast<unsigned>(e[index]));
    }
    return out;
  }

  Polynomial derivative(std::size_t index) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponent d = e;
      d[index] -= 1;
      out.add_term(d, c * e[index]);
    }
    return out;
  }

  Rational evaluate(const std::array<Rational, Vars>& at) const {
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < Vars; ++i) {
        for (int k = 0; k < e[i]; ++k) term *= at[i];
      }
      sum += term;
    }
    return sum;
  }

  double evaluate_double(const std::array<double, Vars>& at) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double term = static_cast<double>(c);
      for (std::size_t i = 0; i < Vars; ++i) {
        for (int k = 0; k < e[i]; ++k) term *= at[i];
      }
      sum += term;
    }
    return sum;
  }

private:
  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

using Poly1 = Polynomial<1>;
using Poly2 = Polynomial<2>;
using Poly3 = Polynomial<3>;

/// Human-readable rendering, variables named by `names`.
template <std::size_t Vars>
std::string to_string(const Polynomial<Vars>& poly, const std::array<const char*, Vars>& names);

extern template std::string to_string<1>(const Poly1&, const std::array<const char*, 1>&);
extern template std::string to_string<2>(const Poly2&, const std::array<const char*, 2>&);
extern template std::string to_string<3>(const Poly3&, const std::array<const char*, 3>&);

/// Sign of a univariate polynomial's value at an exact rational point.
int sign_at(const Poly1& poly, const Rational& x);

} // namespace liouville
