#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace sfmotif {

// Compare against Rational(x), not a bare integer: boost 1.74's mixed
// operator== recurses forever under C++20's rewritten comparisons.
using Rational = boost::rational<std::int64_t>;

Rational parse_rational(std::string_view text);  // "p/q" or "p"
std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// Degree exponent, an exact rational strictly inside (2, 3).
class Tau {
 public:
  explicit Tau(Rational value);
  static Tau parse(std::string_view text) { return Tau(parse_rational(text)); }

  const Rational& value() const { return value_; }
  double as_double() const { return to_double(value_); }
  Rational minus_one() const { return value_ - 1; }
  /// (τ−2)/(τ−1), 1/2 and 1/(τ−1): the nonzero degree-exponent levels.
  Rational low_level() const { return (value_ - 2) / (value_ - 1); }
  Rational high_level() const { return Rational(1) / (value_ - 1); }

  friend bool operator==(const Tau&, const Tau&) = default;

 private:
  Rational value_;
};

std::string to_string(const Tau& tau);

/// The value a + b/(τ−1).
struct LinearInTauInv {
  Rational a;
  Rational b;

  Rational at(const Tau& tau) const { return a + b / tau.minus_one(); }
  std::string text() const;
  friend bool operator==(const LinearInTauInv&, const LinearInTauInv&) = default;
};

/// The value c0 + c_tau·τ + c_inv/(τ−1).
struct ExponentForm {
  Rational c0;
  Rational c_tau;
  Rational c_inv;

  Rational at(const Tau& tau) const {
    return c0 + c_tau * tau.value() + c_inv / tau.minus_one();
  }
  /// Rendering such as "7-2τ-1/(τ-1)", "3/(τ-1)" or "15/2-5τ/2".
  std::string text() const;
  friend bool operator==(const ExponentForm&, const ExponentForm&) = default;
};

/// Parses the rendering produced by ExponentForm::text() (and the ASCII
/// spelling with "tau" or "t" for τ). Terms may appear in any order.
ExponentForm parse_exponent(std::string_view text);

}  // namespace sfmotif
