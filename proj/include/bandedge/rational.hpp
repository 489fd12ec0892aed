#pragma once
// Minimal exact rational type for the fixed-pole residues.  The residues
// b1, d1 are quarter-integers whose exact values feed integer exponents;
// carrying them in floating point would corrupt that bookkeeping.

#include <numeric>
#include <stdexcept>
#include <string>

namespace bandedge {

struct Rational {
  int num = 0;
  int den = 1;

  constexpr Rational() = default;
  constexpr Rational(int n, int d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const int g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  constexpr double value() const { return static_cast<double>(num) / den; }

  constexpr friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// (4r - 1) / 2 for a quarter-integer residue r; integral by construction
// for every residue this solver produces.
constexpr int half_odd_exponent(const Rational& r) {
  const int four_r = 4 * r.num / r.den;  // exact: den divides 4
  if (r.den != 1 && r.den != 2 && r.den != 4)
    throw std::domain_error("half_odd_exponent: residue is not a quarter-integer");
  const int shifted = four_r - 1;
  if (shifted % 2 != 0)
    throw std::domain_error("half_odd_exponent: exponent is not an integer");
  return shifted / 2;
}

}  // namespace bandedge
