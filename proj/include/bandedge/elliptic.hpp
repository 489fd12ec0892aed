#pragma once
// Jacobi elliptic functions sn, cn, dn and the complete elliptic integral of
// the first kind K(m), computed with the arithmetic-geometric mean and the
// descending Landen transformation (Abramowitz & Stegun 16.4 / 17.6).
//
// Convention: the parameter is m = k^2 with 0 <= m < 1.  m = 1 is an explicit
// domain error (hyperbolic degeneration, infinite period), not a limit case.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bandedge {

struct JacobiValues {
  double x = 0.0;
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

namespace detail {

constexpr double kLandenTol = 1e-15;  // stop once the descending modulus c/a drops below this
constexpr int kAgmMaxIter = 32;

inline void require_modulus(double m) {
  if (!(m >= 0.0 && m < 1.0))
    throw std::domain_error("elliptic: modulus m must satisfy 0 <= m < 1");
}

}  // namespace detail

/// K(m) = pi / (2 agm(1, sqrt(1-m))); strictly increasing on [0, 1).
inline double complete_K(double m) {
  detail::require_modulus(m);
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int i = 0; i < detail::kAgmMaxIter && (a - b) > detail::kLandenTol * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

/// sn, cn, dn at real argument x.  The argument is reduced modulo the real
/// period 4K(m) before the Landen recursion so large |x| does not degrade the
/// amplitude unwinding.
inline JacobiValues jacobi(double x, double m) {
  detail::require_modulus(m);
  if (!std::isfinite(x)) throw std::domain_error("jacobi: argument must be finite");

  const double quarter = complete_K(m);
  const double xr = std::remainder(x, 4.0 * quarter);  // in [-2K, 2K]

  // AGM chain; c[i]/a[i] is the descending modulus.
  double a[detail::kAgmMaxIter + 1];
  double c[detail::kAgmMaxIter + 1];
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (n < detail::kAgmMaxIter && c[n] > detail::kLandenTol * a[n]) {
    const double an = 0.5 * (a[n] + b);
    const double cn1 = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
    a[n] = an;
    c[n] = cn1;
  }

  // Amplitude unwinding: phi_n = 2^n a_n x, then
  // phi_{i-1} = (phi_i + asin((c_i/a_i) sin phi_i)) / 2.
  double phi = std::ldexp(a[n] * xr, n);
  for (int i = n; i >= 1; --i) {
    const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }

  JacobiValues v;
  v.x = x;
  v.sn = std::sin(phi);
  v.cn = std::cos(phi);
  v.dn = std::sqrt(1.0 - m * v.sn * v.sn);  // dn > 0 on the real axis for m < 1
  return v;
}

}  // namespace bandedge
