#pragma once
// Potential families: the Lame potential j(j+1) m sn^2(x,m) and the exactly
// solvable associated Lame potential j(j+1) m (sn^2 + cn^2/dn^2) (equal
// parameters a = b = j), plus their fundamental periods and the additive
// constants that place the lowest band edge at zero.

#include <cmath>
#include <stdexcept>
#include <string>

#include "bandedge/elliptic.hpp"

namespace bandedge {

enum class Family { Lame, AssociatedLame };

inline const char* family_name(Family f) {
  return f == Family::Lame ? "lame" : "associated";
}

struct PotentialSpec {
  Family family = Family::Lame;
  int j = 1;          // potential parameter, >= 1
  double m = 0.5;     // elliptic modulus, 0 < m < 1
  double offset = 0.0;  // additive energy constant

  void validate() const {
    if (j < 1) throw std::domain_error("potential: j must be >= 1");
    if (!(m > 0.0 && m < 1.0))
      throw std::domain_error("potential: modulus m must satisfy 0 < m < 1");
    if (!std::isfinite(offset))
      throw std::domain_error("potential: offset must be finite");
  }

  double jj() const { return static_cast<double>(j) * (j + 1); }
};

inline double evaluate(const PotentialSpec& spec, double x) {
  spec.validate();
  const JacobiValues v = jacobi(x, spec.m);
  const double sn2 = v.sn * v.sn;
  if (spec.family == Family::Lame) return spec.jj() * spec.m * sn2 + spec.offset;
  const double cd2 = (v.cn * v.cn) / (v.dn * v.dn);
  return spec.jj() * spec.m * (sn2 + cd2) + spec.offset;
}

struct SusyOffset {
  double value = 0.0;
  bool published = false;  // false: no closed-form shift known for this case
};

// Additive constant making the lowest band edge exactly zero.  Closed forms
// exist for Lame j = 2 and associated j = 1; other cases return 0, flagged.
inline SusyOffset susy_offset(const PotentialSpec& spec) {
  spec.validate();
  if (spec.family == Family::Lame && spec.j == 2) {
    const double delta = std::sqrt(1.0 - spec.m + spec.m * spec.m);
    return {-2.0 * spec.m - 2.0 + 2.0 * delta, true};
  }
  if (spec.family == Family::AssociatedLame && spec.j == 1) {
    return {-2.0 - spec.m + 2.0 * std::sqrt(1.0 - spec.m), true};
  }
  return {0.0, false};
}

// Fundamental period: 2K(m) for Lame (sn^2 has period 2K), K(m) for the
// equal-parameter associated potential, where the half-period shift swaps
// sn^2 with cn^2/dn^2 and leaves the sum unchanged.
inline double fundamental_period(const PotentialSpec& spec) {
  spec.validate();
  const double quarter = complete_K(spec.m);
  return spec.family == Family::Lame ? 2.0 * quarter : quarter;
}

}  // namespace bandedge
