#pragma once
// Band-edge solver for the Lame and associated Lame potentials via residue
// analysis of the logarithmic derivative of the wavefunction.
//
// Outline.  With t = sn(x,m) the Schrodinger equation -psi'' + (V - E) psi = 0
// maps to a Riccati equation chi^2 + chi' + W(t) = 0 for the transformed
// logarithmic derivative chi(t).  chi has fixed simple poles at t = +-1 and
// t = +-1/sqrt(m) whose residues (b1, d1) are roots of a quadratic, plus
// moving simple poles of unit residue located at the roots of a polynomial
// P_n.  Each admissible residue set gives a wavefunction factorisation
//
//   psi(x) = (cn x)^alpha (dn x)^beta P_n(sn x),
//   alpha = (4 b1 - 1)/2,  beta = (4 d1 - 1)/2,
//
// and P_n satisfies u P'' + c1 P' + c0 P = 0 with polynomial coefficients
//
//   u(t)  = (1 - t^2)(1 - m t^2)
//   c1(t) = -[(2a+1) + (2b+1) m] t + 2 (a+b+1) m t^3          (a=alpha, b=beta)
//   c0(t) = E - a^2 - b^2 m + m [s(s+1) - j(j+1)] t^2,  s = a + b.
//
// Restricted to parity-allowed powers t^n, t^{n-2}, ... this is a square
// linear system (A0 + E A1) c = 0 of dimension floor(n/2)+1; its eigenvalues
// are the band-edge energies and its null vectors the polynomial coefficients.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bandedge/elliptic.hpp"
#include "bandedge/potentials.hpp"
#include "bandedge/rational.hpp"

namespace bandedge {

enum class Parity { Even, Odd };
enum class BlochPhase { Periodic, Antiperiodic, Unknown };
enum class FixedPole { PlusOne, InverseRootM };  // t = 1 and t = 1/sqrt(m)

struct ResidueCandidates {
  std::array<Rational, 2> b1;  // residues at t = +-1
  std::array<Rational, 2> d1;  // residues at t = +-1/sqrt(m)
};

// One residue set: fixed-pole residues, exponents, degree and parity of the
// moving-pole polynomial, and the number of band edges it contributes.
struct SolutionFamily {
  int set_id = 0;
  Rational b1;
  Rational d1;
  int lambda1 = 0;  // leading 1/t coefficient of chi at infinity
  int alpha = 0;    // exponent of cn
  int beta = 0;     // exponent of dn
  int n = 0;        // degree of P_n
  Parity parity = Parity::Even;
  int expected_count = 0;  // floor(n/2) + 1
};

// Polynomial with only even or only odd powers, stored from the top power
// down: coeffs[i] multiplies t^(nominal - 2i).
struct ParityPolynomial {
  Parity parity = Parity::Even;
  int degree = 0;  // actual degree (nominal unless the leading coefficient vanished)
  std::vector<double> coeffs;

  int nominal_degree() const {
    const int base = parity == Parity::Odd ? 1 : 0;
    return base + 2 * (static_cast<int>(coeffs.size()) - 1);
  }

  double operator()(double t) const {
    double acc = 0.0;
    for (const double c : coeffs) acc = acc * t * t + c;
    return parity == Parity::Odd ? acc * t : acc;
  }

  double derivative(double t) const {
    const int n = nominal_degree();
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const int p = n - 2 * static_cast<int>(i);
      if (p >= 1) acc += coeffs[i] * p * std::pow(t, p - 1);
    }
    return acc;
  }

  double second_derivative(double t) const {
    const int n = nominal_degree();
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const int p = n - 2 * static_cast<int>(i);
      if (p >= 2) acc += coeffs[i] * p * (p - 1) * std::pow(t, p - 2);
    }
    return acc;
  }
};

// Linear pencil (A0 + E A1) c = 0 over the parity-allowed coefficients of
// P_n, ordered by descending power.  The construction keeps A1 = I.
struct MatrixPencil {
  Eigen::MatrixXd A0;
  Eigen::MatrixXd A1;
  int dim = 0;
  SolutionFamily family;
};

struct BandEdgeSolution {
  double energy = 0.0;  // offset applied
  SolutionFamily family;
  ParityPolynomial poly;  // normalized: largest-magnitude coefficient is 1
  int total_zeros = 0;
  int real_zeros_in_period = 0;
  BlochPhase bloch_phase = BlochPhase::Unknown;
  bool degree_deficient = false;
  PotentialSpec spec;
};

struct BandEdgeSpectrum {
  PotentialSpec spec;
  std::vector<BandEdgeSolution> solutions;  // ascending in energy

  std::vector<double> energies() const {
    std::vector<double> out;
    out.reserve(solutions.size());
    for (const auto& s : solutions) out.push_back(s.energy);
    return out;
  }
};

struct ZeroCensus {
  int total_zeros = 0;           // complex roots of P_n plus the cn zero when alpha = 1
  int real_zeros_in_period = 0;  // sign changes over one fundamental period
};

// The meromorphic form of chi(t): fixed-pole residues, moving poles as roots
// of P_n (each of residue one, via P'/P), and the additive constant, which is
// zero for every consistent pencil.
struct ChiExpansion {
  double b1 = 0.0;
  double b1p = 0.0;
  double d1 = 0.0;
  double d1p = 0.0;
  ParityPolynomial poly;
  double constant = 0.0;
};

namespace detail {

inline double u_poly(double t, double m) {
  const double t2 = t * t;
  return (1.0 - t2) * (1.0 - m * t2);
}
inline double u_poly_d1(double t, double m) { return -2.0 * t * (1.0 + m) + 4.0 * m * t * t * t; }
inline double u_poly_d2(double t, double m) { return -2.0 * (1.0 + m) + 12.0 * m * t * t; }

inline double potential_t(Family fam, double jj, double m, double t) {
  const double t2 = t * t;
  if (fam == Family::Lame) return jj * m * t2;
  return jj * m * (t2 + (1.0 - t2) / (1.0 - m * t2));
}

// Inhomogeneous part of the Riccati equation chi^2 + chi' + W = 0, obtained
// from the change of variable t = sn x with (dt/dx)^2 = u(t):
//   W = (E - V(t)) / u - u'' / (4u) + 3 u'^2 / (16 u^2).
inline double riccati_inhomogeneous(Family fam, double jj, double m, double E, double t) {
  const double u = u_poly(t, m);
  const double u1 = u_poly_d1(t, m);
  const double u2 = u_poly_d2(t, m);
  return (E - potential_t(fam, jj, m, t)) / u - u2 / (4.0 * u) + 3.0 * u1 * u1 / (16.0 * u * u);
}

// Sum of the fixed-pole terms of chi and its derivative.
inline double residue_sum(double b1, double d1, double m, double t) {
  const double td = 1.0 / std::sqrt(m);
  return b1 / (t - 1.0) + b1 / (t + 1.0) + d1 / (t - td) + d1 / (t + td);
}
inline double residue_sum_d1(double b1, double d1, double m, double t) {
  const double td = 1.0 / std::sqrt(m);
  const auto sq = [](double v) { return v * v; };
  return -b1 / sq(t - 1.0) - b1 / sq(t + 1.0) - d1 / sq(t - td) - d1 / sq(t + td);
}

// E-independent part of c0(t); E adds to the constant term.
inline double c0_closed(const SolutionFamily& f, double jj, double m, double E, double t) {
  const double s = f.alpha + f.beta;
  return E - f.alpha * f.alpha - f.beta * f.beta * m + m * (s * (s + 1.0) - jj) * t * t;
}

inline double ipow(double base, int e) {
  if (e == 0) return 1.0;
  const bool neg = e < 0;
  double acc = 1.0;
  for (int i = 0; i < (neg ? -e : e); ++i) acc *= base;
  return neg ? 1.0 / acc : acc;
}

// Polynomial extrapolation of g to 0 from samples g(x_k), Neville scheme.
inline double extrapolate_to_zero(const std::vector<double>& xs, std::vector<double> ys) {
  const std::size_t K = xs.size();
  for (std::size_t j = 1; j < K; ++j)
    for (std::size_t i = K - 1; i >= j; --i)
      ys[i] = (xs[i - j] * ys[i] - xs[i] * ys[i - 1]) / (xs[i - j] - xs[i]);
  return ys[K - 1];
}

}  // namespace detail

// Candidate residues at the fixed poles.  At t = +-1 both families give
// {3/4, 1/4}; at t = +-1/sqrt(m) the associated potential shifts them to the
// j-dependent pair {(3+2j)/4, (1-2j)/4}.
inline ResidueCandidates fixed_residues(const PotentialSpec& spec) {
  spec.validate();
  ResidueCandidates rc;
  rc.b1 = {Rational{3, 4}, Rational{1, 4}};
  if (spec.family == Family::Lame) {
    rc.d1 = {Rational{3, 4}, Rational{1, 4}};
  } else {
    rc.d1 = {Rational{3 + 2 * spec.j, 4}, Rational{1 - 2 * spec.j, 4}};
  }
  return rc;
}

// Independent rederivation of the fixed-pole residues: extrapolate the
// double-pole coefficient w2 of W at the pole and solve r^2 - r + w2 = 0,
// which is the leading Laurent order of the Riccati equation.
inline std::array<double, 2> residue_quadratic_check(const PotentialSpec& spec, FixedPole pole) {
  spec.validate();
  const double m = spec.m;
  const double td = 1.0 / std::sqrt(m);
  const double tp = pole == FixedPole::PlusOne ? 1.0 : td;
  const std::array<double, 3> others = pole == FixedPole::PlusOne
                                           ? std::array<double, 3>{-1.0, td, -td}
                                           : std::array<double, 3>{1.0, -1.0, -td};
  double dist = 1e300;
  for (const double o : others) dist = std::min(dist, std::abs(tp - o));

  const double eps0 = std::min(0.01, dist / 10.0);
  constexpr int kPoints = 7;
  std::vector<double> xs(kPoints), ys(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    const double e = std::ldexp(eps0, -k);
    xs[k] = e;
    ys[k] = e * e * detail::riccati_inhomogeneous(spec.family, spec.jj(), m, 0.0, tp + e);
  }
  const double w2 = detail::extrapolate_to_zero(xs, ys);

  double disc = 1.0 - 4.0 * w2;
  if (disc < -1e-10)
    throw std::runtime_error("residue_quadratic_check: negative discriminant");
  disc = std::max(disc, 0.0);
  const double s = std::sqrt(disc);
  return {0.5 * (1.0 + s), 0.5 * (1.0 - s)};
}

// Enumerate residue sets for a signed potential parameter.  Both leading
// behaviours of chi at infinity (lambda1 = j+1 and -j) are formed; sets with
// negative polynomial degree are dropped.  j and -j-1 give identical sets,
// matching the j(j+1) invariance of the potential.
inline std::vector<SolutionFamily> enumerate_families(Family family, int j_param) {
  if (j_param == 0 || j_param == -1)
    throw std::domain_error("enumerate_families: j(j+1) = 0 has no bands");

  const std::array<int, 2> b_quarters = {1, 3};  // numerators over 4
  const std::array<int, 2> d_quarters = family == Family::Lame
                                            ? std::array<int, 2>{1, 3}
                                            : std::array<int, 2>{1 - 2 * j_param, 3 + 2 * j_param};
  const std::array<int, 2> lambdas = {j_param + 1, -j_param};

  std::vector<SolutionFamily> out;
  for (const int lambda1 : lambdas) {
    for (const int qb : b_quarters) {
      for (const int qd : d_quarters) {
        const int n = lambda1 - (qb + qd) / 2;  // qb + qd is even (both odd)
        if (n < 0) continue;
        SolutionFamily f;
        f.b1 = Rational{qb, 4};
        f.d1 = Rational{qd, 4};
        f.lambda1 = lambda1;
        f.alpha = (qb - 1) / 2;
        f.beta = (qd - 1) / 2;
        f.n = n;
        f.parity = n % 2 == 0 ? Parity::Even : Parity::Odd;
        f.expected_count = n / 2 + 1;
        if (family == Family::Lame) {
          f.set_id = 1 + f.alpha + 2 * f.beta;  // (a,b): (0,0)->1 (1,0)->2 (0,1)->3 (1,1)->4
        } else {
          f.set_id = f.alpha == 1 ? 1 : 2;
        }
        out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SolutionFamily& a, const SolutionFamily& b) { return a.set_id < b.set_id; });
  return out;
}

inline std::vector<SolutionFamily> enumerate_families(const PotentialSpec& spec) {
  spec.validate();
  return enumerate_families(spec.family, spec.j);
}

namespace detail {

// Mechanical assembly of the cleared polynomial identity.  The parity-power
// rows of M(t) [u P'' + c1 P' + c0 P] are collected for M = 1 (the production
// clearing, multiplier (t^2-1)(m t^2-1) already applied in u, c1, c0) or for
// the extra factor M = (m t^2 - 1), which reproduces the over-cleared
// multiplier (t^2-1)(m t^2-1)^2 and creates redundant rows.
struct ClearedRows {
  Eigen::MatrixXd A0;
  Eigen::MatrixXd A1;
  std::vector<int> powers;  // descending, one per row
};

inline ClearedRows assemble_cleared_rows(const SolutionFamily& f, double m, double jj,
                                         bool extra_clearing) {
  const double a = f.alpha;
  const double b = f.beta;
  const double s = a + b;

  std::vector<double> u = {1.0, 0.0, -(1.0 + m), 0.0, m};
  std::vector<double> c1 = {0.0, -((2.0 * a + 1.0) + (2.0 * b + 1.0) * m), 0.0, 2.0 * (s + 1.0) * m};
  std::vector<double> c0a = {-(a * a + b * b * m), 0.0, m * (s * (s + 1.0) - jj)};
  std::vector<double> c0b = {1.0};

  const auto conv = [](const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t k = 0; k < q.size(); ++k) r[i + k] += p[i] * q[k];
    return r;
  };
  if (extra_clearing) {
    const std::vector<double> mex = {-1.0, 0.0, m};
    u = conv(u, mex);
    c1 = conv(c1, mex);
    c0a = conv(c0a, mex);
    c0b = conv(c0b, mex);
  }

  const int n = f.n;
  const int base = f.parity == Parity::Odd ? 1 : 0;
  const int dim = f.expected_count;
  const int top = n + (extra_clearing ? 4 : 2);
  const int nrows = (top - base) / 2 + 1;

  ClearedRows rows;
  rows.A0 = Eigen::MatrixXd::Zero(nrows, dim);
  rows.A1 = Eigen::MatrixXd::Zero(nrows, dim);
  rows.powers.resize(nrows);
  for (int r = 0; r < nrows; ++r) rows.powers[r] = top - 2 * r;

  const auto deposit = [&](Eigen::MatrixXd& dst, int col, int base_power, double factor,
                           const std::vector<double>& poly) {
    if (factor == 0.0) return;
    for (std::size_t idx = 0; idx < poly.size(); ++idx) {
      if (poly[idx] == 0.0) continue;
      const int p = base_power + static_cast<int>(idx);
      const int r = (top - p) / 2;
      dst(r, col) += factor * poly[idx];
    }
  };

  for (int c = 0; c < dim; ++c) {
    const int k = n - 2 * c;  // monomial t^k
    deposit(rows.A0, c, k - 2, static_cast<double>(k) * (k - 1), u);
    deposit(rows.A0, c, k - 1, static_cast<double>(k), c1);
    deposit(rows.A0, c, k, 1.0, c0a);
    deposit(rows.A1, c, k, 1.0, c0b);
  }
  return rows;
}

}  // namespace detail

// Closed-form pencil.  Row r collects the coefficient of t^(n-2r); the image
// of the top monomial never reaches power n+2 because (n+s)(n+s+1) = j(j+1)
// for every admissible residue set, so the system is square with A1 = I.
inline MatrixPencil build_pencil(const SolutionFamily& f, const PotentialSpec& spec) {
  spec.validate();
  const double m = spec.m;
  const double jj = spec.jj();
  const double a = f.alpha;
  const double b = f.beta;
  const double s = a + b;
  const int dim = f.expected_count;

  MatrixPencil pencil;
  pencil.dim = dim;
  pencil.family = f;
  pencil.A1 = Eigen::MatrixXd::Identity(dim, dim);
  pencil.A0 = Eigen::MatrixXd::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    const double k = f.n - 2 * c;
    pencil.A0(c, c) = -a * a - b * b * m - (1.0 + m) * k * (k - 1.0) -
                      ((2.0 * a + 1.0) + (2.0 * b + 1.0) * m) * k;
    if (c + 1 < dim) pencil.A0(c + 1, c) = k * (k - 1.0);
    if (c - 1 >= 0) pencil.A0(c - 1, c) = m * ((k + s) * (k + s + 1.0) - jj);
  }
  return pencil;
}

namespace detail {

inline std::vector<std::pair<double, Eigen::VectorXd>> solve_pencil(const MatrixPencil& p) {
  const int dim = p.dim;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(p.A1);
  if (!lu.isInvertible())
    throw std::runtime_error("pencil: A1 is singular");
  const Eigen::MatrixXd B = -lu.solve(p.A0);

  std::vector<double> energies;
  if (dim == 1) {
    energies = {B(0, 0)};
  } else if (dim == 2) {
    const double half_tr = 0.5 * B.trace();
    const double det = B.determinant();
    double disc = half_tr * half_tr - det;
    const double scale = std::max(1.0, half_tr * half_tr + std::abs(det));
    if (disc < -1e-8 * scale)
      throw std::runtime_error("pencil: complex eigenvalue pair in 2x2 block");
    disc = std::max(disc, 0.0);
    const double root = std::sqrt(disc);
    energies = {half_tr - root, half_tr + root};
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(B);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("pencil: eigensolver failed to converge");
    for (int i = 0; i < dim; ++i) {
      const std::complex<double> e = es.eigenvalues()(i);
      if (std::abs(e.imag()) > 1e-8 * std::max(1.0, std::abs(e.real())))
        throw std::runtime_error("pencil: eigenvalue has non-negligible imaginary part");
      energies.push_back(e.real());
    }
    std::sort(energies.begin(), energies.end());
  }

  std::vector<std::pair<double, Eigen::VectorXd>> out;
  out.reserve(dim);
  for (const double e : energies) {
    if (dim == 1) {
      out.emplace_back(e, Eigen::VectorXd::Ones(1));
      continue;
    }
    const Eigen::MatrixXd M = p.A0 + e * p.A1;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    out.emplace_back(e, svd.matrixV().col(dim - 1));
  }
  return out;
}

}  // namespace detail

/// Pencil eigenvalues (pre-offset energies), ascending.
inline std::vector<double> band_edge_energies(const MatrixPencil& pencil) {
  std::vector<double> out;
  for (const auto& [e, v] : detail::solve_pencil(pencil)) out.push_back(e);
  return out;
}

inline double evaluate_wavefunction(const BandEdgeSolution& sol, double x) {
  const JacobiValues v = jacobi(x, sol.spec.m);
  double val = sol.poly(v.sn);
  if (sol.family.alpha == 1) val *= v.cn;
  if (sol.family.beta != 0) val *= detail::ipow(v.dn, sol.family.beta);
  return val;
}

// Zero bookkeeping: all roots of P_n (real or complex) are wavefunction
// zeros, plus the cn zero when alpha = 1; dn never vanishes on the real
// axis and its zeros are not counted.  Real zeros are counted as sign
// changes over one fundamental period on a 4096-point grid, shifted by a
// small fraction of the period so no sample lands exactly on a zero.
inline ZeroCensus zero_census(const BandEdgeSolution& sol, const PotentialSpec& spec) {
  ZeroCensus census;
  census.total_zeros = sol.poly.degree + (sol.family.alpha == 1 ? 1 : 0);

  const double period = fundamental_period(spec);
  constexpr int kSamples = 4096;
  const double shift = period * 6.18e-7;

  std::vector<double> vals(kSamples + 1);
  double maxabs = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    vals[i] = evaluate_wavefunction(sol, shift + i * period / kSamples);
    maxabs = std::max(maxabs, std::abs(vals[i]));
  }
  const double tiny = 1e-12 * maxabs;
  int prev = 0;
  int flips = 0;
  for (int i = 0; i <= kSamples; ++i) {
    const int sign = std::abs(vals[i]) <= tiny ? 0 : (vals[i] > 0.0 ? 1 : -1);
    if (sign == 0) continue;
    if (prev != 0 && sign != prev) ++flips;
    prev = sign;
  }
  census.real_zeros_in_period = flips;
  return census;
}

inline BandEdgeSolution assemble_solution(const SolutionFamily& f, const PotentialSpec& spec,
                                          double energy_pre_offset,
                                          const Eigen::VectorXd& coeffs) {
  spec.validate();
  if (coeffs.size() != f.expected_count)
    throw std::invalid_argument("assemble_solution: coefficient count does not match the family");
  const double norm = coeffs.cwiseAbs().maxCoeff();
  if (!(norm > 0.0))
    throw std::invalid_argument("assemble_solution: zero eigenvector");

  int pivot = 0;
  for (int i = 1; i < coeffs.size(); ++i)
    if (std::abs(coeffs(i)) > std::abs(coeffs(pivot))) pivot = i;

  BandEdgeSolution sol;
  sol.spec = spec;
  sol.family = f;
  sol.energy = energy_pre_offset + spec.offset;
  sol.poly.parity = f.parity;
  sol.poly.coeffs.resize(coeffs.size());
  for (int i = 0; i < coeffs.size(); ++i) sol.poly.coeffs[i] = coeffs(i) / coeffs(pivot);

  int lead = 0;
  while (lead + 1 < static_cast<int>(sol.poly.coeffs.size()) &&
         std::abs(sol.poly.coeffs[lead]) <= 1e-9)
    ++lead;
  sol.poly.degree = f.n - 2 * lead;
  sol.degree_deficient = lead > 0;

  const ZeroCensus census = zero_census(sol, spec);
  sol.total_zeros = census.total_zeros;
  sol.real_zeros_in_period = census.real_zeros_in_period;
  return sol;
}

// All band edges of the spec: every family's pencil solved, offsets applied,
// sorted ascending (stable in set_id for ties).  Exactly 2j+1 solutions.
inline BandEdgeSpectrum full_spectrum(const PotentialSpec& spec) {
  spec.validate();
  BandEdgeSpectrum spectrum;
  spectrum.spec = spec;
  for (const SolutionFamily& f : enumerate_families(spec)) {
    const MatrixPencil pencil = build_pencil(f, spec);
    const auto pairs = detail::solve_pencil(pencil);
    if (static_cast<int>(pairs.size()) != f.expected_count)
      throw std::runtime_error("full_spectrum: family produced an unexpected solution count");
    for (const auto& [e, v] : pairs)
      spectrum.solutions.push_back(assemble_solution(f, spec, e, v));
  }
  std::stable_sort(spectrum.solutions.begin(), spectrum.solutions.end(),
                   [](const BandEdgeSolution& a, const BandEdgeSolution& b) {
                     return a.energy < b.energy;
                   });
  if (static_cast<int>(spectrum.solutions.size()) != 2 * spec.j + 1)
    throw std::runtime_error("full_spectrum: band-edge count is not 2j+1");
  return spectrum;
}

inline ChiExpansion chi_expansion(const BandEdgeSolution& sol) {
  ChiExpansion chi;
  chi.b1 = chi.b1p = sol.family.b1.value();
  chi.d1 = chi.d1p = sol.family.d1.value();
  chi.poly = sol.poly;
  chi.constant = 0.0;
  return chi;
}

inline double chi_eval(const ChiExpansion& chi, double m, double t) {
  const double td = 1.0 / std::sqrt(m);
  return chi.b1 / (t - 1.0) + chi.b1p / (t + 1.0) + chi.d1 / (t - td) + chi.d1p / (t + td) +
         chi.poly.derivative(t) / chi.poly(t) + chi.constant;
}

/// Residual of the Riccati equation chi^2 + chi' + W = 0 at t, all parts analytic.
inline double riccati_residual(const BandEdgeSolution& sol, double t) {
  const double m = sol.spec.m;
  const ChiExpansion chi = chi_expansion(sol);
  const double P = chi.poly(t);
  const double P1 = chi.poly.derivative(t);
  const double P2 = chi.poly.second_derivative(t);
  const double S = detail::residue_sum(chi.b1, chi.d1, m, t);
  const double S1 = detail::residue_sum_d1(chi.b1, chi.d1, m, t);
  const double c = S + P1 / P;
  const double c1 = S1 + P2 / P - (P1 / P) * (P1 / P);
  const double E0 = sol.energy - sol.spec.offset;
  return std::abs(c * c + c1 + detail::riccati_inhomogeneous(sol.spec.family, sol.spec.jj(), m, E0, t));
}

// The residue choice must cancel the apparent double poles of the P_n
// equation: u (S^2 + S' + W) is then the quadratic c0(t).  Probes near each
// fixed pole report the worst relative mismatch.
inline double pole_cancellation_residual(const SolutionFamily& f, const PotentialSpec& spec) {
  spec.validate();
  const double m = spec.m;
  const double jj = spec.jj();
  const double b1 = f.b1.value();
  const double d1 = f.d1.value();
  const double td = 1.0 / std::sqrt(m);
  const std::array<double, 4> poles = {1.0, -1.0, td, -td};

  double worst = 0.0;
  for (const double p : poles) {
    double dist = 1e300;
    for (const double o : poles)
      if (o != p) dist = std::min(dist, std::abs(p - o));
    for (const double mag : {0.01, 0.02}) {
      for (const double sgn : {1.0, -1.0}) {
        const double t = p + sgn * mag * std::min(1.0, dist / 0.08);
        const double S = detail::residue_sum(b1, d1, m, t);
        const double S1 = detail::residue_sum_d1(b1, d1, m, t);
        const double E = 0.0;
        const double G = S * S + S1 + detail::riccati_inhomogeneous(spec.family, jj, m, E, t);
        const double lhs = detail::u_poly(t, m) * G;
        const double rhs = detail::c0_closed(f, jj, m, E, t);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }
  }
  return worst;
}

// Clearing with the extra (m t^2 - 1) factor over-determines the system; the
// redundant rows must lie in the span of the retained square block.  Returns
// the worst least-squares residual over the extra rows at two probe energies.
inline double cleared_rows_consistency_residual(const SolutionFamily& f,
                                                const PotentialSpec& spec) {
  spec.validate();
  const detail::ClearedRows rows =
      detail::assemble_cleared_rows(f, spec.m, spec.jj(), /*extra_clearing=*/true);
  const int dim = f.expected_count;
  const int nrows = static_cast<int>(rows.powers.size());
  const int extras = nrows - dim;

  double worst = 0.0;
  for (const double E : {0.3, 1.7}) {
    const Eigen::MatrixXd full = rows.A0 + E * rows.A1;
    const Eigen::MatrixXd retained = full.bottomRows(dim);  // powers n down to the parity floor
    const Eigen::MatrixXd basis = retained.transpose();
    for (int r = 0; r < extras; ++r) {
      const Eigen::VectorXd x = full.row(r).transpose();
      const Eigen::VectorXd y = basis.colPivHouseholderQr().solve(x);
      worst = std::max(worst, (basis * y - x).norm() / std::max(1.0, x.norm()));
    }
  }
  return worst;
}

}  // namespace bandedge
