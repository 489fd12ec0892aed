#pragma once
// Independent verification of the band edges: plane-wave (Hill-matrix)
// discretisation of the periodic Schrodinger operator over one fundamental
// period, solved for Bloch phase 0 (periodic) and pi (antiperiodic).  The
// potentials are analytic, so the truncated spectra converge spectrally.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bandedge/potentials.hpp"
#include "bandedge/qhj.hpp"

namespace bandedge {

struct OracleConfig {
  int modes = 128;  // plane waves exp(2 pi i q x / L), q = -modes..modes
  BlochPhase phase = BlochPhase::Periodic;
  double period = 0.0;

  void validate() const {
    if (modes < 16) throw std::domain_error("oracle: modes must be >= 16");
    if (!(period > 0.0)) throw std::domain_error("oracle: period must be positive");
    if (phase == BlochPhase::Unknown)
      throw std::domain_error("oracle: Bloch phase must be periodic or antiperiodic");
  }
};

struct BlochSpectrum {
  BlochPhase phase = BlochPhase::Periodic;
  int modes = 0;
  std::vector<double> eigenvalues;  // ascending
};

struct LabeledEdge {
  double energy = 0.0;
  BlochPhase phase = BlochPhase::Unknown;
};

struct EdgeMatch {
  std::size_t index = 0;
  double qhj_energy = 0.0;
  double oracle_energy = 0.0;
  double delta = 0.0;
  BlochPhase phase = BlochPhase::Unknown;
  bool matched = false;
};

struct VerificationReport {
  bool pass = false;
  double max_delta = 0.0;
  int modes = 0;
  double tolerance = 0.0;
  std::vector<EdgeMatch> edges;
};

namespace detail {

// Fourier coefficients f_q = (1/L) integral f(x) exp(-2 pi i q x / L) dx for
// q = -max_harmonic..max_harmonic (index q + max_harmonic), by trapezoid
// quadrature on 8*max_harmonic points; spectrally accurate for smooth f.
template <typename F>
std::vector<std::complex<double>> fourier_coefficients(const F& f, double period,
                                                       int max_harmonic) {
  if (!(period > 0.0)) throw std::domain_error("fourier: period must be positive");
  if (max_harmonic < 1) throw std::domain_error("fourier: max_harmonic must be >= 1");

  const int points = 8 * max_harmonic;
  std::vector<double> samples(points);
  for (int k = 0; k < points; ++k) samples[k] = f(k * period / points);

  std::vector<std::complex<double>> out(2 * max_harmonic + 1);
  for (int q = -max_harmonic; q <= max_harmonic; ++q) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < points; ++k) {
      const double arg = -2.0 * std::numbers::pi * q * k / points;
      acc += samples[k] * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    out[q + max_harmonic] = acc / static_cast<double>(points);
  }
  return out;
}

// Hill matrix eigenvalues: kinetic diagonal (theta/L + 2 pi q/L)^2 plus the
// Toeplitz potential block V_{q-q'}.  V must be real and even, so the matrix
// assembles real symmetric through |q - q'|.
template <typename F>
std::vector<double> hill_eigenvalues(const F& potential, double period, double theta,
                                     int n_modes) {
  const auto vq = fourier_coefficients(potential, period, 2 * n_modes);
  std::vector<double> vre(2 * n_modes + 1);
  for (int q = 0; q <= 2 * n_modes; ++q) vre[q] = vq[q + 2 * n_modes].real();

  const int dim = 2 * n_modes + 1;
  Eigen::MatrixXd h(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const double wave = (theta + 2.0 * std::numbers::pi * (a - n_modes)) / period;
    for (int b = 0; b < dim; ++b) h(a, b) = vre[std::abs(a - b)];
    h(a, a) += wave * wave;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("oracle: eigensolver failed to converge");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + dim};
}

}  // namespace detail

inline std::vector<std::complex<double>> potential_fourier(const PotentialSpec& spec,
                                                           double period, int max_harmonic) {
  spec.validate();
  return detail::fourier_coefficients([&](double x) { return evaluate(spec, x); }, period,
                                      max_harmonic);
}

inline BlochSpectrum bloch_eigenvalues(const PotentialSpec& spec, const OracleConfig& config) {
  spec.validate();
  config.validate();
  const double theta = config.phase == BlochPhase::Periodic ? 0.0 : std::numbers::pi;
  BlochSpectrum out;
  out.phase = config.phase;
  out.modes = config.modes;
  out.eigenvalues = detail::hill_eigenvalues([&](double x) { return evaluate(spec, x); },
                                             config.period, theta, config.modes);
  return out;
}

// Lowest `count` band edges with phase labels, in the standard alternation
// p, a, a, p, p, a, a, ...: one periodic edge, then alternating pairs.
inline std::vector<LabeledEdge> band_edges(const PotentialSpec& spec, int modes,
                                           std::size_t count) {
  spec.validate();
  const double period = fundamental_period(spec);
  const BlochSpectrum per = bloch_eigenvalues(spec, {modes, BlochPhase::Periodic, period});
  const BlochSpectrum anti = bloch_eigenvalues(spec, {modes, BlochPhase::Antiperiodic, period});
  if (count + 2 > per.eigenvalues.size())
    throw std::domain_error("band_edges: requested more edges than the oracle resolves");

  std::vector<LabeledEdge> out;
  out.push_back({per.eigenvalues[0], BlochPhase::Periodic});
  for (std::size_t k = 0; out.size() < count; ++k) {
    out.push_back({anti.eigenvalues[2 * k], BlochPhase::Antiperiodic});
    if (out.size() == count) break;
    out.push_back({anti.eigenvalues[2 * k + 1], BlochPhase::Antiperiodic});
    if (out.size() == count) break;
    out.push_back({per.eigenvalues[2 * k + 1], BlochPhase::Periodic});
    if (out.size() == count) break;
    out.push_back({per.eigenvalues[2 * k + 2], BlochPhase::Periodic});
  }
  return out;
}

inline std::vector<LabeledEdge> band_edges(const PotentialSpec& spec, int modes) {
  return band_edges(spec, modes, static_cast<std::size_t>(2 * spec.j + 2));
}

// Positional match of the analytic band edges against the oracle edges; fills
// the Bloch phase of every matched solution.
inline VerificationReport verify(const PotentialSpec& spec, BandEdgeSpectrum& spectrum,
                                 int modes, double tolerance) {
  spec.validate();
  if (spectrum.solutions.size() != static_cast<std::size_t>(2 * spec.j + 1))
    throw std::invalid_argument("verify: spectrum does not hold 2j+1 band edges");

  const auto edges = band_edges(spec, modes, spectrum.solutions.size());
  VerificationReport report;
  report.modes = modes;
  report.tolerance = tolerance;
  report.pass = true;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    EdgeMatch match;
    match.index = i;
    match.qhj_energy = spectrum.solutions[i].energy;
    match.oracle_energy = edges[i].energy;
    match.delta = std::abs(match.qhj_energy - match.oracle_energy);
    match.phase = edges[i].phase;
    match.matched = match.delta <= tolerance;
    spectrum.solutions[i].bloch_phase = match.matched ? edges[i].phase : BlochPhase::Unknown;
    report.max_delta = std::max(report.max_delta, match.delta);
    report.pass = report.pass && match.matched;
    report.edges.push_back(match);
  }
  return report;
}

}  // namespace bandedge
