// bandedge: band-edge spectra of Lame and associated Lame potentials.
//
// Subcommands
//   band-edges     analytic band edges with eigenfunction data (csv or json)
//   verify         cross-check the analytic edges against the plane-wave oracle (json)
//   eigenfunction  sample one band-edge eigenfunction over a period (csv)
//   scan           band edges as a function of the modulus m (csv)
//   tables         residue sets, wavefunction forms and counts for j = 1..8 (json)
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bandedge/elliptic.hpp"
#include "bandedge/oracle.hpp"
#include "bandedge/potentials.hpp"
#include "bandedge/qhj.hpp"

namespace {

using bandedge::BandEdgeSpectrum;
using bandedge::BlochPhase;
using bandedge::Family;
using bandedge::PotentialSpec;
using json = nlohmann::ordered_json;

enum class OutputFormat { Csv, Json };

struct RunRequest {
  std::string subcommand;
  Family family = Family::Lame;
  int j = 1;
  double m = 0.5;
  bool susy_shift = false;
  int modes = 0;  // 0: BANDEDGE_MODES env var or 128
  double tolerance = 1e-8;
  int index = 0;
  int samples = 256;
  double m_from = 0.1;
  double m_to = 0.9;
  int steps = 1;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;
};

std::string format_g10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Energies and coefficients are rounded to 10 significant digits before they
// reach any output, so identical runs produce identical bytes regardless of
// the JSON serializer's shortest-round-trip printing.
double round_10sig(double v) { return std::stod(format_g10(v)); }

Family parse_family(const std::string& name) {
  if (name == "lame") return Family::Lame;
  if (name == "associated") return Family::AssociatedLame;
  throw std::domain_error("unknown family '" + name + "' (expected 'lame' or 'associated')");
}

void validate_request(const RunRequest& req) {
  if (req.j < 1) throw std::domain_error("j must be >= 1");
  if (req.subcommand != "scan" && !(req.m > 0.0 && req.m < 1.0))
    throw std::domain_error("m must satisfy 0 < m < 1");
}

PotentialSpec make_spec(const RunRequest& req, double m) {
  PotentialSpec spec{req.family, req.j, m, 0.0};
  if (req.susy_shift) spec.offset = bandedge::susy_offset(spec).value;
  return spec;
}

int resolve_modes(const RunRequest& req) {
  int modes = req.modes;
  if (modes == 0) {
    if (const char* env = std::getenv("BANDEDGE_MODES")) {
      char* end = nullptr;
      const long parsed = std::strtol(env, &end, 10);
      if (end == env || *end != '\0')
        throw std::domain_error("BANDEDGE_MODES is not an integer");
      modes = static_cast<int>(parsed);
    } else {
      modes = 128;
    }
  }
  if (modes < 16) throw std::domain_error("modes must be >= 16 for the plane-wave oracle");
  return modes;
}

void emit(const RunRequest& req, const std::string& content) {
  if (req.output_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(req.output_path, std::ios::binary);
  if (!out) throw std::domain_error("cannot open output file '" + req.output_path + "'");
  out << content;
}

const char* phase_code(BlochPhase phase) {
  switch (phase) {
    case BlochPhase::Periodic: return "p";
    case BlochPhase::Antiperiodic: return "a";
    default: return "?";
  }
}

std::string psi_form(Family family, int j, const bandedge::SolutionFamily& f) {
  std::ostringstream os;
  if (f.alpha == 1) os << "cn x ";
  if (family == Family::Lame && f.beta == 1) os << "dn x ";
  os << "P_" << f.n << "(sn x)";
  if (family == Family::AssociatedLame) os << " / (dn x)^" << j;
  return os.str();
}

int cmd_band_edges(const RunRequest& req) {
  validate_request(req);
  const PotentialSpec spec = make_spec(req, req.m);
  const BandEdgeSpectrum spectrum = bandedge::full_spectrum(spec);

  if (req.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "index,energy,set_id,alpha,beta,poly_coeffs,total_zeros\n";
    for (std::size_t i = 0; i < spectrum.solutions.size(); ++i) {
      const auto& sol = spectrum.solutions[i];
      os << i << ',' << format_g10(sol.energy) << ',' << sol.family.set_id << ','
         << sol.family.alpha << ',' << sol.family.beta << ',';
      for (std::size_t k = 0; k < sol.poly.coeffs.size(); ++k) {
        if (k) os << ';';
        os << format_g10(sol.poly.coeffs[k]);
      }
      os << ',' << sol.total_zeros << '\n';
    }
    emit(req, os.str());
    return 0;
  }

  json root;
  root["schema_version"] = 1;
  root["family"] = family_name(spec.family);
  root["j"] = spec.j;
  root["m"] = spec.m;
  root["offset"] = round_10sig(spec.offset);
  root["susy_shift"] = req.susy_shift;
  root["susy_offset_published"] = bandedge::susy_offset(spec).published;
  json edges = json::array();
  for (std::size_t i = 0; i < spectrum.solutions.size(); ++i) {
    const auto& sol = spectrum.solutions[i];
    json e;
    e["index"] = i;
    e["energy"] = round_10sig(sol.energy);
    e["set_id"] = sol.family.set_id;
    e["alpha"] = sol.family.alpha;
    e["beta"] = sol.family.beta;
    e["n"] = sol.family.n;
    e["parity"] = sol.poly.parity == bandedge::Parity::Even ? "even" : "odd";
    json coeffs = json::array();
    for (const double c : sol.poly.coeffs) coeffs.push_back(round_10sig(c));
    e["poly_coeffs"] = coeffs;
    e["total_zeros"] = sol.total_zeros;
    e["real_zeros_in_period"] = sol.real_zeros_in_period;
    edges.push_back(e);
  }
  root["band_edges"] = edges;
  emit(req, root.dump(2) + "\n");
  return 0;
}

int cmd_verify(const RunRequest& req) {
  validate_request(req);
  const int modes = resolve_modes(req);
  if (!(req.tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
  const PotentialSpec spec = make_spec(req, req.m);
  BandEdgeSpectrum spectrum = bandedge::full_spectrum(spec);
  const auto report = bandedge::verify(spec, spectrum, modes, req.tolerance);

  json root;
  root["schema_version"] = 1;
  root["family"] = family_name(spec.family);
  root["j"] = spec.j;
  root["m"] = spec.m;
  root["offset"] = round_10sig(spec.offset);
  root["modes"] = report.modes;
  root["tolerance"] = report.tolerance;
  root["pass"] = report.pass;
  root["max_delta"] = round_10sig(report.max_delta);
  json edges = json::array();
  for (const auto& e : report.edges) {
    json row;
    row["index"] = e.index;
    row["qhj_energy"] = round_10sig(e.qhj_energy);
    row["oracle_energy"] = round_10sig(e.oracle_energy);
    row["delta"] = round_10sig(e.delta);
    row["phase"] = phase_code(e.phase);
    row["matched"] = e.matched;
    edges.push_back(row);
  }
  root["edges"] = edges;
  emit(req, root.dump(2) + "\n");
  return report.pass ? 0 : 1;
}

int cmd_eigenfunction(const RunRequest& req) {
  validate_request(req);
  if (req.samples < 1) throw std::domain_error("samples must be >= 1");
  const PotentialSpec spec = make_spec(req, req.m);
  const BandEdgeSpectrum spectrum = bandedge::full_spectrum(spec);
  if (req.index < 0 || req.index >= static_cast<int>(spectrum.solutions.size()))
    throw std::domain_error("index must lie in [0, 2j]");

  const auto& sol = spectrum.solutions[req.index];
  const double period = bandedge::fundamental_period(spec);
  std::ostringstream os;
  os << "x,psi\n";
  for (int i = 0; i < req.samples; ++i) {
    const double x = i * period / req.samples;
    os << format_g10(x) << ',' << format_g10(bandedge::evaluate_wavefunction(sol, x)) << '\n';
  }
  emit(req, os.str());
  return 0;
}

int cmd_scan(const RunRequest& req) {
  validate_request(req);
  if (req.steps < 1) throw std::domain_error("steps must be >= 1");
  std::vector<double> ms;
  if (req.steps == 1) {
    ms.push_back(req.m_from);
  } else {
    for (int i = 0; i < req.steps; ++i)
      ms.push_back(req.m_from + i * (req.m_to - req.m_from) / (req.steps - 1));
  }
  for (const double m : ms)
    if (!(m > 0.0 && m < 1.0)) throw std::domain_error("scan range leaves 0 < m < 1");

  std::ostringstream os;
  os << "m";
  for (int i = 0; i <= 2 * req.j; ++i) os << ",E" << i;
  os << '\n';
  for (const double m : ms) {
    const PotentialSpec spec = make_spec(req, m);
    const BandEdgeSpectrum spectrum = bandedge::full_spectrum(spec);
    os << format_g10(m);
    for (const auto& sol : spectrum.solutions) os << ',' << format_g10(sol.energy);
    os << '\n';
  }
  emit(req, os.str());
  return 0;
}

int cmd_tables(const RunRequest& req) {
  json root;
  root["schema_version"] = 1;
  for (const Family family : {Family::Lame, Family::AssociatedLame}) {
    json entries = json::array();
    for (int j = 1; j <= 8; ++j) {
      json row;
      row["j"] = j;
      json sets = json::array();
      int total = 0;
      for (const auto& f : bandedge::enumerate_families(family, j)) {
        json s;
        s["set"] = f.set_id;
        s["b1"] = f.b1.str();
        s["d1"] = f.d1.str();
        s["n"] = f.n;
        s["psi_form"] = psi_form(family, j, f);
        s["count"] = f.expected_count;
        s["total_zeros"] = f.n + (f.alpha == 1 ? 1 : 0);
        sets.push_back(s);
        total += f.expected_count;
      }
      row["sets"] = sets;
      row["total_solutions"] = total;
      entries.push_back(row);
    }
    root[family == Family::Lame ? "lame" : "associated"] = entries;
  }
  emit(req, root.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunRequest req;
  std::string family_arg;

  CLI::App app{"Band-edge spectra of Lame and associated Lame potentials"};
  app.require_subcommand(1);

  const auto add_family_args = [&](CLI::App* cmd, bool with_m) {
    cmd->add_option("family", family_arg, "potential family: lame | associated")->required();
    cmd->add_option("j", req.j, "potential parameter (integer >= 1)")->required();
    if (with_m) cmd->add_option("m", req.m, "elliptic modulus in (0, 1)")->required();
    cmd->add_flag("--susy-shift", req.susy_shift,
                  "apply the additive constant that zeroes the lowest band edge");
    cmd->add_option("--output", req.output_path, "write output to a file instead of stdout");
  };

  CLI::App* band = app.add_subcommand("band-edges", "analytic band edges and eigenfunction data");
  add_family_args(band, true);
  std::string format_arg = "csv";
  band->add_option("--format", format_arg, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* ver = app.add_subcommand("verify", "cross-check against the plane-wave oracle");
  add_family_args(ver, true);
  ver->add_option("--modes", req.modes, "plane waves per side (default 128 or BANDEDGE_MODES)");
  ver->add_option("--tol", req.tolerance, "per-edge match tolerance (default 1e-8)");

  CLI::App* eig = app.add_subcommand("eigenfunction", "sample one band-edge eigenfunction");
  add_family_args(eig, true);
  eig->add_option("--index", req.index, "band-edge index, 0 = lowest")->required();
  eig->add_option("--samples", req.samples, "sample count over one period (default 256)");

  CLI::App* scan = app.add_subcommand("scan", "band edges versus the modulus m");
  add_family_args(scan, false);
  scan->add_option("--m-from", req.m_from, "first modulus")->required();
  scan->add_option("--m-to", req.m_to, "last modulus")->required();
  scan->add_option("--steps", req.steps, "number of m points")->required();

  CLI::App* tab = app.add_subcommand("tables", "residue sets and solution counts for j = 1..8");
  tab->add_option("--output", req.output_path, "write output to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (band->parsed()) {
      req.subcommand = "band-edges";
      req.family = parse_family(family_arg);
      req.format = format_arg == "json" ? OutputFormat::Json : OutputFormat::Csv;
      return cmd_band_edges(req);
    }
    if (ver->parsed()) {
      req.subcommand = "verify";
      req.family = parse_family(family_arg);
      return cmd_verify(req);
    }
    if (eig->parsed()) {
      req.subcommand = "eigenfunction";
      req.family = parse_family(family_arg);
      return cmd_eigenfunction(req);
    }
    if (scan->parsed()) {
      req.subcommand = "scan";
      req.family = parse_family(family_arg);
      return cmd_scan(req);
    }
    req.subcommand = "tables";
    return cmd_tables(req);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
