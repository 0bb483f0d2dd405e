#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exflat/atlas/boundary.hpp"
#include "exflat/atlas/catalogue.hpp"
#include "exflat/atlas/compare.hpp"
#include "exflat/atlas/ends.hpp"
#include "exflat/atlas/hairpin.hpp"
#include "exflat/atlas/pathological.hpp"
#include "exflat/cli/config.hpp"
#include "exflat/flow.hpp"
#include "exflat/triple.hpp"
#include "exflat/verifier.hpp"

namespace exflat::cli {

namespace fs = std::filesystem;

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_invalid_input = 2, exit_numeric_failure = 3 };

inline int exit_code_for(ErrorKind kind) { return is_input_error(kind) ? exit_invalid_input : exit_numeric_failure; }

/// Shortest text that round-trips: 17 significant digits.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    row_strings(header);
  }
  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (const double v : values) cells.push_back(fmt17(v));
    row_strings(cells);
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// The re_F, im_F columns of a boundary-schema CSV file.
inline std::vector<cplx> read_curve_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto re_col = std::find(header.begin(), header.end(), "re_F") - header.begin();
  const auto im_col = std::find(header.begin(), header.end(), "im_F") - header.begin();
  if (re_col >= static_cast<std::ptrdiff_t>(header.size()) || im_col >= static_cast<std::ptrdiff_t>(header.size()))
    throw Error(ErrorKind::SchemaError, path.string() + " lacks re_F/im_F columns");
  std::vector<cplx> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    pts.push_back({row.at(static_cast<std::size_t>(re_col)), row.at(static_cast<std::size_t>(im_col))});
  }
  return pts;
}

/// One path element per curve read back from the CSV files; the view box is the
/// bounding box with a 5% margin, with the imaginary axis pointing up.
inline void write_svg_from_csv(const fs::path& svg, const std::vector<fs::path>& csv_files) {
  std::vector<std::vector<cplx>> curves;
  for (const fs::path& p : csv_files) curves.push_back(read_curve_csv(p));
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& c : curves)
    for (const cplx w : c) {
      xmin = std::min(xmin, w.real());
      xmax = std::max(xmax, w.real());
      ymin = std::min(ymin, -w.imag());
      ymax = std::max(ymax, -w.imag());
    }
  if (!(xmin <= xmax)) xmin = xmax = ymin = ymax = 0.0;
  const double width = std::max(xmax - xmin, 1e-12), height = std::max(ymax - ymin, 1e-12);
  const double mx = 0.05 * width, my = 0.05 * height;
  std::ofstream out(svg);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + svg.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt17(xmin - mx) << ' ' << fmt17(ymin - my) << ' '
      << fmt17(width + 2 * mx) << ' ' << fmt17(height + 2 * my) << "\">\n";
  const double stroke = 0.002 * std::max(width, height);
  for (const auto& c : curves) {
    out << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt17(stroke) << "\" d=\"";
    for (std::size_t i = 0; i < c.size(); ++i)
      out << (i ? " L " : "M ") << fmt17(c[i].real()) << ' ' << fmt17(-c[i].imag());
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

inline json spectrum_json(const PoissonSpectrum& s) {
  json anchors = json::array(), degrees = json::array(), weights = json::array();
  for (std::size_t j = 0; j < s.size(); ++j) {
    anchors.push_back(to_json(s.anchor(j)));
    degrees.push_back(s.angle(j) * 180.0 / pi);
    weights.push_back(s.weights()[j]);
  }
  return {{"anchors", anchors}, {"anchors_deg", degrees}, {"weights", weights}};
}

inline json report_json(const VerificationReport& r) {
  json records = json::array();
  for (const CheckRecord& c : r.records) {
    json rec{{"name", c.name},         {"measured", c.measured}, {"bound", to_string(c.bound)},
             {"threshold", c.threshold}, {"pass", c.pass},         {"samples", c.samples}};
    if (c.bound == Bound::within) rec["threshold_hi"] = c.threshold_hi;
    records.push_back(rec);
  }
  return {{"pass", r.pass()}, {"records", records}};
}

inline WeierstrassTriple build_triple(const RunConfig& cfg) {
  return assemble_triple(cfg.spectrum, cfg.root_tol, cfg.eps_bdry);
}

inline fs::path prepare_directory(const RunConfig& cfg) {
  const fs::path dir(cfg.outputs.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::InvalidArgument, "cannot create output directory " + dir.string());
  return dir;
}

inline std::vector<fs::path> write_boundary_csvs(const fs::path& dir, const std::vector<BoundaryCurve>& curves) {
  std::vector<fs::path> files;
  for (const BoundaryCurve& c : curves) {
    const fs::path p = dir / ("boundary_arc" + std::to_string(c.arc_index) + ".csv");
    CsvWriter csv(p, {"theta", "re_F", "im_F", "u"});
    for (std::size_t i = 0; i < c.points.size(); ++i)
      csv.row({c.thetas[i], c.points[i].real(), c.points[i].imag(), c.us[i]});
    files.push_back(p);
  }
  return files;
}

inline int run_generate(const RunConfig& cfg) {
  const WeierstrassTriple t = build_triple(cfg);
  const std::vector<BoundaryCurve> curves = trace_all_boundaries(t, cfg.boundary.samples_per_arc, cfg.boundary.eps_end,
                                                                 0.0, cfg.tolerances.quadrature, cfg.workers);
  const FieldGrid grid = map_grid(t, cfg.grid.radial, cfg.grid.angular, cfg.grid.rmax, cfg.tolerances.quadrature, 0.0,
                                  default_clearance, cfg.workers);
  const fs::path dir = prepare_directory(cfg);
  std::vector<fs::path> arc_files;
  if (cfg.outputs.wants("csv") || cfg.outputs.wants("svg")) {
    arc_files = write_boundary_csvs(dir, curves);
    CsvWriter csv(dir / "grid.csv", {"r", "phi", "re_z", "im_z", "re_F", "im_F", "u"});
    for (const FieldSample& s : grid.samples) csv.row({s.r, s.phi, s.z.real(), s.z.imag(), s.F.real(), s.F.imag(), s.u});
  }
  if (cfg.outputs.wants("svg")) write_svg_from_csv(dir / "boundary.svg", arc_files);
  if (cfg.outputs.wants("json")) {
    json zeros = json::array();
    for (const cplx z : t.h().zeros()) zeros.push_back(to_json(z));
    json numerator = json::array();
    for (const cplx c : t.numerator().coefficients()) numerator.push_back(to_json(c));
    json arcs = json::array();
    for (const BoundaryCurve& c : curves)
      arcs.push_back({{"arc_index", c.arc_index},
                      {"samples", c.points.size()},
                      {"theta_first", c.thetas.front()},
                      {"theta_last", c.thetas.back()}});
    write_json(dir / "generate.json", {{"command", "generate"},
                                       {"spectrum", spectrum_json(t.spectrum())},
                                       {"numerator_coefficients", numerator},
                                       {"blaschke_zeros", zeros},
                                       {"cancellation_exact", t.cancellation_exact()},
                                       {"arcs", arcs},
                                       {"grid", {{"radial", cfg.grid.radial},
                                                 {"angular", cfg.grid.angular},
                                                 {"rmax", cfg.grid.rmax},
                                                 {"samples", grid.samples.size()}}}});
  }
  return exit_ok;
}

/// Two-path residuals at seeded random disk points, as one report record.
inline CheckRecord path_independence_record(const WeierstrassTriple& t, const RunConfig& cfg) {
  std::mt19937_64 gen(cfg.seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (int k = 0; k < cfg.path_checks; ++k) {
    const double r = 0.98 * std::sqrt(uniform());
    const double phi = two_pi * uniform();
    worst = std::max(worst, check_path_independence(t, std::polar(r, phi), cfg.tolerances.quadrature));
  }
  return make_record("path_independence", worst, Bound::at_most, 10.0 * cfg.tolerances.quadrature,
                     static_cast<std::size_t>(cfg.path_checks));
}

inline int run_verify(const RunConfig& cfg) {
  const WeierstrassTriple t = build_triple(cfg);
  VerificationReport report = verify_triple(t, cfg.grid, cfg.tolerances, cfg.workers);
  report.append(verify_neumann_fd(t, cfg.neumann.samples, cfg.neumann.inset, cfg.tolerances));
  if (cfg.path_checks > 0) report.records.push_back(path_independence_record(t, cfg));
  const fs::path dir = prepare_directory(cfg);
  if (cfg.outputs.wants("json")) {
    json doc = report_json(report);
    doc["command"] = "verify";
    doc["spectrum"] = spectrum_json(t.spectrum());
    doc["seed"] = cfg.seed;
    write_json(dir / "report.json", doc);
  }
  if (cfg.outputs.wants("csv")) {
    CsvWriter csv(dir / "report.csv", {"name", "measured", "bound", "threshold", "threshold_hi", "pass", "samples"});
    for (const CheckRecord& c : report.records)
      csv.row_strings({c.name, fmt17(c.measured), to_string(c.bound), fmt17(c.threshold), fmt17(c.threshold_hi),
                       c.pass ? "true" : "false", std::to_string(c.samples)});
  }
  return report.pass() ? exit_ok : exit_verification_failed;
}

inline int run_catalogue(const RunConfig& cfg) {
  const fs::path dir = prepare_directory(cfg);
  const int n = cfg.boundary.samples_per_arc;
  const double span = 3.0;
  std::vector<fs::path> files;
  if (cfg.outputs.wants("csv") || cfg.outputs.wants("svg")) {
    for (const double side : {1.0, -1.0}) {
      const fs::path p = dir / (side > 0 ? "hairpin_upper.csv" : "hairpin_lower.csv");
      CsvWriter csv(p, {"x", "re_F", "im_F", "u"});
      for (int k = 0; k < n; ++k) {
        const double x = -span + 2.0 * span * k / (n - 1);
        const HairpinValue v = hairpin_eval(cplx(x, side * strip_half_width));
        csv.row({x, v.F.real(), v.F.imag(), v.u});
      }
      files.push_back(p);
    }
  }
  if (cfg.outputs.wants("svg")) write_svg_from_csv(dir / "hairpin.svg", files);
  if (cfg.outputs.wants("json")) {
    const std::vector<double> half{2.5, 0.0}, disk{2.0, 0.0}, ball{2.0, 0.0, 0.0};
    json roofs = json::array();
    roofs.push_back({{"kind", "halfplane"}, {"point", half}, {"value", catalogue_trivial(TrivialRoof::halfplane, half)}});
    roofs.push_back({{"kind", "exterior_disk_2d"},
                     {"point", disk},
                     {"value", catalogue_trivial(TrivialRoof::exterior_disk_2d, disk)}});
    roofs.push_back({{"kind", "exterior_disk_md"},
                     {"point", ball},
                     {"m", 3},
                     {"value", catalogue_trivial(TrivialRoof::exterior_disk_md, ball, 3)}});
    const double q = cfg.tolerances.quadrature;
    const cplx c = period_constant(q);
    const cplx shift = pathological_eval(cplx(1.0, two_pi), q) - pathological_eval(1.0, q);
    write_json(dir / "catalogue.json",
               {{"command", "catalogue"},
                {"hairpin", {{"samples_per_side", n}, {"x_range", {-span, span}}}},
                {"trivial_roofs", roofs},
                {"pathological",
                 {{"period_constant", to_json(c)},
                  {"shift_F_1_plus_2pi_i", to_json(shift)},
                  {"periodicity_defect", std::abs(shift - c)}}}});
  }
  return exit_ok;
}

inline int run_compare(const RunConfig& cfg) {
  if (cfg.spectrum.size() != 2) throw Error(ErrorKind::InvalidArgument, "compare requires a two-anchor spectrum");
  const WeierstrassTriple t = build_triple(cfg);
  const std::vector<BoundaryCurve> curves = trace_all_boundaries(t, cfg.boundary.samples_per_arc, cfg.boundary.eps_end,
                                                                 0.0, cfg.tolerances.quadrature, cfg.workers);
  const HairpinComparison cmp = compare_with_hairpin(curves);
  const fs::path dir = prepare_directory(cfg);
  const SimilarityTransform& tr = cmp.fit.transform;
  if (cfg.outputs.wants("json"))
    write_json(dir / "compare.json", {{"command", "compare"},
                                      {"spectrum", spectrum_json(t.spectrum())},
                                      {"rotation_scale", to_json(tr.rotation_scale)},
                                      {"translation", to_json(tr.translation)},
                                      {"reflects", tr.reflects},
                                      {"residual", cmp.fit.residual},
                                      {"samples", cmp.samples}});
  if (cfg.outputs.wants("csv")) {
    CsvWriter csv(dir / "compare.csv", {"residual", "re_lambda", "im_lambda", "re_c", "im_c", "reflects"});
    csv.row({cmp.fit.residual, tr.rotation_scale.real(), tr.rotation_scale.imag(), tr.translation.real(),
             tr.translation.imag(), tr.reflects ? 1.0 : 0.0});
  }
  if (cfg.outputs.wants("svg")) {
    const std::vector<fs::path> arc_files = write_boundary_csvs(dir, curves);
    write_svg_from_csv(dir / "compare.svg", arc_files);
  }
  return exit_ok;
}

inline int run_ends(const RunConfig& cfg) {
  const WeierstrassTriple t = build_triple(cfg);
  std::vector<EndReport> reports;
  for (std::size_t j = 0; j < t.spectrum().size(); ++j)
    reports.push_back(end_data(t, j, cfg.ends.ratio, cfg.ends.levels, cfg.ends.start_distance, 1e-4,
                               cfg.tolerances.quadrature));
  const fs::path dir = prepare_directory(cfg);
  if (cfg.outputs.wants("json")) {
    json ends = json::array();
    for (const EndReport& r : reports)
      ends.push_back({{"anchor_index", r.anchor_index},
                      {"tau_minus", to_json(r.tau_minus)},
                      {"tau_plus", to_json(r.tau_plus)},
                      {"theta", r.theta_j},
                      {"extrapolation_error", r.extrapolation_error}});
    write_json(dir / "ends.json", {{"command", "ends"}, {"spectrum", spectrum_json(t.spectrum())}, {"ends", ends}});
  }
  if (cfg.outputs.wants("csv")) {
    CsvWriter csv(dir / "ends.csv", {"anchor_index", "re_tau_minus", "im_tau_minus", "re_tau_plus", "im_tau_plus",
                                     "theta", "extrapolation_error"});
    for (const EndReport& r : reports)
      csv.row({static_cast<double>(r.anchor_index), r.tau_minus.real(), r.tau_minus.imag(), r.tau_plus.real(),
               r.tau_plus.imag(), r.theta_j, r.extrapolation_error});
  }
  return exit_ok;
}

/// Runs one named command; library errors propagate as exceptions.
inline int run_command(const std::string& name, const RunConfig& cfg) {
  if (name == "generate") return run_generate(cfg);
  if (name == "verify") return run_verify(cfg);
  if (name == "catalogue") return run_catalogue(cfg);
  if (name == "compare") return run_compare(cfg);
  if (name == "ends") return run_ends(cfg);
  throw Error(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
}

}  // namespace exflat::cli
