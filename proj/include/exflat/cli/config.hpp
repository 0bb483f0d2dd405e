#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "exflat/error.hpp"
#include "exflat/spectrum.hpp"
#include "exflat/verifier.hpp"
#include "json.hpp"

namespace exflat::cli {

using json = nlohmann::json;

struct OutputSpec {
  std::string directory = "out";
  std::set<std::string> formats{"csv", "json"};

  bool wants(const std::string& fmt) const { return formats.count(fmt) != 0; }
};

struct BoundarySpec {
  int samples_per_arc = 2000;
  double eps_end = 1e-3;
};

struct EndsSpec {
  double ratio = 0.5;
  int levels = 12;
  double start_distance = 1e-2;
};

struct NeumannSpec {
  int samples = 50;
  double inset = 1e-4;
};

struct RunConfig {
  PoissonSpectrum spectrum = PoissonSpectrum::symmetric(1);
  GridSpec grid;
  Tolerances tolerances;
  double eps_bdry = 1e-8;
  double root_tol = 1e-10;
  OutputSpec outputs;
  std::uint64_t seed = 0;
  BoundarySpec boundary;
  EndsSpec ends;
  NeumannSpec neumann;
  int path_checks = 20;
  unsigned workers = 1;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& key, const std::string& expected) {
  throw Error(ErrorKind::SchemaError, "key '" + key + "': expected " + expected);
}

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) throw Error(ErrorKind::SchemaError, "unknown key '" + where + it.key() + "'");
  }
}

inline const json& object_at(const json& parent, const std::string& key, const std::string& path) {
  const json& v = parent.at(key);
  if (!v.is_object()) schema_error(path + key, "object");
  return v;
}

inline double number_at(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) schema_error(path + key, "number");
  return v.get<double>();
}

inline long long integer_at(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) schema_error(path + key, "integer");
  return v.get<long long>();
}

inline std::vector<double> numbers_at(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_array()) schema_error(path + key, "array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) schema_error(path + key, "array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

inline void read_number(const json& obj, const char* key, const std::string& path, double& into) {
  if (obj.contains(key)) into = number_at(obj, key, path);
}

inline void read_int(const json& obj, const char* key, const std::string& path, int& into, long long lo) {
  if (!obj.contains(key)) return;
  const long long v = integer_at(obj, key, path);
  if (v < lo || v > 1'000'000'000) schema_error(path + key, "integer >= " + std::to_string(lo));
  into = static_cast<int>(v);
}

inline PoissonSpectrum parse_spectrum(const json& obj) {
  reject_unknown(obj, "spectrum.", {"anchors_deg", "anchors", "weights"});
  if (!obj.contains("weights")) schema_error("spectrum.weights", "array of numbers");
  const std::vector<double> weights = numbers_at(obj, "weights", "spectrum.");
  const bool deg = obj.contains("anchors_deg");
  const bool pairs = obj.contains("anchors");
  if (deg == pairs) schema_error("spectrum.anchors_deg", "exactly one of anchors_deg or anchors");
  try {
    if (deg) return PoissonSpectrum::from_degrees(numbers_at(obj, "anchors_deg", "spectrum."), weights);
    const json& list = obj.at("anchors");
    if (!list.is_array()) schema_error("spectrum.anchors", "array of [re, im] pairs");
    std::vector<cplx> anchors;
    for (const json& p : list) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        schema_error("spectrum.anchors", "array of [re, im] pairs");
      anchors.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return PoissonSpectrum::validate(anchors, weights);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    throw Error(ErrorKind::SchemaError, std::string("key 'spectrum': ") + e.what());
  }
}

}  // namespace detail

/// Parses and validates a JSON run configuration; unknown keys and ill-typed or
/// out-of-range values raise SchemaError naming the key.
inline RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::SchemaError, "configuration must be a JSON object");
  detail::reject_unknown(doc, "", {"spectrum", "grid", "tolerances", "outputs", "seed", "boundary", "ends", "neumann",
                                   "path_checks", "workers"});
  RunConfig cfg;
  if (!doc.contains("spectrum")) detail::schema_error("spectrum", "object");
  cfg.spectrum = detail::parse_spectrum(detail::object_at(doc, "spectrum", ""));

  if (doc.contains("grid")) {
    const json& g = detail::object_at(doc, "grid", "");
    detail::reject_unknown(g, "grid.", {"radial", "angular", "rmax"});
    detail::read_int(g, "radial", "grid.", cfg.grid.radial, 2);
    detail::read_int(g, "angular", "grid.", cfg.grid.angular, 2);
    detail::read_number(g, "rmax", "grid.", cfg.grid.rmax);
    if (!(cfg.grid.rmax > 0.0 && cfg.grid.rmax < 1.0)) detail::schema_error("grid.rmax", "number in (0, 1)");
  }

  if (doc.contains("tolerances")) {
    const json& t = detail::object_at(doc, "tolerances", "");
    detail::reject_unknown(t, "tolerances.", {"unimodularity", "positivity_margin", "nonvanishing_floor", "fd_step",
                                              "neumann_rel", "quadrature", "laplacian_step", "dirichlet", "eps_bdry",
                                              "root_tol"});
    Tolerances& tol = cfg.tolerances;
    detail::read_number(t, "unimodularity", "tolerances.", tol.unimodularity);
    detail::read_number(t, "positivity_margin", "tolerances.", tol.positivity_margin);
    detail::read_number(t, "nonvanishing_floor", "tolerances.", tol.nonvanishing_floor);
    detail::read_number(t, "fd_step", "tolerances.", tol.fd_step);
    detail::read_number(t, "neumann_rel", "tolerances.", tol.neumann_rel);
    detail::read_number(t, "quadrature", "tolerances.", tol.quadrature);
    detail::read_number(t, "laplacian_step", "tolerances.", tol.laplacian_step);
    detail::read_number(t, "dirichlet", "tolerances.", tol.dirichlet);
    detail::read_number(t, "eps_bdry", "tolerances.", cfg.eps_bdry);
    detail::read_number(t, "root_tol", "tolerances.", cfg.root_tol);
    try {
      tol.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::SchemaError, std::string("key 'tolerances': ") + e.what());
    }
    if (!(cfg.eps_bdry > 0.0 && cfg.eps_bdry < 1.0)) detail::schema_error("tolerances.eps_bdry", "number in (0, 1)");
    if (!(cfg.root_tol > 0.0)) detail::schema_error("tolerances.root_tol", "positive number");
  }

  if (doc.contains("outputs")) {
    const json& o = detail::object_at(doc, "outputs", "");
    detail::reject_unknown(o, "outputs.", {"directory", "formats"});
    if (o.contains("directory")) {
      if (!o.at("directory").is_string() || o.at("directory").get<std::string>().empty())
        detail::schema_error("outputs.directory", "non-empty string");
      cfg.outputs.directory = o.at("directory").get<std::string>();
    }
    if (o.contains("formats")) {
      const json& f = o.at("formats");
      if (!f.is_array()) detail::schema_error("outputs.formats", "array of strings from {csv, json, svg}");
      cfg.outputs.formats.clear();
      for (const json& e : f) {
        if (!e.is_string()) detail::schema_error("outputs.formats", "array of strings from {csv, json, svg}");
        const std::string name = e.get<std::string>();
        if (name != "csv" && name != "json" && name != "svg")
          detail::schema_error("outputs.formats", "array of strings from {csv, json, svg}");
        cfg.outputs.formats.insert(name);
      }
    }
  }

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
      detail::schema_error("seed", "non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  if (doc.contains("boundary")) {
    const json& b = detail::object_at(doc, "boundary", "");
    detail::reject_unknown(b, "boundary.", {"samples_per_arc", "eps_end"});
    detail::read_int(b, "samples_per_arc", "boundary.", cfg.boundary.samples_per_arc, 2);
    detail::read_number(b, "eps_end", "boundary.", cfg.boundary.eps_end);
    if (!(cfg.boundary.eps_end > 0.0 && cfg.boundary.eps_end < 0.5))
      detail::schema_error("boundary.eps_end", "number in (0, 0.5)");
  }

  if (doc.contains("ends")) {
    const json& e = detail::object_at(doc, "ends", "");
    detail::reject_unknown(e, "ends.", {"ratio", "levels", "start_distance"});
    detail::read_number(e, "ratio", "ends.", cfg.ends.ratio);
    detail::read_int(e, "levels", "ends.", cfg.ends.levels, 3);
    detail::read_number(e, "start_distance", "ends.", cfg.ends.start_distance);
    if (!(cfg.ends.ratio > 0.0 && cfg.ends.ratio < 1.0)) detail::schema_error("ends.ratio", "number in (0, 1)");
    if (!(cfg.ends.start_distance > 0.0)) detail::schema_error("ends.start_distance", "positive number");
  }

  if (doc.contains("neumann")) {
    const json& n = detail::object_at(doc, "neumann", "");
    detail::reject_unknown(n, "neumann.", {"samples", "inset"});
    detail::read_int(n, "samples", "neumann.", cfg.neumann.samples, 1);
    detail::read_number(n, "inset", "neumann.", cfg.neumann.inset);
    if (!(cfg.neumann.inset > 0.0 && cfg.neumann.inset < 0.1)) detail::schema_error("neumann.inset", "number in (0, 0.1)");
  }

  int path_checks = cfg.path_checks;
  detail::read_int(doc, "path_checks", "", path_checks, 0);
  cfg.path_checks = path_checks;
  int workers = 1;
  detail::read_int(doc, "workers", "", workers, 1);
  cfg.workers = static_cast<unsigned>(workers);
  return cfg;
}

}  // namespace exflat::cli
