// SPDX-License-Identifier: Apache-2.0
#include "tdg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tdg {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) throw ConfigError("config: " + key + " must be an integer");
  return i;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: bad boolean for " + key + ": '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

int parse_sign(const std::string& key, const std::string& v) {
  if (v == "negative") return -1;
  if (v == "positive") return +1;
  throw ConfigError("config: " + key + " must be 'negative' or 'positive'");
}

}  // namespace

uint64_t fnv1a(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig RunConfig::parse_file(const std::string& path, bool paper_scale) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_text(ss.str(), paper_scale);
}

RunConfig RunConfig::parse_text(const std::string& text, bool paper_scale) {
  RunConfig cfg;
  cfg.paper_scale = paper_scale;
  cfg.hash = fnv1a(text + (paper_scale ? "\n--paper-scale" : ""));

  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  bool snapshots_given = false;
  while (std::getline(is, line)) {
    ++lineno;
    const size_t hashpos = line.find('#');
    if (hashpos != std::string::npos) line = line.substr(0, hashpos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config: malformed section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;

    if (full == "run.experiment") {
      cfg.experiment = value;
    } else if (full == "run.scheme") {
      cfg.scheme = scheme_from_string(value);
    } else if (full == "run.solver") {
      if (value == "lu")
        cfg.solver.method = SolverOptions::Method::DirectLU;
      else if (value == "gmres")
        cfg.solver.method = SolverOptions::Method::Gmres;
      else
        throw ConfigError("config: run.solver must be 'lu' or 'gmres'");
    } else if (full == "run.solver_tol") {
      cfg.solver.tol = parse_double(full, value);
    } else if (full == "run.gmres_restart") {
      cfg.solver.restart = parse_int(full, value);
    } else if (full == "manufactured.eps1") {
      cfg.manufactured.eps1 = parse_double(full, value);
    } else if (full == "manufactured.eps2") {
      cfg.manufactured.eps2 = parse_double(full, value);
    } else if (full == "manufactured.k") {
      cfg.manufactured.k = parse_double(full, value);
    } else if (full == "manufactured.t_end") {
      cfg.manufactured.t_end = parse_double(full, value);
    } else if (full == "manufactured.spatial_h") {
      cfg.spatial_h = parse_list(full, value);
    } else if (full == "manufactured.temporal_dt") {
      cfg.temporal_dt = parse_list(full, value);
    } else if (full == "manufactured.temporal_elements") {
      cfg.temporal_elements = parse_int(full, value);
    } else if (full == "laser.eps1") {
      cfg.laser.eps1 = parse_double(full, value);
    } else if (full == "laser.eps2") {
      cfg.laser.eps2 = parse_double(full, value);
    } else if (full == "laser.k") {
      cfg.laser.k = parse_double(full, value);
    } else if (full == "laser.h") {
      cfg.laser.h = parse_double(full, value);
    } else if (full == "laser.t_end") {
      cfg.laser.t_end = parse_double(full, value);
    } else if (full == "laser.tau_p") {
      cfg.laser.tau_p = parse_double(full, value);
    } else if (full == "laser.depth") {
      cfg.laser.depth = parse_double(full, value);
    } else if (full == "laser.amplitude") {
      cfg.laser.amplitude = parse_double(full, value);
    } else if (full == "laser.spatial_sign") {
      cfg.laser.spatial_sign = parse_sign(full, value);
    } else if (full == "pulse2d.amplitude") {
      cfg.pulse2d.amplitude = parse_double(full, value);
    } else if (full == "pulse2d.width") {
      cfg.pulse2d.width = parse_double(full, value);
    } else if (full == "pulse2d.dt") {
      cfg.pulse2d.dt = parse_double(full, value);
    } else if (full == "pulse2d.t_end") {
      cfg.pulse2d.t_end = parse_double(full, value);
    } else if (full == "pulse2d.grid") {
      cfg.pulse2d.grid = parse_int(full, value);
    } else if (full == "pulse2d.v_first") {
      cfg.pulse2d.v_first = parse_double(full, value);
    } else if (full == "pulse2d.v_second") {
      cfg.pulse2d.v_second = parse_double(full, value);
    } else if (full == "pulse2d.conductivity_ratio") {
      cfg.pulse2d.conductivity_ratio = parse_double(full, value);
    } else if (full == "pulse2d.coupling") {
      cfg.pulse2d.coupling = parse_double(full, value);
    } else if (full == "pulse2d.spatial_sign") {
      cfg.pulse2d.spatial_sign = parse_sign(full, value);
    } else if (full == "output.snapshot_times") {
      cfg.snapshot_times = parse_list(full, value);
      snapshots_given = true;
    } else if (full == "output.field_stride") {
      cfg.field_stride = parse_int(full, value);
    } else if (full == "output.energy_series") {
      cfg.energy_series = parse_bool(full, value);
    } else {
      throw ConfigError("config: unknown key '" + full + "' at line " + std::to_string(lineno));
    }
  }

  if (paper_scale) {
    cfg.laser.h = 0.001;
    cfg.pulse2d.grid = 100;
  }
  if (!snapshots_given && cfg.experiment == "pulse2d")
    cfg.snapshot_times = {0.0, 0.2, 0.3, 0.4};
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (experiment != "manufactured" && experiment != "laser" && experiment != "pulse2d" &&
      experiment != "convergence")
    throw ConfigError("config: run.experiment must be one of manufactured, laser, pulse2d, "
                      "convergence (got '" + experiment + "')");
  if (solver.tol <= 0.0) throw ConfigError("config: run.solver_tol must be > 0");
  try {
    manufactured.dimensionless().validate();
    laser.dimensionless().validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  if (!(laser.h > 0.0) || !(laser.tau_p > 0.0) || !(laser.depth > 0.0))
    throw ConfigError("config: laser constants must be > 0");
  if (pulse2d.grid < 1 || !(pulse2d.dt > 0.0) || !(pulse2d.width > 0.0))
    throw ConfigError("config: bad pulse2d settings");
  for (double h : spatial_h)
    if (!(h > 0.0)) throw ConfigError("config: manufactured.spatial_h entries must be > 0");
  for (double dt : temporal_dt)
    if (!(dt > 0.0)) throw ConfigError("config: manufactured.temporal_dt entries must be > 0");
  if (temporal_elements < 2 || temporal_elements % 2 != 0)
    throw ConfigError("config: manufactured.temporal_elements must be even (midpoint sampling)");
  if (field_stride < 1) throw ConfigError("config: output.field_stride must be >= 1");
  for (double t : snapshot_times)
    if (t < 0.0) throw ConfigError("config: snapshot times must be >= 0");
}

}  // namespace tdg
