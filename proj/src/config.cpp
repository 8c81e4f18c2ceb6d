#include "rtf/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "rtf/errors.hpp"

namespace rtf {

namespace {

const std::vector<std::pair<CaseId, std::string>>& case_table() {
  static const std::vector<std::pair<CaseId, std::string>> t = {
      {CaseId::Accuracy1D, "accuracy1d"}, {CaseId::BrioWu, "briowu"}, {CaseId::CurrentSheet, "current_sheet"},
      {CaseId::Smooth2D, "smooth2d"},     {CaseId::OrszagTang, "orszag_tang"}, {CaseId::Blast, "blast"},
      {CaseId::GEM, "gem"}};
  return t;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

struct KeyDef {
  std::string section, name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define RTF_DKEY(sec, nm, field)                                                                   \
  KeyDef {                                                                                         \
    sec, #nm, [](RunConfig& c, const std::string& v) { c.field = to_double(sec "." #nm, v); },   \
        [](const RunConfig& c) { return fmt(c.field); }                                            \
  }
#define RTF_IKEY(sec, nm, field)                                                                   \
  KeyDef {                                                                                         \
    sec, #nm, [](RunConfig& c, const std::string& v) { c.field = to_long(sec "." #nm, v); },     \
        [](const RunConfig& c) { return std::to_string(c.field); }                                 \
  }

const std::vector<KeyDef>& keys() {
  static const std::vector<KeyDef> k = {
      {"run", "test_case", [](RunConfig& c, const std::string& v) { c.test_case = parse_case(v); },
       [](const RunConfig& c) { return std::string(to_string(c.test_case)); }},
      {"run", "scheme", [](RunConfig& c, const std::string& v) { c.scheme = parse_maxwell_scheme(v); },
       [](const RunConfig& c) { return std::string(to_string(c.scheme)); }},
      {"run", "integrator", [](RunConfig& c, const std::string& v) { c.integrator = parse_integrator(v); },
       [](const RunConfig& c) { return std::string(to_string(c.integrator)); }},
      RTF_IKEY("run", order, order),
      RTF_DKEY("run", cfl, cfl),
      RTF_DKEY("run", t_start, t_start),
      RTF_DKEY("run", t_end, t_end),
      RTF_IKEY("run", nx, nx),
      RTF_IKEY("run", ny, ny),
      RTF_IKEY("run", max_steps, max_steps),
      RTF_DKEY("physics", gamma_i, gamma_i),
      RTF_DKEY("physics", gamma_e, gamma_e),
      RTF_DKEY("physics", r_i, r_i),
      RTF_DKEY("physics", r_e, r_e),
      RTF_DKEY("physics", eta, eta),
      RTF_DKEY("physics", maxwell_source_scale, maxwell_source_scale),
      RTF_DKEY("phm", kappa, kappa),
      RTF_DKEY("phm", xi, xi),
      RTF_DKEY("case", B0, B0),
      RTF_DKEY("case", psi0, psi0),
      RTF_DKEY("case", gem_pressure_factor, gem_pressure_factor),
      RTF_DKEY("case", gem_uz_sign, gem_uz_sign),
      RTF_DKEY("case", gem_mode, gem_mode),
      RTF_DKEY("solver", newton_tol, newton_tol),
      RTF_IKEY("solver", newton_max_iter, newton_max_iter),
      RTF_DKEY("solver", max_flagged_fraction, max_flagged_fraction),
      {"output", "dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; },
       [](const RunConfig& c) { return c.output_dir; }},
      RTF_IKEY("output", snapshot_every, snapshot_every),
      {"output", "snapshot_format",
       [](RunConfig& c, const std::string& v) {
         if (v != "text" && v != "binary" && v != "both") {
           throw ConfigError("key 'output.snapshot_format': expected text, binary or both, got '" + v + "'");
         }
         c.snapshot_format = v;
       },
       [](const RunConfig& c) { return c.snapshot_format; }},
      {"output", "final_dump", [](RunConfig& c, const std::string& v) { c.final_dump = to_bool("output.final_dump", v); },
       [](const RunConfig& c) { return std::string(c.final_dump ? "true" : "false"); }},
  };
  return k;
}

#undef RTF_DKEY
#undef RTF_IKEY

const KeyDef& find_key(const std::string& section, const std::string& name, const std::string& where) {
  const KeyDef* hit = nullptr;
  for (const KeyDef& k : keys()) {
    if (k.name == name && (section.empty() || k.section == section)) hit = &k;
  }
  if (!hit) {
    throw ConfigError(where + "unknown key '" + (section.empty() ? name : section + "." + name) + "'");
  }
  return *hit;
}

struct Assignment {
  std::string section, name, value, where;
};

double default_cfl(const RunConfig& c) {
  if (c.one_d()) return 0.8;
  return c.integrator == Integrator::IMEX ? 0.45 : 0.2;
}

void validate(const RunConfig& c) {
  if (c.nx < 1 || c.ny < 1) throw ConfigError("nx and ny must be positive");
  if (!(c.cfl > 0)) throw ConfigError("cfl must be positive");
  if (!(c.t_end > c.t_start)) throw ConfigError("t_end must exceed t_start");
  if (c.order != 1 && c.order != 2) throw ConfigError("order must be 1 or 2");
  fluid::GasParams::make(c.gamma_i, c.r_i);
  fluid::GasParams::make(c.gamma_e, c.r_e);
  maxwell::PhmParams::make(c.kappa, c.xi);
  if (!(c.maxwell_source_scale > 0)) throw ConfigError("maxwell_source_scale must be positive");
  if (c.eta < 0) throw ConfigError("eta must be non-negative");
  const bool case_1d = c.test_case == CaseId::Accuracy1D || c.test_case == CaseId::BrioWu ||
                       c.test_case == CaseId::CurrentSheet;
  if (case_1d && c.ny != 1) throw ConfigError(std::string(to_string(c.test_case)) + " is one-dimensional; ny must be 1");
  if (!case_1d && c.ny < 2) throw ConfigError(std::string(to_string(c.test_case)) + " is two-dimensional; ny must be >= 2");
}

RunConfig build(const std::vector<Assignment>& as) {
  std::optional<std::string> tc, integ;
  for (const Assignment& a : as) {
    const KeyDef& k = find_key(a.section, a.name, a.where);
    if (k.name == "test_case") tc = a.value;
    if (k.name == "integrator") integ = a.value;
  }
  if (!tc) throw ConfigError("missing required key 'run.test_case'");
  RunConfig c = case_defaults(parse_case(*tc), integ ? parse_integrator(*integ) : Integrator::IMEX);
  for (const Assignment& a : as) {
    const KeyDef& k = find_key(a.section, a.name, a.where);
    try {
      k.set(c, a.value);
    } catch (const ConfigError& e) {
      throw ConfigError(a.where + e.what());
    }
    c.explicit_keys.insert(k.section + "." + k.name);
  }
  if (!c.is_set("run.cfl")) c.cfl = default_cfl(c);
  validate(c);
  return c;
}

std::vector<Assignment> parse_assignments(const std::string& text, const std::string& origin) {
  std::vector<Assignment> out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> known = {"run", "physics", "phm", "case", "solver", "output"};
      if (!known.count(section)) throw ConfigError(where + "unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::string sec = section;
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
      sec = key.substr(0, dot);
      key = key.substr(dot + 1);
    }
    find_key(sec, key, where);
    out.push_back({sec, key, value, where});
  }
  return out;
}

}  // namespace

CaseId parse_case(const std::string& s) {
  for (const auto& [id, name] : case_table())
    if (name == s) return id;
  std::string valid;
  for (const auto& n : case_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown test case '" + s + "' (valid: " + valid + ")");
}

const char* to_string(CaseId c) {
  for (const auto& [id, name] : case_table())
    if (id == c) return name.c_str();
  return "?";
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const auto& [id, name] : case_table()) v.push_back(name);
    return v;
  }();
  return n;
}

RunConfig case_defaults(CaseId id, Integrator integ) {
  const double pi = std::numbers::pi;
  RunConfig c;
  c.test_case = id;
  c.integrator = integ;
  c.explicit_keys = {"run.test_case", "run.integrator"};
  switch (id) {
    case CaseId::Accuracy1D:
      c.nx = 256;
      c.ny = 1;
      c.t_end = 2.0;
      c.r_i = 1;
      c.r_e = -2;
      break;
    case CaseId::BrioWu:
      c.nx = 400;
      c.ny = 1;
      c.t_end = 0.4;
      c.gamma_i = c.gamma_e = 2.0;
      c.r_i = 1e3 / std::sqrt(4 * pi);
      c.r_e = -c.r_i;
      c.maxwell_source_scale = 4 * pi;
      break;
    case CaseId::CurrentSheet:
      c.nx = 400;
      c.ny = 1;
      c.t_start = 1.0;
      c.t_end = 9.0;
      c.gamma_i = c.gamma_e = 4.0 / 3.0;
      c.r_i = 1e3;
      c.r_e = -1e3;
      c.eta = 0.01;
      break;
    case CaseId::Smooth2D:
      c.nx = c.ny = 100;
      c.t_end = 10.0;
      c.r_i = 1;
      c.r_e = -2;
      break;
    case CaseId::OrszagTang:
      c.nx = c.ny = 200;
      c.t_end = 1.0;
      c.r_i = 1e3 / std::sqrt(4 * pi);
      c.r_e = -c.r_i;
      c.maxwell_source_scale = 4 * pi;
      break;
    case CaseId::Blast:
      c.nx = c.ny = 200;
      c.t_end = 4.0;
      c.gamma_i = c.gamma_e = 4.0 / 3.0;
      c.r_i = 1e3;
      c.r_e = -1e3;
      c.maxwell_source_scale = 4 * pi;
      c.B0 = 0.1;
      break;
    case CaseId::GEM:
      c.nx = 512;
      c.ny = 256;
      c.t_end = 100.0;
      c.gamma_i = c.gamma_e = 4.0 / 3.0;
      c.r_i = 1;
      c.r_e = -25;
      c.eta = 0.01;
      c.B0 = 1.0;
      c.psi0 = 0.1;
      c.gem_pressure_factor = 5.0 / (24.0 * pi);
      break;
  }
  c.cfl = default_cfl(c);
  return c;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  const std::vector<Assignment> as = parse_assignments(text, origin);
  return build(as);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), path);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected key=value");
  std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  std::string sec;
  const auto dot = key.find('.');
  if (dot != std::string::npos) {
    sec = key.substr(0, dot);
    key = key.substr(dot + 1);
  }
  const KeyDef& k = find_key(sec, key, "override: ");
  const std::string full = k.section + "." + k.name;
  // rebuild from the explicit keys so case/integrator dependent defaults follow
  std::vector<Assignment> as;
  for (const KeyDef& d : keys()) {
    const std::string f = d.section + "." + d.name;
    if (f == full || !cfg.is_set(f)) continue;
    as.push_back({d.section, d.name, d.get(cfg), "override: "});
  }
  as.push_back({k.section, k.name, value, "override: "});
  cfg = build(as);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  std::string section;
  for (const KeyDef& k : keys()) {
    if (k.section != section) {
      if (!section.empty()) out << "\n";
      section = k.section;
      out << "[" << section << "]\n";
    }
    out << k.name << " = " << k.get(cfg) << "\n";
  }
  return out.str();
}

void apply_desk_scale(RunConfig& c) {
  auto set_i = [&](const char* key, int& field, int v) {
    if (!c.is_set(key)) field = v;
  };
  auto set_d = [&](const char* key, double& field, double v) {
    if (!c.is_set(key)) field = v;
  };
  switch (c.test_case) {
    case CaseId::OrszagTang:
      set_i("run.nx", c.nx, 64);
      set_i("run.ny", c.ny, 64);
      break;
    case CaseId::Blast:
      set_i("run.nx", c.nx, 100);
      set_i("run.ny", c.ny, 100);
      set_d("run.t_end", c.t_end, 1.0);
      break;
    case CaseId::GEM:
      set_i("run.nx", c.nx, 128);
      set_i("run.ny", c.ny, 64);
      set_d("run.t_end", c.t_end, 40.0);
      break;
    case CaseId::Smooth2D:
      set_i("run.nx", c.nx, 32);
      set_i("run.ny", c.ny, 32);
      set_d("run.t_end", c.t_end, 1.0);
      break;
    default:
      break;
  }
  validate(c);
}

SolverParams solver_params(const RunConfig& c) {
  SolverParams p;
  p.ion = fluid::GasParams::make(c.gamma_i, c.r_i);
  p.electron = fluid::GasParams::make(c.gamma_e, c.r_e);
  p.src.r_i = c.r_i;
  p.src.r_e = c.r_e;
  p.src.eta = c.eta;
  p.src.scale = c.maxwell_source_scale;
  p.src.manufactured = c.test_case == CaseId::Accuracy1D  ? sources::Manufactured::Accuracy1D
                       : c.test_case == CaseId::Smooth2D ? sources::Manufactured::Smooth2D
                                                         : sources::Manufactured::None;
  p.phm = maxwell::PhmParams::make(c.kappa, c.xi);
  p.scheme = c.scheme;
  p.order = c.order;
  p.implicit.tol = c.newton_tol;
  p.implicit.max_iter = c.newton_max_iter;
  p.max_flagged_fraction = c.max_flagged_fraction;
  return p;
}

Grid2D make_grid(const RunConfig& c) {
  const double pi = std::numbers::pi;
  const auto P = BoundaryKind::Periodic, N = BoundaryKind::Neumann, W = BoundaryKind::ConductingWall;
  switch (c.test_case) {
    case CaseId::Accuracy1D: return Grid2D::make(c.nx, 1, 0, 1, 0, 1.0 / c.nx, P, P);
    case CaseId::BrioWu: return Grid2D::make(c.nx, 1, -0.5, 0.5, 0, 1.0 / c.nx, N, P);
    case CaseId::CurrentSheet: return Grid2D::make(c.nx, 1, -1.5, 1.5, 0, 3.0 / c.nx, N, P);
    case CaseId::Smooth2D: return Grid2D::make(c.nx, c.ny, 0, 1, 0, 1, P, P);
    case CaseId::OrszagTang: return Grid2D::make(c.nx, c.ny, 0, 1, 0, 1, P, P);
    case CaseId::Blast: return Grid2D::make(c.nx, c.ny, -6, 6, -6, 6, N, N);
    case CaseId::GEM: return Grid2D::make(c.nx, c.ny, -4 * pi, 4 * pi, -2 * pi, 2 * pi, P, W);
  }
  throw ConfigError("unknown test case");
}

}  // namespace rtf
