#include "topomagic/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "topomagic/errors.hpp"

namespace topomagic {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end || !std::isfinite(x)) throw ConfigError(key, "not a number: '" + v + "'");
  return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end) throw ConfigError(key, "not a non-negative integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key, "not a boolean: '" + v + "'");
}

std::vector<std::size_t> to_sizes(const std::string& key, const std::string& v) {
  std::vector<std::size_t> out;
  for (const auto& p : split(v, ',')) out.push_back(static_cast<std::size_t>(to_uint(key, p)));
  return out;
}

std::string fmt(double x) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, p);
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>)
      s += fmt(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::vector<std::size_t> DopingSpec::resolve(std::size_t length) const {
  if (!enabled) return {};
  std::vector<std::size_t> out;
  switch (pattern) {
    case Pattern::all:
      for (std::size_t i = 0; i < length; ++i) out.push_back(i);
      break;
    case Pattern::first:
      if (count > length) throw ConfigError("doping.count", "N_T exceeds L");
      for (std::size_t i = 0; i < count; ++i) out.push_back(i);
      break;
    case Pattern::list:
      out = sites;
      for (auto s : out)
        if (s >= length) throw ConfigError("doping.sites", "site out of range");
      break;
  }
  return out;
}

std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError(key, "range must be start:stop:step");
    const double a = to_double(key, parts[0]), b = to_double(key, parts[1]), st = to_double(key, parts[2]);
    if (!(st > 0.0) || b < a) throw ConfigError(key, "range needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / st + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * st);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(to_double(key, p));
  }
  if (out.empty()) throw ConfigError(key, "empty grid");
  return out;
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string& v = value;
  auto& m = c.model;
  auto& s = c.solver;
  if (key == "model.kind") {
    try {
      m.kind = parse_model_kind(v);
    } catch (const ConfigError&) {
      throw ConfigError(key, "unknown model '" + v + "'");
    }
  } else if (key == "model.L") {
    m.length = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "model.J") {
    m.j = to_double(key, v);
  } else if (key == "model.h") {
    m.h = to_double(key, v);
  } else if (key == "model.g") {
    m.g = to_double(key, v);
  } else if (key == "model.delta") {
    m.delta = to_double(key, v);
  } else if (key == "model.disorder") {
    m.disorder = to_double(key, v);
  } else if (key == "model.seed") {
    m.seed = to_uint(key, v);
  } else if (key == "model.couplings") {
    m.couplings.clear();
    for (const auto& p : split(v, ',')) m.couplings.push_back(to_double(key, p));
  } else if (key == "solver.chi") {
    s.max_bond = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "solver.cutoff") {
    s.cutoff = to_double(key, v);
  } else if (key == "solver.max_sweeps") {
    s.max_sweeps = static_cast<int>(to_uint(key, v));
  } else if (key == "solver.min_sweeps") {
    s.min_sweeps = static_cast<int>(to_uint(key, v));
  } else if (key == "solver.tolerance") {
    s.energy_tolerance = to_double(key, v);
  } else if (key == "solver.krylov") {
    s.krylov_dim = static_cast<int>(to_uint(key, v));
  } else if (key == "solver.tilt") {
    c.tilt = to_double(key, v);
  } else if (key == "solver.seed") {
    s.seed = to_uint(key, v);
  } else if (key == "state.source") {
    if (v == "auto")
      c.source = StateSource::automatic;
    else if (v == "dmrg")
      c.source = StateSource::dmrg;
    else
      throw ConfigError(key, "expected auto or dmrg");
  } else if (key == "doping.pattern") {
    c.doping.enabled = v != "none";
    if (v == "none" || v == "all")
      c.doping.pattern = DopingSpec::Pattern::all;
    else if (v == "first")
      c.doping.pattern = DopingSpec::Pattern::first;
    else if (v == "list")
      c.doping.pattern = DopingSpec::Pattern::list;
    else
      throw ConfigError(key, "expected none, all, first or list");
  } else if (key == "doping.count") {
    c.doping.count = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "doping.sites") {
    c.doping.sites = to_sizes(key, v);
  } else if (key == "sre.geometry") {
    c.geometries.clear();
    for (const auto& p : split(v, ',')) {
      try {
        c.geometries.push_back(parse_geometry(p));
      } catch (const std::exception&) {
        throw ConfigError(key, "unknown geometry '" + p + "'");
      }
    }
  } else if (key == "sre.n") {
    c.replica = static_cast<int>(to_uint(key, v));
  } else if (key == "sre.chi_p") {
    c.pauli_policy.max_bond = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "sre.cutoff") {
    c.pauli_policy.cutoff = to_double(key, v);
  } else if (key == "partition.tri") {
    c.tri_sizes = to_sizes(key, v);
  } else if (key == "partition.quad") {
    c.quad_sizes = to_sizes(key, v);
  } else if (key == "tee") {
    c.tee = to_bool(key, v);
  } else if (key == "edge") {
    c.edge = to_bool(key, v);
  } else if (key == "scan.parameter") {
    c.scan.parameter = v == "none" ? std::string() : v;
  } else if (key == "scan.grid") {
    c.scan.grid = parse_grid(key, v);
  } else if (key == "disorder.grid") {
    c.disorder.strengths = parse_grid(key, v);
  } else if (key == "disorder.samples") {
    c.disorder.samples = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "disorder.seed") {
    c.disorder.base_seed = to_uint(key, v);
  } else if (key == "output.path") {
    c.output = v;
  } else if (key == "output.checkpoints") {
    c.checkpoint_dir = v;
  } else if (key == "run.threads") {
    c.threads = static_cast<std::size_t>(to_uint(key, v));
  } else {
    throw ConfigError(key, "unknown key");
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    set_config_value(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

double RunConfig::effective_tilt() const {
  if (tilt) return *tilt;
  return model.kind == ModelKind::aklt ? 0.1 : 1e-3;
}

PartitionSpec RunConfig::partition(Geometry g) const {
  const auto& sizes = g == Geometry::tri ? tri_sizes : quad_sizes;
  if (sizes.empty()) return PartitionSpec::make(g, model.length);
  return PartitionSpec::custom(g, sizes);
}

void RunConfig::validate() const {
  model.validate();
  solver.validate();
  if (tilt && *tilt < 0) throw ConfigError("solver.tilt", "must be non-negative");
  if (replica < 2) throw ConfigError("sre.n", "replica index must be >= 2");
  if (pauli_policy.max_bond == 0) throw ConfigError("sre.chi_p", "must be positive");
  if (pauli_policy.cutoff < 0) throw ConfigError("sre.cutoff", "must be non-negative");
  if (geometries.empty()) throw ConfigError("sre.geometry", "no geometry selected");
  if (threads == 0) throw ConfigError("run.threads", "must be positive");
  if (doping.enabled) {
    if (model.local_dim() != 2) throw ConfigError("doping.pattern", "T gates need qubits; the spin-1 model cannot be doped");
    if (doping.pattern == DopingSpec::Pattern::first && doping.count > model.length)
      throw ConfigError("doping.count", "N_T exceeds L");
    if (doping.pattern == DopingSpec::Pattern::list) {
      auto s = doping.sites;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ConfigError("doping.sites", "duplicate site");
      if (!s.empty() && s.back() >= model.length) throw ConfigError("doping.sites", "site out of range");
    }
  }
  for (Geometry g : geometries) {
    const char* key = g == Geometry::tri ? "partition.tri" : "partition.quad";
    PartitionSpec p;
    try {
      p = partition(g);
    } catch (const std::exception& e) {
      throw ConfigError(key, e.what());
    }
    if (p.length != model.length) throw ConfigError(key, "window sizes do not add up to L");
  }
  if (!scan.parameter.empty()) {
    static const std::vector<std::string> ok{"h", "g", "delta", "J"};
    if (std::find(ok.begin(), ok.end(), scan.parameter) == ok.end())
      throw ConfigError("scan.parameter", "expected h, g, delta or J");
    if (scan.grid.empty()) throw ConfigError("scan.grid", "empty grid");
    if (!std::is_sorted(scan.grid.begin(), scan.grid.end())) throw ConfigError("scan.grid", "grid must be sorted");
  }
  if (!disorder.strengths.empty()) {
    if (model.kind != ModelKind::cluster_ising_disordered)
      throw ConfigError("disorder.grid", "disorder campaigns need model.kind = cluster_ising_disordered");
    if (!model.couplings.empty()) throw ConfigError("model.couplings", "fixed couplings conflict with a campaign");
    if (disorder.samples == 0) throw ConfigError("disorder.samples", "must be positive");
    if (!std::is_sorted(disorder.strengths.begin(), disorder.strengths.end()))
      throw ConfigError("disorder.grid", "grid must be sorted");
    for (double d : disorder.strengths)
      if (d < 0) throw ConfigError("disorder.grid", "strengths must be non-negative");
  }
}

std::string to_text(const RunConfig& c) {
  std::ostringstream o;
  const auto& m = c.model;
  o << "model.kind = " << to_string(m.kind) << "\n";
  o << "model.L = " << m.length << "\n";
  o << "model.J = " << fmt(m.j) << "\n";
  o << "model.h = " << fmt(m.h) << "\n";
  o << "model.g = " << fmt(m.g) << "\n";
  o << "model.delta = " << fmt(m.delta) << "\n";
  o << "model.disorder = " << fmt(m.disorder) << "\n";
  o << "model.seed = " << m.seed << "\n";
  if (!m.couplings.empty()) o << "model.couplings = " << join(m.couplings) << "\n";
  o << "solver.chi = " << c.solver.max_bond << "\n";
  o << "solver.cutoff = " << fmt(c.solver.cutoff) << "\n";
  o << "solver.max_sweeps = " << c.solver.max_sweeps << "\n";
  o << "solver.min_sweeps = " << c.solver.min_sweeps << "\n";
  o << "solver.tolerance = " << fmt(c.solver.energy_tolerance) << "\n";
  o << "solver.krylov = " << c.solver.krylov_dim << "\n";
  if (c.tilt) o << "solver.tilt = " << fmt(*c.tilt) << "\n";
  o << "solver.seed = " << c.solver.seed << "\n";
  o << "state.source = " << (c.source == StateSource::dmrg ? "dmrg" : "auto") << "\n";
  if (!c.doping.enabled) {
    o << "doping.pattern = none\n";
  } else {
    switch (c.doping.pattern) {
      case DopingSpec::Pattern::all: o << "doping.pattern = all\n"; break;
      case DopingSpec::Pattern::first: o << "doping.pattern = first\ndoping.count = " << c.doping.count << "\n"; break;
      case DopingSpec::Pattern::list: o << "doping.pattern = list\ndoping.sites = " << join(c.doping.sites) << "\n"; break;
    }
  }
  o << "sre.geometry = ";
  for (std::size_t i = 0; i < c.geometries.size(); ++i) o << (i ? "," : "") << to_string(c.geometries[i]);
  o << "\n";
  if (!c.tri_sizes.empty()) o << "partition.tri = " << join(c.tri_sizes) << "\n";
  if (!c.quad_sizes.empty()) o << "partition.quad = " << join(c.quad_sizes) << "\n";
  o << "sre.n = " << c.replica << "\n";
  o << "sre.chi_p = " << c.pauli_policy.max_bond << "\n";
  o << "sre.cutoff = " << fmt(c.pauli_policy.cutoff) << "\n";
  o << "tee = " << (c.tee ? "true" : "false") << "\n";
  o << "edge = " << (c.edge ? "true" : "false") << "\n";
  if (!c.scan.parameter.empty()) {
    o << "scan.parameter = " << c.scan.parameter << "\n";
    o << "scan.grid = " << join(c.scan.grid) << "\n";
  }
  if (!c.disorder.strengths.empty()) {
    o << "disorder.grid = " << join(c.disorder.strengths) << "\n";
    o << "disorder.samples = " << c.disorder.samples << "\n";
    o << "disorder.seed = " << c.disorder.base_seed << "\n";
  }
  o << "output.path = " << c.output.string() << "\n";
  if (!c.checkpoint_dir.empty()) o << "output.checkpoints = " << c.checkpoint_dir.string() << "\n";
  o << "run.threads = " << c.threads << "\n";
  return o.str();
}

}  // namespace topomagic
