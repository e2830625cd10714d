#include "topomagic/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "topomagic/analytic.hpp"
#include "topomagic/errors.hpp"
#include "topomagic/mps_io.hpp"

namespace topomagic {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string num(double x) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, p);
}

std::string clean(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

void set_parameter(ModelSpec& m, const std::string& name, double v) {
  if (name == "h") m.h = v;
  else if (name == "g") m.g = v;
  else if (name == "delta") m.delta = v;
  else if (name == "J") m.j = v;
}

// Exact constructors for points where DMRG would have to pick from a
// degenerate ground space, or where the model has a closed-form MPS.
std::optional<std::pair<Mps, std::string>> exact_state(const RunConfig& cfg, const ModelSpec& m) {
  if (cfg.source == StateSource::dmrg) return std::nullopt;
  const bool clean = std::all_of(m.couplings.begin(), m.couplings.end(), [](double c) { return c == 0.0; });
  switch (m.kind) {
    case ModelKind::cluster_ising:
      if (m.h == 0.0 && m.j > 0.0) return std::pair{cluster_state(m.length), std::string("cluster")};
      break;
    case ModelKind::cluster_ising_disordered:
      if (m.h == 0.0 && m.j > 0.0 && clean)
        return std::pair{cluster_state(m.length), std::string("cluster")};
      break;
    case ModelKind::tfim:
      if (m.h == 0.0 && m.j > 0.0) return std::pair{ghz_state(m.length), std::string("ghz")};
      break;
    case ModelKind::tci:
      return std::pair{tci_ground_state(m.length, m.g, false), std::string("tci_exact")};
    case ModelKind::aklt:
      break;
  }
  return std::nullopt;
}

std::filesystem::path checkpoint_path(const RunConfig& cfg, std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof name, "point_%06zu.tmps", index);
  return cfg.checkpoint_dir / name;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string preamble_config(const RunConfig& cfg) {
  // run.threads does not change results, so a resumed run may use another value.
  std::istringstream in(to_text(cfg));
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("run.threads", 0) != 0) out += "# " + line + "\n";
  return out;
}

}  // namespace

std::string PointResult::status() const {
  if (!error.empty()) return "error";
  return converged ? "ok" : "not_converged";
}

std::vector<TaskPoint> expand_tasks(const RunConfig& cfg) {
  const std::vector<double> params = cfg.scan.parameter.empty() ? std::vector<double>{0.0} : cfg.scan.grid;
  const bool campaign = !cfg.disorder.strengths.empty();
  const std::vector<double> strengths = campaign ? cfg.disorder.strengths : std::vector<double>{cfg.model.disorder};
  const std::size_t samples = campaign ? cfg.disorder.samples : 1;

  std::vector<TaskPoint> out;
  for (double p : params) {
    for (std::size_t di = 0; di < strengths.size(); ++di) {
      for (std::size_t r = 0; r < samples; ++r) {
        TaskPoint t;
        t.index = out.size();
        t.parameter = cfg.scan.parameter.empty() ? 0.0 : p;
        t.disorder = strengths[di];
        t.realization = r;
        t.seed = campaign ? splitmix64(cfg.disorder.base_seed ^ (static_cast<std::uint64_t>(di) << 40) ^ r)
                          : cfg.model.seed;
        out.push_back(t);
      }
    }
  }
  return out;
}

ModelSpec model_for(const RunConfig& cfg, const TaskPoint& task) {
  ModelSpec m = cfg.model;
  if (!cfg.scan.parameter.empty()) set_parameter(m, cfg.scan.parameter, task.parameter);
  if (!cfg.disorder.strengths.empty()) {
    m.disorder = task.disorder;
    m.seed = task.seed;
    m.couplings.clear();
  }
  if (m.kind == ModelKind::cluster_ising_disordered && m.couplings.empty())
    m.couplings = sample_disorder(m.disorder, m.length, m.seed);
  return m;
}

PointResult evaluate_point(const RunConfig& cfg, const TaskPoint& task) {
  PointResult r;
  r.task = task;
  r.model = model_for(cfg, task);
  try {
    const ModelSpec& m = r.model;
    m.validate();
    const Mpo h = build_mpo(m);
    Mps psi;
    const bool use_ckpt = !cfg.checkpoint_dir.empty();
    const auto ckpt = use_ckpt ? checkpoint_path(cfg, task.index) : std::filesystem::path();
    auto measure = [&](const Mps& s) {
      r.energy = expectation(s, h);
      r.variance = std::max(0.0, expectation_squared(s, h) - r.energy * r.energy);
    };
    if (use_ckpt && std::filesystem::exists(ckpt)) {
      psi = normalize(load_mps(ckpt));
      if (psi.length() != m.length || psi.local_dim() != m.local_dim())
        throw DimensionError("checkpoint " + ckpt.string() + " does not match the model");
      r.source = "checkpoint";
      measure(psi);
    } else if (auto ex = exact_state(cfg, m)) {
      psi = std::move(ex->first);
      r.source = ex->second;
      measure(psi);
    } else {
      SolverConfig sc = cfg.solver;
      sc.tilt = cfg.effective_tilt();
      auto gs = find_ground_state(h, sc, std::nullopt, symmetry_tilt(m));
      psi = std::move(gs.state);
      r.source = "dmrg";
      r.energy = gs.energy;
      r.variance = gs.variance;
      r.converged = gs.converged;
      r.sweeps = gs.sweeps;
      r.state_discarded = gs.max_discarded;
    }
    if (use_ckpt && r.source != "checkpoint") {
      std::filesystem::create_directories(cfg.checkpoint_dir);
      save_mps(ckpt, psi);
    }
    r.chi = psi.max_bond_dim();

    const auto sites = cfg.doping.resolve(m.length);
    r.doped = sites.size();
    const Mps doped = sites.empty() ? psi : dope_with_t_gates(psi, sites);

    SreOptions opt;
    opt.policy = cfg.pauli_policy;
    for (Geometry g : cfg.geometries) {
      const PartitionSpec part = cfg.partition(g);
      r.sre.push_back(topological_sre(doped, part, cfg.replica, opt));
      for (const auto& w : r.sre.back().warnings) r.warnings.push_back(to_string(g) + ": " + w);
      if (cfg.tee) r.tee.push_back(topological_ee(doped, part));
    }
    if (cfg.edge && m.local_dim() == 2) r.edge = edge_correlator(psi, default_edge_string(m.length));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<std::string> csv_columns(const RunConfig& cfg) {
  std::vector<std::string> c{"task",   "scan_param", "param",    "disorder", "realization", "seed",
                             "model",  "L",          "J",        "h",        "g",           "delta",
                             "N_T",    "n",          "chi_p",    "sre_cutoff", "source",    "status",
                             "energy", "variance",   "sweeps",   "chi",      "state_discarded"};
  for (Geometry g : cfg.geometries) {
    const std::string s = to_string(g);
    c.push_back("M_" + s);
    for (const char* reg : kRegionNames) c.push_back(s + "_" + reg);
    c.push_back(s + "_discarded");
  }
  if (cfg.tee)
    for (Geometry g : cfg.geometries) c.push_back("S_" + to_string(g));
  if (cfg.edge) c.push_back("edge");
  c.push_back("message");
  return c;
}

std::string csv_row(const RunConfig& cfg, const PointResult& r) {
  std::vector<std::string> f;
  const ModelSpec& m = r.model;
  f.push_back(std::to_string(r.task.index));
  f.push_back(cfg.scan.parameter.empty() ? "none" : cfg.scan.parameter);
  f.push_back(num(cfg.scan.parameter.empty() ? 0.0 : r.task.parameter));
  f.push_back(num(r.task.disorder));
  f.push_back(std::to_string(r.task.realization));
  f.push_back(std::to_string(r.task.seed));
  f.push_back(to_string(m.kind));
  f.push_back(std::to_string(m.length));
  f.push_back(num(m.j));
  f.push_back(num(m.h));
  f.push_back(num(m.g));
  f.push_back(num(m.delta));
  f.push_back(std::to_string(r.doped));
  f.push_back(std::to_string(cfg.replica));
  f.push_back(std::to_string(cfg.pauli_policy.max_bond));
  f.push_back(num(cfg.pauli_policy.cutoff));
  f.push_back(r.source);
  f.push_back(r.status());
  const bool ok = r.error.empty();
  auto val = [&](double x) { return ok ? num(x) : std::string("nan"); };
  f.push_back(val(r.energy));
  f.push_back(val(r.variance));
  f.push_back(std::to_string(r.sweeps));
  f.push_back(std::to_string(r.chi));
  f.push_back(val(r.state_discarded));
  for (std::size_t i = 0; i < cfg.geometries.size(); ++i) {
    if (i < r.sre.size()) {
      const auto& s = r.sre[i];
      f.push_back(num(s.m_topo));
      for (double v : s.values) f.push_back(num(v));
      double dw = 0.0;
      for (double v : s.discarded) dw = std::max(dw, v);
      f.push_back(num(dw));
    } else {
      for (int k = 0; k < 6; ++k) f.push_back("nan");
    }
  }
  if (cfg.tee)
    for (std::size_t i = 0; i < cfg.geometries.size(); ++i)
      f.push_back(i < r.tee.size() ? num(r.tee[i].s_topo) : std::string("nan"));
  if (cfg.edge) f.push_back(r.edge ? num(*r.edge) : std::string("nan"));
  std::string msg = r.error;
  for (const auto& w : r.warnings) msg += (msg.empty() ? "" : " | ") + w;
  f.push_back(clean(msg));

  std::string line;
  for (std::size_t i = 0; i < f.size(); ++i) line += (i ? "," : "") + f[i];
  return line;
}

std::string csv_preamble(const RunConfig& cfg) {
  return "# topomagic-csv " + std::to_string(kCsvSchemaVersion) + "\n" + preamble_config(cfg);
}

std::ptrdiff_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("output.path", "cannot read " + path.string());
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.preamble.push_back(line);
      continue;
    }
    if (t.columns.empty())
      t.columns = split_csv(line);
    else
      t.rows.push_back(split_csv(line));
  }
  return t;
}

RunSummary run_campaign(const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  const auto tasks = expand_tasks(cfg);
  const auto cols = csv_columns(cfg);
  std::string header;
  for (std::size_t i = 0; i < cols.size(); ++i) header += (i ? "," : "") + cols[i];
  const std::string head = csv_preamble(cfg) + header + "\n";

  RunSummary sum;
  sum.total = tasks.size();
  std::set<std::size_t> done;
  const auto& path = cfg.output;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());

  if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
    std::string text;
    {
      std::ifstream in(path, std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    if (text.compare(0, head.size(), head) != 0)
      throw ConfigError("output.path", path.string() + " exists and was written by a different configuration");
    // Drop a torn last line left by an interrupted run.
    const auto last_nl = text.find_last_of('\n');
    if (last_nl + 1 != text.size()) {
      text.resize(last_nl + 1);
      std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
    }
    std::istringstream in(text.substr(head.size()));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      done.insert(std::stoull(line.substr(0, line.find(','))));
    }
  } else {
    std::ofstream(path, std::ios::binary | std::ios::trunc) << head;
  }

  std::vector<TaskPoint> pending;
  for (const auto& t : tasks)
    if (!done.count(t.index)) pending.push_back(t);
  sum.skipped = tasks.size() - pending.size();

  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw ConfigError("output.path", "cannot write " + path.string());

  std::vector<std::optional<PointResult>> results(pending.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      try {
        PointResult r = evaluate_point(cfg, pending[i]);
        std::lock_guard<std::mutex> lk(mu);
        results[i] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!fatal) fatal = std::current_exception();
        next = pending.size();
      }
      cv.notify_all();
    }
  };

  const std::size_t nthreads = std::min<std::size_t>(cfg.threads, std::max<std::size_t>(pending.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);

  // Single appender: rows go out strictly in task order.
  for (std::size_t i = 0; i < pending.size(); ++i) {
    PointResult r;
    {
      std::unique_lock<std::mutex> lk(mu);
      cv.wait(lk, [&] { return results[i].has_value() || fatal; });
      if (!results[i]) break;
      r = std::move(*results[i]);
      results[i].reset();
    }
    out << csv_row(cfg, r) << "\n";
    out.flush();
    ++sum.computed;
    if (!r.error.empty() || !r.converged) ++sum.failed;
    if (log) {
      *log << "[" << (sum.skipped + sum.computed) << "/" << sum.total << "] task " << r.task.index << " "
           << r.status();
      if (!r.sre.empty()) *log << " M_" << to_string(r.sre[0].geometry) << "=" << r.sre[0].m_topo;
      if (!r.error.empty()) *log << " (" << r.error << ")";
      *log << "\n";
    }
  }
  for (auto& t : pool) t.join();
  if (fatal) std::rethrow_exception(fatal);

  if (!cfg.disorder.strengths.empty()) {
    auto p = cfg.output;
    p.replace_extension(".summary.csv");
    write_disorder_summary(summarize_disorder(cfg.output), p);
    sum.summary_path = p;
  }
  return sum;
}

std::vector<DisorderStat> summarize_disorder(const std::filesystem::path& csv) {
  const CsvTable t = read_csv(csv);
  const auto ip = t.column("param"), id = t.column("disorder"), is = t.column("status");
  if (ip < 0 || id < 0 || is < 0) throw ConfigError("output.path", csv.string() + " is not a campaign file");
  std::vector<std::size_t> metrics;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    const auto& c = t.columns[i];
    if (c.rfind("M_", 0) == 0 || c.rfind("S_", 0) == 0 || c == "edge") metrics.push_back(i);
  }
  // Groups in first-appearance order.
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<const std::vector<std::string>*>> groups;
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size() || row[static_cast<std::size_t>(is)] != "ok") continue;
    std::pair<std::string, std::string> k{row[static_cast<std::size_t>(ip)], row[static_cast<std::size_t>(id)]};
    if (!groups.count(k)) keys.push_back(k);
    groups[k].push_back(&row);
  }
  std::vector<DisorderStat> out;
  for (const auto& k : keys) {
    const auto& rows = groups[k];
    for (std::size_t mi : metrics) {
      DisorderStat s;
      s.parameter = std::stod(k.first);
      s.disorder = std::stod(k.second);
      s.column = t.columns[mi];
      double acc = 0.0;
      std::vector<double> xs;
      for (const auto* r : rows) xs.push_back(std::stod((*r)[mi]));
      for (double x : xs) acc += x;
      s.count = xs.size();
      s.mean = acc / static_cast<double>(xs.size());
      if (xs.size() > 1) {
        double v = 0.0;
        for (double x : xs) v += (x - s.mean) * (x - s.mean);
        v /= static_cast<double>(xs.size() - 1);
        s.stderr_ = std::sqrt(v / static_cast<double>(xs.size()));
      }
      out.push_back(s);
    }
  }
  return out;
}

void write_disorder_summary(const std::vector<DisorderStat>& stats, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw ConfigError("output.path", "cannot write " + path.string());
    o << "# topomagic-summary " << kCsvSchemaVersion << "\n";
    o << "param,disorder,column,count,mean,stderr\n";
    for (const auto& s : stats)
      o << num(s.parameter) << "," << num(s.disorder) << "," << s.column << "," << s.count << "," << num(s.mean)
        << "," << num(s.stderr_) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace topomagic
