#include "hqed/sweep.hpp"

#include "hqed/entanglement.hpp"
#include "hqed/hybrid.hpp"
#include "hqed/qrm.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#ifndef HQED_VERSION
#define HQED_VERSION "0.1.0"
#endif

namespace hqed {

using nlohmann::json;

const char* tool_version() { return HQED_VERSION; }

const char* solver_name(Solver s) {
  switch (s) {
    case Solver::Exact: return "exact";
    case Solver::Grwa: return "grwa";
    case Solver::Rwa: return "rwa";
  }
  return "?";
}

Solver solver_from_name(const std::string& name) {
  for (Solver s : {Solver::Exact, Solver::Grwa, Solver::Rwa})
    if (name == solver_name(s)) return s;
  throw std::invalid_argument("unknown solver '" + name + "' (expected exact, grwa or rwa)");
}

namespace {

const char* quantity_name(QuantityKind q) {
  switch (q) {
    case QuantityKind::T: return "T";
    case QuantityKind::GShift: return "g_shift";
    case QuantityKind::GEff: return "g_eff";
  }
  return "?";
}

std::optional<QuantityKind> quantity_from_name(const std::string& name) {
  for (QuantityKind q : {QuantityKind::T, QuantityKind::GShift, QuantityKind::GEff})
    if (name == quantity_name(q)) return q;
  return std::nullopt;
}

bool is_state_family(const std::string& name) {
  try {
    family_from_name(name);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

const std::set<std::string>& axis_variables() {
  static const std::set<std::string> v{"g_ac", "g_om", "omega_a", "omega_c", "detuning"};
  return v;
}

void apply_axis(SystemParams& p, const std::string& variable, double value) {
  if (variable == "g_ac") p.g_ac = value;
  else if (variable == "g_om") p.g_om = value;
  else if (variable == "omega_a") p.omega_a = value;
  else if (variable == "omega_c") p.omega_c = value;
  else if (variable == "detuning") p.omega_a = p.omega_c + value;
  else throw std::invalid_argument("unknown axis variable '" + variable + "'");
}

bool has(const std::vector<Solver>& v, Solver s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[i] = log_scale ? start * std::pow(stop / start, t) : start + (stop - start) * t;
  }
  out.back() = stop;
  return out;
}

void SweepConfig::validate() const {
  auto fail = [&](const std::string& why) { throw std::invalid_argument("invalid sweep config '" + name + "': " + why); };
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (axes.empty() || axes.size() > 2) fail("expected 1 or 2 axes");
  for (const auto& a : axes) {
    if (!axis_variables().count(a.variable)) fail("unknown axis variable '" + a.variable + "'");
    if (a.count < 2) fail("axis '" + a.variable + "' needs count >= 2");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) fail("axis '" + a.variable + "' has non-finite bounds");
    if (a.log_scale && (a.start <= 0 || a.stop <= 0)) fail("log axis '" + a.variable + "' needs positive bounds");
  }
  if (axes.size() == 2 && axes[0].variable == axes[1].variable) fail("both axes sweep '" + axes[0].variable + "'");
  if (solvers.empty()) fail("empty solver set");
  if (std::set<Solver>(solvers.begin(), solvers.end()).size() != solvers.size()) fail("repeated solver");
  if (families.empty()) fail("no families requested");
  if (!want_energies && !want_fidelities && !want_xi) fail("no outputs requested");
  if (levels < 1) fail("levels must be >= 1");
  if (!(tolerance > 0)) fail("tolerance must be > 0");
  if (n_max < 0 || m_max < 0) fail("n_max and m_max must be >= 0");
  bool quantities = false, qrm = false, hybrid = false;
  for (const auto& f : families) {
    const bool state = is_state_family(f.family);
    if (!state && !quantity_from_name(f.family)) fail("unknown family '" + f.family + "'");
    for (int v : f.n) if (v < 0) fail("negative N in family " + f.family);
    for (int v : f.m) if (v < 0) fail("negative M in family " + f.family);
    if (!state) {
      quantities = true;
      continue;
    }
    const auto fam = family_from_name(f.family);
    (fam == Family::QrmDoublet || fam == Family::QrmGround ? qrm : hybrid) = true;
  }
  if (quantities && !(solvers.size() == 1 && solvers[0] == Solver::Grwa))
    fail("T, g_shift and g_eff families are only defined for the grwa solver");
  if (qrm && hybrid && has(solvers, Solver::Exact)) fail("exact solver cannot mix QRM and hybrid families");
  if (cutoffs && (cutoffs->photon.n_max < 2 || cutoffs->phonon.n_max < 2)) fail("cutoffs must be >= 2");
  // Every corner of the grid must be a valid parameter point.
  for (double v0 : {axes[0].start, axes[0].stop}) {
    SystemParams p = params;
    apply_axis(p, axes[0].variable, v0);
    for (std::size_t k = 1; k <= (axes.size() == 2 ? 2u : 1u); ++k) {
      SystemParams q = p;
      if (axes.size() == 2) apply_axis(q, axes[1].variable, k == 1 ? axes[1].start : axes[1].stop);
      try {
        q.validate();
      } catch (const std::invalid_argument& e) {
        fail(std::string("grid corner: ") + e.what());
      }
    }
  }
}

SweepConfig config_from_json(const json& j, SweepConfig c) {
  if (!j.is_object()) throw std::invalid_argument("sweep config must be a JSON object");
  static const std::set<std::string> known{"name", "figure", "notes", "params", "axes", "solvers", "families",
                                           "outputs", "cutoffs", "levels", "tolerance", "n_max", "m_max"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw std::invalid_argument("unknown config field '" + key + "'");
  try {
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (j.contains("figure")) c.figure = j.at("figure").get<std::string>();
    if (j.contains("notes")) c.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("params")) {
      static const std::set<std::string> pk{"omega_a", "omega_c", "omega_m", "g_ac", "g_om"};
      for (const auto& [key, v] : j.at("params").items()) {
        if (!pk.count(key)) throw std::invalid_argument("unknown params field '" + key + "'");
        if (key == "omega_m") c.params.omega_m = v.get<double>();
        else apply_axis(c.params, key, v.get<double>());
      }
    }
    if (j.contains("axes")) {
      c.axes.clear();
      for (const auto& a : j.at("axes")) {
        Axis ax;
        ax.variable = a.at("variable").get<std::string>();
        ax.start = a.at("start").get<double>();
        ax.stop = a.at("stop").get<double>();
        ax.count = a.at("count").get<int>();
        const auto scale = a.value("scale", std::string("linear"));
        if (scale != "linear" && scale != "log") throw std::invalid_argument("axis scale must be linear or log");
        ax.log_scale = scale == "log";
        c.axes.push_back(ax);
      }
    }
    if (j.contains("solvers")) {
      c.solvers.clear();
      for (const auto& s : j.at("solvers")) c.solvers.push_back(solver_from_name(s.get<std::string>()));
    }
    if (j.contains("families")) {
      c.families.clear();
      for (const auto& f : j.at("families")) {
        FamilySpec fs;
        fs.family = f.at("family").get<std::string>();
        if (f.contains("N")) fs.n = f.at("N").get<std::vector<int>>();
        if (f.contains("M")) fs.m = f.at("M").get<std::vector<int>>();
        if (f.contains("signs"))
          for (const auto& s : f.at("signs")) {
            const auto str = s.get<std::string>();
            if (str != "+" && str != "-") throw std::invalid_argument("sign must be \"+\" or \"-\"");
            fs.branches.push_back(str == "+" ? Branch::Plus : Branch::Minus);
          }
        c.families.push_back(fs);
      }
    }
    if (j.contains("outputs")) {
      c.want_energies = c.want_fidelities = c.want_xi = false;
      for (const auto& o : j.at("outputs")) {
        const auto s = o.get<std::string>();
        if (s == "energies") c.want_energies = true;
        else if (s == "fidelities") c.want_fidelities = true;
        else if (s == "xi") c.want_xi = true;
        else throw std::invalid_argument("unknown output '" + s + "'");
      }
    }
    if (j.contains("cutoffs")) {
      const auto& cu = j.at("cutoffs");
      if (cu.is_string()) {
        if (cu.get<std::string>() != "auto") throw std::invalid_argument("cutoffs must be \"auto\" or an object");
        c.cutoffs.reset();
      } else {
        c.cutoffs = Cutoffs{ModeCutoff(cu.at("photon").get<int>()), ModeCutoff(cu.at("phonon").get<int>())};
      }
    }
    if (j.contains("levels")) c.levels = j.at("levels").get<int>();
    if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("n_max")) c.n_max = j.at("n_max").get<int>();
    if (j.contains("m_max")) c.m_max = j.at("m_max").get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed sweep config: ") + e.what());
  }
  return c;
}

json config_to_json(const SweepConfig& c) {
  json j;
  j["name"] = c.name;
  j["figure"] = c.figure;
  j["notes"] = c.notes;
  j["params"] = {{"omega_a", c.params.omega_a},
                 {"omega_c", c.params.omega_c},
                 {"omega_m", c.params.omega_m},
                 {"g_ac", c.params.g_ac},
                 {"g_om", c.params.g_om}};
  j["axes"] = json::array();
  for (const auto& a : c.axes)
    j["axes"].push_back({{"variable", a.variable},
                         {"start", a.start},
                         {"stop", a.stop},
                         {"count", a.count},
                         {"scale", a.log_scale ? "log" : "linear"}});
  j["solvers"] = json::array();
  for (Solver s : c.solvers) j["solvers"].push_back(solver_name(s));
  j["families"] = json::array();
  for (const auto& f : c.families) {
    json fj{{"family", f.family}};
    if (!f.n.empty()) fj["N"] = f.n;
    if (!f.m.empty()) fj["M"] = f.m;
    if (!f.branches.empty()) {
      fj["signs"] = json::array();
      for (Branch b : f.branches) fj["signs"].push_back(std::string(1, branch_char(b)));
    }
    j["families"].push_back(fj);
  }
  j["outputs"] = json::array();
  if (c.want_energies) j["outputs"].push_back("energies");
  if (c.want_fidelities) j["outputs"].push_back("fidelities");
  if (c.want_xi) j["outputs"].push_back("xi");
  if (c.cutoffs) j["cutoffs"] = {{"photon", c.cutoffs->photon.n_max}, {"phonon", c.cutoffs->phonon.n_max}};
  else j["cutoffs"] = "auto";
  j["levels"] = c.levels;
  j["tolerance"] = c.tolerance;
  j["n_max"] = c.n_max;
  j["m_max"] = c.m_max;
  return j;
}

std::string config_hash(const SweepConfig& c) {
  // FNV-1a 64 over the canonical (key-sorted) dump.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : config_to_json(c).dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<SeriesKey> expand_series(const SweepConfig& c) {
  std::vector<SeriesKey> out;
  auto range = [](const std::vector<int>& given, int max) {
    if (!given.empty()) return given;
    std::vector<int> r(max + 1);
    for (int i = 0; i <= max; ++i) r[i] = i;
    return r;
  };
  for (const auto& f : c.families) {
    const auto ns = range(f.n, c.n_max);
    const auto ms = range(f.m, c.m_max);
    const auto bs = f.branches.empty() ? std::vector<Branch>{Branch::Plus, Branch::Minus} : f.branches;
    if (auto q = quantity_from_name(f.family)) {
      for (int n : ns) out.push_back({f.family, n, std::nullopt, std::nullopt, std::nullopt, q});
      continue;
    }
    const auto fam = family_from_name(f.family);
    auto add = [&](const AnalyticStateLabel& l) {
      SeriesKey k{f.family, std::nullopt, std::nullopt, std::nullopt, l, std::nullopt};
      if (l.uses_n()) k.n = l.n;
      if (l.uses_m()) k.m = l.m;
      if (l.uses_branch()) k.sign = branch_char(l.branch);
      out.push_back(k);
    };
    switch (fam) {
      case Family::ZeroPolariton:
        for (int m : ms) add(AnalyticStateLabel::zero_polariton(m));
        break;
      case Family::Isolated:
        for (int n : ns) add(AnalyticStateLabel::isolated(n));
        break;
      case Family::Doublet:
        for (int n : ns)
          for (int m : ms)
            for (Branch b : bs) add(AnalyticStateLabel::doublet(n, m, b));
        break;
      case Family::QrmGround: add(AnalyticStateLabel::qrm_ground()); break;
      case Family::QrmDoublet:
        for (int n : ns)
          for (Branch b : bs) add(AnalyticStateLabel::qrm_doublet(n, b));
        break;
    }
  }
  auto key = [](const SeriesKey& k) { return std::tuple(k.family, k.n.value_or(0), k.m.value_or(0), k.sign.value_or('+')); };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  out.erase(std::unique(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) == key(b); }),
            out.end());
  return out;
}

namespace {

Model exact_model(const std::vector<SeriesKey>& series) {
  for (const auto& s : series)
    if (s.label && s.label->is_hybrid()) return Model::Hybrid;
  return Model::Rabi;
}

double quantity_value(QuantityKind q, int N, const SystemParams& p) {
  switch (q) {
    case QuantityKind::T: return grwa_frequencies(N, p).T_N;
    case QuantityKind::GShift: return sector_params(N, p).g_shift;
    case QuantityKind::GEff: return sector_params(N, p).g_eff;
  }
  return 0;
}

struct GridPoint {
  double a1;
  std::optional<double> a2;
  SystemParams params;
};

std::vector<GridPoint> grid(const SweepConfig& c) {
  std::vector<GridPoint> out;
  const auto v1 = c.axes[0].values();
  const std::vector<double> v2 = c.axes.size() == 2 ? c.axes[1].values() : std::vector<double>{0.0};
  for (double a : v1)
    for (double b : v2) {
      GridPoint g{a, std::nullopt, c.params};
      apply_axis(g.params, c.axes[0].variable, a);
      if (c.axes.size() == 2) {
        g.a2 = b;
        apply_axis(g.params, c.axes[1].variable, b);
      }
      out.push_back(g);
    }
  return out;
}

template <class Fn>
void parallel_for(int n, int workers, Fn fn) {
  workers = std::max(1, std::min(workers, n));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

struct PointOutput {
  std::vector<SweepRow> rows;
  PointDiagnostics diag;
};

PointOutput evaluate_point(const SweepConfig& c, const std::vector<SeriesKey>& series, const GridPoint& g,
                           const std::optional<Cutoffs>& cutoffs, Model model) {
  PointOutput out;
  const SystemParams& p = g.params;
  const double wm = p.omega_m;
  const bool exact = has(c.solvers, Solver::Exact);

  EigenSolution sol;
  StateAssignment by_grwa, by_rwa;
  if (exact) {
    sol = solve(model, p, *cutoffs, c.levels, true);
    out.diag.max_residual = sol.max_residual;
    std::vector<EmbeddedKet> grwa_kets, rwa_kets;
    const bool want_rwa = has(c.solvers, Solver::Rwa);
    if (model == Model::Hybrid) {
      HybridFrame frame(p, *cutoffs);
      for (const auto& s : series) {
        if (!s.label) continue;
        grwa_kets.push_back(frame.embed(s.label->with_scheme(Scheme::Grwa)));
        if (want_rwa) rwa_kets.push_back(frame.embed(s.label->with_scheme(Scheme::Rwa)));
      }
    } else {
      PhotonFrame frame(p, cutoffs->photon);
      for (const auto& s : series) {
        if (!s.label) continue;
        const auto lg = s.label->with_scheme(Scheme::Grwa);
        grwa_kets.push_back(frame.project(lg, frame.vector(lg)));
        if (want_rwa) {
          const auto lr = s.label->with_scheme(Scheme::Rwa);
          rwa_kets.push_back(frame.project(lr, frame.vector(lr)));
        }
      }
    }
    for (const auto* kets : {&grwa_kets, &rwa_kets})
      for (const auto& k : *kets) out.diag.max_norm_deviation = std::max(out.diag.max_norm_deviation, k.norm_deviation);
    if (!grwa_kets.empty()) by_grwa = match_states(sol, grwa_kets);
    if (!rwa_kets.empty()) by_rwa = match_states(sol, rwa_kets);
    for (int i : by_grwa.index) out.diag.unmatched += i < 0;
  }

  const std::vector<int> partition = exact ? polariton_partition(sol.layout) : std::vector<int>{};
  int state_pos = 0;
  for (const auto& s : series) {
    for (Solver solver : {Solver::Exact, Solver::Grwa, Solver::Rwa}) {
      if (!has(c.solvers, solver)) continue;
      SweepRow r;
      r.axis1 = g.a1;
      r.axis2 = g.a2;
      r.solver = solver;
      r.family = s.family;
      r.n = s.n;
      r.m = s.m;
      r.sign = s.sign;
      if (s.quantity) {
        if (c.want_energies) r.energy = quantity_value(*s.quantity, *s.n, p) / wm;
        out.rows.push_back(r);
        continue;
      }
      const auto& label = *s.label;
      if (solver == Solver::Exact) {
        const int idx = by_grwa.index[state_pos];
        if (idx >= 0) {
          if (c.want_energies) r.energy = sol.energies(idx) / wm;
          if (c.want_fidelities) r.fidelity = by_grwa.fidelity[state_pos];
          if (c.want_xi) r.xi = participation_ratio_numerical(sol.state(idx), partition);
        }
      } else {
        const Scheme scheme = solver == Solver::Grwa ? Scheme::Grwa : Scheme::Rwa;
        const auto l = label.with_scheme(scheme);
        if (c.want_energies) r.energy = analytic_energy(l, p) / wm;
        if (c.want_xi) r.xi = analytic_xi(l, p).xi;
        if (exact && c.want_fidelities) {
          const auto& a = scheme == Scheme::Grwa ? by_grwa : by_rwa;
          if (a.index[state_pos] >= 0) r.fidelity = a.fidelity[state_pos];
        }
      }
      out.rows.push_back(r);
    }
    ++state_pos;
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, RunOptions options) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult res;
  res.config = config;
  const auto series = expand_series(config);
  const auto points = grid(config);
  res.grid_points = static_cast<int>(points.size());
  res.series = static_cast<int>(series.size());
  const Model model = exact_model(series);

  if (has(config.solvers, Solver::Exact)) {
    if (config.cutoffs) {
      res.cutoffs = config.cutoffs;
    } else {
      std::vector<SystemParams> corners;
      for (double a : {config.axes[0].start, config.axes[0].stop}) {
        const std::vector<double> bs =
            config.axes.size() == 2 ? std::vector<double>{config.axes[1].start, config.axes[1].stop} : std::vector<double>{0.0};
        for (double b : bs) {
          SystemParams p = config.params;
          apply_axis(p, config.axes[0].variable, a);
          if (config.axes.size() == 2) apply_axis(p, config.axes[1].variable, b);
          corners.push_back(p);
        }
      }
      res.corners.resize(corners.size());
      parallel_for(static_cast<int>(corners.size()), options.workers, [&](int i) {
        ConvergenceOptions opts;
        opts.allow_unconverged = true;
        const auto r = converge_cutoffs(corners[i], config.levels, config.tolerance, model, opts);
        const auto& e = r.solution.energies;
        const double level = e(std::min<Eigen::Index>(config.levels, e.size()) - 1) + corners[i].omega_m;
        res.corners[i] = {corners[i], r.cutoffs, r.max_change, r.solves, r.converged,
                          photon_stability_limit(corners[i], level, model), r.note};
      });
      Cutoffs best{ModeCutoff(2), ModeCutoff(model == Model::Hybrid ? 2 : 1)};
      int limit = std::numeric_limits<int>::max();
      for (const auto& c : res.corners) {
        best.photon.n_max = std::max(best.photon.n_max, c.cutoffs.photon.n_max);
        best.phonon.n_max = std::max(best.phonon.n_max, c.cutoffs.phonon.n_max);
        limit = std::min(limit, c.photon_limit);
        if (!c.converged) res.warnings.push_back(c.note);
      }
      if (best.photon.n_max > limit) {
        res.warnings.push_back("photon cutoff clamped from " + std::to_string(best.photon.n_max) + " to " +
                               std::to_string(limit) + " by the optomechanical stability limit");
        best.photon.n_max = std::max(2, limit);
        for (auto& c : res.corners)
          if (c.cutoffs.photon.n_max > best.photon.n_max && c.converged) {
            c.converged = false;
            c.note = "converged photon cutoff " + std::to_string(c.cutoffs.photon.n_max) + " exceeds the shared clamp";
          }
      }
      res.cutoffs = best;
    }
    if (model == Model::Rabi) res.cutoffs->phonon = ModeCutoff(1);
  }

  std::vector<PointOutput> outputs(points.size());
  parallel_for(static_cast<int>(points.size()), options.workers,
               [&](int i) { outputs[i] = evaluate_point(config, series, points[i], res.cutoffs, model); });
  for (auto& o : outputs) {
    res.diagnostics.max_residual = std::max(res.diagnostics.max_residual, o.diag.max_residual);
    res.diagnostics.max_norm_deviation = std::max(res.diagnostics.max_norm_deviation, o.diag.max_norm_deviation);
    res.diagnostics.unmatched += o.diag.unmatched;
    res.rows.insert(res.rows.end(), std::make_move_iterator(o.rows.begin()), std::make_move_iterator(o.rows.end()));
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

namespace {

void put_double(std::string& line, const std::optional<double>& v) {
  if (!v) return;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  line += buf;
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& os) {
  os << csv_header() << '\n';
  std::string line;
  for (const auto& r : result.rows) {
    line.clear();
    put_double(line, r.axis1);
    line += ',';
    put_double(line, r.axis2);
    line += ',';
    line += solver_name(r.solver);
    line += ',';
    line += r.family;
    line += ',';
    if (r.n) line += std::to_string(*r.n);
    line += ',';
    if (r.m) line += std::to_string(*r.m);
    line += ',';
    if (r.sign) line += *r.sign;
    line += ',';
    put_double(line, r.energy);
    line += ',';
    put_double(line, r.fidelity);
    line += ',';
    put_double(line, r.xi);
    line += '\n';
    os << line;
  }
}

json build_manifest(const SweepResult& r) {
  const auto& c = r.config;
  json m;
  m["schema_version"] = 1;
  m["tool"] = "sweep";
  m["version"] = tool_version();
  m["preset"] = c.name;
  m["figure"] = c.figure;
  m["notes"] = c.notes;
  m["config"] = config_to_json(c);
  m["config_hash"] = config_hash(c);
  m["columns"] = json::array();
  {
    std::stringstream ss(csv_header());
    std::string col;
    while (std::getline(ss, col, ',')) m["columns"].push_back(col);
  }
  m["axes"] = json::array();
  for (const auto& a : c.axes) m["axes"].push_back(a.variable);
  m["units"] = "energy_over_omega_m divides by omega_m; axis values use the units of params";
  m["grid_points"] = r.grid_points;
  m["series"] = r.series;
  m["solvers"] = json::array();
  for (Solver s : c.solvers) m["solvers"].push_back(solver_name(s));
  m["rows"] = r.rows.size();
  m["levels"] = c.levels;
  m["tolerance"] = c.tolerance;
  m["n_max"] = c.n_max;
  m["m_max"] = c.m_max;
  if (r.cutoffs) {
    json cj{{"mode", c.cutoffs ? "explicit" : "auto"}, {"photon", r.cutoffs->photon.n_max}};
    if (r.cutoffs->phonon.n_max > 1) cj["phonon"] = r.cutoffs->phonon.n_max;
    cj["corners"] = json::array();
    for (const auto& k : r.corners)
      cj["corners"].push_back({{"g_ac", k.params.g_ac},
                               {"g_om", k.params.g_om},
                               {"omega_a", k.params.omega_a},
                               {"omega_c", k.params.omega_c},
                               {"photon", k.cutoffs.photon.n_max},
                               {"phonon", k.cutoffs.phonon.n_max},
                               {"max_change", k.max_change},
                               {"solves", k.solves},
                               {"converged", k.converged},
                               {"photon_limit", k.photon_limit == std::numeric_limits<int>::max() ? json(nullptr)
                                                                                                  : json(k.photon_limit)},
                               {"note", k.note}});
    m["cutoffs"] = cj;
  } else {
    m["cutoffs"] = nullptr;
  }
  m["diagnostics"] = {{"max_residual", r.diagnostics.max_residual},
                      {"max_norm_deviation", r.diagnostics.max_norm_deviation},
                      {"unmatched_labels", r.diagnostics.unmatched},
                      {"unconverged_corners", std::count_if(r.corners.begin(), r.corners.end(),
                                                            [](const CornerConvergence& k) { return !k.converged; })}};
  m["warnings"] = r.warnings;
  m["wall_time_seconds"] = r.wall_seconds;
  return m;
}

void write_outputs(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "data.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + (dir / "data.csv").string());
    write_csv(result, csv);
  }
  std::ofstream man(dir / "manifest.json", std::ios::binary);
  if (!man) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  man << build_manifest(result).dump(2) << '\n';
}

}  // namespace hqed
