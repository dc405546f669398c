#include "hqed/sweep.hpp"

namespace hqed {
namespace {

SystemParams freq(double wa, double wc, double g_om = 0.1) { return {wa, wc, 1.0, 0.0, g_om}; }

Axis linear(const std::string& var, double start, double stop, int count) { return {var, start, stop, count, false}; }

FamilySpec fam(const std::string& name, std::vector<int> n = {}, std::vector<int> m = {},
               std::vector<Branch> b = {}) {
  return {name, std::move(n), std::move(m), std::move(b)};
}

Preset make(std::string name, std::string figure, std::string summary, SystemParams p, std::vector<Axis> axes,
            std::vector<Solver> solvers, std::vector<FamilySpec> families, int levels,
            std::vector<std::string> outputs = {"energies", "fidelities", "xi"}) {
  SweepConfig c;
  c.name = name;
  c.figure = figure;
  c.params = p;
  c.axes = std::move(axes);
  c.solvers = std::move(solvers);
  c.families = std::move(families);
  c.levels = levels;
  c.want_energies = c.want_fidelities = c.want_xi = false;
  for (const auto& o : outputs) (o == "energies" ? c.want_energies : o == "fidelities" ? c.want_fidelities : c.want_xi) = true;
  return {std::move(name), std::move(figure), std::move(summary), std::move(c)};
}

std::vector<Preset> build() {
  const std::vector<Solver> all{Solver::Exact, Solver::Grwa, Solver::Rwa};
  const std::vector<Solver> grwa{Solver::Grwa};
  const auto g_ac_fig3 = linear("g_ac", 0.0, 10.0, 41);
  const auto up = std::vector<Branch>{Branch::Plus};
  std::vector<Preset> v;

  v.push_back(make("fig2a", "Fig. 2(a)", "GRWA Rabi frequency T_0 vs g_ac; omega_c = omega_a = 5",
                   freq(5, 5), {linear("g_ac", 0.0, 10.0, 201)}, grwa, {fam("T", {0})}, 1, {"energies"}));
  v.push_back(make("fig2b", "Fig. 2(b)", "g_shift, g_eff (and T_N) for N = 0, 4, 8 vs g_ac; g_om = 0.1",
                   freq(5, 5), {linear("g_ac", 0.0, 10.0, 201)}, grwa,
                   {fam("g_shift", {0, 4, 8}), fam("g_eff", {0, 4, 8}), fam("T", {0, 4, 8})}, 1, {"energies"}));

  v.push_back(make("fig3a", "Fig. 3(a)", "zero-polariton levels E_M, M = 0..5, resonance", freq(5, 5), {g_ac_fig3},
                   all, {fam("zero_polariton", {}, {0, 1, 2, 3, 4, 5})}, 40));
  v.push_back(make("fig3b", "Fig. 3(b)", "isolated-sector levels E_G^(N), N = 0..5, resonance", freq(5, 5),
                   {g_ac_fig3}, all, {fam("isolated", {0, 1, 2, 3, 4, 5})}, 200));
  v.push_back(make("fig3c", "Fig. 3(c)", "polariton-phonon doublets N = 0..1, M = 0..2, resonance", freq(5, 5),
                   {g_ac_fig3}, all, {fam("doublet", {0, 1}, {0, 1, 2})}, 60));
  v.push_back(make("fig3d", "Fig. 3(d)", "polariton-phonon doublets N = 0..1, M = 0..2, omega_a = 10, omega_c = 5",
                   freq(10, 5), {g_ac_fig3}, all, {fam("doublet", {0, 1}, {0, 1, 2})}, 60));
  v.push_back(make("fig3e", "Fig. 3(e)", "fidelity of Psi^(0)_{+-,2}, resonance", freq(5, 5), {g_ac_fig3}, all,
                   {fam("doublet", {0}, {2})}, 40));
  v.push_back(make("fig3f", "Fig. 3(f)", "fidelity of Psi^(0)_{+-,2}, omega_a = 10, omega_c = 5", freq(10, 5),
                   {g_ac_fig3}, all, {fam("doublet", {0}, {2})}, 40));

  auto fig4 = [&](const char* name, const char* fig, double g_ac, const char* summary) {
    auto p = freq(5, 5, 0.0);
    p.g_ac = g_ac;
    return make(name, fig, summary, p, {linear("g_om", 0.0, 0.5, 26)}, all, {fam("doublet", {0, 1}, {0, 1, 2})}, 60);
  };
  v.push_back(fig4("fig4a", "Fig. 4(a)", 0.5, "doublets vs g_om at g_ac = 0.5, resonance"));
  v.push_back(fig4("fig4b", "Fig. 4(b)", 2.5, "doublets vs g_om at g_ac = 2.5, resonance"));
  v.back().config.notes.push_back(
      "g_ac = 2.5 omega_m follows the figure discussion in the text; the figure caption lists g_ac = 0.5 omega_m for "
      "both panels");

  v.push_back(make("fig5a", "Fig. 5(a)", "participation ratio of the QRM state psi_{+,3}, resonance omega = 5",
                   freq(5, 5, 0.0), {linear("g_ac", 0.0, 10.0, 101)}, all, {fam("qrm_doublet", {3}, {}, up)}, 20));
  v.push_back(make("fig5b", "Fig. 5(b)", "participation ratio of the QRM state psi_{+,3}, omega_c = 2 omega_a",
                   freq(2.5, 5, 0.0), {linear("g_ac", 0.0, 10.0, 101)}, all, {fam("qrm_doublet", {3}, {}, up)}, 20));

  const auto doublet22 = std::vector<FamilySpec>{fam("doublet", {2}, {2}, up)};
  v.push_back(make("fig6a", "Fig. 6(a)", "GRWA xi^(2)_{+,2} over (g_ac, g_om), omega_a = omega_c = omega_m",
                   freq(1, 1, 0.0), {linear("g_ac", 0.0, 3.0, 61), linear("g_om", 0.0, 1.0, 21)}, grwa, doublet22, 1,
                   {"xi"}));
  v.push_back(make("fig6b", "Fig. 6(b)", "GRWA and RWA xi^(2)_{+,2} vs g_ac at g_om = 0.05", freq(1, 1, 0.05),
                   {linear("g_ac", 0.0, 3.0, 301)}, {Solver::Grwa, Solver::Rwa}, doublet22, 1, {"xi"}));
  v.push_back(make("fig6c", "Fig. 6(c)", "RWA xi^(2)_{+,2} over (g_ac, g_om), omega_a = omega_c = omega_m",
                   freq(1, 1, 0.0), {linear("g_ac", 0.0, 3.0, 61), linear("g_om", 0.0, 1.0, 21)}, {Solver::Rwa},
                   doublet22, 1, {"xi"}));
  v.push_back(make("fig6d", "Fig. 6(d)", "GRWA xi^(2)_{+,2} vs g_om at g_ac = 0.3 and 1.5", freq(1, 1, 0.0),
                   {linear("g_ac", 0.3, 1.5, 2), linear("g_om", 0.0, 1.0, 101)}, grwa, doublet22, 1, {"xi"}));
  return v;
}

}  // namespace

const std::vector<Preset>& list_presets() {
  static const std::vector<Preset> presets = build();
  return presets;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : list_presets())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace hqed
