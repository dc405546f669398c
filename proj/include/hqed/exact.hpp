#pragma once

#include "hqed/labels.hpp"
#include "hqed/operator_algebra.hpp"
#include "hqed/params.hpp"
#include "hqed/qrm.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hqed {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hybrid: atom x photon x phonon. Rabi: atom x photon (g_om and omega_m unused; phonon cutoff ignored).
enum class Model { Hybrid, Rabi };

struct EigenSolution {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd vectors;  // column i pairs with energies(i); empty when only energies were requested
  SpaceLayout layout;
  SystemParams params;
  Cutoffs cutoffs;
  double max_residual = 0;  // max ||H v - E v|| / ||H||_1 over retained pairs

  int size() const { return static_cast<int>(energies.size()); }
  bool has_vectors() const { return vectors.cols() == energies.size() && energies.size() > 0; }
  Ket state(int i) const;
};

Operator build_hybrid_hamiltonian(const SystemParams& p, Cutoffs cutoffs);
Operator build_rabi_hamiltonian(const SystemParams& p, ModeCutoff photon);

// k lowest eigenpairs of a Hermitian operator (tolerance 1e-10). Throws std::invalid_argument on
// non-Hermitian input and std::runtime_error if LAPACK fails or a residual exceeds 1e-8 ||H||.
EigenSolution eigendecompose(const Operator& H, int k);

// Same spectrum as eigendecompose(build_*_hamiltonian(...)), diagonalized block by block in the
// parity sectors of sigma_z exp(i pi a^dag a) with real arithmetic.
EigenSolution solve(Model model, const SystemParams& p, Cutoffs cutoffs, int k, bool want_vectors = true);

// Parity +1 / -1 of every basis state of the model's layout.
std::vector<int> parity_labels(Model model, Cutoffs cutoffs);

struct ConvergenceOptions {
  int ceiling = 256;  // per mode
  int start = 4;
  // Return the last cutoffs reached, flagged unconverged, instead of throwing ConvergenceError.
  bool allow_unconverged = false;
};

struct ConvergenceResult {
  Cutoffs cutoffs;
  EigenSolution solution;  // at `cutoffs`, with vectors
  double max_change = 0;   // max |E_i(cutoffs) - E_i(1.5 cutoffs)| over the k levels
  int solves = 0;          // energy-only diagonalizations spent in the search
  bool converged = true;
  std::string note;        // why the search stopped early, empty when converged
};

// Largest photon cutoff whose photon numbers past the ladder's turning point stay above `level`.
// For g_om > 0 the polaron energy omega_c n - g_om^2 n^2 / omega_m turns over at
// n = omega_c omega_m / (2 g_om^2), so H is unbounded below and a large enough truncation pulls
// spurious high-photon states under any fixed level. The lower bound used per photon number is
// omega_c n - omega_a / 2 - g_om^2 n^2 / omega_m - g_ac (sqrt(n) + sqrt(n + 1)).
// Returns INT_MAX when g_om == 0 or for the Rabi model.
int photon_stability_limit(const SystemParams& p, double level, Model model = Model::Hybrid);

// Max change of the k lowest energies when both cutoffs grow by 50% (rounded up); +inf if either
// run has fewer than k levels.
double cutoff_sensitivity(Model model, const SystemParams& p, Cutoffs cutoffs, int k);

// Geometric growth (the same 50% step) then per-factor bisection for the smallest cutoffs with
// cutoff_sensitivity < tol. Hybrid probes never pass photon_stability_limit at the k-th level plus
// omega_m. Throws ConvergenceError when a cutoff would pass options.ceiling or the stability limit,
// unless options.allow_unconverged is set.
ConvergenceResult converge_cutoffs(const SystemParams& p, int k, double tol, Model model = Model::Hybrid,
                                   ConvergenceOptions options = {});

// GRWA conserved number on atom x photon; the adiabatic projector sum runs over N < photon cutoff.
Operator conserved_number_grwa_polariton(const SystemParams& p, ModeCutoff photon);
// The same operator tensored with the phonon identity.
Operator conserved_number_grwa(const SystemParams& p, Cutoffs cutoffs);

struct StateAssignment {
  std::vector<AnalyticStateLabel> labels;  // input order
  std::vector<int> index;                  // numerical index, -1 if no state was left
  std::vector<double> fidelity;            // |<analytic|numerical>|^2

  // Position of `label` in `labels`, or -1.
  int find(const AnalyticStateLabel& label) const;
};

// Greedy global maximum-overlap pairing; ties go to the lower numerical index, then the earlier label.
StateAssignment match_states(const EigenSolution& solution, const std::vector<EmbeddedKet>& analytic);

}  // namespace hqed
