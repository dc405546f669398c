#pragma once

#include "hqed/labels.hpp"
#include "hqed/operator_algebra.hpp"
#include "hqed/params.hpp"

#include <deque>
#include <vector>

namespace hqed {

// Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence in n.
double laguerre(int n, int alpha, double x);

// <M_-|N_+> with |N_pm> = D(-/+nu)|N>, i.e. <M|D(-2nu)|N>.
double displaced_overlap(int M, int N, double nu);

// Leading `rows` amplitudes <n|D(nu)|M> of an untruncated displaced Fock state; columns cached on demand.
class DisplacedColumns {
 public:
  DisplacedColumns(double nu, int rows) : nu_(nu), rows_(rows) {}
  const Eigen::VectorXd& col(int M);
  int rows() const { return rows_; }

 private:
  double nu_;
  int rows_;
  std::deque<Eigen::VectorXd> cols_;  // stable references across growth
};

// Mixing angle of the 2x2 block [[a, c], [c, a - delta]] for the upper eigenvector
// (sin(x/2), cos(x/2)): x = atan2(2c, -delta). Returns pi/2 and sets `degenerate` when both vanish.
double mixing_angle(double two_c, double delta, bool* degenerate = nullptr);

struct AdiabaticEnergies {
  double plus;
  double minus;
};
AdiabaticEnergies adiabatic_spectrum(int N, const SystemParams& p);

struct QrmGrwaQuantities {
  int N = 0;
  double overlap_NN = 0;    // <N_-|N_+>
  double overlap_N1N1 = 0;  // <N+1_-|N+1_+>
  double overlap_NN1 = 0;   // <N_-|N+1_+>
  double Omega_N = 0;       // 2 g_ac sqrt(N+1)
  double Omega_NN = 0;      // omega_a <N_-|N_+>
  double Omega_N1N1 = 0;
  double Omega_NNp = 0;     // omega_a <N_-|N+1_+>
  double Delta_N = 0;
  double T_N = 0;
  double alpha_N = 0;
  double center = 0;        // k_N: midpoint of the sector's 2x2 block
  bool degenerate = false;  // Omega_NNp = Delta_N = 0, alpha_N set to pi/2
};
QrmGrwaQuantities grwa_frequencies(int N, const SystemParams& p);

struct QrmEnergyRecord {
  int N = 0;
  double E_N = 0;  // omega_a = 0 level omega_c (N - nu^2)
  double E_ad_plus = 0, E_ad_minus = 0;
  double E_grwa_plus = 0, E_grwa_minus = 0;
};
struct QrmSpectrum {
  double E_grwa_G = 0;
  std::vector<QrmEnergyRecord> levels;  // N = 0 .. N_max
};
QrmSpectrum grwa_qrm_spectrum(const SystemParams& p, int N_max);
double grwa_ground_energy(const SystemParams& p);
double grwa_doublet_energy(int N, Branch b, const SystemParams& p);

struct JcQuantities {
  int N = 0;
  double Omega_N = 0;
  double beta_N = 0;
  double R_N = 0;
  bool degenerate = false;
};
JcQuantities jc_quantities(int N, const SystemParams& p);
double jc_ground_energy(const SystemParams& p);
double jc_doublet_energy(int N, Branch b, const SystemParams& p);

// Ket with the weight it lost to the cutoff when projected from a larger space.
struct EmbeddedKet {
  AnalyticStateLabel label;
  Ket ket;
  double norm_deviation = 0;
};

// Analytic atom x photon(target) vectors built from untruncated displaced Fock columns; the weight
// missing from the truncated vector is the norm deviation. One frame per thread (column cache).
class PhotonFrame {
 public:
  PhotonFrame(const SystemParams& p, ModeCutoff target);

  const SystemParams& params() const { return params_; }
  int target() const { return target_; }
  SpaceLayout layout() const;

  // Unnormalized truncations on atom(2) x photon(target).
  Eigen::VectorXd adiabatic(Branch b, int N);
  Eigen::VectorXd grwa_doublet(Branch b, int N);
  Eigen::VectorXd grwa_ground();
  Eigen::VectorXd jc_doublet(Branch b, int N) const;
  Eigen::VectorXd jc_ground() const;
  Eigen::VectorXd vector(const AnalyticStateLabel& qrm_label);

  // Renormalizes; norm_deviation = |1 - ||v|||.
  EmbeddedKet project(const AnalyticStateLabel& label, const Eigen::VectorXd& v) const;

 private:
  SystemParams params_;
  int target_;
  DisplacedColumns plus_;   // |N_+> = D(-nu)|N>
  DisplacedColumns minus_;  // |N_-> = D(+nu)|N>
};

// Throws std::runtime_error if the norm deviation exceeds 1e-6.
EmbeddedKet grwa_state_embed(const AnalyticStateLabel& label, const SystemParams& p, ModeCutoff photon);

struct JcSpectrum {
  double ground_energy = 0;
  std::vector<JcQuantities> quantities;  // N = 0 .. N_max
  std::vector<double> E_plus, E_minus;
  std::vector<EmbeddedKet> kets;         // ground, then (+,N), (-,N) for N = 0 .. N_max
};
JcSpectrum jc_spectrum_and_states(const SystemParams& p, int N_max, ModeCutoff photon);

}  // namespace hqed
