#pragma once

#include "hqed/labels.hpp"
#include "hqed/operator_algebra.hpp"
#include "hqed/params.hpp"
#include "hqed/qrm.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hqed {

struct HybridSectorParams {
  int N = 0;
  double k_N = 0;
  double q_N = 0;
  double q_G = 0;
  double C_N = 0;
  double g_shift = 0;
  double g_eff = 0;
  QrmGrwaQuantities qrm;
};
HybridSectorParams sector_params(int N, const SystemParams& p);

// Off-diagonal polariton-phonon term dropped from every energy; reported for diagnostics only.
double stark_shift_coupling(int N, const SystemParams& p);

// <M_-'|Mp_+'> in sector N; the common D(q_N/omega_m) cancels.
double phonon_displaced_overlap(int M, int Mp, int N, const SystemParams& p);

struct PolaritonPhononQuantities {
  int N = 0, M = 0;
  double overlap_MM = 0, overlap_M1M1 = 0, overlap_MM1 = 0;  // phonon overlaps, <M_-'|M+1_+'> last
  double OmegaP_M_M1 = 0;
  double OmegaP_M_M = 0;
  double OmegaP_M1_M1 = 0;
  double DeltaP_NM = 0;
  double phi_NM = 0;
  bool degenerate = false;
};
PolaritonPhononQuantities polariton_phonon_quantities(int N, int M, const SystemParams& p);

struct RwaSectorParams {
  int N = 0;
  double k_N = 0;  // omega_c (N + 1/2)
  double q_N = 0;  // g_om (N + 1/2)
  double C_N = 0;
  JcQuantities jc;
};
RwaSectorParams rwa_sector_params(int N, const SystemParams& p);

struct RwaPolaritonPhonon {
  int N = 0, M = 0;
  double theta_NM = 0;
  double splitting = 0;  // sqrt((R_N - omega_m)^2 + g_om^2 (M+1))
  bool degenerate = false;
};
RwaPolaritonPhonon rwa_polariton_phonon(int N, int M, const SystemParams& p);

struct HybridEnergyRecord {
  AnalyticStateLabel label;
  double energy = 0;
  SystemParams params;
};
HybridEnergyRecord energy_zero_polariton(int M, const SystemParams& p);
HybridEnergyRecord energy_isolated(int N, const SystemParams& p);
HybridEnergyRecord energy_doublet(int N, int M, Branch b, const SystemParams& p);
// Any label, either scheme, hybrid or QRM family.
double analytic_energy(const AnalyticStateLabel& label, const SystemParams& p);

// Embeds hybrid labels of both schemes on atom x photon x phonon. Phonon matrices are cached per
// sector, so one frame serves all labels at a parameter point; not safe for concurrent use.
class HybridFrame {
 public:
  HybridFrame(const SystemParams& p, Cutoffs cutoffs);

  PhotonFrame& photon_frame() { return photon_; }
  const Cutoffs& cutoffs() const { return cutoffs_; }
  SpaceLayout layout() const;
  EmbeddedKet embed(const AnalyticStateLabel& label);

 private:
  struct Sector {
    DisplacedColumns plus;   // |M_+'> = D((q_N - g_eff)/omega_m)|M>
    DisplacedColumns minus;  // |M_-'> = D((q_N + g_eff)/omega_m)|M>
    Eigen::VectorXd x_plus, x_minus;  // (psi_+ +- psi_-)/sqrt2, truncated
  };
  Sector& grwa_sector(int N);
  DisplacedColumns& rwa_sector(int N);
  DisplacedColumns& zero_polariton_phonons();
  Eigen::VectorXd grwa_vector(const AnalyticStateLabel& l);
  Eigen::VectorXd rwa_vector(const AnalyticStateLabel& l);
  Eigen::VectorXd ad_pair(Sector& s, Branch b, int M);

  SystemParams params_;
  Cutoffs cutoffs_;
  PhotonFrame photon_;
  int phonon_rows_;
  std::map<int, Sector> grwa_;
  std::map<int, DisplacedColumns> rwa_;
  std::optional<DisplacedColumns> zero_pol_;
};

// Throws std::runtime_error if the norm deviation exceeds 1e-6.
EmbeddedKet hybrid_state_embed(const AnalyticStateLabel& label, const SystemParams& p, Cutoffs cutoffs);

struct RwaHybridSpectrum {
  std::vector<HybridEnergyRecord> records;
  std::vector<EmbeddedKet> kets;  // parallel to records
};
// Zero-polariton M <= M_max, isolated N <= N_max, doublets (N, M, +-).
RwaHybridSpectrum rwa_hybrid_spectrum(const SystemParams& p, int N_max, int M_max, Cutoffs cutoffs);

}  // namespace hqed
