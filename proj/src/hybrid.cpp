#include "hqed/hybrid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hqed {

HybridSectorParams sector_params(int N, const SystemParams& p) {
  if (N < 0) throw std::invalid_argument("sector_params: negative N");
  HybridSectorParams s;
  s.N = N;
  s.qrm = grwa_frequencies(N, p);
  const double nu = p.nu();
  s.k_N = s.qrm.center;
  s.q_N = p.g_om * (N + 0.5 + nu * nu);
  s.q_G = p.g_om * nu * nu;
  s.C_N = s.k_N - s.q_N * s.q_N / p.omega_m;
  const double a = s.qrm.alpha_N;
  const double r = s.qrm.Omega_N / p.omega_c;
  s.g_shift = 0.5 * p.g_om * (r * std::sin(a) - std::cos(a));
  s.g_eff = 0.5 * p.g_om * (std::sin(a) + r * std::cos(a));
  return s;
}

double stark_shift_coupling(int N, const SystemParams& p) {
  const auto s = sector_params(N, p);
  return 2.0 * s.q_N * s.g_eff / p.omega_m;
}

double phonon_displaced_overlap(int M, int Mp, int N, const SystemParams& p) {
  return displaced_overlap(M, Mp, sector_params(N, p).g_eff / p.omega_m);
}

PolaritonPhononQuantities polariton_phonon_quantities(int N, int M, const SystemParams& p) {
  if (M < 0) throw std::invalid_argument("polariton_phonon_quantities: negative M");
  const auto s = sector_params(N, p);
  const double nu = s.g_eff / p.omega_m;
  const double T = s.qrm.T_N;
  PolaritonPhononQuantities q;
  q.N = N;
  q.M = M;
  q.overlap_MM = displaced_overlap(M, M, nu);
  q.overlap_M1M1 = displaced_overlap(M + 1, M + 1, nu);
  q.overlap_MM1 = displaced_overlap(M, M + 1, nu);
  q.OmegaP_M_M = T * q.overlap_MM;
  q.OmegaP_M1_M1 = T * q.overlap_M1M1;
  q.OmegaP_M_M1 = T * q.overlap_MM1;
  q.DeltaP_NM = 0.5 * (q.OmegaP_M_M + q.OmegaP_M1_M1) - p.omega_m;
  q.phi_NM = mixing_angle(q.OmegaP_M_M1, q.DeltaP_NM, &q.degenerate);
  return q;
}

RwaSectorParams rwa_sector_params(int N, const SystemParams& p) {
  if (N < 0) throw std::invalid_argument("rwa_sector_params: negative N");
  RwaSectorParams r;
  r.N = N;
  r.jc = jc_quantities(N, p);
  r.k_N = p.omega_c * (N + 0.5);
  r.q_N = p.g_om * (N + 0.5);
  r.C_N = r.k_N - r.q_N * r.q_N / p.omega_m;
  return r;
}

RwaPolaritonPhonon rwa_polariton_phonon(int N, int M, const SystemParams& p) {
  if (M < 0) throw std::invalid_argument("rwa_polariton_phonon: negative M");
  const double R = jc_quantities(N, p).R_N;
  const double coupling = p.g_om * std::sqrt(M + 1.0);
  RwaPolaritonPhonon r;
  r.N = N;
  r.M = M;
  r.splitting = std::hypot(R - p.omega_m, coupling);
  r.theta_NM = mixing_angle(coupling, R - p.omega_m, &r.degenerate);
  return r;
}

HybridEnergyRecord energy_zero_polariton(int M, const SystemParams& p) {
  if (M < 0) throw std::invalid_argument("energy_zero_polariton: negative M");
  const double qG = p.g_om * p.nu() * p.nu();
  return {AnalyticStateLabel::zero_polariton(M), p.omega_m * M - qG * qG / p.omega_m + grwa_ground_energy(p), p};
}

HybridEnergyRecord energy_isolated(int N, const SystemParams& p) {
  const auto s = sector_params(N, p);
  const double o00 = displaced_overlap(0, 0, s.g_eff / p.omega_m);
  return {AnalyticStateLabel::isolated(N), s.C_N - s.g_eff * s.g_eff / p.omega_m - 0.5 * s.qrm.T_N * o00, p};
}

HybridEnergyRecord energy_doublet(int N, int M, Branch b, const SystemParams& p) {
  const auto s = sector_params(N, p);
  const auto q = polariton_phonon_quantities(N, M, p);
  // Block centre uses the difference of the diagonal overlaps (see the 2x2 block of the pair).
  const double centre = s.C_N + p.omega_m * (M + 0.5) - s.g_eff * s.g_eff / p.omega_m +
                        0.25 * (q.OmegaP_M_M - q.OmegaP_M1_M1);
  const double half = 0.5 * std::hypot(q.DeltaP_NM, q.OmegaP_M_M1);
  return {AnalyticStateLabel::doublet(N, M, b), centre + branch_sign(b) * half, p};
}

namespace {

double rwa_energy(const AnalyticStateLabel& l, const SystemParams& p) {
  switch (l.family) {
    case Family::ZeroPolariton: return p.omega_m * l.m + jc_ground_energy(p);
    case Family::Isolated: {
      const auto r = rwa_sector_params(l.n, p);
      return r.C_N - 0.5 * r.jc.R_N;
    }
    case Family::Doublet: {
      const auto r = rwa_sector_params(l.n, p);
      const auto pp = rwa_polariton_phonon(l.n, l.m, p);
      return r.C_N + p.omega_m * (l.m + 0.5) + branch_sign(l.branch) * 0.5 * pp.splitting;
    }
    case Family::QrmGround: return jc_ground_energy(p);
    case Family::QrmDoublet: return jc_doublet_energy(l.n, l.branch, p);
  }
  throw std::logic_error("rwa_energy: unhandled family");
}

}  // namespace

double analytic_energy(const AnalyticStateLabel& l, const SystemParams& p) {
  if (l.scheme == Scheme::Rwa) return rwa_energy(l, p);
  switch (l.family) {
    case Family::ZeroPolariton: return energy_zero_polariton(l.m, p).energy;
    case Family::Isolated: return energy_isolated(l.n, p).energy;
    case Family::Doublet: return energy_doublet(l.n, l.m, l.branch, p).energy;
    case Family::QrmGround: return grwa_ground_energy(p);
    case Family::QrmDoublet: return grwa_doublet_energy(l.n, l.branch, p);
  }
  throw std::logic_error("analytic_energy: unhandled family");
}

HybridFrame::HybridFrame(const SystemParams& p, Cutoffs cutoffs)
    : params_(p), cutoffs_(cutoffs), photon_(p, cutoffs.photon), phonon_rows_(cutoffs.phonon.n_max) {
  if (cutoffs.phonon.n_max < 2) throw std::invalid_argument("HybridFrame: phonon cutoff must be >= 2");
}

SpaceLayout HybridFrame::layout() const {
  return photon_.layout().concat(SpaceLayout::mode(Role::Phonon, cutoffs_.phonon));
}

HybridFrame::Sector& HybridFrame::grwa_sector(int N) {
  auto it = grwa_.find(N);
  if (it != grwa_.end()) return it->second;
  const auto s = sector_params(N, params_);
  const double wm = params_.omega_m;
  auto psi_p = photon_.grwa_doublet(Branch::Plus, N);
  auto psi_m = photon_.grwa_doublet(Branch::Minus, N);
  const double r = 1.0 / std::sqrt(2.0);
  Sector sec{DisplacedColumns((s.q_N - s.g_eff) / wm, phonon_rows_),
             DisplacedColumns((s.q_N + s.g_eff) / wm, phonon_rows_), r * (psi_p + psi_m), r * (psi_p - psi_m)};
  return grwa_.emplace(N, std::move(sec)).first->second;
}

DisplacedColumns& HybridFrame::rwa_sector(int N) {
  auto it = rwa_.find(N);
  if (it != rwa_.end()) return it->second;
  const double q = rwa_sector_params(N, params_).q_N / params_.omega_m;
  return rwa_.emplace(N, DisplacedColumns(q, phonon_rows_)).first->second;
}

DisplacedColumns& HybridFrame::zero_polariton_phonons() {
  if (!zero_pol_) {
    const double qG = params_.g_om * params_.nu() * params_.nu();
    zero_pol_.emplace(qG / params_.omega_m, phonon_rows_);
  }
  return *zero_pol_;
}

namespace {
Eigen::VectorXd kron_vec(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}
}  // namespace

Eigen::VectorXd HybridFrame::ad_pair(Sector& s, Branch b, int M) {
  // (X+ |M_+'> +- X- |M_-'>)/sqrt2
  const double r = 1.0 / std::sqrt(2.0);
  return r * (kron_vec(s.x_plus, s.plus.col(M)) + branch_sign(b) * kron_vec(s.x_minus, s.minus.col(M)));
}

Eigen::VectorXd HybridFrame::grwa_vector(const AnalyticStateLabel& l) {
  switch (l.family) {
    case Family::ZeroPolariton:
      return kron_vec(photon_.grwa_ground(), zero_polariton_phonons().col(l.m));
    case Family::Isolated:
      return ad_pair(grwa_sector(l.n), Branch::Minus, 0);
    case Family::Doublet: {
      const double phi = polariton_phonon_quantities(l.n, l.m, params_).phi_NM;
      const double s = std::sin(0.5 * phi), c = std::cos(0.5 * phi);
      auto& sec = grwa_sector(l.n);
      const auto up = ad_pair(sec, Branch::Plus, l.m);
      const auto dn = ad_pair(sec, Branch::Minus, l.m + 1);
      return l.branch == Branch::Plus ? Eigen::VectorXd(s * up + c * dn) : Eigen::VectorXd(c * up - s * dn);
    }
    default: throw std::invalid_argument("HybridFrame: not a hybrid label: " + l.describe());
  }
}

Eigen::VectorXd HybridFrame::rwa_vector(const AnalyticStateLabel& l) {
  const int q = phonon_rows_;
  switch (l.family) {
    case Family::ZeroPolariton: {
      Eigen::VectorXd ph = Eigen::VectorXd::Zero(q);
      if (l.m < q) ph(l.m) = 1.0;
      return kron_vec(photon_.jc_ground(), ph);
    }
    case Family::Isolated:
      return kron_vec(photon_.jc_doublet(Branch::Minus, l.n), rwa_sector(l.n).col(0));
    case Family::Doublet: {
      const double th = rwa_polariton_phonon(l.n, l.m, params_).theta_NM;
      const double s = std::sin(0.5 * th), c = std::cos(0.5 * th);
      auto& ph = rwa_sector(l.n);
      const auto up = kron_vec(photon_.jc_doublet(Branch::Plus, l.n), ph.col(l.m));
      const auto dn = kron_vec(photon_.jc_doublet(Branch::Minus, l.n), ph.col(l.m + 1));
      return l.branch == Branch::Plus ? Eigen::VectorXd(s * up + c * dn) : Eigen::VectorXd(c * up - s * dn);
    }
    default: throw std::invalid_argument("HybridFrame: not a hybrid label: " + l.describe());
  }
}

EmbeddedKet HybridFrame::embed(const AnalyticStateLabel& l) {
  const Eigen::VectorXd v = l.scheme == Scheme::Grwa ? grwa_vector(l) : rwa_vector(l);
  const double norm = v.norm();
  if (norm == 0.0) throw std::runtime_error("HybridFrame: " + l.describe() + " lies entirely beyond the cutoffs");
  return {l, Ket(layout(), (v / norm).cast<cplx>()), std::abs(1.0 - norm)};
}

EmbeddedKet hybrid_state_embed(const AnalyticStateLabel& label, const SystemParams& p, Cutoffs cutoffs) {
  HybridFrame frame(p, cutoffs);
  auto e = frame.embed(label);
  if (e.norm_deviation > 1e-6) {
    std::ostringstream os;
    os << "hybrid_state_embed: " << label.describe() << " loses " << e.norm_deviation << " of its norm at cutoffs ("
       << cutoffs.photon.n_max << ", " << cutoffs.phonon.n_max << ")";
    throw std::runtime_error(os.str());
  }
  return e;
}

RwaHybridSpectrum rwa_hybrid_spectrum(const SystemParams& p, int N_max, int M_max, Cutoffs cutoffs) {
  if (N_max < 0 || M_max < 0) throw std::invalid_argument("rwa_hybrid_spectrum: negative range");
  HybridFrame frame(p, cutoffs);
  RwaHybridSpectrum out;
  auto add = [&](const AnalyticStateLabel& l) {
    out.records.push_back({l, analytic_energy(l, p), p});
    out.kets.push_back(frame.embed(l));
  };
  for (int M = 0; M <= M_max; ++M) add(AnalyticStateLabel::zero_polariton(M, Scheme::Rwa));
  for (int N = 0; N <= N_max; ++N) {
    add(AnalyticStateLabel::isolated(N, Scheme::Rwa));
    for (int M = 0; M <= M_max; ++M)
      for (Branch b : {Branch::Plus, Branch::Minus}) add(AnalyticStateLabel::doublet(N, M, b, Scheme::Rwa));
  }
  return out;
}

}  // namespace hqed
