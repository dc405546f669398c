#include "hqed/qrm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hqed {

double laguerre(int n, int alpha, double x) {
  if (n < 0) throw std::invalid_argument("laguerre: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double displaced_overlap(int M, int N, double nu) {
  if (M < 0 || N < 0) throw std::invalid_argument("displaced_overlap: negative Fock index");
  if (M > N) return ((M - N) % 2 ? -1.0 : 1.0) * displaced_overlap(N, M, nu);
  const int k = N - M;
  const double x = 4.0 * nu * nu;
  const double lag = laguerre(M, k, x);
  if (k == 0) return std::exp(-2.0 * nu * nu) * lag;
  if (nu == 0.0) return 0.0;
  const double log_mag =
      k * std::log(std::abs(2.0 * nu)) + 0.5 * (std::lgamma(M + 1.0) - std::lgamma(N + 1.0)) - 2.0 * nu * nu;
  const double sign = (nu < 0 && k % 2) ? -1.0 : 1.0;
  return sign * std::exp(log_mag) * lag;
}

double mixing_angle(double two_c, double delta, bool* degenerate) {
  const double scale = std::abs(two_c) + std::abs(delta);
  const bool deg = scale == 0.0;
  if (degenerate) *degenerate = deg;
  return deg ? std::numbers::pi / 2 : std::atan2(two_c, -delta);
}

AdiabaticEnergies adiabatic_spectrum(int N, const SystemParams& p) {
  if (N < 0) throw std::invalid_argument("adiabatic_spectrum: negative N");
  const double nu = p.nu();
  const double base = p.omega_c * (N - nu * nu);
  const double split = 0.5 * p.omega_a * displaced_overlap(N, N, nu);
  return {base + split, base - split};
}

QrmGrwaQuantities grwa_frequencies(int N, const SystemParams& p) {
  if (N < 0) throw std::invalid_argument("grwa_frequencies: negative N");
  const double nu = p.nu();
  QrmGrwaQuantities q;
  q.N = N;
  q.overlap_NN = displaced_overlap(N, N, nu);
  q.overlap_N1N1 = displaced_overlap(N + 1, N + 1, nu);
  q.overlap_NN1 = displaced_overlap(N, N + 1, nu);
  q.Omega_N = 2.0 * p.g_ac * std::sqrt(N + 1.0);
  q.Omega_NN = p.omega_a * q.overlap_NN;
  q.Omega_N1N1 = p.omega_a * q.overlap_N1N1;
  q.Omega_NNp = p.omega_a * q.overlap_NN1;
  q.Delta_N = 0.5 * (q.Omega_NN + q.Omega_N1N1) - p.omega_c;
  q.T_N = std::hypot(q.Omega_NNp, q.Delta_N);
  q.alpha_N = mixing_angle(q.Omega_NNp, q.Delta_N, &q.degenerate);
  q.center = p.omega_c * (N + 0.5 - nu * nu) + 0.25 * (q.Omega_NN - q.Omega_N1N1);
  return q;
}

double grwa_ground_energy(const SystemParams& p) {
  return -p.g_ac * p.g_ac / p.omega_c - 0.5 * p.omega_a * displaced_overlap(0, 0, p.nu());
}

double grwa_doublet_energy(int N, Branch b, const SystemParams& p) {
  const auto q = grwa_frequencies(N, p);
  return q.center + branch_sign(b) * 0.5 * q.T_N;
}

QrmSpectrum grwa_qrm_spectrum(const SystemParams& p, int N_max) {
  if (N_max < 0) throw std::invalid_argument("grwa_qrm_spectrum: negative N_max");
  QrmSpectrum s;
  s.E_grwa_G = grwa_ground_energy(p);
  const double nu = p.nu();
  for (int N = 0; N <= N_max; ++N) {
    const auto q = grwa_frequencies(N, p);
    const auto ad = adiabatic_spectrum(N, p);
    s.levels.push_back({N, p.omega_c * (N - nu * nu), ad.plus, ad.minus, q.center + 0.5 * q.T_N,
                        q.center - 0.5 * q.T_N});
  }
  return s;
}

JcQuantities jc_quantities(int N, const SystemParams& p) {
  if (N < 0) throw std::invalid_argument("jc_quantities: negative N");
  JcQuantities j;
  j.N = N;
  j.Omega_N = 2.0 * p.g_ac * std::sqrt(N + 1.0);
  const double detuning = p.omega_a - p.omega_c;
  j.R_N = std::hypot(detuning, j.Omega_N);
  j.beta_N = mixing_angle(j.Omega_N, detuning, &j.degenerate);
  return j;
}

double jc_ground_energy(const SystemParams& p) { return -0.5 * p.omega_a; }

double jc_doublet_energy(int N, Branch b, const SystemParams& p) {
  return p.omega_c * (N + 0.5) + branch_sign(b) * 0.5 * jc_quantities(N, p).R_N;
}

const Eigen::VectorXd& DisplacedColumns::col(int M) {
  if (M < 0) throw std::invalid_argument("DisplacedColumns: negative Fock index");
  while (static_cast<int>(cols_.size()) <= M) {
    const int m = static_cast<int>(cols_.size());
    Eigen::VectorXd c(rows_);
    // <n|D(nu)|m> = <n|D(-2(-nu/2))|m>
    for (int n = 0; n < rows_; ++n) c(n) = displaced_overlap(n, m, -0.5 * nu_);
    cols_.push_back(std::move(c));
  }
  return cols_[M];
}

PhotonFrame::PhotonFrame(const SystemParams& p, ModeCutoff target)
    : params_(p), target_(target.n_max), plus_(-p.nu(), target.n_max), minus_(p.nu(), target.n_max) {
  p.validate();
  if (target_ < 2) throw std::invalid_argument("PhotonFrame: photon cutoff must be >= 2");
}

SpaceLayout PhotonFrame::layout() const {
  return SpaceLayout::atom().concat(SpaceLayout::mode(Role::Photon, ModeCutoff(target_)));
}

Eigen::VectorXd PhotonFrame::adiabatic(Branch b, int N) {
  // (|+x>|N_+> + s |-x>|N_->)/sqrt2 with |+-x> = (|+z> +- |-z>)/sqrt2
  const double s = branch_sign(b);
  const auto& up = plus_.col(N);
  const auto& dn = minus_.col(N);
  Eigen::VectorXd v(2 * target_);
  v.head(target_) = 0.5 * (up + s * dn);
  v.tail(target_) = 0.5 * (up - s * dn);
  return v;
}

Eigen::VectorXd PhotonFrame::grwa_doublet(Branch b, int N) {
  const double a = grwa_frequencies(N, params_).alpha_N;
  const double s = std::sin(0.5 * a), c = std::cos(0.5 * a);
  const auto up = adiabatic(Branch::Plus, N);
  const auto dn = adiabatic(Branch::Minus, N + 1);
  return b == Branch::Plus ? Eigen::VectorXd(s * up + c * dn) : Eigen::VectorXd(c * up - s * dn);
}

Eigen::VectorXd PhotonFrame::grwa_ground() { return adiabatic(Branch::Minus, 0); }

Eigen::VectorXd PhotonFrame::jc_doublet(Branch b, int N) const {
  if (N < 0) throw std::invalid_argument("jc_doublet: negative N");
  const double beta = jc_quantities(N, params_).beta_N;
  const double s = std::sin(0.5 * beta), c = std::cos(0.5 * beta);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * target_);
  if (N < target_) v(N) = b == Branch::Plus ? s : c;
  if (N + 1 < target_) v(target_ + N + 1) = b == Branch::Plus ? c : -s;
  return v;
}

Eigen::VectorXd PhotonFrame::jc_ground() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * target_);
  v(target_) = 1.0;
  return v;
}

Eigen::VectorXd PhotonFrame::vector(const AnalyticStateLabel& l) {
  const bool grwa = l.scheme == Scheme::Grwa;
  switch (l.family) {
    case Family::QrmGround: return grwa ? grwa_ground() : jc_ground();
    case Family::QrmDoublet: return grwa ? grwa_doublet(l.branch, l.n) : jc_doublet(l.branch, l.n);
    default: throw std::invalid_argument("PhotonFrame: not a QRM label: " + l.describe());
  }
}

EmbeddedKet PhotonFrame::project(const AnalyticStateLabel& label, const Eigen::VectorXd& v) const {
  const double norm = v.norm();
  if (norm == 0.0) throw std::runtime_error("PhotonFrame: " + label.describe() + " lies entirely beyond the cutoff");
  return {label, Ket(layout(), (v / norm).cast<cplx>()), std::abs(1.0 - norm)};
}

EmbeddedKet grwa_state_embed(const AnalyticStateLabel& label, const SystemParams& p, ModeCutoff photon) {
  PhotonFrame frame(p, photon);
  auto e = frame.project(label, frame.vector(label.with_scheme(Scheme::Grwa)));
  if (e.norm_deviation > 1e-6) {
    std::ostringstream os;
    os << "grwa_state_embed: " << label.describe() << " loses " << e.norm_deviation << " of its norm at photon cutoff "
       << photon.n_max;
    throw std::runtime_error(os.str());
  }
  return e;
}

JcSpectrum jc_spectrum_and_states(const SystemParams& p, int N_max, ModeCutoff photon) {
  if (N_max < 0) throw std::invalid_argument("jc_spectrum_and_states: negative N_max");
  PhotonFrame frame(p, photon);
  JcSpectrum s;
  s.ground_energy = jc_ground_energy(p);
  const auto g = AnalyticStateLabel::qrm_ground(Scheme::Rwa);
  s.kets.push_back(frame.project(g, frame.vector(g)));
  for (int N = 0; N <= N_max; ++N) {
    s.quantities.push_back(jc_quantities(N, p));
    s.E_plus.push_back(jc_doublet_energy(N, Branch::Plus, p));
    s.E_minus.push_back(jc_doublet_energy(N, Branch::Minus, p));
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      const auto l = AnalyticStateLabel::qrm_doublet(N, b, Scheme::Rwa);
      s.kets.push_back(frame.project(l, frame.vector(l)));
    }
  }
  return s;
}

}  // namespace hqed
