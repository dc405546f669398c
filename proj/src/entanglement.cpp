#include "hqed/entanglement.hpp"

#include "hqed/hybrid.hpp"
#include "hqed/qrm.hpp"

#include <cmath>
#include <stdexcept>

namespace hqed {

double participation_ratio_numerical(const Ket& psi, const std::vector<int>& keep) {
  if (!psi.is_normalized(1e-10)) throw std::invalid_argument("participation_ratio_numerical: state is not normalized");
  return 1.0 / purity(reduced_density(psi, keep));
}

std::vector<int> polariton_partition(const SpaceLayout& layout) {
  const auto& f = layout.factors();
  if (f.empty() || f[0].role != Role::Atom) throw LayoutError("polariton_partition: layout must start with the atom");
  if (f.size() == 2) return {0};
  if (f.size() == 3) return {0, 1};
  throw LayoutError("polariton_partition: expected atom x photon or atom x photon x phonon, got " + layout.describe());
}

namespace {

double xi_from(double lambda) { return 2.0 / (1.0 + lambda * lambda); }

// f_+ = sin, f_- = cos of half the mixing angle; o_aa, o_bb diagonal overlaps, o_ab the cross overlap.
double two_level_lambda(Branch b, double angle, double o_aa, double o_bb, double o_ab) {
  const double fp = std::sin(0.5 * angle), fm = std::cos(0.5 * angle);
  if (b == Branch::Plus) return fp * fp * o_aa - fm * fm * o_bb + 2.0 * fp * fm * o_ab;
  return fm * fm * o_aa - fp * fp * o_bb - 2.0 * fp * fm * o_ab;
}

}  // namespace

EntanglementRecord xi_qrm_grwa(int N, Branch b, const SystemParams& p) {
  const auto q = grwa_frequencies(N, p);
  const double l = two_level_lambda(b, q.alpha_N, q.overlap_NN, q.overlap_N1N1, q.overlap_NN1);
  return {AnalyticStateLabel::qrm_doublet(N, b), l, xi_from(l)};
}

EntanglementRecord xi_qrm_grwa_ground(const SystemParams& p) {
  const double l = displaced_overlap(0, 0, p.nu());
  return {AnalyticStateLabel::qrm_ground(), l, xi_from(l)};
}

EntanglementRecord xi_qrm_rwa(int N, const SystemParams& p) {
  const double l = std::cos(jc_quantities(N, p).beta_N);
  return {AnalyticStateLabel::qrm_doublet(N, Branch::Plus, Scheme::Rwa), l, xi_from(l)};
}

EntanglementRecord xi_hybrid_grwa(int N, int M, Branch b, const SystemParams& p) {
  const auto q = polariton_phonon_quantities(N, M, p);
  const double l = two_level_lambda(b, q.phi_NM, q.overlap_MM, q.overlap_M1M1, q.overlap_MM1);
  return {AnalyticStateLabel::doublet(N, M, b), l, xi_from(l)};
}

EntanglementRecord xi_hybrid_rwa(int N, int M, const SystemParams& p) {
  const double l = std::cos(rwa_polariton_phonon(N, M, p).theta_NM);
  return {AnalyticStateLabel::doublet(N, M, Branch::Plus, Scheme::Rwa), l, xi_from(l)};
}

EntanglementRecord xi_isolated(int N, const SystemParams& p) {
  const double l = phonon_displaced_overlap(0, 0, N, p);
  return {AnalyticStateLabel::isolated(N), l, xi_from(l)};
}

EntanglementRecord analytic_xi(const AnalyticStateLabel& label, const SystemParams& p) {
  EntanglementRecord r;
  if (label.scheme == Scheme::Grwa) {
    switch (label.family) {
      case Family::QrmGround: r = xi_qrm_grwa_ground(p); break;
      case Family::QrmDoublet: r = xi_qrm_grwa(label.n, label.branch, p); break;
      case Family::Doublet: r = xi_hybrid_grwa(label.n, label.m, label.branch, p); break;
      case Family::Isolated: r = xi_isolated(label.n, p); break;
      case Family::ZeroPolariton: break;
    }
  } else {
    switch (label.family) {
      case Family::QrmDoublet: r = xi_qrm_rwa(label.n, p); break;
      case Family::Doublet: r = xi_hybrid_rwa(label.n, label.m, p); break;
      case Family::QrmGround:
      case Family::Isolated:
      case Family::ZeroPolariton: break;
    }
  }
  r.label = label;
  return r;
}

}  // namespace hqed
