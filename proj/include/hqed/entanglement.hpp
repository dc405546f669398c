#pragma once

#include "hqed/labels.hpp"
#include "hqed/operator_algebra.hpp"
#include "hqed/params.hpp"

#include <vector>

namespace hqed {

struct EntanglementRecord {
  AnalyticStateLabel label;
  double lambda_or_Lambda = 1.0;  // off-diagonal of the reduced 2x2 density in the sigma_x basis, times 2
  double xi = 1.0;
};

// 1 / Tr(rho^2) of the reduced state on `keep`. Throws std::invalid_argument unless psi is normalized (1e-10).
double participation_ratio_numerical(const Ket& psi, const std::vector<int>& keep);

// Factors kept for the numerical partition: atom for QRM kets, atom x photon for hybrid kets.
std::vector<int> polariton_partition(const SpaceLayout& layout);

EntanglementRecord xi_qrm_grwa(int N, Branch b, const SystemParams& p);
EntanglementRecord xi_qrm_grwa_ground(const SystemParams& p);
EntanglementRecord xi_qrm_rwa(int N, const SystemParams& p);
EntanglementRecord xi_hybrid_grwa(int N, int M, Branch b, const SystemParams& p);
EntanglementRecord xi_hybrid_rwa(int N, int M, const SystemParams& p);
EntanglementRecord xi_isolated(int N, const SystemParams& p);
// Any label, either scheme. Separable families (zero-polariton, RWA isolated, JC ground) give 1.
EntanglementRecord analytic_xi(const AnalyticStateLabel& label, const SystemParams& p);

}  // namespace hqed
