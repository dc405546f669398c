#include <doctest.h>

#include "hqed/entanglement.hpp"
#include "hqed/hybrid.hpp"
#include "hqed/qrm.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace hqed;

namespace {

Ket random_ket(const SpaceLayout& layout, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(layout.dim());
  for (auto& x : v) x = cplx(n(rng), n(rng));
  return {layout, v.normalized()};
}

Cutoffs cutoffs_for(const SystemParams& p, int max_n, int max_m) {
  double phonon_shift = 0;
  for (int N = 0; N <= max_n; ++N) {
    const auto s = sector_params(N, p);
    phonon_shift = std::max(phonon_shift, (std::abs(s.q_N) + std::abs(s.g_eff)) / p.omega_m);
  }
  return {ModeCutoff(safe_displacement_cutoff(p.nu(), max_n + 2)),
          ModeCutoff(safe_displacement_cutoff(phonon_shift, max_m + 2))};
}

}  // namespace

TEST_CASE("participation_ratio_product_and_bell") {
  const Ket prod = kron(spin_ket(SpinState::MinusX), fock_ket(1, ModeCutoff(3)));
  CHECK(participation_ratio_numerical(prod, {0}) == doctest::Approx(1.0).epsilon(1e-14));
  const SpaceLayout l = SpaceLayout::atom().concat(SpaceLayout::mode(Role::Photon, ModeCutoff(2)));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  CHECK(participation_ratio_numerical(Ket(l, v), {0}) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("participation_ratio_partition_symmetry") {
  const SpaceLayout l = SpaceLayout::atom()
                            .concat(SpaceLayout::mode(Role::Photon, ModeCutoff(4)))
                            .concat(SpaceLayout::mode(Role::Phonon, ModeCutoff(3)));
  for (unsigned seed : {1u, 2u, 3u}) {
    const Ket psi = random_ket(l, seed);
    CHECK(std::abs(participation_ratio_numerical(psi, {0}) - participation_ratio_numerical(psi, {1, 2})) < 1e-10);
    CHECK(std::abs(participation_ratio_numerical(psi, {0, 1}) - participation_ratio_numerical(psi, {2})) < 1e-10);
  }
}

TEST_CASE("participation_ratio_requires_normalized_state") {
  const SpaceLayout l = SpaceLayout::atom().concat(SpaceLayout::mode(Role::Photon, ModeCutoff(2)));
  Ket psi = random_ket(l, 4);
  psi.v *= 1.01;
  CHECK_THROWS_AS(participation_ratio_numerical(psi, {0}), std::invalid_argument);
}

TEST_CASE("polariton_partition_by_layout") {
  const SpaceLayout qrm = SpaceLayout::atom().concat(SpaceLayout::mode(Role::Photon, ModeCutoff(3)));
  const SpaceLayout hyb = qrm.concat(SpaceLayout::mode(Role::Phonon, ModeCutoff(3)));
  CHECK(polariton_partition(qrm) == std::vector<int>{0});
  CHECK(polariton_partition(hyb) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(polariton_partition(SpaceLayout::mode(Role::Photon, ModeCutoff(3))), LayoutError);
}

TEST_CASE("qrm_grwa_xi_uncoupled_off_resonance_is_separable") {
  // At exact resonance the degenerate convention alpha = pi/2 picks an equal superposition, so use detuning.
  for (int N = 0; N <= 4; ++N)
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      const auto r = xi_qrm_grwa(N, b, SystemParams{3, 5, 1, 0, 0});
      CHECK(std::abs(r.lambda_or_Lambda) == doctest::Approx(1.0));
      CHECK(r.xi == doctest::Approx(1.0));
    }
}

TEST_CASE("qrm_rwa_xi_limits") {
  for (double g : {0.01, 0.5, 3.0})
    for (int N = 0; N <= 3; ++N) CHECK(xi_qrm_rwa(N, SystemParams{5, 5, 1, g, 0}).xi == doctest::Approx(2.0));
  CHECK(xi_qrm_rwa(2, SystemParams{3, 5, 1, 0, 0}).xi == doctest::Approx(1.0));
  double prev = 0;
  for (int i = 0; i <= 100; ++i) {
    const double xi = xi_qrm_rwa(3, SystemParams{2.5, 5, 1, 0.1 * i, 0}).xi;
    CHECK(xi >= prev);
    prev = xi;
  }
  CHECK(prev > 1.99);
}

TEST_CASE("hybrid_grwa_xi_limits") {
  // g_om -> 0: the phonon overlaps become Kronecker deltas and |Lambda| -> |cos phi|.
  for (double g : {0.2, 1.0, 2.5})
    for (int M = 0; M <= 3; ++M) {
      const SystemParams p{1, 1, 1, g, 1e-7};
      const double c = std::cos(polariton_phonon_quantities(2, M, p).phi_NM);
      for (Branch b : {Branch::Plus, Branch::Minus})
        CHECK(xi_hybrid_grwa(2, M, b, p).xi == doctest::Approx(2.0 / (1.0 + c * c)).epsilon(1e-6));
    }
  for (int N = 0; N <= 3; ++N)
    for (int M = 0; M <= 3; ++M)
      for (Branch b : {Branch::Plus, Branch::Minus})
        for (double wa : {1.0, 3.0}) CHECK(xi_hybrid_grwa(N, M, b, SystemParams{wa, 1, 1, 0, 0}).xi == doctest::Approx(1.0));
}

TEST_CASE("hybrid_rwa_xi_single_peak_and_strong_limit") {
  const double g_peak = std::sqrt(3.0) / 6.0;
  CHECK(xi_hybrid_rwa(2, 2, SystemParams{1, 1, 1, g_peak, 0.05}).xi == doctest::Approx(2.0).epsilon(1e-12));
  int maxima = 0;
  std::vector<double> xs;
  for (int i = 0; i <= 3000; ++i) xs.push_back(xi_hybrid_rwa(2, 2, SystemParams{1, 1, 1, i * 1e-3, 0.05}).xi);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) maxima += xs[i] > xs[i - 1] && xs[i] >= xs[i + 1];
  CHECK(maxima == 1);
  CHECK(xi_hybrid_rwa(2, 2, SystemParams{1, 1, 1, 1.0, 1e6}).xi == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("hybrid_rwa_and_grwa_xi_match_at_weak_coupling") {
  for (int M = 0; M <= 3; ++M) {
    const SystemParams p{1, 1, 1, 0.05, 0.01};
    CHECK(std::abs(xi_hybrid_grwa(2, M, Branch::Plus, p).xi - xi_hybrid_rwa(2, M, p).xi) < 0.01);
  }
}

TEST_CASE("isolated_xi_limits") {
  CHECK(xi_isolated(1, SystemParams{5, 5, 1, 1.0, 1e-8}).xi == doctest::Approx(1.0));
  CHECK(xi_isolated(1, SystemParams{5, 5, 1, 8.0, 5.0}).xi == doctest::Approx(2.0).epsilon(1e-9));
  for (double g : {0.0, 1.0, 4.0})
    CHECK(analytic_xi(AnalyticStateLabel::isolated(2, Scheme::Rwa), SystemParams{5, 5, 1, g, 0.5}).xi == 1.0);
}

TEST_CASE("xi_bounded_for_every_family") {
  for (double wa : {1.0, 5.0, 10.0})
    for (double g = 0; g <= 10.0; g += 0.5)
      for (double gom : {0.0, 0.1, 0.5, 1.0}) {
        const SystemParams p{wa, 5, 1, g, gom};
        std::vector<AnalyticStateLabel> labels{AnalyticStateLabel::qrm_ground(), AnalyticStateLabel::zero_polariton(1)};
        for (int N = 0; N <= 3; ++N) {
          labels.push_back(AnalyticStateLabel::isolated(N));
          for (Branch b : {Branch::Plus, Branch::Minus}) {
            labels.push_back(AnalyticStateLabel::qrm_doublet(N, b));
            for (int M = 0; M <= 3; ++M) labels.push_back(AnalyticStateLabel::doublet(N, M, b));
          }
        }
        for (const auto& l : labels)
          for (Scheme s : {Scheme::Grwa, Scheme::Rwa}) {
            const double xi = analytic_xi(l.with_scheme(s), p).xi;
            CHECK(xi >= 1.0 - 1e-15);
            CHECK(xi <= 2.0 + 1e-15);
          }
      }
}

TEST_CASE("closed_form_xi_matches_partial_trace_qrm") {
  for (double wa : {5.0, 2.5})
    for (double g : {0.0, 0.4, 2.0, 5.0, 10.0}) {
      const SystemParams p{wa, 5, 1, g, 0};
      PhotonFrame frame(p, ModeCutoff(safe_displacement_cutoff(p.nu(), 8)));
      const auto ground = frame.project(AnalyticStateLabel::qrm_ground(), frame.grwa_ground());
      CHECK(std::abs(participation_ratio_numerical(ground.ket, {0}) - xi_qrm_grwa_ground(p).xi) < 1e-6);
      for (int N = 0; N <= 4; ++N)
        for (Branch b : {Branch::Plus, Branch::Minus}) {
          for (Scheme s : {Scheme::Grwa, Scheme::Rwa}) {
            const auto l = AnalyticStateLabel::qrm_doublet(N, b, s);
            const auto k = frame.project(l, frame.vector(l));
            CHECK(std::abs(participation_ratio_numerical(k.ket, {0}) - analytic_xi(l, p).xi) < 1e-6);
          }
        }
    }
}

TEST_CASE("closed_form_xi_matches_partial_trace_hybrid") {
  for (double g : {0.0, 0.4, 2.0, 6.0})
    for (double gom : {0.05, 0.25, 0.5}) {
      const SystemParams p{5, 5, 1, g, gom};
      const Cutoffs c = cutoffs_for(p, 2, 3);
      HybridFrame frame(p, c);
      for (Scheme s : {Scheme::Grwa, Scheme::Rwa}) {
        std::vector<AnalyticStateLabel> labels{AnalyticStateLabel::zero_polariton(0, s),
                                               AnalyticStateLabel::zero_polariton(3, s)};
        for (int N = 0; N <= 2; ++N) {
          labels.push_back(AnalyticStateLabel::isolated(N, s));
          for (int M = 0; M <= 2; ++M)
            for (Branch b : {Branch::Plus, Branch::Minus}) labels.push_back(AnalyticStateLabel::doublet(N, M, b, s));
        }
        for (const auto& l : labels) {
          const auto k = frame.embed(l);
          REQUIRE(k.norm_deviation < 1e-8);
          const double numeric = participation_ratio_numerical(k.ket, polariton_partition(k.ket.layout));
          CHECK(std::abs(numeric - analytic_xi(l, p).xi) < 1e-6);
          if (l.family == Family::ZeroPolariton) CHECK(std::abs(numeric - 1.0) < 1e-10);
        }
      }
    }
}
