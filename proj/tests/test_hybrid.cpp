#include <doctest.h>

#include "hqed/exact.hpp"
#include "hqed/hybrid.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace hqed;

namespace {

// Spin-boson model of one sector in the q_N-displaced phonon frame, with the Stark-shift term dropped:
// C_N + (T/2) tau_z + omega_m b^dag b + g_eff tau_x (b + b^dag). tau basis: index 0 = psi_+, 1 = psi_-.
Eigen::MatrixXd sector_hamiltonian(const HybridSectorParams& s, double omega_m, int q) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q, q);
  for (int n = 1; n < q; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd x = b + b.transpose();
  const Eigen::MatrixXd num = b.transpose() * b;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * q, 2 * q);
  h.topLeftCorner(q, q) = (s.C_N + s.qrm.T_N / 2) * Eigen::MatrixXd::Identity(q, q) + omega_m * num;
  h.bottomRightCorner(q, q) = (s.C_N - s.qrm.T_N / 2) * Eigen::MatrixXd::Identity(q, q) + omega_m * num;
  h.topRightCorner(q, q) = s.g_eff * x;
  h.bottomLeftCorner(q, q) = s.g_eff * x;
  return h;
}

// (X_+ D(-g/w)|M> +- X_- D(+g/w)|M>)/sqrt2 in the tau x phonon space, X_pm = (psi_+ +- psi_-)/sqrt2.
Eigen::VectorXd sector_adiabatic(double g_over_w, Branch b, int M, int q) {
  const Eigen::MatrixXd dp = displacement_matrix(-g_over_w, q);
  const Eigen::MatrixXd dm = displacement_matrix(g_over_w, q);
  const double s = branch_sign(b);
  Eigen::VectorXd v(2 * q);
  v.head(q) = 0.5 * (dp.col(M) + s * dm.col(M));
  v.tail(q) = 0.5 * (dp.col(M) - s * dm.col(M));
  return v;
}

std::vector<SystemParams> sample_points() {
  return {SystemParams{5, 5, 1, 1.0, 0.1}, SystemParams{5, 5, 1, 6.0, 0.3}, SystemParams{10, 5, 1, 2.5, 0.1},
          SystemParams{1, 1, 1, 0.7, 0.5}, SystemParams{2.5, 5, 1, 4.0, 0.05}};
}

}  // namespace

TEST_CASE("sector_params_uncoupled_shifts") {
  const SystemParams p{5, 5, 1, 0.0, 0.2};
  const auto s = sector_params(0, p);
  CHECK(s.q_N == doctest::Approx(0.1));
  CHECK(s.q_G == 0.0);
  CHECK(s.C_N == doctest::Approx(s.k_N - 0.01));
  for (const auto& pp : sample_points())
    for (int N = 0; N <= 4; ++N) {
      const auto t = sector_params(N, pp);
      CHECK(t.q_N == doctest::Approx(pp.g_om * (N + 0.5 + pp.nu() * pp.nu())));
      CHECK(t.C_N == doctest::Approx(t.k_N - t.q_N * t.q_N / pp.omega_m).epsilon(1e-12));
    }
}

TEST_CASE("effective_coupling_recovers_rwa_value_at_weak_coupling") {
  for (int N = 0; N <= 4; ++N) {
    const auto s = sector_params(N, SystemParams{5, 5, 1, 5e-3, 0.1});
    CHECK(s.g_eff == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(std::abs(s.g_shift) < 1e-3 * 0.05);
  }
}

TEST_CASE("shift_coupling_stays_an_order_of_magnitude_below_rabi_frequency") {
  for (int N : {0, 4, 8}) {
    double worst = 0;
    for (int i = 1; i <= 200; ++i) {
      const auto s = sector_params(N, SystemParams{5, 5, 1, 0.05 * i, 0.1});
      worst = std::max(worst, std::abs(s.g_shift) / s.qrm.T_N);
    }
    CHECK(worst < 0.1);
  }
}

TEST_CASE("stark_shift_coupling_is_reported_not_used") {
  const SystemParams p{5, 5, 1, 2.0, 0.1};
  const auto s = sector_params(1, p);
  CHECK(stark_shift_coupling(1, p) == doctest::Approx(2 * s.q_N * s.g_eff / p.omega_m));
}

TEST_CASE("phonon_overlap_limits") {
  for (int M = 0; M <= 6; ++M)
    for (int Mp = 0; Mp <= 6; ++Mp) CHECK(phonon_displaced_overlap(M, Mp, 2, SystemParams{5, 5, 1, 3, 0}) == (M == Mp));
  const SystemParams p{5, 5, 1, 2.0, 0.4};
  const double g = sector_params(1, p).g_eff;
  CHECK(phonon_displaced_overlap(0, 0, 1, p) == doctest::Approx(std::exp(-2 * g * g)).epsilon(1e-15));
  CHECK(phonon_displaced_overlap(0, 0, 1, p) == doctest::Approx(displacement_matrix(-2 * g, 40)(0, 0)).epsilon(1e-13));
}

TEST_CASE("phonon_overlap_independent_of_static_shift") {
  const SystemParams p{5, 5, 1, 3.0, 0.5};
  const auto s = sector_params(2, p);
  for (double scale : {1.0, 2.0, 5.0}) {
    const double q = scale * s.q_N;
    const int rows = safe_displacement_cutoff(std::abs(q) + std::abs(s.g_eff), 10) + 20;
    DisplacedColumns minus((q + s.g_eff) / p.omega_m, rows), plus((q - s.g_eff) / p.omega_m, rows);
    for (int M = 0; M <= 4; ++M)
      for (int Mp = 0; Mp <= 4; ++Mp)
        CHECK(minus.col(M).dot(plus.col(Mp)) == doctest::Approx(phonon_displaced_overlap(M, Mp, 2, p)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("zero_polariton_ladder") {
  const auto p0 = SystemParams{5, 5, 1, 0.0, 0.1};
  for (int M = 0; M <= 5; ++M) CHECK(energy_zero_polariton(M, p0).energy == doctest::Approx(M - 2.5));
  for (const auto& p : sample_points())
    for (int M = 0; M < 6; ++M)
      CHECK(energy_zero_polariton(M + 1, p).energy - energy_zero_polariton(M, p).energy == doctest::Approx(p.omega_m));
}

TEST_CASE("uncoupled_phonon_limit_reproduces_qrm_spectrum_plus_ladder") {
  for (auto p : sample_points()) {
    p.g_om = 0.0;
    CHECK(std::abs(energy_zero_polariton(3, p).energy - (3 + grwa_ground_energy(p))) < 1e-10);
    for (int N = 0; N <= 4; ++N) {
      CHECK(std::abs(energy_isolated(N, p).energy - grwa_doublet_energy(N, Branch::Minus, p)) < 1e-10);
      for (int M = 0; M <= 4; ++M) {
        double a = energy_doublet(N, M, Branch::Plus, p).energy, b = energy_doublet(N, M, Branch::Minus, p).energy;
        double x = grwa_doublet_energy(N, Branch::Plus, p) + M, y = grwa_doublet_energy(N, Branch::Minus, p) + M + 1;
        if (x < y) std::swap(x, y);
        CHECK(std::abs(a - x) < 1e-10);
        CHECK(std::abs(b - y) < 1e-10);
      }
    }
  }
}

TEST_CASE("doublet_branches_are_ordered") {
  for (double g = 0; g <= 3.0; g += 0.1)
    for (double gom = 0; gom <= 1.0; gom += 0.25)
      for (int N = 0; N <= 3; ++N)
        for (int M = 0; M <= 3; ++M) {
          const SystemParams p{1, 1, 1, g, gom};
          CHECK(energy_doublet(N, M, Branch::Plus, p).energy >= energy_doublet(N, M, Branch::Minus, p).energy);
          CHECK(analytic_energy(AnalyticStateLabel::doublet(N, M, Branch::Plus, Scheme::Rwa), p) >=
                analytic_energy(AnalyticStateLabel::doublet(N, M, Branch::Minus, Scheme::Rwa), p));
        }
}

TEST_CASE("energies_continuous_in_couplings") {
  // The energies are steep (q_N^2 grows like g_ac^4), so a Lipschitz bound says little. A branch jump
  // shows up as a max step that does not shrink when the grid is refined.
  std::vector<AnalyticStateLabel> labels{AnalyticStateLabel::zero_polariton(2)};
  for (int N = 0; N <= 2; ++N) {
    labels.push_back(AnalyticStateLabel::isolated(N));
    for (int M = 0; M <= 2; ++M)
      for (Branch br : {Branch::Plus, Branch::Minus}) labels.push_back(AnalyticStateLabel::doublet(N, M, br));
  }
  auto max_step = [](const AnalyticStateLabel& l, double omega_a, double gom, int steps) {
    double worst = 0, prev = analytic_energy(l, SystemParams{omega_a, 1, 1, 0.0, gom});
    for (int i = 1; i <= steps; ++i) {
      const double e = analytic_energy(l, SystemParams{omega_a, 1, 1, 3.0 * i / steps, gom});
      worst = std::max(worst, std::abs(e - prev));
      prev = e;
    }
    return worst;
  };
  for (double omega_a : {1.0, 2.0})
    for (double gom : {0.0, 0.25, 0.5, 1.0})
      for (const auto& l : labels) {
        const double coarse = max_step(l, omega_a, gom, 600);
        const double fine = max_step(l, omega_a, gom, 2400);
        CHECK(fine <= 0.5 * coarse + 1e-12);
      }
}

TEST_CASE("doublet_diagonalizes_its_sector_block") {
  // Oracle: the pair block of the sector spin-boson model, projected numerically.
  for (const auto& p : sample_points())
    for (int N = 0; N <= 2; ++N) {
      const auto s = sector_params(N, p);
      const double gw = s.g_eff / p.omega_m;
      const int q = safe_displacement_cutoff(gw, 8) + 20;
      const Eigen::MatrixXd H = sector_hamiltonian(s, p.omega_m, q);
      for (int M = 0; M <= 3; ++M) {
        const Eigen::VectorXd u = sector_adiabatic(gw, Branch::Plus, M, q);
        const Eigen::VectorXd d = sector_adiabatic(gw, Branch::Minus, M + 1, q);
        Eigen::Matrix2d block;
        block << u.dot(H * u), u.dot(H * d), d.dot(H * u), d.dot(H * d);
        const auto pq = polariton_phonon_quantities(N, M, p);
        const Eigen::Vector2d vp(std::sin(pq.phi_NM / 2), std::cos(pq.phi_NM / 2));
        const Eigen::Vector2d vm(std::cos(pq.phi_NM / 2), -std::sin(pq.phi_NM / 2));
        const double ep = energy_doublet(N, M, Branch::Plus, p).energy;
        const double em = energy_doublet(N, M, Branch::Minus, p).energy;
        CHECK((block * vp - ep * vp).norm() < 1e-12 * std::max(1.0, std::abs(ep)));
        CHECK((block * vm - em * vm).norm() < 1e-12 * std::max(1.0, std::abs(em)));
      }
      const Eigen::VectorXd g0 = sector_adiabatic(gw, Branch::Minus, 0, q);
      CHECK(g0.dot(H * g0) == doctest::Approx(energy_isolated(N, p).energy).epsilon(1e-12));
    }
}

TEST_CASE("rwa_mixing_angle_is_right_angle_at_known_coupling") {
  const double g = std::sqrt(3.0) / 6.0;
  const auto r = rwa_polariton_phonon(2, 2, SystemParams{1, 1, 1, g, 0.05});
  CHECK(std::abs(std::cos(r.theta_NM)) < 1e-12);
  CHECK(r.splitting == doctest::Approx(0.05 * std::sqrt(3.0)));
}

TEST_CASE("rwa_energies_structure") {
  const SystemParams p{5, 5, 1, 0.8, 0.1};
  for (int N = 0; N <= 3; ++N)
    for (int M = 0; M <= 3; ++M) {
      const auto r = rwa_polariton_phonon(N, M, p);
      const double up = analytic_energy(AnalyticStateLabel::doublet(N, M, Branch::Plus, Scheme::Rwa), p);
      const double dn = analytic_energy(AnalyticStateLabel::doublet(N, M, Branch::Minus, Scheme::Rwa), p);
      const double R = jc_quantities(N, p).R_N;
      CHECK(up - dn == doctest::Approx(std::sqrt((R - 1) * (R - 1) + 0.01 * (M + 1))));
      CHECK(r.splitting == doctest::Approx(up - dn));
    }
  // Zero-polariton RWA levels do not move with g_ac.
  CHECK(analytic_energy(AnalyticStateLabel::zero_polariton(3, Scheme::Rwa), SystemParams{5, 5, 1, 4.0, 0.1}) ==
        doctest::Approx(3 - 2.5));
}

TEST_CASE("rwa_and_grwa_agree_at_weak_coupling") {
  auto labels = [] {
    std::vector<AnalyticStateLabel> out{AnalyticStateLabel::zero_polariton(0), AnalyticStateLabel::zero_polariton(4)};
    for (int N = 0; N <= 2; ++N) {
      out.push_back(AnalyticStateLabel::isolated(N));
      for (int M = 0; M <= 2; ++M)
        for (Branch b : {Branch::Plus, Branch::Minus}) out.push_back(AnalyticStateLabel::doublet(N, M, b));
    }
    return out;
  }();
  // Both couplings weak: the two schemes coincide.
  const SystemParams weak{5, 5, 1, 0.05, 0.01};
  for (const auto& l : labels)
    CHECK(std::abs(analytic_energy(l, weak) - analytic_energy(l.with_scheme(Scheme::Rwa), weak)) < 1e-3);
  // Finite g_om: near-degenerate polaritons (T_N -> 0) switch off the GRWA polariton-phonon coupling while
  // the RWA keeps g_om sqrt(M+1)/2, and the GRWA carries the -g_eff^2/omega_m polaron shift. The gap is
  // bounded by g_om^2 (M+2)/4 and does not close as g_ac -> 0.
  const SystemParams p{5, 5, 1, 0.05, 0.1};
  for (const auto& l : labels) {
    const double gap = std::abs(analytic_energy(l, p) - analytic_energy(l.with_scheme(Scheme::Rwa), p));
    if (l.family == Family::ZeroPolariton) CHECK(gap < 1e-3);
    else CHECK(gap <= 0.01 * (l.m + 2) / 4 + 1e-4);
  }
  const double iso = analytic_energy(AnalyticStateLabel::isolated(0), SystemParams{5, 5, 1, 0.0, 0.1}) -
                     analytic_energy(AnalyticStateLabel::isolated(0, Scheme::Rwa), SystemParams{5, 5, 1, 0.0, 0.1});
  CHECK(iso == doctest::Approx(-0.01 / 4));
}

TEST_CASE("embedded_sector_states_are_orthonormal") {
  for (const auto& p : sample_points()) {
    const Cutoffs c{ModeCutoff(safe_displacement_cutoff(p.nu(), 6)), ModeCutoff(40)};
    HybridFrame frame(p, c);
    for (int N = 0; N <= 1; ++N) {
      std::vector<EmbeddedKet> kets{frame.embed(AnalyticStateLabel::isolated(N))};
      for (int M = 0; M <= 3; ++M)
        for (Branch b : {Branch::Plus, Branch::Minus}) kets.push_back(frame.embed(AnalyticStateLabel::doublet(N, M, b)));
      for (std::size_t i = 0; i < kets.size(); ++i) {
        CHECK(kets[i].norm_deviation < 1e-8);
        for (std::size_t j = i + 1; j < kets.size(); ++j) CHECK(std::abs(inner(kets[i].ket, kets[j].ket)) < 1e-8);
      }
    }
  }
}

TEST_CASE("embedded_states_reduce_to_products_when_uncoupled") {
  const SystemParams p{7, 5, 1, 0.0, 0.0};
  const Cutoffs c{ModeCutoff(8), ModeCutoff(8)};
  const auto j = jc_spectrum_and_states(p, 3, c.photon);
  for (int N = 0; N <= 2; ++N)
    for (int M = 0; M <= 3; ++M) {
      const auto plus = hybrid_state_embed(AnalyticStateLabel::doublet(N, M, Branch::Plus), p, c);
      const auto minus = hybrid_state_embed(AnalyticStateLabel::doublet(N, M, Branch::Minus), p, c);
      const Ket up = kron(j.kets[1 + 2 * N].ket, fock_ket(M, c.phonon, Role::Phonon));
      const Ket dn = kron(j.kets[2 + 2 * N].ket, fock_ket(M + 1, c.phonon, Role::Phonon));
      CHECK(overlap_sq(plus.ket, up) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(overlap_sq(minus.ket, dn) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("hybrid_state_embed_rejects_small_cutoffs") {
  CHECK_THROWS_AS(hybrid_state_embed(AnalyticStateLabel::doublet(0, 6, Branch::Plus), SystemParams{5, 5, 1, 1, 0.5},
                                     Cutoffs{ModeCutoff(20), ModeCutoff(4)}),
                  std::runtime_error);
  CHECK_THROWS_AS(hybrid_state_embed(AnalyticStateLabel::qrm_ground(), SystemParams{5, 5, 1, 1, 0.5},
                                     Cutoffs{ModeCutoff(20), ModeCutoff(20)}),
                  std::invalid_argument);
}

TEST_CASE("rwa_hybrid_spectrum_enumerates_all_families") {
  const SystemParams p{5, 5, 1, 0.5, 0.1};
  const auto s = rwa_hybrid_spectrum(p, 2, 3, Cutoffs{ModeCutoff(8), ModeCutoff(30)});
  CHECK(s.records.size() == 4 + 3 * (1 + 2 * 4));
  CHECK(s.kets.size() == s.records.size());
  for (std::size_t i = 0; i < s.kets.size(); ++i) {
    CHECK(s.kets[i].label == s.records[i].label);
    CHECK(s.kets[i].norm_deviation < 1e-10);
  }
}

TEST_CASE("hybrid_states_track_exact_eigenvectors_at_moderate_coupling") {
  for (const auto& [p, floor] : std::vector<std::pair<SystemParams, double>>{
           {SystemParams{5, 5, 1, 0.5, 0.1}, 0.98}, {SystemParams{7, 5, 1, 0.5, 0.1}, 0.95},
           {SystemParams{5, 5, 1, 2.0, 0.1}, 0.9}}) {
    const Cutoffs c{ModeCutoff(safe_displacement_cutoff(p.nu(), 6)), ModeCutoff(30)};
    const auto sol = solve(Model::Hybrid, p, c, 60);
    HybridFrame frame(p, c);
    std::vector<EmbeddedKet> kets;
    for (int M = 0; M <= 4; ++M) kets.push_back(frame.embed(AnalyticStateLabel::zero_polariton(M)));
    for (int N = 0; N <= 1; ++N) {
      kets.push_back(frame.embed(AnalyticStateLabel::isolated(N)));
      for (int M = 0; M <= 2; ++M)
        for (Branch b : {Branch::Plus, Branch::Minus}) kets.push_back(frame.embed(AnalyticStateLabel::doublet(N, M, b)));
    }
    const auto a = match_states(sol, kets);
    for (double f : a.fidelity) CHECK(f > floor);
  }
}
