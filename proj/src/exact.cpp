#include "hqed/exact.hpp"

#include "lapack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hqed {

namespace {

struct Entry {
  int i, j;  // i <= j
  double v;
};

// Real symmetric Hamiltonian as its upper-triangle entries plus parity of every basis state.
struct SparseModel {
  int dim = 0;
  int np = 2;
  int nq = 1;  // phonon cutoff, 1 for the Rabi model
  std::vector<Entry> entries;
  std::vector<int> parity;
  SpaceLayout layout;
};

SparseModel build_sparse(Model model, const SystemParams& p, Cutoffs c) {
  p.validate();
  const bool hybrid = model == Model::Hybrid;
  const int np = c.photon.n_max;
  const int nq = hybrid ? c.phonon.n_max : 1;
  if (np < 2 || (hybrid && nq < 2)) throw std::invalid_argument("exact solver: cutoffs must be >= 2");
  SparseModel s;
  s.dim = 2 * np * nq;
  s.np = np;
  s.nq = nq;
  s.layout = SpaceLayout::atom().concat(SpaceLayout::mode(Role::Photon, c.photon));
  if (hybrid) s.layout = s.layout.concat(SpaceLayout::mode(Role::Phonon, c.phonon));
  s.parity.resize(s.dim);
  s.entries.reserve(static_cast<std::size_t>(s.dim) * 3);
  auto idx = [&](int spin, int n, int m) { return (spin * np + n) * nq + m; };
  for (int spin = 0; spin < 2; ++spin) {
    const double sz = spin == 0 ? 1.0 : -1.0;
    for (int n = 0; n < np; ++n) {
      for (int m = 0; m < nq; ++m) {
        const int i = idx(spin, n, m);
        s.parity[i] = (spin == 0 ? 1 : -1) * (n % 2 ? -1 : 1);
        double diag = 0.5 * p.omega_a * sz + p.omega_c * n;
        if (hybrid) diag += p.omega_m * m;
        s.entries.push_back({i, i, diag});
        if (n + 1 < np && p.g_ac != 0.0) {
          const int j = idx(1 - spin, n + 1, m);
          s.entries.push_back({std::min(i, j), std::max(i, j), p.g_ac * std::sqrt(n + 1.0)});
        }
        if (hybrid && m + 1 < nq && p.g_om != 0.0 && n > 0)
          s.entries.push_back({i, i + 1, -p.g_om * n * std::sqrt(m + 1.0)});
      }
    }
  }
  return s;
}

double one_norm(const SparseModel& s) {
  std::vector<double> col(s.dim, 0.0);
  for (const auto& e : s.entries) {
    col[e.j] += std::abs(e.v);
    if (e.i != e.j) col[e.i] += std::abs(e.v);
  }
  return *std::max_element(col.begin(), col.end());
}

struct BlockResult {
  std::vector<int> basis;  // global indices of the block in local order
  Eigen::VectorXd w;
  Eigen::MatrixXd z;
};

// A parity block fixes the spin for each photon number, so ordering it by (n, m) or (m, n) turns it
// into a band matrix: the photon coupling spans nq rows in the first order and one row in the second,
// the phonon coupling the reverse. The smaller cutoff sets the bandwidth.
BlockResult solve_block(const SparseModel& s, int parity, int k, bool want_vectors) {
  BlockResult r;
  std::vector<int> local(s.dim, -1);
  const bool photon_major = s.nq <= s.np;
  const int outer = photon_major ? s.np : s.nq, inner = photon_major ? s.nq : s.np;
  for (int o = 0; o < outer; ++o)
    for (int in = 0; in < inner; ++in) {
      const int n = photon_major ? o : in, m = photon_major ? in : o;
      for (int spin = 0; spin < 2; ++spin) {
        const int i = (spin * s.np + n) * s.nq + m;
        if (s.parity[i] != parity) continue;
        local[i] = static_cast<int>(r.basis.size());
        r.basis.push_back(i);
      }
    }
  const int n = static_cast<int>(r.basis.size());
  const int kk = std::min(k, n);
  if (kk == 0) return r;
  int found = 0;
  if (!want_vectors) {
    const int kd = std::min(std::min(s.np, s.nq), n - 1);
    Eigen::MatrixXd ab = Eigen::MatrixXd::Zero(kd + 1, n);
    for (const auto& e : s.entries) {
      if (local[e.i] < 0) continue;
      const int li = std::min(local[e.i], local[e.j]), lj = std::max(local[e.i], local[e.j]);
      if (lj - li > kd) throw std::logic_error("solve_block: entry outside the band");
      ab(kd + li - lj, lj) = e.v;
    }
    const int info = lapack::dsbevx(ab, kd, kk, r.w, found);
    if (info != 0 || found != kk) {
      std::ostringstream os;
      os << "dsbevx failed: info=" << info << ", found " << found << " of " << kk << " eigenvalues";
      throw std::runtime_error(os.str());
    }
    r.w.conservativeResize(kk);
    return r;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : s.entries) {
    if (local[e.i] < 0) continue;
    a(local[e.i], local[e.j]) = e.v;
    a(local[e.j], local[e.i]) = e.v;
  }
  const int info = lapack::dsyevr(a, kk, want_vectors, r.w, r.z, found);
  if (info != 0 || found != kk) {
    std::ostringstream os;
    os << "dsyevr failed: info=" << info << ", found " << found << " of " << kk << " eigenvalues";
    throw std::runtime_error(os.str());
  }
  r.w.conservativeResize(kk);
  return r;
}

EigenSolution solve_sparse(const SparseModel& s, const SystemParams& p, Cutoffs c, int k, bool want_vectors) {
  if (k < 1) throw std::invalid_argument("solve: k must be >= 1");
  const BlockResult blocks[2] = {solve_block(s, 1, k, want_vectors), solve_block(s, -1, k, want_vectors)};
  std::vector<std::tuple<double, int, int>> order;
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < blocks[b].w.size(); ++i) order.emplace_back(blocks[b].w(i), b, i);
  std::sort(order.begin(), order.end());
  const int kk = std::min<int>(k, static_cast<int>(order.size()));

  EigenSolution sol;
  sol.layout = s.layout;
  sol.params = p;
  sol.cutoffs = c;
  sol.energies.resize(kk);
  for (int t = 0; t < kk; ++t) sol.energies(t) = std::get<0>(order[t]);
  if (!want_vectors) return sol;

  sol.vectors = Eigen::MatrixXcd::Zero(s.dim, kk);
  Eigen::MatrixXd real(s.dim, kk);
  real.setZero();
  for (int t = 0; t < kk; ++t) {
    const auto& blk = blocks[std::get<1>(order[t])];
    const int col = std::get<2>(order[t]);
    for (std::size_t r = 0; r < blk.basis.size(); ++r) real(blk.basis[r], t) = blk.z(r, col);
  }
  // Residuals from the sparse entries.
  Eigen::MatrixXd hv = Eigen::MatrixXd::Zero(s.dim, kk);
  for (const auto& e : s.entries) {
    hv.row(e.i) += e.v * real.row(e.j);
    if (e.i != e.j) hv.row(e.j) += e.v * real.row(e.i);
  }
  const double hn = one_norm(s);
  double worst = 0.0;
  for (int t = 0; t < kk; ++t) worst = std::max(worst, (hv.col(t) - sol.energies(t) * real.col(t)).norm());
  sol.max_residual = hn > 0 ? worst / hn : worst;
  if (sol.max_residual > 1e-8)
    throw std::runtime_error("solve: eigenpair residual " + std::to_string(sol.max_residual) + " above 1e-8 ||H||");
  sol.vectors = real.cast<cplx>();
  return sol;
}

Operator dense_from_sparse(const SparseModel& s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s.dim, s.dim);
  for (const auto& e : s.entries) {
    m(e.i, e.j) = e.v;
    m(e.j, e.i) = e.v;
  }
  return {s.layout, std::move(m)};
}

}  // namespace

Ket EigenSolution::state(int i) const {
  if (!has_vectors()) throw std::logic_error("EigenSolution::state: solution holds energies only");
  if (i < 0 || i >= size()) throw std::out_of_range("EigenSolution::state: index out of range");
  return {layout, vectors.col(i)};
}

Operator build_hybrid_hamiltonian(const SystemParams& p, Cutoffs cutoffs) {
  return dense_from_sparse(build_sparse(Model::Hybrid, p, cutoffs));
}

Operator build_rabi_hamiltonian(const SystemParams& p, ModeCutoff photon) {
  return dense_from_sparse(build_sparse(Model::Rabi, p, Cutoffs{photon, ModeCutoff(1)}));
}

std::vector<int> parity_labels(Model model, Cutoffs cutoffs) {
  return build_sparse(model, SystemParams{}, cutoffs).parity;
}

EigenSolution eigendecompose(const Operator& H, int k) {
  if (k < 1) throw std::invalid_argument("eigendecompose: k must be >= 1");
  const auto n = static_cast<int>(H.dim());
  if ((H.m - H.m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("eigendecompose: operator is not Hermitian");
  const int kk = std::min<int>(k, static_cast<int>(n));
  EigenSolution sol;
  sol.layout = H.layout;
  Eigen::VectorXd w(n);
  int found = 0;
  int info = 0;
  if (H.m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::MatrixXd a = H.m.real();
    Eigen::MatrixXd z;
    info = lapack::dsyevr(a, kk, true, w, z, found);
    sol.vectors = z.cast<cplx>();
  } else {
    Eigen::MatrixXcd a = H.m;
    Eigen::MatrixXcd z;
    info = lapack::zheevr(a, kk, w, z, found);
    sol.vectors = z;
  }
  if (info != 0 || found != kk) throw std::runtime_error("eigendecompose: LAPACK failure, info=" + std::to_string(info));
  sol.energies = w.head(kk);
  const double hn = H.m.cwiseAbs().colwise().sum().maxCoeff();
  const Eigen::MatrixXcd res = H.m * sol.vectors - sol.vectors * sol.energies.asDiagonal();
  sol.max_residual = res.colwise().norm().maxCoeff() / (hn > 0 ? hn : 1.0);
  if (sol.max_residual > 1e-8)
    throw std::runtime_error("eigendecompose: eigenpair residual " + std::to_string(sol.max_residual) + " above 1e-8 ||H||");
  return sol;
}

EigenSolution solve(Model model, const SystemParams& p, Cutoffs cutoffs, int k, bool want_vectors) {
  if (model == Model::Rabi) cutoffs.phonon = ModeCutoff(1);
  return solve_sparse(build_sparse(model, p, cutoffs), p, cutoffs, k, want_vectors);
}

namespace {

int grown(int n) { return n + (n + 1) / 2; }

class CutoffProbe {
 public:
  CutoffProbe(Model model, const SystemParams& p, int k) : model_(model), p_(p), k_(k) {}

  const Eigen::VectorXd& energies(int np, int nq) {
    if (model_ == Model::Rabi) nq = 1;
    auto key = std::pair(np, nq);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ++solves;
    auto sol = solve(model_, p_, Cutoffs{ModeCutoff(np), ModeCutoff(std::max(nq, 1))}, k_, false);
    return cache_.emplace(key, std::move(sol.energies)).first->second;
  }

  double change(int np, int nq, int np2, int nq2) {
    const Eigen::VectorXd a = energies(np, nq);
    const Eigen::VectorXd& b = energies(np2, nq2);
    if (a.size() < k_ || b.size() < k_) return std::numeric_limits<double>::infinity();
    return (a - b).cwiseAbs().maxCoeff();
  }

  double sensitivity(int np, int nq) { return change(np, nq, grown(np), grown(nq)); }

  int solves = 0;

 private:
  Model model_;
  SystemParams p_;
  int k_;
  std::map<std::pair<int, int>, Eigen::VectorXd> cache_;
};

}  // namespace

double cutoff_sensitivity(Model model, const SystemParams& p, Cutoffs cutoffs, int k) {
  CutoffProbe probe(model, p, k);
  return probe.sensitivity(cutoffs.photon.n_max, cutoffs.phonon.n_max);
}

int photon_stability_limit(const SystemParams& p, double level, Model model) {
  if (model == Model::Rabi || p.g_om == 0.0) return std::numeric_limits<int>::max();
  const double turn = p.omega_c * p.omega_m / (2 * p.g_om * p.g_om);
  auto bound = [&](double n) {
    return p.omega_c * n - 0.5 * p.omega_a - p.g_om * p.g_om * n * n / p.omega_m -
           p.g_ac * (std::sqrt(n) + std::sqrt(n + 1));
  };
  const double first = std::ceil(turn);
  if (first > std::numeric_limits<int>::max() / 2) return std::numeric_limits<int>::max();
  for (int n = static_cast<int>(first);; ++n)
    if (bound(n) <= level) return n;  // cutoff n keeps photon numbers 0 .. n-1
}

ConvergenceResult converge_cutoffs(const SystemParams& p, int k, double tol, Model model, ConvergenceOptions options) {
  if (!(tol > 0)) throw std::invalid_argument("converge_cutoffs: tol must be > 0");
  if (k < 1) throw std::invalid_argument("converge_cutoffs: k must be >= 1");
  p.validate();
  const bool hybrid = model == Model::Hybrid;
  CutoffProbe probe(model, p, k);
  int np = std::max(2, options.start);
  int nq = hybrid ? np : 1;

  ConvergenceResult r;
  auto give_up = [&](const std::string& why) {
    std::ostringstream os;
    os << "converge_cutoffs: no convergence to " << tol << " for k=" << k << ": " << why << " at " << p.describe();
    if (!options.allow_unconverged) throw ConvergenceError(os.str());
    r.converged = false;
    r.note = os.str();
  };
  // Largest photon cutoff whose 50% probe stays clear of the spurious high-photon states. The level comes
  // from the larger probe solve, whose truncation inflates it least.
  auto photon_room = [&] {
    const Eigen::VectorXd& e = probe.energies(grown(np), hybrid ? grown(nq) : nq);
    const double level = (e.size() >= k ? e(k - 1) : e(e.size() - 1)) + p.omega_m;
    const int limit = photon_stability_limit(p, level, model);
    int x = np;
    while (x < limit && grown(x + 1) <= limit) ++x;
    return x;
  };

  // Geometric growth by the probe factor, so every step reuses the previous probe's larger solve.
  // Only the factors whose growth still moves the spectrum grow.
  while (probe.sensitivity(np, nq) >= tol) {
    bool grow_p = true, grow_q = hybrid;
    if (hybrid) {
      grow_p = probe.change(np, nq, grown(np), nq) >= tol;
      grow_q = probe.change(np, nq, np, grown(nq)) >= tol;
      if (!grow_p && !grow_q) grow_p = grow_q = true;
    }
    const int room = photon_room();
    if (grow_p && room <= np && (!grow_q || !hybrid)) {
      give_up("photon cutoff " + std::to_string(np) + " is at the stability limit of the optomechanical ladder");
      break;
    }
    if (grow_p) np = std::min(grown(np), std::max(room, np));
    if (grow_q) nq = grown(nq);
    if (np > options.ceiling || nq > options.ceiling) {
      np = std::min(np, options.ceiling);
      nq = std::min(nq, options.ceiling);
      give_up("cutoff ceiling " + std::to_string(options.ceiling) + " reached");
      break;
    }
  }

  if (r.converged) {
    // Bisection per factor; `hi` always satisfies the criterion, `lo` is assumed not to.
    auto bisect = [&](int hi, auto converged) {
      int lo = 1;
      while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (converged(mid) ? hi : lo) = mid;
      }
      return hi;
    };
    np = bisect(np, [&](int x) { return x >= 2 && probe.sensitivity(x, nq) < tol; });
    if (hybrid) nq = bisect(nq, [&](int x) { return x >= 2 && probe.sensitivity(np, x) < tol; });
  }

  r.cutoffs = Cutoffs{ModeCutoff(np), ModeCutoff(nq)};
  r.max_change = probe.sensitivity(np, nq);
  r.solution = solve(model, p, r.cutoffs, k, true);
  r.solves = probe.solves;
  return r;
}

Operator conserved_number_grwa_polariton(const SystemParams& p, ModeCutoff photon) {
  p.validate();
  const int n = photon.n_max;
  const Eigen::MatrixXd d = displacement_matrix(p.nu(), n);  // D(nu); D^dag = D^T
  Eigen::MatrixXd num = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) num(i, i) = i;
  const Eigen::MatrixXd n_plus = d.transpose() * num * d;   // D^dag a^dag a D
  const Eigen::MatrixXd n_minus = d * num * d.transpose();  // D a^dag a D^dag
  Eigen::Matrix2d px, mx;  // (I +- sigma_x)/2
  px << 0.5, 0.5, 0.5, 0.5;
  mx << 0.5, -0.5, -0.5, 0.5;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.block(a * n, b * n, n, n) = px(a, b) * n_plus + mx(a, b) * n_minus;
  // Sum over N < n of |ad_+,N><ad_+,N| with |N_+> = D^dag|N>, |N_-> = D|N>.
  const Eigen::MatrixXd up = d.transpose(), dn = d;
  Eigen::MatrixXd ad(2 * n, n);
  ad.topRows(n) = 0.5 * (up + dn);
  ad.bottomRows(n) = 0.5 * (up - dn);
  out += ad * ad.transpose();
  const auto layout = SpaceLayout::atom().concat(SpaceLayout::mode(Role::Photon, photon));
  return {layout, out.cast<cplx>()};
}

Operator conserved_number_grwa(const SystemParams& p, Cutoffs cutoffs) {
  return kron(conserved_number_grwa_polariton(p, cutoffs.photon), identity_op(SpaceLayout::mode(Role::Phonon, cutoffs.phonon)));
}

int StateAssignment::find(const AnalyticStateLabel& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

StateAssignment match_states(const EigenSolution& solution, const std::vector<EmbeddedKet>& analytic) {
  if (analytic.empty() || !solution.has_vectors()) throw std::invalid_argument("match_states: empty inputs");
  const int na = static_cast<int>(analytic.size());
  const int nn = solution.size();
  Eigen::MatrixXd ov(na, nn);
  for (int a = 0; a < na; ++a) {
    if (!(analytic[a].ket.layout == solution.layout))
      throw LayoutError("match_states: analytic ket layout " + analytic[a].ket.layout.describe() +
                        " differs from solution layout " + solution.layout.describe());
    ov.row(a) = (solution.vectors.adjoint() * analytic[a].ket.v).cwiseAbs2().transpose();
  }
  std::vector<std::tuple<double, int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(na) * nn);
  for (int a = 0; a < na; ++a)
    for (int i = 0; i < nn; ++i) pairs.emplace_back(-ov(a, i), i, a);
  std::sort(pairs.begin(), pairs.end());

  StateAssignment out;
  out.labels.reserve(na);
  for (const auto& e : analytic) out.labels.push_back(e.label);
  out.index.assign(na, -1);
  out.fidelity.assign(na, 0.0);
  std::vector<bool> used(nn, false);
  int left = std::min(na, nn);
  for (const auto& [neg, i, a] : pairs) {
    if (left == 0) break;
    if (used[i] || out.index[a] >= 0) continue;
    used[i] = true;
    out.index[a] = i;
    out.fidelity[a] = std::min(1.0, -neg);
    --left;
  }
  return out;
}

}  // namespace hqed
