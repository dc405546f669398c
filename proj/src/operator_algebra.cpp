#include "hqed/operator_algebra.hpp"

#include "hqed/diagnostics.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqed {

const char* role_name(Role role) {
  switch (role) {
    case Role::Atom: return "atom";
    case Role::Photon: return "photon";
    case Role::Phonon: return "phonon";
  }
  return "?";
}

ModeCutoff::ModeCutoff(int n) : n_max(n) {
  if (n < 1) throw std::invalid_argument("ModeCutoff: n_max must be >= 1, got " + std::to_string(n));
}

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.dim < 1) throw LayoutError("SpaceLayout: factor dimension must be >= 1");
    if (f.role == Role::Atom && f.dim != 2) throw LayoutError("SpaceLayout: atom factor must have dimension 2");
    if (i > 0 && static_cast<int>(factors_[i - 1].role) >= static_cast<int>(f.role))
      throw LayoutError("SpaceLayout: factor order must be atom, photon, phonon without repeats; got " + describe());
  }
}

SpaceLayout SpaceLayout::atom() { return SpaceLayout({{Role::Atom, 2}}); }

SpaceLayout SpaceLayout::mode(Role role, ModeCutoff cutoff) {
  if (role == Role::Atom) throw LayoutError("SpaceLayout::mode: atom is not a bosonic mode");
  return SpaceLayout({{role, cutoff.n_max}});
}

Eigen::Index SpaceLayout::dim() const {
  Eigen::Index d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

SpaceLayout SpaceLayout::concat(const SpaceLayout& tail) const {
  std::vector<Factor> all = factors_;
  all.insert(all.end(), tail.factors_.begin(), tail.factors_.end());
  return SpaceLayout(std::move(all));
}

SpaceLayout SpaceLayout::select(const std::vector<int>& keep) const {
  std::vector<int> idx = keep;
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) throw LayoutError("select: repeated factor index");
  std::vector<Factor> out;
  for (int i : idx) {
    if (i < 0 || i >= static_cast<int>(factors_.size()))
      throw LayoutError("invalid factor index " + std::to_string(i) + " for layout " + describe());
    out.push_back(factors_[i]);
  }
  return SpaceLayout(std::move(out));
}

std::string SpaceLayout::describe() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " x ";
    os << role_name(factors_[i].role) << '(' << factors_[i].dim << ')';
  }
  os << ']';
  return os.str();
}

Operator::Operator(SpaceLayout l, Eigen::MatrixXcd mat) : layout(std::move(l)), m(std::move(mat)) {
  if (m.rows() != m.cols()) throw LayoutError("Operator: matrix must be square");
  if (m.rows() != layout.dim()) throw LayoutError("Operator: matrix dimension does not match layout " + layout.describe());
}

namespace {
void require_same(const SpaceLayout& a, const SpaceLayout& b, const char* what) {
  if (!(a == b)) throw LayoutError(std::string(what) + ": layout mismatch " + a.describe() + " vs " + b.describe());
}
}  // namespace

Operator operator*(const Operator& a, const Operator& b) {
  require_same(a.layout, b.layout, "operator product");
  return {a.layout, a.m * b.m};
}
Operator operator+(const Operator& a, const Operator& b) {
  require_same(a.layout, b.layout, "operator sum");
  return {a.layout, a.m + b.m};
}
Operator operator-(const Operator& a, const Operator& b) {
  require_same(a.layout, b.layout, "operator difference");
  return {a.layout, a.m - b.m};
}
Operator operator*(cplx s, const Operator& a) { return {a.layout, s * a.m}; }

Ket::Ket(SpaceLayout l, Eigen::VectorXcd amps) : layout(std::move(l)), v(std::move(amps)) {
  if (v.size() != layout.dim()) throw LayoutError("Ket: amplitude count does not match layout " + layout.describe());
}

bool Ket::is_normalized(double tol) const { return std::abs(v.norm() - 1.0) <= tol; }

Ket operator*(const Operator& op, const Ket& k) {
  require_same(op.layout, k.layout, "operator application");
  return {k.layout, op.m * k.v};
}

cplx inner(const Ket& bra, const Ket& ket) {
  require_same(bra.layout, ket.layout, "inner product");
  return bra.v.dot(ket.v);  // Eigen's dot conjugates the left operand
}

double overlap_sq(const Ket& a, const Ket& b) { return std::norm(inner(a, b)); }

Operator identity_op(const SpaceLayout& layout) {
  const auto d = layout.dim();
  return {layout, Eigen::MatrixXcd::Identity(d, d)};
}

Operator annihilation_op(ModeCutoff cutoff, Role role) {
  const int n = cutoff.n_max;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return {SpaceLayout::mode(role, cutoff), std::move(a)};
}

Operator number_op(ModeCutoff cutoff, Role role) {
  const int n = cutoff.n_max;
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) d(k, k) = static_cast<double>(k);
  return {SpaceLayout::mode(role, cutoff), std::move(d)};
}

PauliOps pauli_ops() {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  const auto l = SpaceLayout::atom();
  return {{l, x}, {l, y}, {l, z}};
}

Ket spin_ket(SpinState s) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd v;
  switch (s) {
    case SpinState::PlusZ: v << 1, 0; break;
    case SpinState::MinusZ: v << 0, 1; break;
    case SpinState::PlusX: v << r, r; break;
    case SpinState::MinusX: v << r, -r; break;
  }
  return {SpaceLayout::atom(), v};
}

Ket fock_ket(int n, ModeCutoff cutoff, Role role) {
  if (n < 0 || n >= cutoff.n_max)
    throw std::out_of_range("fock_ket: n=" + std::to_string(n) + " outside cutoff " + std::to_string(cutoff.n_max));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff.n_max);
  v(n) = 1.0;
  return {SpaceLayout::mode(role, cutoff), std::move(v)};
}

int safe_displacement_cutoff(double nu, int max_fock) {
  return static_cast<int>(std::ceil(4.0 * nu * nu + 20.0)) + 2 * std::max(max_fock, 0);
}

bool displacement_cutoff_safe(double nu, ModeCutoff cutoff) {
  return cutoff.n_max >= 4.0 * nu * nu + 20.0;
}

Eigen::MatrixXd displacement_matrix(double nu, int n) {
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double s = nu * std::sqrt(static_cast<double>(k));
    gen(k, k - 1) = s;   // nu a^dag
    gen(k - 1, k) = -s;  // -nu a
  }
  return gen.exp();
}

Operator displacement_op(double nu, ModeCutoff cutoff, Role role) {
  const int n = cutoff.n_max;
  const Eigen::MatrixXd d = displacement_matrix(nu, n);

  const int half = std::max(1, n / 2);
  const double defect =
      (d.topLeftCorner(n, half).transpose() * d.topLeftCorner(n, half) - Eigen::MatrixXd::Identity(half, half))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-10 || !displacement_cutoff_safe(nu, cutoff)) {
    std::ostringstream os;
    os << "displacement_op: nu=" << nu << " with n_max=" << n << " (safety rule wants >= " << 4.0 * nu * nu + 20.0
       << "), unitarity defect " << defect;
    warn(os.str());
  }
  return {SpaceLayout::mode(role, cutoff), d.cast<cplx>()};
}

Operator kron(const Operator& a, const Operator& b) {
  return {a.layout.concat(b.layout), Eigen::kroneckerProduct(a.m, b.m).eval()};
}

Ket kron(const Ket& a, const Ket& b) {
  return {a.layout.concat(b.layout), Eigen::kroneckerProduct(a.v, b.v).eval()};
}

namespace {

// Splits every full basis index into (kept multi-index, traced multi-index) flattened in layout order.
struct Split {
  std::vector<Eigen::Index> kept, traced;
  Eigen::Index kept_dim = 1, traced_dim = 1;
};

Split split_indices(const SpaceLayout& layout, const std::vector<int>& keep) {
  const auto& f = layout.factors();
  const int nf = static_cast<int>(f.size());
  std::vector<bool> is_kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw LayoutError("partial trace: invalid factor index " + std::to_string(k));
    if (is_kept[k]) throw LayoutError("partial trace: repeated factor index " + std::to_string(k));
    is_kept[k] = true;
  }
  Split s;
  for (int i = 0; i < nf; ++i) (is_kept[i] ? s.kept_dim : s.traced_dim) *= f[i].dim;
  const Eigen::Index d = layout.dim();
  s.kept.resize(d);
  s.traced.resize(d);
  std::vector<int> digit(nf, 0);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index kk = 0, tt = 0;
    for (int j = 0; j < nf; ++j) {
      if (is_kept[j]) kk = kk * f[j].dim + digit[j];
      else tt = tt * f[j].dim + digit[j];
    }
    s.kept[i] = kk;
    s.traced[i] = tt;
    for (int j = nf - 1; j >= 0; --j) {
      if (++digit[j] < f[j].dim) break;
      digit[j] = 0;
    }
  }
  return s;
}

}  // namespace

Operator partial_trace(const Operator& rho, const std::vector<int>& keep) {
  const double herm = (rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) throw std::invalid_argument("partial_trace: rho is not Hermitian");
  if (std::abs(rho.m.trace() - 1.0) > 1e-10) throw std::invalid_argument("partial_trace: rho must have unit trace");
  const Split s = split_indices(rho.layout, keep);
  const auto out_layout = rho.layout.select(keep);
  // Group full indices by traced multi-index, each group ordered by kept multi-index.
  std::vector<std::vector<Eigen::Index>> groups(s.traced_dim, std::vector<Eigen::Index>(s.kept_dim));
  for (Eigen::Index i = 0; i < rho.dim(); ++i) groups[s.traced[i]][s.kept[i]] = i;
  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(s.kept_dim, s.kept_dim);
  for (const auto& g : groups)
    for (Eigen::Index c = 0; c < s.kept_dim; ++c)
      for (Eigen::Index r = 0; r < s.kept_dim; ++r) red(r, c) += rho.m(g[r], g[c]);
  return {out_layout, std::move(red)};
}

Operator reduced_density(const Ket& psi, const std::vector<int>& keep) {
  const Split s = split_indices(psi.layout, keep);
  const auto out_layout = psi.layout.select(keep);
  Eigen::MatrixXcd mat(s.kept_dim, s.traced_dim);
  for (Eigen::Index i = 0; i < psi.dim(); ++i) mat(s.kept[i], s.traced[i]) = psi.v(i);
  return {out_layout, mat * mat.adjoint()};
}

Operator projector(const Ket& psi) { return {psi.layout, psi.v * psi.v.adjoint()}; }

double purity(const Operator& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.m.cwiseAbs2().sum();
}

cplx expectation_leading(const Operator& op, const Ket& psi) {
  const auto& pf = psi.layout.factors();
  const auto& of = op.layout.factors();
  if (of.size() > pf.size() || !std::equal(of.begin(), of.end(), pf.begin()))
    throw LayoutError("expectation_leading: operator layout " + op.layout.describe() + " is not a prefix of " +
                      psi.layout.describe());
  const Eigen::Index lead = op.dim();
  const Eigen::Index rest = psi.dim() / lead;
  // Row-major Kronecker order: psi index = lead_index * rest + rest_index.
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(psi.v.data(), lead, rest);
  return (mat.adjoint() * op.m * mat).trace();
}

}  // namespace hqed
