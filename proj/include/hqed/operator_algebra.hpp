#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqed {

using cplx = std::complex<double>;

class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Factors always appear in this order; a layout may skip roles but never repeat or reorder them.
enum class Role { Atom = 0, Photon = 1, Phonon = 2 };

const char* role_name(Role role);

struct ModeCutoff {
  int n_max;  // Fock states |0> .. |n_max-1>
  explicit ModeCutoff(int n);
};

struct Cutoffs {
  ModeCutoff photon{2};
  ModeCutoff phonon{2};
};

struct Factor {
  Role role;
  int dim;
  bool operator==(const Factor&) const = default;
};

class SpaceLayout {
 public:
  SpaceLayout() = default;
  explicit SpaceLayout(std::vector<Factor> factors);

  static SpaceLayout atom();
  static SpaceLayout mode(Role role, ModeCutoff cutoff);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  Eigen::Index dim() const;
  // Throws LayoutError unless `tail` can follow this layout.
  SpaceLayout concat(const SpaceLayout& tail) const;
  // Layout of the kept factors, in original order.
  SpaceLayout select(const std::vector<int>& keep) const;
  std::string describe() const;

  bool operator==(const SpaceLayout&) const = default;

 private:
  std::vector<Factor> factors_;
};

struct Operator {
  SpaceLayout layout;
  Eigen::MatrixXcd m;

  Operator() = default;
  Operator(SpaceLayout l, Eigen::MatrixXcd mat);

  Eigen::Index dim() const { return m.rows(); }
  Operator adjoint() const { return {layout, m.adjoint()}; }
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cplx s, const Operator& a);

struct Ket {
  SpaceLayout layout;
  Eigen::VectorXcd v;

  Ket() = default;
  Ket(SpaceLayout l, Eigen::VectorXcd amps);

  Eigen::Index dim() const { return v.size(); }
  double norm() const { return v.norm(); }
  bool is_normalized(double tol = 1e-12) const;
};

Ket operator*(const Operator& op, const Ket& k);

cplx inner(const Ket& bra, const Ket& ket);
double overlap_sq(const Ket& a, const Ket& b);

Operator identity_op(const SpaceLayout& layout);
Operator annihilation_op(ModeCutoff cutoff, Role role = Role::Photon);
Operator number_op(ModeCutoff cutoff, Role role = Role::Photon);

struct PauliOps {
  Operator x, y, z;
};
PauliOps pauli_ops();

// Basis order of the atom factor: index 0 = |+z>, index 1 = |-z>.
enum class SpinState { PlusZ, MinusZ, PlusX, MinusX };
Ket spin_ket(SpinState s);
Ket fock_ket(int n, ModeCutoff cutoff, Role role = Role::Photon);

// expm(nu (a^dag - a)) by scaling and squaring. Emits a warning if the cutoff violates
// n_max >= 4 nu^2 + 20 or if D^dag D deviates from I on the leading half block by > 1e-10.
Operator displacement_op(double nu, ModeCutoff cutoff, Role role = Role::Photon);
// Real n x n matrix expm(nu (a^dag - a)), no diagnostics. Exactly orthogonal up to rounding.
Eigen::MatrixXd displacement_matrix(double nu, int n);
bool displacement_cutoff_safe(double nu, ModeCutoff cutoff);
int safe_displacement_cutoff(double nu, int max_fock = 0);

Operator kron(const Operator& a, const Operator& b);
Ket kron(const Ket& a, const Ket& b);

// Reduced density matrix on the kept factors. rho must be Hermitian with unit trace (1e-10).
Operator partial_trace(const Operator& rho, const std::vector<int>& keep);
// Same result as partial_trace(|psi><psi|, keep) without forming the full projector.
Operator reduced_density(const Ket& psi, const std::vector<int>& keep);
Operator projector(const Ket& psi);
double purity(const Operator& rho);

// <psi| (op ⊗ I) |psi> where op acts on the leading factors of psi's layout.
cplx expectation_leading(const Operator& op, const Ket& psi);

}  // namespace hqed
