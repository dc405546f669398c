#pragma once

#include <string>

namespace hqed {

// Frequencies and couplings of the hybrid Hamiltonian, hbar = 1, conventionally in units of omega_m.
struct SystemParams {
  double omega_a = 1.0;
  double omega_c = 1.0;
  double omega_m = 1.0;
  double g_ac = 0.0;
  double g_om = 0.0;

  // Throws std::invalid_argument unless all frequencies > 0 and couplings >= 0.
  void validate() const;
  double nu() const { return g_ac / omega_c; }
  std::string describe() const;
};

}  // namespace hqed
