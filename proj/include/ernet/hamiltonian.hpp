#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ernet/network.hpp"

namespace ernet {

using Amp = std::complex<double>;
using StateVector = std::vector<Amp>;

/**
 * Transverse-field Ising Hamiltonian on a network, in the computational
 * z-basis.  Basis state b (0 <= b < 2^n) has spin i up iff bit i of b is
 * set; sigma^z eigenvalues are +1 for up.  The interaction is normalized by
 * the Kac factor |E|/n so the energy stays extensive across densities:
 *
 *   H = -(J n / |E|) sum_{(i,j) in E} sz_i sz_j  -  h sum_i sx_i ,  J = 1.
 *
 * The interaction part is diagonal and precomputed once per network; the
 * transverse part connects each state to its n single-bit flips.
 */
class SpinHamiltonian {
 public:
  SpinHamiltonian(const Network& net, double h);

  int n_sites() const { return n_; }
  std::size_t dim() const { return diag_.size(); }
  double field() const { return h_; }
  const std::vector<double>& diagonal() const { return diag_; }

  /// y = H x (y is overwritten).
  void apply(const Amp* x, Amp* y) const;

  /// Dense column-major matrix, for eigendecomposition.  dim^2 doubles.
  std::vector<double> dense() const;

  /// <x|H|x> for a normalized state.
  double energy(const StateVector& x) const;

  static constexpr int kMaxSites = 20;

 private:
  int n_;
  double h_;
  std::vector<double> diag_;
};

/// Interaction diagonal alone: diag[b] = -(n/|E|) sum_edges sz_i sz_j,
/// zero if the graph has no edges.  Shared by SpinHamiltonian and the
/// fidelity-derivative diagnostic.
std::vector<double> interaction_diagonal(const Network& net);

/// Fully polarized +z product state, the quench initial condition.
StateVector all_up_state(int n);

}  // namespace ernet
