#pragma once

#include <limits>
#include <vector>

#include "ernet/hamiltonian.hpp"

namespace ernet {

/// log |<psi0|psi(t)>|^2 from the return amplitude, computed through
/// hypot so the logarithm stays finite down to the smallest normal
/// magnitudes; exactly -inf only if the amplitude is exactly zero.
double log_loschmidt2(Amp g);

/// Rate function lambda = -log|G|^2 / n.  A vanished return probability
/// maps to +inf rather than NaN.
double rate_function(double log_g2, int n);

struct ThetaMoments {
  double theta_z = 0.0;     // <Theta^z>, Theta^z = (1/n) sum sz_i
  double theta_z_sq = 0.0;  // <(Theta^z)^2>
  std::vector<double> site_z;  // <sz_i> per site
};

ThetaMoments theta_moments(const StateVector& psi, int n);

/// <sz_i sz_j> for one pair, on demand.
double pair_zz(const StateVector& psi, int i, int j);

/**
 * Short-time growth diagnostic: the z-diagonal operator measuring how far
 * the network interaction deviates from its all-to-all counterpart,
 *
 *   Delta = diag_complete - diag_network
 *
 * (both Kac-normalized), evaluated in the evolved state.  Identically zero
 * at t = 0 and for the complete graph.  Returns |<psi|Delta|psi>|.
 */
double fidelity_derivative(const Network& net, const StateVector& psi);

/// Cross-state variant <psi_net|Delta|psi_complete>, exposed for comparing
/// the evolutions under the two Hamiltonians directly.
Amp fidelity_derivative_cross(const Network& net, const StateVector& psi_net,
                              const StateVector& psi_complete);

/// One row of the quench trace CSV.
struct TraceRow {
  double t = 0.0;
  double theta_z = 0.0;
  double theta_z_sq = 0.0;
  double log_g2 = 0.0;
  double re_g = 0.0;
  double im_g = 0.0;
};

}  // namespace ernet
