#pragma once

#include <vector>

#include "ernet/observables.hpp"
#include "ernet/quench.hpp"

namespace ernet {

/**
 * Dynamics restricted to the permutation-symmetric sector, which is exact
 * for the complete graph (p = 1).  The polarized initial state lives in the
 * maximal-spin ladder S = n/2, an (n+1)-dimensional tridiagonal problem:
 * basis |S, m>, m = -S..S, index idx = m + S.
 *
 *   diag(m)  = -(2/(n-1)) (2 m^2 - n/2)      (interaction, Kac-normalized)
 *   offdiag  = -h sqrt(S(S+1) - m(m+1))      (transverse field, 2 h J_x)
 *
 * The same convention as the full solver, additive constant included, so
 * return amplitudes agree including phase.
 */
struct CollectiveMatrix {
  int n = 0;
  std::vector<double> diag;     // n+1 entries
  std::vector<double> offdiag;  // n entries
};

/// Throws std::invalid_argument for n < 2.
CollectiveMatrix build_collective_hamiltonian(int n, double h);

/// Quench trace in the collective sector; same columns as the full solver.
/// Theta^z = 2 <J_z> / n, the return amplitude is the m = +S component.
std::vector<TraceRow> evolve_collective(int n, const QuenchSpec& q);

/// Ground-state order parameter of the infinite-range model,
/// sqrt(1 - (h/2)^2) up to the equilibrium critical field h = 2, then 0.
/// Throws for h < 0.
double equilibrium_order(double h);

/// Complete elliptic integral of the first kind, parameter convention
/// K(m) = int_0^{pi/2} dx / sqrt(1 - m sin^2 x), via the arithmetic-
/// geometric mean to 1e-14.  Domain 0 <= m < 1; m >= 1 diverges (throws).
double elliptic_K(double m);

/// Oscillation period of the thermodynamic-limit orbit after a quench to
/// h < J = 1: T = K(h^2).  Throws at and above the dynamical transition.
double classical_period(double h);

/// Long-time average of Theta^z in the thermodynamic limit:
/// pi / (2 K(h_f^2)) below the transition, 0 above, NaN at exactly
/// h_f = 1 where the orbit reaches the unstable point and the period
/// diverges.
double time_avg_theta_thermo(double h_f);

struct OrbitPoint {
  double t = 0.0;
  double theta_z = 0.0;
  double k = 0.0;
};

/**
 * Thermodynamic-limit trajectory after the quench, integrated in Cartesian
 * Bloch coordinates (the canonical (Theta^z, k) chart is singular at the
 * initial pole):
 *
 *   dx/dt = 4 z y,   dy/dt = -4 z x + 2 h z,   dz/dt = -2 h y
 *
 * from (0, 0, 1).  Reported as Theta^z = z and k = atan2(-y, x) / 2, with
 * k = 0 at the poles by convention.
 */
std::vector<OrbitPoint> classical_orbit(double h, double dt, double t_max);

}  // namespace ernet
