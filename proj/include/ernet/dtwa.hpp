#pragma once

#include <cstdint>
#include <vector>

#include "ernet/meanfield.hpp"
#include "ernet/quench.hpp"

namespace ernet {

/**
 * Discrete truncated Wigner sampling over the mean-field flow.  The
 * polarized initial state maps to sz_i = +1 deterministically and
 * sx_i, sy_i drawn independently from {+1, -1}, so every classical spin
 * has length sqrt(3).  Draws are counter-based on
 * (seed, trajectory, site, axis) and reproduce independent of ordering.
 */
void dtwa_sample_initial(int n, uint64_t seed, uint64_t trajectory, double* s);

struct DtwaTrace {
  std::vector<double> t;
  std::vector<double> theta_z_mean, theta_z_se;
  std::vector<double> theta_z_sq_mean, theta_z_sq_se;
  std::vector<double> k_mean;
};

/**
 * Trajectory-averaged quench observables.  The (Theta^z)^2 estimator keeps
 * the exact quantum value of sz_i^2 on the diagonal:
 *
 *   (1/n^2) (n + q^2 - sum_i sz_i^2),   q = sum_i sz_i ,
 *
 * which evaluates to exactly 1 on the initial ensemble.  The per-site
 * momentum reported in k_mean is atan2(-sy, sx)/2 with k = 0 at the poles.
 *
 * Trajectories accumulate into fixed blocks and blocks reduce in index
 * order, so the result is identical for any thread count.
 */
DtwaTrace dtwa_run(const Network& net, const QuenchSpec& q, int n_traj,
                   uint64_t seed, int n_threads = 1);

/// Mean phase-space path (Theta^z(t), k(t)) of the sampled ensemble;
/// columns t, theta_z, k.
struct PortraitPoint {
  double t = 0.0;
  double theta_z = 0.0;
  double k = 0.0;
};
std::vector<PortraitPoint> dtwa_phase_portrait(const Network& net,
                                               const QuenchSpec& q, int n_traj,
                                               uint64_t seed,
                                               int n_threads = 1);

}  // namespace ernet
