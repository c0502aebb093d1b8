#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ernet/evolve.hpp"
#include "ernet/network.hpp"
#include "ernet/quench.hpp"

namespace ernet {

enum class EnsembleSolver { ExactAuto, ExactDense, ExactKrylov, Dtwa, MeanField };

struct EnsembleSpec {
  int n = 0;
  double p = 0.5;
  double h_f = 1.0;
  int n_real = 1;
  uint64_t base_seed = 0;
  double dt = 0.01;
  double t_max = 5.0;
  EnsembleSolver solver = EnsembleSolver::ExactAuto;
  int n_traj = 1000;     // trajectory count per realization (sampled solver)
  double mf_tilt = 0.0;  // optional symmetry-breaking tilt (mean-field)
  int n_threads = 1;
  bool with_fidelity = false;  // also record the growth diagnostic (exact)

  void validate() const;
};

/**
 * Disorder ensemble over network draws.  Realization k uses seed
 * base_seed + k; traces are stored per realization and reduced in index
 * order, so results are reproducible for any thread count.  A failing
 * realization aborts the whole run with an error naming its seed.
 */
struct EnsembleResult {
  std::vector<double> t;
  std::vector<uint64_t> seeds;
  // [n_real][n_points] each
  std::vector<std::vector<double>> theta_z;
  std::vector<std::vector<double>> theta_z_sq;
  std::vector<std::vector<double>> log_g2;     // exact solvers only
  std::vector<std::vector<double>> fid_deriv;  // exact, when requested
};

EnsembleResult run_ensemble(const EnsembleSpec& spec);

/// Manifest with every parameter and all realization seeds, in the flat
/// key = value form the CLI accepts back as a config file.
void write_manifest(const EnsembleSpec& spec, const std::string& command,
                    const std::string& path);

/// Mean and standard error across realizations, per grid point.
struct ReducedTrace {
  std::vector<double> t, mean, se;
};
ReducedTrace reduce_mean(const std::vector<double>& t,
                         const std::vector<std::vector<double>>& traces);

/**
 * Disorder-averaged rate function: the return probabilities average
 * inside the logarithm,
 *
 *   lambda_bar(t) = -(1/n) log mean_r |G_r(t)|^2 ,
 *
 * evaluated max-shifted in log space so underflowed realizations cannot
 * flush the mean to zero.
 */
std::vector<double> avg_rate_function(
    const std::vector<std::vector<double>>& log_g2, int n);

/// Mean of the per-realization rate functions (the average outside the
/// logarithm), emitted alongside for comparison.
std::vector<double> quenched_rate_function(
    const std::vector<std::vector<double>>& log_g2, int n);

/// Trapezoid time average of a gridded signal over [0, t_f]; t_f must lie
/// on the grid span.
double time_average(const std::vector<double>& v, double dt, double t_f);

struct TurningPoint {
  enum Kind { Lower, Upper };
  int index = 0;
  double t = 0.0;
  Kind kind = Lower;
};

/// Interior local extrema by the three-point test; a flat plateau reports
/// its earliest grid point.
std::vector<TurningPoint> turning_points(const std::vector<double>& v,
                                         double dt);

struct CuspEvent {
  int index = 0;
  double t = 0.0;
  double stat = 0.0;  // |v[i+1] - 2 v[i] + v[i-1]| / dt
};

/**
 * Nonanalyticity detector on a rate-function trace: an event is a local
 * maximum of the discrete second-difference statistic exceeding the
 * threshold.  threshold <= 0 selects 50x the median statistic of the
 * trace.  Plateau ties resolve to the earliest point.
 */
std::vector<CuspEvent> cusp_detect(const std::vector<double>& v, double dt,
                                   double threshold = 0.0);

/**
 * Figure-sweep helper: time-averaged order parameter per final field, one
 * shared network draw per realization across the whole field list, batched
 * integration.  Horizons: t_f = n_osc * K(h_f^2) below the dynamical
 * transition, n_osc absolute time units at and above it.
 */
struct MfSweepRow {
  double h_f = 0.0;
  double time_avg_theta = 0.0;
  double se = 0.0;
  double analytic = 0.0;  // thermodynamic-limit value (NaN at h_f = 1)
};
std::vector<MfSweepRow> mf_sweep(int n, double p, const std::vector<double>& h_list,
                                 int n_real, uint64_t base_seed, double dt,
                                 double n_osc = 100.0);

}  // namespace ernet
