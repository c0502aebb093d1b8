#pragma once

#include <cstdint>
#include <vector>

#include "ernet/hamiltonian.hpp"
#include "ernet/network.hpp"

namespace ernet {

/**
 * Raw material of the correlation decomposition of the return probability.
 * The exact identity being probed: with a_l = (<sz_l> + 1)/2 and Delta_S
 * the central moment <prod_{i in S} (sz_i - <sz_i>)>,
 *
 *   |G|^2 = sum_{S} (1/2^|S|) Delta_S  prod_{l not in S} a_l ,
 *
 * where singleton terms vanish and the empty set gives the product of the
 * a_l alone.  Each sample records one subset's central moment together
 * with the log of its complement product, keyed by the subset's internal
 * edge pattern in the realization's network.
 */
struct MomentSample {
  int realization = 0;
  double t = 0.0;
  std::vector<int> sites;  // ascending
  int edge_config = 0;     // number of network edges inside the subset
  double delta = 0.0;      // central moment of the subset
  double log_prod = 0.0;   // sum_{l not in subset} ln a_l; -inf if degenerate
  bool degenerate = false;  // some a_l <= 0 under the complement product
};

/// All pairs (exhaustive, m = 2).
std::vector<MomentSample> collect_pair_moments(const Network& net,
                                               const StateVector& psi,
                                               double t, int realization);

/// Random distinct subsets of size m >= 3, counter-based draws keyed on
/// (subsample_seed, draw index), so a recorded seed reproduces the set.
std::vector<MomentSample> collect_subset_moments(const Network& net,
                                                 const StateVector& psi,
                                                 double t, int realization,
                                                 int m, int n_draws,
                                                 uint64_t subsample_seed);

/// Evaluate both sides of the decomposition identity exactly (2^n subset
/// enumeration; guarded to n <= 12).
struct ExpansionCheck {
  double lhs = 0.0;  // |G|^2 from the amplitude
  double rhs = 0.0;  // assembled from the moments
  double abs_err = 0.0;
};
ExpansionCheck moment_expansion_check(const StateVector& psi, int n);

/**
 * Per-configuration statistics of one time slice of samples, plus a pooled
 * row (config = -1).  The canonical sigma_0m is the sample covariance
 * between delta and log_prod over non-degenerate samples; the covariance
 * against exp(log_prod) (degenerates contributing weight zero) and the
 * joint-normal closed form Cov(delta, log_prod) * mean(exp(log_prod)) are
 * reported next to it, with normality diagnostics of delta to judge the
 * closed form's premise.
 */
struct ConfigStats {
  int config = 0;  // -1 = pooled over configurations
  std::size_t count = 0;
  std::size_t degenerate_count = 0;
  double p_config = 0.0;  // count / total at this time slice
  double mu_delta = 0.0;
  double var_delta = 0.0;
  double mu_log_prod = 0.0;       // non-degenerate samples
  double cov_delta_logprod = 0.0;  // canonical sigma_0m
  double cov_delta_expprod = 0.0;
  double cov_lognormal_closed = 0.0;
  double skew_delta = 0.0;
  double exkurt_delta = 0.0;
  bool enough = false;  // count >= 30
};
std::vector<ConfigStats> resolve_statistics(
    const std::vector<MomentSample>& slice);

/// Scaled moment-expansion coefficient
///   Delta_m = C(n, m) sigma_0m / (1 + mean_theta)^m .
/// Returns the divergence sentinel (+/-inf by sign) when mean_theta has
/// collapsed onto -1.
double delta_m(int n, int m, double sigma_0m, double mean_theta);

/// Same coefficient normalized by mean((Theta^z + 1)/2)^m instead
/// (differs by 2^m); emitted under its own label.
double delta_m_half(int n, int m, double sigma_0m, double mean_theta);

/**
 * Ensemble ratio  mean|G|^2 ^{1/n} / mean[(Theta^z + 1)/2], the collapse
 * diagnostic relating the return probability to the order parameter.
 * Computed in log space; exactly 1 for uncorrelated sites with uniform
 * <sz>.  log_g2 and theta are per-realization values at one time.
 */
double gbar_over_theta(const std::vector<double>& log_g2,
                       const std::vector<double>& theta, int n);

double binomial_coeff(int n, int m);

}  // namespace ernet
