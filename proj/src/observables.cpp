#include "ernet/observables.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ernet {

double log_loschmidt2(Amp g) {
  const double mag = std::hypot(g.real(), g.imag());
  if (mag == 0.0) return -std::numeric_limits<double>::infinity();
  return 2.0 * std::log(mag);
}

double rate_function(double log_g2, int n) {
  if (std::isinf(log_g2) && log_g2 < 0)
    return std::numeric_limits<double>::infinity();
  return -log_g2 / n;
}

ThetaMoments theta_moments(const StateVector& psi, int n) {
  ThetaMoments m;
  m.site_z.assign(n, 0.0);
  const std::size_t dim = psi.size();
  for (std::size_t b = 0; b < dim; ++b) {
    const double w = std::norm(psi[b]);
    if (w == 0.0) continue;
    const double mz =
        (2.0 * std::popcount(b) - n) / n;  // Theta^z eigenvalue of |b>
    m.theta_z += w * mz;
    m.theta_z_sq += w * mz * mz;
    for (int i = 0; i < n; ++i)
      m.site_z[i] += ((b >> i) & 1u) ? w : -w;
  }
  return m;
}

double pair_zz(const StateVector& psi, int i, int j) {
  double v = 0.0;
  for (std::size_t b = 0; b < psi.size(); ++b) {
    const double w = std::norm(psi[b]);
    if (w == 0.0) continue;
    v += ((((b >> i) ^ (b >> j)) & 1u) == 0) ? w : -w;
  }
  return v;
}

namespace {

// Kac-normalized complete-graph interaction diagonal, closed form in the
// magnetization: -(n/|E_1|) * (M^2 - n)/2 with |E_1| = n(n-1)/2.
double complete_diag(int n, std::size_t b) {
  if (n < 2) return 0.0;
  const double mz = 2.0 * std::popcount(b) - n;
  return -(mz * mz - n) / (n - 1.0);
}

}  // namespace

double fidelity_derivative(const Network& net, const StateVector& psi) {
  const int n = net.n_vertices;
  const std::vector<double> diag_p = interaction_diagonal(net);
  double acc = 0.0;
  for (std::size_t b = 0; b < psi.size(); ++b) {
    const double w = std::norm(psi[b]);
    if (w == 0.0) continue;
    acc += w * (complete_diag(n, b) - diag_p[b]);
  }
  return std::abs(acc);
}

Amp fidelity_derivative_cross(const Network& net, const StateVector& psi_net,
                              const StateVector& psi_complete) {
  if (psi_net.size() != psi_complete.size())
    throw std::invalid_argument("fidelity_derivative_cross: dimension mismatch");
  const int n = net.n_vertices;
  const std::vector<double> diag_p = interaction_diagonal(net);
  Amp acc{0.0, 0.0};
  for (std::size_t b = 0; b < psi_net.size(); ++b)
    acc += std::conj(psi_net[b]) * (complete_diag(n, b) - diag_p[b]) *
           psi_complete[b];
  return acc;
}

}  // namespace ernet
