#include "ernet/hamiltonian.hpp"

#include <stdexcept>

namespace ernet {

std::vector<double> interaction_diagonal(const Network& net) {
  const int n = net.n_vertices;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> diag(dim, 0.0);
  const KacFactor k = kac(net);
  if (!k.has_edges) return diag;
  const double w = 1.0 / k.value;  // J n / |E| per edge, J = 1
  for (auto [i, j] : net.edges) {
    for (std::size_t b = 0; b < dim; ++b) {
      // sz_i sz_j = +1 when bits agree
      const bool agree = (((b >> i) ^ (b >> j)) & 1u) == 0;
      diag[b] += agree ? -w : w;
    }
  }
  return diag;
}

SpinHamiltonian::SpinHamiltonian(const Network& net, double h)
    : n_(net.n_vertices), h_(h) {
  if (n_ < 1 || n_ > kMaxSites)
    throw std::invalid_argument("hamiltonian: n out of supported range");
  diag_ = interaction_diagonal(net);
}

void SpinHamiltonian::apply(const Amp* x, Amp* y) const {
  const std::size_t dim = diag_.size();
  for (std::size_t b = 0; b < dim; ++b) y[b] = diag_[b] * x[b];
  for (int i = 0; i < n_; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t b = 0; b < dim; ++b) y[b] -= h_ * x[b ^ bit];
  }
}

std::vector<double> SpinHamiltonian::dense() const {
  const std::size_t dim = diag_.size();
  std::vector<double> m(dim * dim, 0.0);
  for (std::size_t b = 0; b < dim; ++b) {
    m[b * dim + b] = diag_[b];
    for (int i = 0; i < n_; ++i) {
      const std::size_t c = b ^ (std::size_t{1} << i);
      m[b * dim + c] = -h_;  // column b, row c
    }
  }
  return m;
}

double SpinHamiltonian::energy(const StateVector& x) const {
  StateVector y(x.size());
  apply(x.data(), y.data());
  double e = 0.0;
  for (std::size_t b = 0; b < x.size(); ++b)
    e += std::real(std::conj(x[b]) * y[b]);
  return e;
}

StateVector all_up_state(int n) {
  StateVector psi(std::size_t{1} << n, Amp{0.0, 0.0});
  psi.back() = Amp{1.0, 0.0};
  return psi;
}

}  // namespace ernet
