#include "ernet/meanfield.hpp"

#include <cmath>
#include <stdexcept>

#include "ernet/blas.hpp"

namespace ernet {

Adjacency build_adjacency(const Network& net) {
  Adjacency adj;
  adj.n = net.n_vertices;
  adj.offset.assign(adj.n + 1, 0);
  for (auto [i, j] : net.edges) {
    ++adj.offset[i + 1];
    ++adj.offset[j + 1];
  }
  for (int i = 0; i < adj.n; ++i) adj.offset[i + 1] += adj.offset[i];
  adj.nbr.resize(2 * net.edges.size());
  std::vector<int> fill(adj.offset.begin(), adj.offset.end() - 1);
  for (auto [i, j] : net.edges) {
    adj.nbr[fill[i]++] = j;
    adj.nbr[fill[j]++] = i;
  }
  if (!net.edges.empty())
    adj.field_scale = 2.0 * adj.n / static_cast<double>(net.edges.size());
  return adj;
}

void mf_rhs(const Adjacency& adj, double h, const double* s, double* ds) {
  const int n = adj.n;
  const double* sx = s;
  const double* sy = s + n;
  const double* sz = s + 2 * n;
  double* dx = ds;
  double* dy = ds + n;
  double* dz = ds + 2 * n;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int q = adj.offset[i]; q < adj.offset[i + 1]; ++q)
      acc += sz[adj.nbr[q]];
    const double b = adj.field_scale * acc;
    dx[i] = b * sy[i];
    dy[i] = -b * sx[i] + 2.0 * h * sz[i];
    dz[i] = -2.0 * h * sy[i];
  }
}

double mf_energy(const Adjacency& adj, double h, const double* s) {
  const int n = adj.n;
  const double* sx = s;
  const double* sz = s + 2 * n;
  double inter = 0.0;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int q = adj.offset[i]; q < adj.offset[i + 1]; ++q)
      acc += sz[adj.nbr[q]];
    inter += sz[i] * acc;
  }
  // each edge counted twice; field_scale already carries 2n/|E|
  double e = -0.25 * adj.field_scale * inter;
  for (int i = 0; i < n; ++i) e -= h * sx[i];
  return e;
}

std::vector<double> uniform_initial(int n, double tilt) {
  std::vector<double> s(3 * n, 0.0);
  const double x = std::sin(tilt), z = std::cos(tilt);
  for (int i = 0; i < n; ++i) {
    s[i] = x;
    s[2 * n + i] = z;
  }
  return s;
}

MfIntegrator::MfIntegrator(const Adjacency& adj, double h, double dt)
    : adj_(adj), h_(h), dt_(dt),
      k1_(3 * adj.n), k2_(3 * adj.n), k3_(3 * adj.n), k4_(3 * adj.n),
      tmp_(3 * adj.n) {}

void MfIntegrator::step(std::vector<double>& s) {
  const std::size_t m = s.size();
  mf_rhs(adj_, h_, s.data(), k1_.data());
  for (std::size_t c = 0; c < m; ++c) tmp_[c] = s[c] + 0.5 * dt_ * k1_[c];
  mf_rhs(adj_, h_, tmp_.data(), k2_.data());
  for (std::size_t c = 0; c < m; ++c) tmp_[c] = s[c] + 0.5 * dt_ * k2_[c];
  mf_rhs(adj_, h_, tmp_.data(), k3_.data());
  for (std::size_t c = 0; c < m; ++c) tmp_[c] = s[c] + dt_ * k3_[c];
  mf_rhs(adj_, h_, tmp_.data(), k4_.data());
  for (std::size_t c = 0; c < m; ++c)
    s[c] += dt_ / 6.0 * (k1_[c] + 2.0 * k2_[c] + 2.0 * k3_[c] + k4_[c]);
}

BatchedMeanField::BatchedMeanField(const Network& net,
                                   const std::vector<double>& h_per_col,
                                   double dt)
    : n_(net.n_vertices), n_cols_(static_cast<int>(h_per_col.size())),
      stride_(std::size_t(n_) * n_cols_),
      a_(std::size_t(n_) * n_, 0.0f), h_(h_per_col), dt_(dt),
      state_(3 * stride_), k1_(3 * stride_), k2_(3 * stride_),
      k3_(3 * stride_), k4_(3 * stride_), tmp_(3 * stride_),
      zf_(stride_), bf_(stride_) {
  if (n_cols_ < 1)
    throw std::invalid_argument("batched meanfield: need at least one column");
  for (auto [i, j] : net.edges) {
    a_[std::size_t(j) * n_ + i] = 1.0f;
    a_[std::size_t(i) * n_ + j] = 1.0f;
  }
  field_scale_ =
      net.edges.empty() ? 0.0 : 2.0 * n_ / static_cast<double>(net.edges.size());
}

void BatchedMeanField::set_uniform_initial() {
  std::fill(state_.begin(), state_.end(), 0.0);
  std::fill(state_.begin() + 2 * stride_, state_.end(), 1.0);
}

void BatchedMeanField::rhs(const double* s, double* ds) {
  const double* sx = s;
  const double* sy = s + stride_;
  const double* sz = s + 2 * stride_;
  double* dx = ds;
  double* dy = ds + stride_;
  double* dz = ds + 2 * stride_;

  for (std::size_t q = 0; q < stride_; ++q) zf_[q] = static_cast<float>(sz[q]);
  const float onef = 1.0f, zerof = 0.0f;
  sgemm_("N", "N", &n_, &n_cols_, &n_, &onef, a_.data(), &n_, zf_.data(), &n_,
         &zerof, bf_.data(), &n_);

  for (int c = 0; c < n_cols_; ++c) {
    const double h = h_[c];
    const std::size_t off = std::size_t(c) * n_;
    for (int i = 0; i < n_; ++i) {
      const std::size_t q = off + i;
      const double b = field_scale_ * static_cast<double>(bf_[q]);
      dx[q] = b * sy[q];
      dy[q] = -b * sx[q] + 2.0 * h * sz[q];
      dz[q] = -2.0 * h * sy[q];
    }
  }
}

void BatchedMeanField::step() {
  const std::size_t m = state_.size();
  rhs(state_.data(), k1_.data());
  for (std::size_t c = 0; c < m; ++c)
    tmp_[c] = state_[c] + 0.5 * dt_ * k1_[c];
  rhs(tmp_.data(), k2_.data());
  for (std::size_t c = 0; c < m; ++c)
    tmp_[c] = state_[c] + 0.5 * dt_ * k2_[c];
  rhs(tmp_.data(), k3_.data());
  for (std::size_t c = 0; c < m; ++c) tmp_[c] = state_[c] + dt_ * k3_[c];
  rhs(tmp_.data(), k4_.data());
  for (std::size_t c = 0; c < m; ++c)
    state_[c] += dt_ / 6.0 * (k1_[c] + 2.0 * k2_[c] + 2.0 * k3_[c] + k4_[c]);
}

}  // namespace ernet
