#pragma once

#include <cstdint>
#include <vector>

#include "ernet/network.hpp"

namespace ernet {

/**
 * Site-factorized spin dynamics on a fixed network.  Each site carries a
 * classical vector (sx, sy, sz); the local longitudinal field is
 *
 *   b_i = (2 n / |E|) sum_{j ~ i} sz_j          (J = 1)
 *
 * and the equations of motion are
 *
 *   d sx_i = b_i sy_i,  d sy_i = -b_i sx_i + 2 h sz_i,  d sz_i = -2 h sy_i.
 *
 * They conserve each |s_i| and the mean-field energy
 * -(n/|E|) sum_edges sz_i sz_j - h sum_i sx_i.
 *
 * State layout: s[0..n) = sx, s[n..2n) = sy, s[2n..3n) = sz.
 */
struct Adjacency {
  int n = 0;
  std::vector<int> offset;  // n+1, CSR row starts
  std::vector<int> nbr;     // 2|E| neighbor indices
  double field_scale = 0.0;  // 2n/|E|, 0 for an edgeless graph
};

Adjacency build_adjacency(const Network& net);

void mf_rhs(const Adjacency& adj, double h, const double* s, double* ds);

double mf_energy(const Adjacency& adj, double h, const double* s);

/// All spins along +z; optional small rotation toward +x breaks the
/// symmetry of the initial condition when wanted.
std::vector<double> uniform_initial(int n, double tilt = 0.0);

/// Classic fourth-order Runge-Kutta on the mean-field equations with
/// preallocated stages.
class MfIntegrator {
 public:
  MfIntegrator(const Adjacency& adj, double h, double dt);
  void step(std::vector<double>& s);

 private:
  const Adjacency& adj_;
  double h_, dt_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

/**
 * Many trajectories with a shared network, advanced in lockstep so the
 * local-field matvec amortizes into one dense matrix product per stage.
 * The adjacency is staged in single precision (0/1 entries are exact);
 * states and integration stay double.  Used for the large-n figure sweeps
 * where the adjacency stream dominates the cost.
 */
class BatchedMeanField {
 public:
  BatchedMeanField(const Network& net, const std::vector<double>& h_per_col,
                   double dt);

  int n_cols() const { return n_cols_; }
  /// Column-major n x n_cols view of one component of every trajectory.
  double* component(int axis) { return state_.data() + axis * stride_; }
  void set_uniform_initial();
  void step();

 private:
  void rhs(const double* s, double* ds);

  int n_, n_cols_;
  std::size_t stride_;  // n * n_cols, one component block
  std::vector<float> a_;  // dense adjacency, column-major
  std::vector<double> h_;
  double dt_, field_scale_;
  std::vector<double> state_, k1_, k2_, k3_, k4_, tmp_;
  std::vector<float> zf_, bf_;
};

}  // namespace ernet
