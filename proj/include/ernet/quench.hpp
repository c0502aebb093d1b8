#pragma once

#include <stdexcept>
#include <vector>

namespace ernet {

/**
 * Quench protocol: the system starts in the fully polarized +z product
 * state (ground state at zero transverse field) and evolves under the
 * Hamiltonian with final field h_f.  The coupling J = 1 sets the units;
 * times are sampled on the uniform grid 0, dt, ..., up to t_max inclusive.
 */
struct QuenchSpec {
  double h_f = 0.0;
  double dt = 0.01;
  double t_max = 5.0;

  int n_steps() const {
    return static_cast<int>(t_max / dt + 0.5);
  }
  // grid size including t = 0
  int n_points() const { return n_steps() + 1; }

  void validate() const {
    if (h_f < 0.0) throw std::invalid_argument("quench: h_f must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("quench: dt must be > 0");
    if (!(t_max >= 0.0)) throw std::invalid_argument("quench: t_max must be >= 0");
  }
};

inline std::vector<double> time_grid(const QuenchSpec& q) {
  std::vector<double> t(q.n_points());
  for (int k = 0; k < q.n_points(); ++k) t[k] = k * q.dt;
  return t;
}

}  // namespace ernet
