#pragma once

#include <functional>

#include "ernet/hamiltonian.hpp"
#include "ernet/observables.hpp"
#include "ernet/quench.hpp"

namespace ernet {

enum class SolverKind { Auto, DenseEig, Krylov };

struct EvolveOptions {
  SolverKind kind = SolverKind::Auto;
  double krylov_tol = 1e-12;  // per-step error budget
  int krylov_max_dim = 30;
};

/// Receives the state at every grid point, t = step * dt, step 0 included.
using StateSink =
    std::function<void(int step, double t, const StateVector& psi)>;

/**
 * Evolve the polarized initial state under the quench Hamiltonian and hand
 * the state at each grid point to the sink.
 *
 * Two engines: full eigendecomposition (exact up to diagonalization
 * accuracy, feasible to n = 13 in memory, fastest below n = 11) and a
 * Lanczos short-step propagator with adaptive subspace size (n up to 20).
 * Auto picks dense for n <= 10, Krylov above.
 */
void evolve(const Network& net, const QuenchSpec& q, const EvolveOptions& opt,
            const StateSink& sink);

/// Convenience wrapper producing the standard observable trace.
std::vector<TraceRow> quench_trace(const Network& net, const QuenchSpec& q,
                                   const EvolveOptions& opt = {});

}  // namespace ernet
