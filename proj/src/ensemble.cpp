#include "ernet/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "ernet/collective.hpp"
#include "ernet/dtwa.hpp"
#include "ernet/meanfield.hpp"
#include "ernet/parallel.hpp"

namespace ernet {

void EnsembleSpec::validate() const {
  QuenchSpec{h_f, dt, t_max}.validate();
  if (n < 1) throw std::invalid_argument("ensemble: n must be >= 1");
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("ensemble: p must lie in (0, 1]");
  if (n_real < 1) throw std::invalid_argument("ensemble: empty ensemble");
  if (n_traj < 1) throw std::invalid_argument("ensemble: n_traj must be >= 1");
}

namespace {

const char* solver_name(EnsembleSolver s) {
  switch (s) {
    case EnsembleSolver::ExactAuto: return "auto";
    case EnsembleSolver::ExactDense: return "dense";
    case EnsembleSolver::ExactKrylov: return "krylov";
    case EnsembleSolver::Dtwa: return "dtwa";
    case EnsembleSolver::MeanField: return "meanfield";
  }
  return "?";
}

SolverKind exact_kind(EnsembleSolver s) {
  switch (s) {
    case EnsembleSolver::ExactDense: return SolverKind::DenseEig;
    case EnsembleSolver::ExactKrylov: return SolverKind::Krylov;
    default: return SolverKind::Auto;
  }
}

void run_one_exact(const EnsembleSpec& spec, uint64_t seed,
                   std::vector<double>& theta, std::vector<double>& theta_sq,
                   std::vector<double>& logg2, std::vector<double>* fid) {
  const Network net = generate(spec.n, spec.p, seed);
  const QuenchSpec q{spec.h_f, spec.dt, spec.t_max};
  EvolveOptions opt;
  opt.kind = exact_kind(spec.solver);
  const std::size_t pts = q.n_points();
  theta.resize(pts);
  theta_sq.resize(pts);
  logg2.resize(pts);
  if (fid) fid->resize(pts);
  evolve(net, q, opt, [&](int step, double, const StateVector& psi) {
    const ThetaMoments m = theta_moments(psi, spec.n);
    theta[step] = m.theta_z;
    theta_sq[step] = m.theta_z_sq;
    logg2[step] = log_loschmidt2(psi.back());
    if (fid) (*fid)[step] = fidelity_derivative(net, psi);
  });
}

void run_one_meanfield(const EnsembleSpec& spec, uint64_t seed,
                       std::vector<double>& theta,
                       std::vector<double>& theta_sq) {
  const Network net = generate(spec.n, spec.p, seed);
  const Adjacency adj = build_adjacency(net);
  const QuenchSpec q{spec.h_f, spec.dt, spec.t_max};
  const std::size_t pts = q.n_points();
  theta.resize(pts);
  theta_sq.resize(pts);
  std::vector<double> s = uniform_initial(spec.n, spec.mf_tilt);
  MfIntegrator integ(adj, spec.h_f, spec.dt);
  for (std::size_t p = 0; p < pts; ++p) {
    if (p > 0) integ.step(s);
    double acc = 0.0;
    for (int i = 0; i < spec.n; ++i) acc += s[2 * spec.n + i];
    const double th = acc / spec.n;
    theta[p] = th;
    theta_sq[p] = th * th;
  }
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  EnsembleResult res;
  res.t = time_grid(QuenchSpec{spec.h_f, spec.dt, spec.t_max});
  res.seeds.resize(spec.n_real);
  for (int k = 0; k < spec.n_real; ++k) res.seeds[k] = spec.base_seed + k;

  const bool exact = spec.solver == EnsembleSolver::ExactAuto ||
                     spec.solver == EnsembleSolver::ExactDense ||
                     spec.solver == EnsembleSolver::ExactKrylov;
  res.theta_z.resize(spec.n_real);
  res.theta_z_sq.resize(spec.n_real);
  if (exact) {
    res.log_g2.resize(spec.n_real);
    if (spec.with_fidelity) res.fid_deriv.resize(spec.n_real);
  }

  parallel_for(spec.n_real, spec.n_threads, [&](int k) {
    const uint64_t seed = res.seeds[k];
    try {
      switch (spec.solver) {
        case EnsembleSolver::ExactAuto:
        case EnsembleSolver::ExactDense:
        case EnsembleSolver::ExactKrylov:
          run_one_exact(spec, seed, res.theta_z[k], res.theta_z_sq[k],
                        res.log_g2[k],
                        spec.with_fidelity ? &res.fid_deriv[k] : nullptr);
          break;
        case EnsembleSolver::Dtwa: {
          const Network net = generate(spec.n, spec.p, seed);
          const QuenchSpec q{spec.h_f, spec.dt, spec.t_max};
          DtwaTrace tr = dtwa_run(net, q, spec.n_traj, seed, 1);
          res.theta_z[k] = std::move(tr.theta_z_mean);
          res.theta_z_sq[k] = std::move(tr.theta_z_sq_mean);
          break;
        }
        case EnsembleSolver::MeanField:
          run_one_meanfield(spec, seed, res.theta_z[k], res.theta_z_sq[k]);
          break;
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("ensemble: realization with seed " +
                               std::to_string(seed) + " failed: " + e.what());
    }
  });
  return res;
}

void write_manifest(const EnsembleSpec& spec, const std::string& command,
                    const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write manifest: " + path);
  char num[64];
  auto put = [&](const char* key, double v) {
    std::snprintf(num, sizeof num, "%.17g", v);
    f << key << " = " << num << '\n';
  };
  f << "[" << command << "]\n";
  f << "n = " << spec.n << '\n';
  put("p", spec.p);
  put("hf", spec.h_f);
  f << "n-real = " << spec.n_real << '\n';
  f << "seed = " << spec.base_seed << '\n';
  put("dt", spec.dt);
  put("t-max", spec.t_max);
  f << "solver = " << solver_name(spec.solver) << '\n';
  if (spec.solver == EnsembleSolver::Dtwa)
    f << "n-traj = " << spec.n_traj << '\n';
  f << "# realization seeds (seed + index): ";
  for (int k = 0; k < spec.n_real; ++k)
    f << (k ? "," : "") << spec.base_seed + k;
  f << '\n';
}

ReducedTrace reduce_mean(const std::vector<double>& t,
                         const std::vector<std::vector<double>>& traces) {
  if (traces.empty()) throw std::invalid_argument("reduce_mean: no traces");
  const std::size_t pts = t.size();
  ReducedTrace r;
  r.t = t;
  r.mean.assign(pts, 0.0);
  r.se.assign(pts, 0.0);
  const double m = static_cast<double>(traces.size());
  for (const auto& tr : traces)
    for (std::size_t i = 0; i < pts; ++i) r.mean[i] += tr[i];
  for (std::size_t i = 0; i < pts; ++i) r.mean[i] /= m;
  if (traces.size() > 1) {
    for (const auto& tr : traces)
      for (std::size_t i = 0; i < pts; ++i) {
        const double d = tr[i] - r.mean[i];
        r.se[i] += d * d;
      }
    for (std::size_t i = 0; i < pts; ++i)
      r.se[i] = std::sqrt(r.se[i] / (m * (m - 1.0)));
  }
  return r;
}

std::vector<double> avg_rate_function(
    const std::vector<std::vector<double>>& log_g2, int n) {
  if (log_g2.empty())
    throw std::invalid_argument("avg_rate_function: empty ensemble");
  const std::size_t pts = log_g2.front().size();
  const double m = static_cast<double>(log_g2.size());
  std::vector<double> lam(pts);
  for (std::size_t i = 0; i < pts; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& tr : log_g2) mx = std::max(mx, tr[i]);
    if (std::isinf(mx) && mx < 0) {
      lam[i] = std::numeric_limits<double>::infinity();
      continue;
    }
    double acc = 0.0;
    for (const auto& tr : log_g2) acc += std::exp(tr[i] - mx);
    lam[i] = -(mx + std::log(acc / m)) / n;
  }
  return lam;
}

std::vector<double> quenched_rate_function(
    const std::vector<std::vector<double>>& log_g2, int n) {
  if (log_g2.empty())
    throw std::invalid_argument("quenched_rate_function: empty ensemble");
  const std::size_t pts = log_g2.front().size();
  std::vector<double> lam(pts, 0.0);
  for (const auto& tr : log_g2)
    for (std::size_t i = 0; i < pts; ++i) lam[i] += -tr[i] / n;
  for (auto& v : lam) v /= static_cast<double>(log_g2.size());
  return lam;
}

double time_average(const std::vector<double>& v, double dt, double t_f) {
  const int idx = static_cast<int>(t_f / dt + 0.5);
  if (idx < 1 || idx >= static_cast<int>(v.size()))
    throw std::invalid_argument("time_average: t_f outside the trace");
  double acc = 0.5 * (v[0] + v[idx]);
  for (int i = 1; i < idx; ++i) acc += v[i];
  return acc / idx;
}

std::vector<TurningPoint> turning_points(const std::vector<double>& v,
                                         double dt) {
  std::vector<TurningPoint> tps;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] < v[i - 1] && v[i] <= v[i + 1])
      tps.push_back({static_cast<int>(i), i * dt, TurningPoint::Lower});
    else if (v[i] > v[i - 1] && v[i] >= v[i + 1])
      tps.push_back({static_cast<int>(i), i * dt, TurningPoint::Upper});
  }
  return tps;
}

std::vector<CuspEvent> cusp_detect(const std::vector<double>& v, double dt,
                                   double threshold) {
  std::vector<CuspEvent> events;
  if (v.size() < 3) return events;
  const std::size_t m = v.size() - 2;
  std::vector<double> d2(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = (v[i + 2] - 2.0 * v[i + 1] + v[i]) / dt;
    d2[i] = std::isfinite(s) ? std::abs(s) : 0.0;
  }
  if (threshold <= 0.0) {
    std::vector<double> sorted(d2);
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted[m / 2];
    threshold = 50.0 * med;
    if (threshold <= 0.0) return events;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (d2[i] <= threshold) continue;
    const bool left_ok = (i == 0) || d2[i] > d2[i - 1];
    const bool right_ok = (i + 1 == m) || d2[i] >= d2[i + 1];
    if (left_ok && right_ok)
      events.push_back({static_cast<int>(i + 1), (i + 1) * dt, d2[i]});
  }
  return events;
}

std::vector<MfSweepRow> mf_sweep(int n, double p,
                                 const std::vector<double>& h_list, int n_real,
                                 uint64_t base_seed, double dt, double n_osc) {
  if (h_list.empty()) throw std::invalid_argument("mf_sweep: empty field list");
  const int n_cols = static_cast<int>(h_list.size());

  std::vector<int> col_steps(n_cols);
  int max_steps = 0;
  for (int c = 0; c < n_cols; ++c) {
    const double h = h_list[c];
    if (!(h > 0.0)) throw std::invalid_argument("mf_sweep: h_f must be > 0");
    const double t_f = (h < 1.0) ? n_osc * elliptic_K(h * h) : n_osc;
    col_steps[c] = static_cast<int>(t_f / dt + 0.5);
    max_steps = std::max(max_steps, col_steps[c]);
  }

  // [realization][column] time averages
  std::vector<std::vector<double>> avg(n_real, std::vector<double>(n_cols));
  for (int r = 0; r < n_real; ++r) {
    const Network net = generate(n, p, base_seed + r);
    BatchedMeanField batch(net, h_list, dt);
    batch.set_uniform_initial();
    std::vector<double> acc(n_cols, 0.0);
    const double* z = batch.component(2);
    auto theta_of = [&](int c) {
      double s = 0.0;
      const double* zc = z + std::size_t(c) * n;
      for (int i = 0; i < n; ++i) s += zc[i];
      return s / n;
    };
    for (int c = 0; c < n_cols; ++c) acc[c] = 0.5 * theta_of(c);
    for (int step = 1; step <= max_steps; ++step) {
      batch.step();
      for (int c = 0; c < n_cols; ++c) {
        if (step < col_steps[c])
          acc[c] += theta_of(c);
        else if (step == col_steps[c])
          acc[c] += 0.5 * theta_of(c);
      }
    }
    for (int c = 0; c < n_cols; ++c) avg[r][c] = acc[c] / col_steps[c];
  }

  std::vector<MfSweepRow> rows(n_cols);
  const double m = n_real;
  for (int c = 0; c < n_cols; ++c) {
    double mu = 0.0;
    for (int r = 0; r < n_real; ++r) mu += avg[r][c];
    mu /= m;
    double var = 0.0;
    for (int r = 0; r < n_real; ++r) {
      const double d = avg[r][c] - mu;
      var += d * d;
    }
    const double se = (n_real > 1) ? std::sqrt(var / (m * (m - 1.0))) : 0.0;
    rows[c] = MfSweepRow{h_list[c], mu, se, time_avg_theta_thermo(h_list[c])};
  }
  return rows;
}

}  // namespace ernet
