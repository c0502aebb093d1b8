#include "ernet/dtwa.hpp"

#include <cmath>
#include <stdexcept>

#include "ernet/parallel.hpp"
#include "ernet/rng.hpp"

namespace ernet {

void dtwa_sample_initial(int n, uint64_t seed, uint64_t trajectory, double* s) {
  for (int i = 0; i < n; ++i) {
    s[i] = rng::sign(seed, rng::DtwaStream, trajectory, i, 0);
    s[n + i] = rng::sign(seed, rng::DtwaStream, trajectory, i, 1);
    s[2 * n + i] = 1.0;
  }
}

namespace {

constexpr int kTrajBlock = 256;

struct Accum {
  // per grid point: sums and squared sums over trajectories
  std::vector<double> th, th2, thsq, thsq2, k;
  void init(std::size_t pts) {
    th.assign(pts, 0.0);
    th2.assign(pts, 0.0);
    thsq.assign(pts, 0.0);
    thsq2.assign(pts, 0.0);
    k.assign(pts, 0.0);
  }
  void add(const Accum& o) {
    for (std::size_t i = 0; i < th.size(); ++i) {
      th[i] += o.th[i];
      th2[i] += o.th2[i];
      thsq[i] += o.thsq[i];
      thsq2[i] += o.thsq2[i];
      k[i] += o.k[i];
    }
  }
};

void run_block(const Adjacency& adj, const QuenchSpec& q, uint64_t seed,
               int traj_begin, int traj_end, Accum& acc) {
  const int n = adj.n;
  const std::size_t pts = q.n_points();
  acc.init(pts);
  std::vector<double> s(3 * n);
  MfIntegrator integ(adj, q.h_f, q.dt);

  for (int traj = traj_begin; traj < traj_end; ++traj) {
    dtwa_sample_initial(n, seed, traj, s.data());
    for (std::size_t p = 0; p < pts; ++p) {
      if (p > 0) integ.step(s);
      double qz = 0.0, s2 = 0.0, ksum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double z = s[2 * n + i];
        qz += z;
        s2 += z * z;
        const double x = s[i], y = s[n + i];
        if (x * x + y * y >= 1e-24) ksum += 0.5 * std::atan2(-y, x);
      }
      const double th = qz / n;
      const double thsq = (n + qz * qz - s2) / (double(n) * n);
      acc.th[p] += th;
      acc.th2[p] += th * th;
      acc.thsq[p] += thsq;
      acc.thsq2[p] += thsq * thsq;
      acc.k[p] += ksum / n;
    }
  }
}

DtwaTrace reduce(const std::vector<Accum>& blocks, const QuenchSpec& q,
                 int n_traj) {
  const std::size_t pts = q.n_points();
  Accum total;
  total.init(pts);
  for (const Accum& b : blocks) total.add(b);

  DtwaTrace tr;
  tr.t.resize(pts);
  tr.theta_z_mean.resize(pts);
  tr.theta_z_se.resize(pts);
  tr.theta_z_sq_mean.resize(pts);
  tr.theta_z_sq_se.resize(pts);
  tr.k_mean.resize(pts);
  const double m = n_traj;
  for (std::size_t p = 0; p < pts; ++p) {
    tr.t[p] = p * q.dt;
    const double mu = total.th[p] / m;
    const double mu2 = total.thsq[p] / m;
    tr.theta_z_mean[p] = mu;
    tr.theta_z_sq_mean[p] = mu2;
    if (n_traj > 1) {
      const double var = (total.th2[p] / m - mu * mu) * m / (m - 1.0);
      const double var2 = (total.thsq2[p] / m - mu2 * mu2) * m / (m - 1.0);
      tr.theta_z_se[p] = std::sqrt(std::max(var, 0.0) / m);
      tr.theta_z_sq_se[p] = std::sqrt(std::max(var2, 0.0) / m);
    }
    tr.k_mean[p] = total.k[p] / m;
  }
  return tr;
}

}  // namespace

DtwaTrace dtwa_run(const Network& net, const QuenchSpec& q, int n_traj,
                   uint64_t seed, int n_threads) {
  q.validate();
  if (n_traj < 1) throw std::invalid_argument("dtwa: n_traj must be >= 1");
  const Adjacency adj = build_adjacency(net);
  const int n_blocks = (n_traj + kTrajBlock - 1) / kTrajBlock;
  std::vector<Accum> blocks(n_blocks);
  parallel_for(n_blocks, n_threads, [&](int b) {
    const int lo = b * kTrajBlock;
    const int hi = std::min(n_traj, lo + kTrajBlock);
    run_block(adj, q, seed, lo, hi, blocks[b]);
  });
  return reduce(blocks, q, n_traj);
}

std::vector<PortraitPoint> dtwa_phase_portrait(const Network& net,
                                               const QuenchSpec& q, int n_traj,
                                               uint64_t seed, int n_threads) {
  DtwaTrace tr = dtwa_run(net, q, n_traj, seed, n_threads);
  std::vector<PortraitPoint> pts(tr.t.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = PortraitPoint{tr.t[i], tr.theta_z_mean[i], tr.k_mean[i]};
  return pts;
}

}  // namespace ernet
