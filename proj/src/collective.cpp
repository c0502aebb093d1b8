#include "ernet/collective.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ernet/blas.hpp"

namespace ernet {

CollectiveMatrix build_collective_hamiltonian(int n, double h) {
  if (n < 2)
    throw std::invalid_argument("collective: n must be >= 2");
  CollectiveMatrix cm;
  cm.n = n;
  cm.diag.resize(n + 1);
  cm.offdiag.resize(n);
  const double s = n / 2.0;
  for (int idx = 0; idx <= n; ++idx) {
    const double m = idx - s;
    cm.diag[idx] = -(2.0 / (n - 1)) * (2.0 * m * m - n / 2.0);
  }
  for (int idx = 0; idx < n; ++idx) {
    const double m = idx - s;
    cm.offdiag[idx] = -h * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  return cm;
}

std::vector<TraceRow> evolve_collective(int n, const QuenchSpec& q) {
  q.validate();
  CollectiveMatrix cm = build_collective_hamiltonian(n, q.h_f);
  const int dim = n + 1;

  std::vector<double> eval = cm.diag;
  std::vector<double> sub = cm.offdiag;
  std::vector<double> z(std::size_t(dim) * dim);
  std::vector<double> work(2 * dim);
  int info = 0;
  dstev_("V", &dim, eval.data(), sub.data(), z.data(), &dim, work.data(),
         &info);
  if (info != 0) throw std::runtime_error("dstev failed in collective solver");

  // initial state is the top of the ladder, m = +S
  std::vector<double> w(dim);
  for (int e = 0; e < dim; ++e) w[e] = z[std::size_t(e) * dim + (dim - 1)];

  std::vector<TraceRow> rows(q.n_points());
  std::vector<std::complex<double>> amp(dim);
  for (int k = 0; k < q.n_points(); ++k) {
    const double t = k * q.dt;
    std::fill(amp.begin(), amp.end(), std::complex<double>{0.0, 0.0});
    for (int e = 0; e < dim; ++e) {
      const double ph = eval[e] * t;
      const std::complex<double> f =
          w[e] * std::complex<double>{std::cos(ph), -std::sin(ph)};
      for (int idx = 0; idx < dim; ++idx)
        amp[idx] += z[std::size_t(e) * dim + idx] * f;
    }
    double th = 0.0, th2 = 0.0;
    for (int idx = 0; idx < dim; ++idx) {
      const double p = std::norm(amp[idx]);
      const double mz = (2.0 * idx - n) / n;  // 2m/n
      th += p * mz;
      th2 += p * mz * mz;
    }
    const std::complex<double> g = amp[dim - 1];
    rows[k] = TraceRow{t, th, th2, log_loschmidt2(g), g.real(), g.imag()};
  }
  return rows;
}

double equilibrium_order(double h) {
  if (h < 0.0)
    throw std::invalid_argument("equilibrium_order: h must be >= 0");
  if (h >= 2.0) return 0.0;
  return std::sqrt(1.0 - (h / 2.0) * (h / 2.0));
}

double elliptic_K(double m) {
  if (m < 0.0)
    throw std::invalid_argument("elliptic_K: parameter m must be >= 0");
  if (m >= 1.0)
    throw std::invalid_argument("elliptic_K: diverges for m >= 1");
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  while (std::abs(a - b) > 1e-16 * a) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

double classical_period(double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("classical_period: h must be > 0");
  if (h >= 1.0)
    throw std::invalid_argument(
        "classical_period: period diverges at and above h = J");
  return elliptic_K(h * h);
}

double time_avg_theta_thermo(double h_f) {
  if (!(h_f > 0.0))
    throw std::invalid_argument("time_avg_theta_thermo: h_f must be > 0");
  if (h_f == 1.0) return std::numeric_limits<double>::quiet_NaN();
  if (h_f > 1.0) return 0.0;
  return M_PI / (2.0 * elliptic_K(h_f * h_f));
}

namespace {

inline void bloch_rhs(double h, const double* s, double* ds) {
  ds[0] = 4.0 * s[2] * s[1];
  ds[1] = -4.0 * s[2] * s[0] + 2.0 * h * s[2];
  ds[2] = -2.0 * h * s[1];
}

}  // namespace

std::vector<OrbitPoint> classical_orbit(double h, double dt, double t_max) {
  if (!(dt > 0.0) || !(t_max >= 0.0))
    throw std::invalid_argument("classical_orbit: bad time grid");
  const int steps = static_cast<int>(t_max / dt + 0.5);
  std::vector<OrbitPoint> pts(steps + 1);

  double s[3] = {0.0, 0.0, 1.0};
  double k1[3], k2[3], k3[3], k4[3], tmp[3];
  auto record = [&](int i) {
    const double r2 = s[0] * s[0] + s[1] * s[1];
    const double k = (r2 < 1e-24) ? 0.0 : 0.5 * std::atan2(-s[1], s[0]);
    pts[i] = OrbitPoint{i * dt, s[2], k};
  };
  record(0);
  for (int i = 1; i <= steps; ++i) {
    bloch_rhs(h, s, k1);
    for (int c = 0; c < 3; ++c) tmp[c] = s[c] + 0.5 * dt * k1[c];
    bloch_rhs(h, tmp, k2);
    for (int c = 0; c < 3; ++c) tmp[c] = s[c] + 0.5 * dt * k2[c];
    bloch_rhs(h, tmp, k3);
    for (int c = 0; c < 3; ++c) tmp[c] = s[c] + dt * k3[c];
    bloch_rhs(h, tmp, k4);
    for (int c = 0; c < 3; ++c)
      s[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    record(i);
  }
  return pts;
}

}  // namespace ernet
