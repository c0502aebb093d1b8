#include "ernet/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ernet/blas.hpp"

namespace ernet {

namespace {

constexpr int kMaxDenseSites = 13;
constexpr int kTimeBlock = 64;

void evolve_dense(const Network& net, const QuenchSpec& q,
                  const StateSink& sink) {
  const int n = net.n_vertices;
  const int dim = 1 << n;
  SpinHamiltonian ham(net, q.h_f);

  std::vector<double> v = ham.dense();
  std::vector<double> eval(dim);
  {
    int lwork = 1 + 6 * dim + 2 * dim * dim;
    int liwork = 3 + 5 * dim;
    std::vector<double> work(lwork);
    std::vector<int> iwork(liwork);
    int info = 0;
    dsyevd_("V", "L", &dim, v.data(), &dim, eval.data(), work.data(), &lwork,
            iwork.data(), &liwork, &info);
    if (info != 0) throw std::runtime_error("dsyevd failed");
  }

  // weights of the initial basis state in the eigenbasis
  std::vector<double> w(dim);
  const int up = dim - 1;
  for (int e = 0; e < dim; ++e) w[e] = v[std::size_t(e) * dim + up];

  const int n_pts = q.n_points();
  std::vector<double> c_re(std::size_t(dim) * kTimeBlock);
  std::vector<double> c_im(std::size_t(dim) * kTimeBlock);
  std::vector<double> p_re(std::size_t(dim) * kTimeBlock);
  std::vector<double> p_im(std::size_t(dim) * kTimeBlock);
  StateVector psi(dim);

  for (int k0 = 0; k0 < n_pts; k0 += kTimeBlock) {
    const int nb = std::min(kTimeBlock, n_pts - k0);
    for (int k = 0; k < nb; ++k) {
      const double t = (k0 + k) * q.dt;
      for (int e = 0; e < dim; ++e) {
        const double ph = eval[e] * t;
        c_re[std::size_t(k) * dim + e] = w[e] * std::cos(ph);
        c_im[std::size_t(k) * dim + e] = -w[e] * std::sin(ph);
      }
    }
    const double one = 1.0, zero = 0.0;
    dgemm_("N", "N", &dim, &nb, &dim, &one, v.data(), &dim, c_re.data(), &dim,
           &zero, p_re.data(), &dim);
    dgemm_("N", "N", &dim, &nb, &dim, &one, v.data(), &dim, c_im.data(), &dim,
           &zero, p_im.data(), &dim);
    for (int k = 0; k < nb; ++k) {
      for (int b = 0; b < dim; ++b)
        psi[b] = Amp{p_re[std::size_t(k) * dim + b],
                     p_im[std::size_t(k) * dim + b]};
      sink(k0 + k, (k0 + k) * q.dt, psi);
    }
  }
}

// One adaptive Lanczos step: overwrite psi with exp(-i dt H) psi.
class KrylovStepper {
 public:
  KrylovStepper(const SpinHamiltonian& ham, double dt, double tol, int max_dim)
      : ham_(ham), dt_(dt), tol_(tol), max_dim_(max_dim),
        dim_(ham.dim()), basis_((max_dim + 1) * ham.dim()),
        alpha_(max_dim), beta_(max_dim + 1), w_(ham.dim()) {}

  void step(StateVector& psi) {
    Amp* v0 = basis_.data();
    std::copy(psi.begin(), psi.end(), v0);

    int m = 0;
    std::vector<Amp> coeff;
    bool invariant = false;
    while (m < max_dim_) {
      Amp* vm = basis_.data() + std::size_t(m) * dim_;
      ham_.apply(vm, w_.data());
      if (m > 0) {
        const Amp* vp = vm - dim_;
        const double b = beta_[m];
        for (std::size_t i = 0; i < dim_; ++i) w_[i] -= b * vp[i];
      }
      double a = 0.0;
      for (std::size_t i = 0; i < dim_; ++i)
        a += std::real(std::conj(vm[i]) * w_[i]);
      alpha_[m] = a;
      for (std::size_t i = 0; i < dim_; ++i) w_[i] -= a * vm[i];
      // full reorthogonalization, one pass
      for (int k = 0; k <= m; ++k) {
        const Amp* vk = basis_.data() + std::size_t(k) * dim_;
        Amp d{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) d += std::conj(vk[i]) * w_[i];
        for (std::size_t i = 0; i < dim_; ++i) w_[i] -= d * vk[i];
      }
      double nb = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) nb += std::norm(w_[i]);
      nb = std::sqrt(nb);
      beta_[m + 1] = nb;
      ++m;

      if (nb < 1e-13) {  // invariant subspace: propagation is exact in it
        invariant = true;
        propagate_coeffs(m, coeff);
        break;
      }
      propagate_coeffs(m, coeff);
      const double err = nb * std::abs(coeff[m - 1]) * dt_;
      if (err < tol_) break;

      Amp* vn = basis_.data() + std::size_t(m) * dim_;
      const double inv = 1.0 / nb;
      for (std::size_t i = 0; i < dim_; ++i) vn[i] = w_[i] * inv;
    }
    (void)invariant;

    std::fill(psi.begin(), psi.end(), Amp{0.0, 0.0});
    for (int j = 0; j < m; ++j) {
      const Amp* vj = basis_.data() + std::size_t(j) * dim_;
      const Amp c = coeff[j];
      for (std::size_t i = 0; i < dim_; ++i) psi[i] += c * vj[i];
    }
  }

 private:
  // coeff = exp(-i dt T_m) e1 in the Lanczos basis
  void propagate_coeffs(int m, std::vector<Amp>& coeff) {
    std::vector<double> d(alpha_.begin(), alpha_.begin() + m);
    std::vector<double> e(m > 1 ? m - 1 : 1);
    for (int j = 0; j + 1 < m; ++j) e[j] = beta_[j + 1];
    std::vector<double> z(std::size_t(m) * m);
    std::vector<double> work(m > 1 ? 2 * m - 2 : 1);
    int info = 0;
    dstev_("V", &m, d.data(), e.data(), z.data(), &m, work.data(), &info);
    if (info != 0) throw std::runtime_error("dstev failed in Krylov step");
    coeff.assign(m, Amp{0.0, 0.0});
    for (int l = 0; l < m; ++l) {
      const double ph = d[l] * dt_;
      const Amp f = Amp{std::cos(ph), -std::sin(ph)} * z[std::size_t(l) * m];
      for (int j = 0; j < m; ++j) coeff[j] += z[std::size_t(l) * m + j] * f;
    }
  }

  const SpinHamiltonian& ham_;
  double dt_, tol_;
  int max_dim_;
  std::size_t dim_;
  std::vector<Amp> basis_;
  std::vector<double> alpha_, beta_;
  std::vector<Amp> w_;
};

void evolve_krylov(const Network& net, const QuenchSpec& q,
                   const EvolveOptions& opt, const StateSink& sink) {
  SpinHamiltonian ham(net, q.h_f);
  StateVector psi = all_up_state(net.n_vertices);
  KrylovStepper stepper(ham, q.dt, opt.krylov_tol, opt.krylov_max_dim);
  sink(0, 0.0, psi);
  const int steps = q.n_steps();
  for (int s = 1; s <= steps; ++s) {
    stepper.step(psi);
    sink(s, s * q.dt, psi);
  }
}

}  // namespace

void evolve(const Network& net, const QuenchSpec& q, const EvolveOptions& opt,
            const StateSink& sink) {
  q.validate();
  const int n = net.n_vertices;
  if (n < 1 || n > SpinHamiltonian::kMaxSites)
    throw std::invalid_argument("evolve: n out of supported range");

  SolverKind kind = opt.kind;
  if (kind == SolverKind::Auto)
    kind = (n <= 10) ? SolverKind::DenseEig : SolverKind::Krylov;
  if (kind == SolverKind::DenseEig && n > kMaxDenseSites)
    throw std::invalid_argument(
        "evolve: dense path supports n <= 13; use the Krylov solver");

  if (kind == SolverKind::DenseEig)
    evolve_dense(net, q, sink);
  else
    evolve_krylov(net, q, opt, sink);
}

std::vector<TraceRow> quench_trace(const Network& net, const QuenchSpec& q,
                                   const EvolveOptions& opt) {
  q.validate();
  std::vector<TraceRow> rows(q.n_points());
  const int n = net.n_vertices;
  evolve(net, q, opt, [&](int step, double t, const StateVector& psi) {
    const ThetaMoments m = theta_moments(psi, n);
    const Amp g = psi.back();  // overlap with the polarized initial state
    rows[step] = TraceRow{t, m.theta_z, m.theta_z_sq, log_loschmidt2(g),
                          g.real(), g.imag()};
  });
  return rows;
}

}  // namespace ernet
