#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "ernet/collective.hpp"
#include "ernet/evolve.hpp"

using namespace ernet;

namespace {

// Adaptive Simpson quadrature, the independent oracle for the elliptic
// integral.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double elliptic_quadrature(double m) {
  auto f = [m](double x) {
    const double s = std::sin(x);
    return 1.0 / std::sqrt(1.0 - m * s * s);
  };
  return simpson(f, 0.0, M_PI_2, f(0.0), f(M_PI_4), f(M_PI_2), 1e-13, 40);
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

}  // namespace

TEST_CASE("ladder matrix elements at n = 2") {
  const CollectiveMatrix cm = build_collective_hamiltonian(2, 0.9);
  REQUIRE(cm.diag.size() == 3);
  CHECK(cm.diag[0] == doctest::Approx(-2.0));  // m = -1
  CHECK(cm.diag[1] == doctest::Approx(+2.0));  // m = 0
  CHECK(cm.diag[2] == doctest::Approx(-2.0));  // m = +1
  CHECK(cm.offdiag[0] == doctest::Approx(-0.9 * std::sqrt(2.0)));
  CHECK(cm.offdiag[1] == doctest::Approx(-0.9 * std::sqrt(2.0)));
  CHECK_THROWS_AS(build_collective_hamiltonian(1, 1.0), std::invalid_argument);
}

TEST_CASE("polarized ladder state has energy -n at h = 0") {
  const CollectiveMatrix cm = build_collective_hamiltonian(9, 0.0);
  CHECK(cm.diag.back() == doctest::Approx(-9.0));
}

TEST_CASE("collective solver reproduces the full solver at p = 1") {
  const int n = 8;
  const Network net = generate(n, 1.0, 5);
  for (double hf : {0.6, 2.0}) {
    const QuenchSpec q{hf, 0.01, 3.0};
    const auto full = quench_trace(net, q, {SolverKind::DenseEig});
    const auto coll = evolve_collective(n, q);
    std::vector<double> th_f, th_c, lg_f, lg_c, re_f, re_c, im_f, im_c;
    for (std::size_t i = 0; i < full.size(); ++i) {
      th_f.push_back(full[i].theta_z);
      th_c.push_back(coll[i].theta_z);
      lg_f.push_back(full[i].log_g2);
      lg_c.push_back(coll[i].log_g2);
      re_f.push_back(full[i].re_g);
      re_c.push_back(coll[i].re_g);
      im_f.push_back(full[i].im_g);
      im_c.push_back(coll[i].im_g);
    }
    CHECK(sup_diff(th_f, th_c) < 1e-10);
    CHECK(sup_diff(lg_f, lg_c) < 1e-9);
    // phases agree too: the restriction keeps the full convention
    CHECK(sup_diff(re_f, re_c) < 1e-10);
    CHECK(sup_diff(im_f, im_c) < 1e-10);
  }
}

TEST_CASE("elliptic integral against quadrature") {
  CHECK(std::abs(elliptic_K(0.0) - M_PI_2) < 1e-14);
  for (double m = 0.1; m < 0.95; m += 0.1)
    CHECK(std::abs(elliptic_K(m) - elliptic_quadrature(m)) < 1e-10);
  // handbook value for m = 1/2
  CHECK(elliptic_K(0.5) == doctest::Approx(1.8540746773013719).epsilon(1e-14));
  CHECK_THROWS_AS(elliptic_K(1.0), std::invalid_argument);
  CHECK_THROWS_AS(elliptic_K(-0.1), std::invalid_argument);
}

TEST_CASE("equilibrium order parameter") {
  CHECK(equilibrium_order(0.0) == 1.0);
  CHECK(equilibrium_order(2.0) == 0.0);
  CHECK(equilibrium_order(3.0) == 0.0);
  CHECK(equilibrium_order(1.0) == doctest::Approx(std::sqrt(3.0) / 2.0));
  double prev = 1.0;
  for (double h = 0.1; h <= 2.0; h += 0.1) {
    const double v = equilibrium_order(h);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(equilibrium_order(-0.5), std::invalid_argument);
}

TEST_CASE("classical period against the integrated orbit") {
  const double h = 0.6;
  const double T = classical_period(h);
  CHECK(T == doctest::Approx(elliptic_K(h * h)).epsilon(1e-15));

  // measure the first return to the pole from the orbit itself
  const double dt = 1e-4;
  const auto orbit = classical_orbit(h, dt, 2.5);
  double t_max = 0.0;
  for (std::size_t i = 1; i + 1 < orbit.size(); ++i) {
    if (orbit[i].t < 0.5 * T) continue;
    if (orbit[i].theta_z > orbit[i - 1].theta_z &&
        orbit[i].theta_z >= orbit[i + 1].theta_z) {
      // quadratic refinement around the sampled peak
      const double ym = orbit[i - 1].theta_z, y0 = orbit[i].theta_z,
                   yp = orbit[i + 1].theta_z;
      t_max = orbit[i].t + 0.5 * dt * (ym - yp) / (ym - 2.0 * y0 + yp);
      break;
    }
  }
  REQUIRE(t_max > 0.0);
  CHECK(std::abs(t_max - T) < 1e-6);

  CHECK_THROWS_AS(classical_period(1.0), std::invalid_argument);
  CHECK_THROWS_AS(classical_period(1.5), std::invalid_argument);
  CHECK_THROWS_AS(classical_period(0.0), std::invalid_argument);
}

TEST_CASE("small-field period approaches pi/2") {
  CHECK(classical_period(1e-6) == doctest::Approx(M_PI_2).epsilon(1e-10));
}

TEST_CASE("orbit conserves the sphere, the energy, and the orbit relation") {
  const double h = 0.7;
  const auto orbit = classical_orbit(h, 1e-3, 10.0);
  // k emerges at -pi/4 immediately off the pole
  CHECK(std::abs(orbit[1].k + M_PI_4) < 2e-3);
  const double e0 = -1.0;  // -J z^2 - h x at (0,0,1)
  for (std::size_t i = 0; i < orbit.size(); i += 25) {
    const auto& pt = orbit[i];
    // reconstruct x from the recorded chart: x = r cos 2k, r = sqrt(1-z^2)
    const double r = std::sqrt(std::max(0.0, 1.0 - pt.theta_z * pt.theta_z));
    const double x = r * std::cos(2.0 * pt.k);
    CHECK(std::abs(-pt.theta_z * pt.theta_z - h * x - e0) < 1e-9);
    if (std::abs(pt.theta_z) < 0.999) {
      const double c = std::cos(2.0 * pt.k);
      CHECK(std::abs(pt.theta_z * pt.theta_z - (1.0 - h * h * c * c)) < 1e-8);
    }
  }
}

TEST_CASE("thermodynamic time average") {
  CHECK(time_avg_theta_thermo(0.6) ==
        doctest::Approx(M_PI / (2.0 * elliptic_K(0.36))).epsilon(1e-14));
  CHECK(time_avg_theta_thermo(1.5) == 0.0);
  CHECK(std::isnan(time_avg_theta_thermo(1.0)));
  CHECK_THROWS_AS(time_avg_theta_thermo(0.0), std::invalid_argument);

  // consistency with the orbit itself, averaged over many periods
  const double h = 0.6;
  const double T = classical_period(h);
  const double dt = 1e-3;
  const auto orbit = classical_orbit(h, dt, 100.0 * T);
  double acc = 0.0;
  for (const auto& pt : orbit) acc += pt.theta_z;
  acc /= orbit.size();
  CHECK(std::abs(acc - time_avg_theta_thermo(h)) < 1e-3);
}
