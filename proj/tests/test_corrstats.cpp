#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ernet/corrstats.hpp"
#include "ernet/evolve.hpp"

using namespace ernet;

namespace {

StateVector ghz_state(int n) {
  StateVector psi(std::size_t(1) << n, Amp{0.0, 0.0});
  psi.front() = Amp{M_SQRT1_2, 0.0};
  psi.back() = Amp{M_SQRT1_2, 0.0};
  return psi;
}

StateVector product_state(int n, double c) {
  // per site: c |up> + s |down>
  const double s = std::sqrt(1.0 - c * c);
  StateVector psi(std::size_t(1) << n);
  for (std::size_t b = 0; b < psi.size(); ++b) {
    double amp = 1.0;
    for (int i = 0; i < n; ++i) amp *= ((b >> i) & 1u) ? c : s;
    psi[b] = Amp{amp, 0.0};
  }
  return psi;
}

}  // namespace

TEST_CASE("GHZ pairs: unit central moments, half-weight products") {
  const int n = 4;
  const Network net = generate(n, 0.5, 3);
  const auto samples = collect_pair_moments(net, ghz_state(n), 0.0, 0);
  REQUIRE(samples.size() == 6);
  for (const auto& s : samples) {
    CHECK(s.delta == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.log_prod == doctest::Approx(2.0 * std::log(0.5)).epsilon(1e-13));
    CHECK_FALSE(s.degenerate);
  }
}

TEST_CASE("product states carry no pair correlations") {
  const int n = 6;
  const Network net = generate(n, 0.7, 9);
  const auto samples = collect_pair_moments(net, product_state(n, 0.8), 0.0, 0);
  for (const auto& s : samples) CHECK(std::abs(s.delta) < 1e-14);
}

TEST_CASE("edge configuration labels match the network") {
  const Network net = generate(7, 0.5, 21);
  std::vector<std::vector<bool>> adj(7, std::vector<bool>(7, false));
  for (auto [i, j] : net.edges) adj[i][j] = adj[j][i] = true;
  const auto samples =
      collect_pair_moments(net, product_state(7, 0.6), 0.0, 0);
  for (const auto& s : samples)
    CHECK(s.edge_config == (adj[s.sites[0]][s.sites[1]] ? 1 : 0));
}

TEST_CASE("degenerate complement products are flagged and kept") {
  // site 0 pinned down: a_0 = 0, so every pair excluding site 0 is
  // degenerate
  const int n = 4;
  StateVector psi(1 << n, Amp{0.0, 0.0});
  // (|110> + |100>)/sqrt2 on sites 1..3, site 0 down
  psi[0b0110] = Amp{M_SQRT1_2, 0.0};
  psi[0b0100] = Amp{M_SQRT1_2, 0.0};
  const Network net = generate(n, 1.0, 1);
  const auto samples = collect_pair_moments(net, psi, 0.0, 0);
  int degen = 0;
  for (const auto& s : samples) {
    const bool has_site0 =
        s.sites[0] == 0 || s.sites[1] == 0;
    if (!has_site0) {
      CHECK(s.degenerate);
      CHECK(std::isinf(s.log_prod));
      ++degen;
    }
  }
  CHECK(degen == 3);

  const auto stats = resolve_statistics(samples);
  REQUIRE(!stats.empty());
  CHECK(stats[0].config == -1);
  CHECK(stats[0].degenerate_count == 3);
  CHECK(std::isfinite(stats[0].cov_delta_logprod));
  CHECK(std::isfinite(stats[0].cov_delta_expprod));
}

TEST_CASE("moment expansion closes exactly on evolved states") {
  const int n = 6;
  const Network net = generate(n, 0.5, 17);
  const QuenchSpec q{0.8, 0.01, 1.5};
  StateVector snapshot;
  evolve(net, q, {}, [&](int step, double, const StateVector& psi) {
    if (step == q.n_steps()) snapshot = psi;
  });
  const ExpansionCheck chk = moment_expansion_check(snapshot, n);
  CHECK(chk.abs_err < 1e-10);
  CHECK(chk.lhs == doctest::Approx(chk.rhs).epsilon(1e-9));

  CHECK_THROWS_AS(moment_expansion_check(StateVector(1 << 13), 13),
                  std::invalid_argument);
}

TEST_CASE("moment expansion on the GHZ state") {
  const ExpansionCheck chk = moment_expansion_check(ghz_state(5), 5);
  CHECK(chk.lhs == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(chk.abs_err < 1e-12);
}

TEST_CASE("subset draws are reproducible and well-formed") {
  const Network net = generate(10, 0.5, 5);
  const StateVector psi = product_state(10, 0.7);
  const auto a = collect_subset_moments(net, psi, 0.0, 0, 3, 40, 77);
  const auto b = collect_subset_moments(net, psi, 0.0, 0, 3, 40, 77);
  REQUIRE(a.size() == 40);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].sites == b[k].sites);
    REQUIRE(a[k].sites.size() == 3);
    CHECK(a[k].sites[0] < a[k].sites[1]);
    CHECK(a[k].sites[1] < a[k].sites[2]);
    CHECK(a[k].edge_config >= 0);
    CHECK(a[k].edge_config <= 3);
  }
  const auto c = collect_subset_moments(net, psi, 0.0, 0, 3, 40, 78);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].sites != c[k].sites) differs = true;
  CHECK(differs);
}

TEST_CASE("covariance estimators on synthetic joint-normal samples") {
  // X = delta, Y = log_prod drawn bivariate normal; for that law
  // Cov(X, e^Y) = Cov(X, Y) E[e^Y] holds exactly
  std::mt19937 gen(11);
  std::normal_distribution<double> nd;
  const double rho = 0.6, sx = 0.05, sy = 0.3, mx = 0.02, my = -1.0;
  std::vector<MomentSample> slice;
  const int m = 20000;
  for (int k = 0; k < m; ++k) {
    const double u = nd(gen), v = nd(gen);
    MomentSample s;
    s.delta = mx + sx * u;
    s.log_prod = my + sy * (rho * u + std::sqrt(1 - rho * rho) * v);
    s.edge_config = k % 2;
    slice.push_back(s);
  }
  const auto stats = resolve_statistics(slice);
  const ConfigStats& pooled = stats[0];
  REQUIRE(pooled.config == -1);
  CHECK(pooled.count == std::size_t(m));
  CHECK(pooled.enough);
  const double true_cov = rho * sx * sy;
  CHECK(pooled.cov_delta_logprod == doctest::Approx(true_cov).epsilon(0.05));
  CHECK(pooled.mu_delta == doctest::Approx(mx).epsilon(0.05));
  CHECK(pooled.var_delta == doctest::Approx(sx * sx).epsilon(0.05));
  // closed form against the direct exp-side estimator
  CHECK(pooled.cov_delta_expprod ==
        doctest::Approx(pooled.cov_lognormal_closed).epsilon(0.1));
  // normality diagnostics near zero
  CHECK(std::abs(pooled.skew_delta) < 0.1);
  CHECK(std::abs(pooled.exkurt_delta) < 0.2);
  // per-config rows split the sample set in half
  REQUIRE(stats.size() == 3);
  CHECK(stats[1].p_config == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(stats[2].p_config == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("scaled coefficient and its sentinels") {
  CHECK(binomial_coeff(4, 2) == doctest::Approx(6.0));
  CHECK(binomial_coeff(10, 3) == doctest::Approx(120.0));
  CHECK(binomial_coeff(3, 5) == 0.0);

  CHECK(delta_m(4, 2, 0.01, 0.0) == doctest::Approx(0.06).epsilon(1e-14));
  CHECK(delta_m_half(4, 2, 0.01, 0.0) == doctest::Approx(0.24).epsilon(1e-14));
  CHECK(std::isinf(delta_m(4, 2, 0.01, -1.0)));
  CHECK(delta_m(4, 2, -0.01, -1.0) < 0.0);  // sign rides the covariance
  CHECK(delta_m(4, 2, 0.0, -1.0) == 0.0);
}

TEST_CASE("return-probability ratio is exactly 1 for a uniform product") {
  const int n = 8;
  const double c = 0.77;
  // one realization: |G|^2 = c^2n, theta = 2c^2 - 1
  const std::vector<double> lg = {2.0 * n * std::log(c)};
  const std::vector<double> th = {2.0 * c * c - 1.0};
  CHECK(gbar_over_theta(lg, th, n) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ratio guards") {
  CHECK_THROWS_AS(gbar_over_theta({}, {}, 4), std::invalid_argument);
  const std::vector<double> lg = {-1.0};
  const std::vector<double> th = {-1.0};  // denominator hits zero
  CHECK(std::isinf(gbar_over_theta(lg, th, 4)));
}
