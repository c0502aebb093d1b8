#include "ernet/corrstats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ernet/observables.hpp"
#include "ernet/rng.hpp"

namespace ernet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<bool> adjacency_lookup(const Network& net) {
  const int n = net.n_vertices;
  std::vector<bool> adj(std::size_t(n) * n, false);
  for (auto [i, j] : net.edges) {
    adj[std::size_t(i) * n + j] = true;
    adj[std::size_t(j) * n + i] = true;
  }
  return adj;
}

int count_internal_edges(const std::vector<bool>& adj, int n,
                         const std::vector<int>& sites) {
  int c = 0;
  for (std::size_t a = 0; a < sites.size(); ++a)
    for (std::size_t b = a + 1; b < sites.size(); ++b)
      if (adj[std::size_t(sites[a]) * n + sites[b]]) ++c;
  return c;
}

// log prod over complement, flagging nonpositive factors
void complement_log_prod(const std::vector<double>& a, const std::vector<int>& sites,
                         double& log_prod, bool& degenerate) {
  log_prod = 0.0;
  degenerate = false;
  std::size_t next = 0;
  for (int l = 0; l < static_cast<int>(a.size()); ++l) {
    if (next < sites.size() && sites[next] == l) {
      ++next;
      continue;
    }
    if (a[l] <= 0.0) {
      degenerate = true;
      log_prod = kNegInf;
    } else if (!degenerate) {
      log_prod += std::log(a[l]);
    }
  }
}

// central moment of the subset, one sweep over the basis
double central_moment(const StateVector& psi, const std::vector<int>& sites,
                      const std::vector<double>& site_z) {
  double acc = 0.0;
  for (std::size_t b = 0; b < psi.size(); ++b) {
    const double w = std::norm(psi[b]);
    if (w == 0.0) continue;
    double prod = 1.0;
    for (int s : sites) {
      const double sz = ((b >> s) & 1u) ? 1.0 : -1.0;
      prod *= sz - site_z[s];
    }
    acc += w * prod;
  }
  return acc;
}

}  // namespace

std::vector<MomentSample> collect_pair_moments(const Network& net,
                                               const StateVector& psi,
                                               double t, int realization) {
  const int n = net.n_vertices;
  const ThetaMoments m = theta_moments(psi, n);
  std::vector<double> a(n);
  for (int l = 0; l < n; ++l) a[l] = 0.5 * (m.site_z[l] + 1.0);
  const std::vector<bool> adj = adjacency_lookup(net);

  std::vector<MomentSample> out;
  out.reserve(std::size_t(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MomentSample s;
      s.realization = realization;
      s.t = t;
      s.sites = {i, j};
      s.edge_config = adj[std::size_t(i) * n + j] ? 1 : 0;
      s.delta = pair_zz(psi, i, j) - m.site_z[i] * m.site_z[j];
      complement_log_prod(a, s.sites, s.log_prod, s.degenerate);
      out.push_back(std::move(s));
    }
  return out;
}

std::vector<MomentSample> collect_subset_moments(const Network& net,
                                                 const StateVector& psi,
                                                 double t, int realization,
                                                 int m, int n_draws,
                                                 uint64_t subsample_seed) {
  const int n = net.n_vertices;
  if (m < 2 || m > n)
    throw std::invalid_argument("collect_subset_moments: bad subset size");
  const ThetaMoments mom = theta_moments(psi, n);
  std::vector<double> a(n);
  for (int l = 0; l < n; ++l) a[l] = 0.5 * (mom.site_z[l] + 1.0);
  const std::vector<bool> adj = adjacency_lookup(net);

  std::vector<MomentSample> out;
  out.reserve(n_draws);
  for (int d = 0; d < n_draws; ++d) {
    std::vector<int> sites;
    uint64_t attempt = 0;
    while (static_cast<int>(sites.size()) < m) {
      const int cand = static_cast<int>(
          rng::uniform(subsample_seed, rng::SubsampleStream, d, attempt++) * n);
      if (std::find(sites.begin(), sites.end(), cand) == sites.end())
        sites.push_back(cand);
    }
    std::sort(sites.begin(), sites.end());
    MomentSample s;
    s.realization = realization;
    s.t = t;
    s.sites = sites;
    s.edge_config = count_internal_edges(adj, n, sites);
    s.delta = central_moment(psi, sites, mom.site_z);
    complement_log_prod(a, sites, s.log_prod, s.degenerate);
    out.push_back(std::move(s));
  }
  return out;
}

ExpansionCheck moment_expansion_check(const StateVector& psi, int n) {
  if (n > 12)
    throw std::invalid_argument(
        "moment_expansion_check: subset enumeration guarded to n <= 12");
  const ThetaMoments m = theta_moments(psi, n);
  std::vector<double> a(n);
  for (int l = 0; l < n; ++l) a[l] = 0.5 * (m.site_z[l] + 1.0);

  const std::size_t dim = psi.size();
  std::vector<double> w(dim);
  for (std::size_t b = 0; b < dim; ++b) w[b] = std::norm(psi[b]);

  double rhs = 0.0;
  const std::size_t n_subsets = std::size_t{1} << n;
  for (std::size_t sub = 0; sub < n_subsets; ++sub) {
    double outside = 1.0;
    for (int l = 0; l < n; ++l)
      if (!((sub >> l) & 1u)) outside *= a[l];
    if (outside == 0.0 && sub != n_subsets - 1) continue;
    double delta = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      if (w[b] == 0.0) continue;
      double prod = 1.0;
      for (int l = 0; l < n; ++l)
        if ((sub >> l) & 1u) {
          const double sz = ((b >> l) & 1u) ? 1.0 : -1.0;
          prod *= sz - m.site_z[l];
        }
      delta += w[b] * prod;
    }
    rhs += outside * std::ldexp(delta, -std::popcount(sub));
  }

  ExpansionCheck chk;
  chk.lhs = std::norm(psi.back());
  chk.rhs = rhs;
  chk.abs_err = std::abs(chk.lhs - chk.rhs);
  return chk;
}

namespace {

ConfigStats stats_of(int config, const std::vector<const MomentSample*>& xs,
                     std::size_t total) {
  ConfigStats st;
  st.config = config;
  st.count = xs.size();
  st.p_config = total ? static_cast<double>(xs.size()) / total : 0.0;
  st.enough = xs.size() >= 30;

  const double m = static_cast<double>(xs.size());
  if (xs.empty()) return st;

  double mu_d = 0.0;
  for (auto* s : xs) mu_d += s->delta;
  mu_d /= m;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (auto* s : xs) {
    const double d = s->delta - mu_d;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= m;
  m3 /= m;
  m4 /= m;
  st.mu_delta = mu_d;
  st.var_delta = (xs.size() > 1) ? m2 * m / (m - 1.0) : 0.0;
  st.skew_delta = (m2 > 0.0) ? m3 / std::pow(m2, 1.5) : 0.0;
  st.exkurt_delta = (m2 > 0.0) ? m4 / (m2 * m2) - 3.0 : 0.0;

  // log-side statistics over non-degenerate samples
  std::vector<const MomentSample*> good;
  for (auto* s : xs) {
    if (s->degenerate)
      ++st.degenerate_count;
    else
      good.push_back(s);
  }
  if (good.size() > 1) {
    const double gm = static_cast<double>(good.size());
    double mu_l = 0.0, mu_dg = 0.0;
    for (auto* s : good) {
      mu_l += s->log_prod;
      mu_dg += s->delta;
    }
    mu_l /= gm;
    mu_dg /= gm;
    double cov = 0.0;
    for (auto* s : good)
      cov += (s->delta - mu_dg) * (s->log_prod - mu_l);
    cov /= gm - 1.0;
    st.mu_log_prod = mu_l;
    st.cov_delta_logprod = cov;

    double mu_e = 0.0;
    for (auto* s : good) mu_e += std::exp(s->log_prod);
    mu_e /= gm;
    st.cov_lognormal_closed = cov * mu_e;
  }
  // exp-side covariance over all samples, degenerate weights are zero
  if (xs.size() > 1) {
    double mu_e = 0.0;
    for (auto* s : xs) mu_e += s->degenerate ? 0.0 : std::exp(s->log_prod);
    mu_e /= m;
    double cov_e = 0.0;
    for (auto* s : xs) {
      const double e = s->degenerate ? 0.0 : std::exp(s->log_prod);
      cov_e += (s->delta - mu_d) * (e - mu_e);
    }
    st.cov_delta_expprod = cov_e / (m - 1.0);
  }
  return st;
}

}  // namespace

std::vector<ConfigStats> resolve_statistics(
    const std::vector<MomentSample>& slice) {
  std::map<int, std::vector<const MomentSample*>> by_config;
  std::vector<const MomentSample*> all;
  all.reserve(slice.size());
  for (const auto& s : slice) {
    by_config[s.edge_config].push_back(&s);
    all.push_back(&s);
  }
  std::vector<ConfigStats> out;
  out.push_back(stats_of(-1, all, slice.size()));
  for (auto& [cfg, xs] : by_config)
    out.push_back(stats_of(cfg, xs, slice.size()));
  return out;
}

double binomial_coeff(int n, int m) {
  if (m < 0 || m > n) return 0.0;
  double c = 1.0;
  for (int k = 1; k <= m; ++k) c = c * (n - m + k) / k;
  return c;
}

double delta_m(int n, int m, double sigma_0m, double mean_theta) {
  const double denom = 1.0 + mean_theta;
  if (denom <= 0.0) {
    if (sigma_0m == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), sigma_0m);
  }
  return binomial_coeff(n, m) * sigma_0m / std::pow(denom, m);
}

double delta_m_half(int n, int m, double sigma_0m, double mean_theta) {
  return delta_m(n, m, sigma_0m, mean_theta) * std::ldexp(1.0, m);
}

double gbar_over_theta(const std::vector<double>& log_g2,
                       const std::vector<double>& theta, int n) {
  if (log_g2.empty() || log_g2.size() != theta.size())
    throw std::invalid_argument("gbar_over_theta: bad inputs");
  const double m = static_cast<double>(log_g2.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : log_g2) mx = std::max(mx, v);
  double log_num;  // (1/n) log mean |G|^2
  if (std::isinf(mx) && mx < 0) {
    log_num = -std::numeric_limits<double>::infinity();
  } else {
    double acc = 0.0;
    for (double v : log_g2) acc += std::exp(v - mx);
    log_num = (mx + std::log(acc / m)) / n;
  }
  double den = 0.0;
  for (double th : theta) den += 0.5 * (th + 1.0);
  den /= m;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return std::exp(log_num - std::log(den));
}

}  // namespace ernet
