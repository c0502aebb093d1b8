#include "ernet/network.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ernet/rng.hpp"

namespace ernet {

Network generate(int n, double p, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("network: n must be >= 1");
  if (!(p > 0.0) || p > 1.0)
    throw std::invalid_argument("network: p must lie in (0, 1]");

  Network net;
  net.n_vertices = n;
  net.p = p;
  net.seed = seed;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng::uniform(seed, rng::EdgeStream, static_cast<uint64_t>(i),
                       static_cast<uint64_t>(j)) < p)
        net.edges.emplace_back(i, j);
  return net;
}

KacFactor kac(const Network& net) {
  KacFactor k;
  k.has_edges = !net.edges.empty();
  if (k.has_edges)
    k.value = static_cast<double>(net.edges.size()) / net.n_vertices;
  return k;
}

void serialize(const Network& net, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", net.p);
  out << net.n_vertices << ' ' << buf << ' ' << net.seed << '\n';
  for (auto [i, j] : net.edges) out << i << ' ' << j << '\n';
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("network parse error at line " +
                           std::to_string(line) + ": " + what);
}

}  // namespace

Network deserialize(std::istream& in) {
  Network net;
  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) parse_fail(1, "missing header");
  ++lineno;
  {
    std::istringstream hs(line);
    if (!(hs >> net.n_vertices >> net.p >> net.seed))
      parse_fail(lineno, "expected 'N p seed'");
    std::string extra;
    if (hs >> extra) parse_fail(lineno, "trailing tokens in header");
    if (net.n_vertices < 1) parse_fail(lineno, "N must be >= 1");
    if (!(net.p > 0.0) || net.p > 1.0) parse_fail(lineno, "p out of (0, 1]");
  }

  std::pair<int, int> prev{-1, -1};
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream es(line);
    int i, j;
    if (!(es >> i >> j)) parse_fail(lineno, "expected 'i j'");
    std::string extra;
    if (es >> extra) parse_fail(lineno, "trailing tokens");
    if (i < 0 || j >= net.n_vertices) parse_fail(lineno, "endpoint out of range");
    if (i >= j) parse_fail(lineno, "edges must satisfy i < j");
    std::pair<int, int> cur{i, j};
    if (cur == prev) parse_fail(lineno, "duplicate edge");
    if (cur < prev) parse_fail(lineno, "edges out of order");
    net.edges.push_back(cur);
    prev = cur;
  }
  return net;
}

}  // namespace ernet
