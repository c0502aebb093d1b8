#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ernet/network.hpp"
#include "ernet/rng.hpp"

using namespace ernet;

TEST_CASE("generation is a pure function of (n, p, seed)") {
  const Network a = generate(40, 0.5, 1234);
  const Network b = generate(40, 0.5, 1234);
  CHECK(a.edges == b.edges);
  const Network c = generate(40, 0.5, 1235);
  CHECK(a.edges != c.edges);
}

TEST_CASE("edges are sorted pairs with i < j in range") {
  const Network net = generate(30, 0.4, 99);
  std::pair<int, int> prev{-1, -1};
  for (auto e : net.edges) {
    CHECK(e.first < e.second);
    CHECK(e.first >= 0);
    CHECK(e.second < net.n_vertices);
    CHECK(prev < e);
    prev = e;
  }
}

TEST_CASE("p = 1 gives the complete graph") {
  const Network net = generate(12, 1.0, 7);
  CHECK(net.n_edges() == 12 * 11 / 2);
}

TEST_CASE("edge count sits inside a generous binomial window") {
  // n = 60, p = 0.3: mean 531, sigma ~19.3; a 5-sigma miss fails
  const int n = 60;
  const double p = 0.3;
  const double pairs = n * (n - 1) / 2.0;
  const double mean = pairs * p;
  const double sigma = std::sqrt(pairs * p * (1 - p));
  const Network net = generate(n, p, 4242);
  CHECK(std::abs(net.n_edges() - mean) < 5.0 * sigma);
}

TEST_CASE("per-pair marginal frequency across seeds approaches p") {
  const double p = 0.3;
  const int trials = 2000;
  int hits = 0;
  for (int s = 0; s < trials; ++s) {
    const Network net = generate(2, p, s);
    hits += net.n_edges();
  }
  const double freq = static_cast<double>(hits) / trials;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  CHECK(std::abs(freq - p) < 5.0 * sigma);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(generate(0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate(10, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate(10, -0.2, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate(10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("kac factor is |E|/N, with an explicit empty-graph flag") {
  const Network full = generate(10, 1.0, 3);
  const KacFactor kf = kac(full);
  CHECK(kf.has_edges);
  CHECK(kf.value == doctest::Approx(4.5).epsilon(1e-15));

  // a single vertex has no pairs at all
  const Network lone = generate(1, 0.5, 11);
  const KacFactor k0 = kac(lone);
  CHECK_FALSE(k0.has_edges);
  CHECK(k0.value == 0.0);
}

TEST_CASE("serialize/deserialize round-trips every field") {
  const Network net = generate(25, 1.0 / 3.0, 987654321012345ULL);
  std::stringstream ss;
  serialize(net, ss);
  const Network back = deserialize(ss);
  CHECK(back.n_vertices == net.n_vertices);
  CHECK(back.p == net.p);  // bit-exact through %.17g
  CHECK(back.seed == net.seed);
  CHECK(back.edges == net.edges);
}

TEST_CASE("parse errors carry the offending line number") {
  auto expect_fail = [](const std::string& text, const std::string& needle) {
    std::stringstream ss(text);
    try {
      deserialize(ss);
      FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_fail("", "line 1");
  expect_fail("4 0.5\n", "line 1");                    // truncated header
  expect_fail("4 0.5 1\n0 9\n", "line 2");             // endpoint out of range
  expect_fail("4 0.5 1\n2 1\n", "line 2");             // i >= j
  expect_fail("4 0.5 1\n0 1\n0 1\n", "line 3");        // duplicate
  expect_fail("4 0.5 1\n1 2\n0 3\n", "line 3");        // out of order
  expect_fail("4 0.5 1\n0 1 junk\n", "line 2");        // trailing tokens
  expect_fail("4 1.5 1\n", "line 1");                  // p out of domain
}

TEST_CASE("counter draws do not collide across streams") {
  // same key words, different stream tags -> independent values
  const double a = rng::uniform(5, rng::EdgeStream, 1, 2);
  const double b = rng::uniform(5, rng::DtwaStream, 1, 2);
  CHECK(a != b);
}
