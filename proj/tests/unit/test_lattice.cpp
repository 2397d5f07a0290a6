#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "superburst/error.hpp"
#include "superburst/lattice.hpp"

using namespace superburst;

TEST_CASE("row-major coordinates") {
  CHECK(LatticeSpec::chain(5).coordinates(3) == std::vector<int>{3});
  CHECK(LatticeSpec({3, 3}).coordinates(4) == std::vector<int>{1, 1});
  CHECK(LatticeSpec({2, 2, 2}).coordinates(7) == std::vector<int>{1, 1, 1});
  CHECK_THROWS_AS(LatticeSpec({3, 3}).coordinates(9), Error);
}

TEST_CASE("coordinates and index_of are inverse") {
  LatticeSpec l({3, 4, 2});
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < l.size(); ++i) {
    auto c = l.coordinates(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      CHECK(c[k] >= 0);
      CHECK(c[k] < l.extents()[k]);
    }
    CHECK(l.index_of(c) == i);
    seen.insert(c);
  }
  CHECK(seen.size() == l.size());
}

TEST_CASE("separations") {
  CHECK(LatticeSpec::chain(5).separation(0, 4) == 4.0);
  CHECK(LatticeSpec::ring(5).separation(0, 4) == 1.0);
  LatticeSpec g({3, 3});
  CHECK(g.separation(g.index_of({0, 0}), g.index_of({1, 1})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(LatticeSpec::chain(5, 0.5).separation(0, 4) == 2.0);
  CHECK(g.graph_distance(0, 8) == 4);
}

TEST_CASE("neighbor pair lists") {
  auto p = LatticeSpec::chain(4).neighbor_pairs(1);
  REQUIRE(p.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(p[k].i == k);
    CHECK(p[k].j == k + 1);
    CHECK(p[k].graph_distance == 1);
  }
  CHECK(LatticeSpec::ring(5).neighbor_pairs(2).size() == 5);
  CHECK_THROWS_AS(LatticeSpec::chain(5).neighbor_pairs(2), Error);
  CHECK_THROWS_AS(LatticeSpec::chain(5).neighbor_pairs(3), Error);
}

TEST_CASE("grid edge count matches brute-force enumeration") {
  LatticeSpec g({3, 3});
  std::size_t brute = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) brute += g.graph_distance(i, j) == 1;
  CHECK(brute == 12);
  CHECK(g.neighbor_pairs(1).size() == brute);
}

TEST_CASE("open hypercube pair count D n^(D-1) (n-1)") {
  for (int dim = 1; dim <= 3; ++dim)
    for (int n = 2; n <= 5; ++n) {
      LatticeSpec l(std::vector<int>(static_cast<std::size_t>(dim), n));
      auto expect = static_cast<std::size_t>(dim * std::pow(n, dim - 1) * (n - 1));
      CHECK(l.neighbor_pairs(1).size() == expect);
    }
}

TEST_CASE("hyperrectangle pair count sum_j (n_j - 1) N / n_j") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ext(1, 5), dims(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> e(static_cast<std::size_t>(dims(rng)));
    for (auto& x : e) x = ext(rng);
    LatticeSpec l(e);
    std::size_t expect = 0;
    for (int n : e) expect += static_cast<std::size_t>(n - 1) * l.size() / static_cast<std::size_t>(n);
    CHECK(l.neighbor_pairs(1).size() == expect);
  }
}

TEST_CASE("separation is a metric on open lattices") {
  std::mt19937 rng(11);
  LatticeSpec l({4, 3, 5});
  std::uniform_int_distribution<std::size_t> site(0, l.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = site(rng), b = site(rng), c = site(rng);
    CHECK(l.separation(a, b) == l.separation(b, a));
    CHECK(l.separation(a, c) <= l.separation(a, b) + l.separation(b, c) + 1e-12);
    CHECK((l.separation(a, b) == 0.0) == (a == b));
  }
}

TEST_CASE("ring separation is at most floor(N/2)") {
  for (int n = 3; n <= 16; ++n) {
    auto r = LatticeSpec::ring(n, 0.7);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) {
        CHECK(r.separation(i, j) <= (n / 2) * 0.7 + 1e-12);
        CHECK(r.separation(i, j) == r.separation(j, i));
      }
  }
}

TEST_CASE("invalid lattices are rejected") {
  CHECK_THROWS_AS(LatticeSpec({}), Error);
  CHECK_THROWS_AS(LatticeSpec({0}), Error);
  CHECK_THROWS_AS(LatticeSpec({2}, Boundary::periodic), Error);
  CHECK_THROWS_AS(LatticeSpec({3, 3}, Boundary::periodic), Error);
  CHECK_THROWS_AS(LatticeSpec({3}, Boundary::open, 0.0), Error);
}

TEST_CASE("descriptor parsing and round trip") {
  for (const char* d : {"1:9:periodic", "2:10x10", "3:2x3x4", "1:5:d=0.25"}) {
    auto l = LatticeSpec::parse(d);
    CHECK(LatticeSpec::parse(l.descriptor()) == l);
  }
  CHECK(LatticeSpec::parse("2:3x4").size() == 12);
  CHECK(LatticeSpec::parse("1:7:periodic").periodic());
  for (const char* bad : {"", "2:3", "1:x", "1:3:wrap", "a:3", "1:0", "1:2:periodic"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(LatticeSpec::parse(bad), Error);
  }
}
