#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "oracles.hpp"
#include "superburst/correlations.hpp"
#include "superburst/error.hpp"

using namespace superburst;

namespace {

SpectralSummary summary(const InteractionModel& m, const LatticeSpec& l) { return analyze(build_decoherence(m, l)); }

double oracle_g2(const Eigen::MatrixXcd& g) {
  const double n = static_cast<double>(g.rows());
  return 1.0 - 2.0 / n + oracle::naive_trace2(g) / (n * n);
}

double bisect_gamma_s(const InteractionModel& m, const LatticeSpec& l) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (oracle_g2(build_decoherence(with_coupling(m, mid), l).entries()) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("g2 examples") {
  CHECK(g2_zero(summary(AllToAll{1.0}, LatticeSpec::chain(4))) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(g2_zero(summary(NearestNeighbor{0.0}, LatticeSpec::chain(10))) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(g2_zero(summary(NearestNeighbor{0.4}, LatticeSpec::chain(5))) == doctest::Approx(0.8512).epsilon(1e-14));
}

TEST_CASE("g2 and g3 agree with jump-operator moments of the fully excited state") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 6; ++t) {
    std::vector<DecoherenceMatrix> mats{
        build_decoherence(Exponential{u(rng)}, LatticeSpec::chain(5)),
        build_decoherence(NearestNeighbor{0.5 * u(rng)}, LatticeSpec({2, 3})),
        build_decoherence(ChiralInfiniteRange{3 * u(rng), 2 * u(rng) - 1}, LatticeSpec::chain(4)),
        build_decoherence(AllToAll{u(rng)}, LatticeSpec::chain(5)),
    };
    for (const auto& g : mats) {
      auto s = analyze(g);
      CHECK(g2_zero(s) == doctest::Approx(oracle::excited_gk(g.entries(), 2)).epsilon(1e-12));
      CHECK(g3_zero(s) == doctest::Approx(oracle::excited_gk(g.entries(), 3)).epsilon(1e-12));
    }
  }
}

TEST_CASE("g3 examples") {
  // Independent emitters: (N-1)(N-2)/N^2.
  CHECK(g3_zero(summary(NearestNeighbor{0.0}, LatticeSpec::chain(10))) == doctest::Approx(0.72).epsilon(1e-14));
  auto g = build_decoherence(AllToAll{1.0 / 3.0}, LatticeSpec::chain(10));
  CHECK(g3_zero(analyze(g)) == doctest::Approx(g3_zero(10, oracle::naive_trace2(g.entries()), oracle::naive_trace3(g.entries())))
                                  .epsilon(1e-13));
  const double n = 3;
  double t2 = n + n * (n - 1), t3 = n * (1 + 3 * (n - 1) + (n - 1) * (n - 2));
  auto d = analyze(build_decoherence(AllToAll{1.0}, LatticeSpec::chain(3)));
  CHECK(d.trace_gamma2 == doctest::Approx(t2).epsilon(1e-14));
  CHECK(d.trace_gamma3 == doctest::Approx(t3).epsilon(1e-14));
  CHECK(g3_zero(d) == doctest::Approx(oracle::excited_gk(build_decoherence(AllToAll{1.0}, LatticeSpec::chain(3)).entries(), 3))
                          .epsilon(1e-13));
  CHECK(!correlate(summary(NearestNeighbor{0.0}, LatticeSpec::chain(2))).g3);
}

TEST_CASE("rddot0 examples") {
  CHECK(rddot0(summary(NearestNeighbor{0.0}, LatticeSpec::chain(7))) == doctest::Approx(7.0).epsilon(1e-14));
  {
    const double gm = 1.0 / std::sqrt(19.0);
    auto r = correlate(summary(AllToAll{gm}, LatticeSpec::chain(20)));
    CHECK(std::abs(r.rdot0) < 1e-10);
    CHECK(r.rddot0 > 0.0);
  }
  {
    auto r = correlate(summary(AllToAll{1.0 / 3.0}, LatticeSpec::chain(10)));
    CHECK(std::abs(r.rdot0) < 1e-10);
    CHECK(r.rddot0 < 0.0);
  }
}

TEST_CASE("initial derivatives match the dense Liouvillian") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 5; ++t) {
    std::vector<DecoherenceMatrix> mats{
        build_decoherence(Exponential{u(rng)}, LatticeSpec::chain(4)),
        build_decoherence(ChiralInfiniteRange{3 * u(rng), 2 * u(rng) - 1}, LatticeSpec::chain(3)),
        build_decoherence(AllToAll{u(rng)}, LatticeSpec::chain(4)),
    };
    for (const auto& g : mats) {
      auto r = correlate(analyze(g));
      const int n = static_cast<int>(g.size());
      CHECK(r.rdot0 == doctest::Approx(oracle::rate_derivative(g.entries(), {}, oracle::excited(n), 1)).epsilon(1e-11));
      CHECK(r.rddot0 == doctest::Approx(oracle::rate_derivative(g.entries(), {}, oracle::excited(n), 2)).epsilon(1e-11));
    }
  }
}

TEST_CASE("report invariants") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + t % 30;
    std::vector<InteractionModel> models{NearestNeighbor{u(rng)}, Exponential{u(rng)}, AllToAll{u(rng)},
                                         PowerLaw{u(rng)}, ChiralInfiniteRange{6 * u(rng), 2 * u(rng) - 1}};
    for (const auto& m : models) {
      auto s = summary(m, LatticeSpec::chain(n));
      auto r = correlate(s);
      const double nd = n;
      CHECK(r.rdot0 == nd * nd * (r.g2 - 1.0));
      CHECK(r.is_superradiant == (r.g2 > 1.0));
      if (!s.is_physical) continue;
      CHECK(r.g2 >= 1.0 - 1.0 / nd - 1e-12);
      CHECK(r.g2 <= 2.0 * (1.0 - 1.0 / nd) + 1e-12);
    }
  }
}

TEST_CASE("gamma_s examples") {
  CHECK(gamma_s(NearestNeighbor{0.1}, LatticeSpec::chain(2)).gamma == 1.0);
  CHECK(gamma_s(AllToAll{0.1}, LatticeSpec::chain(10)).gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  auto e = gamma_s(Exponential{0.1}, LatticeSpec::chain(400));
  REQUIRE(e.has_transition);
  CHECK(std::abs(e.gamma - 1.0 / std::sqrt(3.0)) <= 1e-3);
  CHECK(e.gamma == doctest::Approx(bisect_gamma_s(Exponential{0.1}, LatticeSpec::chain(400))).epsilon(1e-10));
}

TEST_CASE("gamma_s agrees with brute-force bisection on g2") {
  std::vector<std::pair<InteractionModel, LatticeSpec>> cases{
      {NearestNeighbor{0.1}, LatticeSpec::chain(9)},  {NearestNeighbor{0.1}, LatticeSpec({3, 4})},
      {NearestNeighbor{0.1}, LatticeSpec::ring(9)},   {Exponential{0.1}, LatticeSpec({4, 5})},
      {Exponential{0.1}, LatticeSpec::ring(11)},      {PowerLaw{0.1}, LatticeSpec::chain(30)},
      {PowerLaw{0.1}, LatticeSpec({3, 3, 3})},        {AllToAll{0.1}, LatticeSpec::chain(7)},
      {Exponential{0.1}, LatticeSpec({2, 3, 3}, Boundary::open, 0.5)}};
  for (const auto& [m, l] : cases) {
    CAPTURE(describe(m));
    CAPTURE(l.descriptor());
    auto gs = gamma_s(m, l);
    REQUIRE(gs.has_transition);
    CHECK(gs.gamma == doctest::Approx(bisect_gamma_s(m, l)).epsilon(1e-10));
    auto bis = gamma_s(m, l, ThresholdMethod::bisection);
    CHECK(bis.gamma == doctest::Approx(gs.gamma).epsilon(1e-12));
  }
  CHECK(!gamma_s(NearestNeighbor{0.1}, LatticeSpec::chain(1 + 1)).method.empty());
  CHECK(gamma_s(Exponential{0.1}, LatticeSpec::chain(2)).gamma == 1.0);
  CHECK_THROWS_AS(gamma_s(ChiralInfiniteRange{1, 0}, LatticeSpec::chain(4)), Error);
}

TEST_CASE("displacement class weights count ordered pairs") {
  for (auto l : {LatticeSpec::chain(7), LatticeSpec::ring(8), LatticeSpec({3, 4}), LatticeSpec({2, 2, 3})}) {
    auto cls = displacement_classes(l);
    double total = 0.0;
    for (const auto& c : cls) total += c.weight;
    const double n = static_cast<double>(l.size());
    CHECK(total == n * (n - 1));
    for (const auto& c : cls) {
      double brute = 0.0;
      for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < l.size(); ++j) brute += (i != j && l.separation2(i, j) == c.r2);
      CHECK(c.weight == brute);
    }
  }
  auto bulk = bulk_displacement_classes({5, 5});
  double total = 0.0;
  for (const auto& c : bulk) total += c.weight;
  CHECK(total == 25.0 * 24.0);
}

TEST_CASE("asymptotes") {
  CHECK(*gamma_s_limit(Exponential{0.1}, 1) == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(*gamma_s_limit(PowerLaw{0.1}, 1) == doctest::Approx(std::sqrt(3.0) / M_PI));
  CHECK(*gamma_s_limit(NearestNeighbor{0.1}, 2) == doctest::Approx(0.5));
  CHECK(!gamma_s_limit(PowerLaw{0.1}, 3));
}

TEST_CASE("NNN region examples") {
  CHECK(nnn_region(0.3, 0.0).cls == RegionClass::physical_no_burst);
  // Inside the physical region II but gamma1^2 + gamma2^2 < 1/2, so no burst.
  CHECK(nnn_region(0.28, 0.45).cls == RegionClass::physical_no_burst);
  CHECK(nnn_region_finite(0.28, 0.45, 101).cls == RegionClass::physical_no_burst);
  for (auto [g1, g2, cls] : {std::tuple{0.28, 0.45, RegionClass::physical_no_burst},
                             std::tuple{0.55, 0.5, RegionClass::unphysical},
                             std::tuple{0.65, 0.3, RegionClass::superradiant},
                             std::tuple{0.9, 0.1, RegionClass::unphysical}}) {
    auto g = build_decoherence(NextNearestRing{g1, g2}, LatticeSpec::ring(101));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.entries(), Eigen::EigenvaluesOnly);
    RegionClass oracle_cls = es.eigenvalues()(0) < -1e-12 ? RegionClass::unphysical
                             : oracle_g2(g.entries()) > 1.0 ? RegionClass::superradiant
                                                            : RegionClass::physical_no_burst;
    CHECK(oracle_cls == cls);
    CHECK(nnn_region_finite(g1, g2, 101).cls == cls);
    CHECK(nnn_region(g1, g2).cls == cls);
  }
  CHECK(std::string(region_name(RegionClass::superradiant)) == "superradiant");
}

TEST_CASE("NNN minimum gamma2 of the superradiant region") {
  CHECK(nnn_min_gamma2() == doctest::Approx(0.18469).epsilon(1e-4));
  const int m = 1000;
  double best = 1.0;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m / 2; ++j) {
      double g1 = static_cast<double>(i) / m, g2 = static_cast<double>(j) / m;
      if (nnn_region(g1, g2).cls == RegionClass::superradiant) best = std::min(best, g2);
    }
  CHECK(best >= 0.184);
  CHECK(best <= 0.186);
  for (int i = 0; i <= m; ++i) {
    CHECK(nnn_region(static_cast<double>(i) / m, 0.18).cls != RegionClass::superradiant);
    CHECK(nnn_region(static_cast<double>(i) / m, 0.0).cls != RegionClass::superradiant);
    CHECK(nnn_region(0.0, static_cast<double>(i) / m).cls != RegionClass::superradiant);
  }
}

TEST_CASE("NNN regions are exhaustive and exclusive on a random sample") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int counts[3] = {0, 0, 0};
  for (int t = 0; t < 5000; ++t) {
    auto v = nnn_region(u(rng), u(rng));
    int k = static_cast<int>(v.cls);
    REQUIRE(k >= 0);
    REQUIRE(k <= 2);
    ++counts[k];
  }
  for (int c : counts) CHECK(c > 0);
}

TEST_CASE("product-state initial slope") {
  auto g = build_decoherence(Exponential{0.6}, LatticeSpec::chain(5));
  CHECK(product_state_rdot0(g, 0.0, 0.3) == 0.0);
  CHECK(product_state_rdot0(build_decoherence(NearestNeighbor{0.0}, LatticeSpec::chain(6)), M_PI, 0.0) ==
        doctest::Approx(-6.0).epsilon(1e-14));
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) m(i, j) = m(j, i) = u(rng) - 0.5;
    auto rg = DecoherenceMatrix::from_entries(m);
    double theta = M_PI * u(rng), phi = 2 * M_PI * u(rng);
    CHECK(product_state_rdot0(rg, theta, phi) ==
          doctest::Approx(oracle::rdot0_pure(m, oracle::product(5, theta, phi))).epsilon(1e-11));
  }
  CHECK_THROWS_AS(product_state_rdot0(build_decoherence(ChiralInfiniteRange{1, 0.5}, LatticeSpec::chain(3)), 1, 0),
                  Error);
}

TEST_CASE("NN product-state closed form on coordination-2D tori") {
  // 3x3 torus, NN coupling 1/4; the exact pure-state slope is the oracle.
  const int side = 3, n = side * side;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (int x = 0; x < side; ++x)
    for (int y = 0; y < side; ++y) {
      int a = x * side + y;
      int nb[4] = {((x + 1) % side) * side + y, ((x + side - 1) % side) * side + y, x * side + (y + 1) % side,
                   x * side + (y + side - 1) % side};
      for (int b : nb) m(a, b) = 0.25;
    }
  auto torus = DecoherenceMatrix::from_entries(m);
  for (double theta : {M_PI / 2, 1.0, 2.5, M_PI}) {
    double exact = oracle::rdot0_pure(m, oracle::product(n, theta, 0.0));
    CHECK(n * product_state_rdot0_nn_closed(2, theta) == doctest::Approx(exact).epsilon(1e-11));
    CHECK(product_state_rdot0(torus, theta, 0.0) == doctest::Approx(exact).epsilon(1e-11));
  }
  // 1D ring of 7 at coupling 1/2.
  auto ring = build_decoherence(NearestNeighbor{0.5}, LatticeSpec::ring(7));
  for (double theta : {0.3, M_PI / 2, 2.0})
    CHECK(7 * product_state_rdot0_nn_closed(1, theta) ==
          doctest::Approx(oracle::rdot0_pure(ring.entries(), oracle::product(7, theta, 0.0))).epsilon(1e-11));
  for (int d = 1; d <= 4; ++d)
    for (double theta = 0.0; theta <= M_PI; theta += 0.01) CHECK(product_state_rdot0_nn_closed(d, theta) <= 1e-15);
}

TEST_CASE("one-jump average rate") {
  auto id = build_decoherence(NearestNeighbor{0.0}, LatticeSpec::chain(5));
  CHECK(one_jump_average_rate(analyze(id), id) == doctest::Approx(4.0).epsilon(1e-12));
  auto dk = build_decoherence(AllToAll{1.0}, LatticeSpec::chain(4));
  CHECK(one_jump_average_rate(analyze(dk), dk) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(oracle::one_jump_rate(dk.entries()) == doctest::Approx(6.0).epsilon(1e-12));
  auto ex = build_decoherence(Exponential{0.5}, LatticeSpec::ring(7));
  auto s = analyze(ex);
  CHECK(one_jump_average_rate(s, ex) == doctest::Approx(7.0 * g2_zero(s)).epsilon(1e-12));
  CHECK(one_jump_average_rate(s, ex) == doctest::Approx(oracle::one_jump_rate(ex.entries())).epsilon(1e-12));
}

TEST_CASE("chiral closed form against traces") {
  for (int n : {2, 3, 7, 12}) {
    for (int a = 0; a <= 30; ++a)
      for (int b = 0; b <= 10; ++b) {
        double kd = 2 * M_PI * a / 30.0, chi = -1.0 + 0.2 * b;
        auto s = analyze(build_decoherence(ChiralInfiniteRange{kd, chi}, LatticeSpec::chain(n)), kDefaultPsdTolerance,
                         false);
        CHECK(chiral_g2(static_cast<std::size_t>(n), kd, chi) == doctest::Approx(g2_zero(s)).epsilon(1e-9));
      }
  }
}

TEST_CASE("chirality never lowers g2") {
  for (int n : {3, 5, 10}) {
    for (int a = 1; a < 100; ++a) {
      double kd = M_PI * a / 100.0;
      double prev = -1.0;
      for (int b = 0; b <= 100; ++b) {
        double g = chiral_g2(static_cast<std::size_t>(n), kd, b / 100.0);
        CHECK(g >= prev - 1e-14);
        CHECK(g == doctest::Approx(chiral_g2(static_cast<std::size_t>(n), kd, -b / 100.0)).epsilon(1e-15));
        prev = g;
      }
    }
  }
}

TEST_CASE("nonuniform NN chain obeys the Frobenius constraint") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int accepted = 0;
  for (int t = 0; t < 6000; ++t) {
    int n = 3 + t % 8;
    std::vector<double> gs(static_cast<std::size_t>(n - 1));
    for (auto& g : gs) g = u(rng);
    auto m = build_decoherence(NearestNeighborNonuniform{gs}, LatticeSpec::chain(n));
    if (!analyze(m, 0.0, false).is_physical) continue;
    ++accepted;
    double frob = (m.entries() - Eigen::MatrixXcd::Identity(n, n)).norm();
    double limit = std::sqrt(static_cast<double>(n % 2 == 0 ? n : n - 1));
    CHECK(frob <= limit + 1e-12);
  }
  CHECK(accepted > 100);
}

TEST_CASE("g3 > 1 at g2 = 1 iff Tr Gamma^3 > 6N") {
  std::mt19937 rng(43);
  for (int t = 0; t < 2000; ++t) {
    std::size_t n = 3 + static_cast<std::size_t>(t % 60);
    const double nd = static_cast<double>(n);
    const double t2 = 2.0 * nd;
    CHECK(g2_zero(n, nd, t2) == doctest::Approx(1.0).epsilon(1e-15));
    double t3 = 6.0 * nd * std::uniform_real_distribution<double>(0.5, 1.5)(rng);
    if (std::abs(t3 - 6.0 * nd) < 1e-9 * nd) continue;
    CHECK((g3_zero(n, t2, t3) > 1.0) == (t3 > 6.0 * nd));
  }
}

TEST_CASE("all-to-all g3 window opens at N = 7") {
  for (std::size_t n = 3; n <= 40; ++n) {
    const double nd = static_cast<double>(n);
    bool window = false;
    for (int k = 0; k <= 20000; ++k) {
      double gm = k / 20000.0;
      double t2 = nd + nd * (nd - 1) * gm * gm;
      double t3 = nd + 3 * nd * (nd - 1) * gm * gm + nd * (nd - 1) * (nd - 2) * gm * gm * gm;
      if (g2_zero(n, nd, t2) < 1.0 && g3_zero(n, t2, t3) > 1.0) window = true;
    }
    CAPTURE(n);
    CHECK(window == (n >= 7));
  }
}
