#include "superburst/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>

#include "superburst/error.hpp"
#include "superburst/text.hpp"

namespace superburst {

namespace {

// Mirror of the row-sum argument: N - m' + 2 m' S maximised over integer 0 <= m' <= M.
double sector_row_bound(std::size_t n, double s) {
  const double m = static_cast<double>((n - 1) / 2);
  return static_cast<double>(n) + m * std::max(0.0, 2.0 * s - 1.0);
}

void need_odd(std::size_t n) {
  if (n < 1 || n % 2 == 0) fail(ErrorCode::invalid_argument, "ring bound needs odd N");
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail(ErrorCode::out_of_range, "gamma must lie in [0,1]");
}

template <class Matrix>
double sector_max(const DecoherenceMatrix& gamma) {
  using Scalar = typename Matrix::Scalar;
  const int n = static_cast<int>(gamma.size());
  const unsigned full = 1u << n;
  std::vector<int> position(full, -1);
  double best = -INFINITY;
  for (int k = 0; k <= n; ++k) {
    std::vector<unsigned> basis;
    for (unsigned mask = 0; mask < full; ++mask)
      if (std::popcount(mask) == k) {
        position[mask] = static_cast<int>(basis.size());
        basis.push_back(mask);
      }
    const auto d = static_cast<Eigen::Index>(basis.size());
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
      unsigned a = basis[static_cast<std::size_t>(col)];
      h(col, col) = static_cast<double>(k);
      for (int i = 0; i < n; ++i) {
        if (!(a >> i & 1u)) continue;
        for (int j = 0; j < n; ++j) {
          if (j == i || (a >> j & 1u)) continue;
          unsigned b = (a & ~(1u << i)) | (1u << j);
          std::complex<double> v = gamma(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
          if constexpr (std::is_same_v<Scalar, double>) {
            h(position[b], col) += v.real();
          } else {
            h(position[b], col) += v;
          }
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "sector eigensolver did not converge");
    best = std::max(best, es.eigenvalues()(d - 1));
  }
  return best;
}

}  // namespace

const char* bound_method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::gershgorin_nn: return "gershgorin_nn";
    case BoundMethod::exponential_1d: return "exponential_1d";
    case BoundMethod::powerlaw_1d: return "powerlaw_1d";
    case BoundMethod::brute_force: return "brute_force";
  }
  return "brute_force";
}

RateBound gershgorin_nn_bound(int dimension, std::size_t n, double gamma) {
  if (dimension < 1 || n < 1) fail(ErrorCode::invalid_argument, "dimension and N must be >= 1");
  check_gamma(gamma);
  RateBound b;
  b.model_tag = "nn:gamma=" + text::shortest(gamma);
  b.n = n;
  b.method = BoundMethod::gershgorin_nn;
  // max over 0 <= m <= N of N - m + 2 D m gamma: attained at an endpoint.
  const double nd = static_cast<double>(n);
  const double slope = 2.0 * dimension * gamma - 1.0;
  b.bound_value = slope > 0.0 ? nd + slope * nd : nd;
  b.relaxed_value = b.bound_value;
  b.certifies_no_burst = slope <= 0.0;
  return b;
}

RateBound exponential_1d_bound(std::size_t n, double gamma) {
  need_odd(n);
  check_gamma(gamma);
  const std::size_t m = (n - 1) / 2;
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  double s = 0.0, term = 1.0;
  for (std::size_t r = 1; r <= m; ++r) {
    term *= gamma;
    s += term;
  }
  RateBound b;
  b.model_tag = "exp:gamma=" + text::shortest(gamma);
  b.n = n;
  b.method = BoundMethod::exponential_1d;
  b.bound_value = sector_row_bound(n, s);
  if (gamma <= 1.0 / 3.0)
    b.relaxed_value = nd;
  else if (gamma < 1.0)
    b.relaxed_value = nd + md * (3.0 * gamma - 1.0) / (1.0 - gamma);
  else
    b.relaxed_value = nd + (nd - 2.0) * (nd - 1.0) / 2.0;
  b.certifies_no_burst = b.bound_value <= nd;
  return b;
}

RateBound powerlaw_1d_bound(std::size_t n, double gamma) {
  need_odd(n);
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) fail(ErrorCode::out_of_range, "gamma must be non-negative");
  const std::size_t m = (n - 1) / 2;
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  double harmonic = 0.0;
  for (std::size_t r = 1; r <= m; ++r) harmonic += 1.0 / static_cast<double>(r);
  RateBound b;
  b.model_tag = "power:gamma=" + text::shortest(gamma);
  b.n = n;
  b.method = BoundMethod::powerlaw_1d;
  b.bound_value = sector_row_bound(n, gamma * harmonic);
  b.relaxed_value = std::max(nd, nd + md * (2.0 * gamma * (std::log(nd) + kEulerGamma) - 1.0));
  b.certifies_no_burst = b.bound_value <= nd;
  return b;
}

double brute_force_hgamma_max(const DecoherenceMatrix& gamma) {
  if (gamma.size() < 1 || gamma.size() > kBruteForceMaxN)
    fail(ErrorCode::out_of_range, "brute force supports 1 <= N <= " + std::to_string(kBruteForceMaxN));
  return gamma.is_real() ? sector_max<Eigen::MatrixXd>(gamma) : sector_max<Eigen::MatrixXcd>(gamma);
}

RateBound brute_force_bound(const DecoherenceMatrix& gamma) {
  RateBound b;
  b.model_tag = gamma.tag();
  b.n = gamma.size();
  b.method = BoundMethod::brute_force;
  b.bound_value = brute_force_hgamma_max(gamma);
  b.certifies_no_burst = b.bound_value <= static_cast<double>(b.n) * (1.0 + 1e-9);
  return b;
}

std::optional<RateBound> analytic_bound(const InteractionModel& model, const LatticeSpec& lattice) {
  check_compatible(model, lattice);
  std::optional<RateBound> out;
  if (auto* m = std::get_if<NearestNeighbor>(&model)) {
    out = gershgorin_nn_bound(lattice.dimension(), lattice.size(), m->gamma);
  } else if (lattice.periodic() && lattice.size() % 2 == 1) {
    if (auto* e = std::get_if<Exponential>(&model)) out = exponential_1d_bound(lattice.size(), e->gamma);
    if (auto* p = std::get_if<PowerLaw>(&model)) out = powerlaw_1d_bound(lattice.size(), p->gamma);
  }
  if (out) out->model_tag = describe(model);
  return out;
}

}  // namespace superburst
