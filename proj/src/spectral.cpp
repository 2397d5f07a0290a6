#include "superburst/spectral.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "superburst/error.hpp"

namespace superburst {

namespace {

constexpr double pi = std::numbers::pi;

void normalize_phase(Eigen::MatrixXcd& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      double a = std::abs(v(i, k));
      if (a > 1e-10) {
        v.col(k) *= std::conj(v(i, k)) / a;
        break;
      }
    }
  }
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TracePowers entry_traces(const DecoherenceMatrix& gamma) {
  TracePowers t;
  if (gamma.is_real()) {
    Eigen::MatrixXd g = gamma.real_part();
    t.t1 = g.trace();
    t.t2 = g.squaredNorm();
    Eigen::MatrixXd g2 = g * g;
    t.t3 = g2.cwiseProduct(g.transpose()).sum();
  } else {
    const auto& g = gamma.entries();
    t.t1 = g.trace().real();
    t.t2 = g.squaredNorm();
    Eigen::MatrixXcd g2 = g * g;
    t.t3 = g2.cwiseProduct(g.transpose()).sum().real();
  }
  return t;
}

Eigen::VectorXd eigenvalues_only(const DecoherenceMatrix& gamma) {
  if (gamma.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma.real_part(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigensolver did not converge");
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gamma.entries(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigensolver did not converge");
  return es.eigenvalues();
}

SpectralSummary analyze(const DecoherenceMatrix& gamma, double tolerance, bool with_vectors) {
  const Eigen::Index n = static_cast<Eigen::Index>(gamma.size());
  if (n < 1) fail(ErrorCode::invalid_argument, "empty decoherence matrix");
  SpectralSummary s;
  s.tolerance = tolerance;
  Eigen::VectorXd ascending;
  if (gamma.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma.real_part(),
                                                      with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigensolver did not converge");
    ascending = es.eigenvalues();
    if (with_vectors) s.eigenvectors = es.eigenvectors().cast<std::complex<double>>().rowwise().reverse();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gamma.entries(),
                                                       with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "eigensolver did not converge");
    ascending = es.eigenvalues();
    if (with_vectors) s.eigenvectors = es.eigenvectors().rowwise().reverse();
  }
  if (with_vectors) normalize_phase(s.eigenvectors);
  s.eigenvalues.assign(ascending.data(), ascending.data() + n);
  std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
  s.min_eigenvalue = ascending(0);
  s.is_physical = s.min_eigenvalue >= -tolerance * static_cast<double>(n);

  TracePowers t = entry_traces(gamma);
  s.trace_gamma = t.t1;
  s.trace_gamma2 = t.t2;
  s.trace_gamma3 = t.t3;
  for (double l : s.eigenvalues) {
    s.eigen_traces.t1 += l;
    s.eigen_traces.t2 += l * l;
    s.eigen_traces.t3 += l * l * l;
  }
  if (!close_rel(s.trace_gamma2, s.eigen_traces.t2, 1e-9) || !close_rel(s.trace_gamma, s.eigen_traces.t1, 1e-9))
    fail(ErrorCode::numeric, "trace cross-check between entries and eigenvalues failed");
  return s;
}

std::optional<std::vector<double>> closed_form_spectrum(const InteractionModel& model, const LatticeSpec& lattice) {
  check_compatible(model, lattice);
  const std::size_t n = lattice.size();
  const double nd = static_cast<double>(n);
  std::vector<double> ev;
  ev.reserve(n);
  if (auto* m = std::get_if<NearestNeighbor>(&model)) {
    if (lattice.periodic()) {
      for (std::size_t v = 0; v < n; ++v) ev.push_back(1.0 + 2.0 * m->gamma * std::cos(2.0 * pi * v / nd));
    } else {
      // Grid graph: sum of path-graph spectra along each axis.
      ev.push_back(0.0);
      for (int ext : lattice.extents()) {
        std::vector<double> next;
        next.reserve(ev.size() * static_cast<std::size_t>(ext));
        for (double a : ev)
          for (int j = 1; j <= ext; ++j) next.push_back(a + 2.0 * std::cos(j * pi / (ext + 1.0)));
        ev.swap(next);
      }
      for (double& a : ev) a = 1.0 + m->gamma * a;
    }
  } else if (auto* m = std::get_if<NextNearestRing>(&model)) {
    for (std::size_t v = 0; v < n; ++v)
      ev.push_back(1.0 + 2.0 * m->gamma1 * std::cos(2.0 * pi * v / nd) + 2.0 * m->gamma2 * std::cos(4.0 * pi * v / nd));
  } else if (auto* m = std::get_if<Exponential>(&model)) {
    if (!lattice.periodic() || n % 2 == 0) return std::nullopt;
    const double g = m->gamma;
    if (g == 1.0) {
      ev.assign(n, 0.0);
      ev[0] = nd;
    } else {
      const double tail = 2.0 * std::pow(g, (nd + 1.0) / 2.0);
      for (std::size_t j = 0; j < n; ++j) {
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        double num = (1.0 - g) * (1.0 + g - tail * sign * std::cos(j * pi / nd));
        double den = 1.0 + g * g - 2.0 * g * std::cos(2.0 * j * pi / nd);
        ev.push_back(num / den);
      }
    }
  } else if (auto* m = std::get_if<AllToAll>(&model)) {
    ev.assign(n, 1.0 - m->gamma);
    ev[0] = 1.0 + m->gamma * (nd - 1.0);
  } else if (auto* m = std::get_if<ChiralInfiniteRange>(&model)) {
    // Rank-two form: Gamma = (1-chi)/2 u u^H + (1+chi)/2 w w^H with u = e^{i kd j}, w = conj(u).
    if (n == 1) return std::vector<double>{1.0};
    double s;
    double skd = std::sin(m->kd);
    if (std::abs(skd) > 1e-6) {
      s = std::abs(std::sin(nd * m->kd) / skd);
    } else {
      std::complex<double> acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += std::polar(1.0, -2.0 * m->kd * static_cast<double>(j));
      s = std::abs(acc);
    }
    double chi = m->chi;
    double root = std::sqrt(std::max(0.0, chi * chi * nd * nd / 4.0 + (1.0 - chi * chi) * s * s / 4.0));
    ev.assign(n, 0.0);
    ev[0] = nd / 2.0 + root;
    ev[1] = nd / 2.0 - root;
  } else {
    return std::nullopt;
  }
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

double gamma_p_nn_infinite(int dimension) {
  if (dimension < 1) fail(ErrorCode::invalid_argument, "dimension must be >= 1");
  return 1.0 / (2.0 * dimension);
}

double gamma_p(const InteractionModel& model, const LatticeSpec& lattice, double tolerance, ThresholdMethod method) {
  if (!scalar_coupling(model))
    fail(ErrorCode::unsupported, "gamma_p needs a single-coupling model, got '" + model_kind(model) + "'");
  check_compatible(model, lattice);
  const double nd = static_cast<double>(lattice.size());

  if (method != ThresholdMethod::bisection) {
    std::optional<double> closed;
    if (std::holds_alternative<NearestNeighbor>(model)) {
      if (lattice.periodic()) {
        closed = lattice.size() % 2 == 0 ? 0.5 : 0.5 / std::cos(pi / nd);
      } else {
        double s = 0.0;
        for (int ext : lattice.extents()) s += 2.0 * std::cos(pi / (ext + 1.0));
        // 2 cos(pi/3) rounds above 1; snap the N = 2 chain back to its exact value.
        closed = s > 0.5 ? std::min(1.0, 1.0 / s) : 1.0;
        if (std::abs(*closed - 1.0) < 4e-16) closed = 1.0;
      }
    } else if (std::holds_alternative<AllToAll>(model)) {
      closed = 1.0;
    } else if (std::holds_alternative<Exponential>(model) && lattice.dimension() == 1 && !lattice.periodic()) {
      closed = 1.0;
    }
    if (closed) return *closed;
    if (method == ThresholdMethod::closed_form)
      fail(ErrorCode::unsupported, "no closed-form gamma_p for '" + model_kind(model) + "' on '" + lattice.descriptor() + "'");
  }

  auto physical = [&](double g) {
    auto ev = eigenvalues_only(build_decoherence(with_coupling(model, g), lattice));
    return ev(0) >= -tolerance * nd;
  };
  if (physical(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (physical(mid) ? lo : hi) = mid;
  }
  return lo;
}

bool psd_certificate(const DecoherenceMatrix& gamma, double tolerance) {
  const Eigen::Index n = static_cast<Eigen::Index>(gamma.size());
  if (gamma.is_real()) {
    Eigen::MatrixXd shifted = gamma.real_part() + tolerance * Eigen::MatrixXd::Identity(n, n);
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    return llt.info() == Eigen::Success;
  }
  Eigen::MatrixXcd shifted = gamma.entries() + tolerance * Eigen::MatrixXcd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
  return llt.info() == Eigen::Success;
}

}  // namespace superburst
