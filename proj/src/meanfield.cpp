#include "superburst/meanfield.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "superburst/error.hpp"

namespace superburst {

namespace odeint = boost::numeric::odeint;

CumulantState CumulantState::fully_excited(std::size_t n) {
  CumulantState s;
  s.p = 1.0;
  s.c.assign(n, 0.0);
  s.q.assign(n, 1.0);
  if (n) s.c[0] = 1.0;
  return s;
}

CumulantState CumulantState::product(std::size_t n, double theta) {
  const double p = std::pow(std::sin(theta / 2.0), 2);
  CumulantState s;
  s.p = p;
  s.c.assign(n, p * (1.0 - p));
  s.q.assign(n, p * p);
  if (n) {
    s.c[0] = p;
    s.q[0] = p;
  }
  return s;
}

RingCoupling ring_coupling(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent) {
  const std::size_t n = gamma.size();
  if (n < 3) fail(ErrorCode::invalid_argument, "mean-field ring needs N >= 3");
  if (!gamma.is_real()) fail(ErrorCode::invalid_argument, "mean-field ring needs a real decoherence matrix");
  const bool has_j = coherent.size() > 0;
  if (has_j && (coherent.rows() != static_cast<Eigen::Index>(n) || coherent.cols() != coherent.rows()))
    fail(ErrorCode::invalid_argument, "coherent coupling has wrong size");
  RingCoupling ring;
  ring.g.resize(n);
  ring.h.assign(n, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    ring.g[d] = gamma(0, d).real();
    if (has_j) ring.h[d] = coherent(0, static_cast<Eigen::Index>(d)).real();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t d = (j + n - i) % n;
      if (std::abs(gamma(i, j) - ring.g[d]) > 1e-14 || std::abs(ring.g[d] - ring.g[(n - d) % n]) > 1e-14)
        fail(ErrorCode::invalid_argument, "decoherence matrix is not translation invariant");
      if (has_j) {
        auto v = coherent(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (std::abs(v.imag()) > 1e-14 || std::abs(v.real() - ring.h[d]) > 1e-14 ||
            std::abs(ring.h[d] - ring.h[(n - d) % n]) > 1e-14)
          fail(ErrorCode::invalid_argument, "coherent coupling is not real, symmetric and translation invariant");
      }
    }
  return ring;
}

namespace {

void check_state(const RingCoupling& ring, const CumulantState& s) {
  if (ring.size() != s.c.size() || ring.size() != s.q.size() || ring.h.size() != ring.size())
    fail(ErrorCode::invalid_argument, "cumulant state does not match the ring size");
}

std::size_t wrap(long long d, std::size_t n) {
  long long m = d % static_cast<long long>(n);
  return static_cast<std::size_t>(m < 0 ? m + static_cast<long long>(n) : m);
}

}  // namespace

double cumulant_rate(const RingCoupling& ring, const CumulantState& s) {
  check_state(ring, s);
  const std::size_t n = ring.size();
  std::complex<double> acc = s.p;
  for (std::size_t d = 1; d < n; ++d) acc += ring.g[d] * s.c[d];
  return static_cast<double>(n) * acc.real();
}

double cumulant_rate_derivative(const RingCoupling& ring, const CumulantState& s) {
  check_state(ring, s);
  const std::size_t n = ring.size();
  const auto& g = ring.g;
  const auto& h = ring.h;
  const double p = s.p;
  // Site m = 0 stands for every site.
  double local = 0.0, triple = 0.0;
  for (std::size_t dn = 1; dn < n; ++dn) {
    local += g[dn] * (-s.c[dn].real() + 2.0 * g[dn] * s.q[dn] - g[dn] * p);
    if (g[dn] == 0.0) continue;
    double inner = 0.0;
    for (std::size_t l = 1; l < n; ++l) {
      if (l == dn) continue;
      std::size_t dl = wrap(static_cast<long long>(l) - static_cast<long long>(dn), n);
      inner += -2.0 * h[dl] * s.c[l].imag() + g[dl] * s.c[l].real();
    }
    triple += g[dn] * (2.0 * p - 1.0) * inner;
  }
  return -cumulant_rate(ring, s) + static_cast<double>(n) * (local + triple);
}

CumulantState cumulant_derivative(const RingCoupling& ring, const CumulantState& s) {
  check_state(ring, s);
  const std::size_t n = ring.size();
  const auto& g = ring.g;
  const auto& h = ring.h;
  const double p = s.p;
  const std::complex<double> I(0.0, 1.0);
  auto c = [&](long long d) { return s.c[wrap(d, n)]; };
  auto G = [&](long long d) { return g[wrap(d, n)]; };
  auto H = [&](long long d) { return h[wrap(d, n)]; };

  CumulantState ds;
  ds.c.assign(n, 0.0);
  ds.q.assign(n, 0.0);

  std::complex<double> pdot = 0.0;
  for (std::size_t d = 0; d < n; ++d) pdot -= g[d] * s.c[d];
  for (long long d = 1; d < static_cast<long long>(n); ++d) pdot += I * (H(d) * c(d) - H(-d) * c(-d));
  ds.p = pdot.real();

  for (long long dd = 1; dd < static_cast<long long>(n); ++dd) {
    const auto ud = static_cast<std::size_t>(dd);
    std::complex<double> conv = 0.0, ham = 0.0;
    std::complex<double> qsum = 0.0, qham = 0.0;
    for (long long j = 1; j < static_cast<long long>(n); ++j) {
      if (j == dd) continue;
      conv += G(j) * c(dd - j);
      ham += -H(-j) * c(dd - j) + H(j - dd) * c(j);
      qsum += G(j - dd) * c(dd - j) + G(dd - j) * c(j - dd) + G(j) * c(-j) + G(-j) * c(j);
      qham += H(dd - j) * c(dd - j) - H(j - dd) * c(j - dd) + H(-j) * c(-j) - H(j) * c(j);
    }
    ds.c[ud] = -s.c[ud] + g[ud] * (2.0 * s.q[ud] - p) + (2.0 * p - 1.0) * conv + I * (2.0 * p - 1.0) * ham;
    ds.q[ud] = (-2.0 * s.q[ud] - 0.5 * p * qsum + I * p * qham).real();
  }
  ds.c[0] = ds.p;
  ds.q[0] = ds.p;
  return ds;
}

double nn_meanfield_bound_value(int dimension, double p, double c1, double n) {
  if (dimension < 1) fail(ErrorCode::invalid_argument, "dimension must be >= 1");
  const double d = dimension;
  return -n * (1.0 - 1.0 / (8.0 * d)) * p - n * (0.75 + 1.0 / (2.0 * d)) * c1;
}

double nn_meanfield_bound(int dimension, double p, double c1, double c2, double n) {
  if (!(0.0 <= c2 && c2 <= c1 && c1 <= p && p <= 1.0))
    fail(ErrorCode::invalid_argument, "mean-field bound needs 0 <= c2 <= c1 <= p <= 1");
  return nn_meanfield_bound_value(dimension, p, c1, n);
}

namespace {

// Packed as [p, Re c(1..), Im c(1..), q(1..)].
struct Packing {
  std::size_t n;
  std::vector<double> pack(const CumulantState& s) const {
    std::vector<double> x(1 + 3 * (n - 1));
    x[0] = s.p;
    for (std::size_t d = 1; d < n; ++d) {
      x[d] = s.c[d].real();
      x[n - 1 + d] = s.c[d].imag();
      x[2 * (n - 1) + d] = s.q[d];
    }
    return x;
  }
  CumulantState unpack(const std::vector<double>& x) const {
    CumulantState s;
    s.p = x[0];
    s.c.assign(n, 0.0);
    s.q.assign(n, 0.0);
    s.c[0] = s.p;
    s.q[0] = s.p;
    for (std::size_t d = 1; d < n; ++d) {
      s.c[d] = {x[d], x[n - 1 + d]};
      s.q[d] = x[2 * (n - 1) + d];
    }
    return s;
  }
};

}  // namespace

MeanFieldTrace cumulant_evolve(const RingCoupling& ring, const InitialState& initial, const std::vector<double>& times,
                               const EvolveOptions& options) {
  const std::size_t n = ring.size();
  if (n < 3 || n > 512) fail(ErrorCode::out_of_range, "mean-field ring supports 3 <= N <= 512");
  if (times.empty() || times.front() != 0.0) fail(ErrorCode::invalid_argument, "time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) fail(ErrorCode::invalid_argument, "time grid must be strictly increasing");
  Packing pk{n};
  CumulantState s0 = initial.kind == InitialState::Kind::fully_excited ? CumulantState::fully_excited(n)
                                                                        : CumulantState::product(n, initial.theta);
  std::vector<double> x = pk.pack(s0);
  auto rhs = [&](const std::vector<double>& xs, std::vector<double>& dx, double) {
    dx = pk.pack(cumulant_derivative(ring, pk.unpack(xs)));
  };
  MeanFieldTrace out;
  auto observer = [&](const std::vector<double>& xs, double t) {
    CumulantState s = pk.unpack(xs);
    for (std::size_t d = 1; d < n; ++d) {
      if (std::abs(s.c[d]) > s.p + 1e-8)
        fail(ErrorCode::numeric, "cumulant closure blow-up: |c| exceeds p at t=" + std::to_string(t));
      out.max_imag_correlation = std::max(out.max_imag_correlation, std::abs(s.c[d].imag()));
    }
    CumulantState ds = cumulant_derivative(ring, s);
    double rdot = ds.p;
    for (std::size_t d = 1; d < n; ++d) rdot += ring.g[d] * ds.c[d].real();
    out.trace.times.push_back(t);
    out.trace.rates.push_back(cumulant_rate(ring, s));
    out.p.push_back(s.p);
    out.c1.push_back(s.c[1].real());
    out.c2.push_back(s.c[n > 2 ? 2 : 1].real());
    out.rdot.push_back(static_cast<double>(n) * rdot);
  };
  auto stepper = odeint::make_controlled(options.atol, options.rtol, odeint::runge_kutta_fehlberg78<std::vector<double>>());
  try {
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), std::min(1e-3, times.size() > 1 ? times[1] : 1e-3),
                            observer);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::numeric, std::string("mean-field integration failed: ") + e.what());
  }
  out.trace.initial_rate = out.trace.rates.front();
  out.trace.min_population = *std::min_element(out.p.begin(), out.p.end());
  out.trace.max_population = *std::max_element(out.p.begin(), out.p.end());
  return out;
}

}  // namespace superburst
