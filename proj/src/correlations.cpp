#include "superburst/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include "superburst/error.hpp"

namespace superburst {

namespace {

constexpr double pi = std::numbers::pi;

void need_n(std::size_t n, std::size_t min, const char* what) {
  if (n < min) fail(ErrorCode::invalid_argument, std::string(what) + " needs N >= " + std::to_string(min));
}

using Dist = std::vector<std::pair<long long, double>>;  // (r2, weight)

Dist convolve(const Dist& a, const Dist& b) {
  std::unordered_map<long long, double> acc;
  acc.reserve(a.size() + b.size());
  for (const auto& [ra, wa] : a)
    for (const auto& [rb, wb] : b) acc[ra + rb] += wa * wb;
  Dist out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DisplacementClass> finish(const Dist& d) {
  std::vector<DisplacementClass> out;
  out.reserve(d.size());
  for (const auto& [r2, w] : d)
    if (r2 > 0 && w > 0) out.push_back({r2, w});
  return out;
}

bool quadratic_family(const InteractionModel& model) {
  return std::holds_alternative<NearestNeighbor>(model) || std::holds_alternative<PowerLaw>(model) ||
         std::holds_alternative<AllToAll>(model);
}

}  // namespace

double g2_zero(std::size_t n, double trace1, double trace2) {
  need_n(n, 2, "g2(0)");
  return 1.0 - 2.0 / static_cast<double>(n) + trace2 / (trace1 * trace1);
}

// Permutation-cycle count of <(S+)^3 (S-)^3> divided by N^3.
double g3_zero(std::size_t n, double trace2, double trace3) {
  need_n(n, 3, "g3(0)");
  const double nd = static_cast<double>(n);
  return 1.0 - 6.0 / nd + 12.0 / (nd * nd) + 3.0 * (1.0 - 4.0 / nd) * trace2 / (nd * nd) + 2.0 * trace3 / (nd * nd * nd);
}

double rddot0(std::size_t n, double trace1, double trace2, double trace3) {
  need_n(n, 1, "Rddot(0)");
  const double nd = static_cast<double>(n);
  return 8.0 * trace1 * trace1 * trace1 / (nd * nd) - 8.0 * trace1 * trace2 / nd + trace3;
}

double g2_zero(const SpectralSummary& s) { return g2_zero(s.size(), s.trace_gamma, s.trace_gamma2); }
double g3_zero(const SpectralSummary& s) { return g3_zero(s.size(), s.trace_gamma2, s.trace_gamma3); }
double rddot0(const SpectralSummary& s) { return rddot0(s.size(), s.trace_gamma, s.trace_gamma2, s.trace_gamma3); }

CorrelationReport correlate(const SpectralSummary& s) {
  CorrelationReport r;
  r.n = s.size();
  r.g2 = g2_zero(s);
  if (r.n >= 3) r.g3 = g3_zero(s);
  const double nd = static_cast<double>(r.n);
  r.rdot0 = nd * nd * (r.g2 - 1.0);
  r.rddot0 = rddot0(s);
  r.is_superradiant = r.g2 > 1.0;
  return r;
}

double chiral_g2(std::size_t n, double kd, double chi) {
  need_n(n, 2, "g2(0)");
  const double nd = static_cast<double>(n);
  double s = std::sin(kd);
  double ratio2 = std::abs(s) < 1e-12 ? nd * nd : std::pow(std::sin(nd * kd) / s, 2);
  return 0.5 * (3.0 + chi * chi - 4.0 / nd) + (1.0 - chi * chi) / (2.0 * nd * nd) * ratio2;
}

std::vector<DisplacementClass> displacement_classes(const LatticeSpec& lattice) {
  if (lattice.periodic()) {
    const long long n = static_cast<long long>(lattice.size());
    std::map<long long, double> acc;
    for (long long k = 1; k < n; ++k) {
      long long d = std::min(k, n - k);
      acc[d * d] += static_cast<double>(n);
    }
    return finish(Dist(acc.begin(), acc.end()));
  }
  Dist total{{0, 1.0}};
  for (int ext : lattice.extents()) {
    Dist axis;
    axis.push_back({0, static_cast<double>(ext)});
    for (long long d = 1; d < ext; ++d) axis.push_back({d * d, 2.0 * static_cast<double>(ext - d)});
    total = convolve(total, axis);
  }
  return finish(total);
}

std::vector<DisplacementClass> bulk_displacement_classes(const std::vector<int>& extents) {
  if (extents.empty()) fail(ErrorCode::invalid_argument, "bulk sums need at least one axis");
  double n = 1.0;
  Dist total{{0, 1.0}};
  for (int ext : extents) {
    if (ext < 1) fail(ErrorCode::invalid_argument, "extents must be >= 1");
    n *= ext;
    std::map<long long, double> axis;
    for (long long k = 0; k < ext; ++k) {
      long long d = std::min<long long>(k, ext - k);
      axis[d * d] += 1.0;
    }
    total = convolve(total, Dist(axis.begin(), axis.end()));
  }
  for (auto& e : total) e.second *= n;
  return finish(total);
}

double offdiagonal_weight2(const InteractionModel& model, const std::vector<DisplacementClass>& classes) {
  double s = 0.0;
  for (const auto& c : classes) {
    double f = distance_coupling(model, c.r2);
    s += c.weight * f * f;
  }
  return s;
}

CriticalCoupling gamma_s_from_classes(const InteractionModel& model, const std::vector<DisplacementClass>& classes,
                                      double n) {
  if (!scalar_coupling(model)) fail(ErrorCode::unsupported, "gamma_s needs a single-coupling model");
  CriticalCoupling out;
  // g2 = 1  <=>  sum_{i != j} |gamma_ij|^2 = N
  auto excess = [&](double g) { return offdiagonal_weight2(with_coupling(model, g), classes) - n; };
  if (excess(1.0) < 0.0) {
    out.method = "bisection";
    return out;
  }
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  out.has_transition = true;
  out.gamma = 0.5 * (lo + hi);
  out.method = "bisection";
  return out;
}

namespace {

CriticalCoupling solve_classes(const InteractionModel& model, const std::vector<DisplacementClass>& classes, double n,
                               ThresholdMethod method) {
  if (method != ThresholdMethod::bisection && quadratic_family(model)) {
    // Sum scales as gamma^2.
    double s1 = offdiagonal_weight2(with_coupling(model, 1.0), classes);
    CriticalCoupling out;
    out.method = "lattice_sum";
    if (s1 <= 0.0) return out;
    double g = std::sqrt(n / s1);
    if (g <= 1.0) {
      out.has_transition = true;
      out.gamma = g;
    }
    return out;
  }
  if (method == ThresholdMethod::closed_form) fail(ErrorCode::unsupported, "no closed-form gamma_s for this model");
  return gamma_s_from_classes(model, classes, n);
}

}  // namespace

CriticalCoupling gamma_s(const InteractionModel& model, const LatticeSpec& lattice, ThresholdMethod method) {
  if (!scalar_coupling(model))
    fail(ErrorCode::unsupported, "gamma_s needs a single-coupling model, got '" + model_kind(model) + "'");
  check_compatible(model, lattice);
  need_n(lattice.size(), 2, "gamma_s");
  const double nd = static_cast<double>(lattice.size());
  if (method != ThresholdMethod::bisection) {
    std::optional<double> closed;
    if (std::holds_alternative<NearestNeighbor>(model)) {
      if (lattice.periodic()) {
        closed = 1.0 / std::sqrt(2.0);
      } else {
        double s = 0.0;
        for (int ext : lattice.extents()) s += 1.0 - 1.0 / ext;
        closed = 1.0 / std::sqrt(2.0 * s);
      }
    } else if (std::holds_alternative<AllToAll>(model)) {
      closed = 1.0 / std::sqrt(nd - 1.0);
    }
    if (closed) {
      CriticalCoupling out;
      out.method = "closed_form";
      if (*closed <= 1.0 + 1e-15) {
        out.has_transition = true;
        out.gamma = std::min(1.0, *closed);
      }
      return out;
    }
  }
  return solve_classes(model, displacement_classes(lattice), nd, method);
}

CriticalCoupling gamma_s_bulk(const InteractionModel& model, const std::vector<int>& extents) {
  double n = 1.0;
  for (int e : extents) n *= e;
  return solve_classes(model, bulk_displacement_classes(extents), n, ThresholdMethod::automatic);
}

std::optional<double> gamma_s_limit(const InteractionModel& model, int dimension) {
  if (dimension < 1) fail(ErrorCode::invalid_argument, "dimension must be >= 1");
  if (std::holds_alternative<NearestNeighbor>(model)) return 1.0 / std::sqrt(2.0 * dimension);
  if (std::holds_alternative<AllToAll>(model)) return 0.0;
  if (dimension == 1 && std::holds_alternative<Exponential>(model)) return 1.0 / std::sqrt(3.0);
  if (dimension == 1 && std::holds_alternative<PowerLaw>(model)) return std::sqrt(3.0) / pi;
  return std::nullopt;
}

const char* region_name(RegionClass c) {
  switch (c) {
    case RegionClass::unphysical: return "unphysical";
    case RegionClass::physical_no_burst: return "physical_no_burst";
    case RegionClass::superradiant: return "superradiant";
  }
  return "unphysical";
}

RegionVerdict nnn_region(double g1, double g2) {
  bool region1 = g1 - g2 <= 0.5 && g1 > 4.0 * g2;
  bool region2 = g1 * g1 + 8.0 * g2 * g2 <= 4.0 * g2 && g1 <= 4.0 * g2;
  RegionVerdict v{g1, g2, RegionClass::unphysical};
  if (region1 || region2) v.cls = g1 * g1 + g2 * g2 > 0.5 ? RegionClass::superradiant : RegionClass::physical_no_burst;
  return v;
}

RegionVerdict nnn_region_finite(double g1, double g2, std::size_t n, double tolerance) {
  if (n < 5 || n % 2 == 0) fail(ErrorCode::invalid_argument, "finite NNN check needs odd N >= 5");
  const double nd = static_cast<double>(n);
  double min_ev = INFINITY;
  for (std::size_t v = 0; v < n; ++v) {
    double x = 2.0 * pi * static_cast<double>(v) / nd;
    min_ev = std::min(min_ev, 1.0 + 2.0 * g1 * std::cos(x) + 2.0 * g2 * std::cos(2.0 * x));
  }
  RegionVerdict r{g1, g2, RegionClass::unphysical};
  if (min_ev >= -tolerance * nd) {
    double g2zero = g2_zero(n, nd, nd * (1.0 + 2.0 * g1 * g1 + 2.0 * g2 * g2));
    r.cls = g2zero > 1.0 ? RegionClass::superradiant : RegionClass::physical_no_burst;
  }
  return r;
}

double nnn_min_gamma2() { return (4.0 - std::sqrt(2.0)) / 14.0; }

double product_state_rdot0(const DecoherenceMatrix& gamma, double theta, double phi) {
  (void)phi;  // the initial slope does not depend on the azimuth
  if (!gamma.is_real()) fail(ErrorCode::unsupported, "product-state slope requires a real decoherence matrix");
  Eigen::MatrixXd g = gamma.real_part();
  const Eigen::Index n = g.rows();
  g.diagonal().setZero();
  const double s1 = g.sum();
  const double s2 = g.squaredNorm();
  const double rows2 = g.rowwise().sum().squaredNorm();
  // sum over distinct l,m,n of g_mn (g_ml + g_nl)
  const double s3 = 2.0 * (rows2 - s2);
  const double s = std::pow(std::sin(theta / 2.0), 2);
  const double st = std::pow(std::sin(theta), 2);
  return -static_cast<double>(n) * s - 0.5 * st * s1 + 2.0 * s * (s - 0.5) * s2 + 0.25 * st * (s - 0.5) * s3;
}

double product_state_rdot0_nn_closed(int dimension, double theta) {
  const double d = dimension;
  const double g = 1.0 / (2.0 * d);
  const double s = std::pow(std::sin(theta / 2.0), 2);
  const double st = std::pow(std::sin(theta), 2);
  return -s - d * g * st + 4.0 * d * g * g * s * (s - 0.5) + d * g * g * (2.0 * d - 1.0) * st * (s - 0.5);
}

double one_jump_average_rate(const SpectralSummary& summary, const DecoherenceMatrix& gamma) {
  if (!summary.is_physical) fail(ErrorCode::invalid_argument, "one-jump average needs a physical decoherence matrix");
  if (summary.eigenvectors.cols() != static_cast<Eigen::Index>(summary.size()))
    fail(ErrorCode::invalid_argument, "one-jump average needs eigenvectors");
  const auto& g = gamma.entries();
  const Eigen::Index n = g.rows();
  const double nd = static_cast<double>(n);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    auto v = summary.eigenvectors.col(k);
    // Rate of c_k |e...e>: N - 1 + sum_{a != b} g_ab conj(v_a) v_b.
    std::complex<double> off = 0.0;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        if (a != b) off += g(a, b) * std::conj(v(a)) * v(b);
    acc += summary.eigenvalues[static_cast<std::size_t>(k)] * (nd - 1.0 + off.real());
  }
  const double rbar = acc / nd;
  const double expected = nd * g2_zero(summary);
  if (std::abs(rbar - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
    fail(ErrorCode::numeric, "one-jump average rate disagrees with N g2(0)");
  return rbar;
}

}  // namespace superburst
