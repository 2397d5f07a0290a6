#include "superburst/dynamics.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <bit>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>

#include "superburst/error.hpp"
#include "superburst/text.hpp"

namespace superburst {

namespace odeint = boost::numeric::odeint;

InitialState InitialState::parse(std::string_view descriptor) {
  descriptor = text::trim(descriptor);
  if (descriptor == "excited" || descriptor == "fully_excited") return fully_excited();
  auto colon = descriptor.find(':');
  if (colon == std::string_view::npos || descriptor.substr(0, colon) != "product")
    fail(ErrorCode::parse, "unknown initial state '" + std::string(descriptor) + "'");
  InitialState s = product(0.0, 0.0);
  bool have_theta = false;
  for (auto item : text::split(descriptor.substr(colon + 1), ',')) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos) fail(ErrorCode::parse, "state parameter '" + std::string(item) + "' lacks '='");
    auto key = text::trim(item.substr(0, eq));
    double v = text::parse_double(item.substr(eq + 1), key);
    if (key == "theta") {
      s.theta = v;
      have_theta = true;
    } else if (key == "phi") {
      s.phi = v;
    } else {
      fail(ErrorCode::parse, "unknown state parameter '" + std::string(key) + "'");
    }
  }
  if (!have_theta) fail(ErrorCode::parse, "product state needs theta");
  return s;
}

std::string InitialState::descriptor() const {
  if (kind == Kind::fully_excited) return "excited";
  return "product:theta=" + text::shortest(theta) + ",phi=" + text::shortest(phi);
}

std::vector<double> make_time_grid(double tmax, std::size_t points, std::size_t early_points) {
  if (!(tmax > 0.0) || points < 1) fail(ErrorCode::invalid_argument, "time grid needs tmax > 0 and points >= 1");
  std::vector<double> t{0.0};
  if (early_points >= 2)
    for (std::size_t i = 0; i < early_points; ++i) {
      double v = 1e-4 * std::pow(10.0, 3.0 * static_cast<double>(i) / static_cast<double>(early_points - 1));
      if (v < tmax) t.push_back(v);
    }
  for (std::size_t i = 1; i <= points; ++i) t.push_back(tmax * static_cast<double>(i) / static_cast<double>(points));
  std::sort(t.begin(), t.end());
  std::vector<double> out;
  for (double v : t)
    if (out.empty() || v - out.back() > 1e-12 * std::max(1.0, v)) out.push_back(v);
  return out;
}

namespace {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using SpMat = Eigen::SparseMatrix<S, Eigen::ColMajor, int>;
template <class S>
using SpRow = Eigen::SparseMatrix<S, Eigen::RowMajor, int>;

template <class S>
S conj_of(S v) {
  if constexpr (std::is_same_v<S, double>)
    return v;
  else
    return std::conj(v);
}

template <class S>
S as_scalar(std::complex<double> v) {
  if constexpr (std::is_same_v<S, double>)
    return v.real();
  else
    return v;
}

// Excitation-number sectors of N two-level emitters.
struct Sectors {
  int n = 0;
  std::vector<std::vector<unsigned>> basis;
  std::vector<int> pos;
  // raise[k][i]: (index of a in sector k, index of a|i in sector k+1) for every a without i
  std::vector<std::vector<std::vector<std::pair<int, int>>>> raise;

  explicit Sectors(int n_) : n(n_), basis(static_cast<std::size_t>(n_ + 1)), pos(1u << n_, -1) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      auto& b = basis[static_cast<std::size_t>(std::popcount(mask))];
      pos[mask] = static_cast<int>(b.size());
      b.push_back(mask);
    }
    raise.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      raise[k].resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        for (unsigned a : basis[k])
          if (!(a >> i & 1u)) raise[k][i].push_back({pos[a], pos[a | (1u << i)]});
    }
  }
  int dim(int k) const { return static_cast<int>(basis[static_cast<std::size_t>(k)].size()); }
};

template <class S>
class LindbladSystem {
 public:
  struct Block {
    int k = 0, l = 0;
    std::size_t offset = 0;
    int parent = -1;  // block (k+1, l+1)
  };

  LindbladSystem(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent, bool all_blocks)
      : sec_(static_cast<int>(gamma.size())) {
    const int n = sec_.n;
    column_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        auto v = gamma(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
        if (v != 0.0) column_[j].push_back({i, as_scalar<S>(v)});
      }
    const bool has_j = coherent.size() > 0 && !coherent.isZero(0.0);
    for (int k = 0; k <= n; ++k) {
      std::vector<Eigen::Triplet<S>> tk, ta;
      for (unsigned a : sec_.basis[k]) {
        int ca = sec_.pos[a];
        for (int i = 0; i < n; ++i) {
          if (!(a >> i & 1u)) continue;
          for (int j = 0; j < n; ++j) {
            if (j != i && (a >> j & 1u)) continue;
            unsigned b = (a & ~(1u << i)) | (1u << j);
            // H_Gamma = sum gamma_ji sigma_j^+ sigma_i^-
            auto g = gamma(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
            if (g != 0.0) tk.emplace_back(sec_.pos[b], ca, as_scalar<S>(g));
            // H = sum J_ji sigma_j^+ sigma_i^-
            if (has_j) {
              auto h = coherent(j, i);
              if (h != 0.0) {
                if constexpr (std::is_same_v<S, double>) {
                  fail(ErrorCode::invalid_argument, "internal: real solver with coherent coupling");
                } else {
                  ta.emplace_back(sec_.pos[b], ca, std::complex<double>(0.0, -1.0) * h);
                }
              }
            }
          }
        }
      }
      const int d = sec_.dim(k);
      SpMat<S> kmat(d, d);
      SpRow<S> amat(d, d);
      kmat.setFromTriplets(tk.begin(), tk.end());
      for (const auto& t : tk) {
        ta.emplace_back(t.row(), t.col(), S(-0.5) * t.value());
      }
      amat.setFromTriplets(ta.begin(), ta.end());
      kmat.makeCompressed();
      amat.makeCompressed();
      k_.push_back(std::move(kmat));
      a_.push_back(std::move(amat));
    }
    index_.assign(static_cast<std::size_t>((n + 1) * (n + 1)), -1);
    std::size_t offset = 0;
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) {
        if (!all_blocks && k != l) continue;
        index_[static_cast<std::size_t>(k * (n + 1) + l)] = static_cast<int>(blocks_.size());
        blocks_.push_back({k, l, offset, -1});
        offset += static_cast<std::size_t>(sec_.dim(k)) * static_cast<std::size_t>(sec_.dim(l));
      }
    total_ = offset;
    for (auto& b : blocks_)
      if (b.k < n && b.l < n) b.parent = index_[static_cast<std::size_t>((b.k + 1) * (n + 1) + b.l + 1)];
  }

  std::size_t size() const { return total_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Sectors& sectors() const { return sec_; }
  int block_index(int k, int l) const { return index_[static_cast<std::size_t>(k * (sec_.n + 1) + l)]; }

  Eigen::Map<const Mat<S>> view(const std::vector<S>& x, const Block& b) const {
    return {x.data() + b.offset, sec_.dim(b.k), sec_.dim(b.l)};
  }
  Eigen::Map<Mat<S>> view(std::vector<S>& x, const Block& b) const {
    return {x.data() + b.offset, sec_.dim(b.k), sec_.dim(b.l)};
  }

  // B_l = A_l^dagger and M_lk = M_kl^dagger, so only blocks with k <= l are computed.
  void operator()(const std::vector<S>& x, std::vector<S>& dx, double /*t*/) const {
    for (const auto& b : blocks_) {
      if (b.k > b.l) continue;
      auto m = view(x, b);
      auto dm = view(dx, b);
      dm.noalias() = a_[b.k] * m;
      const bool diag = b.k == b.l;
      if (!diag) {
        work_.noalias() = a_[b.l] * m.adjoint();
        dm += work_.adjoint();
      }
      if (b.parent >= 0) {
        // Recycling: sum_ij gamma_ij sigma_j^- rho sigma_i^+. On diagonal blocks it is
        // Hermitian, so only the upper triangle (half diagonal) is added before symmetrising.
        auto up = view(x, blocks_[static_cast<std::size_t>(b.parent)]);
        const auto& raise_k = sec_.raise[b.k];
        const auto& raise_l = sec_.raise[b.l];
        for (int j = 0; j < sec_.n; ++j) {
          for (const auto& [bi, bu] : raise_l[j]) {
            auto src = up.col(bu);
            auto dst = dm.col(bi);
            for (const auto& [i, g] : column_[j]) {
              if (!diag) {
                for (const auto& [ai, au] : raise_k[i]) dst(ai) += g * src(au);
                continue;
              }
              for (const auto& [ai, au] : raise_k[i]) {
                if (ai >= bi) {
                  if (ai == bi) dst(ai) += S(0.5) * g * src(au);
                  break;
                }
                dst(ai) += g * src(au);
              }
            }
          }
        }
      }
      if (diag) {
        const Eigen::Index d = dm.rows();
        for (Eigen::Index c = 0; c < d; ++c) {
          for (Eigen::Index r = 0; r < c; ++r) {
            S s = dm(r, c) + conj_of(dm(c, r));
            dm(r, c) = s;
            dm(c, r) = conj_of(s);
          }
          dm(c, c) = S(2.0 * std::real(dm(c, c)));
        }
      }
    }
    for (const auto& b : blocks_) {
      if (b.k <= b.l) continue;
      view(dx, b) = view(dx, blocks_[static_cast<std::size_t>(block_index(b.l, b.k))]).adjoint();
    }
  }

  double rate(const std::vector<S>& x) const {
    double r = 0.0;
    for (int k = 0; k <= sec_.n; ++k) {
      int bi = block_index(k, k);
      auto m = view(x, blocks_[static_cast<std::size_t>(bi)]);
      const auto& kk = k_[k];
      for (int col = 0; col < kk.outerSize(); ++col)
        for (typename SpMat<S>::InnerIterator it(kk, col); it; ++it) r += std::real(it.value() * m(col, it.row()));
    }
    return r;
  }

 private:
  Sectors sec_;
  std::vector<std::vector<std::pair<int, S>>> column_;
  std::vector<SpMat<S>> k_;
  std::vector<SpRow<S>> a_;
  mutable Mat<S> work_;
  std::vector<Block> blocks_;
  std::vector<int> index_;
  std::size_t total_ = 0;
};

template <class S>
std::vector<S> initial_vector(const LindbladSystem<S>& sys, const InitialState& init) {
  std::vector<S> x(sys.size(), S(0));
  const int n = sys.sectors().n;
  if (init.kind == InitialState::Kind::fully_excited) {
    x[sys.blocks()[static_cast<std::size_t>(sys.block_index(n, n))].offset] = S(1);
    return x;
  }
  // Every entry of block (k,l) equals psi_k conj(psi_l).
  const double c = std::cos(init.theta / 2.0), s = std::sin(init.theta / 2.0);
  for (const auto& b : sys.blocks()) {
    std::complex<double> amp = std::pow(c, n - b.k) * std::pow(s, b.k) * std::pow(c, n - b.l) * std::pow(s, b.l) *
                               std::polar(1.0, init.phi * (b.k - b.l));
    sys.view(x, b).setConstant(as_scalar<S>(amp));
  }
  return x;
}

template <class S>
void record_diagnostics(const LindbladSystem<S>& sys, const std::vector<S>& x, EmissionTrace& tr, bool first) {
  const int n = sys.sectors().n;
  double trace = 0.0, herm = 0.0;
  double pmin = INFINITY, pmax = -INFINITY;
  std::vector<double> site(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k <= n; ++k) {
    auto m = sys.view(x, sys.blocks()[static_cast<std::size_t>(sys.block_index(k, k))]);
    const auto& basis = sys.sectors().basis[k];
    for (int a = 0; a < m.rows(); ++a) {
      double p = std::real(m(a, a));
      trace += p;
      pmin = std::min(pmin, p);
      pmax = std::max(pmax, p);
      for (int i = 0; i < n; ++i)
        if (basis[static_cast<std::size_t>(a)] >> i & 1u) site[static_cast<std::size_t>(i)] += p;
    }
    herm = std::max(herm, (m - m.adjoint()).cwiseAbs().maxCoeff());
  }
  for (double p : site) {
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
  }
  if (first) {
    tr.min_population = pmin;
    tr.max_population = pmax;
  }
  tr.max_trace_error = std::max(tr.max_trace_error, std::abs(trace - 1.0));
  tr.max_hermiticity_error = std::max(tr.max_hermiticity_error, herm);
  tr.min_population = std::min(tr.min_population, pmin);
  tr.max_population = std::max(tr.max_population, pmax);
}

void check_grid(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0) fail(ErrorCode::invalid_argument, "time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) fail(ErrorCode::invalid_argument, "time grid must be strictly increasing");
}

template <class State, class System, class Observer>
void integrate(System& system, State& x, const std::vector<double>& times, const EvolveOptions& opt, Observer obs) {
  auto stepper = odeint::make_controlled(opt.atol, opt.rtol, odeint::runge_kutta_fehlberg78<State>());
  double dt0 = times.size() > 1 ? std::min(1e-4, times[1]) : 1e-4;
  try {
    odeint::integrate_times(stepper, std::ref(system), x, times.begin(), times.end(), dt0, obs);
  } catch (const std::exception& e) {
    fail(ErrorCode::numeric, std::string("integration failed: ") + e.what());
  }
}

template <class S>
EmissionTrace run_lindblad(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent, const InitialState& init,
                           const std::vector<double>& times, const EvolveOptions& opt) {
  const bool all_blocks = init.kind == InitialState::Kind::product;
  LindbladSystem<S> sys(gamma, coherent, all_blocks);
  std::vector<S> x = initial_vector(sys, init);
  EmissionTrace tr;
  bool first = true;
  auto observer = [&](const std::vector<S>& state, double t) {
    tr.times.push_back(t);
    tr.rates.push_back(sys.rate(state));
    record_diagnostics(sys, state, tr, first);
    first = false;
  };
  integrate(sys, x, times, opt, observer);
  tr.initial_rate = tr.rates.front();
  return tr;
}

}  // namespace

EmissionTrace lindblad_evolve(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent,
                              const InitialState& initial, const std::vector<double>& times,
                              const EvolveOptions& options) {
  const std::size_t n = gamma.size();
  const std::size_t limit = initial.kind == InitialState::Kind::product ? kLindbladProductMaxN : kLindbladMaxN;
  if (n < 1 || n > limit)
    fail(ErrorCode::out_of_range, "Lindblad solver supports 1 <= N <= " + std::to_string(limit) + " for this state");
  if (coherent.size() > 0 && (coherent.rows() != static_cast<Eigen::Index>(n) || coherent.cols() != coherent.rows()))
    fail(ErrorCode::invalid_argument, "coherent coupling has wrong size");
  if (coherent.size() > 0 && (coherent - coherent.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::invalid_argument, "coherent coupling must be Hermitian");
  check_grid(times);
  const bool has_j = coherent.size() > 0 && !coherent.isZero(0.0);
  const bool real_state = initial.kind == InitialState::Kind::fully_excited || std::sin(initial.phi) == 0.0;
  return (gamma.is_real() && !has_j && real_state) ? run_lindblad<double>(gamma, coherent, initial, times, options)
                                                   : run_lindblad<std::complex<double>>(gamma, coherent, initial, times,
                                                                                        options);
}

double lindblad_rdot0(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent, const InitialState& initial,
                      double step) {
  std::vector<double> t{0.0, step, 2 * step, 3 * step, 4 * step};
  auto tr = lindblad_evolve(gamma, coherent, initial, t, {1e-12, 1e-15});
  const auto& r = tr.rates;
  return (-25.0 * r[0] + 48.0 * r[1] - 36.0 * r[2] + 16.0 * r[3] - 3.0 * r[4]) / (12.0 * step);
}

namespace {

// Populations over collective-spin labels (2j, 2m).
class DickeLocalSystem {
 public:
  DickeLocalSystem(std::size_t n, double gamma) : n_(static_cast<int>(n)) {
    for (int j2 = n_; j2 >= 0; j2 -= 2)
      for (int m2 = j2; m2 >= -j2; m2 -= 2) {
        labels_.push_back({j2, m2});
      }
    auto find = [&](int j2, int m2) -> int {
      for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i].first == j2 && labels_[i].second == m2) return static_cast<int>(i);
      return -1;
    };
    const double half_n = n_ / 2.0;
    rate_.resize(labels_.size());
    for (std::size_t s = 0; s < labels_.size(); ++s) {
      auto [j2, m2] = labels_[s];
      const double j = j2 / 2.0, m = m2 / 2.0;
      const double coll = (j + m) * (j - m + 1.0);
      const double out = gamma * coll + (1.0 - gamma) * (half_n + m);
      rate_[s] = out;
      if (out != 0.0) edges_.push_back({static_cast<int>(s), static_cast<int>(s), -out});
      // (j, m) -> (j, m-1)
      double same = gamma * coll;
      if (j2 > 0) same += (1.0 - gamma) * (half_n + 1.0) * coll / (2.0 * j * (j + 1.0));
      if (same != 0.0 && m2 > -j2) edges_.push_back({find(j2, m2 - 2), static_cast<int>(s), same});
      // (j, m) -> (j-1, m-1)
      if (j2 >= 2 && m2 > -j2) {
        double down = (1.0 - gamma) * (half_n + j + 1.0) * (j + m) * (j + m - 1.0) / (2.0 * j * (2.0 * j + 1.0));
        int t = find(j2 - 2, m2 - 2);
        if (down != 0.0 && t >= 0) edges_.push_back({t, static_cast<int>(s), down});
      }
      // (j, m) -> (j+1, m-1)
      if (j2 + 2 <= n_) {
        double upr = (1.0 - gamma) * (half_n - j) * (j - m + 1.0) * (j - m + 2.0) / (2.0 * (j + 1.0) * (2.0 * j + 1.0));
        int t = find(j2 + 2, m2 - 2);
        if (upr != 0.0 && t >= 0) edges_.push_back({t, static_cast<int>(s), upr});
      }
    }
  }

  std::size_t size() const { return labels_.size(); }

  void operator()(const std::vector<double>& p, std::vector<double>& dp, double /*t*/) const {
    std::fill(dp.begin(), dp.end(), 0.0);
    for (const auto& e : edges_) dp[static_cast<std::size_t>(e.to)] += e.w * p[static_cast<std::size_t>(e.from)];
  }

  double rate(const std::vector<double>& p) const {
    double r = 0.0;
    for (std::size_t s = 0; s < p.size(); ++s) r += rate_[s] * p[s];
    return r;
  }

 private:
  struct Edge {
    int to, from;
    double w;
  };
  int n_;
  std::vector<std::pair<int, int>> labels_;
  std::vector<double> rate_;
  std::vector<Edge> edges_;
};

}  // namespace

EmissionTrace dicke_local_evolve(std::size_t n, double gamma, const std::vector<double>& times,
                                 const EvolveOptions& options) {
  if (n < 2 || n > kDickeLocalMaxN)
    fail(ErrorCode::out_of_range, "permutation-invariant solver supports 2 <= N <= " + std::to_string(kDickeLocalMaxN));
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail(ErrorCode::out_of_range, "gamma must lie in [0,1]");
  check_grid(times);
  DickeLocalSystem sys(n, gamma);
  std::vector<double> p(sys.size(), 0.0);
  p[0] = 1.0;  // (j, m) = (N/2, N/2)
  EmissionTrace tr;
  tr.min_population = 0.0;
  tr.max_population = 1.0;
  auto observer = [&](const std::vector<double>& state, double t) {
    tr.times.push_back(t);
    tr.rates.push_back(sys.rate(state));
    double total = 0.0;
    for (double v : state) {
      total += v;
      tr.min_population = std::min(tr.min_population, v);
    }
    tr.max_trace_error = std::max(tr.max_trace_error, std::abs(total - 1.0));
  };
  integrate(sys, p, times, options, observer);
  tr.initial_rate = tr.rates.front();
  return tr;
}

BurstReport detect_burst(const EmissionTrace& trace, double threshold) {
  const auto& t = trace.times;
  const auto& r = trace.rates;
  if (t.size() < 3 || r.size() != t.size()) fail(ErrorCode::invalid_argument, "burst detection needs >= 3 samples");
  if (t[1] - t[0] > 1e-3)
    fail(ErrorCode::invalid_argument, "time grid too coarse for the delayed-burst test (first interval > 1e-3)");
  BurstReport rep;
  std::size_t k = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
  rep.peak_time = t[k];
  rep.peak_rate = r[k];
  if (k > 0 && k + 1 < t.size()) {
    // Vertex of the parabola through the three samples around the maximum.
    double x0 = t[k - 1], x1 = t[k], x2 = t[k + 1];
    double y0 = r[k - 1], y1 = r[k], y2 = r[k + 1];
    double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
    double a = (d12 - d01) / (x2 - x0);
    if (a < 0.0) {
      double b = d01 - a * (x0 + x1);
      double xv = -b / (2.0 * a);
      if (xv > x0 && xv < x2) {
        double yv = y1 + (xv - x1) * (b + a * (xv + x1));
        if (yv > rep.peak_rate) {
          rep.peak_rate = yv;
          rep.peak_time = xv;
        }
      }
    }
  }
  rep.fractional_increase = trace.initial_rate != 0.0 ? rep.peak_rate / trace.initial_rate - 1.0 : 0.0;
  rep.has_burst = rep.fractional_increase > threshold;
  const double slope = (r[1] - r[0]) / (t[1] - t[0]);
  rep.is_delayed = rep.has_burst && slope < 0.0;
  return rep;
}

std::vector<JumpOperator> jump_operators(const SpectralSummary& summary) {
  if (!summary.is_physical) fail(ErrorCode::invalid_argument, "jump operators need a physical decoherence matrix");
  if (summary.eigenvectors.cols() != static_cast<Eigen::Index>(summary.size()))
    fail(ErrorCode::invalid_argument, "jump operators need eigenvectors");
  std::vector<JumpOperator> jumps;
  for (std::size_t k = 0; k < summary.size(); ++k)
    jumps.push_back({summary.eigenvalues[k], summary.eigenvectors.col(static_cast<Eigen::Index>(k))});
  return jumps;
}

Eigen::MatrixXcd reconstruct_decoherence(const std::vector<JumpOperator>& jumps) {
  if (jumps.empty()) return {};
  const Eigen::Index n = jumps.front().coefficients.size();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& j : jumps) g += j.rate * j.coefficients * j.coefficients.adjoint();
  return g;
}

}  // namespace superburst
