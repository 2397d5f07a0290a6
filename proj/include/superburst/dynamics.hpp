#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "superburst/models.hpp"
#include "superburst/spectral.hpp"

namespace superburst {

struct EmissionTrace {
  std::vector<double> times;
  std::vector<double> rates;
  double initial_rate = 0.0;
  // Largest deviations seen on the output grid.
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_population = 0.0;
  double max_population = 0.0;
};

struct BurstReport {
  bool has_burst = false;
  bool is_delayed = false;
  double peak_time = 0.0;
  double peak_rate = 0.0;
  double fractional_increase = 0.0;
};

struct InitialState {
  enum class Kind { fully_excited, product };
  Kind kind = Kind::fully_excited;
  double theta = 0.0;
  double phi = 0.0;

  static InitialState fully_excited() { return {}; }
  static InitialState product(double theta, double phi) { return {Kind::product, theta, phi}; }
  // "excited" or "product:theta=..,phi=.."
  static InitialState parse(std::string_view descriptor);
  std::string descriptor() const;
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-11;
};

inline constexpr std::size_t kLindbladMaxN = 12;
inline constexpr std::size_t kLindbladProductMaxN = 10;
inline constexpr std::size_t kDickeLocalMaxN = 50;

// 0, a geometric run from 1e-4 to 1e-1, then `points` uniform samples up to tmax.
std::vector<double> make_time_grid(double tmax, std::size_t points, std::size_t early_points = 40);

EmissionTrace lindblad_evolve(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent,
                              const InitialState& initial, const std::vector<double>& times,
                              const EvolveOptions& options = {});

// Dicke model with local dissipation in the permutation-invariant basis.
EmissionTrace dicke_local_evolve(std::size_t n, double gamma, const std::vector<double>& times,
                                 const EvolveOptions& options = {1e-12, 1e-14});

// One-sided five-point derivative of R at t = 0 from tight-tolerance evolution.
double lindblad_rdot0(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent, const InitialState& initial,
                      double step = 2e-3);

BurstReport detect_burst(const EmissionTrace& trace, double threshold = 1e-8);

struct JumpOperator {
  double rate = 0.0;
  Eigen::VectorXcd coefficients;  // c = sum_j coefficients(j) sigma_j^-
};

std::vector<JumpOperator> jump_operators(const SpectralSummary& summary);
Eigen::MatrixXcd reconstruct_decoherence(const std::vector<JumpOperator>& jumps);

}  // namespace superburst
