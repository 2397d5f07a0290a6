#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "superburst/lattice.hpp"
#include "superburst/models.hpp"

namespace superburst {

inline constexpr double kDefaultPsdTolerance = 1e-10;

struct TracePowers {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

struct SpectralSummary {
  std::vector<double> eigenvalues;  // descending
  Eigen::MatrixXcd eigenvectors;    // column k belongs to eigenvalues[k]; empty unless requested
  double min_eigenvalue = 0.0;
  // Entry-based traces (Frobenius and cubic entry sums).
  double trace_gamma = 0.0;
  double trace_gamma2 = 0.0;
  double trace_gamma3 = 0.0;
  // Same traces from the eigenvalues.
  TracePowers eigen_traces;
  bool is_physical = false;
  double tolerance = kDefaultPsdTolerance;

  std::size_t size() const { return eigenvalues.size(); }
  TracePowers traces() const { return {trace_gamma, trace_gamma2, trace_gamma3}; }
};

TracePowers entry_traces(const DecoherenceMatrix& gamma);

SpectralSummary analyze(const DecoherenceMatrix& gamma, double tolerance = kDefaultPsdTolerance,
                        bool with_vectors = true);

// Ascending eigenvalues only.
Eigen::VectorXd eigenvalues_only(const DecoherenceMatrix& gamma);

// Descending closed-form eigenvalues, or nullopt when no closed form is known.
std::optional<std::vector<double>> closed_form_spectrum(const InteractionModel& model, const LatticeSpec& lattice);

enum class ThresholdMethod { automatic, closed_form, bisection };

// Largest coupling in [0,1] for which Gamma stays positive semidefinite.
double gamma_p(const InteractionModel& model, const LatticeSpec& lattice, double tolerance = kDefaultPsdTolerance,
               ThresholdMethod method = ThresholdMethod::automatic);
// NN hypercube in the N -> infinity limit.
double gamma_p_nn_infinite(int dimension);

bool psd_certificate(const DecoherenceMatrix& gamma, double tolerance = kDefaultPsdTolerance);

}  // namespace superburst
