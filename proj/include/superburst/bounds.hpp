#pragma once

#include <optional>
#include <string>

#include "superburst/lattice.hpp"
#include "superburst/models.hpp"

namespace superburst {

enum class BoundMethod { gershgorin_nn, exponential_1d, powerlaw_1d, brute_force };
const char* bound_method_name(BoundMethod m);

struct RateBound {
  std::string model_tag;
  std::size_t n = 0;
  double bound_value = 0.0;
  // Continuous relaxation of the same estimate, where one exists.
  std::optional<double> relaxed_value;
  BoundMethod method = BoundMethod::brute_force;
  bool certifies_no_burst = false;
};

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr std::size_t kBruteForceMaxN = 12;

RateBound gershgorin_nn_bound(int dimension, std::size_t n, double gamma);
RateBound exponential_1d_bound(std::size_t n, double gamma);
RateBound powerlaw_1d_bound(std::size_t n, double gamma);

// Largest eigenvalue of H_Gamma over all excitation sectors.
double brute_force_hgamma_max(const DecoherenceMatrix& gamma);
RateBound brute_force_bound(const DecoherenceMatrix& gamma);

// Analytic bound appropriate for the model/lattice, or nullopt.
std::optional<RateBound> analytic_bound(const InteractionModel& model, const LatticeSpec& lattice);

}  // namespace superburst
