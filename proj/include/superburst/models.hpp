#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "superburst/lattice.hpp"

namespace superburst {

struct NearestNeighbor {
  double gamma = 0.0;
  bool operator==(const NearestNeighbor&) const = default;
};
// One coupling per bond of an open chain.
struct NearestNeighborNonuniform {
  std::vector<double> gammas;
  bool operator==(const NearestNeighborNonuniform&) const = default;
};
struct NextNearestRing {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  bool operator==(const NextNearestRing&) const = default;
};
// gamma = exp(-kappa d)
struct Exponential {
  double gamma = 0.0;
  bool operator==(const Exponential&) const = default;
};
// gamma / r
struct PowerLaw {
  double gamma = 0.0;
  bool operator==(const PowerLaw&) const = default;
};
struct ChiralInfiniteRange {
  double kd = 0.0;
  double chi = 0.0;
  bool operator==(const ChiralInfiniteRange&) const = default;
};
// Dicke model with local dissipation.
struct AllToAll {
  double gamma = 0.0;
  bool operator==(const AllToAll&) const = default;
};

using InteractionModel = std::variant<NearestNeighbor, NearestNeighborNonuniform, NextNearestRing, Exponential,
                                      PowerLaw, ChiralInfiniteRange, AllToAll>;

InteractionModel parse_model(std::string_view descriptor);
std::string describe(const InteractionModel& model);
std::string model_kind(const InteractionModel& model);
void validate_parameters(const InteractionModel& model);
void check_compatible(const InteractionModel& model, const LatticeSpec& lattice);

// Single scalar coupling of one-parameter families (NN, exponential, power law, all-to-all).
std::optional<double> scalar_coupling(const InteractionModel& model);
InteractionModel with_coupling(const InteractionModel& model, double gamma);

bool is_real_model(const InteractionModel& model);

// Coupling between two distinct sites as a function of the squared separation
// in lattice units. Defined for every model except the nonuniform chain and
// the chiral model.
double distance_coupling(const InteractionModel& model, long long r2);

class DecoherenceMatrix {
 public:
  DecoherenceMatrix() = default;
  // Validates Hermiticity and unit diagonal exactly.
  static DecoherenceMatrix from_entries(Eigen::MatrixXcd entries, std::string tag = "custom");

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const std::string& tag() const { return tag_; }
  bool is_real() const { return real_; }
  Eigen::MatrixXd real_part() const { return entries_.real(); }

 private:
  friend DecoherenceMatrix build_decoherence(const InteractionModel&, const LatticeSpec&);
  DecoherenceMatrix(Eigen::MatrixXcd entries, std::string tag);

  Eigen::MatrixXcd entries_;
  std::string tag_;
  bool real_ = true;
};

DecoherenceMatrix build_decoherence(const InteractionModel& model, const LatticeSpec& lattice);

struct CoherentCoupling {
  enum class Kind { none, all_to_all, custom };
  Kind kind = Kind::none;
  double strength = 0.0;
  Eigen::MatrixXcd custom;

  static CoherentCoupling none() { return {}; }
  static CoherentCoupling all_to_all(double j) { return {Kind::all_to_all, j, {}}; }
  static CoherentCoupling from_matrix(Eigen::MatrixXcd m) { return {Kind::custom, 0.0, std::move(m)}; }
  // "none" or "all:<J>"
  static CoherentCoupling parse(std::string_view descriptor);
  std::string descriptor() const;
};

// Empty matrix for `none`.
Eigen::MatrixXcd build_coherent_coupling(const CoherentCoupling& coupling, std::size_t n);

}  // namespace superburst
