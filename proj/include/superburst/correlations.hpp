#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superburst/lattice.hpp"
#include "superburst/models.hpp"
#include "superburst/spectral.hpp"

namespace superburst {

struct CorrelationReport {
  std::size_t n = 0;
  double g2 = 0.0;
  std::optional<double> g3;  // needs N >= 3
  double rdot0 = 0.0;
  double rddot0 = 0.0;
  bool is_superradiant = false;
};

// Trace-power forms; Tr(Gamma) = N is assumed by g3.
double g2_zero(std::size_t n, double trace1, double trace2);
double g3_zero(std::size_t n, double trace2, double trace3);
double rddot0(std::size_t n, double trace1, double trace2, double trace3);

double g2_zero(const SpectralSummary& summary);
double g3_zero(const SpectralSummary& summary);
double rddot0(const SpectralSummary& summary);
CorrelationReport correlate(const SpectralSummary& summary);

// Chiral infinite-range chain, closed form.
double chiral_g2(std::size_t n, double kd, double chi);

// Ordered displacement classes of a lattice: sum over i != j, grouped by the
// squared separation in lattice units.
struct DisplacementClass {
  long long r2 = 0;
  double weight = 0.0;
};
std::vector<DisplacementClass> displacement_classes(const LatticeSpec& lattice);
// Translation-invariant bulk: minimum-image torus with the given extents.
std::vector<DisplacementClass> bulk_displacement_classes(const std::vector<int>& extents);

// Tr(Gamma^2) - N from displacement classes.
double offdiagonal_weight2(const InteractionModel& model, const std::vector<DisplacementClass>& classes);

struct CriticalCoupling {
  bool has_transition = false;
  double gamma = 0.0;
  std::string method;
};

CriticalCoupling gamma_s(const InteractionModel& model, const LatticeSpec& lattice,
                         ThresholdMethod method = ThresholdMethod::automatic);
// Same root with bulk per-site sums on an n^D-type torus of the given extents.
CriticalCoupling gamma_s_bulk(const InteractionModel& model, const std::vector<int>& extents);
// Root of g2 = 1 for arbitrary displacement classes and N.
CriticalCoupling gamma_s_from_classes(const InteractionModel& model, const std::vector<DisplacementClass>& classes,
                                      double n);
// N -> infinity asymptotes where known.
std::optional<double> gamma_s_limit(const InteractionModel& model, int dimension);

enum class RegionClass { unphysical, physical_no_burst, superradiant };
const char* region_name(RegionClass c);

struct RegionVerdict {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  RegionClass cls = RegionClass::unphysical;
};

RegionVerdict nnn_region(double gamma1, double gamma2);
// Finite odd ring from the exact circulant spectrum.
RegionVerdict nnn_region_finite(double gamma1, double gamma2, std::size_t n, double tolerance = kDefaultPsdTolerance);
double nnn_min_gamma2();

double product_state_rdot0(const DecoherenceMatrix& gamma, double theta, double phi);
// NN lattice where every site has 2D neighbours, coupling 1/(2D): Rdot(0)/N.
double product_state_rdot0_nn_closed(int dimension, double theta);

double one_jump_average_rate(const SpectralSummary& summary, const DecoherenceMatrix& gamma);

}  // namespace superburst
