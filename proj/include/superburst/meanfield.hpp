#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "superburst/dynamics.hpp"
#include "superburst/models.hpp"

namespace superburst {

// Translation-invariant second-order cumulant state on a ring of N sites.
// c[d] = <s+_x s-_{x+d}>, q[d] = <e_x e_{x+d}>; index 0 holds p in both.
struct CumulantState {
  double p = 0.0;
  std::vector<std::complex<double>> c;
  std::vector<double> q;

  std::size_t size() const { return c.size(); }
  static CumulantState fully_excited(std::size_t n);
  static CumulantState product(std::size_t n, double theta);
};

// First rows of circulant Gamma and J: g[d] = gamma_{x,x+d}, h[d] = J_{x,x+d}.
struct RingCoupling {
  std::vector<double> g;
  std::vector<double> h;
  std::size_t size() const { return g.size(); }
};

// Rejects matrices that are not real, symmetric and circulant.
RingCoupling ring_coupling(const DecoherenceMatrix& gamma, const Eigen::MatrixXcd& coherent = {});

double cumulant_rate(const RingCoupling& ring, const CumulantState& state);
// Rdot from the closed second-order expression for the rate.
double cumulant_rate_derivative(const RingCoupling& ring, const CumulantState& state);
// Time derivative of every cumulant under the same closure.
CumulantState cumulant_derivative(const RingCoupling& ring, const CumulantState& state);

// NN no-burst estimate at coupling 1/(2D) (momentum-space convention), times n.
double nn_meanfield_bound(int dimension, double p, double c1, double c2, double n = 1.0);
// Same expression without the ordering precondition.
double nn_meanfield_bound_value(int dimension, double p, double c1, double n = 1.0);

struct MeanFieldTrace {
  EmissionTrace trace;
  std::vector<double> p, c1, c2, rdot;
  double max_imag_correlation = 0.0;
};

MeanFieldTrace cumulant_evolve(const RingCoupling& ring, const InitialState& initial, const std::vector<double>& times,
                               const EvolveOptions& options = {1e-10, 1e-13});

}  // namespace superburst
