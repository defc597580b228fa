#pragma once

#include "ellflow/complex.hpp"

namespace ellflow {

struct ModularPoint {
  Complex tau;
  Complex q;

  static ModularPoint from_tau(Complex tau);
};

/// A truncated q-series value with an estimate of the discarded tail.
struct SeriesValue {
  Complex value;
  double error_bound = 0.0;
  int terms = 0;
};

SeriesValue eisenstein_e4(Complex tau, int n_terms);
SeriesValue eisenstein_e6(Complex tau, int n_terms);
SeriesValue modular_discriminant(Complex tau, int n_factors);

// Adaptive versions: truncation grows until successive partial results agree.
Complex eisenstein_e4(Complex tau);
Complex eisenstein_e6(Complex tau);
Complex modular_discriminant(Complex tau);

/// tau_reduced = (a*tau + b) / (c*tau + d) with ad - bc = 1.
struct ReducedTau {
  Complex tau;
  long a = 1, b = 0, c = 0, d = 1;
};

/// Reduction to the standard fundamental domain with Re in (-1/2, 1/2] and,
/// on the unit arc, Re >= 0.
ReducedTau reduce_to_fundamental_domain(Complex tau);

/// Reduced basis of the lattice generated by (w1, w2); w2/w1 lies in the
/// standard fundamental domain afterwards.
struct ReducedBasis {
  Complex w1, w2;
  ReducedTau map;
};
ReducedBasis reduce_basis(Complex w1, Complex w2);

/// s = 1 - 1728 Delta / E4^3, computed at the reduced tau (it is modular invariant).
Complex s_parameter(Complex tau);

}  // namespace ellflow
