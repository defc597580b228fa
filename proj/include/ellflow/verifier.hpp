#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ellflow/complex.hpp"
#include "ellflow/flow.hpp"
#include "ellflow/weierstrass.hpp"

namespace ellflow {

struct GridSpec {
  double t0 = 0.0, t1 = 0.0;
  Vec3 x_lo{0.0, 0.0, 0.0}, x_hi{0.0, 0.0, 0.0};
  int n_t = 5, n_x = 5;
  double fd_step = 1e-3;

  void validate() const;
  double t_at(int i) const;
  double x_at(int axis, int i) const;
};

using FlowField = std::function<FlowState(double, const Vec3&)>;

struct ResidualReport {
  double max_abs = 0.0;
  double l2 = 0.0;  // root mean square of the per-point residual norm
  std::array<double, 4> max_per_equation{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> worst_point{0.0, 0.0, 0.0, 0.0};  // (t, x1, x2, x3)
  long samples = 0;
  long samples_skipped = 0;
  std::vector<std::array<double, 4>> skipped_points;

  double skipped_fraction() const { return samples ? double(samples_skipped) / double(samples) : 0.0; }
  bool acceptable(double max_skipped_fraction = 0.01) const { return skipped_fraction() <= max_skipped_fraction; }
};

/// Residual of a_t + u.grad a + a/kappa div u and u_t + (u.grad) u + kappa a grad a
/// with five-point centred differences of step h.
std::array<double, 4> pde_residual_at(const FlowField& sol, const MediumParams& med, double t, const Vec3& x, double h);

/// Residual over the grid; points are split across `threads` workers (0 = hardware).
ResidualReport pde_residual(const FlowField& sol, const MediumParams& med, const GridSpec& grid, unsigned threads = 0);

struct BoundednessReport {
  double min_val = 0.0, max_val = 0.0;
  double argmin = 0.0;
  bool bounded = false;
  int poles = 0;  // samples where the function was infinite or not evaluable
};

/// Extrema over n uniform samples, minimum refined by golden-section search.
BoundednessReport boundedness_scan(const std::function<double(double)>& f, double lo, double hi, int n = 1000);

/// True iff both hypergeometric zeros +-z0 stay off the real axis (|Im| > 1e-6)
/// in the cell a in [0, 1), b in [-1/2, 1/2) of the (omega1, omega2) basis.
bool zero_reality_check(const Invariants& inv);

}  // namespace ellflow
