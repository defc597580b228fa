#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ellflow {

struct SolveConfig {
  double tol = 1e-12;
  int max_iter = 64;
  double damping = 1.0;
};

struct SolveResult {
  double r = 0.0;
  int iterations = 0;
  bool converged = false;
  double jacobian = 1.0;  // 1 - dPhi/dr at r
};

using ScalarFn = std::function<double(double)>;
using ValueSlopeFn = std::function<std::pair<double, double>(double)>;

/// Fixed point r = phi(r) by damped Newton on r - phi(r), falling back to
/// bisection once a sign change has been bracketed.
SolveResult solve_scalar(const ScalarFn& phi, const ScalarFn& phi_prime, double guess, const SolveConfig& cfg = {});
/// Same, with phi and phi' delivered together.
SolveResult solve_scalar(const ValueSlopeFn& phi, double guess, const SolveConfig& cfg = {});

/// All fixed points in [lo, hi] found by sign changes on an n-point scan and polished.
std::vector<double> enumerate_roots(const ScalarFn& phi, const ScalarFn& phi_prime, double lo, double hi, int n = 2000);

/// Phi(r, t) with its r-derivative, for a fixed spatial point.
struct BranchFamily {
  std::function<double(double, double)> phi;
  std::function<double(double, double)> phi_r;
};

struct FoldOptions {
  double scale = 1.0;      // period scale; a step may move r by at most 0.1 * scale
  double t_tol = 1e-10;    // bisection tolerance on the fold time
  int max_steps = 200000;
};

struct FoldResult {
  double t = 0.0;
  double r = 0.0;
  double jacobian = 0.0;
};

/// Tracks the root branch continuous from t0 and returns the first fold in
/// [t0, t1], or nothing if the branch survives to t1.
std::optional<FoldResult> catastrophe_time(const BranchFamily& fam, double r0, double t0, double t1, const FoldOptions& opt = {});

}  // namespace ellflow
