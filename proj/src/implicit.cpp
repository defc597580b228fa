#include "ellflow/implicit.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <utility>

#include "ellflow/error.hpp"

namespace ellflow {

namespace {

double polish_in_bracket(const std::function<std::pair<double, double>(double)>& g, double lo, double hi) {
  std::uintmax_t iters = 200;
  auto f = [&](double r) { return std::make_tuple(g(r).first, g(r).second); };
  return boost::math::tools::newton_raphson_iterate(f, 0.5 * (lo + hi), lo, hi, 52, iters);
}

}  // namespace

SolveResult solve_scalar(const ScalarFn& phi, const ScalarFn& phi_prime, double guess, const SolveConfig& cfg) {
  return solve_scalar([&](double r) { return std::make_pair(phi(r), phi_prime(r)); }, guess, cfg);
}

SolveResult solve_scalar(const ValueSlopeFn& phi, double guess, const SolveConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw Error(ErrorKind::InvalidArgument, "damping must lie in (0, 1]");
  // g = r - phi(r); the slope is cached from the last evaluation of g
  double slope = 0.0;
  auto g = [&](double r) {
    auto [v, d] = phi(r);
    slope = d;
    return r - v;
  };
  auto done = [&](double r, double gr) { return std::abs(gr) <= cfg.tol * (1.0 + std::abs(r)); };
  double r = guess;
  double gr = g(r);
  double lo = NAN, hi = NAN;  // g(lo) < 0 < g(hi)
  auto note = [&](double x, double gx) {
    if (gx < 0.0) lo = x;
    if (gx > 0.0) hi = x;
  };
  note(r, gr);
  for (int it = 0;; ++it) {
    double j = 1.0 - slope;
    if (done(r, gr)) {
      SolveResult res{r, it, true, j};
      // one extra Newton step when it helps; finite differences see the residual noise
      if (std::abs(j) >= 1e-10 && gr != 0.0) {
        double rn = r - gr / j;
        if (std::abs(g(rn)) < std::abs(gr)) res.r = rn, res.jacobian = 1.0 - slope;
      }
      return res;
    }
    if (it == cfg.max_iter) throw Error(ErrorKind::NoConvergence, "fixed-point iteration hit the iteration cap");
    if (std::abs(j) < 1e-10) throw Error(ErrorKind::SingularJacobian, "|1 - phi'| < 1e-10 at iterate");
    double step = cfg.damping * gr / j;
    double rn = r - step, gn = g(rn);
    for (int h = 0; h < 30 && !(std::abs(gn) < std::abs(gr)); ++h) {
      step *= 0.5;
      rn = r - step;
      gn = g(rn);
    }
    if (!(std::abs(gn) < std::abs(gr))) {
      if (std::isnan(lo) || std::isnan(hi)) throw Error(ErrorKind::NoConvergence, "damped Newton stalled without a bracket");
      for (int k = 0; k < 200 && std::abs(hi - lo) > 1e-15 * (1.0 + std::abs(lo)); ++k) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        note(mid, gm);
      }
      rn = 0.5 * (lo + hi);
      gn = g(rn);
    }
    r = rn;
    gr = gn;
    note(r, gr);
  }
}

std::vector<double> enumerate_roots(const ScalarFn& phi, const ScalarFn& phi_prime, double lo, double hi, int n) {
  if (!(hi > lo) || n < 2) throw Error(ErrorKind::InvalidArgument, "empty scan window");
  auto g = [&](double r) { return std::make_pair(r - phi(r), 1.0 - phi_prime(r)); };
  std::vector<double> roots;
  double x0 = lo, g0 = g(lo).first;
  if (g0 == 0.0) roots.push_back(lo);
  for (int i = 1; i <= n; ++i) {
    double x1 = lo + (hi - lo) * i / n;
    double g1 = g(x1).first;
    if (g1 == 0.0) {
      roots.push_back(x1);
    } else if (g0 != 0.0 && (g0 < 0.0) != (g1 < 0.0)) {
      roots.push_back(polish_in_bracket(g, x0, x1));
    }
    x0 = x1;
    g0 = g1;
  }
  return roots;
}

namespace {

// Root of r - phi(r, t) on the monotone piece reached from r_start; empty if the
// piece ends (g' <= 0) before a sign change, i.e. the branch has folded away.
enum class Step { Ok, Folded, TooFar };

Step branch_solve(const BranchFamily& fam, double t, double r_start, double cap, double& r_out) {
  auto g = [&](double r) { return std::make_pair(r - fam.phi(r, t), 1.0 - fam.phi_r(r, t)); };
  auto [g0, d0] = g(r_start);
  if (!(d0 > 0.0)) return Step::Folded;
  if (g0 == 0.0) {
    r_out = r_start;
    return Step::Ok;
  }
  const double dir = g0 > 0.0 ? -1.0 : 1.0;
  double r = r_start, gr = g0, dr = d0;
  double travelled = 0.0;
  for (int it = 0; it < 200; ++it) {
    double step = std::abs(gr / dr) * 1.25 + 1e-14 * (1.0 + std::abs(r));
    step = std::min(step, cap - travelled);
    if (step <= 0.0) return Step::TooFar;
    double rn = r + dir * step;
    for (int k = 1; k <= 8; ++k) {
      if (!(g(r + dir * step * k / 9.0).second > 0.0)) return Step::Folded;
    }
    auto [gn, dn] = g(rn);
    if (!(dn > 0.0)) return Step::Folded;
    travelled += step;
    if (gn == 0.0 || (gn < 0.0) != (gr < 0.0)) {
      r_out = polish_in_bracket(g, std::min(r, rn), std::max(r, rn));
      return Step::Ok;
    }
    r = rn, gr = gn, dr = dn;
  }
  return Step::TooFar;
}

}  // namespace

std::optional<FoldResult> catastrophe_time(const BranchFamily& fam, double r0, double t0, double t1, const FoldOptions& opt) {
  if (!(t1 > t0)) throw Error(ErrorKind::InvalidArgument, "empty time range");
  const double cap = 0.1 * opt.scale;
  double r = 0.0;
  if (branch_solve(fam, t0, r0, 10.0 * opt.scale, r) != Step::Ok)
    throw Error(ErrorKind::BranchLost, "no branch root at the initial time");
  double t = t0;
  double dt = (t1 - t0) / 64.0;
  std::optional<double> t_bad;
  for (int steps = 0; steps < opt.max_steps; ++steps) {
    if (t_bad && *t_bad - t <= opt.t_tol) {
      return FoldResult{t, r, 1.0 - fam.phi_r(r, t)};
    }
    double tn = t_bad ? 0.5 * (t + *t_bad) : std::min(t + dt, t1);
    double rn = 0.0;
    Step s = branch_solve(fam, tn, r, cap, rn);
    if (s == Step::Ok) {
      t = tn;
      r = rn;
      if (!t_bad && t >= t1) return std::nullopt;
      if (!t_bad) dt = std::min(dt * 1.5, (t1 - t0) / 16.0);
    } else if (s == Step::Folded) {
      t_bad = tn;
    } else {
      if (t_bad) t_bad = tn;  // treat as lost within the bracket
      else dt *= 0.5;
      if (dt < 1e-300) throw Error(ErrorKind::BranchLost, "step size underflow while tracking the branch");
    }
  }
  throw Error(ErrorKind::BranchLost, "branch tracking exceeded the step budget");
}

}  // namespace ellflow
