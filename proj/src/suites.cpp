#include "ellflow/suites.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "ellflow/error.hpp"
#include "ellflow/flow.hpp"
#include "ellflow/hypergeometric.hpp"
#include "ellflow/modular.hpp"
#include "ellflow/profiles.hpp"
#include "ellflow/reductions.hpp"
#include "ellflow/verifier.hpp"
#include "ellflow/weierstrass.hpp"
#include "ellflow/zeros.hpp"

namespace ellflow {

bool SuiteReport::passed() const { return first_failure() == nullptr; }

const CheckResult* SuiteReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kernel", "modular", "flow", "table3"};
  return names;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// value <= tol; a thrown error counts as a failure with its message attached
void check(SuiteReport& rep, std::string name, double tol, const std::function<double()>& measure) {
  CheckResult c;
  c.name = std::move(name);
  c.tolerance = tol;
  try {
    c.value = measure();
    c.passed = std::isfinite(c.value) && c.value <= tol;
  } catch (const std::exception& e) {
    c.value = NAN;
    c.detail = e.what();
  }
  rep.checks.push_back(std::move(c));
}

void check_flag(SuiteReport& rep, std::string name, const std::function<bool()>& pred) {
  check(rep, std::move(name), 0.0, [&] { return pred() ? 0.0 : 1.0; });
}

Invariants random_invariants(Rng& rng) {
  for (;;) {
    Invariants inv{uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)};
    double scale = std::pow(std::abs(inv.g2), 3) + 27.0 * inv.g3 * inv.g3;
    if (std::abs(inv.discriminant()) > 1e-2 * scale) return inv;
  }
}

Complex random_cell_point(Rng& rng, const Lattice& lat) {
  return uniform(rng, 0.02, 0.98) * lat.omega1 + uniform(rng, 0.02, 0.98) * lat.omega2;
}

const Complex kRefTau(0.5, 1.033);

// distance between the pairs {+-a} and {+-b} modulo the lattice of p
double pair_distance(const WeierstrassP& p, Complex a, Complex b) {
  return std::min(std::abs(p.reduce(a - b)), std::abs(p.reduce(a + b)));
}

void kernel_suite(SuiteReport& rep, const SuiteOptions& opt) {
  Rng rng(opt.seed);
  double ode = 0.0, per = 0.0, even = 0.0, homog = 0.0;
  for (int k = 0; k < opt.pairs; ++k) {
    Invariants inv = random_invariants(rng);
    WeierstrassP p(inv);
    Lattice lat = p.lattice();
    for (int i = 0; i < opt.points; ++i) {
      Complex z = random_cell_point(rng, lat);
      auto [w, dw] = p.value_and_derivative(z);
      double s = 1.0 + std::abs(w);
      ode = std::max(ode, std::abs(dw * dw - (4.0 * w * w * w - inv.g2 * w - inv.g3)) / (s * s * s));
      per = std::max(per, std::abs(p.value(z + lat.omega1) - w) / s);
      per = std::max(per, std::abs(p.value(z + lat.omega2) - w) / s);
      even = std::max(even, std::abs(p.value(-z) - w) / s);
    }
    for (double lam : {2.0, 0.5}) {
      WeierstrassP q(Invariants{inv.g2 / std::pow(lam, 4), inv.g3 / std::pow(lam, 6)});
      for (int i = 0; i < opt.points / 10; ++i) {
        Complex z = random_cell_point(rng, lat);
        Complex w = p.value(z);
        homog = std::max(homog, std::abs(q.value(lam * z) - w / (lam * lam)) / (1.0 + std::abs(w)));
      }
    }
  }
  check(rep, "differential identity", 1e-9, [&] { return ode; });
  check(rep, "double periodicity", 1e-8, [&] { return per; });
  check(rep, "evenness", 1e-8, [&] { return even; });
  check(rep, "homogeneity", 1e-8, [&] { return homog; });

  const Invariants ref_inv{4.0 / 3.0, 1.0};
  check(rep, "cubic roots residual", 1e-12, [&] {
    auto r = cubic_roots(ref_inv);
    double m = std::abs(r.e1 + r.e2 + r.e3);
    for (Complex e : {r.e1, r.e2, r.e3}) m = std::max(m, std::abs(4.0 * e * e * e - ref_inv.g2 * e - ref_inv.g3));
    return m;
  });
  check(rep, "half period critical point", 1e-9, [&] {
    Lattice lat = periods_from_invariants(ref_inv);
    return std::abs(wp_prime(0.5 * lat.omega1, ref_inv));
  });
  check(rep, "rescaling identity", 1e-8, [&] {
    Lattice lat = periods_from_invariants(ref_inv);
    Complex z(0.7, 0.2);
    return std::abs(wp_rescaled(z, lat) - wp(z, ref_inv));
  });
  check(rep, "halphen difference", 1e-9, [&] {
    auto r = cubic_roots(ref_inv);
    Complex u(0.6, 0.4);
    Complex h1 = halphen_h(1, u, ref_inv), h3 = halphen_h(3, u, ref_inv);
    return std::abs(h3 * h3 - h1 * h1 - (r.e1 - r.e3));
  });
  check(rep, "copolar identities", 1e-8, [&] {
    double m = 0.0;
    for (int i = 0; i < 20; ++i) {
      Complex u(uniform(rng, 0.1, 1.2), uniform(rng, -0.5, 0.5));
      JacobiTrio j = jacobi_from_wp(u, ref_inv);
      m = std::max(m, std::abs(j.ns * j.ns - j.cs * j.cs - 1.0));
      m = std::max(m, std::abs(j.ns * j.ns - j.ds * j.ds - j.k2));
    }
    return m;
  });
}

void modular_suite(SuiteReport& rep, const SuiteOptions& opt) {
  Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  check(rep, "E4 truncation 200 vs 400", 1e-12, [] {
    return std::abs(eisenstein_e4(kRefTau, 200).value - eisenstein_e4(kRefTau, 400).value);
  });
  check(rep, "Delta truncation 100 vs 200", 1e-12, [] {
    return std::abs(modular_discriminant(kRefTau, 100).value - modular_discriminant(kRefTau, 200).value);
  });
  check(rep, "s translation invariance", 1e-10,
        [] { return std::abs(s_parameter(kRefTau + 1.0) - s_parameter(kRefTau)); });
  check(rep, "1 - s against lattice invariants", 1e-10, [] {
    const Invariants inv{4.0 / 3.0, 1.0};
    Lattice lat = periods_from_invariants(inv);
    double ref = inv.discriminant() / std::pow(inv.g2, 3);
    return std::abs(1.0 - s_parameter(lat.tau) - ref) / std::abs(ref);
  });
  check(rep, "hypergeometric zero is a zero", 1e-6, [] {
    ZeroPair zp = wp_zero_hypergeometric(kRefTau);
    return std::abs(WeierstrassP(make_lattice(1.0, kRefTau)).value(zp.z0));
  });
  check(rep, "hypergeometric vs Newton over tau sample", 1e-6, [&] {
    double m = 0.0;
    for (int i = 0; i < 10; ++i) {
      Complex tau = kRefTau + Complex(uniform(rng, -0.05, 0.05), uniform(rng, -0.05, 0.05));
      WeierstrassP p(make_lattice(1.0, tau));
      Complex zh = wp_zero_hypergeometric(tau).z0;
      Complex zn = wp_zero_newton(p, default_newton_seed(p.lattice()));
      m = std::max(m, pair_distance(p, zh, zn));
    }
    return m;
  });
  check(rep, "physical zero near 1.405 + 0.929i", 0.01, [] {
    const Invariants inv{4.0 / 3.0, 1.0};
    Lattice lat = periods_from_invariants(inv);
    Complex z = lat.omega1 * wp_zero_hypergeometric(lat.tau).z0;
    WeierstrassP p(inv);
    return pair_distance(p, z, Complex(1.405, 0.929));
  });
  check(rep, "2F1 contiguous relation", 1e-10, [&] {
    // (c - a - 1) F(a,b;c) + a F(a+1,b;c) - (c - 1) F(a,b;c-1) = 0
    double m = 0.0;
    for (int i = 0; i < 20; ++i) {
      double a = uniform(rng, 0.1, 0.9), b = uniform(rng, 0.1, 0.9), c = uniform(rng, 1.6, 2.6);
      Complex x(uniform(rng, -0.6, 0.6), uniform(rng, -0.6, 0.6));
      Complex r = (c - a - 1.0) * hyp2f1(a, b, c, x) + a * hyp2f1(a + 1.0, b, c, x) - (c - 1.0) * hyp2f1(a, b, c - 1.0, x);
      m = std::max(m, std::abs(r));
    }
    return m;
  });
  check(rep, "zeros off the real axis for (4/3, 1)", 0.0,
        [] { return zero_reality_check(Invariants{4.0 / 3.0, 1.0}) ? 0.0 : 1.0; });
}

void flow_suite(SuiteReport& rep, const SuiteOptions& opt) {
  Rng rng(opt.seed ^ 0xa5a5a5a5ULL);
  const MediumParams med = MediumParams::from_kappa(5.0);
  auto random_state = [&] {
    FlowState s;
    s.a = uniform(rng, 0.1, 3.0);
    s.u = {uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    return s;
  };
  auto random_unit = [&] {
    Vec3 v;
    do v = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    while (norm(v) < 0.1);
    return (1.0 / norm(v)) * v;
  };
  double disp = 0.0, det = 0.0;
  for (int i = 0; i < opt.points; ++i) {
    FlowState s = random_state();
    double scale = 1.0 + s.a * s.a + dot(s.u, s.u);
    scale *= scale;
    Vec3 e = random_unit(), m = random_unit();
    for (const auto& w : {entropic_wave_vector(e, 1.0, s), entropic_wave_vector(e, -1.0, s), acoustic_wave_vector(e, m, s)})
      disp = std::max(disp, std::abs(dispersion(w, s, med)) / scale);
    double l0 = uniform(rng, -3.0, 3.0);
    Vec3 l{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    double f = dispersion(l0, l, s), d = characteristic_determinant(l0, l, s, med);
    det = std::max(det, std::abs(f - d) / std::max(1.0, std::abs(f)));
  }
  check(rep, "dispersion of constructed wave vectors", 1e-12, [&] { return disp; });
  check(rep, "factored form vs determinant", 1e-10, [&] { return det; });
  check(rep, "triad pairwise cosine at kappa 5", 1e-12, [&] {
    EntropicTriad tr = make_entropic_triad(med);
    double m = 0.0;
    for (int i = 0; i < 3; ++i) {
      m = std::max(m, std::abs(norm(tr[i]) - 1.0));
      for (int j = i + 1; j < 3; ++j) m = std::max(m, std::abs(dot(tr[i], tr[j]) + 0.2));
    }
    return m;
  });
  check(rep, "triad Gram eigenvalues at kappa 3", 0.0, [&] {
    EntropicTriad tr = make_entropic_triad(MediumParams::from_kappa(3.0), random_unit(), uniform(rng, 0.0, 6.0));
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = dot(tr[i], tr[j]);
    double lo = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(g).eigenvalues().minCoeff();
    return lo >= -1e-12 ? 0.0 : -lo;
  });
  check_flag(rep, "infeasible triad rejected at kappa 1.5", [] {
    try {
      make_entropic_triad(MediumParams::from_kappa(1.5));
    } catch (const Error& e) {
      return e.kind() == ErrorKind::InfeasibleAngle;
    }
    return false;
  });
}

void table3_suite(SuiteReport& rep, const SuiteOptions& opt) {
  Rng rng(opt.seed ^ 0x7ab1e3ULL);
  const double C = std::sqrt(19.0) / 6.0;
  check(rep, "g3 = 1 at the resolved constant", 1e-14, [&] { return std::abs(row1_g3(C, G3Convention::Integral) - 1.0); });
  for (auto conv : {G3Convention::Integral, G3Convention::Table}) {
    std::string tag = conv == G3Convention::Integral ? "integral" : "table";
    check(rep, "F'' + F + F^5 (" + tag + " convention)", 1e-6, [&] {
      Table3Profile prof(Family::Periodic1, C, 1.0, NAN, conv);
      auto f = [&](double x) { return prof.value(x); };
      double m = 0.0;
      for (int i = 0; i <= 230; ++i) {
        double xi = 0.2 + 0.01 * i;
        Derivatives d = central_derivatives(f, xi, 1e-3);
        m = std::max(m, std::abs(d.d2 + d.f + std::pow(d.f, 5)));
      }
      return m;
    });
  }
  const double k0 = 0.7;
  for (ReductionCase rc : {ReductionCase{ReductionKind::DP1}, ReductionCase{ReductionKind::DL31}, ReductionCase::dk12l23(0.0),
                           ReductionCase::dk12l23(4.0 / 3.0), ReductionCase::dk12l23(2.0),
                           ReductionCase{ReductionKind::DK12L1K13}}) {
    ProfileFunction H = reduced_ode_solution(rc, C, k0);
    FirstIntegralConstants K = first_integral_normalization(rc, C, k0);
    // the log-argument case has a pole of p at xi = 1
    const double lo = rc.kind == ReductionKind::DK12L23 && rc.m == 2.0 ? 1.3 : 0.3;
    check(rep, "reduced ODE " + rc.label(), 1e-6, [&] {
      double m = 0.0;
      for (int i = 0; i <= 40; ++i) m = std::max(m, kg_reduction_residual(rc, H, lo + 0.025 * i));
      return m;
    });
    check(rep, "first integral " + rc.label(), 1e-6, [&] {
      double m = 0.0;
      for (int i = 0; i <= 40; ++i) m = std::max(m, first_integral_residual(rc, H, K, lo + 0.025 * i));
      return m;
    });
  }
  auto autonomous = [&](double e0, double c0, double Kp) {
    double m = 0.0;
    for (int i = 0; i < 50; ++i) {
      Complex zeta(uniform(rng, 0.1, 2.0), uniform(rng, 0.1, 1.0));
      auto [U, dU] = elliptic_first_integral_solution(c0, e0, Kp, zeta);
      m = std::max(m, std::abs(autonomous_residual(U, dU, c0, e0, Kp)) / (1.0 + std::norm(dU)));
    }
    return m;
  };
  check(rep, "autonomous first integral (-1/3, -4/3, C)", 1e-8, [&] { return autonomous(-1.0 / 3.0, -4.0 / 3.0, C); });
  for (int k = 0; k < 2; ++k) {
    double e0 = uniform(rng, -1.0, 1.0), c0 = uniform(rng, -2.0, 2.0), Kp = uniform(rng, 0.2, 1.5);
    std::ostringstream name;
    name << "autonomous first integral (" << e0 << ", " << c0 << ", " << Kp << ")";
    check(rep, name.str(), 1e-8, [&] { return autonomous(e0, c0, Kp); });
  }
  check(rep, "p + 1/3 bounded below on the real period", 0.0, [] {
    const Invariants inv{4.0 / 3.0, 1.0};
    WeierstrassP p(inv);
    double w1 = p.lattice().omega1.real();
    BoundednessReport b = boundedness_scan([&](double r) { return p.value(r).real() + 1.0 / 3.0; }, 0.01, w1 - 0.01, 2000);
    return b.bounded && b.min_val > 0.2 ? 0.0 : 1.0;
  });
  check(rep, "rank-3 PDE residual at step 0.01", 1e-3, [] {
    Rank3Config cfg;
    cfg.C = {std::sqrt(19.0) / 6.0, std::sqrt(19.0) / 6.0, std::sqrt(19.0) / 6.0};
    Rank3Solution sol(cfg);
    double z = 0.8 / std::sqrt(0.2);
    GridSpec g;
    g.t1 = 0.2;
    g.x_lo = {-0.1, -0.1, z - 0.1};
    g.x_hi = {0.1, 0.1, z + 0.1};
    g.fd_step = 0.01;
    ResidualReport r = pde_residual([&](double t, const Vec3& x) { return sol.eval(t, x).state; }, cfg.med, g);
    return r.acceptable() ? r.max_abs : INFINITY;
  });
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = std::string(name);
  if (name == "kernel" || name == "all") kernel_suite(rep, opt);
  if (name == "modular" || name == "all") modular_suite(rep, opt);
  if (name == "flow" || name == "all") flow_suite(rep, opt);
  if (name == "table3" || name == "all") table3_suite(rep, opt);
  if (rep.checks.empty()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + std::string(name) + "'");
  return rep;
}

}  // namespace ellflow
