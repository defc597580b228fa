// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "ellflow/error.hpp"
#include "ellflow/flow.hpp"
#include "ellflow/implicit.hpp"
#include "ellflow/profiles.hpp"
#include "ellflow/reductions.hpp"
#include "ellflow/verifier.hpp"
#include "ellflow/weierstrass.hpp"
#include "ellflow/zeros.hpp"

using namespace ellflow;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = budget_s <= 0.0 || dt < budget_s;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %-28s %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt,
              in_time ? "" : " over budget");
  std::fflush(stdout);
}

const Invariants kInv{4.0 / 3.0, 1.0};
const double kC = std::sqrt(19.0) / 6.0;

double pair_distance(const WeierstrassP& p, Complex a, Complex b) {
  return std::min(std::abs(p.reduce(a - b)), std::abs(p.reduce(a + b)));
}

Rank3Solution row1_solution() {
  Rank3Config cfg;
  cfg.C = {kC, kC, kC};
  return Rank3Solution(cfg);
}

double scan_min() {
  WeierstrassP p(kInv);
  double w1 = p.lattice().omega1.real();
  return boundedness_scan([&](double r) { return p.value(r).real() + 1.0 / 3.0; }, 0.01, w1 - 0.01, 2000).min_val;
}

}  // namespace

int main() {
  criterion(1, "period reproduction", 1.0, [] {
    Lattice lat = periods_from_invariants(kInv);
    bool ok = std::abs(lat.omega1 - 2.81) <= 0.01 && std::abs(lat.omega2.real() - 1.405) <= 0.01 &&
              std::abs(lat.omega2.imag() - 2.902) <= 0.01 && std::abs(lat.tau.real() - 0.5) <= 0.005 &&
              std::abs(lat.tau.imag() - 1.033) <= 0.005;
    return Outcome{ok, fmt("omega1=%.12f omega2=%.12f%+.12fi tau=%.12f%+.12fi", lat.omega1.real(), lat.omega2.real(),
                           lat.omega2.imag(), lat.tau.real(), lat.tau.imag())};
  });

  criterion(2, "zero reproduction", 1.0, [] {
    Lattice lat = periods_from_invariants(kInv);
    WeierstrassP p(kInv);
    Complex z = wp_zero_hypergeometric(lat.tau).z0 * lat.omega1;
    Complex zn = wp_zero_newton(kInv);
    double near = pair_distance(p, z, Complex(1.405, 0.929));
    bool box = std::abs(std::abs(z.real()) - 1.405) <= 0.01 && std::abs(std::abs(z.imag()) - 0.929) <= 0.01;
    double dis = pair_distance(p, z, zn);
    return Outcome{box && near <= 0.015 && dis <= 1e-6,
                   fmt("z0=%.12f%+.12fi newton=%.12f%+.12fi disagreement=%.2e", z.real(), z.imag(), zn.real(),
                       zn.imag(), dis)};
  });

  criterion(3, "boundedness", 0.0, [] {
    double m = scan_min();
    return Outcome{m > 0.2, fmt("min(p+1/3) on [0.01, omega1-0.01] = %.10f (golden > 0.2)", m)};
  });

  criterion(4, "C-exponent resolution", 0.0, [] {
    auto residual = [](G3Convention conv) {
      Table3Profile prof(Family::Periodic1, kC, 1.0, NAN, conv);
      auto f = [&](double x) { return prof.value(x); };
      double m = 0.0;
      for (int i = 0; i <= 230; ++i) {
        Derivatives d = central_derivatives(f, 0.2 + 0.01 * i, 1e-3);
        m = std::max(m, std::abs(d.d2 + d.f + std::pow(d.f, 5)));
      }
      return m;
    };
    double ri = residual(G3Convention::Integral), rt = residual(G3Convention::Table);
    double g3i = row1_g3(kC, G3Convention::Integral), g3t = row1_g3(kC, G3Convention::Table);
    const char* which = std::abs(g3i - 1.0) < 1e-14 ? "C^2 (amplitude sqrt C)" : "C^4 (amplitude C)";
    return Outcome{ri <= 1e-6,
                   fmt("residual C^2=%.2e C^4=%.2e; g3: C^2->%.15f C^4->%.15f; g3=1 reproduced by %s", ri, rt, g3i, g3t,
                       which)};
  });

  criterion(5, "reduced-ODE suite", 0.0, [] {
    const double k0 = 0.7;
    double worst = 0.0;
    std::string parts;
    for (ReductionCase rc : {ReductionCase{ReductionKind::DP1}, ReductionCase{ReductionKind::DL31},
                             ReductionCase::dk12l23(0.0), ReductionCase::dk12l23(4.0 / 3.0), ReductionCase::dk12l23(2.0),
                             ReductionCase{ReductionKind::DK12L1K13}}) {
      ProfileFunction H = reduced_ode_solution(rc, kC, k0);
      const double lo = rc.kind == ReductionKind::DK12L23 && rc.m == 2.0 ? 1.3 : 0.3;
      double m = 0.0;
      for (int i = 0; i <= 40; ++i) m = std::max(m, kg_reduction_residual(rc, H, lo + 0.025 * i));
      worst = std::max(worst, m);
      parts += fmt(" %s=%.1e", rc.label().c_str(), m);
    }
    return Outcome{worst <= 1e-6, "max" + fmt("=%.2e", worst) + parts};
  });

  criterion(6, "first integral", 0.0, [] {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ure(0.1, 1.2), uim(0.1, 0.8);
    auto measure = [&](double e0, double c0, double Kp) {
      double m = 0.0;
      for (int i = 0; i < 200; ++i) {
        auto [U, dU] = elliptic_first_integral_solution(c0, e0, Kp, Complex(ure(rng), uim(rng)));
        m = std::max(m, std::abs(autonomous_residual(U, dU, c0, e0, Kp)) / (1.0 + std::norm(dU)));
      }
      return m;
    };
    double worst = measure(-1.0 / 3.0, -4.0 / 3.0, kC);
    std::string d = fmt("(-1/3,-4/3,sqrt19/6)=%.1e", worst);
    std::uniform_real_distribution<double> ue(-1.0, 1.0), uc(-2.0, 2.0), uk(0.2, 1.5);
    for (int k = 0; k < 2; ++k) {
      double e0 = ue(rng), c0 = uc(rng), Kp = uk(rng);
      double m = measure(e0, c0, Kp);
      worst = std::max(worst, m);
      d += fmt(" (%.3f,%.3f,%.3f)=%.1e", e0, c0, Kp, m);
    }
    return Outcome{worst <= 1e-8, "relative to 1+|U'|^2: " + d};
  });

  criterion(7, "PDE residual", 120.0, [] {
    Rank3Solution sol = row1_solution();
    const MediumParams med = sol.config().med;
    FlowField f = [&sol](double t, const Vec3& x) { return sol.eval(t, x).state; };
    const double zc = 0.8 / std::sqrt(0.2);
    auto run = [&](int n, double h) {
      GridSpec g;
      g.t0 = 0.0;
      g.t1 = 0.2;
      g.x_lo = {-0.1, -0.1, zc - 0.1};
      g.x_hi = {0.1, 0.1, zc + 0.1};
      g.n_t = g.n_x = n;
      g.fd_step = h;
      ResidualReport r = pde_residual(f, med, g);
      if (!r.acceptable()) throw Error(ErrorKind::EvaluationFailure, "too many skipped samples");
      return r.max_abs;
    };
    double r1 = run(17, 0.01), r2 = run(17, 0.005);
    double ratio = r1 / r2;
    double fine = run(17, 1e-3);
    bool ok = ratio >= 16.0 * 0.7 && ratio <= 16.0 * 1.3 && fine <= 1e-5;
    return Outcome{ok, fmt("max(h=0.01)=%.2e max(h=0.005)=%.2e ratio=%.2f max(h=1e-3)=%.2e on 17^4", r1, r2, ratio, fine)};
  });

  criterion(8, "kernel properties", 0.0, [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ug(-5.0, 5.0), uc(0.02, 0.98);
    double ode = 0.0, per = 0.0, even = 0.0, homog = 0.0;
    for (int k = 0; k < 10; ++k) {
      Invariants inv;
      do inv = {ug(rng), ug(rng)};
      while (std::abs(inv.discriminant()) <= 1e-2 * (std::pow(std::abs(inv.g2), 3) + 27.0 * inv.g3 * inv.g3));
      WeierstrassP p(inv);
      const Lattice& lat = p.lattice();
      const double lam = 1.7;
      WeierstrassP q(make_lattice(lam * lat.omega1, lam * lat.omega2));
      for (int i = 0; i < 1000; ++i) {
        Complex z = uc(rng) * lat.omega1 + uc(rng) * lat.omega2;
        auto [w, dw] = p.value_and_derivative(z);
        double s = 1.0 + std::abs(w);
        ode = std::max(ode, std::abs(dw * dw - (4.0 * w * w * w - inv.g2 * w - inv.g3)) / (s * s * s));
        per = std::max(per, std::max(std::abs(p.value(z + lat.omega1) - w), std::abs(p.value(z + lat.omega2) - w)) / s);
        even = std::max(even, std::abs(p.value(-z) - w) / s);
        homog = std::max(homog, std::abs(q.value(lam * z) - w / (lam * lam)) / s);
      }
    }
    bool ok = ode <= 1e-9 && per <= 1e-8 && even <= 1e-8 && homog <= 1e-8;
    return Outcome{ok, fmt("ode=%.1e periodicity=%.1e evenness=%.1e homogeneity=%.1e (relative)", ode, per, even, homog)};
  });

  criterion(9, "dispersion", 0.0, [] {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ua(0.1, 3.0);
    auto unit = [&] {
      for (;;) {
        Vec3 v{u(rng), u(rng), u(rng)};
        double n = norm(v);
        if (n > 0.1 && n <= 1.0) return Vec3{v[0] / n, v[1] / n, v[2] / n};
      }
    };
    MediumParams med = MediumParams::from_kappa(5.0);
    double disp = 0.0, fact = 0.0;
    for (int i = 0; i < 1000; ++i) {
      FlowState s{ua(rng), {2 * u(rng), 2 * u(rng), 2 * u(rng)}};
      Vec3 e = unit();
      for (const WaveVector& w : {entropic_wave_vector(e, 1.0, s), entropic_wave_vector(e, -1.0, s),
                                  acoustic_wave_vector(e, unit(), s)})
        disp = std::max(disp, std::abs(dispersion(w, s, med)));
      double l0 = 3 * u(rng);
      Vec3 l{2 * u(rng), 2 * u(rng), 2 * u(rng)};
      fact = std::max(fact, std::abs(dispersion(l0, l, s) - characteristic_determinant(l0, l, s, med)));
    }
    return Outcome{disp <= 1e-12 && fact <= 1e-10, fmt("max|dispersion|=%.1e factored-vs-det=%.1e", disp, fact)};
  });

  criterion(10, "triad", 0.0, [] {
    EntropicTriad t = make_entropic_triad(MediumParams::from_kappa(5.0));
    double dev = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) dev = std::max(dev, std::abs(dot(t[i], t[j]) + 0.2));
    bool raised = false;
    try {
      make_entropic_triad(MediumParams::from_kappa(1.5));
    } catch (const Error& e) {
      raised = e.kind() == ErrorKind::InfeasibleAngle;
    }
    return Outcome{dev <= 1e-12 && raised, fmt("max|e_i.e_j + 0.2|=%.1e, kappa=1.5 %s", dev,
                                                raised ? "raises InfeasibleAngle" : "did not raise")};
  });

  criterion(11, "catastrophe boundedness", 0.0, [] {
    Rank3Solution sol = row1_solution();
    const auto& cfg = sol.config();
    double w1 = sol.profile(0)->wp().lattice().omega1.real();
    // e1.x = omega1 (a zero of a_1), e2.x = e3.x = omega1/2
    double beta = 0.7 * w1 / 0.72, alpha = w1 + 0.4 * beta;
    Vec3 x = alpha * cfg.triad[0] + beta * (cfg.triad[1] + cfg.triad[2]);
    auto fold = catastrophe_time(sol.branch(0, x), w1, 0.0, 2.0, FoldOptions{w1});
    if (!fold) return Outcome{false, "no fold found on [0, 2]"};
    Rank3Point pt = sol.eval(fold->t, x);
    double m = scan_min();
    double amp_bound = 3.0 * std::sqrt(kC) / std::sqrt(m);
    double a = std::abs(pt.state.a), u = norm(pt.state.u);
    double u_bound = cfg.med.kappa * amp_bound;
    bool ok = std::isfinite(fold->t) && a < amp_bound && u < u_bound;
    return Outcome{ok, fmt("T=%.10f (1/(6 sqrt C)=%.10f) |a|=%.4f<%.4f |u|=%.4f<%.4f", fold->t,
                           1.0 / (6.0 * std::sqrt(kC)), a, amp_bound, u, u_bound)};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}
