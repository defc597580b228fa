#include "ellflow/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "ellflow/error.hpp"
#include "ellflow/hypergeometric.hpp"
#include "ellflow/modular.hpp"

namespace ellflow {

namespace {

double frac01(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0 - 1e-13) f = 0.0;
  return f;
}

}  // namespace

CellCoords cell_coordinates(Complex z, Complex w1, Complex w2) {
  Complex tau = w2 / w1;
  Complex w = z / w1;
  double b = w.imag() / tau.imag();
  double a = w.real() - b * tau.real();
  return {a, b};
}

Complex reduce_to_cell(Complex z, Complex w1, Complex w2) {
  CellCoords c = cell_coordinates(z, w1, w2);
  return frac01(c.a) * w1 + frac01(c.b) * w2;
}

Complex canonical_zero(Complex z, Complex w1, Complex w2) {
  Complex p = reduce_to_cell(z, w1, w2);
  Complex m = reduce_to_cell(-z, w1, w2);
  CellCoords cp = cell_coordinates(p, w1, w2), cm = cell_coordinates(m, w1, w2);
  constexpr double tie = 1e-12;
  if (cp.b < cm.b - tie) return p;
  if (cm.b < cp.b - tie) return m;
  return cp.a <= cm.a ? p : m;
}

ZeroPair wp_zero_hypergeometric(Complex tau, FormulaDomain mode) {
  ReducedTau red = reduce_to_fundamental_domain(tau);
  // s = E6^2/E4^3 and 1 - s = 1728 Delta/E4^3 are kept separately so that
  // neither loses digits near its own branch point.
  Complex e4 = eisenstein_e4(red.tau);
  if (std::abs(e4) < 1e-10) throw Error(ErrorKind::E4Vanishes, "E4(tau) vanishes");
  Complex e6 = eisenstein_e6(red.tau);
  Complex e43 = e4 * e4 * e4;
  Complex s = e6 * e6 / e43;
  Complex t = 1728.0 * modular_discriminant(red.tau) / e43;
  if (std::abs(s.imag()) <= 1e-12 * std::max(1.0, std::abs(s))) {
    s = Complex(s.real(), -0.0);
    t = Complex(t.real(), 0.0);
  }
  ZeroPair out;
  out.inside_disk = std::abs(s) < 1.0 && std::abs(t) < 1.0;
  if (mode == FormulaDomain::Strict && !out.inside_disk)
    throw Error(ErrorKind::OutsideFormulaDomain, "requires |s| < 1 and |1 - s| < 1");
  out.s = s;
  Complex quarter = (s == Complex(0.0)) ? Complex(0.0) : std::exp(0.25 * std::log(s));
  Complex f32 = hyp3f2_continued(1.0 / 3.0, 2.0 / 3.0, 1.0, 0.75, 1.25, s);
  Complex f21 = hyp2f1(1.0 / 12.0, 5.0 / 12.0, 1.0, t);
  const Complex c2(0.0, -std::sqrt(6.0) / (3.0 * kPi));
  Complex zr = 0.5 * (1.0 + red.tau) + c2 * quarter * checked_div(f32, f21);
  Complex z = (double(red.c) * tau + double(red.d)) * zr;
  out.z0 = canonical_zero(z, 1.0, tau);
  return out;
}

Complex default_newton_seed(const Lattice& lat) { return 0.5 * (lat.omega1 + lat.omega2) + 0.1 * lat.omega1; }

Complex wp_zero_newton(const Invariants& inv, std::optional<Complex> seed) {
  WeierstrassP p(inv);
  return wp_zero_newton(p, seed ? *seed : default_newton_seed(p.lattice()));
}

Complex wp_zero_newton(const WeierstrassP& wp_fn, Complex seed) {
  const double cap = 0.25 * wp_fn.min_period();
  Complex z = seed;
  auto [p, dp] = wp_fn.value_and_derivative(z);
  int polish = 0;
  for (int it = 0; it < 100; ++it) {
    if (std::abs(p) <= 1e-10) {
      if (polish++ >= 2) break;
    }
    if (std::abs(dp) < 1e-12 * (1.0 + std::pow(std::abs(p), 1.5)))
      throw Error(ErrorKind::DerivativeVanishes, "p' vanishes at the Newton iterate");
    Complex step = p / dp;
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    Complex zn = z - step;
    auto next = wp_fn.value_and_derivative(zn);
    for (int h = 0; h < 30 && std::abs(next.first) > std::abs(p) && std::abs(p) > 1e-10; ++h) {
      step *= 0.5;
      zn = z - step;
      next = wp_fn.value_and_derivative(zn);
    }
    if (std::abs(next.first) > std::abs(p) && std::abs(p) <= 1e-10) break;
    z = zn;
    p = next.first;
    dp = next.second;
  }
  if (!(std::abs(p) <= 1e-10)) throw Error(ErrorKind::NoConvergence, "Newton did not reach |p| <= 1e-10 in 100 iterations");
  const Lattice& lat = wp_fn.lattice();
  return reduce_to_cell(z, lat.omega1, lat.omega2);
}

}  // namespace ellflow
