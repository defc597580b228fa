#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "ellflow/complex.hpp"
#include "ellflow/flow.hpp"
#include "ellflow/weierstrass.hpp"

namespace testsupport {

using ellflow::Complex;

// Hand-rolled generators for property tests; every test seeds its own.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  Complex complex(double lo, double hi) { return {real(lo, hi), real(lo, hi)}; }

  ellflow::Invariants invariants() {
    for (;;) {
      ellflow::Invariants inv{real(-5.0, 5.0), real(-5.0, 5.0)};
      double scale = std::pow(std::abs(inv.g2), 3) + 27.0 * inv.g3 * inv.g3;
      if (std::abs(inv.discriminant()) > 1e-2 * scale) return inv;
    }
  }

  Complex cell_point(const ellflow::Lattice& lat) {
    return real(0.02, 0.98) * lat.omega1 + real(0.02, 0.98) * lat.omega2;
  }

  ellflow::Vec3 unit() {
    for (;;) {
      ellflow::Vec3 v{real(-1, 1), real(-1, 1), real(-1, 1)};
      double n = ellflow::norm(v);
      if (n > 0.1 && n <= 1.0) return {v[0] / n, v[1] / n, v[2] / n};
    }
  }

  ellflow::FlowState state() {
    ellflow::FlowState s;
    s.a = real(0.1, 3.0);
    s.u = {real(-2, 2), real(-2, 2), real(-2, 2)};
    return s;
  }

  // tau in the standard fundamental domain away from its corners
  Complex tau() {
    for (;;) {
      Complex t(real(-0.5, 0.5), real(0.9, 2.0));
      if (std::abs(t) > 1.05) return t;
    }
  }
};

// Complete elliptic integral K(m) by an AGM written independently of the library.
inline double agm_k(double m) {
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-16 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return ellflow::kPi / (2.0 * a);
}

// p(z) from the defining lattice sum over a symmetric box |m|, |n| <= N.
inline Complex lattice_sum_wp(Complex z, Complex w1, Complex w2, int N) {
  Complex s = 1.0 / (z * z);
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) {
      if (m == 0 && n == 0) continue;
      Complex w = double(m) * w1 + double(n) * w2;
      s += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
    }
  return s;
}

// Box sums converge like N^-2 after the odd terms cancel; one Richardson step removes that.
inline Complex lattice_sum_wp_extrapolated(Complex z, Complex w1, Complex w2, int N) {
  Complex a = lattice_sum_wp(z, w1, w2, N), b = lattice_sum_wp(z, w1, w2, 2 * N);
  return (4.0 * b - a) / 3.0;
}

}  // namespace testsupport
