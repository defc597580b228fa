#include <doctest.h>

#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>

#include "ellflow/error.hpp"
#include "ellflow/weierstrass.hpp"
#include "support.hpp"

using namespace ellflow;
using testsupport::Gen;

namespace {

const Invariants kRef{4.0 / 3.0, 1.0};
const Invariants kLemn{4.0, 0.0};
// lemniscate constant 2 int_0^1 dt / sqrt(1 - t^4)
const double kLemniscate = 2.62205755429211981046483958989111941;

double poly(Complex e, const Invariants& inv) { return std::abs(4.0 * e * e * e - inv.g2 * e - inv.g3); }

}  // namespace

TEST_CASE("complex division by zero raises") {
  CHECK_THROWS_AS(checked_div(1.0, 0.0), Error);
  CHECK(std::abs(checked_div(Complex(1, 1), Complex(0, 1)) - Complex(1, -1)) < 1e-15);
}

TEST_CASE("cubic roots") {
  SUBCASE("triple root at the origin") {
    auto r = cubic_roots({0.0, 0.0});
    CHECK(std::abs(r.e1) + std::abs(r.e2) + std::abs(r.e3) < 1e-15);
  }
  SUBCASE("4t^3 - 4t") {
    auto r = cubic_roots(kLemn);
    CHECK(std::abs(r.e1 - 1.0) < 1e-14);
    CHECK(std::abs(r.e2) < 1e-14);
    CHECK(std::abs(r.e3 + 1.0) < 1e-14);
  }
  SUBCASE("one real root matches Cardano") {
    // t^3 + p t + q = 0 with p = -g2/4, q = -g3/4
    double p = -kRef.g2 / 4.0, q = -kRef.g3 / 4.0;
    double d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    double real_root = std::cbrt(-q / 2.0 + d) + std::cbrt(-q / 2.0 - d);
    auto r = cubic_roots(kRef);
    CHECK(kRef.discriminant() < 0.0);
    CHECK(r.e2.imag() == 0.0);
    CHECK(std::abs(r.e2.real() - real_root) < 1e-14);
    CHECK(r.e1.imag() > 0.0);
    CHECK(std::abs(r.e3 - std::conj(r.e1)) < 1e-14);
  }
  SUBCASE("residual and sum on random invariants") {
    Gen g(11);
    for (int i = 0; i < 200; ++i) {
      Invariants inv{g.real(-10, 10), g.real(-10, 10)};
      auto r = cubic_roots(inv);
      double scale = std::max({1.0, std::abs(inv.g2), std::abs(inv.g3)});
      for (Complex e : {r.e1, r.e2, r.e3}) CHECK(poly(e, inv) <= 1e-12 * scale);
      CHECK(std::abs(r.e1 + r.e2 + r.e3) <= 1e-12 * scale);
      if (inv.discriminant() > 0.0) {
        CHECK(r.e1.real() >= r.e2.real());
        CHECK(r.e2.real() >= r.e3.real());
      }
    }
  }
}

TEST_CASE("periods") {
  SUBCASE("reference lattice for (4/3, 1)") {
    Lattice lat = periods_from_invariants(kRef);
    CHECK(std::abs(lat.omega1 - 2.81) < 0.01);
    CHECK(std::abs(lat.omega2 - Complex(1.405, 2.902)) < 0.01);
    CHECK(std::abs(lat.tau - Complex(0.5, 1.033)) < 0.005);
    CHECK(lat.omega1.imag() == 0.0);
  }
  SUBCASE("lemniscatic lattice is square") {
    Lattice lat = periods_from_invariants(kLemn);
    CHECK(std::abs(lat.tau - Complex(0.0, 1.0)) < 1e-10);
    // real period 4 K(k) / sqrt(e1 - e3) with k^2 = (e2 - e3)/(e1 - e3) = 1/2
    double w1 = 2.0 * testsupport::agm_k(0.5) / std::sqrt(2.0);
    CHECK(std::abs(lat.omega1 - w1) < 1e-13);
    CHECK(std::abs(lat.omega1 - kLemniscate) < 1e-13);
  }
  SUBCASE("degenerate discriminant") {
    CHECK_THROWS_AS(periods_from_invariants({3.0, 1.0}), Error);
    try {
      periods_from_invariants({3.0, 1.0});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateLattice);
    }
    CHECK(Invariants{3.0, 1.0}.degenerate());
  }
  SUBCASE("normalisation on random invariants") {
    Gen g(12);
    for (int i = 0; i < 50; ++i) {
      Invariants inv = g.invariants();
      Lattice lat = periods_from_invariants(inv);
      CHECK(lat.tau.imag() > 0.0);
      CHECK(lat.tau.real() >= -1e-12);
      CHECK(lat.tau.real() < 1.0);
      CHECK(std::abs(lat.omega1.imag()) < 1e-12 * std::abs(lat.omega1));
      CHECK(std::abs(lat.tau - lat.omega2 / lat.omega1) < 1e-14);
    }
  }
}

TEST_CASE("p near the origin and at half periods") {
  CHECK(std::abs(wp(1e-3, kRef) - 1e6) < 1.0);
  Lattice lat = periods_from_invariants(kRef);
  // the real root is the value at the real half period
  CHECK(std::abs(wp(0.5 * lat.omega1, kRef) - cubic_roots(kRef).e2) < 1e-9);
  CHECK(std::abs(wp_prime(0.5 * lat.omega1, kRef)) < 1e-9);
  Lattice sq = periods_from_invariants(kLemn);
  CHECK(std::abs(wp(0.5 * sq.omega1, kLemn) - 1.0) < 1e-9);
  CHECK(std::abs(wp(0.5 * sq.omega2, kLemn) + 1.0) < 1e-9);
  CHECK(std::abs(wp(0.5 * (sq.omega1 + sq.omega2), kLemn)) < 1e-9);
}

TEST_CASE("pole at lattice points") {
  Lattice lat = periods_from_invariants(kRef);
  for (Complex z : {Complex(0.0), lat.omega1, lat.omega2, 2.0 * lat.omega1 - lat.omega2}) {
    try {
      wp(z, kRef);
      FAIL("expected a pole");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PoleAtLatticePoint);
    }
  }
}

TEST_CASE("p against the truncated lattice sum") {
  Lattice lat = periods_from_invariants(kRef);
  Complex ref = testsupport::lattice_sum_wp_extrapolated(0.7, lat.omega1, lat.omega2, 50);
  CHECK(std::abs(wp(0.7, kRef) - ref) < 1e-6);
  Gen g(13);
  for (int i = 0; i < 20; ++i) {
    Complex z = g.cell_point(lat);
    Complex r = testsupport::lattice_sum_wp_extrapolated(z, lat.omega1, lat.omega2, 50);
    CHECK(std::abs(wp(z, kRef) - r) < 1e-6 * (1.0 + std::abs(r)));
  }
}

TEST_CASE("p prime") {
  Complex z(0.3, 0.2);
  CHECK(std::abs(wp_prime(-z, kRef) + wp_prime(z, kRef)) < 1e-9);
  Complex w = wp(0.7, kRef), d = wp_prime(0.7, kRef);
  CHECK(std::abs(d * d - (4.0 * w * w * w - kRef.g2 * w - kRef.g3)) < 1e-9);
  WeierstrassP p(kRef);
  auto [v, dv] = p.value_and_derivative(z);
  double h = 1e-4;
  Complex fd = (p.value(z - 2 * h) - 8.0 * p.value(z - h) + 8.0 * p.value(z + h) - p.value(z + 2 * h)) / (12 * h);
  CHECK(std::abs(dv - fd) < 1e-8 * (1 + std::abs(dv)));
  CHECK(std::abs(v - wp(z, kRef)) < 1e-15);
}

TEST_CASE("kernel properties on random invariants") {
  Gen g(14);
  for (int k = 0; k < 10; ++k) {
    Invariants inv = g.invariants();
    WeierstrassP p(inv);
    const Lattice& lat = p.lattice();
    for (int i = 0; i < 300; ++i) {
      Complex z = g.cell_point(lat);
      auto [w, d] = p.value_and_derivative(z);
      double s = 1.0 + std::abs(w);
      CHECK(std::abs(d * d - (4.0 * w * w * w - inv.g2 * w - inv.g3)) <= 1e-9 * s * s * s);
      CHECK(std::abs(p.value(z + lat.omega1) - w) <= 1e-8 * s);
      CHECK(std::abs(p.value(z + lat.omega2) - w) <= 1e-8 * s);
      CHECK(std::abs(p.value(-z) - w) <= 1e-10 * s);
    }
    for (double lam : {2.0, 0.5}) {
      WeierstrassP q(Invariants{inv.g2 / std::pow(lam, 4), inv.g3 / std::pow(lam, 6)});
      for (int i = 0; i < 30; ++i) {
        Complex z = g.cell_point(lat);
        Complex w = p.value(z);
        CHECK(std::abs(q.value(lam * z) - w / (lam * lam)) <= 1e-8 * (1.0 + std::abs(w)));
      }
    }
  }
}

TEST_CASE("rescaling identity") {
  Gen g(15);
  SUBCASE("unit first period") {
    Complex tau(0.3, 1.2);
    Lattice lat = make_lattice(1.0, tau);
    WeierstrassP p(lat);
    for (int i = 0; i < 10; ++i) {
      Complex z = g.cell_point(lat);
      CHECK(std::abs(wp_rescaled(z, lat) - p.value(z)) < 1e-10 * (1 + std::abs(p.value(z))));
    }
  }
  SUBCASE("computed and rounded reference lattices of (4/3, 1)") {
    Lattice lat = periods_from_invariants(kRef);
    Complex z = 0.3 * lat.omega1 + Complex(0.0, 0.1);
    CHECK(std::abs(wp_rescaled(z, lat) - wp(z, kRef)) < 1e-8);
    Lattice rounded = make_lattice(2.81, Complex(1.405, 2.902));
    Complex zr = 2.81 * 0.3;
    CHECK(std::abs(wp_rescaled(zr, rounded) - wp(zr, kRef)) < 1e-2);
  }
  SUBCASE("lattice invariants round trip") {
    for (int i = 0; i < 10; ++i) {
      Invariants inv = g.invariants();
      Lattice lat = periods_from_invariants(inv);
      auto [g2, g3] = invariants_from_lattice(lat);
      double s = std::max({1.0, std::abs(inv.g2), std::abs(inv.g3)});
      CHECK(std::abs(g2 - inv.g2) < 1e-8 * s);
      CHECK(std::abs(g3 - inv.g3) < 1e-8 * s);
    }
  }
  SUBCASE("doubling both periods divides by four") {
    Lattice lat = periods_from_invariants(kRef);
    Lattice big = make_lattice(2.0 * lat.omega1, 2.0 * lat.omega2);
    for (int i = 0; i < 10; ++i) {
      Complex z = g.cell_point(lat);
      CHECK(std::abs(wp_rescaled(2.0 * z, big) - wp_rescaled(z, lat) / 4.0) < 1e-10 * (1 + std::abs(wp(z, kRef))));
    }
  }
}

TEST_CASE("Halphen functions") {
  Lattice sq = periods_from_invariants(kLemn);
  CHECK(std::abs(halphen_h(1, 0.5 * sq.omega1, kLemn)) < 1e-7);
  Gen g(16);
  for (const Invariants& inv : {kRef, kLemn, Invariants{7.0, -2.0}}) {
    auto r = cubic_roots(inv);
    Complex e[3] = {r.e1, r.e2, r.e3};
    Lattice lat = periods_from_invariants(inv);
    for (int i = 0; i < 20; ++i) {
      Complex u = g.cell_point(lat);
      Complex w = wp(u, inv);
      for (int a = 1; a <= 3; ++a) {
        Complex h = halphen_h(a, u, inv);
        CHECK(std::abs(h * h - (w - e[a - 1])) < 1e-9 * (1 + std::abs(w)));
      }
      Complex h1 = halphen_h(1, u, inv), h3 = halphen_h(3, u, inv);
      CHECK(std::abs(h3 * h3 - h1 * h1 - (r.e1 - r.e3)) < 1e-9 * (1 + std::abs(w)));
    }
  }
  SUBCASE("continuous along the real period") {
    Lattice lat = periods_from_invariants(kRef);
    for (int a = 1; a <= 3; ++a) {
      Complex prev = halphen_h(a, 0.1, kRef);
      for (int i = 1; i < 400; ++i) {
        double x = 0.1 + i * (lat.omega1.real() - 0.2) / 399.0;
        Complex h = halphen_h(a, x, kRef);
        CHECK(std::abs(h - prev) < 0.05 + 0.2 * std::max(std::abs(h), std::abs(prev)));
        prev = h;
      }
    }
  }
}

TEST_CASE("Jacobi trio from p") {
  SUBCASE("agrees with independent Jacobi functions on real roots") {
    Invariants inv = kLemn;
    auto r = cubic_roots(inv);
    double k = std::sqrt(((r.e2 - r.e3) / (r.e1 - r.e3)).real());
    double s = std::sqrt((r.e1 - r.e3).real());
    for (double u : {0.2, 0.5, 0.9, 1.2}) {
      JacobiTrio j = jacobi_from_wp(u, inv);
      double z = u * s;
      CHECK(std::abs(j.cs - boost::math::jacobi_cs(k, z)) < 1e-10);
      CHECK(std::abs(j.ds - boost::math::jacobi_ds(k, z)) < 1e-10);
      CHECK(std::abs(j.ns - boost::math::jacobi_ns(k, z)) < 1e-10);
      CHECK(std::abs(j.k2 - k * k) < 1e-14);
    }
  }
  SUBCASE("quotients against Halphen") {
    Invariants inv{7.0, -2.0};
    auto r = cubic_roots(inv);
    Complex s = std::sqrt(r.e1 - r.e3);
    Complex u(0.4, 0.1);
    JacobiTrio j = jacobi_from_wp(u, inv);
    CHECK(std::abs(j.cs / halphen_h(1, u, inv) - 1.0 / s) < 1e-8);
    CHECK(std::abs(j.ds / halphen_h(2, u, inv) - 1.0 / s) < 1e-8);
    CHECK(std::abs(j.ns / halphen_h(3, u, inv) - 1.0 / s) < 1e-8);
  }
  SUBCASE("copolar identities and modulus range") {
    Gen g(17);
    for (int i = 0; i < 30; ++i) {
      Invariants inv = g.invariants();
      Lattice lat = periods_from_invariants(inv);
      Complex u = g.cell_point(lat);
      JacobiTrio j = jacobi_from_wp(u, inv);
      double s = 1 + std::norm(j.ns);
      CHECK(std::abs(j.ns * j.ns - j.cs * j.cs - 1.0) < 1e-8 * s);
      CHECK(std::abs(j.ns * j.ns - j.ds * j.ds - j.k2) < 1e-8 * s);
      if (inv.discriminant() > 0.0) {
        CHECK(j.k2.real() > 0.0);
        CHECK(j.k2.real() < 1.0);
      }
    }
  }
}

TEST_CASE("complete elliptic integral") {
  CHECK(std::abs(elliptic_k(0.0) - kPi / 2) < 1e-15);
  CHECK(std::abs(elliptic_k(0.5) - testsupport::agm_k(0.5)) < 1e-14);
  CHECK(std::abs(elliptic_k(0.9) - testsupport::agm_k(0.9)) < 1e-14);
}
