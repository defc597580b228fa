#pragma once

#include <array>
#include <utility>

#include "ellflow/complex.hpp"

namespace ellflow {

struct Invariants {
  double g2 = 0.0;
  double g3 = 0.0;

  double discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
  bool degenerate() const;
};

/// Roots of 4t^3 - g2 t - g3. Real case: e1 >= e2 >= e3. One real root:
/// e2 is real and Im(e1) > 0, e3 = conj(e1).
struct CubicRoots {
  Complex e1, e2, e3;
};

struct Lattice {
  Complex omega1, omega2, tau;
};

/// Builds a lattice from two periods; Im(omega2/omega1) must be positive.
Lattice make_lattice(Complex omega1, Complex omega2);

CubicRoots cubic_roots(const Invariants& inv);

/// Complete elliptic integral of the first kind K(m), m = k^2 < 1, via the AGM.
double elliptic_k(double m);

/// Real period omega1 and a second period with Im(tau) > 0, Re(tau) in [0, 1).
Lattice periods_from_invariants(const Invariants& inv);

/// Invariants (g2, g3) of a lattice from Eisenstein series at the reduced tau.
std::pair<Complex, Complex> invariants_from_lattice(const Lattice& lat);

/// Weierstrass p for a fixed lattice. Evaluation reduces z to the nearest
/// lattice point, shrinks it by powers of two into the Laurent disk and
/// duplicates back.
class WeierstrassP {
 public:
  explicit WeierstrassP(const Invariants& inv);
  explicit WeierstrassP(const Lattice& lat);

  Complex value(Complex z) const { return value_and_derivative(z).first; }
  Complex derivative(Complex z) const { return value_and_derivative(z).second; }
  std::pair<Complex, Complex> value_and_derivative(Complex z) const;

  /// Representative of z closest to the origin modulo the lattice.
  Complex reduce(Complex z) const;

  Complex g2() const { return g2_; }
  Complex g3() const { return g3_; }
  const Lattice& lattice() const { return lat_; }
  double min_period() const { return wmin_; }
  /// Coefficients c_k of p(z) = 1/z^2 + sum_{k>=2} c_k z^(2k-2).
  const std::array<Complex, 14>& laurent() const { return c_; }

 private:
  void init_series();

  Complex g2_, g3_;
  Lattice lat_;
  Complex b1_, b2_;
  double wmin_ = 0.0;
  std::array<Complex, 14> c_{};
};

Complex wp(Complex z, const Invariants& inv);
Complex wp_prime(Complex z, const Invariants& inv);

/// p(z; omega1, omega2) = p(z/omega1; 1, tau) / omega1^2.
Complex wp_rescaled(Complex z, const Lattice& lat);

/// Halphen h_alpha(u) = sqrt(p(u) - e_alpha), alpha in 1..3.
Complex halphen_h(int alpha, Complex u, const Invariants& inv);

struct JacobiTrio {
  Complex cs, ds, ns;
  Complex k2;
};

/// cs, ds, ns at z = u sqrt(e1 - e3) with modulus k^2 = (e2 - e3)/(e1 - e3).
JacobiTrio jacobi_from_wp(Complex u, const Invariants& inv);

}  // namespace ellflow
