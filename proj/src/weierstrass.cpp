#include "ellflow/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ellflow/error.hpp"
#include "ellflow/modular.hpp"

namespace ellflow {

bool Invariants::degenerate() const {
  double scale = std::max(std::abs(g2 * g2 * g2), 27.0 * g3 * g3);
  if (scale == 0.0) return true;
  return std::abs(discriminant()) <= 1e-12 * scale;
}

Lattice make_lattice(Complex omega1, Complex omega2) {
  if (omega1 == Complex(0.0)) throw Error(ErrorKind::DegenerateLattice, "omega1 is zero");
  Complex tau = omega2 / omega1;
  if (!(tau.imag() > 0.0)) throw Error(ErrorKind::DegenerateLattice, "Im(omega2/omega1) must be positive");
  return {omega1, omega2, tau};
}

namespace {

Complex polish_root(Complex t, double g2, double g3) {
  for (int i = 0; i < 3; ++i) {
    Complex f = 4.0 * t * t * t - g2 * t - g3;
    Complex df = 12.0 * t * t - g2;
    if (std::abs(df) < 1e-300) break;
    Complex nt = t - f / df;
    if (!is_finite(nt)) break;
    t = nt;
  }
  return t;
}

}  // namespace

CubicRoots cubic_roots(const Invariants& inv) {
  const double g2 = inv.g2, g3 = inv.g3;
  if (g2 == 0.0 && g3 == 0.0) return {0.0, 0.0, 0.0};
  // t^3 + p t + q = 0
  const double p = -g2 / 4.0, q = -g3 / 4.0;
  const double disc = inv.discriminant();
  if (disc > 0.0) {
    double r = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    double theta = std::acos(arg) / 3.0;
    std::array<double, 3> t{r * std::cos(theta), r * std::cos(theta - 2.0 * kPi / 3.0),
                            r * std::cos(theta - 4.0 * kPi / 3.0)};
    for (double& x : t) x = polish_root(x, g2, g3).real();
    std::sort(t.begin(), t.end(), std::greater<>());
    double mid = -(t[0] + t[2]);
    if (std::abs(4.0 * mid * mid * mid - g2 * mid - g3) <= std::abs(4.0 * t[1] * t[1] * t[1] - g2 * t[1] - g3))
      t[1] = mid;
    return {t[0], t[1], t[2]};
  }
  double sq = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
  double real = std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq);
  real = polish_root(real, g2, g3).real();
  // remaining pair solves t^2 + real t + (real^2 + p) = 0
  double im = 0.5 * std::sqrt(std::max(0.0, 3.0 * real * real + 4.0 * p));
  Complex e1 = polish_root(Complex(-real / 2.0, im), g2, g3);
  e1 = Complex(-real / 2.0, std::abs(e1.imag()));
  return {e1, real, std::conj(e1)};
}

double elliptic_k(double m) {
  if (!(m < 1.0)) throw Error(ErrorKind::NonConvergent, "K(m) diverges for m >= 1");
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

Lattice periods_from_invariants(const Invariants& inv) {
  if (inv.degenerate()) throw Error(ErrorKind::DegenerateLattice, "g2^3 - 27 g3^2 vanishes");
  CubicRoots r = cubic_roots(inv);
  if (inv.discriminant() > 0.0) {
    double e1 = r.e1.real(), e2 = r.e2.real(), e3 = r.e3.real();
    double k2 = (e2 - e3) / (e1 - e3);
    double s = std::sqrt(e1 - e3);
    Complex w1 = 2.0 * elliptic_k(k2) / s;
    Complex w2 = Complex(0.0, 2.0 * elliptic_k(1.0 - k2) / s);
    return make_lattice(w1, w2);
  }
  double e2 = r.e2.real();
  double h2 = std::abs(r.e2 - r.e1);
  double m = 0.5 - 0.75 * e2 / h2;
  double s = std::sqrt(h2);
  Complex w1 = 2.0 * elliptic_k(m) / s;
  Complex w2 = 0.5 * w1 + Complex(0.0, elliptic_k(1.0 - m) / s);
  return make_lattice(w1, w2);
}

std::pair<Complex, Complex> invariants_from_lattice(const Lattice& lat) {
  ReducedBasis rb = reduce_basis(lat.omega1, lat.omega2);
  Complex x = kPi / rb.w1;
  Complex x2 = x * x;
  Complex x4 = x2 * x2;
  Complex g2 = (4.0 / 3.0) * x4 * eisenstein_e4(rb.map.tau);
  Complex g3 = (8.0 / 27.0) * x4 * x2 * eisenstein_e6(rb.map.tau);
  return {g2, g3};
}

WeierstrassP::WeierstrassP(const Invariants& inv)
    : g2_(inv.g2), g3_(inv.g3), lat_(periods_from_invariants(inv)) {
  init_series();
}

WeierstrassP::WeierstrassP(const Lattice& lat) : lat_(make_lattice(lat.omega1, lat.omega2)) {
  auto [g2, g3] = invariants_from_lattice(lat_);
  g2_ = g2;
  g3_ = g3;
  init_series();
}

void WeierstrassP::init_series() {
  ReducedBasis rb = reduce_basis(lat_.omega1, lat_.omega2);
  b1_ = rb.w1;
  b2_ = rb.w2;
  wmin_ = std::min(std::abs(b1_), std::abs(b2_));
  c_.fill(0.0);
  c_[2] = g2_ / 20.0;
  c_[3] = g3_ / 28.0;
  for (std::size_t k = 4; k < c_.size(); ++k) {
    Complex s = 0.0;
    for (std::size_t m = 2; m <= k - 2; ++m) s += c_[m] * c_[k - m];
    c_[k] = 3.0 / double((2 * k + 1) * (k - 3)) * s;
  }
}

Complex WeierstrassP::reduce(Complex z) const {
  Complex tau = b2_ / b1_;
  Complex w = z / b1_;
  double y = std::round(w.imag() / tau.imag());
  double x = std::round(w.real() - y * tau.real());
  Complex best = z;
  double best_abs = std::numeric_limits<double>::infinity();
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      Complex cand = z - ((x + dx) * b1_ + (y + dy) * b2_);
      double a = std::abs(cand);
      if (a < best_abs) best_abs = a, best = cand;
    }
  }
  return best;
}

std::pair<Complex, Complex> WeierstrassP::value_and_derivative(Complex z) const {
  if (!is_finite(z)) throw Error(ErrorKind::InvalidArgument, "non-finite argument");
  Complex w = reduce(z);
  if (std::abs(w) <= 1e-12 * wmin_) throw Error(ErrorKind::PoleAtLatticePoint, "argument is a lattice point");
  int n = 0;
  while (std::abs(w) > 0.125 * wmin_) {
    w *= 0.5;
    ++n;
  }
  Complex w2 = w * w;
  // Laurent sum: p = 1/w^2 + sum_k c_k w^(2k-2), p' = -2/w^3 + sum_k (2k-2) c_k w^(2k-3)
  Complex p = 0.0, dp = 0.0;
  Complex wpow = w2;  // w^(2k-2) for k = 2
  for (std::size_t k = 2; k < c_.size(); ++k) {
    Complex term = c_[k] * wpow;
    p += term;
    dp += double(2 * k - 2) * term / w;
    wpow *= w2;
  }
  p += 1.0 / w2;
  dp += -2.0 / (w2 * w);
  for (int i = 0; i < n; ++i) {
    Complex pp = p * p;
    Complex dd = 6.0 * pp - 0.5 * g2_;
    Complex num = (pp + 0.25 * g2_) * (pp + 0.25 * g2_) + 2.0 * g3_ * p;
    Complex den = 4.0 * pp * p - g2_ * p - g3_;
    Complex dp3 = dp * dp * dp;
    Complex ndp = -dp + dd * (12.0 * p * dp * dp - dd * dd) / (4.0 * dp3);
    p = num / den;
    dp = ndp;
  }
  if (!is_finite(p) || !is_finite(dp)) throw Error(ErrorKind::PoleAtLatticePoint, "evaluation overflowed near a pole");
  return {p, dp};
}

Complex wp(Complex z, const Invariants& inv) { return WeierstrassP(inv).value(z); }

Complex wp_prime(Complex z, const Invariants& inv) { return WeierstrassP(inv).derivative(z); }

Complex wp_rescaled(Complex z, const Lattice& lat) {
  Lattice unit = make_lattice(1.0, lat.tau);
  Complex w1 = lat.omega1;
  return WeierstrassP(unit).value(z / w1) / (w1 * w1);
}

namespace {

// Index (0-based) of the root reached by p on the real half period.
int real_axis_root(const Invariants& inv) { return inv.discriminant() > 0.0 ? 0 : 1; }

}  // namespace

Complex halphen_h(int alpha, Complex u, const Invariants& inv) {
  if (alpha < 1 || alpha > 3) throw Error(ErrorKind::InvalidArgument, "alpha must be 1, 2 or 3");
  if (inv.degenerate()) throw Error(ErrorKind::DegenerateLattice, "degenerate invariants");
  CubicRoots r = cubic_roots(inv);
  std::array<Complex, 3> e{r.e1, r.e2, r.e3};
  auto [p, dp] = WeierstrassP(inv).value_and_derivative(u);
  int fixed = real_axis_root(inv);
  int idx = alpha - 1;
  if (idx != fixed) return std::sqrt(p - e[idx]);
  Complex others = 1.0;
  for (int j = 0; j < 3; ++j)
    if (j != fixed) others *= std::sqrt(p - e[j]);
  if (std::abs(others) == 0.0) return std::sqrt(p - e[idx]);
  return -dp / (2.0 * others);
}

JacobiTrio jacobi_from_wp(Complex u, const Invariants& inv) {
  if (inv.degenerate()) throw Error(ErrorKind::DegenerateLattice, "degenerate invariants");
  CubicRoots r = cubic_roots(inv);
  Complex d = r.e1 - r.e3;
  if (std::abs(d) == 0.0) throw Error(ErrorKind::DegenerateLattice, "e1 == e3");
  Complex s = std::sqrt(d);
  JacobiTrio out;
  out.cs = halphen_h(1, u, inv) / s;
  out.ds = halphen_h(2, u, inv) / s;
  out.ns = halphen_h(3, u, inv) / s;
  out.k2 = (r.e2 - r.e3) / d;
  return out;
}

}  // namespace ellflow
