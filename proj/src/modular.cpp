#include "ellflow/modular.hpp"

#include <cmath>

#include "ellflow/error.hpp"

namespace ellflow {

namespace {

constexpr int kMaxTerms = 10000;

Complex nome(Complex tau) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorKind::NonConvergent, "Im(tau) must be positive");
  Complex q = std::exp(Complex(0.0, 2.0 * kPi) * tau);
  if (std::abs(q) >= 1.0) throw Error(ErrorKind::NonConvergent, "|q| >= 1");
  return q;
}

// 1 + coef * sum_{n>=1} n^p q^n / (1 - q^n), truncated at n_terms.
SeriesValue lambert_series(Complex tau, int n_terms, double coef, int p) {
  if (n_terms < 1) throw Error(ErrorKind::InvalidArgument, "n_terms must be >= 1");
  Complex q = nome(tau);
  Complex qn = 1.0;
  Complex sum = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    qn *= q;
    sum += std::pow(double(n), p) * qn / (1.0 - qn);
  }
  qn *= q;
  double n1 = n_terms + 1;
  double next = std::abs(coef) * std::pow(n1, p) * std::abs(qn) / std::abs(1.0 - qn);
  return {1.0 + coef * sum, 2.0 * next, n_terms};
}

Complex lambert_adaptive(Complex tau, double coef, int p) {
  Complex q = nome(tau);
  Complex qn = 1.0;
  Complex sum = 0.0;
  int quiet = 0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    qn *= q;
    Complex term = std::pow(double(n), p) * qn / (1.0 - qn);
    sum += term;
    if (std::abs(coef * term) <= 1e-17 * std::abs(1.0 + coef * sum)) {
      if (++quiet >= 3) return 1.0 + coef * sum;
    } else {
      quiet = 0;
    }
  }
  throw Error(ErrorKind::NonConvergent, "Eisenstein series did not settle within the term cap");
}

}  // namespace

ModularPoint ModularPoint::from_tau(Complex tau) { return {tau, nome(tau)}; }

SeriesValue eisenstein_e4(Complex tau, int n_terms) { return lambert_series(tau, n_terms, 240.0, 3); }
SeriesValue eisenstein_e6(Complex tau, int n_terms) { return lambert_series(tau, n_terms, -504.0, 5); }

Complex eisenstein_e4(Complex tau) { return lambert_adaptive(tau, 240.0, 3); }
Complex eisenstein_e6(Complex tau) { return lambert_adaptive(tau, -504.0, 5); }

SeriesValue modular_discriminant(Complex tau, int n_factors) {
  if (n_factors < 1) throw Error(ErrorKind::InvalidArgument, "n_factors must be >= 1");
  Complex q = nome(tau);
  Complex qn = 1.0;
  Complex prod = 1.0;
  for (int n = 1; n <= n_factors; ++n) {
    qn *= q;
    prod *= std::pow(1.0 - qn, 24);
  }
  Complex value = q * prod;
  double aq = std::abs(q);
  double tail = 24.0 * std::pow(aq, n_factors + 1) / (1.0 - aq);
  return {value, 2.0 * tail * std::abs(value), n_factors};
}

Complex modular_discriminant(Complex tau) {
  Complex q = nome(tau);
  Complex qn = 1.0;
  Complex prod = 1.0;
  int quiet = 0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    qn *= q;
    prod *= std::pow(1.0 - qn, 24);
    if (24.0 * std::abs(qn) <= 1e-17) {
      if (++quiet >= 3) return q * prod;
    } else {
      quiet = 0;
    }
  }
  throw Error(ErrorKind::NonConvergent, "discriminant product did not settle within the factor cap");
}

ReducedTau reduce_to_fundamental_domain(Complex tau) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorKind::DegenerateLattice, "Im(tau) must be positive");
  constexpr double eps = 1e-12;
  ReducedTau r{tau};
  auto apply = [&r](long a, long b, long c, long d) {
    // compose (a b; c d) after the current map
    long na = a * r.a + b * r.c, nb = a * r.b + b * r.d;
    long nc = c * r.a + d * r.c, nd = c * r.b + d * r.d;
    r.a = na, r.b = nb, r.c = nc, r.d = nd;
  };
  for (int iter = 0; iter < 10000; ++iter) {
    double n = std::ceil(r.tau.real() - 0.5 - eps);
    if (n != 0.0) {
      r.tau -= n;
      apply(1, -long(n), 0, 1);
    }
    if (std::norm(r.tau) < 1.0 - eps) {
      r.tau = -1.0 / r.tau;
      apply(0, -1, 1, 0);
      continue;
    }
    break;
  }
  if (std::abs(std::norm(r.tau) - 1.0) <= eps && r.tau.real() < 0.0) {
    r.tau = -1.0 / r.tau;
    apply(0, -1, 1, 0);
  }
  if (r.c < 0 || (r.c == 0 && r.d < 0)) r.a = -r.a, r.b = -r.b, r.c = -r.c, r.d = -r.d;
  return r;
}

ReducedBasis reduce_basis(Complex w1, Complex w2) {
  if (w1 == Complex(0.0)) throw Error(ErrorKind::DegenerateLattice, "zero period");
  Complex tau = w2 / w1;
  ReducedTau m = reduce_to_fundamental_domain(tau);
  Complex nw1 = double(m.c) * w2 + double(m.d) * w1;
  Complex nw2 = double(m.a) * w2 + double(m.b) * w1;
  return {nw1, nw2, m};
}

Complex s_parameter(Complex tau) {
  ReducedTau red = reduce_to_fundamental_domain(tau);
  Complex e4 = eisenstein_e4(red.tau);
  if (std::abs(e4) < 1e-10) throw Error(ErrorKind::E4Vanishes, "E4(tau) vanishes");
  Complex delta = modular_discriminant(red.tau);
  return 1.0 - 1728.0 * delta / (e4 * e4 * e4);
}

}  // namespace ellflow
