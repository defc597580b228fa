#include "ellflow/hypergeometric.hpp"

#include <cmath>

#include "ellflow/error.hpp"
#include "ellflow/holonomic.hpp"

namespace ellflow {

namespace {

void check_lower(double c) {
  if (c <= 0.0 && c == std::floor(c)) throw Error(ErrorKind::PoleInC, "lower parameter is a non-positive integer");
}

Complex series(const std::vector<double>& a, const std::vector<double>& b, Complex x) {
  return pfq_series_data<double>(a, b, x, 1)[0];
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-8; }

// Connection formula around x = 1 for non-integer c - a - b.
Complex around_one(double a, double b, double c, Complex x) {
  Complex y(1.0 - x.real(), -x.imag());
  double d = c - a - b;
  double A = std::tgamma(c) * std::tgamma(d) * rgamma(c - a) * rgamma(c - b);
  double B = std::tgamma(c) * std::tgamma(-d) * rgamma(a) * rgamma(b);
  Complex out = A * series({a, b}, {1.0 - d}, y);
  if (B != 0.0) out += B * std::pow(y, d) * series({c - a, c - b}, {1.0 + d}, y);
  return out;
}

}  // namespace

Complex hyp2f1(double a, double b, double c, Complex x) {
  check_lower(c);
  if (!is_finite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite argument");
  if (x == Complex(1.0, 0.0)) {
    if (c - a - b <= 0.0) throw Error(ErrorKind::NonConvergent, "2F1 diverges at x = 1");
    return std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
  }
  if (std::abs(x) <= 0.7) return series({a, b}, {c}, x);
  if (std::abs(1.0 - x) <= 0.3 && !near_integer(c - a - b)) return around_one(a, b, c, x);
  if (x.real() < 0.5) {
    Complex y = x / (x - 1.0);
    if (std::abs(y) <= 0.7) return std::pow(1.0 - x, -a) * series({a, c - b}, {c}, y);
  }
  return pfq_continued<double>({a, b}, {c}, x);
}

double hyp2f1(double a, double b, double c, double x) {
  if (x > 1.0 || (x == 1.0 && c - a - b <= 0.0)) throw Error(ErrorKind::NonConvergent, "real argument on or beyond the branch point");
  return hyp2f1(a, b, c, Complex(x, 0.0)).real();
}

Complex hyp3f2(double a1, double a2, double a3, double b1, double b2, Complex x) {
  check_lower(b1);
  check_lower(b2);
  if (!(std::abs(x) < 1.0)) throw Error(ErrorKind::NonConvergent, "3F2 series needs |x| < 1");
  if (std::abs(x) <= 0.9) return series({a1, a2, a3}, {b1, b2}, x);
  return pfq_continued<double>({a1, a2, a3}, {b1, b2}, x);
}

Complex hyp3f2_continued(double a1, double a2, double a3, double b1, double b2, Complex x) {
  check_lower(b1);
  check_lower(b2);
  return pfq_continued<double>({a1, a2, a3}, {b1, b2}, x);
}

}  // namespace ellflow
