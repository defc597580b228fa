#include "ellflow/reductions.hpp"

#include <cmath>
#include <memory>

#include "ellflow/error.hpp"
#include "ellflow/hypergeometric.hpp"

namespace ellflow {

ReductionCase ReductionCase::dk12l23(double m) {
  if (m != 0.0 && std::abs(m - 4.0 / 3.0) > 1e-12 && m != 2.0)
    throw Error(ErrorKind::InvalidArgument, "m must be 0, 4/3 or 2");
  return {ReductionKind::DK12L23, m};
}

std::string ReductionCase::label() const {
  switch (kind) {
    case ReductionKind::DP1: return "DP1";
    case ReductionKind::DL31: return "DL31";
    case ReductionKind::DK12L23: return m == 0.0 ? "DK12L23(m=0)" : (m == 2.0 ? "DK12L23(m=2)" : "DK12L23(m=4/3)");
    case ReductionKind::DK12L1K13: return "DK12L1K13";
  }
  return "?";
}

Derivatives central_derivatives(const std::function<double(double)>& f, double x, double h) {
  double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  return {f0, (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h),
          (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)};
}

namespace {

double default_step(double xi, double h) { return h > 0.0 ? h : 1e-3 * std::max(1.0, std::abs(xi)); }

void check_stencil(const ReductionCase& rc, double xi, double h) {
  auto near = [&](double p) { return std::abs(xi - p) <= 2.0 * h * (1.0 + 1e-12); };
  if (rc.kind == ReductionKind::DK12L23 && near(0.0)) throw Error(ErrorKind::SingularPoint, "xi = 0 is singular");
  if (rc.kind == ReductionKind::DL31 && (near(0.0) || near(-1.0)))
    throw Error(ErrorKind::SingularPoint, "xi (1 + xi) = 0 is singular");
}

}  // namespace

double kg_reduction_residual(const ReductionCase& rc, const ProfileFunction& H, double xi, double h) {
  h = default_step(xi, h);
  check_stencil(rc, xi, h);
  Derivatives d = central_derivatives(H.eval, xi, h);
  if (d.f == 0.0) throw Error(ErrorKind::SingularPoint, "H vanishes");
  const double H0 = d.f, H1 = d.d1, H3 = H0 * H0 * H0;
  double rhs = H1 * H1 / (2.0 * H0);
  switch (rc.kind) {
    case ReductionKind::DP1: rhs -= 2.0 * (H0 + H3); break;
    case ReductionKind::DL31:
      rhs -= ((2.0 * xi + 1.5) * H1 + 0.375 * H0 + 2.0 * H3) / (xi * (1.0 + xi));
      break;
    case ReductionKind::DK12L23: rhs -= rc.m / xi * H1 + 2.0 * H3; break;
    case ReductionKind::DK12L1K13:
      rhs -= (7.0 / 3.0 * xi * H1 + 2.0 / 3.0 * H0 + 2.0 * H3) / (1.0 + xi * xi);
      break;
  }
  return std::abs(d.d2 - rhs);
}

double first_integral_residual(const ReductionCase& rc, const ProfileFunction& H, const FirstIntegralConstants& k,
                               double xi, double h) {
  h = default_step(xi, h);
  check_stencil(rc, xi, h);
  const double e0 = k.e0, c0 = k.c0;
  if (c0 == 0.0) throw Error(ErrorKind::IncompatibleConstants, "c0 must be nonzero");
  auto need_zero_e0 = [&] {
    if (std::abs(e0) > 1e-10) throw Error(ErrorKind::IncompatibleConstants, "this case needs e0 = 0");
  };
  std::function<double(double)> g2fn;  // g(xi)^2
  std::function<double(double)> Gfn;
  switch (rc.kind) {
    case ReductionKind::DP1:
      Gfn = [c0](double) { return -0.75 * c0; };
      g2fn = [e0, c0](double) { return 4.0 * e0 / c0; };
      break;
    case ReductionKind::DL31:
      Gfn = [c0](double x) { return -0.75 * c0 * x * (x + 1.0); };
      g2fn = [e0, c0](double x) { return -64.0 * e0 / c0 * x; };
      break;
    case ReductionKind::DK12L23: {
      Gfn = [c0](double) { return -0.75 * c0; };
      double k1 = k.k1;
      if (rc.m == 0.0) {
        need_zero_e0();
        g2fn = [k1](double) { return k1; };
      } else if (rc.m == 2.0) {
        g2fn = [e0, c0](double x) { return -16.0 * e0 / c0 * x * x; };
      } else {
        need_zero_e0();
        g2fn = [k1](double x) {
          double c = std::cbrt(x);
          return k1 * c * c * c * c;
        };
      }
      break;
    }
    case ReductionKind::DK12L1K13: {
      need_zero_e0();
      Gfn = [c0](double x) { return -0.75 * c0 * (x * x + 1.0); };
      double k1 = k.k1;
      g2fn = [k1](double x) {
        double g = k1 * std::cbrt(1.0 + x * x);
        return g * g;
      };
      break;
    }
  }
  for (double x : {xi - 2 * h, xi, xi + 2 * h})
    if (!(g2fn(x) > 0.0)) throw Error(ErrorKind::IncompatibleConstants, "g^2 must be positive");
  auto gH = [&](double x) {
    double g = std::sqrt(g2fn(x));
    return g * H.eval(x);
  };
  Derivatives d = central_derivatives(gH, xi, h);
  if (d.f == 0.0) throw Error(ErrorKind::SingularPoint, "gH vanishes");
  double lhs = 0.25 * Gfn(xi) * g2fn(xi) * d.d1 * d.d1 / d.f - 0.25 * c0 * d.f * d.f * d.f - 3.0 * e0 * d.f;
  return std::abs(lhs - k.Kprime);
}

ProfileFunction reduced_ode_solution(const ReductionCase& rc, double C, double k0) {
  if (k0 == 0.0) throw Error(ErrorKind::InvalidArgument, "k0 must be nonzero");
  auto real_wp = [](const std::shared_ptr<const WeierstrassP>& w, double z) { return w->value(Complex(z, 0.0)).real(); };
  const double k2 = k0 * k0;
  switch (rc.kind) {
    case ReductionKind::DP1: {
      auto w = std::make_shared<const WeierstrassP>(Invariants{4.0 / 3.0, 8.0 / 27.0 + 4.0 / 3.0 * C * C});
      return make_profile([=](double x) { return C / (real_wp(w, x) + 1.0 / 3.0); }, rc.label());
    }
    case ReductionKind::DL31: {
      Invariants inv{1.0 / (192.0 * k2 * k2), -1.0 / (13824.0 * k2 * k2 * k2) + 4.0 * C * C / (3.0 * k2)};
      auto w = std::make_shared<const WeierstrassP>(inv);
      return make_profile(
          [=](double x) {
            if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "real branch needs xi > 0");
            double s = std::sqrt(x + 1.0);
            double z = -2.0 * k0 * 0.5 * std::log((s + 1.0) / (s - 1.0));
            return C / std::sqrt(x) / (real_wp(w, z) - 1.0 / (48.0 * k2));
          },
          rc.label());
    }
    case ReductionKind::DK12L23: {
      if (rc.m == 0.0) {
        auto w = std::make_shared<const WeierstrassP>(Invariants{0.0, 4.0 * C * C / 3.0});
        return make_profile([=](double x) { return C / real_wp(w, x); }, rc.label());
      }
      if (rc.m == 2.0) {
        Invariants inv{1.0 / (12.0 * k2 * k2), -1.0 / (216.0 * k2 * k2 * k2) + 4.0 * C * C / (3.0 * k2)};
        auto w = std::make_shared<const WeierstrassP>(inv);
        return make_profile(
            [=](double x) {
              if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "log needs xi > 0");
              return C / (x * (real_wp(w, k0 * std::log(x)) - 1.0 / (12.0 * k2)));
            },
            rc.label());
      }
      auto w = std::make_shared<const WeierstrassP>(Invariants{0.0, 4.0 * C * C / (3.0 * k2)});
      return make_profile(
          [=](double x) {
            double c = std::cbrt(x);
            return C / (c * c) / real_wp(w, 3.0 * k0 * c);
          },
          rc.label());
    }
    case ReductionKind::DK12L1K13: {
      auto w = std::make_shared<const WeierstrassP>(Invariants{0.0, 4.0 * C * C / (3.0 * k2)});
      return make_profile(
          [=](double x) {
            double z = k0 * x * hyp2f1(0.5, 5.0 / 6.0, 1.5, -x * x);
            return C / std::cbrt(x * x + 1.0) / real_wp(w, z);
          },
          rc.label());
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown reduction");
}

FirstIntegralConstants first_integral_normalization(const ReductionCase& rc, double C, double k0) {
  const double k2 = k0 * k0;
  switch (rc.kind) {
    case ReductionKind::DP1: return {-1.0 / 3.0, -4.0 / 3.0, C, 1.0};
    case ReductionKind::DL31: return {1.0 / (48.0 * k2), -4.0 / (3.0 * k2), C, 1.0};
    case ReductionKind::DK12L23:
      if (rc.m == 0.0) return {0.0, -4.0 / 3.0, C, 1.0};
      if (rc.m == 2.0) return {1.0 / (12.0 * k2), -4.0 / (3.0 * k2), C, 1.0};
      return {0.0, -4.0 / (3.0 * k2), C, 1.0};
    case ReductionKind::DK12L1K13: return {0.0, -4.0 / (3.0 * k2), C, 1.0};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown reduction");
}

Complex autonomous_residual(Complex U, Complex dU, double c0, double e0, double Kprime) {
  Complex U2 = U * U;
  return dU * dU - c0 * U2 * U2 - 12.0 * e0 * U2 - 4.0 * Kprime * U;
}

std::pair<Complex, Complex> elliptic_first_integral_solution(double c0, double e0, double Kprime, Complex zeta) {
  Invariants inv{12.0 * e0 * e0, -8.0 * e0 * e0 * e0 - c0 * Kprime * Kprime};
  auto [p, dp] = WeierstrassP(inv).value_and_derivative(zeta);
  Complex d = p - e0;
  Complex U = checked_div(Kprime, d);
  return {U, -Kprime * dp / (d * d)};
}

std::pair<Complex, Complex> trigonometric_first_integral_solution(double c0, double e0, double zeta, bool cosine) {
  // V = 1/U solves V'^2 = 12 e0 V^2 + c0
  Complex V, dV;
  const Complex rc0 = std::sqrt(Complex(c0, 0.0));
  if (e0 < 0.0) {
    double w = std::sqrt(-12.0 * e0);
    Complex A = rc0 / w;
    V = cosine ? A * std::cos(w * zeta) : A * std::sin(w * zeta);
    dV = cosine ? -A * w * std::sin(w * zeta) : A * w * std::cos(w * zeta);
  } else if (e0 > 0.0) {
    double w = std::sqrt(12.0 * e0);
    Complex A = cosine ? std::sqrt(Complex(-c0, 0.0)) / w : rc0 / w;
    V = cosine ? A * std::cosh(w * zeta) : A * std::sinh(w * zeta);
    dV = cosine ? A * w * std::sinh(w * zeta) : A * w * std::cosh(w * zeta);
  } else {
    V = rc0 * zeta;
    dV = rc0;
  }
  Complex U = checked_div(1.0, V);
  return {U, -dV * U * U};
}

}  // namespace ellflow
