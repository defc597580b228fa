#include "ellflow/profiles.hpp"

#include <cmath>
#include <limits>

#include "ellflow/error.hpp"
#include "ellflow/hypergeometric.hpp"

namespace ellflow {

ProfileFunction make_profile(std::function<double(double)> f, std::string label, double step) {
  ProfileFunction p;
  p.eval = f;
  p.derivative = [f, step](double x) {
    double h = step * std::max(1.0, std::abs(x));
    double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
  };
  p.label = std::move(label);
  return p;
}

Family parse_family(std::string_view s) {
  if (s == "1") return Family::Periodic1;
  if (s == "2a") return Family::Periodic2a;
  if (s == "2b") return Family::Bump2b;
  if (s == "2c") return Family::Bump2c;
  if (s == "3") return Family::Kink3;
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + std::string(s) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Periodic1: return "1";
    case Family::Periodic2a: return "2a";
    case Family::Bump2b: return "2b";
    case Family::Bump2c: return "2c";
    case Family::Kink3: return "3";
  }
  return "?";
}

double row1_g3(double C, G3Convention conv) {
  double k = conv == G3Convention::Integral ? C : C * C;
  return 8.0 / 27.0 + 4.0 / 3.0 * k * k;
}

Table3Profile::Table3Profile(Family family, double C, double k0, double e0, G3Convention conv, RootBranch branch)
    : family_(family), C_(C), k0_(k0), e0_(e0), conv_(conv), branch_(branch) {
  if (!std::isfinite(C) || !std::isfinite(k0)) throw Error(ErrorKind::InvalidArgument, "constants must be finite");
  if (family == Family::Periodic1) {
    if (conv == G3Convention::Integral && C < 0.0)
      throw Error(ErrorKind::NegativeRadicand, "C must be non-negative under the integral convention");
    if (C == 0.0) return;
    inv_ = {4.0 / 3.0, row1_g3(C, conv)};
  } else {
    if (!(C > 0.0)) throw Error(ErrorKind::InvalidArgument, "family requires C > 0");
    if (family != Family::Periodic2a && k0 == 0.0) throw Error(ErrorKind::InvalidArgument, "k0 must be nonzero");
    switch (family) {
      case Family::Periodic2a: inv_ = {0.0, 4.0 * C * C / 3.0}; break;
      case Family::Bump2b:
      case Family::Kink3: inv_ = {0.0, 4.0 * C * C / (3.0 * k0 * k0)}; break;
      case Family::Bump2c: {
        double need = 1.0 / (12.0 * k0 * k0);
        if (std::isnan(e0)) e0_ = need;
        else if (std::abs(e0 - need) > 1e-10 * std::max(1.0, std::abs(need)))
          throw Error(ErrorKind::IncompatibleConstants, "family 2c needs e0 = 1/(12 k0^2)");
        inv_ = {12.0 * e0_ * e0_, -8.0 * e0_ * e0_ * e0_ + 16.0 * C * C * e0_};
        break;
      }
      default: break;
    }
  }
  wp_ = std::make_shared<const WeierstrassP>(inv_);
}

double Table3Profile::real_wp(double z, double& dp) const {
  try {
    auto [p, d] = wp_->value_and_derivative(Complex(z, 0.0));
    dp = d.real();
    return p.real();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PoleAtLatticePoint) throw;
    dp = 0.0;
    return std::numeric_limits<double>::infinity();
  }
}

namespace {

// a = amp / sqrt(D), a' = -amp D' / (2 D^{3/2})
std::pair<double, double> inv_sqrt(double amp, double D, double dD) {
  if (std::isinf(D)) return {0.0, 0.0};
  if (!(D > 0.0)) throw Error(ErrorKind::NegativeRadicand, "profile radicand is not positive");
  double s = std::sqrt(D);
  return {amp / s, -0.5 * amp * dD / (D * s)};
}

}  // namespace

double Table3Profile::sign_at(double zeta) const {
  double w = wp_->lattice().omega1.real();
  double cell = std::floor((family_ == Family::Bump2b ? std::abs(zeta) : zeta) / w);
  return std::fmod(cell, 2.0) == 0.0 ? 1.0 : -1.0;
}

std::pair<double, double> Table3Profile::value_and_derivative(double r) const {
  if (!std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "non-finite argument");
  if (!wp_) return {0.0, 0.0};
  double zeta = 0.0;
  auto [a, da] = magnitude(r, zeta);
  if (branch_ == RootBranch::Positive) return {a, da};
  if (a == 0.0 && da == 0.0 && std::isinf(zeta)) {
    // exactly on a double zero of H: slope of the smooth branch from its neighbours
    double h = 1e-7 * std::max(1.0, std::abs(r));
    double zl = 0.0, zr = 0.0;
    double al = magnitude(r - h, zl).first * sign_at(zl);
    double ar = magnitude(r + h, zr).first * sign_at(zr);
    return {0.0, (ar - al) / (2.0 * h)};
  }
  double s = sign_at(zeta);
  return {s * a, s * da};
}

// |a| and |a|' together with the inner variable zeta; zeta = inf flags a pole of p.
std::pair<double, double> Table3Profile::magnitude(double r, double& zeta) const {
  double dp = 0.0;
  const double pole = std::numeric_limits<double>::infinity();
  switch (family_) {
    case Family::Periodic1: {
      zeta = r;
      double amp = conv_ == G3Convention::Integral ? std::sqrt(C_) : C_;
      double p = real_wp(r, dp);
      if (std::isinf(p)) zeta = pole;
      return inv_sqrt(amp, p + 1.0 / 3.0, dp);
    }
    case Family::Periodic2a: {
      zeta = r;
      double p = real_wp(r, dp);
      if (std::isinf(p)) zeta = pole;
      return inv_sqrt(std::sqrt(C_), p, dp);
    }
    case Family::Bump2b: {
      double amp = 3.0 * std::abs(k0_) * std::sqrt(C_);
      zeta = 0.0;
      if (r == 0.0) return {amp, 0.0};
      double cr = std::cbrt(r);
      double z = 3.0 * k0_ * cr;
      zeta = z;
      double W, dW;
      if (std::abs(z) < 0.25 * wp_->min_period()) {
        // z^2 p(z) from its Laurent series avoids the cancellation in 2 z p + z^2 p'
        const auto& c = wp_->laurent();
        W = 1.0, dW = 0.0;
        double z2 = z * z, zp = z2;
        for (std::size_t k = 2; k < c.size(); ++k) {
          zp *= z2;  // z^(2k)
          W += c[k].real() * zp;
          dW += 2.0 * k * c[k].real() * zp / z;
        }
      } else {
        double p = real_wp(z, dp);
        if (std::isinf(p)) {
          zeta = pole;
          return {0.0, 0.0};
        }
        W = z * z * p;
        dW = 2.0 * z * p + z * z * dp;
      }
      auto [a, da] = inv_sqrt(amp, W, dW);
      return {a, da * k0_ / (cr * cr)};
    }
    case Family::Bump2c: {
      if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "family 2c is defined for r > 0");
      zeta = k0_ * std::log(r);
      double p = real_wp(zeta, dp);
      if (std::isinf(p)) {
        zeta = pole;
        return {0.0, 0.0};
      }
      return inv_sqrt(std::sqrt(C_), r * (p - e0_), (p - e0_) + k0_ * dp);
    }
    case Family::Kink3: {
      double q = 1.0 + r * r;
      double z = k0_ * r * hyp2f1(0.5, 5.0 / 6.0, 1.5, -r * r);
      zeta = z;
      double p = real_wp(z, dp);
      if (std::isinf(p)) {
        zeta = pole;
        return {0.0, 0.0};
      }
      double q13 = std::cbrt(q);
      double D = q13 * p;
      double dD = (2.0 * r / 3.0) / (q13 * q13) * p + q13 * dp * k0_ * std::pow(q, -5.0 / 6.0);
      return inv_sqrt(std::sqrt(C_), D, dD);
    }
  }
  return {0.0, 0.0};
}

double table3_profile(Family family, double C, double k0, double e0, double r) {
  return Table3Profile(family, C, k0, e0).value(r);
}

Rank3Solution::Rank3Solution(const Rank3Config& cfg) : cfg_(cfg) {
  for (int i = 0; i < 3; ++i) {
    const Vec3& e = cfg.triad[i];
    if (std::abs(norm(e) - 1.0) > 1e-12) throw Error(ErrorKind::NotUnitVector, "triad vectors must be unit");
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(dot(e, cfg.triad[j]) + 1.0 / cfg.med.kappa) > 1e-10)
        throw Error(ErrorKind::InfeasibleAngle, "triad violates the pairwise cosine -1/kappa");
    if (cfg.C[i] != 0.0)
      profiles_[i] =
          std::make_shared<const Table3Profile>(cfg.family, cfg.C[i], cfg.k0, cfg.e0, cfg.convention, cfg.branch);
  }
}

BranchFamily Rank3Solution::branch(int i, const Vec3& x) const {
  double c = dot(cfg_.triad[i], x);
  double k = 1.0 + cfg_.med.kappa;
  auto prof = profiles_[i];
  BranchFamily fam;
  fam.phi = [prof, c, k](double r, double t) { return prof ? c - k * prof->value(r) * t : c; };
  fam.phi_r = [prof, k](double r, double t) { return prof ? -k * prof->value_and_derivative(r).second * t : 0.0; };
  return fam;
}

double Rank3Solution::solve_component(int i, double t, const Vec3& x) const {
  double c = dot(cfg_.triad[i], x);
  const Table3Profile* prof = profiles_[i].get();
  if (!prof || t == 0.0) return c;
  double k = (1.0 + cfg_.med.kappa) * t;
  auto phi = [prof, c, k](double r) {
    auto [a, da] = prof->value_and_derivative(r);
    return std::make_pair(c - k * a, -k * da);
  };
  return solve_scalar(phi, c).r;
}

Rank3Point Rank3Solution::eval(double t, const Vec3& x) const {
  Rank3Point out;
  out.state.a = 0.0;
  out.state.u = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    out.r[i] = solve_component(i, t, x);
    if (!profiles_[i]) continue;
    double ai = profiles_[i]->value(out.r[i]);
    out.state.a += ai;
    out.state.u = out.state.u + (cfg_.med.kappa * ai) * cfg_.triad[i];
  }
  return out;
}

Rank3Point rank3_eval(const Rank3Config& cfg, double t, const Vec3& x) { return Rank3Solution(cfg).eval(t, x); }

FlowState rank1_entropic(const ProfileFunction& profile, const Vec3& e, const Vec3& Cvec, const MediumParams& med, double t,
                         const Vec3& x) {
  if (std::abs(norm(e) - 1.0) > 1e-12) throw Error(ErrorKind::NotUnitVector, "direction must have unit length");
  const double k = 1.0 + med.kappa;
  const double ec = dot(e, Cvec), ex = dot(e, x);
  double r = -ex;
  if (t != 0.0) {
    auto phi = [&](double s) { return std::make_pair((k * profile.eval(s) + ec) * t - ex, k * profile.derivative(s) * t); };
    r = solve_scalar(phi, -ex + (k * profile.eval(-ex) + ec) * t).r;
  }
  double p = profile.eval(r);
  FlowState st;
  st.a = p;
  st.u = (med.kappa * p) * e + Cvec;
  return st;
}

FlowState rank1_acoustic(const ProfileFunction& u1, const ProfileFunction& u2, const Vec3& e, const Vec3& m, double C,
                         double a0, double t, const Vec3& x) {
  Vec3 n = cross(e, m);
  if (std::abs(n[2]) <= 1e-14 * std::max(1.0, norm(e) * norm(m)))
    throw Error(ErrorKind::DegenerateProjection, "e1 m2 - e2 m1 vanishes");
  double r = C * t - dot(x, n);
  FlowState st;
  st.a = a0;
  double v1 = u1.eval(r), v2 = u2.eval(r);
  st.u = {v1, v2, (C - n[0] * v1 - n[1] * v2) / n[2]};
  return st;
}

}  // namespace ellflow
