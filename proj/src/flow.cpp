#include "ellflow/flow.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ellflow/error.hpp"

namespace ellflow {

MediumParams MediumParams::from_gamma(double gamma) {
  if (!(gamma > 1.0)) throw Error(ErrorKind::InvalidArgument, "adiabatic exponent must exceed 1");
  return {gamma, 2.0 / (gamma - 1.0)};
}

MediumParams MediumParams::from_kappa(double kappa) {
  if (!(kappa > 0.0)) throw Error(ErrorKind::InvalidArgument, "kappa must be positive");
  return {1.0 + 2.0 / kappa, kappa};
}

Mat4 coefficient_matrix(int j, const FlowState& state, const MediumParams& med) {
  if (j < 1 || j > 3) throw Error(ErrorKind::InvalidArgument, "axis index must be 1, 2 or 3");
  Mat4 m{};
  double uj = state.u[j - 1];
  for (int i = 0; i < 4; ++i) m[i][i] = uj;
  m[0][j] = state.a / med.kappa;
  m[j][0] = med.kappa * state.a;
  return m;
}

double dispersion(double lambda0, const Vec3& lambda, const FlowState& state) {
  double w = lambda0 + dot(state.u, lambda);
  return (w * w - state.a * state.a * dot(lambda, lambda)) * w * w;
}

double dispersion(const WaveVector& lambda, const FlowState& state, const MediumParams&) {
  return dispersion(lambda.lambda0, lambda.lambda, state);
}

double characteristic_determinant(double lambda0, const Vec3& lambda, const FlowState& state, const MediumParams& med) {
  Eigen::Matrix4d m = lambda0 * Eigen::Matrix4d::Identity();
  for (int j = 1; j <= 3; ++j) {
    Mat4 a = coefficient_matrix(j, state, med);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) += lambda[j - 1] * a[r][c];
  }
  return m.partialPivLu().determinant();
}

namespace {

void require_unit(const Vec3& e) {
  if (std::abs(norm(e) - 1.0) > 1e-12) throw Error(ErrorKind::NotUnitVector, "direction must have unit length");
}

}  // namespace

WaveVector entropic_wave_vector(const Vec3& e, double eps, const FlowState& state) {
  require_unit(e);
  if (eps != 1.0 && eps != -1.0) throw Error(ErrorKind::InvalidArgument, "eps must be +1 or -1");
  WaveVector w;
  w.lambda0 = eps * state.a + dot(state.u, e);
  w.lambda = -1.0 * e;
  w.kind = WaveKind::Entropic;
  w.direction = e;
  return w;
}

WaveVector acoustic_wave_vector(const Vec3& e, const Vec3& m, const FlowState& state) {
  require_unit(e);
  Vec3 n = cross(e, m);
  if (norm(n) <= 1e-12 * std::max(1.0, norm(m))) throw Error(ErrorKind::DegenerateDirection, "e and m are parallel");
  WaveVector w;
  w.lambda0 = dot(state.u, n);  // det(u, e, m)
  w.lambda = -1.0 * n;
  w.kind = WaveKind::Acoustic;
  w.direction = e;
  return w;
}

double riemann_invariant(const WaveVector& lambda, double t, const Vec3& x) {
  return lambda.lambda0 * t + dot(lambda.lambda, x);
}

EntropicTriad make_entropic_triad(const MediumParams& med, const Vec3& axis, double angle) {
  const double kappa = med.kappa;
  if (!(kappa >= 2.0)) throw Error(ErrorKind::InfeasibleAngle, "pairwise cosine -1/kappa needs kappa >= 2");
  // e_i.e_j = cos^2 t - sin^2 t / 2 = -1/kappa  =>  cos^2 t = (1 - 2/kappa)/3
  double c2 = std::max(0.0, (1.0 - 2.0 / kappa) / 3.0);
  double ct = std::sqrt(c2), st = std::sqrt(1.0 - c2);
  std::array<Vec3, 3> e;
  for (int i = 0; i < 3; ++i) {
    double phi = 2.0 * kPi * i / 3.0;
    e[i] = {st * std::cos(phi), st * std::sin(phi), ct};
  }
  if (angle != 0.0) {
    double n = norm(axis);
    if (n == 0.0) throw Error(ErrorKind::InvalidArgument, "rotation axis is zero");
    Eigen::Matrix3d rot = Eigen::AngleAxisd(angle, Eigen::Vector3d(axis[0] / n, axis[1] / n, axis[2] / n)).toRotationMatrix();
    for (auto& v : e) {
      Eigen::Vector3d r = rot * Eigen::Vector3d(v[0], v[1], v[2]);
      v = {r[0], r[1], r[2]};
    }
  }
  return {e[0], e[1], e[2]};
}

}  // namespace ellflow
