#pragma once

#include <array>

#include "ellflow/complex.hpp"

namespace ellflow {

using Mat4 = std::array<std::array<double, 4>, 4>;

struct MediumParams {
  double gamma = 1.4;
  double kappa = 5.0;

  static MediumParams from_gamma(double gamma);
  static MediumParams from_kappa(double kappa);
};

/// Sound speed a and velocity u; variables ordered (a, u1, u2, u3).
struct FlowState {
  double a = 1.0;
  Vec3 u{0.0, 0.0, 0.0};
};

enum class WaveKind { Entropic, Acoustic };

struct WaveVector {
  double lambda0 = 0.0;
  Vec3 lambda{0.0, 0.0, 0.0};
  WaveKind kind = WaveKind::Entropic;
  Vec3 direction{0.0, 0.0, 0.0};
};

struct EntropicTriad {
  Vec3 e1, e2, e3;

  const Vec3& operator[](int i) const { return i == 0 ? e1 : (i == 1 ? e2 : e3); }
};

/// Coefficient matrix of the x^j derivative, j in 1..3.
Mat4 coefficient_matrix(int j, const FlowState& state, const MediumParams& med);

/// [(l0 + u.l)^2 - a^2 |l|^2] (l0 + u.l)^2
double dispersion(const WaveVector& lambda, const FlowState& state, const MediumParams& med);
double dispersion(double lambda0, const Vec3& lambda, const FlowState& state);

/// det(l0 I + sum_i l_i A^i) by direct elimination.
double characteristic_determinant(double lambda0, const Vec3& lambda, const FlowState& state, const MediumParams& med);

WaveVector entropic_wave_vector(const Vec3& e, double eps, const FlowState& state);
WaveVector acoustic_wave_vector(const Vec3& e, const Vec3& m, const FlowState& state);

/// lambda0 t + lambda . x
double riemann_invariant(const WaveVector& lambda, double t, const Vec3& x);

/// Three unit vectors with pairwise cosine -1/kappa, symmetric about the z axis
/// and then rotated by `angle` about `axis`.
EntropicTriad make_entropic_triad(const MediumParams& med, const Vec3& axis = {0.0, 0.0, 1.0}, double angle = 0.0);

}  // namespace ellflow
