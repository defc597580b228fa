#pragma once

#include <string>

#include "ellflow/complex.hpp"
#include "ellflow/profiles.hpp"

namespace ellflow {

enum class ReductionKind { DP1, DL31, DK12L23, DK12L1K13 };

struct ReductionCase {
  ReductionKind kind = ReductionKind::DP1;
  double m = 0.0;  // DK12L23 only: 0, 4/3 or 2

  static ReductionCase dk12l23(double m);
  std::string label() const;
};

/// Fourth-order centred differences of f at x with step h.
struct Derivatives {
  double f, d1, d2;
};
Derivatives central_derivatives(const std::function<double(double)>& f, double x, double h);

/// |H'' - rhs(H, H', xi)| with derivatives from the five-point stencil.
/// h <= 0 picks 1e-3 * max(1, |xi|).
double kg_reduction_residual(const ReductionCase& rc, const ProfileFunction& H, double xi, double h = 0.0);

struct FirstIntegralConstants {
  double e0 = 0.0, c0 = 0.0, Kprime = 0.0, k1 = 1.0;
};

/// |(1/4) G g^2 ((gH)')^2/(gH) - (c0/4)(gH)^3 - 3 e0 gH - K'| with the
/// case-specific G(xi), g(xi).
double first_integral_residual(const ReductionCase& rc, const ProfileFunction& H, const FirstIntegralConstants& k,
                               double xi, double h = 0.0);

/// Closed-form solution H(xi) of the reduced equation for the given case.
ProfileFunction reduced_ode_solution(const ReductionCase& rc, double C, double k0 = 1.0);

/// Constants (e0, c0, K', k1) under which the first integral holds for reduced_ode_solution.
FirstIntegralConstants first_integral_normalization(const ReductionCase& rc, double C, double k0 = 1.0);

/// |U'^2 - c0 U^4 - 12 e0 U^2 - 4 K' U|
Complex autonomous_residual(Complex U, Complex dU, double c0, double e0, double Kprime);

/// U = K'/(p(zeta) - e0) with g2 = 12 e0^2, g3 = -8 e0^3 - c0 K'^2; returns (U, U').
std::pair<Complex, Complex> elliptic_first_integral_solution(double c0, double e0, double Kprime, Complex zeta);

/// K' = 0: 1/U = A sin, A cos, A sinh or A cosh depending on the signs of c0 and e0.
/// Complex amplitudes are allowed so that every sign pattern has a solution.
std::pair<Complex, Complex> trigonometric_first_integral_solution(double c0, double e0, double zeta, bool cosine = false);

}  // namespace ellflow
