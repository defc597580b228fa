#pragma once

#include "ellflow/complex.hpp"

namespace ellflow {

/// Gauss 2F1 on the principal branch. Direct series near the origin, Pfaff
/// transformation for the left half plane, ODE continuation elsewhere.
Complex hyp2f1(double a, double b, double c, Complex x);

/// Real argument; x >= 1 raises NonConvergent.
double hyp2f1(double a, double b, double c, double x);

/// 3F2 for |x| < 1; NonConvergent otherwise.
Complex hyp3f2(double a1, double a2, double a3, double b1, double b2, Complex x);

/// 3F2 continued to the whole plane minus [1, inf); points on the cut take
/// the side selected by the sign bit of Im x.
Complex hyp3f2_continued(double a1, double a2, double a3, double b1, double b2, Complex x);

}  // namespace ellflow
