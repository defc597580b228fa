#pragma once

#include <optional>

#include "ellflow/complex.hpp"
#include "ellflow/weierstrass.hpp"

namespace ellflow {

/// Continued: the closed-form zero is used for every tau, with the
/// hypergeometric factors analytically continued. Strict: only inside
/// |s| < 1 and |1 - s| < 1.
enum class FormulaDomain { Continued, Strict };

struct ZeroPair {
  Complex z0;   // zero of p(z; 1, tau), canonical representative of the pair
  Complex s;    // invariant parameter actually used (side of a cut encoded in the sign of Im)
  bool inside_disk = false;
};

ZeroPair wp_zero_hypergeometric(Complex tau, FormulaDomain mode = FormulaDomain::Continued);

/// (omega1 + omega2)/2 + 0.1 omega1
Complex default_newton_seed(const Lattice& lat);

/// Newton on p with p' as derivative; result reduced to the period cell.
Complex wp_zero_newton(const Invariants& inv, std::optional<Complex> seed = std::nullopt);
Complex wp_zero_newton(const WeierstrassP& p, Complex seed);

struct CellCoords {
  double a, b;  // z = a*w1 + b*w2
};
CellCoords cell_coordinates(Complex z, Complex w1, Complex w2);

/// Representative with coefficients in [0, 1) x [0, 1).
Complex reduce_to_cell(Complex z, Complex w1, Complex w2);

/// Of the pair +-z, the cell representative with the smaller w2 coefficient.
Complex canonical_zero(Complex z, Complex w1, Complex w2);

}  // namespace ellflow
