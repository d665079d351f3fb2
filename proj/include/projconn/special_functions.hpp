#pragma once

#include "projconn/fields.hpp"
#include "projconn/jet.hpp"

namespace projconn {

// Imaginary error function erfi(x) = -i erf(ix), real for real x.
// Series for moderate arguments (all terms positive, no cancellation),
// asymptotic continuation beyond.
double erfi(double x);

Jet2d erf_jet(const Jet2d& u);
Jet4d erf_jet(const Jet4d& u);
Jet2d erfi_jet(const Jet2d& u);
Jet4d erfi_jet(const Jet4d& u);

SmoothFn1 erf_fn();
SmoothFn1 erfi_fn();

// Antiderivative Y of e^{3/(2s)} |s|^{-3/2} with base point 1 on the
// positive branch and -1 on the negative branch, once in closed form
// through erfi/erf and once by direct quadrature.  branch = +1 or -1.
ScalarField halfline_Y_closed(int branch);
ScalarField halfline_Y_quadrature(int branch, double tol = 1e-12);

// Closed-form solution of  y^2 Y1'' - (y - 3)/2 Y1' + Y1/2 = 0  on either
// half line.
ScalarField halfline_Y1_closed(int branch);

// Integrand e^{-(3 lambda / 2) arctan y} (y^2+1)^{-p} for the rotational
// family: p = 1/4 enters the metric antiderivative, p = 3/4 its companion
// second solution.
ScalarField rotational_Y(double lambda, double base = 0.0, double tol = 1e-12);
ScalarField rotational_Upsilon(double lambda, double tol = 1e-12);
ScalarField rotational_Xi(double lambda, double tol = 1e-12);

}  // namespace projconn
