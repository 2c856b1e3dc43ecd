#pragma once

#include "perc/lattice.hpp"

namespace perc {

// Unit equilateral triangle with a'<1> = (0, sqrt3/2), a'<tau> = (0,0),
// a'<tau^2> = (1,0), matching build_triangle(N, 1/N).
Point triangle_vertex(int alpha);

// Rescaled distance from z to the side opposite a'<tau^alpha>.
double h_triangle(int alpha, Point z);

// Cardy's crossing function pi(eta) = C eta^(1/3) 2F1(1/3, 2/3; 4/3; eta).
double cardy_crossing(double eta);
double cardy_constant();

// Half-plane cross-ratio of a rho:1 conformal rectangle (crossing along the
// length rho), from the elliptic modulus via theta-function nome series.
double rectangle_cross_ratio(double rho);

}  // namespace perc
