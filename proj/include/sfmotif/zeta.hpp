#pragma once

namespace sfmotif {

/// Riemann zeta for real s > 1, absolute error below 1e-12. Direct
/// summation of the first terms plus an Euler–Maclaurin tail.
double riemann_zeta(double s);

}  // namespace sfmotif
