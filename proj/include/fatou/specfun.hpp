#pragma once

#include <complex>

namespace fatou::specfun {

using Complex = std::complex<double>;

// Gamma(z) for complex z, poles excluded.  Lanczos approximation (g = 7,
// nine coefficients) for Re z >= 0.5, Euler reflection otherwise.
// Relative accuracy is ~2e-13 over Re z in [-10, 50], |Im z| <= 50.
// Throws std::domain_error at the poles z = 0, -1, -2, ...
Complex gamma_complex(Complex z);

// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
// sphere_area(1) = 2 (two points), sphere_area(2) = 2 pi, sphere_area(3) = 4 pi.
double sphere_area(int n);

// Lebesgue volume of the unit ball in R^n: sphere_area(n) / n.
double ball_volume(int n);

// Euler Beta, B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b).
// Requires Re a > 0 and Re b > 0 (the integral-representation domain).
Complex beta_complex(Complex a, Complex b);

// Frequently needed together; computed once and passed around.
struct DimensionConstants {
  int n = 1;
  double sphere = 2.0;  // omega_{n-1}
  double ball = 2.0;    // m(B(0,1))
};

DimensionConstants dimension_constants(int n);

}  // namespace fatou::specfun
