#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fatou/kernels.hpp"
#include "fatou/measures.hpp"

namespace fatou::multconv {

using Complex = std::complex<double>;

// Function on the multiplicative half line ((0,inf), ds/s).
struct HalfLineProfile {
  std::string name;
  std::function<Complex(double)> eval;  // s > 0
  bool integrable = true;               // against ds/s
  double oscillation_freq = 0.0;        // log-coordinate phase rate hint
};

// f *_(0,inf) g (t) = \int_0^inf f(s) g(t/s) ds/s.
Complex mult_convolve(const HalfLineProfile& f, const HalfLineProfile& g,
                      double t, double tol = 1e-9);

// H(t) = 0 on (0,1), n t^{-n} on [1,inf); unit ds/s integral,
// transform n/(n+iy).
HalfLineProfile H_kernel(int n);

enum class GVariant {
  normalized,  // g(s) = n m(B(0,1)) s^{-n} phi(1/s): unit ds/s integral
               // for unit-mass kernels
  raw          // g(s) = s^{-n} phi(1/s): ds/s integral = mass/omega_{n-1}
};
HalfLineProfile g_of_kernel(const kernels::RadialKernel& k, GVariant v);

// Residual of the exchange identity (H * v)(r) = (M * g)(r), where
// v(t) = mu*phi_t(0), M is the mean ratio of mu, and g the normalized
// variant above.  Each side is integrated independently: v over a dense
// cached tabulation, M over a tabulation when it is smooth and directly
// otherwise (atoms make M jump and a support cutoff makes it kink, so those
// measures are integrated piecewise with the radii at panel endpoints).
// The measure must have both sides finite -- restrict it to a ball first
// unless it is already bounded in the mean (an atom at the center makes
// both sides infinite).
struct HIdentityReport {
  double max_residual = 0.0;
  double r_at_max = 0.0;
};
HIdentityReport check_H_identity(const measures::RadialMeasure& mu,
                                 const kernels::RadialKernel& k,
                                 const std::vector<double>& r_grid);

// Monotone sandwich: with f1, f2 unit cosine-squared bumps in log
// coordinates supported on [1,gamma] and [1/gamma,1],
//   gamma^{-n} (M*f1)(r)  <=  M(r)  <=  gamma^n (M*f2)(r)
// pointwise, up to 1e-9 slack.  worst_margin is the smallest slack observed
// (negative = violated).
struct SandwichReport {
  bool holds = false;
  double worst_margin = 0.0;
  double r_at_worst = 0.0;
};
SandwichReport sandwich_bounds(const measures::RadialMeasure& mu, double gamma,
                               const std::vector<double>& r_grid);

// Bounded radial function on R^n (the boundary-data family).
struct BoundedRadialFunction {
  int dim = 1;
  std::string name;
  std::function<Complex(double)> profile;
  double bound = 1.0;  // sup |f|
  bool real_valued = true;
  double oscillation_freq = 0.0;
};

// ids: f:const:<c> | f:plateau | f:logmode:<y0> | f:invlin
//   plateau: 3 + (1+r)^{-1/2}   (limit 3 at infinity, slow approach)
//   logmode: r^{i y0}           (|f| = 1, no radial limit at 0 or infinity)
//   invlin:  (1+r)^{-1}
BoundedRadialFunction bounded_from_id(const std::string& id, int n);

// f_0(r) = integral of f over the sphere of radius r about the evaluation
// point = omega_{n-1} f(r) for the radial family supported here.
Complex spherical_average(const BoundedRadialFunction& f, double r);

// f * phi_t(center) = omega_{n-1} \int f(r) t^{-n} phi(r/t) r^{n-1} dr;
// equals the multiplicative convolution (f_0 * g_raw)(t).
Complex bounded_convolution(const BoundedRadialFunction& f,
                            const kernels::RadialKernel& k, double t,
                            double tol = 1e-9);

}  // namespace fatou::multconv
