#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fatou::kernels {

using Complex = std::complex<double>;

// Reference into the transform module's closed-form registry.  scale and
// dilation follow the kernel through normalize() and dilate():
//   transform(c * dilate(k, a), y) = c * a^{iy} * transform(k, y).
struct ClosedFormRef {
  std::string id;                 // "gaussian" | "ball" | "power" | "exp" | "counterexample"
  std::vector<Complex> params;
  Complex scale{1.0, 0.0};
  double dilation = 1.0;
};

// Radial kernel phi(x) = profile(|x|) on R^dim.  The boolean fields are
// registry claims; scenarios and checks verify them where a statement
// depends on them rather than trusting the flag blindly.
struct RadialKernel {
  int dim = 1;
  std::string name;
  std::function<Complex(double)> profile;  // defined for r >= 0
  bool real_valued = true;
  bool monotone_decreasing = false;
  bool strictly_positive = false;
  // For complex profiles, the log-coordinate phase rate (quadrature hint).
  double oscillation_freq = 0.0;
  // Hard cutoff: profile(r) = 0 for every r > support_radius.  Integrators
  // place the jump at an integration endpoint, where the embedded
  // Gauss-Kronrod error estimate is reliable; a jump interior to a panel can
  // fool it.
  std::optional<double> support_radius;
  std::optional<ClosedFormRef> closed_form;
};

// Value of a real kernel's profile; throws std::logic_error if the kernel is
// complex-valued.
double real_profile(const RadialKernel& k, double r);

// phi_t(x) = t^{-dim} phi(x/t).  Mass preserving.  Requires t > 0.
RadialKernel dilate(const RadialKernel& k, double t);

// \int_{R^dim} phi dx by radial quadrature (real kernels).
double mass(const RadialKernel& k, double tol = 1e-11);

// Scales to unit mass; throws std::domain_error if the mass is zero, negative
// or non-finite.
RadialKernel normalize(const RadialKernel& k, double tol = 1e-11);

// ---- catalogue ----------------------------------------------------------

// Poisson kernel for the upper half-space at height 1:
// P(x) = c_n (1+|x|^2)^{-(n+1)/2},  c_n = Gamma((n+1)/2) / pi^{(n+1)/2}.
RadialKernel poisson(int n);

// Heat kernel at time 1: w(x) = (4 pi)^{-n/2} e^{-|x|^2/4}.
RadialKernel gaussian(int n);

// Heat kernel at time t: h_t = dilate(w, sqrt t).
RadialKernel heat(int n, double t);

// Normalized indicator of the unit ball.
RadialKernel ball_indicator(int n);

// (1+r^2)^{-alpha}, unnormalized; integrable iff alpha > n/2.
RadialKernel power_kernel(int n, double alpha);

// 1 / ((1+r^2)^alpha log(2 + r^beta)); classic comparison-condition example.
// Not integrable at alpha = n/2.  Closed-form transform only for beta = 0.
RadialKernel log_damped_power(int n, double alpha, double beta);

// e^{-alpha r^beta}, alpha, beta > 0; unnormalized.
RadialKernel stretched_exponential(int n, double alpha, double beta);

// The kernel whose multiplicative spectrum vanishes at y = +-pi, +-2pi, ...:
// phi(x) = psi(|x|) / (c_psi omega_{n-1} |x|^n) with
//   psi(s) = \int_{1/e}^{e} s^n r^{n-1} (r+s)^{-2n} dr,
//   c_psi  = 2 B(n, n).
// psi has no elementary closed form; it is evaluated by quadrature to 1e-11
// and memoized on a log-spaced table with monotone cubic interpolation (the
// cached quantity is log(psi(s)/s^n), which is decreasing, so the
// interpolated profile is monotone by construction).
RadialKernel counterexample_kernel(int n);

// id grammar:
//   poisson | gaussian | heat:<t> | ball | power:<alpha> | K:<alpha>:<beta>
//   | G:<alpha>:<beta> | counterexample | hyperbolic:psi:<n>:<lambda>
// <lambda> accepts "a", "bi", "a+bi", "a-bi".  Throws std::invalid_argument
// on an unknown id or malformed parameters.
RadialKernel from_id(const std::string& id, int n);

// ---- condition checks ---------------------------------------------------

struct ComparisonReport {
  double sup_ratio = 0.0;  // estimated sup of phi_t(x)/phi(x)
  double t_at_sup = 0.0;
  double r_at_sup = 0.0;
  bool finite = true;      // false when phi vanished where phi_t did not
};

// sup over t in (0,1), |x| > 1 of phi_t(x)/phi(x), estimated on geometric
// grids (defaults below).  Ratios 0/0 count as 0.
ComparisonReport comparison_sup(const RadialKernel& k,
                                const std::vector<double>& t_grid = {},
                                const std::vector<double>& r_grid = {});

struct DecayReport {
  bool pass = false;
  std::string detail;
};

// Necessary-condition screen for integrability: r^n profile(r) must head to 0
// monotonically at both ends, with the end values below 1e-6 * |profile(1)|.
DecayReport decay_check(const RadialKernel& k);

// t in [1e-4, 1 - 1e-4], 64 points per decade.
std::vector<double> default_t_grid();
// r - 1 geometric in [1e-6, 1e4 - 1], 64 points per decade: clusters where
// the comparison ratio peaks.
std::vector<double> default_r_grid();

}  // namespace fatou::kernels
