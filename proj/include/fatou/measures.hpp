#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fatou/kernels.hpp"
#include "fatou/trace.hpp"

namespace fatou::measures {

using Complex = std::complex<double>;

struct Atom {
  std::vector<double> position;  // relative to the measure's center
  double mass = 0.0;
  double radius() const;  // |position|
};

// Positive measure  dmu = f(|x - center|) dx + sum_j mass_j delta_{p_j}.
// Every ball mass, mean ratio and convolution is taken about the center; an
// off-center evaluation point is handled by building the measure already
// translated (atoms move freely, the density must be radial about the new
// center to stay representable).
struct RadialMeasure {
  int dim = 1;
  std::string name;
  std::function<double(double)> density;  // radial profile, may be empty
  std::vector<Atom> atoms;
  std::optional<double> restriction_radius;  // support in the closed ball
  std::optional<double> growth_claim;  // mu(B(0,r)) = O(r^claim), r -> inf
  // quadrature hint: log-coordinate phase rate of an oscillatory density
  double oscillation_freq = 0.0;
};

// ---- registry -----------------------------------------------------------

RadialMeasure lebesgue(int n);
RadialMeasure atom_measure(int n, double mass, double distance = 0.0);
// (2 + cos(y0 log|x|)) dx: bounded mean ratio, no symmetric derivative.
RadialMeasure counterexample_measure(int n, double y0 = M_PI);
RadialMeasure affine_density(int n, double a, double b);  // (a + b|x|) dx
// max(0, 1 + |x| sin(1/|x|)) dx: wildly oscillatory but differentiable mean.
RadialMeasure rsin_density(int n);

// ids: lebesgue | atom:<mass>[:<distance>] | counterexample[:<y0>]
//    | density:affine:<a>:<b> | density:rsin | mix:demo
// Throws std::invalid_argument on unknown/malformed ids.
RadialMeasure from_id(const std::string& id, int n);

// ---- operations ---------------------------------------------------------

// mu(B(0, r)), open ball:
//   omega_{n-1} \int_0^r f(s) s^{n-1} ds + atoms with |p| < r (and inside
//   the restriction ball).
double ball_mass(const RadialMeasure& mu, double r, double tol = 1e-10);

// M(r) = mu(B(0,r)) / m(B(0,r)).
double mean_ratio(const RadialMeasure& mu, double r, double tol = 1e-10);

// Trace of mean_ratio over r_grid (ordered toward 0), classified.
trace::LimitTrace sym_derivative_trace(const RadialMeasure& mu,
                                       const std::vector<double>& r_grid,
                                       std::size_t window = 12,
                                       double tol = 1e-10);

// mu * phi_t(center) =
//   omega_{n-1} \int f(r) t^{-n} phi(r/t) r^{n-1} dr + sum_j m_j phi_t(|p_j|).
// Real for real kernels; complex kernels give the complex convolution.
// Throws IntegrationError naming the failing tail when the integral
// diverges (e.g. an unrestricted density outgrowing the kernel decay).
Complex convolve_at_center(const RadialMeasure& mu,
                           const kernels::RadialKernel& k, double t,
                           double tol = 1e-9);

// Restriction to the closed ball of radius R: density zeroed beyond R,
// atoms outside dropped, boundary atoms kept.
RadialMeasure restrict_to_ball(const RadialMeasure& mu, double R);

// tau_{x0} mu for purely atomic measures; throws std::logic_error if a
// density is present (a translated radial density is no longer radial).
RadialMeasure translate_atoms(const RadialMeasure& mu,
                              const std::vector<double>& x0);

struct GrowthReport {
  bool pass = false;
  double sup_ratio = 0.0;       // over the whole grid
  double sup_top_decade = 0.0;  // over (r_max/10,  r_max]
  double sup_prev_decade = 0.0;       // over (r_max/100, r_max/10]
  std::string detail;
};

// mu(B(0,r)) = O(r^n) screen: the sup of mean_ratio must stop growing
// across the top two decades of the (increasing) grid.
GrowthReport growth_check(const RadialMeasure& mu,
                          const std::vector<double>& r_grid);

}  // namespace fatou::measures
