#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fatou/kernels.hpp"
#include "fatou/measures.hpp"
#include "fatou/multconv.hpp"

// Upper half-space model of hyperbolic n-space: points (x, y) with
// x in R^{n-1} and y > 0, boundary R^{n-1} at y = 0.  The Laplacian is
//
//   L u = y^2 (sum_j d^2u/dx_j^2 + d^2u/dy^2) - (n-2) y du/dy,
//
// and the kernel family below produces its eigenfunctions: for each complex
// parameter lambda,  L P_lambda = -(lambda^2 + rho^2) P_lambda  with
// rho = (n-1)/2.  Restricted to a horizontal slice, P_lambda is (up to the
// factor y^{rho + i lambda}) an approximate identity on the boundary, which
// is what lets the Euclidean differentiation machinery drive boundary-limit
// statements here.
namespace fatou::hyperbolic {

using Complex = std::complex<double>;

struct HyperbolicContext {
  int n = 2;             // hyperbolic dimension, >= 2
  int boundary_dim = 1;  // n - 1
  double rho = 0.5;      // (n - 1) / 2
  // Unit-mass constant of the classical kernel: cn * [y/(y^2+|x|^2)]^{n-1}
  // integrates to 1 over the boundary.  Fixed by quadrature at construction.
  double cn = 0.0;
};

HyperbolicContext make_context(int n);

// Classical (harmonic-measure) kernel cn * [y/(y^2+|x|^2)]^{n-1}; unit
// boundary integral for every y.
double poisson_kernel(const HyperbolicContext& ctx, double x_norm, double y);

// Eigenfunction kernel [y/(y^2+|x|^2)]^{rho - i lambda}, i.e. the classical
// kernel's base raised to (1/2 - i lambda/(n-1)); unnormalized.
Complex gen_poisson(const HyperbolicContext& ctx, Complex lambda, double x_norm,
                    double y);

// Boundary-expansion coefficient
//   c(lambda) = 2^{n-1-2 i lambda} Gamma(2 i lambda) Gamma(n/2)
//               / (Gamma((n-1)/2) Gamma(1/2 + i lambda)),
// defined for Im(lambda) < 0 (throws std::domain_error otherwise).
Complex c_function(const HyperbolicContext& ctx, Complex lambda);

// How to produce the normalizing constant d_lambda that gives psi_lambda
// unit mass.  `numeric` (direct quadrature of the mass integral) is the
// authoritative default; the other two are closed-form routes kept as
// cross-checks, exercising the gamma evaluator at different arguments:
//   closed_form     1 / [(omega_{m-1}/2) B(m/2, -i lambda)]   (m = n-1)
//   via_c_function  C_n Gamma(rho - i lambda) / (pi^{m/2} c(-lambda)),
//                   C_n = 2^{n-2} Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2));
// all three agree to roundoff (the last two are linked by the Legendre
// duplication identity).
enum class DLambdaMethod { numeric, closed_form, via_c_function };

// Requires Im(lambda) > 0; the mass integral diverges otherwise.
Complex d_lambda(const HyperbolicContext& ctx, Complex lambda,
                 DLambdaMethod method = DLambdaMethod::numeric);

// Unit-mass boundary kernel psi(w) = d_lambda (1 + |w|^2)^{-(rho - i lambda)}
// on R^{n-1}, the horizontal-slice profile of gen_poisson:
//   gen_poisson integrated against boundary data mu equals
//   y^{rho + i lambda} (mu * psi_y)(x) / d_lambda.
// Requires Im(lambda) > 0.  For purely imaginary lambda the kernel is a
// positive, strictly decreasing real profile; otherwise it oscillates in
// log radius at rate 2 |Re lambda|.
kernels::RadialKernel psi_lambda(const HyperbolicContext& ctx, Complex lambda);

// Boundary data: a radial measure or a bounded radial function on R^{n-1}.
// At most one should be set; an empty datum means pure power solutions.
struct BoundaryDatum {
  std::optional<measures::RadialMeasure> measure;
  std::optional<multconv::BoundedRadialFunction> function;
};

// Eigenfunction built from boundary data plus a complementary power:
//   u(x, y) = C y^{rho - i lambda} + y^{rho + i lambda} (datum * psi_y)(x),
// both terms eigenfunctions of L with eigenvalue -(lambda^2 + rho^2).
// For lambda = i beta (beta > 0) this is the familiar
//   u = C y^{rho + beta} + y^{rho - beta} (datum * psi_y)(x).
struct EigenSpec {
  HyperbolicContext ctx;
  Complex lambda{0.0, 1.0};  // Im(lambda) > 0
  Complex C{0.0, 0.0};
  BoundaryDatum datum;

  Complex eigenvalue() const {
    return -(lambda * lambda + Complex(ctx.rho * ctx.rho, 0.0));
  }
};

// u(0, y) for the spec above.  tol is forwarded to the convolution.
Complex eigen_solution_at_center(const EigenSpec& spec, double y,
                                 double tol = 1e-9);

// Relative residual |L_h u - eigenvalue * u| / max(|u|, tiny) at (x, y),
// where L_h is the second-order central-difference discretization of L.
// Requires 0 < h < y and x.size() == boundary_dim.  For a true
// eigenfunction this is O(h^2).
double eigen_residual(
    const HyperbolicContext& ctx,
    const std::function<Complex(const std::vector<double>&, double)>& u,
    Complex eigenvalue, const std::vector<double>& x, double y, double h);

// The residual above with u = gen_poisson(ctx, lambda, |x|, y).  The stencil
// is evaluated in extended precision so the roundoff floor (~eps/h^2 from the
// cancellation in central differences) stays far below the O(h^2) truncation
// term; the result is the same residual, just measurable down to smaller h.
double gen_poisson_residual(const HyperbolicContext& ctx, Complex lambda,
                            const std::vector<double>& x, double y, double h);

// sup over the given heights of y^{Im(lambda) - rho} |u(0, y)|, the natural
// scale-invariant size of an eigen-solution (identically 1 for constant
// boundary data with C = 0).
double hardy_norm_estimate(const EigenSpec& spec,
                           const std::vector<double>& y_grid,
                           double tol = 1e-9);

}  // namespace fatou::hyperbolic
