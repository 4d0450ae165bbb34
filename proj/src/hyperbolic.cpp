#include "fatou/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fatou/quadrature.hpp"
#include "fatou/specfun.hpp"

namespace fatou::hyperbolic {

namespace {

constexpr Complex kI{0.0, 1.0};

double require_height(double y) {
  if (!(y > 0.0) || !std::isfinite(y))
    throw std::domain_error("height y must be positive and finite");
  return y;
}

// Matches the token grammar of kernels::from_id, so the kernel names built
// here round-trip through it.
std::string format_lambda(Complex lambda) {
  std::ostringstream os;
  if (lambda.imag() == 0.0) {
    os << lambda.real();
  } else if (lambda.real() == 0.0) {
    os << lambda.imag() << "i";
  } else if (lambda.imag() < 0.0) {
    os << lambda.real() << lambda.imag() << "i";
  } else {
    os << lambda.real() << "+" << lambda.imag() << "i";
  }
  return os.str();
}

// log of the kernel base y / (y^2 + |x|^2)
double log_base(double x_norm, double y) {
  return std::log(y) - std::log(y * y + x_norm * x_norm);
}

}  // namespace

HyperbolicContext make_context(int n) {
  if (n < 2)
    throw std::domain_error("make_context: hyperbolic dimension must be >= 2");
  HyperbolicContext ctx;
  ctx.n = n;
  ctx.boundary_dim = n - 1;
  ctx.rho = 0.5 * (n - 1);
  const int m = ctx.boundary_dim;
  quad::Options opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-13;
  auto integrand = [m](double u) -> Complex {
    const double r = std::exp(u);
    return std::pow(1.0 + r * r, -static_cast<double>(m)) * std::exp(m * u);
  };
  const double mass = specfun::sphere_area(m) *
                      quad::integrate_log_line(integrand, 0.0, opts).value.real();
  ctx.cn = 1.0 / mass;
  return ctx;
}

double poisson_kernel(const HyperbolicContext& ctx, double x_norm, double y) {
  require_height(y);
  return ctx.cn * std::exp(ctx.boundary_dim * log_base(x_norm, y));
}

Complex gen_poisson(const HyperbolicContext& ctx, Complex lambda, double x_norm,
                    double y) {
  require_height(y);
  return quad::exp_scaled(ctx.rho - kI * lambda, log_base(x_norm, y));
}

Complex c_function(const HyperbolicContext& ctx, Complex lambda) {
  if (!(lambda.imag() < 0.0))
    throw std::domain_error("c_function: defined for Im(lambda) < 0");
  const double n = ctx.n;
  const Complex two_i_lambda = 2.0 * kI * lambda;  // Re > 0 here
  return quad::pow_positive(2.0, (n - 1.0) - two_i_lambda) *
         specfun::gamma_complex(two_i_lambda) * std::tgamma(0.5 * n) /
         (std::tgamma(0.5 * (n - 1.0)) *
          specfun::gamma_complex(0.5 + kI * lambda));
}

Complex d_lambda(const HyperbolicContext& ctx, Complex lambda,
                 DLambdaMethod method) {
  if (!(lambda.imag() > 0.0))
    throw std::domain_error(
        "d_lambda: the mass integral needs Im(lambda) > 0");
  const int m = ctx.boundary_dim;
  const Complex alpha = ctx.rho - kI * lambda;  // Re alpha > m/2
  switch (method) {
    case DLambdaMethod::numeric: {
      quad::Options opts;
      opts.abs_tol = 1e-13;
      opts.rel_tol = 1e-13;
      opts.max_panel_width =
          std::min(opts.max_panel_width,
                   quad::oscillation_panel_width(2.0 * lambda.real()));
      auto integrand = [m, alpha](double u) -> Complex {
        const double r = std::exp(u);
        return quad::pow_positive(1.0 + r * r, -alpha) * std::exp(m * u);
      };
      const Complex mass =
          specfun::sphere_area(m) *
          quad::integrate_log_line(integrand, 0.0, opts).value;
      return 1.0 / mass;
    }
    case DLambdaMethod::closed_form:
      return 1.0 / (0.5 * specfun::sphere_area(m) *
                    specfun::beta_complex(0.5 * m, -kI * lambda));
    case DLambdaMethod::via_c_function: {
      const double cn_const = std::pow(2.0, ctx.n - 2) *
                              std::tgamma(0.5 * ctx.n) /
                              (std::sqrt(M_PI) * std::tgamma(0.5 * (ctx.n - 1)));
      return cn_const * specfun::gamma_complex(alpha) /
             (std::pow(M_PI, 0.5 * m) * c_function(ctx, -lambda));
    }
  }
  throw std::logic_error("d_lambda: unhandled method");
}

kernels::RadialKernel psi_lambda(const HyperbolicContext& ctx, Complex lambda) {
  if (!(lambda.imag() > 0.0))
    throw std::domain_error("psi_lambda: needs Im(lambda) > 0 for unit mass");
  const int m = ctx.boundary_dim;
  const Complex alpha = ctx.rho - kI * lambda;
  const bool real = lambda.real() == 0.0;
  Complex d = d_lambda(ctx, lambda, DLambdaMethod::numeric);
  if (real) d = Complex(d.real(), 0.0);  // drop quadrature roundoff dust

  kernels::RadialKernel k;
  k.dim = m;
  k.name = "hyperbolic:psi:" + std::to_string(ctx.n) + ":" +
           format_lambda(lambda);
  k.profile = [d, alpha](double r) -> Complex {
    return d * quad::pow_positive(1.0 + r * r, -alpha);
  };
  k.real_valued = real;
  k.monotone_decreasing = real;
  k.strictly_positive = real;
  k.oscillation_freq = 2.0 * std::fabs(lambda.real());
  kernels::ClosedFormRef ref;
  ref.id = "power";
  ref.params = {alpha};
  ref.scale = d;
  k.closed_form = ref;
  return k;
}

Complex eigen_solution_at_center(const EigenSpec& spec, double y, double tol) {
  require_height(y);
  const Complex ilam = kI * spec.lambda;
  Complex u = spec.C * quad::pow_positive(y, spec.ctx.rho - ilam);
  if (spec.datum.measure || spec.datum.function) {
    const kernels::RadialKernel psi = psi_lambda(spec.ctx, spec.lambda);
    const Complex conv =
        spec.datum.measure
            ? measures::convolve_at_center(*spec.datum.measure, psi, y, tol)
            : multconv::bounded_convolution(*spec.datum.function, psi, y, tol);
    u += quad::pow_positive(y, spec.ctx.rho + ilam) * conv;
  }
  return u;
}

double eigen_residual(
    const HyperbolicContext& ctx,
    const std::function<Complex(const std::vector<double>&, double)>& u,
    Complex eigenvalue, const std::vector<double>& x, double y, double h) {
  if (static_cast<int>(x.size()) != ctx.boundary_dim)
    throw std::invalid_argument(
        "eigen_residual: x must have boundary_dim coordinates");
  if (!(h > 0.0) || !(h < y))
    throw std::domain_error("eigen_residual: need 0 < h < y");

  const Complex u0 = u(x, y);
  Complex second_sum{0.0, 0.0};
  std::vector<double> xs = x;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    xs[j] = x[j] + h;
    const Complex up = u(xs, y);
    xs[j] = x[j] - h;
    const Complex um = u(xs, y);
    xs[j] = x[j];
    second_sum += up - 2.0 * u0 + um;
  }
  const Complex uyp = u(x, y + h);
  const Complex uym = u(x, y - h);
  second_sum += uyp - 2.0 * u0 + uym;

  const Complex laplacian = y * y * second_sum / (h * h) -
                            (ctx.n - 2.0) * y * (uyp - uym) / (2.0 * h);
  return std::abs(laplacian - eigenvalue * u0) /
         std::max(std::abs(u0), 1e-300);
}

double gen_poisson_residual(const HyperbolicContext& ctx, Complex lambda,
                            const std::vector<double>& x, double y, double h) {
  if (static_cast<int>(x.size()) != ctx.boundary_dim)
    throw std::invalid_argument(
        "eigen_residual: x must have boundary_dim coordinates");
  if (!(h > 0.0) || !(h < y))
    throw std::domain_error("eigen_residual: need 0 < h < y");

  // Central differencing loses ~eps/h^2 to cancellation: in double, at
  // h = 5e-4, that floor sits within an order of magnitude of the O(h^2)
  // truncation term itself, which would swamp any convergence-order
  // measurement.  The kernel is a cheap closed form, so this stencil is
  // evaluated in extended precision instead of going through the generic
  // double-precision eigen_residual path.
  using Real = long double;
  using CReal = std::complex<Real>;
  const CReal expo(static_cast<Real>(ctx.rho) + static_cast<Real>(lambda.imag()),
                   static_cast<Real>(-lambda.real()));
  // u at the stencil point obtained by shifting coordinate j by dx (j = -1
  // leaves x unchanged); exp((rho - i lambda) * log(y / (y^2 + |x|^2))).
  auto u = [&expo, &x](Real dx, int j, Real yy) -> CReal {
    Real s = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Real c = static_cast<Real>(x[i]);
      if (static_cast<int>(i) == j) c += dx;
      s += c * c;
    }
    return std::exp(expo * (std::log(yy) - std::log(yy * yy + s)));
  };

  const Real yr = y;
  const Real hr = h;
  const CReal u0 = u(0.0L, -1, yr);
  CReal second_sum{0.0L, 0.0L};
  for (int j = 0; j < static_cast<int>(x.size()); ++j)
    second_sum += u(hr, j, yr) - 2.0L * u0 + u(-hr, j, yr);
  const CReal uyp = u(0.0L, -1, yr + hr);
  const CReal uym = u(0.0L, -1, yr - hr);
  second_sum += uyp - 2.0L * u0 + uym;

  const CReal laplacian =
      yr * yr * second_sum / (hr * hr) -
      (static_cast<Real>(ctx.n) - 2.0L) * yr * (uyp - uym) / (2.0L * hr);
  const Complex ev = -(lambda * lambda + Complex(ctx.rho * ctx.rho, 0.0));
  const CReal evl(static_cast<Real>(ev.real()), static_cast<Real>(ev.imag()));
  const Real res = std::abs(laplacian - evl * u0);
  return static_cast<double>(res / std::max(std::abs(u0), (Real)1e-300));
}

double hardy_norm_estimate(const EigenSpec& spec,
                           const std::vector<double>& y_grid, double tol) {
  double best = 0.0;
  for (double y : y_grid) {
    const Complex u = eigen_solution_at_center(spec, y, tol);
    best = std::max(best, std::pow(y, spec.lambda.imag() - spec.ctx.rho) *
                              std::abs(u));
  }
  return best;
}

}  // namespace fatou::hyperbolic
