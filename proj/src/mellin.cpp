#include "fatou/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fatou/specfun.hpp"

namespace fatou::mellin {

namespace {

using quad::exp_scaled;
using specfun::gamma_complex;

Complex cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

double sinc(double y) { return y == 0.0 ? 1.0 : std::sin(y) / y; }

// Base transforms of the catalogue, before scale/dilation bookkeeping.
Complex base_mellin(const kernels::ClosedFormRef& ref, int n, double y) {
  const double omega = specfun::sphere_area(n);
  const Complex niy{static_cast<double>(n), y};

  if (ref.id == "gaussian") {
    // (4 pi)^{-n/2} omega_{n-1} 2^{n-1+iy} Gamma((n+iy)/2); equals 1 at y=0.
    return std::pow(4.0 * M_PI, -0.5 * n) * omega *
           exp_scaled(niy - 1.0, std::log(2.0)) * gamma_complex(0.5 * niy);
  }
  if (ref.id == "ball") {
    return static_cast<double>(n) / niy;
  }
  if (ref.id == "power") {
    if (ref.params.size() != 1)
      throw std::invalid_argument("closed_form_mellin: power expects alpha");
    const Complex alpha = ref.params[0];
    if (!(alpha.real() > 0.5 * n))
      throw std::domain_error(
          "closed_form_mellin: power transform diverges (Re alpha <= n/2)");
    return 0.5 * omega * gamma_complex(0.5 * niy) *
           gamma_complex(alpha - 0.5 * niy) / gamma_complex(alpha);
  }
  if (ref.id == "exp") {
    if (ref.params.size() != 2)
      throw std::invalid_argument(
          "closed_form_mellin: exp expects alpha, beta");
    const double alpha = ref.params[0].real();
    const double beta = ref.params[1].real();
    const Complex w = niy / beta;
    return omega / beta * gamma_complex(w) *
           exp_scaled(-w, std::log(alpha));
  }
  if (ref.id == "counterexample") {
    // sinc(y) Gamma(n+iy) Gamma(n-iy) / Gamma(n)^2: real, even, unit at 0,
    // vanishing exactly at y = k pi.
    const double gn = std::tgamma(static_cast<double>(n));
    return sinc(y) * gamma_complex(niy) * gamma_complex(std::conj(niy)) /
           (gn * gn);
  }
  throw std::invalid_argument("closed_form_mellin: unknown id '" + ref.id +
                              "'");
}

// Golden-section minimization of a unimodal-ish bracket down to width tol.
template <class F>
void golden_min(F&& f, double a, double b, double tol, double& x_min,
                double& f_min) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc < fd) {
    x_min = c;
    f_min = fc;
  } else {
    x_min = d;
    f_min = fd;
  }
}

}  // namespace

Complex mult_transform(const std::function<Complex(double)>& g, double y,
                       quad::Options opts) {
  opts.max_panel_width =
      std::min(opts.max_panel_width, quad::oscillation_panel_width(y));
  auto integrand = [&g, y](double u) -> Complex {
    return g(std::exp(u)) * exp_scaled(Complex{0.0, -y}, u);
  };
  return quad::integrate_log_line(integrand, 0.0, opts).value;
}

Complex radial_mellin(const kernels::RadialKernel& k, double y,
                      quad::Options opts) {
  const int n = k.dim;
  const double rate = std::fabs(y) + k.oscillation_freq;
  opts.max_panel_width =
      std::min(opts.max_panel_width, quad::oscillation_panel_width(rate));
  const Complex w{static_cast<double>(n), y};
  auto profile = k.profile;
  auto integrand = [profile, w](double u) -> Complex {
    return profile(std::exp(u)) * exp_scaled(w, u);
  };
  // A hard cutoff becomes the upper endpoint so the jump never sits inside
  // a panel.
  const quad::Result res =
      k.support_radius
          ? quad::integrate_log_upto(integrand, std::log(*k.support_radius),
                                     opts)
          : quad::integrate_log_line(integrand, 0.0, opts);
  return specfun::sphere_area(n) * res.value;
}

Complex closed_form_mellin(const kernels::ClosedFormRef& ref, int dim,
                           double y) {
  Complex value = ref.scale * base_mellin(ref, dim, y);
  if (ref.dilation != 1.0) value *= cis(y * std::log(ref.dilation));
  return value;
}

Complex transform(const kernels::RadialKernel& k, double y,
                  quad::Options opts) {
  if (k.closed_form) return closed_form_mellin(*k.closed_form, k.dim, y);
  return radial_mellin(k, y, opts);
}

TauberianReport tauberian_check(const kernels::RadialKernel& k, double y_max,
                                int points_per_unit) {
  TauberianReport rep;
  auto modulus = [&k](double y) { return std::abs(transform(k, y)); };

  const int count =
      2 * static_cast<int>(std::ceil(y_max * points_per_unit)) + 1;
  const double step = 2.0 * y_max / (count - 1);
  std::vector<double> ys(count), vals(count);
  for (int i = 0; i < count; ++i) {
    ys[i] = -y_max + step * i;
    vals[i] = modulus(ys[i]);
  }

  rep.min_abs = vals[0];
  rep.y_at_min = ys[0];
  auto consider = [&rep](double y, double v) {
    if (v < rep.min_abs) {
      rep.min_abs = v;
      rep.y_at_min = y;
    }
  };
  for (int i = 1; i < count; ++i) consider(ys[i], vals[i]);

  // Refine every interior local minimum; the scan grid is fine enough that a
  // true zero always produces one.
  for (int i = 1; i + 1 < count; ++i) {
    if (vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1]) {
      double y_ref, v_ref;
      golden_min(modulus, ys[i - 1], ys[i + 1], 1e-8, y_ref, v_ref);
      consider(y_ref, v_ref);
      if (v_ref < rep.threshold) rep.zeros.emplace_back(y_ref, v_ref);
    }
  }
  rep.holds = rep.min_abs > rep.threshold;
  return rep;
}

}  // namespace fatou::mellin
