#include "fatou/specfun.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fatou::specfun {

namespace {

// Lanczos coefficients for g = 7.  The rational part is evaluated as
// c0 + sum c_i / (z + i), which is well conditioned for Re z >= 0.5.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  if (z.imag() != 0.0) return false;
  const double re = z.real();
  return re <= 0.0 && re == std::floor(re);
}

Complex gamma_right_halfplane(Complex z) {
  // Valid for Re z >= 0.5.
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + (kLanczosG + 0.5);
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

Complex gamma_complex(Complex z) {
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "gamma_complex: pole at z = " << z.real();
    throw std::domain_error(msg.str());
  }
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return M_PI / (std::sin(M_PI * z) * gamma_right_halfplane(1.0 - z));
  }
  return gamma_right_halfplane(z);
}

double sphere_area(int n) {
  if (n < 1) throw std::domain_error("sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) { return sphere_area(n) / n; }

Complex beta_complex(Complex a, Complex b) {
  if (a.real() <= 0.0 || b.real() <= 0.0)
    throw std::domain_error("beta_complex: requires Re a > 0 and Re b > 0");
  return gamma_complex(a) * gamma_complex(b) / gamma_complex(a + b);
}

DimensionConstants dimension_constants(int n) {
  DimensionConstants c;
  c.n = n;
  c.sphere = sphere_area(n);
  c.ball = ball_volume(n);
  return c;
}

}  // namespace fatou::specfun
