#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "fatou/kernels.hpp"
#include "fatou/quadrature.hpp"

namespace fatou::mellin {

using Complex = std::complex<double>;

// \hat g(y) = \int_0^inf g(s) s^{-iy} ds/s.
Complex mult_transform(const std::function<Complex(double)>& g, double y,
                       quad::Options opts = {});

// omega_{n-1} \int_0^inf profile(r) r^{n-1+iy} dr -- for a radial kernel this
// is \int_{R^n} phi(x) |x|^{iy} dx, the transform whose zeros decide the
// Tauberian condition.  Note the sign: radial_mellin(k, y) picks up the
// character |x|^{+iy}.
Complex radial_mellin(const kernels::RadialKernel& k, double y,
                      quad::Options opts = {});

// Closed forms for the catalogue ids (gaussian | ball | power | exp |
// counterexample), with the ClosedFormRef's scale and dilation applied:
//   value = scale * dilation^{iy} * base(y).
// Throws std::domain_error when the defining integral diverges (power with
// Re alpha <= dim/2) and std::invalid_argument for an unknown id or a wrong
// parameter count.
Complex closed_form_mellin(const kernels::ClosedFormRef& ref, int dim,
                           double y);

// Closed form when the kernel carries a reference, quadrature otherwise.
Complex transform(const kernels::RadialKernel& k, double y,
                  quad::Options opts = {});

struct TauberianReport {
  bool holds = false;   // min |transform| stayed above threshold
  double min_abs = 0.0;
  double y_at_min = 0.0;
  double threshold = 1e-6;
  // refined local minima that dipped below threshold: (y, |transform|)
  std::vector<std::pair<double, double>> zeros;
};

// Scans |transform(k, y)| over [-y_max, y_max] and refines every local
// minimum by golden section down to a bracket of width 1e-8 before judging
// against the threshold.
TauberianReport tauberian_check(const kernels::RadialKernel& k,
                                double y_max = 12.0, int points_per_unit = 16);

}  // namespace fatou::mellin
