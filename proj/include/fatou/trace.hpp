#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace fatou::trace {

using Complex = std::complex<double>;

enum class Behavior { converged, oscillatory, diverged, undetermined };

std::string to_string(Behavior b);

struct Classification {
  Behavior behavior = Behavior::undetermined;
  Complex limit{0.0, 0.0};        // converged: the estimate
  Complex center{0.0, 0.0};       // oscillatory: mean of the tail
  double amplitude = 0.0;         // oscillatory: half the tail spread
  bool slow_convergence = false;  // converged via monotone-tail extrapolation
  std::size_t window = 12;
  std::string detail;
};

// A finite-grid stand-in for a limit statement: values along a geometric
// parameter grid ordered toward the limit (index up = closer to the limit).
struct LimitTrace {
  std::string name;
  std::vector<double> param;
  std::vector<Complex> value;
  Classification classification;
};

// t_k = start * ratio^k, k = 0 .. count-1.
std::vector<double> geometric_grid(double start, double ratio,
                                   std::size_t count);

// Tail-window classifier.
//   converged:    spread of the last window <= max(1e-6, 1e-4 |median|)
//   oscillatory:  two consecutive windows with spreads matching within 10%,
//                 both above the converged threshold, centers agreeing to
//                 within the spread
//   diverged:     tail magnitudes monotone and grown by 10x over the last
//                 two windows (or non-finite values)
//   converged + slow_convergence: monotone tail with shrinking steps,
//                 extrapolated by iterated Aitken
//   undetermined: anything else
// The spread of a window is the max pairwise distance of its values, so the
// real and complex oscillation signatures are measured the same way.
Classification classify(const std::vector<Complex>& values,
                        std::size_t window = 12);

// Classifies in place and returns the trace for chaining.
LimitTrace& classify(LimitTrace& tr, std::size_t window = 12);

}  // namespace fatou::trace
