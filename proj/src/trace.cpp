#include "fatou/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fatou::trace {

namespace {

using Span = std::pair<std::size_t, std::size_t>;  // [first, last)

double spread_of(const std::vector<Complex>& v, Span s) {
  double worst = 0.0;
  for (std::size_t i = s.first; i < s.second; ++i)
    for (std::size_t j = i + 1; j < s.second; ++j)
      worst = std::max(worst, std::abs(v[i] - v[j]));
  return worst;
}

Complex mean_of(const std::vector<Complex>& v, Span s) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = s.first; i < s.second; ++i) acc += v[i];
  return acc / static_cast<double>(s.second - s.first);
}

double median_abs(const std::vector<Complex>& v, Span s) {
  std::vector<double> mags;
  mags.reserve(s.second - s.first);
  for (std::size_t i = s.first; i < s.second; ++i)
    mags.push_back(std::abs(v[i]));
  std::sort(mags.begin(), mags.end());
  return mags[mags.size() / 2];
}

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// true if x is non-decreasing or non-increasing, up to a relative slack
bool monotone(const std::vector<double>& x) {
  if (x.size() < 2) return true;
  bool up = true, down = true;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double slack =
        1e-12 * std::max({1.0, std::fabs(x[i]), std::fabs(x[i - 1])});
    if (x[i] < x[i - 1] - slack) up = false;
    if (x[i] > x[i - 1] + slack) down = false;
  }
  return up || down;
}

// Iterated Aitken delta-squared; stops at a degenerate difference and
// returns the deepest value reached.
Complex aitken_limit(std::vector<Complex> s) {
  Complex best = s.back();
  while (s.size() >= 3) {
    std::vector<Complex> next;
    next.reserve(s.size() - 2);
    for (std::size_t i = 0; i + 2 < s.size(); ++i) {
      const Complex d1 = s[i + 1] - s[i];
      const Complex d2 = s[i + 2] - s[i + 1];
      const Complex den = d2 - d1;
      if (std::abs(den) <= 1e-14 * (std::abs(d1) + std::abs(d2)) ||
          den == Complex{0.0, 0.0})
        return best;
      next.push_back(s[i + 2] - d2 * d2 / den);
    }
    s = std::move(next);
    if (!finite(s.back())) return best;
    best = s.back();
  }
  return best;
}

}  // namespace

std::string to_string(Behavior b) {
  switch (b) {
    case Behavior::converged:
      return "converged";
    case Behavior::oscillatory:
      return "oscillatory";
    case Behavior::diverged:
      return "diverged";
    case Behavior::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::vector<double> geometric_grid(double start, double ratio,
                                   std::size_t count) {
  std::vector<double> grid;
  grid.reserve(count);
  double t = start;
  for (std::size_t k = 0; k < count; ++k, t *= ratio) grid.push_back(t);
  return grid;
}

Classification classify(const std::vector<Complex>& values,
                        std::size_t window) {
  Classification c;
  c.window = window;
  const std::size_t m = values.size();
  if (m < 4) {
    c.detail = "too few points to classify";
    return c;
  }

  for (const Complex& v : values) {
    if (!finite(v)) {
      c.behavior = Behavior::diverged;
      c.detail = "non-finite values in the trace";
      return c;
    }
  }

  const std::size_t w = std::min(window, m);
  const Span tail{m - w, m};
  const double tail_spread = spread_of(values, tail);
  const double tol = std::max(1e-6, 1e-4 * median_abs(values, tail));

  if (tail_spread <= tol) {
    c.behavior = Behavior::converged;
    c.limit = mean_of(values, tail);
    std::ostringstream os;
    os << "tail spread " << tail_spread << " within tolerance " << tol;
    c.detail = os.str();
    return c;
  }

  if (m >= 2 * w) {
    const Span prev{m - 2 * w, m - w};
    const double a1 = 0.5 * tail_spread;
    const double a2 = 0.5 * spread_of(values, prev);
    const Complex c1 = mean_of(values, tail);
    const Complex c2 = mean_of(values, prev);
    const double a_max = std::max(a1, a2);
    if (a1 > tol && a2 > tol && std::fabs(a1 - a2) <= 0.10 * a_max &&
        std::abs(c1 - c2) <= 0.75 * a_max) {
      c.behavior = Behavior::oscillatory;
      c.amplitude = 0.5 * (a1 + a2);
      c.center = 0.5 * (c1 + c2);
      std::ostringstream os;
      os << "stable tail spread across consecutive windows (" << 2 * a2
         << " then " << 2 * a1 << ")";
      c.detail = os.str();
      return c;
    }
  }

  // magnitude blow-up
  {
    const std::size_t L = std::min(2 * w, m);
    std::vector<double> mags;
    mags.reserve(L);
    for (std::size_t i = m - L; i < m; ++i) mags.push_back(std::abs(values[i]));
    if (monotone(mags) && mags.back() > mags.front() &&
        mags.back() >= 10.0 * std::max(mags.front(), 1e-300)) {
      c.behavior = Behavior::diverged;
      std::ostringstream os;
      os << "tail magnitude grew monotonically from " << mags.front() << " to "
         << mags.back();
      c.detail = os.str();
      return c;
    }
  }

  // monotone drift with shrinking steps: extrapolate rather than wait out a
  // polynomially slow limit
  {
    const std::size_t L = std::min(3 * w, m);
    std::vector<double> re, im;
    re.reserve(L);
    im.reserve(L);
    std::vector<Complex> seg(values.end() - static_cast<std::ptrdiff_t>(L),
                             values.end());
    for (const Complex& v : seg) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    const double first_step = std::abs(seg[1] - seg[0]);
    const double last_step = std::abs(seg[L - 1] - seg[L - 2]);
    if (monotone(re) && monotone(im) && last_step < first_step) {
      const Complex lim = aitken_limit(seg);
      if (finite(lim)) {
        c.behavior = Behavior::converged;
        c.slow_convergence = true;
        c.limit = lim;
        std::ostringstream os;
        os << "monotone tail (spread " << tail_spread
           << " above tolerance " << tol
           << ") extrapolated by iterated Aitken";
        c.detail = os.str();
        return c;
      }
    }
  }

  c.detail = "no convergence, stable oscillation, or monotone growth found";
  return c;
}

LimitTrace& classify(LimitTrace& tr, std::size_t window) {
  tr.classification = classify(tr.value, window);
  return tr;
}

}  // namespace fatou::trace
