#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Adaptive Gauss-Kronrod quadrature shared by the transform, measure and
// convolution modules.  Everything integrates complex-valued integrands; the
// half-line routines work in log coordinates u = log s, so ds/s = du and a
// multiplicative dilation is a shift.

namespace fatou::quad {

using Complex = std::complex<double>;

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Widest panel the adaptive pass starts from.  Callers integrating an
  // oscillation e^{iyu} lower this to pi / (2 max(1, |y|)) so every panel
  // sees less than a quarter period.
  double max_panel_width = 2.0;
  int max_depth = 40;
  std::size_t max_panels = 4'000'000;
};

struct Result {
  Complex value{0.0, 0.0};
  double error = 0.0;
  std::size_t evals = 0;
};

namespace detail {

// 15-point Kronrod nodes on [-1, 1] and weights; the embedded 7-point Gauss
// rule uses the odd-indexed nodes.  Values are the standard QUADPACK ones.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(F&& f, double a, double b, Complex& value, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Complex fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  Complex kronrod{0.0, 0.0}, gauss{0.0, 0.0};
  for (int i = 0; i < 7; ++i) kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
  kronrod += kWgk[7] * fv[7];
  for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss += kWg[3] * fv[7];
  value = kronrod * h;
  err = std::abs(kronrod - gauss) * h;
}

struct Panel {
  double a, b;
  Complex value;
  double err;
  int depth;
  bool alive;   // still in the heap
  bool frozen;  // unresolvable; contribution stays counted
};

}  // namespace detail

// Adaptive integration over a finite interval.  Worst panel first, with a
// lazy-deletion heap so heavily oscillatory integrands (10^5+ panels) stay
// n log n.  Panels that cannot be resolved within max_depth keep their error
// estimate on the books; the call fails only if the total stays above
// tolerance once nothing is splittable.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opts = {}) {
  Result out;
  if (!(b > a)) return out;

  std::vector<detail::Panel> panels;
  // heap of (error, panel index); stale entries are skipped when popped
  std::priority_queue<std::pair<double, std::size_t>> heap;
  Complex total{0.0, 0.0};
  double total_err = 0.0;

  auto add_panel = [&](double pa, double pb, int depth) {
    detail::Panel p;
    p.a = pa;
    p.b = pb;
    p.depth = depth;
    p.alive = true;
    p.frozen = false;
    detail::gk15(f, pa, pb, p.value, p.err);
    out.evals += 15;
    total += p.value;
    total_err += p.err;
    panels.push_back(p);
    heap.emplace(p.err, panels.size() - 1);
  };

  const double width = b - a;
  std::size_t seeds = static_cast<std::size_t>(
      std::ceil(width / std::max(opts.max_panel_width, 1e-8)));
  seeds = std::clamp<std::size_t>(seeds, 1, 16384);
  for (std::size_t i = 0; i < seeds; ++i)
    add_panel(a + width * static_cast<double>(i) / static_cast<double>(seeds),
              a + width * static_cast<double>(i + 1) / static_cast<double>(seeds),
              0);

  std::size_t iterations = 0;
  for (;;) {
    if (total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)))
      break;
    // Pop the worst live panel.
    std::size_t idx = 0;
    bool found = false;
    while (!heap.empty()) {
      auto [e, i] = heap.top();
      heap.pop();
      if (panels[i].alive && panels[i].err == e) {
        idx = i;
        found = true;
        break;
      }
    }
    if (!found) {
      // Nothing left to split: everything was frozen at max depth.
      if (total_err <=
          std::max(opts.abs_tol, opts.rel_tol * std::abs(total)))
        break;
      throw IntegrationError(
          "integrate: panel refinement exhausted with residual error " +
          std::to_string(total_err));
    }
    detail::Panel p = panels[idx];
    const double scale = std::max({1.0, std::fabs(p.a), std::fabs(p.b)});
    if (p.depth >= opts.max_depth || (p.b - p.a) < 64 * 1e-16 * scale) {
      // Unresolvable: its contribution and error stay counted, but it leaves
      // the heap for good.
      panels[idx].alive = false;
      panels[idx].frozen = true;
      continue;
    }
    if (panels.size() + 2 > opts.max_panels)
      throw IntegrationError("integrate: panel budget exhausted");
    panels[idx].alive = false;
    total -= p.value;
    total_err -= p.err;
    const double mid = 0.5 * (p.a + p.b);
    add_panel(p.a, mid, p.depth + 1);
    add_panel(mid, p.b, p.depth + 1);

    // Running sums drift after many updates; refresh them periodically.
    if (++iterations % 16384 == 0) {
      total = Complex{0.0, 0.0};
      total_err = 0.0;
      for (const auto& q : panels)
        if (q.alive || q.frozen) {
          total += q.value;
          total_err += q.err;
        }
    }
  }
  out.value = total;
  out.error = total_err;
  return out;
}

namespace detail {

// Shared expansion driver for the half-line integrals.  Marches chunks of
// fixed log-width away from the seed window until the tail is negligible
// against the running value, and diagnoses tails that refuse to decay.
template <class F>
void expand_side(F&& f, double from, double step, const Options& opts,
                 const Options& chunk_opts, Complex& acc, double& err,
                 std::size_t& evals, const char* side) {
  int consecutive_negligible = 0;
  std::deque<double> recent;
  double u = from;
  for (int k = 0; k < 512; ++k) {
    const double u_next = u + step;
    const double lo = std::min(u, u_next), hi = std::max(u, u_next);
    Result chunk = integrate(f, lo, hi, chunk_opts);
    acc += chunk.value;
    err += chunk.error;
    evals += chunk.evals;
    const double mag = std::abs(chunk.value) + chunk.error;
    const double threshold =
        std::max(opts.abs_tol * 0.125, 1e-14 * std::abs(acc));
    if (mag <= threshold) {
      if (++consecutive_negligible >= 3) return;
    } else {
      consecutive_negligible = 0;
    }
    recent.push_back(mag);
    if (recent.size() > 16) recent.pop_front();
    if (recent.size() == 16 && k >= 48) {
      double head = 0.0, tail = 0.0;
      for (int i = 0; i < 8; ++i) head = std::max(head, recent[i]);
      for (int i = 8; i < 16; ++i) tail = std::max(tail, recent[i]);
      if (tail > threshold && tail >= 0.98 * head)
        throw IntegrationError(std::string("half-line integral: ") + side +
                               " tail fails to decay (chunk magnitude " +
                               std::to_string(tail) + " at log-coordinate " +
                               std::to_string(u_next) + ")");
    }
    if (std::fabs(u_next) > 800.0)
      throw IntegrationError(std::string("half-line integral: ") + side +
                             " tail still significant at the log-coordinate "
                             "range limit");
    u = u_next;
  }
  throw IntegrationError(std::string("half-line integral: ") + side +
                         " tail did not become negligible within the chunk "
                         "budget");
}

inline Options chunk_options(const Options& opts) {
  Options c = opts;
  c.abs_tol = std::max(opts.abs_tol / 256.0, 5e-16);
  return c;
}

}  // namespace detail

// Whole-line integral seeded on [u_lo, u_hi] and expanded both ways.  Use
// when the integrand has mass near two separated log-scales (e.g. a kernel
// at scale t against data at scale 1): seed across both so neither bulk is
// mistaken for a negligible tail.
template <class F>
Result integrate_log_span(F&& f, double u_lo, double u_hi,
                          const Options& opts = {}) {
  Result out;
  const Options chunk_opts = detail::chunk_options(opts);
  Result seed = integrate(f, u_lo, u_hi, chunk_opts);
  out.value = seed.value;
  out.error = seed.error;
  out.evals = seed.evals;
  detail::expand_side(f, u_hi, 2.0, opts, chunk_opts, out.value, out.error,
                      out.evals, "right");
  detail::expand_side(f, u_lo, -2.0, opts, chunk_opts, out.value, out.error,
                      out.evals, "left");
  return out;
}

// \int_0^\infty g(s) ds/s with f(u) = g(e^u): integrates f over the whole
// line, expanding outward from u_center.
template <class F>
Result integrate_log_line(F&& f, double u_center, const Options& opts = {}) {
  return integrate_log_span(f, u_center - 2.0, u_center + 2.0, opts);
}

// \int_0^{e^{u_max}} g(s) ds/s: expands to the left from u_max only.
template <class F>
Result integrate_log_upto(F&& f, double u_max, const Options& opts = {}) {
  Result out;
  const Options chunk_opts = detail::chunk_options(opts);
  const double kChunk = 2.0;
  Result seed = integrate(f, u_max - kChunk, u_max, chunk_opts);
  out.value = seed.value;
  out.error = seed.error;
  out.evals = seed.evals;
  detail::expand_side(f, u_max - kChunk, -kChunk, opts, chunk_opts, out.value,
                      out.error, out.evals, "left");
  return out;
}

// Panel cap for an integrand carrying the oscillation e^{i y u}.
inline double oscillation_panel_width(double y) {
  return M_PI / (2.0 * std::max(1.0, std::fabs(y)));
}

// exp(w * L) for real L, written so a hugely negative real part gives an
// exact 0 instead of 0 * cis(inf) = NaN.
inline Complex exp_scaled(Complex w, double L) {
  const double mag = w.real() * L;
  if (mag < -700.0) return {0.0, 0.0};
  const double m = std::exp(mag);
  const double ph = w.imag() * L;
  return {m * std::cos(ph), m * std::sin(ph)};
}

// base^w for base > 0 via exp(w log base); safe at base so large that a
// naive complex pow would produce NaN from inf * 0.
inline Complex pow_positive(double base, Complex w) {
  if (base <= 0.0)
    throw std::domain_error("pow_positive: base must be positive");
  return exp_scaled(w, std::log(base));
}

}  // namespace fatou::quad
