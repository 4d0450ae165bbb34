#include "fatou/multconv.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "fatou/quadrature.hpp"
#include "fatou/specfun.hpp"

namespace fatou::multconv {

namespace {

std::vector<std::string> split_id(const std::string& id) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : id) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

// Dense tabulation of a function of the log coordinate, cubic Hermite with
// five-point slopes (fourth order, so a 0.015 step keeps interpolation noise
// well under the 1e-6 identity budget even on a cos(pi w) oscillation).
class LogTable {
 public:
  template <class F>
  LogTable(F&& f, double lo, double hi, double h) : lo_(lo), h_(h) {
    const std::size_t count =
        static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 2;
    y_.resize(count);
    for (std::size_t i = 0; i < count; ++i) y_[i] = f(lo_ + h_ * i);
    m_.resize(count);
    const std::size_t last = count - 1;
    for (std::size_t i = 0; i < count; ++i) {
      if (i >= 2 && i + 2 < count) {
        m_[i] = (y_[i - 2] - 8.0 * y_[i - 1] + 8.0 * y_[i + 1] - y_[i + 2]) /
                (12.0 * h_);
      } else if (i >= 1 && i + 1 < count) {
        m_[i] = (y_[i + 1] - y_[i - 1]) / (2.0 * h_);
      } else if (i == 0) {
        m_[i] = (y_[1] - y_[0]) / h_;
      } else {
        m_[i] = (y_[last] - y_[last - 1]) / h_;
      }
    }
  }

  Complex operator()(double w) const {
    const double pos = (w - lo_) / h_;
    if (pos <= 0.0) return y_.front();
    if (pos >= static_cast<double>(y_.size() - 1)) return y_.back();
    const std::size_t i = static_cast<std::size_t>(pos);
    const double t = pos - static_cast<double>(i);
    const double t2 = t * t, t3 = t2 * t;
    return y_[i] * (2 * t3 - 3 * t2 + 1) + m_[i] * h_ * (t3 - 2 * t2 + t) +
           y_[i + 1] * (-2 * t3 + 3 * t2) + m_[i + 1] * h_ * (t3 - t2);
  }

 private:
  double lo_, h_;
  std::vector<Complex> y_;
  std::vector<Complex> m_;
};

// Left edge of the support of g(e^w) (g from g_of_kernel), found by scanning
// for three consecutive negligible samples.  The right side always decays
// like e^{-n w}, so it needs no scan.
double g_left_edge(const std::function<Complex(double)>& g) {
  double peak = 0.0;
  for (double w = -1.0; w <= 3.0; w += 0.25)
    peak = std::max(peak, std::abs(g(std::exp(w))));
  int negligible = 0;
  for (double w = 0.0; w >= -120.0; w -= 0.5) {
    if (std::abs(g(std::exp(w))) <= 1e-16 * (peak + 1e-300)) {
      if (++negligible >= 3) return w;
    } else {
      negligible = 0;
    }
  }
  throw quad::IntegrationError(
      "g profile does not decay toward s = 0; kernel tails too heavy");
}

}  // namespace

Complex mult_convolve(const HalfLineProfile& f, const HalfLineProfile& g,
                      double t, double tol) {
  if (!(t > 0.0)) throw std::domain_error("mult_convolve: t must be > 0");
  quad::Options opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  const double rate = f.oscillation_freq + g.oscillation_freq;
  opts.max_panel_width =
      std::min(opts.max_panel_width, quad::oscillation_panel_width(rate));
  auto integrand = [&f, &g, t](double u) -> Complex {
    return f.eval(std::exp(u)) * g.eval(t * std::exp(-u));
  };
  // seed across both natural scales: f lives near s ~ 1, g(t/s) near s ~ t
  const double lt = std::log(t);
  return quad::integrate_log_span(integrand, std::min(0.0, lt) - 2.0,
                                  std::max(0.0, lt) + 2.0, opts)
      .value;
}

HalfLineProfile H_kernel(int n) {
  if (n < 1) throw std::domain_error("H_kernel: n must be >= 1");
  HalfLineProfile h;
  h.name = "H(n=" + std::to_string(n) + ")";
  h.eval = [n](double s) -> Complex {
    return s < 1.0 ? 0.0 : n * std::pow(s, -n);
  };
  return h;
}

HalfLineProfile g_of_kernel(const kernels::RadialKernel& k, GVariant v) {
  const int n = k.dim;
  const double scale =
      v == GVariant::normalized ? n * specfun::ball_volume(n) : 1.0;
  HalfLineProfile g;
  g.name = (v == GVariant::normalized ? "g[" : "g_raw[") + k.name + "]";
  auto profile = k.profile;
  g.eval = [profile, scale, n](double s) -> Complex {
    return scale * std::pow(s, -n) * profile(1.0 / s);
  };
  g.oscillation_freq = k.oscillation_freq;
  return g;
}

HIdentityReport check_H_identity(const measures::RadialMeasure& mu,
                                 const kernels::RadialKernel& k,
                                 const std::vector<double>& r_grid) {
  if (r_grid.empty())
    throw std::invalid_argument("check_H_identity: empty r grid");
  const int n = k.dim;
  const double lr_min = std::log(*std::min_element(r_grid.begin(), r_grid.end()));
  const double lr_max = std::log(*std::max_element(r_grid.begin(), r_grid.end()));
  const double kStep = 0.015;

  // v(t) = mu*phi_t(0) sampled densely in log t.  The H side only reads
  // v at scales below r, weighted e^{-n u}, so the table can stop where the
  // weight is dust.
  const double v_lo = lr_min - (40.0 + 5.0 * n) / n;
  LogTable v_tab(
      [&](double w) {
        return measures::convolve_at_center(mu, k, std::exp(w), 1e-10);
      },
      v_lo, lr_max, kStep);

  HalfLineProfile g = g_of_kernel(k, GVariant::normalized);
  // g(s) = s^{-n} phi(1/s) vanishes exactly below 1/support, so a kernel
  // cutoff pins the lower edge (and keeps the jump at an endpoint).
  double w_g_lo = g_left_edge(g.eval);
  if (k.support_radius)
    w_g_lo = std::max(w_g_lo, -std::log(*k.support_radius));
  const double peak_g = std::abs(g.eval(1.0)) + std::abs(g.eval(std::exp(1.0)));
  const double w_g_hi = (37.0 + std::log(1.0 + peak_g)) / n + 2.0;

  // M(s) sampled over every scale the g side can reach.  A smooth density
  // tabulates well, but atoms make M jump and a support cutoff makes it
  // kink; a cubic table smears those, so such measures are evaluated
  // directly and the identity integral is split at the offending radii
  // (a jump interior to a panel can also fool the embedded error estimate).
  std::vector<double> break_radii;
  for (const auto& a : mu.atoms)
    if (a.radius() > 0.0) break_radii.push_back(a.radius());
  if (mu.restriction_radius) break_radii.push_back(*mu.restriction_radius);
  std::optional<LogTable> m_tab;
  if (break_radii.empty())
    m_tab.emplace(
        [&](double w) -> Complex {
          return measures::mean_ratio(mu, std::exp(w), 1e-10);
        },
        lr_min - w_g_hi - 0.5, lr_max - w_g_lo + 0.5, kStep);

  quad::Options opts;
  opts.abs_tol = 1e-9;
  opts.rel_tol = 1e-9;
  opts.max_panel_width = std::min(
      opts.max_panel_width,
      quad::oscillation_panel_width(mu.oscillation_freq + k.oscillation_freq));

  HIdentityReport rep;
  for (double r : r_grid) {
    const double lr = std::log(r);
    // (H * v)(r) = \int_0^inf n e^{-n u} v(r e^{-u}) du
    auto lhs_integrand = [&v_tab, lr, n](double u) -> Complex {
      return static_cast<double>(n) * std::exp(-n * u) * v_tab(lr - u);
    };
    const Complex lhs =
        quad::integrate(lhs_integrand, 0.0, lr - v_lo, opts).value;
    // (M * g)(r) = \int M(r e^{-w}) g(e^w) dw
    auto rhs_integrand = [&](double w) -> Complex {
      const Complex m = m_tab ? (*m_tab)(lr - w)
                              : measures::mean_ratio(mu, std::exp(lr - w), 1e-10);
      return m * g.eval(std::exp(w));
    };
    std::vector<double> cuts{w_g_lo, w_g_hi};
    for (double b : break_radii) {
      const double w = lr - std::log(b);
      if (w > w_g_lo && w < w_g_hi) cuts.push_back(w);
    }
    std::sort(cuts.begin(), cuts.end());
    Complex rhs = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      rhs += quad::integrate(rhs_integrand, cuts[i], cuts[i + 1], opts).value;
    const double residual = std::abs(lhs - rhs);
    if (residual > rep.max_residual) {
      rep.max_residual = residual;
      rep.r_at_max = r;
    }
  }
  return rep;
}

SandwichReport sandwich_bounds(const measures::RadialMeasure& mu, double gamma,
                               const std::vector<double>& r_grid) {
  if (!(gamma > 1.0))
    throw std::domain_error("sandwich_bounds: gamma must exceed 1");
  const int n = mu.dim;
  const double L = std::log(gamma);

  // unit-mass cosine-squared bump on [0, L] in log coordinates
  auto bump = [L](double u) { return (2.0 / L) * std::pow(std::sin(M_PI * u / L), 2); };
  quad::Options bump_opts;
  bump_opts.abs_tol = 1e-12;
  bump_opts.rel_tol = 1e-12;
  const double bump_mass =
      quad::integrate([&bump](double u) -> Complex { return bump(u); }, 0.0, L,
                      bump_opts)
          .value.real();

  quad::Options opts;
  opts.abs_tol = 1e-10;
  opts.rel_tol = 1e-10;
  opts.max_panel_width = std::min(
      opts.max_panel_width, quad::oscillation_panel_width(mu.oscillation_freq));

  // M jumps at atom radii and kinks at a support cutoff; split the bump
  // integrals there so the discontinuities sit at panel endpoints.
  std::vector<double> break_radii;
  for (const auto& a : mu.atoms)
    if (a.radius() > 0.0) break_radii.push_back(a.radius());
  if (mu.restriction_radius) break_radii.push_back(*mu.restriction_radius);
  auto integrate_cut = [&](const std::function<Complex(double)>& f, double lo,
                           double hi, double r) {
    std::vector<double> cuts{lo, hi};
    for (double b : break_radii) {
      const double u = std::log(r / b);
      if (u > lo && u < hi) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += quad::integrate(f, cuts[i], cuts[i + 1], opts).value.real();
    return total;
  };

  SandwichReport rep;
  rep.holds = true;
  bool first = true;
  for (double r : r_grid) {
    const double m_r = measures::mean_ratio(mu, r);
    // (M * f1)(r): f1 lives on [1, gamma], i.e. u in [0, L]
    auto f1_int = [&](double u) -> Complex {
      return measures::mean_ratio(mu, r * std::exp(-u)) * bump(u) / bump_mass;
    };
    // (M * f2)(r): f2 lives on [1/gamma, 1], i.e. u in [-L, 0]
    auto f2_int = [&](double u) -> Complex {
      return measures::mean_ratio(mu, r * std::exp(-u)) * bump(-u) / bump_mass;
    };
    const double conv1 = integrate_cut(f1_int, 0.0, L, r);
    const double conv2 = integrate_cut(f2_int, -L, 0.0, r);
    const double lower = std::pow(gamma, -n) * conv1;
    const double upper = std::pow(gamma, n) * conv2;
    const double margin = std::min(m_r - lower, upper - m_r);
    if (first || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.r_at_worst = r;
      first = false;
    }
    if (margin < -1e-9 * (1.0 + std::fabs(m_r))) rep.holds = false;
  }
  return rep;
}

BoundedRadialFunction bounded_from_id(const std::string& id, int n) {
  const auto parts = split_id(id);
  if (parts.size() >= 2 && parts[0] == "f") {
    try {
      if (parts[1] == "const" && parts.size() == 3) {
        const double c = std::stod(parts[2]);
        BoundedRadialFunction f;
        f.dim = n;
        f.name = id;
        f.profile = [c](double) -> Complex { return c; };
        f.bound = std::fabs(c);
        return f;
      }
      if (parts[1] == "plateau" && parts.size() == 2) {
        BoundedRadialFunction f;
        f.dim = n;
        f.name = id;
        f.profile = [](double r) -> Complex {
          return 3.0 + 1.0 / std::sqrt(1.0 + r);
        };
        f.bound = 4.0;
        return f;
      }
      if (parts[1] == "logmode" && parts.size() == 3) {
        const double y0 = std::stod(parts[2]);
        BoundedRadialFunction f;
        f.dim = n;
        f.name = id;
        // |x|^{i y0}; the (measure-null) value at 0 is pinned to 1
        f.profile = [y0](double r) -> Complex {
          if (r == 0.0) return 1.0;
          const double ph = y0 * std::log(r);
          return {std::cos(ph), std::sin(ph)};
        };
        f.bound = 1.0;
        f.real_valued = false;
        f.oscillation_freq = std::fabs(y0);
        return f;
      }
      if (parts[1] == "invlin" && parts.size() == 2) {
        BoundedRadialFunction f;
        f.dim = n;
        f.name = id;
        f.profile = [](double r) -> Complex { return 1.0 / (1.0 + r); };
        f.bound = 1.0;
        return f;
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("bounded_from_id: bad parameters in '" + id +
                                  "': " + e.what());
    }
  }
  throw std::invalid_argument("bounded_from_id: unknown id '" + id + "'");
}

Complex spherical_average(const BoundedRadialFunction& f, double r) {
  return specfun::sphere_area(f.dim) * f.profile(r);
}

Complex bounded_convolution(const BoundedRadialFunction& f,
                            const kernels::RadialKernel& k, double t,
                            double tol) {
  if (f.dim != k.dim)
    throw std::invalid_argument(
        "bounded_convolution: function and kernel dimensions differ");
  if (!(t > 0.0))
    throw std::domain_error("bounded_convolution: t must be > 0");
  const int n = f.dim;
  quad::Options opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  const double rate = f.oscillation_freq + k.oscillation_freq;
  opts.max_panel_width =
      std::min(opts.max_panel_width, quad::oscillation_panel_width(rate));
  auto fp = f.profile;
  auto kp = k.profile;
  const double scale = std::pow(t, -n);
  auto integrand = [fp, kp, scale, t, n](double u) -> Complex {
    const double r = std::exp(u);
    return fp(r) * scale * kp(r / t) * std::exp(n * u);
  };
  const double lt = std::log(t);
  // A kernel cutoff zeroes the integrand beyond log(t * support); making it
  // the upper endpoint keeps the jump out of panel interiors (an interior
  // jump can fool the embedded error estimate).
  const quad::Result res =
      k.support_radius
          ? quad::integrate_log_upto(integrand,
                                     lt + std::log(*k.support_radius), opts)
          : quad::integrate_log_span(integrand, std::min(0.0, lt) - 2.0,
                                     std::max(0.0, lt) + 2.0, opts);
  return specfun::sphere_area(n) * res.value;
}

}  // namespace fatou::multconv
