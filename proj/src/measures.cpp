#include "fatou/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fatou/quadrature.hpp"
#include "fatou/specfun.hpp"

namespace fatou::measures {

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

void require_positive_dim(int n) {
  if (n < 1) throw std::domain_error("measure dimension must be >= 1");
}

// Offset along the first axis; only the norm matters to radial machinery.
std::vector<double> axis_point(int n, double distance) {
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  p[0] = distance;
  return p;
}

}  // namespace

double Atom::radius() const {
  double s = 0.0;
  for (double c : position) s += c * c;
  return std::sqrt(s);
}

RadialMeasure lebesgue(int n) {
  require_positive_dim(n);
  RadialMeasure mu;
  mu.dim = n;
  mu.name = "lebesgue";
  mu.density = [](double) { return 1.0; };
  mu.growth_claim = static_cast<double>(n);
  return mu;
}

RadialMeasure atom_measure(int n, double mass, double distance) {
  require_positive_dim(n);
  if (mass < 0.0) throw std::domain_error("atom mass must be >= 0");
  if (distance < 0.0) throw std::domain_error("atom distance must be >= 0");
  RadialMeasure mu;
  mu.dim = n;
  std::ostringstream name;
  name << "atom(mass=" << mass << ",distance=" << distance << ")";
  mu.name = name.str();
  mu.atoms.push_back({axis_point(n, distance), mass});
  mu.growth_claim = 0.0;
  return mu;
}

RadialMeasure counterexample_measure(int n, double y0) {
  require_positive_dim(n);
  if (!(y0 > 0.0))
    throw std::domain_error("counterexample measure needs y0 > 0");
  RadialMeasure mu;
  mu.dim = n;
  std::ostringstream name;
  name << "counterexample(y0=" << y0 << ")";
  mu.name = name.str();
  // 2 + cos(y0 log r) >= 1; the value at r = 0 is Lebesgue-null, pick 2.
  mu.density = [y0](double r) {
    return r == 0.0 ? 2.0 : 2.0 + std::cos(y0 * std::log(r));
  };
  mu.oscillation_freq = y0;
  mu.growth_claim = static_cast<double>(n);
  return mu;
}

RadialMeasure affine_density(int n, double a, double b) {
  require_positive_dim(n);
  if (a < 0.0 || b < 0.0)
    throw std::domain_error("affine density must stay nonnegative");
  RadialMeasure mu;
  mu.dim = n;
  std::ostringstream name;
  name << "density:affine(" << a << "+" << b << "r)";
  mu.name = name.str();
  mu.density = [a, b](double r) { return a + b * r; };
  return mu;
}

RadialMeasure rsin_density(int n) {
  require_positive_dim(n);
  RadialMeasure mu;
  mu.dim = n;
  mu.name = "density:rsin";
  mu.density = [](double r) {
    if (r == 0.0) return 1.0;
    return std::max(0.0, 1.0 + r * std::sin(1.0 / r));
  };
  // The 1/r phase is unresolvable near 0 by design; callers integrate it
  // with a loosened tolerance (the term is O(r) there, so this is cheap
  // honesty, not a fudge).
  mu.growth_claim = static_cast<double>(n);
  return mu;
}

RadialMeasure from_id(const std::string& id, int n) {
  const auto parts = split_id(id);
  const std::string& head = parts[0];
  try {
    if (head == "lebesgue" && parts.size() == 1) return lebesgue(n);
    if (head == "atom" && (parts.size() == 2 || parts.size() == 3)) {
      const double mass = std::stod(parts[1]);
      const double dist = parts.size() == 3 ? std::stod(parts[2]) : 0.0;
      return atom_measure(n, mass, dist);
    }
    if (head == "counterexample" && parts.size() <= 2) {
      const double y0 = parts.size() == 2 ? std::stod(parts[1]) : M_PI;
      return counterexample_measure(n, y0);
    }
    if (head == "density" && parts.size() >= 2) {
      if (parts[1] == "affine" && parts.size() == 4)
        return affine_density(n, std::stod(parts[2]), std::stod(parts[3]));
      if (parts[1] == "rsin" && parts.size() == 2) return rsin_density(n);
    }
    if (head == "mix" && parts.size() == 2 && parts[1] == "demo") {
      // density plus off-center atoms, one of them on the restriction
      // sphere to exercise the closed-ball convention
      RadialMeasure mu = restrict_to_ball(affine_density(n, 1.0, 0.5), 1.0);
      mu.name = "mix:demo";
      mu.atoms.push_back({axis_point(n, 0.4), 0.7});
      mu.atoms.push_back({axis_point(n, 1.0), 0.25});
      return mu;
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument("measure from_id: bad parameters in '" + id +
                                "': " + e.what());
  }
  throw std::invalid_argument("measure from_id: unknown id '" + id + "'");
}

double ball_mass(const RadialMeasure& mu, double r, double tol) {
  if (!(r > 0.0)) throw std::domain_error("ball_mass: r must be > 0");
  const int n = mu.dim;
  double total = 0.0;
  const double reach =
      mu.restriction_radius ? std::min(r, *mu.restriction_radius) : r;
  if (mu.density) {
    quad::Options opts;
    // absolute tolerance scaled to the ball volume, so tiny balls keep the
    // same relative accuracy as big ones
    opts.abs_tol =
        tol * std::max(1e-300, specfun::ball_volume(n) * std::pow(reach, n));
    opts.rel_tol = tol;
    opts.max_panel_width = std::min(
        opts.max_panel_width, quad::oscillation_panel_width(mu.oscillation_freq));
    auto f = mu.density;
    auto integrand = [f, n](double u) -> Complex {
      return f(std::exp(u)) * std::exp(n * u);
    };
    total += specfun::sphere_area(n) *
             quad::integrate_log_upto(integrand, std::log(reach), opts)
                 .value.real();
  }
  for (const Atom& a : mu.atoms) {
    const double d = a.radius();
    if (d < r &&
        (!mu.restriction_radius || d <= *mu.restriction_radius))
      total += a.mass;
  }
  return total;
}

double mean_ratio(const RadialMeasure& mu, double r, double tol) {
  return ball_mass(mu, r, tol) /
         (specfun::ball_volume(mu.dim) * std::pow(r, mu.dim));
}

trace::LimitTrace sym_derivative_trace(const RadialMeasure& mu,
                                       const std::vector<double>& r_grid,
                                       std::size_t window, double tol) {
  trace::LimitTrace tr;
  tr.name = "mean_ratio";
  tr.param = r_grid;
  tr.value.reserve(r_grid.size());
  for (double r : r_grid) tr.value.emplace_back(mean_ratio(mu, r, tol), 0.0);
  trace::classify(tr, window);
  return tr;
}

Complex convolve_at_center(const RadialMeasure& mu,
                           const kernels::RadialKernel& k, double t,
                           double tol) {
  if (mu.dim != k.dim)
    throw std::invalid_argument(
        "convolve_at_center: measure and kernel dimensions differ");
  if (!(t > 0.0)) throw std::domain_error("convolve_at_center: t must be > 0");
  const int n = mu.dim;
  Complex total{0.0, 0.0};

  if (mu.density) {
    quad::Options opts;
    opts.abs_tol = tol;
    opts.rel_tol = tol;
    const double rate = mu.oscillation_freq + k.oscillation_freq;
    opts.max_panel_width =
        std::min(opts.max_panel_width, quad::oscillation_panel_width(rate));
    auto f = mu.density;
    auto profile = k.profile;
    const double scale = std::pow(t, -n);
    auto integrand = [f, profile, scale, t, n](double u) -> Complex {
      const double r = std::exp(u);
      return f(r) * scale * profile(r / t) * std::exp(n * u);
    };
    // Either support bound (the measure's restriction ball or the kernel's
    // cutoff, dilated by t) caps the integrand exactly; using the cap as the
    // upper endpoint keeps the jump out of panel interiors.
    std::optional<double> u_cap;
    if (mu.restriction_radius) u_cap = std::log(*mu.restriction_radius);
    if (k.support_radius) {
      const double uk = std::log(t * *k.support_radius);
      u_cap = u_cap ? std::min(*u_cap, uk) : uk;
    }
    Complex part;
    if (u_cap) {
      // finite support: integrate [far-below-the-kernel-scale, cap]
      const double u_hi = *u_cap;
      const double u_lo =
          std::min(std::log(t), u_hi) - (50.0 / n + 4.0);
      part = quad::integrate(integrand, u_lo, u_hi, opts).value;
    } else {
      part = quad::integrate_log_line(integrand, std::log(t), opts).value;
    }
    total += specfun::sphere_area(n) * part;
  }

  const double scale = std::pow(t, -n);
  for (const Atom& a : mu.atoms) total += a.mass * scale * k.profile(a.radius() / t);
  return total;
}

RadialMeasure restrict_to_ball(const RadialMeasure& mu, double R) {
  if (!(R > 0.0))
    throw std::domain_error("restrict_to_ball: R must be > 0");
  RadialMeasure out = mu;
  out.name = mu.name + "|B(0," + std::to_string(R) + ")";
  out.restriction_radius =
      mu.restriction_radius ? std::min(*mu.restriction_radius, R) : R;
  if (mu.density) {
    auto f = mu.density;
    const double cap = *out.restriction_radius;
    out.density = [f, cap](double r) { return r > cap ? 0.0 : f(r); };
  }
  std::vector<Atom> kept;
  for (const Atom& a : out.atoms)
    if (a.radius() <= *out.restriction_radius) kept.push_back(a);
  out.atoms = std::move(kept);
  out.growth_claim = 0.0;  // finite measures trivially satisfy O(r^n)
  return out;
}

RadialMeasure translate_atoms(const RadialMeasure& mu,
                              const std::vector<double>& x0) {
  if (mu.density)
    throw std::logic_error(
        "translate_atoms: only purely atomic measures can be translated");
  if (static_cast<int>(x0.size()) != mu.dim)
    throw std::invalid_argument("translate_atoms: dimension mismatch");
  RadialMeasure out = mu;
  out.name = mu.name + "(translated)";
  for (Atom& a : out.atoms)
    for (std::size_t i = 0; i < x0.size(); ++i) a.position[i] -= x0[i];
  out.restriction_radius.reset();  // the ball is no longer centered
  return out;
}

GrowthReport growth_check(const RadialMeasure& mu,
                          const std::vector<double>& r_grid) {
  GrowthReport rep;
  if (r_grid.size() < 4 || r_grid.front() >= r_grid.back()) {
    rep.detail = "needs an increasing grid with at least 4 points";
    return rep;
  }
  const double r_max = r_grid.back();
  if (r_grid.front() > r_max / 100.0) {
    rep.detail = "grid must span at least two decades";
    return rep;
  }
  for (double r : r_grid) {
    const double m = mean_ratio(mu, r);
    rep.sup_ratio = std::max(rep.sup_ratio, m);
    if (r > r_max / 10.0)
      rep.sup_top_decade = std::max(rep.sup_top_decade, m);
    else if (r > r_max / 100.0)
      rep.sup_prev_decade = std::max(rep.sup_prev_decade, m);
  }
  rep.pass = rep.sup_top_decade <= 1.25 * rep.sup_prev_decade;
  std::ostringstream os;
  os << "sup mean_ratio " << rep.sup_ratio << "; top decade "
     << rep.sup_top_decade << " vs previous " << rep.sup_prev_decade
     << (rep.pass ? " (stabilized)" : " (still growing)");
  rep.detail = os.str();
  return rep;
}

}  // namespace fatou::measures
