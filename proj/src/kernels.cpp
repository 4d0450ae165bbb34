#include "fatou/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "fatou/hyperbolic.hpp"
#include "fatou/quadrature.hpp"
#include "fatou/specfun.hpp"

namespace fatou::kernels {

namespace {

using quad::pow_positive;

double require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(what) + " must be positive and finite");
  return v;
}

// ---- counterexample kernel machinery ------------------------------------
//
// q(s) = psi(s)/s^n = \int_{1/e}^{e} r^{n-1} (r+s)^{-2n} dr is smooth and
// strictly decreasing on (0, inf) with finite limits q(0+) = (e^n - e^-n)/n
// and q ~ ((e^n - e^-n)/n) s^{-2n} at infinity.  We tabulate log q on a
// uniform log grid and interpolate with Fritsch-Carlson monotone cubics;
// exp of a monotone interpolant keeps the profile monotone no matter how the
// quadrature noise falls.

double psi_over_sn(int n, double s) {
  quad::Options opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-280;  // values reach ~1e-100 at the far end of the table
  auto integrand = [n, s](double r) -> quad::Complex {
    return std::pow(r, n - 1) * std::pow(r + s, -2.0 * n);
  };
  return quad::integrate(integrand, std::exp(-1.0), std::exp(1.0), opts)
      .value.real();
}

class PsiTable {
 public:
  explicit PsiTable(int n)
      : n_(n),
        u_lo_(std::log(1e-8)),
        u_hi_(std::log(1e8)),
        h_(std::log(10.0) / 1024.0) {
    const std::size_t count =
        static_cast<std::size_t>(std::ceil((u_hi_ - u_lo_) / h_)) + 1;
    u_hi_ = u_lo_ + h_ * static_cast<double>(count - 1);
    logq_.resize(count);
    for (std::size_t i = 0; i < count; ++i)
      logq_[i] = std::log(psi_over_sn(n_, std::exp(u_lo_ + h_ * i)));
    slopes_ = monotone_slopes(logq_, h_);
  }

  // psi(s)/s^n
  double q(double s) const {
    const double u = std::log(s);
    if (u < u_lo_ || u > u_hi_) return psi_over_sn(n_, s);
    const double pos = (u - u_lo_) / h_;
    std::size_t i = std::min(static_cast<std::size_t>(pos), logq_.size() - 2);
    const double t = pos - static_cast<double>(i);
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    const double v = logq_[i] * h00 + h_ * slopes_[i] * h10 +
                     logq_[i + 1] * h01 + h_ * slopes_[i + 1] * h11;
    return std::exp(v);
  }

  double q_at_zero() const {
    return (std::exp(static_cast<double>(n_)) -
            std::exp(static_cast<double>(-n_))) /
           n_;
  }

 private:
  static std::vector<double> monotone_slopes(const std::vector<double>& y,
                                             double h) {
    const std::size_t m = y.size();
    std::vector<double> d(m - 1), s(m);
    for (std::size_t i = 0; i + 1 < m; ++i) d[i] = (y[i + 1] - y[i]) / h;
    s[0] = d[0];
    s[m - 1] = d[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i) {
      if (d[i - 1] * d[i] <= 0.0)
        s[i] = 0.0;
      else
        s[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);
    }
    return s;
  }

  int n_;
  double u_lo_, u_hi_, h_;
  std::vector<double> logq_;
  std::vector<double> slopes_;
};

std::shared_ptr<const PsiTable> psi_table(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const PsiTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(n);
  if (it == tables.end())
    it = tables.emplace(n, std::make_shared<PsiTable>(n)).first;
  return it->second;
}

double c_psi(int n) {
  // \int_0^inf psi ds/s = hat f(0) hat g(0) = B(n,n) * 2.
  return 2.0 * std::tgamma(static_cast<double>(n)) *
         std::tgamma(static_cast<double>(n)) /
         std::tgamma(2.0 * static_cast<double>(n));
}

Complex parse_complex_token(const std::string& tok) {
  std::string s = tok;
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return Complex{std::stod(s), 0.0};
  s.pop_back();  // drop 'i'
  // find the split between real and imaginary parts, if any
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_of = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (split == std::string::npos) return Complex{0.0, imag_of(s)};
  return Complex{std::stod(s.substr(0, split)), imag_of(s.substr(split))};
}

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

}  // namespace

double real_profile(const RadialKernel& k, double r) {
  if (!k.real_valued)
    throw std::logic_error("real_profile: kernel '" + k.name +
                           "' is complex-valued");
  return k.profile(r).real();
}

RadialKernel dilate(const RadialKernel& k, double t) {
  require_positive(t, "dilate: t");
  RadialKernel out = k;
  const double inv = 1.0 / t;
  const double scale = std::pow(inv, k.dim);
  auto base = k.profile;
  out.profile = [base, inv, scale](double r) { return scale * base(r * inv); };
  if (out.support_radius) *out.support_radius *= t;
  if (out.closed_form) out.closed_form->dilation *= t;
  return out;
}

double mass(const RadialKernel& k, double tol) {
  if (!k.real_valued)
    throw std::logic_error("mass: kernel '" + k.name + "' is complex-valued");
  const double omega = specfun::sphere_area(k.dim);
  const int n = k.dim;
  quad::Options opts;
  opts.abs_tol = tol;
  opts.rel_tol = tol;
  auto prof = k.profile;
  auto integrand = [prof, n](double u) -> Complex {
    return prof(std::exp(u)) * std::exp(n * u);
  };
  return omega * quad::integrate_log_line(integrand, 0.0, opts).value.real();
}

RadialKernel normalize(const RadialKernel& k, double tol) {
  const double m = mass(k, tol);
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::domain_error("normalize: kernel '" + k.name +
                            "' has non-positive or non-finite mass " +
                            std::to_string(m));
  RadialKernel out = k;
  auto base = k.profile;
  const double inv = 1.0 / m;
  out.profile = [base, inv](double r) { return inv * base(r); };
  if (out.closed_form) out.closed_form->scale *= inv;
  return out;
}

RadialKernel poisson(int n) {
  RadialKernel k;
  k.dim = n;
  k.name = "poisson";
  const double cn = std::tgamma(0.5 * (n + 1)) / std::pow(M_PI, 0.5 * (n + 1));
  const double expo = -0.5 * (n + 1);
  k.profile = [cn, expo](double r) -> Complex {
    return cn * std::pow(1.0 + r * r, expo);
  };
  k.monotone_decreasing = true;
  k.strictly_positive = true;
  ClosedFormRef cf;
  cf.id = "power";
  cf.params = {Complex{0.5 * (n + 1), 0.0}};
  cf.scale = cn;
  k.closed_form = cf;
  return k;
}

RadialKernel gaussian(int n) {
  RadialKernel k;
  k.dim = n;
  k.name = "gaussian";
  const double norm = std::pow(4.0 * M_PI, -0.5 * n);
  k.profile = [norm](double r) -> Complex {
    return norm * std::exp(-0.25 * r * r);
  };
  k.monotone_decreasing = true;
  k.strictly_positive = true;
  k.closed_form = ClosedFormRef{"gaussian", {}, Complex{1.0, 0.0}, 1.0};
  return k;
}

RadialKernel heat(int n, double t) {
  require_positive(t, "heat: t");
  RadialKernel k = dilate(gaussian(n), std::sqrt(t));
  k.name = "heat(t=" + std::to_string(t) + ")";
  return k;
}

RadialKernel ball_indicator(int n) {
  RadialKernel k;
  k.dim = n;
  k.name = "ball";
  const double inv_vol = 1.0 / specfun::ball_volume(n);
  k.profile = [inv_vol](double r) -> Complex {
    return r <= 1.0 ? inv_vol : 0.0;
  };
  k.monotone_decreasing = true;
  k.strictly_positive = false;
  k.support_radius = 1.0;
  k.closed_form = ClosedFormRef{"ball", {}, Complex{1.0, 0.0}, 1.0};
  return k;
}

RadialKernel power_kernel(int n, double alpha) {
  require_positive(alpha, "power_kernel: alpha");
  RadialKernel k;
  k.dim = n;
  k.name = "power(alpha=" + std::to_string(alpha) + ")";
  k.profile = [alpha](double r) -> Complex {
    return std::pow(1.0 + r * r, -alpha);
  };
  k.monotone_decreasing = true;
  k.strictly_positive = true;
  k.closed_form = ClosedFormRef{"power", {Complex{alpha, 0.0}}, 1.0, 1.0};
  return k;
}

RadialKernel log_damped_power(int n, double alpha, double beta) {
  require_positive(alpha, "log_damped_power: alpha");
  if (beta < 0.0) throw std::domain_error("log_damped_power: beta must be >= 0");
  RadialKernel k;
  k.dim = n;
  k.name = "K(alpha=" + std::to_string(alpha) +
           ",beta=" + std::to_string(beta) + ")";
  k.profile = [alpha, beta](double r) -> Complex {
    // (1+r^2)^{-alpha} in log space: formed directly, 1+r^2 overflows for
    // r > 1e154 and silently zeroes the tail of a borderline kernel, which
    // would let a divergent integral of it "converge".
    const double log1pr2 = r > 1e150 ? 2.0 * std::log(r) : std::log1p(r * r);
    return std::exp(-alpha * log1pr2) / std::log(2.0 + std::pow(r, beta));
  };
  k.monotone_decreasing = true;
  k.strictly_positive = true;
  if (beta == 0.0) {
    // log(2 + r^0) = log 3 is constant, so this is a scaled power kernel.
    k.closed_form =
        ClosedFormRef{"power", {Complex{alpha, 0.0}}, 1.0 / std::log(3.0), 1.0};
  }
  return k;
}

RadialKernel stretched_exponential(int n, double alpha, double beta) {
  require_positive(alpha, "stretched_exponential: alpha");
  require_positive(beta, "stretched_exponential: beta");
  RadialKernel k;
  k.dim = n;
  k.name = "G(alpha=" + std::to_string(alpha) +
           ",beta=" + std::to_string(beta) + ")";
  k.profile = [alpha, beta](double r) -> Complex {
    return std::exp(-alpha * std::pow(r, beta));
  };
  k.monotone_decreasing = true;
  k.strictly_positive = true;
  k.closed_form = ClosedFormRef{
      "exp", {Complex{alpha, 0.0}, Complex{beta, 0.0}}, 1.0, 1.0};
  return k;
}

RadialKernel counterexample_kernel(int n) {
  if (n < 1) throw std::domain_error("counterexample_kernel: n must be >= 1");
  RadialKernel k;
  k.dim = n;
  k.name = "counterexample";
  auto table = psi_table(n);
  const double denom = c_psi(n) * specfun::sphere_area(n);
  k.profile = [table, denom](double r) -> Complex {
    if (r == 0.0) return table->q_at_zero() / denom;
    return table->q(r) / denom;
  };
  k.monotone_decreasing = true;
  k.strictly_positive = true;
  k.closed_form =
      ClosedFormRef{"counterexample", {Complex{static_cast<double>(n), 0.0}},
                    1.0, 1.0};
  return k;
}

RadialKernel from_id(const std::string& id, int n) {
  const auto parts = split_id(id);
  const std::string& head = parts[0];
  try {
    if (head == "poisson" && parts.size() == 1) return poisson(n);
    if (head == "gaussian" && parts.size() == 1) return gaussian(n);
    if (head == "ball" && parts.size() == 1) return ball_indicator(n);
    if (head == "counterexample" && parts.size() == 1)
      return counterexample_kernel(n);
    if (head == "heat" && parts.size() == 2)
      return heat(n, std::stod(parts[1]));
    if (head == "power" && parts.size() == 2)
      return power_kernel(n, std::stod(parts[1]));
    if (head == "K" && parts.size() == 3)
      return log_damped_power(n, std::stod(parts[1]), std::stod(parts[2]));
    if (head == "G" && parts.size() == 3)
      return stretched_exponential(n, std::stod(parts[1]),
                                   std::stod(parts[2]));
    if (head == "hyperbolic" && parts.size() == 4 && parts[1] == "psi") {
      const int n_hyp = std::stoi(parts[2]);
      const Complex lambda = parse_complex_token(parts[3]);
      if (n != n_hyp - 1) {
        std::ostringstream msg;
        msg << "from_id: kernel '" << id << "' lives on R^" << (n_hyp - 1)
            << " but dimension " << n << " was requested";
        throw std::invalid_argument(msg.str());
      }
      return hyperbolic::psi_lambda(hyperbolic::make_context(n_hyp), lambda);
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument("from_id: bad parameters in '" + id +
                                "': " + e.what());
  }
  throw std::invalid_argument("from_id: unknown kernel id '" + id + "'");
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  const double lo = 1e-4, hi = 1.0 - 1e-4;
  const int per_decade = 64;
  const int count =
      static_cast<int>(std::ceil(per_decade * std::log10(hi / lo))) + 1;
  const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  double t = lo;
  for (int i = 0; i < count; ++i, t *= ratio) grid.push_back(std::min(t, hi));
  return grid;
}

std::vector<double> default_r_grid() {
  // geometric in r - 1 so the grid clusters just outside the unit sphere
  std::vector<double> grid;
  const double lo = 1e-6, hi = 1e4 - 1.0;
  const int per_decade = 64;
  const int count =
      static_cast<int>(std::ceil(per_decade * std::log10(hi / lo))) + 1;
  const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
  double x = lo;
  for (int i = 0; i < count; ++i, x *= ratio) grid.push_back(1.0 + x);
  return grid;
}

ComparisonReport comparison_sup(const RadialKernel& k,
                                const std::vector<double>& t_grid,
                                const std::vector<double>& r_grid) {
  const std::vector<double>& ts = t_grid.empty() ? default_t_grid() : t_grid;
  const std::vector<double>& rs = r_grid.empty() ? default_r_grid() : r_grid;
  ComparisonReport rep;
  const int n = k.dim;
  for (double r : rs) {
    const double denom = std::abs(k.profile(r));
    for (double t : ts) {
      const double num = std::pow(t, -n) * std::abs(k.profile(r / t));
      double ratio;
      if (denom == 0.0) {
        if (num == 0.0) continue;  // 0/0: both vanish, nothing to compare
        rep.finite = false;
        rep.t_at_sup = t;
        rep.r_at_sup = r;
        rep.sup_ratio = std::numeric_limits<double>::infinity();
        return rep;
      }
      ratio = num / denom;
      if (ratio > rep.sup_ratio) {
        rep.sup_ratio = ratio;
        rep.t_at_sup = t;
        rep.r_at_sup = r;
      }
    }
  }
  return rep;
}

DecayReport decay_check(const RadialKernel& k) {
  const int n = k.dim;
  const double ref = std::max(std::abs(k.profile(1.0)), 1e-300);
  auto weighted = [&](double r) { return std::pow(r, n) * std::abs(k.profile(r)); };

  DecayReport rep;
  rep.pass = true;
  // toward zero: sample r from 1e-2 down to 1e-8
  {
    double prev = std::numeric_limits<double>::infinity();
    double r = 1e-2;
    double final_v = 0.0;
    for (int i = 0; i <= 48; ++i, r /= std::pow(10.0, 0.125)) {
      const double v = weighted(r);
      if (v > prev * (1.0 + 1e-6) + 1e-300) {
        rep.pass = false;
        rep.detail = "r^n profile(r) is not monotone toward r = 0";
        return rep;
      }
      prev = v;
      final_v = v;
    }
    if (final_v >= 1e-6 * ref) {
      rep.pass = false;
      rep.detail = "r^n profile(r) does not vanish toward r = 0";
      return rep;
    }
  }
  // toward infinity: sample r from 1e2 up to 1e8
  {
    double prev = std::numeric_limits<double>::infinity();
    double r = 1e2;
    double final_v = 0.0;
    for (int i = 0; i <= 48; ++i, r *= std::pow(10.0, 0.125)) {
      const double v = weighted(r);
      if (v > prev * (1.0 + 1e-6) + 1e-300) {
        rep.pass = false;
        rep.detail = "r^n profile(r) is not monotone toward r = infinity";
        return rep;
      }
      prev = v;
      final_v = v;
    }
    if (final_v >= 1e-6 * ref) {
      rep.pass = false;
      rep.detail =
          "r^n profile(r) stays of order profile(1) toward r = infinity "
          "(integral tail cannot converge)";
      return rep;
    }
  }
  rep.detail = "r^n profile(r) vanishes monotonically at both ends";
  return rep;
}

}  // namespace fatou::kernels
