// Acceptance suite: every release criterion, one [PASS]/[FAIL] line each.
//
// Each criterion function measures what the criterion states and nothing
// else; tolerances and runtime budgets are asserted where stated.  The exit
// code is the number of failed criteria, so `ctest` treats any miss as a
// test failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fatou/harness.hpp"
#include "fatou/hyperbolic.hpp"
#include "fatou/kernels.hpp"
#include "fatou/measures.hpp"
#include "fatou/mellin.hpp"
#include "fatou/multconv.hpp"
#include "fatou/quadrature.hpp"
#include "fatou/specfun.hpp"
#include "fatou/trace.hpp"

namespace {

using namespace fatou;
using Complex = std::complex<double>;

struct CriterionResult {
  bool pass = true;
  std::string summary;                 // measured highlights for the status line
  std::vector<std::string> failures;   // printed under a [FAIL] line
  std::vector<std::string> notes;      // printed as [NOTE] lines either way
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

void check(CriterionResult& r, bool ok, const std::string& what) {
  if (!ok) {
    r.pass = false;
    r.failures.push_back(what);
  }
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v;
  v.reserve(count);
  for (int i = 0; i < count; ++i)
    v.push_back(a + (b - a) * static_cast<double>(i) / (count - 1));
  return v;
}

std::string pi_token() {
  std::ostringstream os;
  os << std::setprecision(17) << M_PI;
  return os.str();
}

// Deterministic uniform in [0,1): fixed-width mt19937_64 bits, so the sample
// set is identical across standard libraries (std::uniform_real_distribution
// is not pinned down by the standard).
double canonical(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// 1. Closed-form transforms against quadrature across the kernel catalogue.
CriterionResult criterion1() {
  CriterionResult r;
  const std::vector<double> ys = linspace(-8.0, 8.0, 81);
  double worst = 0.0;
  std::string worst_at;
  for (int n : {1, 2, 3}) {
    std::vector<kernels::RadialKernel> ks;
    ks.push_back(kernels::gaussian(n));
    ks.push_back(kernels::ball_indicator(n));
    ks.push_back(kernels::poisson(n));
    ks.push_back(kernels::stretched_exponential(n, 0.5 * n, 1.0));
    ks.push_back(kernels::from_id(
        "hyperbolic:psi:" + std::to_string(n + 1) + ":1i", n));
    for (const auto& k : ks) {
      for (double y : ys) {
        const double dev =
            std::abs(mellin::transform(k, y) - mellin::radial_mellin(k, y));
        if (dev > worst) {
          worst = dev;
          worst_at = k.name + " n=" + std::to_string(n) + " y=" + fmt(y);
        }
      }
    }
    // The borderline kernel 1/((1+r^2)^{n/2} log(2+r)) is not integrable and
    // has no closed-form transform, so there is nothing to cross-validate;
    // the honest assertion is that its transform integral is rejected as
    // divergent instead of silently producing a number.
    quad::Options opts;
    opts.max_panels = 100000;  // fail fast instead of grinding the default budget
    bool threw = false;
    try {
      (void)mellin::radial_mellin(kernels::log_damped_power(n, 0.5 * n, 1.0),
                                  0.0, opts);
    } catch (const quad::IntegrationError&) {
      threw = true;
    }
    check(r, threw,
          "K(alpha=" + fmt(0.5 * n) +
              ",beta=1), n=" + std::to_string(n) +
              ": divergent transform integral was not diagnosed");
  }
  check(r, worst <= 1e-7,
        "max |closed form - quadrature| = " + fmt(worst) + " at " + worst_at +
            " exceeds 1e-7");
  r.notes.push_back(
      "borderline kernel K(n/2,1) is non-integrable with no closed form; its "
      "slot asserts the quadrature rejects the divergent integral, and the "
      "integrable G(n/2,1) fills the five-kernel cross-validation instead");
  r.summary = "max dev " + fmt(worst) + " over 5 kernels x n in {1,2,3} x 81 y";
  return r;
}

// ---------------------------------------------------------------------------
// 2. The oscillating-measure construction, end to end (n = 1, 2).
CriterionResult criterion2() {
  CriterionResult r;
  double worst_transform = 0.0, worst_conv = 0.0, worst_mr = 0.0,
         worst_amp_rel = 0.0;
  for (int n : {1, 2}) {
    const auto phi = kernels::counterexample_kernel(n);
    const auto mu = measures::counterexample_measure(n);

    // (a) the kernel's multiplicative spectrum vanishes at y = pi
    const double at_pi = std::abs(mellin::radial_mellin(phi, M_PI));
    worst_transform = std::max(worst_transform, at_pi);
    check(r, at_pi <= 1e-7,
          "n=" + std::to_string(n) + ": |transform at pi| = " + fmt(at_pi));

    // (b) kernel averages of the measure are constant: mu * phi_t(0) = 2
    const auto ts =
        trace::geometric_grid(1.0, std::pow(1e-3, 1.0 / 47.0), 48);
    for (double t : ts) {
      const double dev =
          std::abs(measures::convolve_at_center(mu, phi, t) - 2.0);
      worst_conv = std::max(worst_conv, dev);
    }
    check(r, worst_conv <= 1e-5,
          "n=" + std::to_string(n) +
              ": kernel average deviates from 2 by " + fmt(worst_conv));

    // (c) ball averages match their closed form pointwise
    for (double rr : ts) {
      const Complex ripi = std::polar(1.0, M_PI * std::log(rr));
      const double want = 2.0 + n * (ripi / Complex(n, M_PI)).real();
      const double dev = std::abs(measures::mean_ratio(mu, rr) - want);
      worst_mr = std::max(worst_mr, dev);
    }
    check(r, worst_mr <= 1e-7,
          "n=" + std::to_string(n) +
              ": mean ratio deviates from closed form by " + fmt(worst_mr));

    // (d) the classifier sees the oscillation and sizes it correctly
    const auto tr = measures::sym_derivative_trace(
        mu, trace::geometric_grid(1.0, std::exp(-1.0 / 32.0), 384), 128);
    const double amp_exact = n / std::sqrt(n * n + M_PI * M_PI);
    check(r, tr.classification.behavior == trace::Behavior::oscillatory,
          "n=" + std::to_string(n) + ": ball-average trace classified " +
              trace::to_string(tr.classification.behavior) +
              ", expected oscillatory");
    const double rel =
        std::fabs(tr.classification.amplitude - amp_exact) / amp_exact;
    worst_amp_rel = std::max(worst_amp_rel, rel);
    check(r, rel <= 0.01,
          "n=" + std::to_string(n) + ": amplitude " +
              fmt(tr.classification.amplitude) + " vs " + fmt(amp_exact) +
              " (relative error " + fmt(rel) + ")");
  }
  r.summary = "transform@pi<=" + fmt(worst_transform) + ", conv dev<=" +
              fmt(worst_conv) + ", M dev<=" + fmt(worst_mr) +
              ", amp rel err<=" + fmt(worst_amp_rel);
  return r;
}

// ---------------------------------------------------------------------------
// 3. Exchange identity between kernel averages and ball averages.
CriterionResult criterion3() {
  CriterionResult r;
  const auto r24 = trace::geometric_grid(20.0, 0.75, 24);
  double worst = 0.0;
  std::string worst_at;
  for (int n : {1, 2}) {
    struct Pair {
      measures::RadialMeasure mu;
      kernels::RadialKernel k;
      const char* label;
    };
    const std::vector<Pair> pairs = {
        {measures::restrict_to_ball(measures::lebesgue(n), 1.0),
         kernels::poisson(n), "restricted Lebesgue / poisson"},
        {measures::counterexample_measure(n), kernels::counterexample_kernel(n),
         "oscillating measure / constructed kernel"},
        {measures::from_id("mix:demo", n), kernels::gaussian(n),
         "density-plus-atoms mix / gaussian"},
    };
    for (const auto& p : pairs) {
      const auto rep = multconv::check_H_identity(p.mu, p.k, r24);
      if (rep.max_residual > worst) {
        worst = rep.max_residual;
        worst_at = std::string(p.label) + " n=" + std::to_string(n);
      }
      check(r, rep.max_residual <= 1e-6,
            std::string(p.label) + " n=" + std::to_string(n) + ": residual " +
                fmt(rep.max_residual) + " at r=" + fmt(rep.r_at_max));
    }
  }
  r.summary = "max residual " + fmt(worst) + " (" + worst_at +
              ") over 24 radii x 6 pairs";
  return r;
}

// ---------------------------------------------------------------------------
// 4. Kernel averages and ball averages agree for well-behaved densities.
CriterionResult criterion4() {
  CriterionResult r;
  const auto ts = trace::geometric_grid(1.0, 0.75, 48);
  const auto rs = trace::geometric_grid(1.0, 0.75, 48);
  struct Case {
    measures::RadialMeasure mu;
    double conv_tol;
    bool exact;  // limits must hit 1 to 1e-8
    const char* label;
  };
  const std::vector<Case> cases = {
      {measures::lebesgue(1), 1e-9, true, "constant density"},
      {measures::restrict_to_ball(measures::affine_density(1, 1.0, 1.0), 1.0),
       1e-9, false, "restricted affine density"},
      // the 1/r phase of this density is unresolvable near 0 by design;
      // a loosened quadrature tolerance keeps the cost sane and is still
      // five orders below the agreement budget
      {measures::rsin_density(1), 1e-7, false, "r sin(1/r) density"},
  };
  double worst_gap = 0.0;
  for (const auto& cs : cases) {
    for (const char* kid : {"poisson", "gaussian"}) {
      const auto k = kernels::from_id(kid, 1);
      std::vector<Complex> conv;
      conv.reserve(ts.size());
      for (double t : ts)
        conv.push_back(measures::convolve_at_center(cs.mu, k, t, cs.conv_tol));
      const auto conv_cls = harness::estimate_limit(conv, 12);
      const auto mr = measures::sym_derivative_trace(cs.mu, rs, 12);
      const std::string label =
          std::string(cs.label) + " / " + kid;

      check(r, conv_cls.behavior == trace::Behavior::converged,
            label + ": kernel-average trace classified " +
                trace::to_string(conv_cls.behavior));
      check(r, mr.classification.behavior == trace::Behavior::converged,
            label + ": ball-average trace classified " +
                trace::to_string(mr.classification.behavior));
      if (conv_cls.behavior == trace::Behavior::converged &&
          mr.classification.behavior == trace::Behavior::converged) {
        const double gap =
            std::abs(conv_cls.limit - mr.classification.limit);
        worst_gap = std::max(worst_gap, gap);
        check(r, gap <= 5e-3,
              label + ": limits differ by " + fmt(gap));
        if (cs.exact) {
          check(r, std::abs(conv_cls.limit - 1.0) <= 1e-8,
                label + ": kernel-average limit misses 1 by " +
                    fmt(std::abs(conv_cls.limit - 1.0)));
          check(r, std::abs(mr.classification.limit - 1.0) <= 1e-8,
                label + ": ball-average limit misses 1 by " +
                    fmt(std::abs(mr.classification.limit - 1.0)));
        }
      }
    }
  }
  r.summary = "worst limit gap " + fmt(worst_gap) +
              " over 3 densities x {poisson, gaussian}";
  return r;
}

// ---------------------------------------------------------------------------
// 5. Bounded datum |x|^{i pi}: ball averages circle forever, exactly.
CriterionResult criterion5() {
  CriterionResult r;
  const auto f = multconv::bounded_from_id("f:logmode:" + pi_token(), 1);
  const auto ball = kernels::ball_indicator(1);
  const auto ts = trace::geometric_grid(1.0, 1.3, 48);
  std::vector<Complex> values;
  values.reserve(ts.size());
  double worst = 0.0;
  for (double t : ts) {
    const Complex got = multconv::bounded_convolution(f, ball, t);
    const Complex want =
        quad::pow_positive(t, Complex(0.0, M_PI)) / Complex(1.0, M_PI);
    worst = std::max(worst, std::abs(got - want));
    values.push_back(got);
  }
  check(r, worst <= 1e-8,
        "max deviation from t^{i pi}/(1+i pi) is " + fmt(worst));
  const auto cls = harness::estimate_limit(values, 12);
  check(r, cls.behavior == trace::Behavior::oscillatory,
        "trace classified " + trace::to_string(cls.behavior) +
            ", expected oscillatory");
  r.summary = "max closed-form dev " + fmt(worst) + " over 48 scales; trace " +
              trace::to_string(cls.behavior);
  return r;
}

// ---------------------------------------------------------------------------
// 6. Large-scale transfer for the plateau datum 3 + (1+r)^{-1/2}.
CriterionResult criterion6() {
  CriterionResult r;
  const auto f = multconv::bounded_from_id("f:plateau", 1);
  const auto ts = trace::geometric_grid(1.0, std::pow(10.0, 0.125), 49);
  double worst_end = 0.0;
  for (const char* kid : {"gaussian", "ball"}) {
    const auto k = kernels::from_id(kid, 1);
    std::vector<Complex> values;
    values.reserve(ts.size());
    for (double t : ts)
      values.push_back(multconv::bounded_convolution(f, k, t));
    const double end_dev = std::abs(values.back() - Complex(3.0, 0.0));
    worst_end = std::max(worst_end, end_dev);
    check(r, end_dev <= 5e-3,
          std::string(kid) + ": value at t=1e6 misses 3 by " + fmt(end_dev));
    bool monotone_tail = true;
    for (std::size_t i = values.size() - 16; i + 1 < values.size(); ++i)
      if (!(values[i + 1].real() < values[i].real() + 1e-12))
        monotone_tail = false;
    check(r, monotone_tail,
          std::string(kid) + ": tail of the trace is not monotone");
    const auto cls = harness::estimate_limit(values, 12);
    check(r,
          cls.behavior == trace::Behavior::converged &&
              std::abs(cls.limit - Complex(3.0, 0.0)) <= 5e-3,
          std::string(kid) + ": trace classified " +
              trace::to_string(cls.behavior) + " with limit off 3 by " +
              fmt(std::abs(cls.limit - Complex(3.0, 0.0))));
  }
  r.summary = "both averages within " + fmt(worst_end) +
              " of 3 at t=1e6, tails monotone";
  return r;
}

// ---------------------------------------------------------------------------
// 7. Boundary-kernel normalization in the hyperbolic module.
CriterionResult criterion7() {
  CriterionResult r;
  const std::vector<Complex> lambdas = {{0.0, 0.5}, {0.0, 1.0}, {0.5, 1.0}};
  double worst_mass = 0.0, worst_route = 0.0;
  for (int n : {2, 3}) {
    const auto ctx = hyperbolic::make_context(n);
    for (Complex lam : lambdas) {
      const auto psi = hyperbolic::psi_lambda(ctx, lam);
      const double mass_dev =
          std::abs(mellin::radial_mellin(psi, 0.0) - Complex(1.0, 0.0));
      worst_mass = std::max(worst_mass, mass_dev);
      check(r, mass_dev <= 1e-8,
            "n=" + std::to_string(n) + " lambda=(" + fmt(lam.real()) + "," +
                fmt(lam.imag()) + "): |mass - 1| = " + fmt(mass_dev));
      const Complex dn =
          hyperbolic::d_lambda(ctx, lam, hyperbolic::DLambdaMethod::numeric);
      const Complex dc = hyperbolic::d_lambda(
          ctx, lam, hyperbolic::DLambdaMethod::closed_form);
      const double route_dev = std::abs(dn - dc);
      worst_route = std::max(worst_route, route_dev);
      check(r, route_dev <= 1e-8,
            "n=" + std::to_string(n) + " lambda=(" + fmt(lam.real()) + "," +
                fmt(lam.imag()) +
                "): numeric vs closed-form constant differ by " +
                fmt(route_dev));
    }
  }
  const double exact_dev = std::abs(
      hyperbolic::d_lambda(hyperbolic::make_context(3), {0.0, 1.0}) -
      Complex(1.0 / M_PI, 0.0));
  check(r, exact_dev <= 1e-8,
        "n=3 lambda=i: constant misses 1/pi by " + fmt(exact_dev));
  r.summary = "mass dev<=" + fmt(worst_mass) + ", route dev<=" +
              fmt(worst_route) + ", 1/pi dev " + fmt(exact_dev);
  return r;
}

// ---------------------------------------------------------------------------
// 8. Eigen-equation residuals: small, and shrinking at second order.
CriterionResult criterion8() {
  CriterionResult r;
  double worst_res = 0.0;
  double worst_median = 4.0;
  std::uint64_t seed = 20240815;
  for (int n : {2, 3}) {
    const auto ctx = hyperbolic::make_context(n);
    const std::vector<Complex> lambdas = {
        {0.0, 0.5}, {0.0, 1.0}, {0.5, 1.0}, {0.0, ctx.rho}};
    for (Complex lam : lambdas) {
      std::mt19937_64 rng(seed++);
      std::vector<double> ratios;
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(ctx.boundary_dim);
        for (double& c : x) c = -2.0 + 4.0 * canonical(rng);
        const double y = 2.0 + 2.0 * canonical(rng);
        const double res1 =
            hyperbolic::gen_poisson_residual(ctx, lam, x, y, 1e-3);
        const double res2 =
            hyperbolic::gen_poisson_residual(ctx, lam, x, y, 5e-4);
        worst_res = std::max(worst_res, res1);
        check(r, res1 <= 1e-5,
              "n=" + std::to_string(n) + " lambda=(" + fmt(lam.real()) + "," +
                  fmt(lam.imag()) + ") at y=" + fmt(y) + ": residual " +
                  fmt(res1));
        ratios.push_back(res1 / res2);
      }
      std::sort(ratios.begin(), ratios.end());
      const double median = 0.5 * (ratios[9] + ratios[10]);
      if (std::fabs(median - 4.0) > std::fabs(worst_median - 4.0))
        worst_median = median;
      check(r, median >= 3.5 && median <= 4.5,
            "n=" + std::to_string(n) + " lambda=(" + fmt(lam.real()) + "," +
                fmt(lam.imag()) + "): median halving ratio " + fmt(median) +
                " outside [3.5, 4.5]");
    }
  }
  r.notes.push_back(
      "sample box |x_j| <= 2, y in [2,4] keeps the kernel scale O(1) (heights "
      "near 0 would need h shrunk with y for the stencil to stay "
      "informative); the stencil runs in extended precision so the roundoff "
      "floor sits far below the h^2 truncation term at both step sizes, and "
      "the halving ratio is summarized by its median over the 20 points");
  r.summary = "max residual " + fmt(worst_res) + " at h=1e-3, median ratios " +
              "closest-to-worst " + fmt(worst_median);
  return r;
}

// ---------------------------------------------------------------------------
// 9. Boundary-measure eigenfunction scenario over a small parameter sweep.
CriterionResult criterion9() {
  CriterionResult r;
  double worst_gap = 0.0;
  for (const bool lebesgue : {false, true}) {
    for (const double beta : {0.5, 1.0}) {
      for (const double cc : {0.0, 1.0}) {
        harness::ScenarioConfig cfg =
            harness::default_config("hyperbolic_fatou_converse");
        if (lebesgue) {
          cfg.measure_id = "lebesgue";
          cfg.restriction_radius.reset();
        }
        cfg.lambda = {0.0, beta};
        cfg.C = {cc, 0.0};
        const std::string label =
            std::string(lebesgue ? "lebesgue" : "affine density") +
            ", beta=" + fmt(beta) + ", C=" + fmt(cc);
        const auto rep = harness::run_scenario(cfg);
        check(r, rep.verdict == harness::Verdict::consistent,
              label + ": verdict " + harness::to_string(rep.verdict));
        if (rep.traces.size() != 2) {
          check(r, false, label + ": expected 2 traces");
          continue;
        }
        const auto& c0 = rep.traces[0].classification;
        const auto& c1 = rep.traces[1].classification;
        check(r, c0.behavior == trace::Behavior::converged,
              label + ": eigenfunction trace " + trace::to_string(c0.behavior));
        check(r, c1.behavior == trace::Behavior::converged,
              label + ": ball-average trace " + trace::to_string(c1.behavior));
        if (c0.behavior == trace::Behavior::converged &&
            c1.behavior == trace::Behavior::converged) {
          const double gap = std::abs(c0.limit - c1.limit);
          const double off1 = std::abs(c0.limit - Complex(1.0, 0.0));
          worst_gap = std::max({worst_gap, gap, off1});
          check(r, gap <= 5e-3, label + ": limits differ by " + fmt(gap));
          check(r, off1 <= 5e-3,
                label + ": common limit misses 1 by " + fmt(off1));
        }
      }
    }
  }
  r.summary = "8 parameter combinations consistent; worst limit gap " +
              fmt(worst_gap);
  return r;
}

// ---------------------------------------------------------------------------
// 10. The whole default scenario suite, exactly as the CLI runs it.
CriterionResult criterion10() {
  CriterionResult r;
  const auto dir = std::filesystem::temp_directory_path() / "fatou_acceptance";
  std::filesystem::remove_all(dir);
  std::ostringstream log;
  const int rc = harness::run_suite({}, "", dir.string(), "json", log);
  check(r, rc == 0, "suite exit code " + std::to_string(rc));
  const std::string text = log.str();
  for (const char* needle :
       {"consistent-with-theorem x7", "counterexample-behavior-confirmed x2",
        "growth-check pass"}) {
    check(r, text.find(needle) != std::string::npos,
          std::string("tally line missing '") + needle + "'");
  }
  std::istringstream lines(text);
  std::string line, tally;
  while (std::getline(lines, line))
    if (line.rfind("verdicts:", 0) == 0) tally = line;
  r.summary = tally.empty() ? "tally line not found" : tally;
  return r;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    std::function<CriterionResult()> run;
    double budget_seconds;  // 0 = no stated budget
  };
  const std::vector<Entry> entries = {
      {1, "closed-form transforms match quadrature across the catalogue",
       criterion1, 60.0},
      {2, "oscillating measure: spectrum zero, constant kernel averages, "
          "oscillating ball averages", criterion2, 120.0},
      {3, "exchange identity between kernel and ball averages", criterion3,
       0.0},
      {4, "kernel and ball averages agree for well-behaved densities",
       criterion4, 0.0},
      {5, "log-periodic bounded datum circles forever under ball averages",
       criterion5, 0.0},
      {6, "plateau datum: both averaging routes settle at 3", criterion6, 0.0},
      {7, "hyperbolic boundary kernels have unit mass and consistent "
          "normalizing constants", criterion7, 0.0},
      {8, "eigen-equation residuals are small and second order", criterion8,
       0.0},
      {9, "boundary-measure eigenfunction scenario sweep", criterion9, 0.0},
      {10, "full default scenario suite exits clean", criterion10, 900.0},
  };

  int failures = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = e.run();
    } catch (const std::exception& ex) {
      res.pass = false;
      res.failures.push_back(std::string("unexpected exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (e.budget_seconds > 0.0 && secs > e.budget_seconds) {
      res.pass = false;
      res.failures.push_back("runtime " + fmt(secs) + " s exceeds budget " +
                             fmt(e.budget_seconds) + " s");
    }
    if (!res.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.1f s)\n",
                res.pass ? "PASS" : "FAIL", e.number, e.title, secs);
    if (!res.summary.empty()) std::printf("       %s\n", res.summary.c_str());
    for (const auto& n : res.notes)
      std::printf("[NOTE] %s\n", n.c_str());
    for (const auto& f : res.failures)
      std::printf("       failed: %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
  return failures;
}
