#include "fatou/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "fatou/hyperbolic.hpp"
#include "fatou/kernels.hpp"
#include "fatou/mellin.hpp"
#include "fatou/multconv.hpp"
#include "fatou/quadrature.hpp"

namespace fatou::harness {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

enum class Rule { both_converge, one_oscillates };

struct ScenarioDef {
  std::string claim;
  Verdict expected = Verdict::consistent;
  Rule rule = Rule::both_converge;
  bool t_descends = true;   // required direction of t_grid
  bool uses_r_grid = true;  // r_grid always walks toward zero when used
  std::function<ScenarioConfig()> defaults;
  std::function<void(const ScenarioConfig&, ScenarioReport&)> build;
};

std::vector<double> grid_points(const GridSpec& g) {
  return trace::geometric_grid(g.start, g.ratio, g.count);
}

void validate_grid(const GridSpec& g, bool descends, const char* what) {
  if (!(g.start > 0.0))
    throw ConfigError(std::string(what) + ": start must be positive");
  if (g.count < 24)
    throw ConfigError(std::string(what) + ": need at least 24 grid points");
  if (descends) {
    if (!(g.ratio > 0.0 && g.ratio < 1.0))
      throw ConfigError(std::string(what) +
                        ": ratio must be in (0,1) for a limit toward 0");
  } else if (!(g.ratio > 1.0)) {
    throw ConfigError(std::string(what) +
                      ": ratio must exceed 1 for a limit toward infinity");
  }
}

measures::RadialMeasure resolve_measure(const ScenarioConfig& cfg) {
  measures::RadialMeasure mu = measures::from_id(cfg.measure_id, cfg.dim);
  if (cfg.restriction_radius)
    mu = measures::restrict_to_ball(mu, *cfg.restriction_radius);
  return mu;
}

// Evaluates f over params and classifies.  An integration failure keeps the
// points computed so far, marks the trace undetermined, and leaves a note,
// so the report stays emittable (failed-trace marker rather than an abort).
void add_trace(ScenarioReport& rep, const ScenarioConfig& cfg,
               const std::string& name, const std::vector<double>& params,
               const std::function<Complex(double)>& f) {
  trace::LimitTrace tr;
  tr.name = name;
  std::size_t done = 0;
  try {
    for (; done < params.size(); ++done) {
      tr.param.push_back(params[done]);
      tr.value.push_back(f(params[done]));
    }
  } catch (const quad::IntegrationError& e) {
    tr.param.pop_back();
    std::ostringstream os;
    os << "trace '" << name << "' failed at param=" << params[done] << ": "
       << e.what();
    rep.notes.push_back(os.str());
    tr.classification.behavior = trace::Behavior::undetermined;
    tr.classification.window = cfg.window;
    tr.classification.detail = "integration failure; see notes";
    rep.traces.push_back(std::move(tr));
    return;
  }
  trace::classify(tr, cfg.window);
  rep.traces.push_back(std::move(tr));
}

// Shared shape of the measure-vs-kernel scenarios: one trace of kernel
// averages at the origin, one trace of ball averages.  heat_time means the
// grid parameter is diffusion time t and the kernel dilation is sqrt(t).
void traces_for_measure(const ScenarioConfig& cfg, ScenarioReport& rep,
                        const measures::RadialMeasure& mu,
                        const kernels::RadialKernel& k, const char* conv_name,
                        bool heat_time) {
  add_trace(rep, cfg, conv_name, grid_points(cfg.t_grid), [&](double t) {
    return measures::convolve_at_center(mu, k, heat_time ? std::sqrt(t) : t,
                                        cfg.quad_tol);
  });
  add_trace(rep, cfg, "mean_ratio", grid_points(cfg.r_grid), [&](double r) {
    return Complex(measures::mean_ratio(mu, r, cfg.quad_tol), 0.0);
  });
}

// ---- scenario builders ----------------------------------------------------

void build_measure_scenario(const ScenarioConfig& cfg, ScenarioReport& rep,
                            bool heat_time) {
  const measures::RadialMeasure mu = resolve_measure(cfg);
  const kernels::RadialKernel k = kernels::from_id(cfg.kernel_id, cfg.dim);
  traces_for_measure(cfg, rep, mu, k, heat_time ? "heat_average" : "convolution",
                     heat_time);
}

void build_rudin(const ScenarioConfig& cfg, ScenarioReport& rep) {
  const measures::RadialMeasure mu = resolve_measure(cfg);
  const kernels::RadialKernel k = kernels::from_id(cfg.kernel_id, cfg.dim);
  const mellin::TauberianReport taub = mellin::tauberian_check(k, 8.0, 8);
  {
    std::ostringstream os;
    os << "spectral non-vanishing check over y in [-8,8]: "
       << (taub.holds ? "holds" : "FAILS") << " (min |transform| = "
       << std::setprecision(6) << taub.min_abs << " at y = " << taub.y_at_min
       << ")";
    rep.notes.push_back(os.str());
  }
  traces_for_measure(cfg, rep, mu, k, "convolution", false);
}

void build_nec1(const ScenarioConfig& cfg, ScenarioReport& rep) {
  build_measure_scenario(cfg, rep, false);
  const trace::Classification& mr = rep.traces.back().classification;
  if (mr.behavior == trace::Behavior::oscillatory) {
    const double n = cfg.dim;
    std::ostringstream os;
    os << "mean-ratio amplitude " << std::setprecision(6) << mr.amplitude
       << "; analytic amplitude n/sqrt(n^2+pi^2) = "
       << n / std::sqrt(n * n + M_PI * M_PI);
    rep.notes.push_back(os.str());
  }
}

void build_mt2(const ScenarioConfig& cfg, ScenarioReport& rep) {
  const measures::RadialMeasure mu = resolve_measure(cfg);
  const kernels::RadialKernel k = kernels::from_id(cfg.kernel_id, cfg.dim);
  traces_for_measure(cfg, rep, mu, k, "convolution", false);
  if (cfg.growth_grid.count > 0) {
    rep.growth = measures::growth_check(mu, grid_points(cfg.growth_grid));
    if (!rep.growth->pass)
      rep.notes.push_back("growth check failed: " + rep.growth->detail);
  }
}

void build_transfer(const ScenarioConfig& cfg, ScenarioReport& rep) {
  const multconv::BoundedRadialFunction f =
      multconv::bounded_from_id(cfg.function_id, cfg.dim);
  const kernels::RadialKernel smooth = kernels::from_id(cfg.kernel_id, cfg.dim);
  const kernels::RadialKernel ball = kernels::ball_indicator(cfg.dim);
  const std::vector<double> pts = grid_points(cfg.t_grid);
  add_trace(rep, cfg, "smooth_average", pts, [&](double t) {
    return multconv::bounded_convolution(f, smooth, t, cfg.quad_tol);
  });
  add_trace(rep, cfg, "ball_average", pts, [&](double t) {
    return multconv::bounded_convolution(f, ball, t, cfg.quad_tol);
  });
}

void build_repnikov(const ScenarioConfig& cfg, ScenarioReport& rep) {
  const multconv::BoundedRadialFunction f =
      multconv::bounded_from_id(cfg.function_id, cfg.dim);
  const kernels::RadialKernel ball = kernels::from_id(cfg.kernel_id, cfg.dim);
  add_trace(rep, cfg, "ball_average", grid_points(cfg.t_grid), [&](double t) {
    return multconv::bounded_convolution(f, ball, t, cfg.quad_tol);
  });
  // the modulus trace is a pure function of the first one
  const trace::LimitTrace& base = rep.traces.back();
  trace::LimitTrace mod;
  mod.name = "ball_average_modulus";
  mod.param = base.param;
  mod.value.reserve(base.value.size());
  for (const Complex& v : base.value) mod.value.emplace_back(std::abs(v), 0.0);
  trace::classify(mod, cfg.window);
  rep.traces.push_back(std::move(mod));
}

void build_bounded_harmonic(const ScenarioConfig& cfg, ScenarioReport& rep) {
  const multconv::BoundedRadialFunction f =
      multconv::bounded_from_id(cfg.function_id, cfg.dim);
  const kernels::RadialKernel k = kernels::from_id(cfg.kernel_id, cfg.dim);
  add_trace(rep, cfg, "poisson_extension", grid_points(cfg.t_grid),
            [&](double t) {
              return multconv::bounded_convolution(f, k, t, cfg.quad_tol);
            });
  add_trace(rep, cfg, "boundary_profile", grid_points(cfg.r_grid),
            [&](double r) { return f.profile(r); });
}

void build_hyperbolic_fatou(const ScenarioConfig& cfg, ScenarioReport& rep) {
  const hyperbolic::HyperbolicContext ctx =
      hyperbolic::make_context(cfg.dim + 1);
  hyperbolic::EigenSpec spec;
  spec.ctx = ctx;
  spec.lambda = cfg.lambda;
  spec.C = cfg.C;
  spec.datum.measure = resolve_measure(cfg);
  const double scale_pow = cfg.lambda.imag() - ctx.rho;
  add_trace(rep, cfg, "scaled_eigenfunction", grid_points(cfg.t_grid),
            [&](double y) {
              return std::pow(y, scale_pow) *
                     hyperbolic::eigen_solution_at_center(spec, y, cfg.quad_tol);
            });
  add_trace(rep, cfg, "mean_ratio", grid_points(cfg.r_grid), [&](double r) {
    return Complex(
        measures::mean_ratio(*spec.datum.measure, r, cfg.quad_tol), 0.0);
  });
}

void build_hyperbolic_large_time(const ScenarioConfig& cfg,
                                 ScenarioReport& rep) {
  const hyperbolic::HyperbolicContext ctx =
      hyperbolic::make_context(cfg.dim + 1);
  hyperbolic::EigenSpec spec;
  spec.ctx = ctx;
  spec.lambda = cfg.lambda;
  spec.C = cfg.C;
  spec.datum.function = multconv::bounded_from_id(cfg.function_id, cfg.dim);
  const std::vector<double> pts = grid_points(cfg.t_grid);
  const Complex norm_pow =
      -(Complex(ctx.rho, 0.0) + Complex(0.0, 1.0) * cfg.lambda);
  add_trace(rep, cfg, "scaled_eigenfunction", pts, [&](double y) {
    return quad::pow_positive(y, norm_pow) *
           hyperbolic::eigen_solution_at_center(spec, y, cfg.quad_tol);
  });
  const double hardy_pow = cfg.lambda.imag() - ctx.rho;
  add_trace(rep, cfg, "hardy_scaled", pts, [&](double y) {
    return Complex(
        std::pow(y, hardy_pow) *
            std::abs(hyperbolic::eigen_solution_at_center(spec, y, cfg.quad_tol)),
        0.0);
  });
  {
    std::ostringstream os;
    os << "hardy_norm_estimate = " << std::setprecision(9)
       << hyperbolic::hardy_norm_estimate(spec, pts, cfg.quad_tol);
    rep.notes.push_back(os.str());
  }
}

// ---- registry --------------------------------------------------------------

ScenarioConfig base_config(const std::string& id) {
  ScenarioConfig cfg;
  cfg.id = id;
  return cfg;
}

std::string pi_token() {
  std::ostringstream os;
  os << std::setprecision(17) << M_PI;
  return os.str();
}

const std::vector<std::pair<std::string, ScenarioDef>>& registry() {
  static const std::vector<std::pair<std::string, ScenarioDef>> defs = [] {
    std::vector<std::pair<std::string, ScenarioDef>> v;

    v.push_back({"fatou_forward",
                 {"If the symmetric derivative of a measure exists at the "
                  "origin, averaging against a unit-mass dilated kernel "
                  "converges to the same value as the scale shrinks.",
                  Verdict::consistent, Rule::both_converge, true, true,
                  [] {
                    ScenarioConfig c = base_config("fatou_forward");
                    c.dim = 1;
                    c.kernel_id = "gaussian";
                    c.measure_id = "density:affine:1:1";
                    c.restriction_radius = 1.0;
                    return c;
                  },
                  [](const ScenarioConfig& c, ScenarioReport& r) {
                    build_measure_scenario(c, r, false);
                  }}});

    v.push_back({"rudin_converse",
                 {"For a kernel whose multiplicative spectrum never vanishes "
                  "and whose dilation ratios are controlled, convergence of "
                  "the kernel averages forces the symmetric derivative to "
                  "exist and equal the same limit.",
                  Verdict::consistent, Rule::both_converge, true, true,
                  [] {
                    ScenarioConfig c = base_config("rudin_converse");
                    c.dim = 1;
                    c.kernel_id = "poisson";
                    c.measure_id = "density:affine:1:1";
                    c.restriction_radius = 1.0;
                    return c;
                  },
                  build_rudin}});

    v.push_back({"nec1_counterexample",
                 {"A positive unit-mass kernel whose multiplicative spectrum "
                  "vanishes at +-pi admits a measure whose kernel averages "
                  "converge while its ball averages oscillate forever: the "
                  "spectral condition is necessary.",
                  Verdict::counterexample_confirmed, Rule::one_oscillates,
                  true, true,
                  [] {
                    ScenarioConfig c = base_config("nec1_counterexample");
                    c.dim = 1;
                    c.kernel_id = "counterexample";
                    c.measure_id = "counterexample";
                    c.t_grid = {1.0, std::exp(-1.0 / 3.0), 36};
                    c.r_grid = {1.0, std::exp(-1.0 / 3.0), 72};
                    return c;
                  },
                  build_nec1}});

    v.push_back({"mt2_growth",
                 {"For measures whose decade-over-decade ball-average growth "
                  "stabilizes, a monotone positive kernel transfers average "
                  "convergence to the symmetric derivative; the growth "
                  "hypothesis is checked, not assumed.",
                  Verdict::consistent, Rule::both_converge, true, true,
                  [] {
                    ScenarioConfig c = base_config("mt2_growth");
                    c.dim = 2;
                    c.kernel_id = "ball";
                    c.measure_id = "lebesgue";
                    c.growth_grid = {1.0, std::pow(1e4, 1.0 / 63.0), 64};
                    return c;
                  },
                  build_mt2}});

    v.push_back({"heat_positive",
                 {"Heat-flow averages of a boundary measure at the center "
                  "converge, as diffusion time shrinks, to the same limit as "
                  "the ball averages (grid parameter is time t; the kernel "
                  "dilation is sqrt(t)).",
                  Verdict::consistent, Rule::both_converge, true, true,
                  [] {
                    ScenarioConfig c = base_config("heat_positive");
                    c.dim = 2;
                    c.kernel_id = "gaussian";
                    c.measure_id = "density:affine:1:1";
                    c.restriction_radius = 1.0;
                    return c;
                  },
                  [](const ScenarioConfig& c, ScenarioReport& r) {
                    build_measure_scenario(c, r, true);
                  }}});

    v.push_back({"transfer_large_time",
                 {"For bounded data, large-time smooth-kernel averages and "
                  "plain ball averages converge or fail together, with equal "
                  "limits (the comparison runs in both directions).",
                  Verdict::consistent, Rule::both_converge, false, false,
                  [] {
                    ScenarioConfig c = base_config("transfer_large_time");
                    c.dim = 1;
                    c.kernel_id = "gaussian";
                    c.function_id = "f:plateau";
                    c.t_grid = {1.0, std::pow(10.0, 0.125), 49};
                    return c;
                  },
                  build_transfer}});

    v.push_back({"repnikov_counterexample",
                 {"Boundedness alone does not give large-time convergence: "
                  "the bounded datum |x|^{i pi} keeps its ball averages "
                  "circling forever while their modulus converges.",
                  Verdict::counterexample_confirmed, Rule::one_oscillates,
                  false, false,
                  [] {
                    ScenarioConfig c = base_config("repnikov_counterexample");
                    c.dim = 1;
                    c.kernel_id = "ball";
                    c.function_id = "f:logmode:" + pi_token();
                    c.t_grid = {1.0, 1.3, 48};
                    return c;
                  },
                  build_repnikov}});

    v.push_back({"bounded_harmonic",
                 {"The harmonic extension of bounded boundary data, evaluated "
                  "at the center, converges to the boundary value at the "
                  "origin as the height shrinks.",
                  Verdict::consistent, Rule::both_converge, true, true,
                  [] {
                    ScenarioConfig c = base_config("bounded_harmonic");
                    c.dim = 1;
                    c.kernel_id = "poisson";
                    c.function_id = "f:invlin";
                    return c;
                  },
                  build_bounded_harmonic}});

    v.push_back({"hyperbolic_fatou_converse",
                 {"For eigenfunctions of the hyperbolic Laplacian built from "
                  "a boundary measure, the height-scaled center values and "
                  "the boundary ball averages converge to the same limit as "
                  "the height shrinks.",
                  Verdict::consistent, Rule::both_converge, true, true,
                  [] {
                    ScenarioConfig c = base_config("hyperbolic_fatou_converse");
                    c.dim = 2;  // boundary dimension; hyperbolic space is 3-d
                    c.measure_id = "density:affine:1:1";
                    c.restriction_radius = 1.0;
                    c.lambda = {0.0, 1.0};
                    c.C = {1.0, 0.0};
                    return c;
                  },
                  build_hyperbolic_fatou}});

    v.push_back({"hyperbolic_large_time",
                 {"An eigenfunction built from constant bounded boundary data "
                  "tracks the predicted power of the height exactly at every "
                  "height, and its scale-invariant size stays 1.",
                  Verdict::consistent, Rule::both_converge, false, false,
                  [] {
                    ScenarioConfig c = base_config("hyperbolic_large_time");
                    c.dim = 1;  // boundary dimension; hyperbolic space is 2-d
                    c.function_id = "f:const:1";
                    c.lambda = {0.5, 1.0};
                    c.C = {0.0, 0.0};
                    c.t_grid = {1.0, 1.5, 48};
                    return c;
                  },
                  build_hyperbolic_large_time}});

    return v;
  }();
  return defs;
}

const ScenarioDef& find_def(const std::string& id) {
  for (const auto& [name, def] : registry())
    if (name == id) return def;
  throw ConfigError("unknown scenario '" + id + "' (see `list`)");
}

void validate_config(const ScenarioConfig& cfg, const ScenarioDef& def) {
  if (cfg.dim < 1) throw ConfigError("dim must be >= 1");
  if (!(cfg.quad_tol > 0.0)) throw ConfigError("quad_tol must be positive");
  if (!(cfg.verdict_tol > 0.0))
    throw ConfigError("verdict_tol must be positive");
  if (cfg.window < 4) throw ConfigError("window must be >= 4");
  validate_grid(cfg.t_grid, def.t_descends, "t_grid");
  if (def.uses_r_grid) validate_grid(cfg.r_grid, true, "r_grid");
  if (cfg.growth_grid.count > 0 && !(cfg.growth_grid.ratio > 1.0))
    throw ConfigError("growth_grid: ratio must exceed 1");
  if (cfg.restriction_radius && !(*cfg.restriction_radius > 0.0))
    throw ConfigError("restriction_radius must be positive");
}

Verdict derive_verdict(Rule rule, const std::vector<trace::LimitTrace>& traces,
                       double tol, std::vector<std::string>& notes) {
  std::size_t converged = 0, oscillatory = 0;
  for (const trace::LimitTrace& t : traces) {
    if (t.classification.behavior == trace::Behavior::converged) ++converged;
    if (t.classification.behavior == trace::Behavior::oscillatory)
      ++oscillatory;
  }
  if (rule == Rule::one_oscillates) {
    if (converged >= 1 && oscillatory >= 1)
      return Verdict::counterexample_confirmed;
    notes.push_back(
        "expected one converged and one oscillatory trace; observed " +
        std::to_string(converged) + " converged, " +
        std::to_string(oscillatory) + " oscillatory");
    return Verdict::inconclusive;
  }
  // both_converge
  if (converged != traces.size()) {
    std::string bad;
    for (const trace::LimitTrace& t : traces)
      if (t.classification.behavior != trace::Behavior::converged)
        bad += (bad.empty() ? "" : ", ") + t.name + " " +
               trace::to_string(t.classification.behavior);
    notes.push_back("not all traces converged: " + bad);
    return Verdict::inconclusive;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < traces.size(); ++i)
    for (std::size_t j = i + 1; j < traces.size(); ++j)
      worst = std::max(worst,
                       std::abs(traces[i].classification.limit -
                                traces[j].classification.limit));
  if (worst <= tol) return Verdict::consistent;
  std::ostringstream os;
  os << "limits disagree: max pairwise distance " << std::setprecision(6)
     << worst << " exceeds verdict tolerance " << tol;
  notes.push_back(os.str());
  return Verdict::inconclusive;
}

// ---- serialization ---------------------------------------------------------

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json grid_json(const GridSpec& g) {
  return json{{"start", g.start}, {"ratio", g.ratio}, {"count", g.count}};
}

json config_json(const ScenarioConfig& cfg) {
  json j;
  j["dim"] = cfg.dim;
  j["kernel"] = cfg.kernel_id;
  j["measure"] = cfg.measure_id;
  j["function"] = cfg.function_id;
  j["t_grid"] = grid_json(cfg.t_grid);
  j["r_grid"] = grid_json(cfg.r_grid);
  if (cfg.growth_grid.count > 0) j["growth_grid"] = grid_json(cfg.growth_grid);
  j["window"] = cfg.window;
  j["quad_tol"] = cfg.quad_tol;
  j["verdict_tol"] = cfg.verdict_tol;
  j["restriction_radius"] =
      cfg.restriction_radius ? json(*cfg.restriction_radius) : json(nullptr);
  j["lambda"] = complex_json(cfg.lambda);
  j["C"] = complex_json(cfg.C);
  j["classifier"] = json{{"rel_tol", kTraceRelTol}, {"abs_tol", kTraceAbsTol}};
  return j;
}

json trace_json(const trace::LimitTrace& tr) {
  json j;
  j["name"] = tr.name;
  j["csv"] = tr.name + ".csv";
  j["points"] = tr.value.size();
  const trace::Classification& c = tr.classification;
  j["classification"] = json{{"behavior", trace::to_string(c.behavior)},
                             {"slow_convergence", c.slow_convergence},
                             {"window", c.window},
                             {"detail", c.detail}};
  switch (c.behavior) {
    case trace::Behavior::converged:
      j["estimate"] = json{{"limit", complex_json(c.limit)}};
      break;
    case trace::Behavior::oscillatory:
      j["estimate"] = json{{"center", complex_json(c.center)},
                           {"amplitude", c.amplitude}};
      break;
    default:
      j["estimate"] = nullptr;
  }
  return j;
}

json report_json(const ScenarioReport& rep) {
  json j;
  j["scenario"] = rep.id;
  j["version"] = kVersion;
  j["claim"] = rep.claim;
  j["config"] = config_json(rep.config);
  j["traces"] = json::array();
  for (const trace::LimitTrace& tr : rep.traces)
    j["traces"].push_back(trace_json(tr));
  if (rep.growth) {
    j["growth"] = json{{"pass", rep.growth->pass},
                       {"sup_ratio", rep.growth->sup_ratio},
                       {"sup_top_decade", rep.growth->sup_top_decade},
                       {"sup_prev_decade", rep.growth->sup_prev_decade},
                       {"detail", rep.growth->detail}};
  }
  j["notes"] = rep.notes;
  j["verdict"] = to_string(rep.verdict);
  j["expected"] = to_string(rep.expected);
  return j;
}

void write_csv(const fs::path& path, const trace::LimitTrace& tr) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "param,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < tr.value.size(); ++i)
    out << tr.param[i] << ',' << tr.value[i].real() << ','
        << tr.value[i].imag() << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "consistent-with-theorem";
    case Verdict::counterexample_confirmed:
      return "counterexample-behavior-confirmed";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<std::string> scenario_ids() {
  std::vector<std::string> ids;
  for (const auto& [name, def] : registry()) ids.push_back(name);
  return ids;
}

std::string scenario_claim(const std::string& id) { return find_def(id).claim; }

Verdict scenario_expected(const std::string& id) {
  return find_def(id).expected;
}

ScenarioConfig default_config(const std::string& id) {
  return find_def(id).defaults();
}

namespace {

Complex complex_from_json(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(what + " must be a number or [re, im]");
}

void grid_from_json(GridSpec& g, const json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be an object");
  for (const auto& [key, val] : j.items()) {
    if (key == "start")
      g.start = val.get<double>();
    else if (key == "ratio")
      g.ratio = val.get<double>();
    else if (key == "count")
      g.count = val.get<std::size_t>();
    else
      throw ConfigError(what + ": unknown key '" + key + "'");
  }
}

}  // namespace

void apply_config_file(ScenarioConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("config root must be an object keyed by scenario id");
  const auto it = doc.find(config.id);
  if (it == doc.end()) return;
  try {
    for (const auto& [key, val] : it->items()) {
      if (key == "dim")
        config.dim = val.get<int>();
      else if (key == "kernel")
        config.kernel_id = val.get<std::string>();
      else if (key == "measure")
        config.measure_id = val.get<std::string>();
      else if (key == "function")
        config.function_id = val.get<std::string>();
      else if (key == "t_grid")
        grid_from_json(config.t_grid, val, "t_grid");
      else if (key == "r_grid")
        grid_from_json(config.r_grid, val, "r_grid");
      else if (key == "growth_grid")
        grid_from_json(config.growth_grid, val, "growth_grid");
      else if (key == "window")
        config.window = val.get<std::size_t>();
      else if (key == "quad_tol")
        config.quad_tol = val.get<double>();
      else if (key == "verdict_tol")
        config.verdict_tol = val.get<double>();
      else if (key == "restriction_radius")
        config.restriction_radius =
            val.is_null() ? std::nullopt
                          : std::optional<double>(val.get<double>());
      else if (key == "lambda")
        config.lambda = complex_from_json(val, "lambda");
      else if (key == "C")
        config.C = complex_from_json(val, "C");
      else
        throw ConfigError("config for '" + config.id + "': unknown key '" +
                          key + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("config for '" + config.id + "': " + e.what());
  }
}

trace::Classification estimate_limit(const std::vector<Complex>& values,
                                     std::size_t window) {
  if (values.size() < 24)
    throw std::invalid_argument("estimate_limit: need at least 24 points");
  return trace::classify(values, window);
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  const ScenarioDef& def = find_def(config.id);
  validate_config(config, def);

  ScenarioReport rep;
  rep.id = config.id;
  rep.claim = def.claim;
  rep.expected = def.expected;
  rep.config = config;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    def.build(config, rep);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario '") + config.id + "': " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("scenario '") + config.id + "': " + e.what());
  }
  rep.verdict =
      derive_verdict(def.rule, rep.traces, config.verdict_tol, rep.notes);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

void emit(const ScenarioReport& report, const std::string& out_dir,
          const std::string& format) {
  const bool want_csv = format == "csv" || format == "both";
  const bool want_json = format == "json" || format == "both";
  if (!want_csv && !want_json)
    throw ConfigError("unknown format '" + format +
                      "' (expected csv, json, or both)");
  const fs::path dir = fs::path(out_dir) / report.id;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory " + dir.string() + ": " +
                  ec.message());
  if (want_csv)
    for (const trace::LimitTrace& tr : report.traces)
      write_csv(dir / (tr.name + ".csv"), tr);
  if (want_json) {
    const fs::path p = dir / "report.json";
    std::ofstream out(p);
    if (!out) throw IoError("cannot open " + p.string() + " for writing");
    out << report_json(report).dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write failed for " + p.string());
  }
}

int run_suite(const std::vector<std::string>& ids,
              const std::string& config_path, const std::string& out_dir,
              const std::string& format, std::ostream& log) {
  const std::vector<std::string> run_ids =
      ids.empty() ? scenario_ids() : ids;
  std::size_t consistent = 0, counterexample = 0, inconclusive = 0,
              unexpected = 0;
  bool growth_seen = false, growth_ok = true;
  for (const std::string& id : run_ids) {
    ScenarioConfig cfg = default_config(id);
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    const ScenarioReport rep = run_scenario(cfg);
    emit(rep, out_dir, format);

    const bool match = rep.verdict == rep.expected;
    if (!match) ++unexpected;
    if (rep.growth) {
      growth_seen = true;
      if (!rep.growth->pass) growth_ok = false;
    } else if (rep.verdict == Verdict::consistent) {
      ++consistent;
    } else if (rep.verdict == Verdict::counterexample_confirmed) {
      ++counterexample;
    } else {
      ++inconclusive;
    }
    log << rep.id << ": " << to_string(rep.verdict);
    if (!match) log << "  [expected " << to_string(rep.expected) << "]";
    log << "  (" << std::fixed << std::setprecision(2) << rep.wall_seconds
        << " s)" << std::defaultfloat << '\n';
    for (const std::string& note : rep.notes) log << "  note: " << note << '\n';
  }
  log << "verdicts: consistent-with-theorem x" << consistent
      << ", counterexample-behavior-confirmed x" << counterexample;
  if (inconclusive > 0) log << ", inconclusive x" << inconclusive;
  if (growth_seen)
    log << ", growth-check " << (growth_ok ? "pass" : "FAIL");
  log << '\n';
  return (unexpected == 0 && growth_ok) ? 0 : 2;
}

}  // namespace fatou::harness
