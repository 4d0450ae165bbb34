#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatou/measures.hpp"
#include "fatou/trace.hpp"

// Scenario runner: wires kernels, measures, and transforms into named,
// reproducible experiments.  Each scenario evaluates a matched pair of
// limit traces (e.g. kernel averages against ball averages), classifies
// them, and derives a verdict purely from the classifications.
namespace fatou::harness {

using Complex = std::complex<double>;

inline constexpr const char* kVersion = "1.0.0";

// Relative/absolute tolerances baked into the trace classifier; echoed into
// every report so the finite-grid stand-in for a limit is explicit.
inline constexpr double kTraceRelTol = 1e-4;
inline constexpr double kTraceAbsTol = 1e-6;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Geometric grid start * ratio^k, k = 0..count-1.  Ratio < 1 walks toward
// zero, ratio > 1 toward infinity; each scenario declares which direction
// its parameters must take.
struct GridSpec {
  double start = 1.0;
  double ratio = 0.75;
  std::size_t count = 48;
};

struct ScenarioConfig {
  std::string id;
  int dim = 1;              // data dimension (boundary dimension if hyperbolic)
  std::string kernel_id;    // kernels::from_id, may be empty if unused
  std::string measure_id;   // measures::from_id, may be empty if unused
  std::string function_id;  // multconv::bounded_from_id, may be empty if unused
  GridSpec t_grid;          // evolution parameter (t or height y)
  GridSpec r_grid;          // radius parameter for ball-average traces
  GridSpec growth_grid{1.0, 1.25, 0};  // count 0 = no growth check
  std::size_t window = 12;             // classifier window
  double quad_tol = 1e-9;
  double verdict_tol = 5e-3;           // |L1 - L2| bound for agreement
  std::optional<double> restriction_radius;  // applied to the measure
  Complex lambda{0.0, 1.0};            // hyperbolic spectral parameter
  Complex C{0.0, 0.0};                 // complementary-power coefficient
};

enum class Verdict { consistent, counterexample_confirmed, inconclusive };

// "consistent-with-theorem" | "counterexample-behavior-confirmed" |
// "inconclusive"
std::string to_string(Verdict v);

struct ScenarioReport {
  std::string id;
  std::string claim;  // plain-language statement the scenario exercises
  std::vector<trace::LimitTrace> traces;
  Verdict verdict = Verdict::inconclusive;
  Verdict expected = Verdict::inconclusive;
  std::optional<measures::GrowthReport> growth;
  std::vector<std::string> notes;  // failed-trace markers, extra measurements
  ScenarioConfig config;           // echo of what actually ran
  double wall_seconds = 0.0;       // reported on stdout; never serialized,
                                   // keeping emitted files byte-stable
};

// Registry ----------------------------------------------------------------

std::vector<std::string> scenario_ids();

// Plain-language claim and expected verdict for a registered scenario.
// Throws ConfigError for unknown ids.
std::string scenario_claim(const std::string& id);
Verdict scenario_expected(const std::string& id);

ScenarioConfig default_config(const std::string& id);

// Applies the overrides for config.id from a JSON document of the form
//   { "<scenario-id>": { "window": 16, "t_grid": {"ratio": 0.8}, ... } }.
// Unknown keys are a ConfigError, as is unreadable JSON.
void apply_config_file(ScenarioConfig& config, const std::string& path);

// Running -----------------------------------------------------------------

// The classifier applied uniformly to scenario traces.  Requires at least
// 24 points (the registry's grids guarantee this; shorter inputs throw
// std::invalid_argument).
trace::Classification estimate_limit(const std::vector<Complex>& values,
                                     std::size_t window = 12);

// Runs one scenario.  Unknown ids and invalid grids throw ConfigError;
// integration failures inside a trace are caught and recorded as
// failed-trace notes with verdict inconclusive.
ScenarioReport run_scenario(const ScenarioConfig& config);

// Writes <out_dir>/<id>/<trace>.csv (columns param,re,im; 17 significant
// digits) and <out_dir>/<id>/report.json.  format selects csv, json, or
// both.  Throws IoError on filesystem problems, ConfigError for a bad
// format string.  Output is byte-stable for a fixed config and version.
void emit(const ScenarioReport& report, const std::string& out_dir,
          const std::string& format);

// Runs and emits each listed scenario (empty list = whole registry),
// logging one line per scenario plus a final tally to `log`.  Returns 0
// when every verdict matches its scenario's expectation (and growth checks
// pass), 2 otherwise.  config_path may be empty.
int run_suite(const std::vector<std::string>& ids,
              const std::string& config_path, const std::string& out_dir,
              const std::string& format, std::ostream& log);

}  // namespace fatou::harness
