// Command-line front end: run scenarios, list the registry, tabulate a
// kernel's multiplicative transform, or run a single kernel condition check.
//
// Exit codes: 0 success; 2 a scenario verdict did not match its expectation;
// 3 I/O or integration failure; 4 configuration or usage error.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fatou/harness.hpp"
#include "fatou/kernels.hpp"
#include "fatou/mellin.hpp"
#include "fatou/quadrature.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("FATOU_OUT_DIR");
  return (env != nullptr && *env != '\0') ? std::string(env) : std::string("out");
}

int do_list() {
  for (const std::string& id : fatou::harness::scenario_ids()) {
    std::cout << id << "  [expects "
              << fatou::harness::to_string(fatou::harness::scenario_expected(id))
              << "]\n    " << fatou::harness::scenario_claim(id) << "\n";
  }
  return 0;
}

int do_run(std::vector<std::string> ids, const std::string& config_path,
           const std::string& out_dir, const std::string& format) {
  if (std::find(ids.begin(), ids.end(), "all") != ids.end()) ids.clear();
  return fatou::harness::run_suite(ids, config_path, out_dir, format,
                                   std::cout);
}

int do_mellin(const std::string& kernel_id, int n, double ymin, double ymax,
              int points) {
  if (points < 1) throw fatou::harness::ConfigError("--points must be >= 1");
  if (!(ymax >= ymin))
    throw fatou::harness::ConfigError("--ymax must be >= --ymin");
  const fatou::kernels::RadialKernel k = fatou::kernels::from_id(kernel_id, n);
  std::cout << "# kernel " << k.name << ", dim " << n << "\n";
  std::cout << "y,re,im,modulus\n" << std::setprecision(17);
  for (int i = 0; i < points; ++i) {
    const double y =
        points == 1 ? ymin : ymin + i * (ymax - ymin) / (points - 1);
    const std::complex<double> v = fatou::mellin::transform(k, y);
    std::cout << y << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v)
              << '\n';
  }
  const double reach = std::max(std::abs(ymin), std::abs(ymax));
  const fatou::mellin::TauberianReport rep =
      fatou::mellin::tauberian_check(k, reach, 16);
  std::cout << "# tauberian over [-" << reach << ", " << reach << "]: "
            << (rep.holds ? "holds" : "FAILS") << " (min |transform| = "
            << std::setprecision(6) << rep.min_abs << " at y = " << rep.y_at_min
            << ")\n";
  for (const auto& [y, a] : rep.zeros)
    std::cout << "# transform dips below " << rep.threshold << " near y = "
              << y << " (|transform| = " << a << ")\n";
  return 0;
}

int do_check(const std::string& what, const std::string& kernel_id, int n) {
  const fatou::kernels::RadialKernel k = fatou::kernels::from_id(kernel_id, n);
  std::cout << std::setprecision(6);
  if (what == "tauberian") {
    const fatou::mellin::TauberianReport rep =
        fatou::mellin::tauberian_check(k);
    std::cout << "tauberian (" << k.name << ", dim " << n << "): "
              << (rep.holds ? "holds" : "FAILS") << "\n  min |transform| = "
              << rep.min_abs << " at y = " << rep.y_at_min << " (threshold "
              << rep.threshold << ")\n";
    for (const auto& [y, a] : rep.zeros)
      std::cout << "  dip near y = " << y << " (|transform| = " << a << ")\n";
  } else if (what == "comparison") {
    const fatou::kernels::ComparisonReport rep =
        fatou::kernels::comparison_sup(k);
    std::cout << "comparison (" << k.name << ", dim " << n << "): sup of "
              << "phi_t(x)/phi(x) over t in (0,1), |x| > 1 is "
              << (rep.finite ? "finite on the grid" : "INFINITE") << "\n"
              << "  sup ratio = " << rep.sup_ratio << " at t = " << rep.t_at_sup
              << ", r = " << rep.r_at_sup << "\n";
  } else if (what == "decay") {
    const fatou::kernels::DecayReport rep = fatou::kernels::decay_check(k);
    std::cout << "decay (" << k.name << ", dim " << n << "): "
              << (rep.pass ? "pass" : "FAIL") << "\n  " << rep.detail << "\n";
  } else {
    throw fatou::harness::ConfigError(
        "unknown check '" + what + "' (expected tauberian, comparison, decay)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fatou -- limit experiments for kernel averages of measures and "
      "bounded data.\n"
      "Defaults: limit grids take 48 points (ratio 0.75 toward 0, 1.5 toward "
      "infinity);\nthe trace classifier uses window 12 with tolerance 1e-4 "
      "relative / 1e-6 absolute;\nverdict tolerance 5e-3; quadrature "
      "tolerance 1e-9.  Every report echoes the\nconfiguration that actually "
      "ran."};
  app.require_subcommand(1);

  std::vector<std::string> run_ids;
  std::string config_path;
  std::string out_dir = default_out_dir();
  std::string format = "both";
  CLI::App* run = app.add_subcommand(
      "run", "Run scenarios; writes <out>/<id>/<trace>.csv and report.json");
  run->add_option("ids", run_ids, "Scenario ids, or 'all' for the registry")
      ->required()
      ->expected(-1);
  run->add_option("--config", config_path,
                  "JSON override file keyed by scenario id");
  run->add_option("--out", out_dir,
                  "Output directory (default: $FATOU_OUT_DIR, else ./out)")
      ->capture_default_str();
  run->add_option("--format", format, "csv | json | both")
      ->capture_default_str();

  app.add_subcommand("list",
                     "List scenario ids, expectations, and their claims");

  std::string mel_kernel;
  int mel_n = 1;
  double mel_ymin = -8.0, mel_ymax = 8.0;
  int mel_points = 81;
  CLI::App* mel = app.add_subcommand(
      "mellin",
      "Tabulate a kernel's multiplicative transform as CSV on stdout");
  mel->add_option("--kernel", mel_kernel, "Kernel id (see kernels catalogue)")
      ->required();
  mel->add_option("--n", mel_n, "Dimension")->capture_default_str();
  mel->add_option("--ymin", mel_ymin, "Lower end of the frequency range")
      ->capture_default_str();
  mel->add_option("--ymax", mel_ymax, "Upper end of the frequency range")
      ->capture_default_str();
  mel->add_option("--points", mel_points, "Number of sample points")
      ->capture_default_str();

  std::string chk_what, chk_kernel;
  int chk_n = 1;
  CLI::App* chk = app.add_subcommand(
      "check", "Report one kernel condition (always exits 0)");
  chk->add_option("what", chk_what, "tauberian | comparison | decay")
      ->required();
  chk->add_option("--kernel", chk_kernel, "Kernel id")->required();
  chk->add_option("--n", chk_n, "Dimension")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (run->parsed()) return do_run(run_ids, config_path, out_dir, format);
    if (app.get_subcommand("list")->parsed()) return do_list();
    if (mel->parsed())
      return do_mellin(mel_kernel, mel_n, mel_ymin, mel_ymax, mel_points);
    if (chk->parsed()) return do_check(chk_what, chk_kernel, chk_n);
  } catch (const fatou::harness::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const fatou::quad::IntegrationError& e) {
    std::cerr << "integration error: " << e.what() << '\n';
    return 3;
  } catch (const fatou::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
