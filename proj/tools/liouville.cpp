#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "liouville/certify.hpp"
#include "liouville/radial.hpp"
#include "liouville/regions.hpp"
#include "liouville/sweep.hpp"

namespace fs = std::filesystem;
using namespace liouville;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailed = 2;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::optional<int> n;
  std::optional<std::string> q_range;
  std::optional<std::string> p_range;
  std::optional<int> steps;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;
};

// Defaults, then the environment, then --config, then explicit flags.
sweep::SweepConfig resolve(const Flags& f) {
  sweep::SweepConfig cfg;
  if (const char* env = std::getenv(sweep::kOutputDirEnv); env && *env) cfg.output_dir = env;
  try {
    if (!f.config.empty()) {
      if (!fs::exists(f.config)) throw InvalidInput("config file not found: " + f.config);
      cfg = sweep::load_config(f.config, cfg);
    }
    std::ostringstream text;
    if (f.n) text << "n = " << *f.n << '\n';
    if (f.q_range) text << "q_range = " << *f.q_range << '\n';
    if (f.p_range) text << "p_range = " << *f.p_range << '\n';
    if (f.steps) text << "steps = " << *f.steps << '\n';
    if (f.mode) text << "mode = " << *f.mode << '\n';
    if (f.seed) text << "seed = " << *f.seed << '\n';
    if (f.out) text << "out = " << *f.out << '\n';
    if (f.workers) text << "workers = " << *f.workers << '\n';
    cfg = sweep::parse_config(text.str(), cfg);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  return cfg;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

int cmd_sweep(const Flags& flags) {
  auto cfg = resolve(flags);
  try {
    sweep::validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  ensure_dir(cfg.output_dir);
  const auto summary = sweep::run_sweep(cfg);
  std::cout << "wrote " << summary.grid_path.string() << " (" << summary.rows << " rows, n = " << cfg.n
            << ", mode = " << sweep::name(cfg.mode) << ")\n";
  for (const auto& [label, count] : summary.counts) {
    std::cout << "  " << regions::name(label) << ": " << count << '\n';
  }
  if (cfg.mode == sweep::Mode::Certify) std::cout << "  certified: " << summary.certified << '\n';
  return kExitOk;
}

int cmd_curves(const Flags& flags, int resolution, const std::string& output) {
  const auto cfg = resolve(flags);
  if (resolution < 16) throw InvalidInput("resolution must be at least 16");
  try {
    require_dimension(cfg.n);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  const fs::path path = output.empty() ? cfg.output_dir / "curves.csv" : fs::path(output);
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  sweep::emit_curves(cfg.n, resolution, path);
  std::cout << "wrote " << path.string() << '\n';
  return kExitOk;
}

int cmd_render(const Flags& flags, const std::string& grid, const std::string& curves, const std::string& output) {
  const auto cfg = resolve(flags);
  const fs::path g = grid.empty() ? cfg.output_dir / "grid.csv" : fs::path(grid);
  const fs::path c = curves.empty() ? cfg.output_dir / "curves.csv" : fs::path(curves);
  const fs::path o = output.empty() ? cfg.output_dir / "figure.svg" : fs::path(output);
  for (const auto& in : {g, c}) {
    if (!fs::exists(in)) throw InvalidInput("input not found: " + in.string());
  }
  if (o.has_parent_path()) ensure_dir(o.parent_path());
  try {
    sweep::render_svg(g, c, o);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  std::cout << "wrote " << o.string() << '\n';
  return kExitOk;
}

int cmd_certify_point(const Flags& flags, double p, double q, const std::string& regime, int budget,
                      const std::string& output) {
  const auto cfg = resolve(flags);
  std::optional<ProblemPoint> pt;
  try {
    pt.emplace(cfg.n, p, q);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  if (budget < 1) throw InvalidInput("budget must be positive");

  const auto label = regions::classify(*pt);
  std::string chosen = regime;
  if (chosen == "auto") {
    if (label == regions::Region::ConstantThm1) chosen = "low_q";
    else if (label == regions::Region::ConstantThm2) chosen = "high_q";
    else chosen = "searched";
  }
  if (chosen != "low_q" && chosen != "high_q" && chosen != "searched") {
    throw InvalidInput("unknown regime '" + regime + "'");
  }
  const auto cert = chosen == "low_q"    ? certify::certify_lowq(*pt)
                    : chosen == "high_q" ? certify::certify_highq(*pt)
                                         : certify::search_certificate(*pt, budget, cfg.seed);

  const std::string text = certify::serialize(cert);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output, std::ios::binary | std::ios::trunc);
    if (!(f << text)) throw std::runtime_error("cannot write " + output);
  }
  std::cerr << "label = " << regions::name(label) << ", regime = " << certify::name(cert.regime) << ", "
            << (cert.feasible() ? "feasible" : "infeasible") << '\n';
  for (const auto& f : cert.failures()) std::cerr << "  failed: " << f << '\n';
  return cert.feasible() ? kExitOk : kExitFailed;
}

int cmd_verify_all(const Flags& flags, double effort) {
  const auto cfg = resolve(flags);
  if (!(effort > 0.0)) throw InvalidInput("effort must be positive");
  sweep::VerifyOptions opts;
  opts.effort = effort;
  const auto report = sweep::run_verify_all(cfg.seed, opts);
  std::cout << report.to_text();
  return report.passed() ? kExitOk : kExitFailed;
}

int cmd_radial_check(const Flags& flags, double q, const std::string& fixture) {
  const auto cfg = resolve(flags);
  try {
    require_dimension(cfg.n);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  if (!(q >= 0.0 && q <= radial::kMaxQ)) {
    throw InvalidInput("q must lie in [0, " + sweep::format_double(radial::kMaxQ) + "]");
  }
  const int n = cfg.n;
  const auto report = radial::derive_K_report(n, q);
  const auto prof = radial::make_profile(n, q);
  const double beta = prof.beta;
  const double K_closed = std::pow(n - 2.0, q - 1.0) / (beta + n - 2.0);

  const auto radii = radial::log_spaced(1e-3, 1e3, 121);
  double worst = 0.0;
  for (double r : radii) {
    worst = std::max(worst, radial::ode_residual_relative(prof, r));
  }
  const auto fit = radial::structural_proportionality(prof, radii);
  const double S_expected = 1.0 / (n - (n - 1) * q);

  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 5.0, 10.0};
  const auto shot = radial::shoot(n, q, radial::eval_profile(prof, 0.0).v, grid);
  double shoot_err = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = radial::eval_profile(prof, grid[k]).v;
    shoot_err = std::max(shoot_err, std::abs(shot[k] - v) / v);
  }

  const double K_err = std::abs(report.K - K_closed) / K_closed;
  const bool ok = report.roots_found == 1 && K_err <= 1e-10 && worst <= 1e-8 &&
                  std::abs(fit.S - S_expected) <= 1e-10 && shoot_err <= 1e-6;

  auto line = [](const char* key, double v) { std::cout << key << " = " << sweep::format_double(v) << '\n'; };
  std::cout << "n = " << n << '\n';
  line("q", q);
  line("p", prof.p);
  line("beta", beta);
  line("K", report.K);
  line("K_closed_form", K_closed);
  line("K_relative_error", K_err);
  std::cout << "K_roots_found = " << report.roots_found << '\n';
  line("ode_residual_max", worst);
  line("S_fit", fit.S);
  line("S_expected", S_expected);
  line("Q_fit", fit.Q);
  line("fit_c", fit.c);
  line("fit_residual", fit.residual);
  line("shooting_error_max", shoot_err);
  std::cout << "status = " << (ok ? "pass" : "fail") << '\n';

  if (!fixture.empty()) {
    std::ofstream f(fixture, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + fixture);
    radial::write_fixture(f, prof, radial::log_spaced(1e-2, 1e2, 41));
    if (!f) throw std::runtime_error("cannot write " + fixture);
  }
  return ok ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region classifier and certificate engine for -Lap v = v^p |grad v|^q"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "flat key = value file; flags override it");
  app.add_option("--n", flags.n, "dimension (>= 3)");
  app.add_option("--seed", flags.seed, "RNG seed");
  app.add_option("--out", flags.out, std::string("output directory (default $") + sweep::kOutputDirEnv + " or .)");
  app.add_option("--workers", flags.workers, "worker threads");

  auto* sweep_cmd = app.add_subcommand("sweep", "classify or certify a (q, p) grid into grid.csv");
  sweep_cmd->add_option("--q-range", flags.q_range, "lo,hi");
  sweep_cmd->add_option("--p-range", flags.p_range, "lo,hi");
  sweep_cmd->add_option("--steps", flags.steps, "grid points per axis");
  sweep_cmd->add_option("--mode", flags.mode, "classify or certify");

  int resolution = 400;
  std::string curves_output;
  auto* curves_cmd = app.add_subcommand("curves", "write the boundary curves f1..f5 to curves.csv");
  curves_cmd->add_option("--resolution", resolution, "samples per curve");
  curves_cmd->add_option("--output", curves_output, "file (default <out>/curves.csv)");

  std::string render_grid, render_curves, render_output;
  auto* render_cmd = app.add_subcommand("render", "draw grid.csv and curves.csv as an SVG");
  render_cmd->add_option("--grid", render_grid, "default <out>/grid.csv");
  render_cmd->add_option("--curves", render_curves, "default <out>/curves.csv");
  render_cmd->add_option("--output", render_output, "default <out>/figure.svg");

  double cp_p = 0.0, cp_q = 0.0;
  std::string cp_regime = "auto", cp_output;
  int cp_budget = 2000;
  auto* cp_cmd = app.add_subcommand("certify-point", "build and validate a certificate at (n, p, q)");
  cp_cmd->add_option("--p", cp_p)->required();
  cp_cmd->add_option("--q", cp_q)->required();
  cp_cmd->add_option("--regime", cp_regime, "auto, low_q, high_q or searched");
  cp_cmd->add_option("--budget", cp_budget, "search evaluations");
  cp_cmd->add_option("--output", cp_output, "write the certificate here instead of stdout");

  double effort = 1.0;
  auto* verify_cmd = app.add_subcommand("verify-all", "run every invariant battery");
  verify_cmd->add_option("--effort", effort, "sample-count multiplier");

  double rc_q = 0.0;
  std::string rc_fixture;
  auto* radial_cmd = app.add_subcommand("radial-check", "check the explicit radial family at (n, q)");
  radial_cmd->add_option("--q", rc_q)->required();
  radial_cmd->add_option("--fixture", rc_fixture, "also write a sampled profile table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(flags);
    if (*curves_cmd) return cmd_curves(flags, resolution, curves_output);
    if (*render_cmd) return cmd_render(flags, render_grid, render_curves, render_output);
    if (*cp_cmd) return cmd_certify_point(flags, cp_p, cp_q, cp_regime, cp_budget, cp_output);
    if (*verify_cmd) return cmd_verify_all(flags, effort);
    if (*radial_cmd) return cmd_radial_check(flags, rc_q, rc_fixture);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
