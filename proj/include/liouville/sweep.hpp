#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "liouville/coeffs.hpp"
#include "liouville/regions.hpp"

namespace liouville::sweep {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "LIOUVILLE_OUTPUT_DIR";

enum class Mode { Classify, Certify };

std::string_view name(Mode m);
Mode mode_from_name(std::string_view s);

struct Range {
  double lo;
  double hi;
  int steps;

  double at(int i) const;
};

struct SweepConfig {
  int n = 6;
  Range q_range{0.0, 1.98, 100};
  Range p_range{0.0, 4.0, 100};
  Mode mode = Mode::Classify;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  int workers = 1;
};

/// Throws std::invalid_argument describing the first problem found. Does not touch the
/// file system.
void validate(const SweepConfig& config);

/// Applies key = value lines (n, q_range, p_range, steps, mode, seed, out, workers) on
/// top of `base`. Ranges are written "lo,hi". Blank lines and # comments are ignored.
SweepConfig parse_config(std::string_view text, SweepConfig base = {});
SweepConfig load_config(const std::filesystem::path& path, SweepConfig base = {});

struct SweepSummary {
  std::map<regions::Region, long> counts;
  long rows = 0;
  long certified = 0;
  std::filesystem::path grid_path;
};

/// The grid.csv contents for `config`; independent of the worker count.
std::string grid_csv(const SweepConfig& config, SweepSummary* summary = nullptr);

/// Writes <output_dir>/grid.csv.
SweepSummary run_sweep(const SweepConfig& config);

std::string curves_csv(int n, int resolution);
/// Writes `output` (a file path). Requires resolution >= 16.
void emit_curves(int n, int resolution, const std::filesystem::path& output);

/// Renders from CSV text; throws std::invalid_argument on malformed input.
std::string render_svg_text(std::string_view grid, std::string_view curves);
void render_svg(const std::filesystem::path& grid, const std::filesystem::path& curves,
                const std::filesystem::path& output);

struct SuiteResult {
  std::string name;
  bool passed = true;
  long cases = 0;
  long failures = 0;
  /// Largest normalised residual or smallest margin seen, depending on the suite.
  double worst = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool passed() const;
  std::string to_text() const;
};

/// Hooks that let tests substitute a component and watch the battery catch it.
struct VerifyOptions {
  std::function<coeffs::CoefficientSet(int, double, double, const coeffs::ParamChoice&)> coefficient_set =
      coeffs::coefficient_set;
  /// Scales the sample counts; 1 is the full battery.
  double effort = 1.0;
};

VerifyReport run_verify_all(std::uint64_t seed, const VerifyOptions& options = {});

std::string format_double(double x);

} // namespace liouville::sweep
