#include "liouville/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "liouville/certify.hpp"

namespace liouville::sweep {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad number for " + key + ": '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("bad number for " + key + ": '" + s + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad integer for " + key + ": '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("bad integer for " + key + ": '" + s + "'");
  return v;
}

std::pair<double, double> to_range(const std::string& key, const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument(key + " must be written lo,hi");
  return {to_double(key, trim(s.substr(0, comma))), to_double(key, trim(s.substr(comma + 1)))};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

struct Cell {
  regions::Region label;
  std::string line;
  bool certified;
};

Cell evaluate_cell(const SweepConfig& cfg, int qi, int pi) {
  const double q = cfg.q_range.at(qi);
  const double p = cfg.p_range.at(pi);
  const ProblemPoint pt(cfg.n, p, q);
  const auto label = regions::classify(pt);
  std::string delta;
  bool certified = false;
  if (cfg.mode == Mode::Certify) {
    std::optional<certify::Certificate> cert;
    switch (label) {
      case regions::Region::ConstantThm1: cert = certify::certify_lowq(pt); break;
      case regions::Region::ConstantThm2: cert = certify::certify_highq(pt); break;
      case regions::Region::ConstantG: {
        const std::uint64_t index = static_cast<std::uint64_t>(qi) * cfg.p_range.steps + pi;
        cert = certify::search_certificate(pt, 400, cfg.seed + index);
        break;
      }
      default: break;
    }
    if (cert && cert->feasible()) {
      delta = format_double(cert->delta);
      certified = true;
    }
  }
  std::string line = format_double(q) + ',' + format_double(p) + ',' + std::string(regions::name(label)) + ',' +
                     format_double(regions::G_value(cfg.n, p, q)) + ',' +
                     format_double(regions::H_value(cfg.n, p, q)) + ',' + delta + '\n';
  return {label, std::move(line), certified};
}

} // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view name(Mode m) { return m == Mode::Classify ? "classify" : "certify"; }

Mode mode_from_name(std::string_view s) {
  if (s == "classify") return Mode::Classify;
  if (s == "certify") return Mode::Certify;
  throw std::invalid_argument("mode must be classify or certify, got '" + std::string(s) + "'");
}

double Range::at(int i) const {
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
}

void validate(const SweepConfig& c) {
  if (c.n < 3) throw std::invalid_argument("n must be >= 3");
  auto check_range = [](const char* what, const Range& r) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) throw std::invalid_argument(std::string(what) + " must be finite");
    if (r.steps < 2) throw std::invalid_argument(std::string(what) + " needs at least 2 steps");
    if (!(r.lo < r.hi)) throw std::invalid_argument(std::string(what) + " needs lo < hi");
  };
  check_range("q range", c.q_range);
  check_range("p range", c.p_range);
  if (c.q_range.lo < 0.0 || c.q_range.hi >= 2.0) throw std::invalid_argument("q range must lie in [0, 2)");
  if (c.p_range.lo < 0.0) throw std::invalid_argument("p range must lie in [0, inf)");
  if (c.workers < 1 || c.workers > 1024) throw std::invalid_argument("workers must be in 1..1024");
  if (c.output_dir.empty()) throw std::invalid_argument("output directory is empty");
}

SweepConfig parse_config(std::string_view text, SweepConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "n") {
      cfg.n = static_cast<int>(to_integer(key, value));
    } else if (key == "q_range") {
      std::tie(cfg.q_range.lo, cfg.q_range.hi) = to_range(key, value);
    } else if (key == "p_range") {
      std::tie(cfg.p_range.lo, cfg.p_range.hi) = to_range(key, value);
    } else if (key == "steps") {
      cfg.q_range.steps = cfg.p_range.steps = static_cast<int>(to_integer(key, value));
    } else if (key == "mode") {
      cfg.mode = mode_from_name(value);
    } else if (key == "seed") {
      const long long s = to_integer(key, value);
      if (s < 0) throw std::invalid_argument("seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "out") {
      cfg.output_dir = value;
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(to_integer(key, value));
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

SweepConfig load_config(const std::filesystem::path& path, SweepConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::string grid_csv(const SweepConfig& cfg, SweepSummary* summary) {
  validate(cfg);
  const int nq = cfg.q_range.steps;
  const int np = cfg.p_range.steps;
  const long total = static_cast<long>(nq) * np;
  std::vector<Cell> cells(total);

  auto work = [&](int w) {
    for (long idx = w; idx < total; idx += cfg.workers) {
      cells[idx] = evaluate_cell(cfg, static_cast<int>(idx / np), static_cast<int>(idx % np));
    }
  };
  if (cfg.workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work, w);
  }

  std::string out = "q,p,label,G_value,H_value,delta_if_certified\n";
  SweepSummary s;
  for (const auto& c : cells) {
    out += c.line;
    ++s.counts[c.label];
    ++s.rows;
    if (c.certified) ++s.certified;
  }
  if (summary) *summary = s;
  return out;
}

SweepSummary run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  SweepSummary s;
  const std::string csv = grid_csv(cfg, &s);
  std::filesystem::create_directories(cfg.output_dir);
  s.grid_path = cfg.output_dir / "grid.csv";
  write_file(s.grid_path, csv);
  return s;
}

std::string curves_csv(int n, int resolution) {
  require_dimension(n);
  if (resolution < 16) throw std::invalid_argument("curve resolution must be >= 16");
  std::string out = "curve_id,q,p\n";
  for (auto c : {regions::Curve::F1, regions::Curve::F2, regions::Curve::F3, regions::Curve::F4, regions::Curve::F5}) {
    const std::string id(regions::name(c));
    for (const auto& [q, p] : regions::curve_samples(n, c, resolution)) {
      out += id + ',' + format_double(q) + ',' + format_double(p) + '\n';
    }
  }
  return out;
}

void emit_curves(int n, int resolution, const std::filesystem::path& output) {
  const std::string csv = curves_csv(n, resolution);
  if (output.has_parent_path()) std::filesystem::create_directories(output.parent_path());
  write_file(output, csv);
}

void render_svg(const std::filesystem::path& grid, const std::filesystem::path& curves,
                const std::filesystem::path& output) {
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string svg = render_svg_text(slurp(grid), slurp(curves));
  if (output.has_parent_path()) std::filesystem::create_directories(output.parent_path());
  write_file(output, svg);
}

} // namespace liouville::sweep
