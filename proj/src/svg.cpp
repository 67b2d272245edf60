#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liouville/sweep.hpp"

namespace liouville::sweep {

namespace {

constexpr double kWidth = 660.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 480.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 430.0;
constexpr double kQMax = 2.0;

struct GridRow {
  double q;
  double p;
  regions::Region label;
};

struct CurvePoint {
  std::string id;
  double q;
  double p;
};

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double cell_number(const std::string& s, int lineno) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument("malformed number '" + s + "' on line " + std::to_string(lineno));
  }
  return v;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::vector<GridRow> parse_grid(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "q,p,label,G_value,H_value,delta_if_certified") {
    throw std::invalid_argument("grid CSV header mismatch");
  }
  std::vector<GridRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_line(lines[i]);
    if (cells.size() != 6) throw std::invalid_argument("grid CSV line " + std::to_string(i + 1) + " needs 6 fields");
    GridRow r{cell_number(cells[0], static_cast<int>(i + 1)), cell_number(cells[1], static_cast<int>(i + 1)),
              regions::Region::Open};
    try {
      r.label = regions::region_from_name(cells[2]);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("unknown label '" + cells[2] + "' on line " + std::to_string(i + 1));
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<CurvePoint> parse_curves(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "curve_id,q,p") throw std::invalid_argument("curves CSV header mismatch");
  std::vector<CurvePoint> pts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_line(lines[i]);
    if (cells.size() != 3) throw std::invalid_argument("curves CSV line " + std::to_string(i + 1) + " needs 3 fields");
    regions::curve_from_name(cells[0]);
    pts.push_back({cells[0], cell_number(cells[1], static_cast<int>(i + 1)),
                   cell_number(cells[2], static_cast<int>(i + 1))});
  }
  return pts;
}

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return std::string(buf) == "-0.000" ? "0.000" : buf;
}

const char* fill_of(regions::Region r) {
  switch (r) {
    case regions::Region::Subthreshold: return "#d9d9d9";
    case regions::Region::ExistsRadial: return "#fdb863";
    case regions::Region::ConstantThm1: return "#80cdc1";
    case regions::Region::ConstantThm2: return "#b2abd2";
    case regions::Region::ConstantG: return "#5e8fc9";
    case regions::Region::Open: return "#ffffff";
  }
  return "#ffffff";
}

const char* stroke_of(const std::string& id) {
  if (id == "f1") return "#000000";
  if (id == "f2") return "#e66101";
  if (id == "f3") return "#1b7837";
  if (id == "f4") return "#5e3c99";
  return "#b2182b";
}

double step_of(std::set<double> values) {
  if (values.size() < 2) return 0.0;
  return (*values.rbegin() - *values.begin()) / static_cast<double>(values.size() - 1);
}

} // namespace

std::string render_svg_text(std::string_view grid_text, std::string_view curves_text) {
  const auto grid = parse_grid(grid_text);
  const auto curves = parse_curves(curves_text);

  double p_max = 0.0;
  for (const auto& r : grid) p_max = std::max(p_max, r.p);
  if (grid.empty()) {
    for (const auto& c : curves) {
      if (c.id == "f5") p_max = std::max(p_max, c.p);
    }
  }
  if (!(p_max > 0.0)) p_max = 4.0;

  auto X = [&](double q) { return kLeft + (kRight - kLeft) * q / kQMax; };
  auto Y = [&](double p) { return kBottom - (kBottom - kTop) * p / p_max; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
    << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s << "<defs><clipPath id=\"plot\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
    << num(kRight - kLeft) << "\" height=\"" << num(kBottom - kTop) << "\"/></clipPath></defs>\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight) << "\" fill=\"#ffffff\"/>\n";

  // Region cells, one rectangle per grid point.
  std::set<double> qs, ps;
  for (const auto& r : grid) {
    qs.insert(r.q);
    ps.insert(r.p);
  }
  const double dq = step_of(qs);
  const double dp = step_of(ps);
  s << "<g clip-path=\"url(#plot)\" shape-rendering=\"crispEdges\">\n";
  for (const auto& r : grid) {
    const double x0 = X(r.q - dq / 2);
    const double x1 = X(r.q + dq / 2);
    const double y0 = Y(r.p + dp / 2);
    const double y1 = Y(r.p - dp / 2);
    s << "<rect class=\"cell\" x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(std::max(x1 - x0, 0.5))
      << "\" height=\"" << num(std::max(y1 - y0, 0.5)) << "\" fill=\"" << fill_of(r.label) << "\"/>\n";
  }
  s << "</g>\n";

  // Curves; a polyline is broken where it crosses q = 1 (the existence threshold blows up there).
  s << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.6\">\n";
  std::size_t i = 0;
  while (i < curves.size()) {
    const std::string& id = curves[i].id;
    std::vector<std::vector<std::pair<double, double>>> pieces(1);
    std::size_t j = i;
    for (; j < curves.size() && curves[j].id == id; ++j) {
      if (j > i && (curves[j - 1].q - 1.0) * (curves[j].q - 1.0) < 0.0) pieces.emplace_back();
      const double p = std::clamp(curves[j].p, -p_max, 3.0 * p_max);
      pieces.back().emplace_back(X(curves[j].q), Y(p));
    }
    for (const auto& piece : pieces) {
      if (piece.size() < 2) continue;
      s << "<polyline stroke=\"" << stroke_of(id) << "\" points=\"";
      for (std::size_t k = 0; k < piece.size(); ++k) {
        s << (k ? " " : "") << num(piece[k].first) << ',' << num(piece[k].second);
      }
      s << "\"/>\n";
    }
    i = j;
  }
  s << "</g>\n";

  // Axes and ticks.
  s << "<g stroke=\"#000000\" fill=\"none\">\n";
  s << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kRight - kLeft) << "\" height=\""
    << num(kBottom - kTop) << "\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double x = X(0.5 * k);
    s << "<line x1=\"" << num(x) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(x) << "\" y2=\""
      << num(kBottom + 5) << "\"/>\n";
    const double y = Y(p_max * k / 4);
    s << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(y)
      << "\"/>\n";
  }
  s << "</g>\n<g fill=\"#000000\">\n";
  for (int k = 0; k <= 4; ++k) {
    s << "<text x=\"" << num(X(0.5 * k)) << "\" y=\"" << num(kBottom + 18) << "\" text-anchor=\"middle\">"
      << num(0.5 * k) << "</text>\n";
    s << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(Y(p_max * k / 4) + 4) << "\" text-anchor=\"end\">"
      << num(p_max * k / 4) << "</text>\n";
  }
  s << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << num(kBottom + 38) << "\" text-anchor=\"middle\">q</text>\n";
  s << "<text x=\"" << num(kLeft - 42) << "\" y=\"" << num((kTop + kBottom) / 2) << "\" text-anchor=\"middle\">p</text>\n";

  // Legend.
  double ly = kTop + 10;
  const double lx = kRight + 20;
  for (auto r : {regions::Region::Subthreshold, regions::Region::ExistsRadial, regions::Region::ConstantThm1,
                 regions::Region::ConstantThm2, regions::Region::ConstantG, regions::Region::Open}) {
    s << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly - 9) << "\" width=\"12\" height=\"12\" stroke=\"#000000\" fill=\""
      << fill_of(r) << "\"/><text x=\"" << num(lx + 18) << "\" y=\"" << num(ly + 1) << "\">" << regions::name(r)
      << "</text>\n";
    ly += 18;
  }
  ly += 8;
  for (const char* id : {"f1", "f2", "f3", "f4", "f5"}) {
    s << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 3) << "\" x2=\"" << num(lx + 12) << "\" y2=\"" << num(ly - 3)
      << "\" stroke=\"" << stroke_of(id) << "\" stroke-width=\"2\"/><text x=\"" << num(lx + 18) << "\" y=\""
      << num(ly + 1) << "\">" << id << "</text>\n";
    ly += 18;
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

} // namespace liouville::sweep
