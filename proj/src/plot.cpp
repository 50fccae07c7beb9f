#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "polyrad/harness.hpp"

namespace polyrad {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Series {
  std::string name;
  // x -> y values; the polyline goes through the per-x means.
  std::map<double, std::vector<double>> points;
};

}  // namespace

std::string plot_svg(const std::string& csv_text, const std::string& x_column,
                     const std::string& y_column) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("plot: empty CSV");
  const auto header = split(line);
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  std::string available;
  for (const auto& h : header) available += (available.empty() ? "" : ", ") + h;
  const auto xi = column(x_column);
  const auto yi = column(y_column);
  if (!xi) throw std::invalid_argument("unknown column '" + x_column + "'; available: " + available);
  if (!yi) throw std::invalid_argument("unknown column '" + y_column + "'; available: " + available);
  const auto body_i = column("body");
  const auto n_i = column("N");

  std::vector<Series> series;
  std::map<std::string, std::size_t> by_name;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::invalid_argument("plot: ragged CSV row");
    std::string name;
    if (body_i) name += cells[*body_i];
    if (n_i) name += (name.empty() ? "N=" : " N=") + cells[*n_i];
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      it = by_name.emplace(name, series.size()).first;
      series.push_back(Series{name, {}});
    }
    series[it->second].points[std::stod(cells[*xi])].push_back(std::stod(cells[*yi]));
  }

  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series) {
    for (const auto& [x, ys] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      for (double y : ys) {
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (series.empty()) x_lo = y_lo = 0.0, x_hi = y_hi = 1.0;
  if (x_hi == x_lo) x_lo -= 0.5, x_hi += 0.5;
  if (y_hi == y_lo) y_lo -= 0.5, y_hi += 0.5;

  constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 180, kTop = 30, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };
  static const char* const kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                        "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
      << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  auto text = [&](double x, double y, const std::string& s, const char* anchor) {
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" "
        << "font-size=\"12\" text-anchor=\"" << anchor << "\">" << xml_escape(s) << "</text>\n";
  };
  text(kLeft, kTop + plot_h + 18, label(x_lo), "middle");
  text(kLeft + plot_w, kTop + plot_h + 18, label(x_hi), "middle");
  text(kLeft - 6, kTop + plot_h + 4, label(y_lo), "end");
  text(kLeft - 6, kTop + 4, label(y_hi), "end");
  text(kLeft + plot_w / 2, kHeight - 12, x_column, "middle");
  text(16, kTop + plot_h / 2, y_column, "middle");

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, ys] : s.points) {
      double mean = 0.0;
      for (double y : ys) mean += y;
      mean /= static_cast<double>(ys.size());
      svg << (first ? "" : " ") << num(px(x)) << ',' << num(py(mean));
      first = false;
    }
    svg << "\"/>\n";
    for (const auto& [x, ys] : s.points)
      for (double y : ys)
        svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2\" fill=\""
            << color << "\" fill-opacity=\"0.5\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(i);
    svg << "<line x1=\"" << num(kLeft + plot_w + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(kLeft + plot_w + 30) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    text(kLeft + plot_w + 34, ly + 4, s.name, "start");
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::filesystem::path& csv_path, const std::string& x_column,
               const std::string& y_column, const std::filesystem::path& svg_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read CSV " + csv_path.string());
  std::ostringstream text;
  text << in.rdbuf();
  const std::string svg = plot_svg(text.str(), x_column, y_column);
  std::ofstream out(svg_path, std::ios::binary);
  if (!out || !(out << svg)) throw std::runtime_error("cannot write output file " + svg_path.string());
}

}  // namespace polyrad
