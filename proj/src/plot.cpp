#include "spinreg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spinreg/csv.hpp"

namespace spinreg::plot {

namespace {

struct Curve {
  std::string name;
  std::size_t column;
  std::string color;
  std::string dash;  // stroke-dasharray, empty = solid
};

struct Panel {
  std::string quantity;
  std::vector<Curve> curves;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double nice_step(double range, int target_ticks) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / std::max(target_ticks - 1, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  if (norm < 1.5) return mag;
  if (norm < 3.0) return 2.0 * mag;
  if (norm < 7.0) return 5.0 * mag;
  return 10.0 * mag;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

void curve_style(const std::string& pair_name, std::size_t index, Curve& c) {
  if (pair_name == "single") {
    c.color = "#1f77b4";
    c.dash = "";
  } else if (pair_name == "singlet") {
    c.color = "#d62728";
    c.dash = "9,5";
  } else if (pair_name == "ghz") {
    c.color = "#2ca02c";
    c.dash = "2,4";
  } else {
    static const char* kPalette[] = {"#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
    c.color = kPalette[index % 5];
    c.dash = "";
  }
}

}  // namespace

void emit_plot(const std::string& csv_path, const PlotStyle& style, const std::string& svg_path) {
  const auto table = csvio::read_csv(csv_path);
  if (table.columns.empty()) throw std::runtime_error("emit_plot: CSV has no columns");

  std::vector<Panel> panels;
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    const auto& col = table.columns[c];
    const auto dot = col.find('.');
    const std::string pair_name = dot == std::string::npos ? col : col.substr(0, dot);
    const std::string quantity = dot == std::string::npos ? col : col.substr(dot + 1);
    auto it = std::find_if(panels.begin(), panels.end(),
                           [&](const Panel& p) { return p.quantity == quantity; });
    if (it == panels.end()) {
      panels.push_back({quantity, {}});
      it = std::prev(panels.end());
    }
    Curve curve{pair_name, c, "", ""};
    curve_style(pair_name, it->curves.size(), curve);
    it->curves.push_back(std::move(curve));
  }

  const int width = std::max(style.width, 320);
  const int panel_h = std::max(style.panel_height, 180);
  const int n_panels = std::max<int>(1, static_cast<int>(panels.size()));
  const int height = 28 + panel_h * n_panels;
  const double ml = 86, mr = 26, mt = 34, mb = 50;

  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open '" + svg_path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  const std::string title = style.title.empty() ? csv_path : style.title;
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";

  if (panels.empty()) {
    out << "<text x=\"" << width / 2 << "\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-size=\"13\">no data columns</text>\n</svg>\n";
    if (!out.flush()) throw std::runtime_error("emit_plot: write failed");
    return;
  }

  // x range from the abscissa column
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  for (const auto& row : table.rows) {
    if (!std::isfinite(row[0])) continue;
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
  }
  if (!(xmin < xmax)) {
    xmin = std::isfinite(xmin) ? xmin - 1.0 : 0.0;
    xmax = xmin + 2.0;
  }

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double top = 28.0 + static_cast<double>(p) * panel_h;
    const double x0 = ml, x1 = width - mr;
    const double y1 = top + panel_h - mb, y0 = top + mt;

    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& curve : panel.curves) {
      for (const auto& row : table.rows) {
        const double v = row[curve.column];
        if (!std::isfinite(v)) continue;
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
    if (!(ymin < ymax)) {
      ymin = std::isfinite(ymin) ? ymin - 1.0 : -1.0;
      ymax = ymin + 2.0;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto X = [&](double v) { return x0 + (v - xmin) / (xmax - xmin) * (x1 - x0); };
    auto Y = [&](double v) { return y1 - (v - ymin) / (ymax - ymin) * (y1 - y0); };

    out << "<g font-size=\"11\" fill=\"#333\">\n";
    out << "<text x=\"" << fmt(0.5 * (x0 + x1)) << "\" y=\"" << fmt(y0 - 10)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(panel.quantity)
        << "</text>\n";
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x1)
        << "\" y2=\"" << fmt(y1) << "\" stroke=\"#333\"/>\n";
    out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0)
        << "\" y2=\"" << fmt(y1) << "\" stroke=\"#333\"/>\n";

    const double xstep = nice_step(xmax - xmin, 7);
    for (double tx = std::ceil(xmin / xstep) * xstep; tx <= xmax + 1e-12 * xstep; tx += xstep) {
      out << "<line x1=\"" << fmt(X(tx)) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(X(tx))
          << "\" y2=\"" << fmt(y1 + 5) << "\" stroke=\"#333\"/>\n";
      out << "<text x=\"" << fmt(X(tx)) << "\" y=\"" << fmt(y1 + 18)
          << "\" text-anchor=\"middle\">" << fmt_tick(tx) << "</text>\n";
    }
    const double ystep = nice_step(ymax - ymin, 6);
    for (double ty = std::ceil(ymin / ystep) * ystep; ty <= ymax + 1e-12 * ystep; ty += ystep) {
      out << "<line x1=\"" << fmt(x0 - 5) << "\" y1=\"" << fmt(Y(ty)) << "\" x2=\"" << fmt(x0)
          << "\" y2=\"" << fmt(Y(ty)) << "\" stroke=\"#333\"/>\n";
      out << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(Y(ty)) << "\" x2=\"" << fmt(x1)
          << "\" y2=\"" << fmt(Y(ty)) << "\" stroke=\"#eee\"/>\n";
      out << "<text x=\"" << fmt(x0 - 8) << "\" y=\"" << fmt(Y(ty) + 4)
          << "\" text-anchor=\"end\">" << fmt_tick(ty) << "</text>\n";
    }
    out << "<text x=\"" << fmt(0.5 * (x0 + x1)) << "\" y=\"" << fmt(y1 + 36)
        << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(table.columns[0])
        << "</text>\n";
    out << "</g>\n";

    for (const auto& curve : panel.curves) {
      out << "<polyline fill=\"none\" stroke=\"" << curve.color << "\" stroke-width=\"1.6\"";
      if (!curve.dash.empty()) out << " stroke-dasharray=\"" << curve.dash << "\"";
      out << " points=\"";
      bool first = true;
      for (const auto& row : table.rows) {
        const double v = row[curve.column];
        if (!std::isfinite(row[0]) || !std::isfinite(v)) continue;
        if (!first) out << ' ';
        out << fmt(X(row[0])) << ',' << fmt(Y(v));
        first = false;
      }
      out << "\"/>\n";
    }

    double ly = y0 + 6;
    for (const auto& curve : panel.curves) {
      const double lx = x1 - 150;
      out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 26)
          << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << curve.color << "\" stroke-width=\"1.6\"";
      if (!curve.dash.empty()) out << " stroke-dasharray=\"" << curve.dash << "\"";
      out << "/>\n";
      out << "<text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(ly + 4)
          << "\" font-size=\"11\" fill=\"#333\">" << xml_escape(curve.name) << "</text>\n";
      ly += 16;
    }
  }
  out << "</svg>\n";
  if (!out.flush()) throw std::runtime_error("emit_plot: write failed");
}

}  // namespace spinreg::plot
