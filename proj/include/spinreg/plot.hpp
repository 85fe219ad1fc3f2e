#pragma once
#include <string>

namespace spinreg::plot {

struct PlotStyle {
  std::string title;      // defaults to the CSV filename
  int width = 860;        // total SVG width in px
  int panel_height = 340; // per-panel height in px
};

// Render the CSV produced by a sweep as a self-contained SVG: one panel per
// plotted quantity, one styled curve per pair column (solid single-qubit,
// dashed singlet, dotted GHZ, palette cycle otherwise).  Values are taken
// from the file as written, never recomputed.
void emit_plot(const std::string& csv_path, const PlotStyle& style, const std::string& svg_path);

}  // namespace spinreg::plot
