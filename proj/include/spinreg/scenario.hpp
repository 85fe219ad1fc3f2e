#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinreg/bath.hpp"
#include "spinreg/register.hpp"

namespace spinreg {

// Parse/validation failure with the offending location attached.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& file, int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class SweepKind { time, cut };

// A declarative sweep description: flat "key = value" lines, '#' comments.
struct Scenario {
  int L = 0;
  Geometry geometry;
  double s = 1.0;
  double temperature = 0.0;
  // Fixed observation band for time sweeps; in cut sweeps alpha is swept and
  // only delta is used.
  std::optional<double> cut_alpha;
  std::optional<double> cut_delta;
  SweepKind sweep_kind = SweepKind::time;
  std::vector<double> grid;  // strictly increasing; times or band edges
  double t_asym = 100.0;     // evaluation time for cut sweeps
  std::vector<std::pair<RegisterLabel, RegisterLabel>> pairs;
  std::vector<std::string> pair_names;  // column prefixes, parallel to pairs
  std::string csv_path;
  std::string plot_path;  // empty = no plot

  // Bath implied by the scenario; for cut sweeps pass the current alpha.
  BathSpec bath(std::optional<double> alpha_override = std::nullopt) const;
};

Scenario parse_scenario_text(const std::string& text, const std::string& filename);
Scenario parse_scenario_file(const std::string& path);

}  // namespace spinreg
