#include "spinreg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace spinreg {

namespace {

std::string format_what(const std::string& file, int line, const std::string& field,
                        const std::string& message) {
  std::string out = file;
  if (line > 0) out += ":" + std::to_string(line);
  if (!field.empty()) out += ": " + field;
  return out + ": " + message;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double strict_stod(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw std::invalid_argument("bad number '" + tok + "'");
  return v;
}

struct RawValue {
  std::string value;
  int line = 0;
};

class KeyTable {
 public:
  KeyTable(const std::string& text, std::string filename) : file_(std::move(filename)) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ScenarioError(file_, lineno, "", "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ScenarioError(file_, lineno, "", "missing key before '='");
      if (entries_.count(key))
        throw ScenarioError(file_, lineno, key, "duplicate key (first set on line " +
                                                    std::to_string(entries_[key].line) + ")");
      entries_[key] = {value, lineno};
    }
  }

  const std::string& file() const { return file_; }

  std::optional<RawValue> take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    RawValue v = it->second;
    entries_.erase(it);
    return v;
  }

  RawValue require(const std::string& key) {
    auto v = take(key);
    if (!v) throw ScenarioError(file_, 0, key, "required key is missing");
    return *v;
  }

  void reject_leftovers() const {
    if (entries_.empty()) return;
    const auto& [key, raw] = *entries_.begin();
    throw ScenarioError(file_, raw.line, key, "unknown key");
  }

  double as_double(const std::string& key, const RawValue& raw) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(raw.value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != raw.value.size() || raw.value.empty())
      throw ScenarioError(file_, raw.line, key, "expected a number, got '" + raw.value + "'");
    return v;
  }

  int as_int(const std::string& key, const RawValue& raw) const {
    const double v = as_double(key, raw);
    if (v != std::floor(v))
      throw ScenarioError(file_, raw.line, key, "expected an integer, got '" + raw.value + "'");
    return static_cast<int>(v);
  }

 private:
  std::string file_;
  std::map<std::string, RawValue> entries_;
};

std::vector<double> parse_grid(const KeyTable& kt, const std::string& key, const RawValue& raw) {
  std::vector<double> grid;
  const auto toks = tokens(raw.value);
  if (toks.size() == 1 && toks[0].find(':') != std::string::npos) {
    // "start:step:stop" inclusive range
    double a = 0, step = 0, b = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(toks[0]);
    if (!(ss >> a >> c1 >> step >> c2 >> b) || c1 != ':' || c2 != ':' || !ss.eof())
      throw ScenarioError(kt.file(), raw.line, key, "expected 'start:step:stop'");
    if (!(step > 0.0) || b < a)
      throw ScenarioError(kt.file(), raw.line, key, "range needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long k = 0; k <= n; ++k) grid.push_back(a + step * static_cast<double>(k));
  } else {
    for (const auto& tok : toks) {
      try {
        grid.push_back(strict_stod(tok));
      } catch (const std::exception&) {
        throw ScenarioError(kt.file(), raw.line, key, "bad grid value '" + tok + "'");
      }
    }
  }
  if (grid.empty()) throw ScenarioError(kt.file(), raw.line, key, "grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0)
      throw ScenarioError(kt.file(), raw.line, key, "grid values must be >= 0");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw ScenarioError(kt.file(), raw.line, key, "grid must be strictly increasing");
  }
  return grid;
}

Geometry parse_geometry(const KeyTable& kt, int L, const std::optional<RawValue>& tau_raw,
                        const std::optional<RawValue>& pos_raw,
                        const std::optional<RawValue>& speed_raw, double speed) {
  if (tau_raw && pos_raw)
    throw ScenarioError(kt.file(), pos_raw->line, "geometry.positions",
                        "give either geometry.tau or geometry.positions, not both");
  if (speed_raw && !pos_raw)
    throw ScenarioError(kt.file(), speed_raw->line, "geometry.speed",
                        "geometry.speed needs geometry.positions");
  try {
    if (tau_raw) {
      std::vector<std::vector<double>> rows;
      std::string row_text;
      std::istringstream ss(tau_raw->value);
      while (std::getline(ss, row_text, ';')) {
        std::vector<double> row;
        for (const auto& tok : tokens(row_text)) row.push_back(strict_stod(tok));
        if (!row.empty()) rows.push_back(std::move(row));
      }
      Eigen::MatrixXd tau(rows.size(), rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw std::invalid_argument("transit matrix must be square");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
          tau(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
      }
      if (tau.rows() != L) throw std::invalid_argument("transit matrix size must equal model.L");
      return Geometry::from_transit_matrix(std::move(tau));
    }
    if (pos_raw) {
      std::vector<double> x;
      for (const auto& tok : tokens(pos_raw->value)) x.push_back(strict_stod(tok));
      if (static_cast<int>(x.size()) != L)
        throw std::invalid_argument("need exactly model.L positions");
      return Geometry::from_positions(x, speed);
    }
    return Geometry::collective(L);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    const auto& raw = tau_raw ? *tau_raw : *pos_raw;
    throw ScenarioError(kt.file(), raw.line, tau_raw ? "geometry.tau" : "geometry.positions",
                        e.what());
  }
}

}  // namespace

ScenarioError::ScenarioError(const std::string& file, int line, std::string field,
                             const std::string& message)
    : std::runtime_error(format_what(file, line, field, message)),
      line_(line),
      field_(std::move(field)) {}

BathSpec Scenario::bath(std::optional<double> alpha_override) const {
  if (sweep_kind == SweepKind::cut) {
    if (!alpha_override) throw std::invalid_argument("Scenario::bath: cut sweep needs alpha");
    return BathSpec::cut(s, temperature, *alpha_override, *cut_delta);
  }
  if (cut_alpha) return BathSpec::cut(s, temperature, *cut_alpha, *cut_delta);
  return BathSpec::uncut(s, temperature);
}

Scenario parse_scenario_text(const std::string& text, const std::string& filename) {
  KeyTable kt(text, filename);
  Scenario sc;

  {
    const auto raw = kt.require("model.L");
    sc.L = kt.as_int("model.L", raw);
    if (sc.L < 1 || sc.L > 12)
      throw ScenarioError(kt.file(), raw.line, "model.L", "register size must be in [1, 12]");
  }
  {
    const auto raw = kt.require("bath.s");
    sc.s = kt.as_double("bath.s", raw);
    if (!(sc.s >= 1.0))
      throw ScenarioError(kt.file(), raw.line, "bath.s", "ohmicity exponent must be >= 1");
  }
  {
    const auto raw = kt.require("bath.T");
    sc.temperature = kt.as_double("bath.T", raw);
    if (!(sc.temperature >= 0.0))
      throw ScenarioError(kt.file(), raw.line, "bath.T", "temperature must be >= 0");
  }

  const auto tau_raw = kt.take("geometry.tau");
  const auto pos_raw = kt.take("geometry.positions");
  const auto speed_raw = kt.take("geometry.speed");
  double speed = 1.0;
  if (speed_raw) {
    speed = kt.as_double("geometry.speed", *speed_raw);
    if (!(speed > 0.0))
      throw ScenarioError(kt.file(), speed_raw->line, "geometry.speed", "speed must be > 0");
  }
  sc.geometry = parse_geometry(kt, sc.L, tau_raw, pos_raw, speed_raw, speed);

  const auto alpha_raw = kt.take("bath.cut.alpha");
  const auto delta_raw = kt.take("bath.cut.delta");
  if (alpha_raw) {
    const double a = kt.as_double("bath.cut.alpha", *alpha_raw);
    if (!(a >= 0.0))
      throw ScenarioError(kt.file(), alpha_raw->line, "bath.cut.alpha", "must be >= 0");
    sc.cut_alpha = a;
  }
  if (delta_raw) {
    const double d = kt.as_double("bath.cut.delta", *delta_raw);
    if (!(d >= 0.0))
      throw ScenarioError(kt.file(), delta_raw->line, "bath.cut.delta", "must be >= 0");
    sc.cut_delta = d;
  }

  {
    const auto raw = kt.require("sweep.kind");
    if (raw.value == "time") sc.sweep_kind = SweepKind::time;
    else if (raw.value == "cut") sc.sweep_kind = SweepKind::cut;
    else
      throw ScenarioError(kt.file(), raw.line, "sweep.kind",
                          "expected 'time' or 'cut', got '" + raw.value + "'");

    if (sc.sweep_kind == SweepKind::cut) {
      if (!sc.cut_delta)
        throw ScenarioError(kt.file(), raw.line, "sweep.kind",
                            "cut sweeps need bath.cut.delta");
      if (sc.cut_alpha)
        throw ScenarioError(kt.file(), alpha_raw->line, "bath.cut.alpha",
                            "cut sweeps scan alpha; drop this key");
    } else if (sc.cut_alpha.has_value() != sc.cut_delta.has_value()) {
      throw ScenarioError(kt.file(), (alpha_raw ? alpha_raw : delta_raw)->line,
                          alpha_raw ? "bath.cut.alpha" : "bath.cut.delta",
                          "a fixed cut needs both bath.cut.alpha and bath.cut.delta");
    }
  }

  sc.grid = parse_grid(kt, "sweep.grid", kt.require("sweep.grid"));
  if (const auto raw = kt.take("sweep.t_asym")) {
    sc.t_asym = kt.as_double("sweep.t_asym", *raw);
    if (!(sc.t_asym >= 0.0))
      throw ScenarioError(kt.file(), raw->line, "sweep.t_asym", "must be >= 0");
  }

  if (const auto raw = kt.take("pairs.class")) {
    for (const auto& tok : tokens(raw->value)) {
      if (sc.L != 2)
        throw ScenarioError(kt.file(), raw->line, "pairs.class",
                            "named pair classes are defined for model.L = 2 only");
      if (tok == "single")
        sc.pairs.emplace_back(RegisterLabel::parse("++"), RegisterLabel::parse("+-"));
      else if (tok == "singlet")
        sc.pairs.emplace_back(RegisterLabel::parse("+-"), RegisterLabel::parse("-+"));
      else if (tok == "ghz")
        sc.pairs.emplace_back(RegisterLabel::parse("++"), RegisterLabel::parse("--"));
      else
        throw ScenarioError(kt.file(), raw->line, "pairs.class",
                            "unknown pair class '" + tok + "'");
      sc.pair_names.push_back(tok);
    }
  }
  if (const auto raw = kt.take("pairs.explicit")) {
    for (const auto& tok : tokens(raw->value)) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ScenarioError(kt.file(), raw->line, "pairs.explicit",
                            "expected 'label:label', got '" + tok + "'");
      try {
        auto a = RegisterLabel::parse(tok.substr(0, colon));
        auto b = RegisterLabel::parse(tok.substr(colon + 1));
        if (a.size() != sc.L || b.size() != sc.L)
          throw std::invalid_argument("labels must have model.L characters");
        if (a == b) throw std::invalid_argument("pair labels must differ");
        sc.pairs.emplace_back(std::move(a), std::move(b));
      } catch (const std::exception& e) {
        throw ScenarioError(kt.file(), raw->line, "pairs.explicit",
                            std::string(e.what()) + " in '" + tok + "'");
      }
      sc.pair_names.push_back(tok);
    }
  }
  for (std::size_t i = 0; i < sc.pair_names.size(); ++i)
    for (std::size_t j = i + 1; j < sc.pair_names.size(); ++j)
      if (sc.pair_names[i] == sc.pair_names[j])
        throw ScenarioError(kt.file(), 0, "pairs", "duplicate pair '" + sc.pair_names[i] + "'");

  sc.csv_path = kt.require("output.csv").value;
  if (sc.csv_path.empty())
    throw ScenarioError(kt.file(), 0, "output.csv", "path must be non-empty");
  if (const auto raw = kt.take("output.plot")) sc.plot_path = raw->value;

  kt.reject_leftovers();
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path, 0, "", "cannot open scenario file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

}  // namespace spinreg
