#include "ildepth/locality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ild {

std::size_t ceil_count(std::size_t n, double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("locality must be positive, got " + std::to_string(beta));
  double r = static_cast<double>(n) * beta;
  double c = std::ceil(r - 1e-9);
  if (c < 1.0) return 1;
  if (c >= static_cast<double>(n)) return n;
  return static_cast<std::size_t>(c);
}

std::size_t LocalityGrid::level_for(double beta) const {
  std::size_t m = ceil_count(n, beta);
  m = std::clamp(m, n0, n);
  return m - n0;
}

LocalityGrid make_grid(std::size_t n, std::size_t n0) {
  if (n == 0) throw std::invalid_argument("grid: empty sample");
  if (n0 < 1 || n0 > n)
    throw std::invalid_argument("grid: n0 must be in [1, n], got " + std::to_string(n0) +
                                " with n = " + std::to_string(n));
  LocalityGrid g;
  g.n = n;
  g.n0 = n0;
  g.beta0 = static_cast<double>(n0 - 1) / static_cast<double>(n);
  g.levels.resize(n - n0 + 1);
  for (std::size_t i = 0; i < g.levels.size(); ++i)
    g.levels[i] = static_cast<double>(n0 + i) / static_cast<double>(n);
  g.levels.back() = 1.0;
  return g;
}

WeightSpec WeightSpec::uniform(double b1) {
  WeightSpec s;
  s.kind = Kind::Uniform;
  s.b1 = b1;
  return s;
}

WeightSpec WeightSpec::uniform(double b0, double b1) {
  WeightSpec s;
  s.kind = Kind::Uniform;
  s.b0 = b0;
  s.b1 = b1;
  return s;
}

WeightSpec WeightSpec::degenerate(double b) {
  WeightSpec s;
  s.kind = Kind::Degenerate;
  s.at = b;
  return s;
}

WeightSpec WeightSpec::custom(std::vector<double> masses) {
  WeightSpec s;
  s.kind = Kind::Custom;
  s.raw = std::move(masses);
  return s;
}

std::vector<double> resolve_weights(const WeightSpec& spec, const LocalityGrid& grid) {
  std::size_t b = grid.level_count();
  std::vector<double> w(b, 0.0);
  double n = static_cast<double>(grid.n);

  switch (spec.kind) {
    case WeightSpec::Kind::Uniform: {
      if (!(spec.b1 > 0.0) || spec.b1 > 1.0)
        throw std::invalid_argument("uniform weights: upper edge must lie in (0, 1], got " +
                                    std::to_string(spec.b1));
      if (spec.b0 && !(*spec.b0 < spec.b1))
        throw std::invalid_argument("uniform weights: lower edge must be below the upper edge");
      // Snap the upper edge up to its grid level; clamp the lower edge to the
      // grid's open bottom so the window is never empty.
      double hi = grid.levels[grid.level_for(spec.b1)];
      double lo = grid.beta0;
      if (spec.b0) lo = std::max(lo, *spec.b0);
      if (!(lo < hi))
        throw std::invalid_argument("uniform weights: window (" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] contains no grid level");
      double total = 0.0;
      for (std::size_t i = 0; i < b; ++i) {
        double cell_lo = static_cast<double>(grid.n0 - 1 + i) / n;
        double cell_hi = grid.levels[i];
        double overlap = std::min(cell_hi, hi) - std::max(cell_lo, lo);
        if (overlap > 0.0) {
          w[i] = overlap;
          total += overlap;
        }
      }
      for (double& x : w) x /= total;
      break;
    }
    case WeightSpec::Kind::Degenerate: {
      if (!(spec.at > 0.0) || spec.at > 1.0)
        throw std::invalid_argument("point weight: locality must lie in (0, 1], got " +
                                    std::to_string(spec.at));
      w[grid.level_for(spec.at)] = 1.0;
      break;
    }
    case WeightSpec::Kind::Custom: {
      if (spec.raw.size() != b)
        throw std::invalid_argument("custom weights: got " + std::to_string(spec.raw.size()) +
                                    " masses for " + std::to_string(b) + " grid levels");
      double total = 0.0;
      for (double x : spec.raw) {
        if (!(x >= 0.0) || !std::isfinite(x))
          throw std::invalid_argument("custom weights: masses must be finite and nonnegative");
        total += x;
      }
      if (total <= 0.0) throw std::invalid_argument("custom weights: all masses are zero");
      for (std::size_t i = 0; i < b; ++i) w[i] = spec.raw[i] / total;
      break;
    }
  }
  return w;
}

namespace {

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": cannot parse number '" + text + "'");
  }
}

}  // namespace

WeightSpec parse_weight_spec(const std::string& text) {
  if (text == "full" || text.empty()) return WeightSpec::full();
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "uniform") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) return WeightSpec::uniform(parse_double(rest, "weights"));
    std::string lo = rest.substr(0, comma);
    double b1 = parse_double(rest.substr(comma + 1), "weights");
    if (lo == "auto") return WeightSpec::uniform(b1);
    return WeightSpec::uniform(parse_double(lo, "weights"), b1);
  }
  if (head == "point") return WeightSpec::degenerate(parse_double(rest, "weights"));
  if (head == "file") {
    std::ifstream in(rest);
    if (!in) throw std::invalid_argument("weights: cannot open '" + rest + "'");
    std::vector<double> masses;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto comma = line.find(',');
      std::string cell = comma == std::string::npos ? line : line.substr(comma + 1);
      masses.push_back(parse_double(cell, "weights file"));
    }
    return WeightSpec::custom(std::move(masses));
  }
  throw std::invalid_argument("weights: unknown form '" + text +
                              "', expected uniform:B0,B1 | uniform:B1 | point:B | file:PATH | full");
}

std::string to_string(const WeightSpec& spec) {
  char buf[96];
  switch (spec.kind) {
    case WeightSpec::Kind::Uniform:
      if (spec.b0)
        std::snprintf(buf, sizeof buf, "uniform:%.12g,%.12g", *spec.b0, spec.b1);
      else
        std::snprintf(buf, sizeof buf, "uniform:auto,%.12g", spec.b1);
      return buf;
    case WeightSpec::Kind::Degenerate:
      std::snprintf(buf, sizeof buf, "point:%.12g", spec.at);
      return buf;
    case WeightSpec::Kind::Custom:
      return "custom[" + std::to_string(spec.raw.size()) + "]";
  }
  return "?";
}

}  // namespace ild
