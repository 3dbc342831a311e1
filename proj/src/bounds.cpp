#include "algrowth/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace algrowth {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void require_integer_grid(const FilteredGrowthProfile& p) {
  if (p.grid.empty()) throw ValidationError("profile is empty");
  if (p.grid.size() != p.values.size()) throw ValidationError("profile grid and values differ in length");
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (denominator(p.grid[i]) != 1) throw ValidationError("profile grid must be integers, got " + to_string(p.grid[i]));
    if (i && p.grid[i] <= p.grid[i - 1]) throw ValidationError("profile grid must be increasing");
  }
}

std::size_t upper_half_start(const FilteredGrowthProfile& p) { return p.grid.size() / 2; }

BoundReport base_report(const FilteredGrowthProfile& p, std::string criterion, const BoundThresholds& t) {
  BoundReport r;
  r.profile = p.pair;
  r.criterion = std::move(criterion);
  r.thresholds = t;
  r.window_start = p.grid[upper_half_start(p)];
  r.window_end = p.grid.back();
  r.degenerate = true;
  for (std::size_t i = upper_half_start(p); i < p.values.size(); ++i)
    if (p.values[i] != 0) r.degenerate = false;
  return r;
}

}  // namespace

std::string BoundReport::to_text() const {
  std::ostringstream out;
  out << "criterion: " << criterion << "\n";
  out << "profile: " << profile << "\n";
  out << "estimate: " << fixed6(to_double(estimate)) << "\n";
  out << "threshold: " << fixed6(threshold) << "\n";
  out << "window: " << to_string(window_start) << ".." << to_string(window_end) << "\n";
  out << "degenerate: " << (degenerate ? "true" : "false") << "\n";
  out << "rate_floor: " << fixed6(thresholds.rate_floor) << "\n";
  out << "polynomial_slack: " << fixed6(thresholds.polynomial_slack) << "\n";
  out << "verdict: " << verdict << "\n";
  return out.str();
}

std::string bound_reports_tsv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  out << "criterion\tprofile\testimate\tthreshold\tverdict\twindow_start\twindow_end\tdegenerate\n";
  for (const auto& r : reports)
    out << r.criterion << "\t" << r.profile << "\t" << fixed6(to_double(r.estimate)) << "\t" << fixed6(r.threshold)
        << "\t" << r.verdict << "\t" << to_string(r.window_start) << "\t" << to_string(r.window_end) << "\t"
        << (r.degenerate ? "true" : "false") << "\n";
  return out.str();
}

GrowthClassification classify_profile(const FilteredGrowthProfile& p) {
  require_integer_grid(p);
  std::vector<Count> values;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (p.grid[i] < 1) continue;
    if (p.grid[i] != Rational(static_cast<long long>(values.size() + 1)))
      throw ValidationError("classification needs the consecutive grid 1, 2, ..., N");
    values.push_back(p.values[i]);
  }
  if (values.size() < 2) throw ValidationError("classification needs at least two grid points n >= 1");
  return classify_values(values, 1, static_cast<int>(values.size()));
}

BoundReport affine_consistency(const FilteredGrowthProfile& p, int ambient_dim, const BoundThresholds& t) {
  require_integer_grid(p);
  if (ambient_dim < 2 || ambient_dim % 2 != 0) throw ValidationError("ambient dimension must be even and >= 2");
  BoundReport r = base_report(p, "affine-consistency", t);
  r.threshold = ambient_dim / 2.0 + t.polynomial_slack;

  double best = 0;
  for (std::size_t i = upper_half_start(p); i < p.grid.size(); ++i) {
    const double n = to_double(p.grid[i]);
    if (n <= 1 || p.values[i] == 0) continue;
    best = std::max(best, std::log(static_cast<double>(p.values[i])) / std::log(n));
  }
  r.estimate = exact_from_double(best);

  bool exponential = false;
  try {
    exponential = classify_profile(p).verdict == Verdict::Exponential;
  } catch (const ValidationError&) {
    // Grids that do not start at 1 are judged by the estimate alone.
  }
  if (r.degenerate)
    r.verdict = "consistent with affine (degenerate: zero profile)";
  else if (exponential)
    r.verdict = "inconsistent: exponential profile exceeds the polynomial bound";
  else if (best <= r.threshold)
    r.verdict = "consistent with affine";
  else
    r.verdict = "inconsistent: degree exceeds the polynomial bound";
  return r;
}

BoundReport entropy_lower_bound(const FilteredGrowthProfile& p, const Rational& max_f, const BoundThresholds& t) {
  require_integer_grid(p);
  if (max_f < 1) throw ValidationError("max_f must be >= 1, got " + to_string(max_f));
  BoundReport r = base_report(p, "entropy-lower-bound", t);
  r.threshold = t.rate_floor;

  double gamma = 0;
  for (std::size_t i = upper_half_start(p); i < p.grid.size(); ++i) {
    const double n = to_double(p.grid[i]);
    if (n < 1 || p.values[i] == 0) continue;
    gamma = std::max(gamma, std::log(static_cast<double>(p.values[i])) / n);
  }
  r.estimate = exact_from_double(gamma) / max_f;
  r.verdict = gamma > t.rate_floor ? "positive entropy certified by profile" : "no entropy certificate";
  return r;
}

}  // namespace algrowth
