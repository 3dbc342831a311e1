#include "algrowth/growth.hpp"

#include <cmath>

namespace algrowth {

bool GrowthTable::all_exact() const {
  for (bool e : exact)
    if (!e) return false;
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Exponential:
      return "exponential";
    case Verdict::Polynomial:
      return "polynomial";
    case Verdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

namespace {

struct Fit {
  double slope = 0;
  double intercept = 0;
  double rss = 0;
  bool ok = false;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  Fit f;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return f;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    f.rss += r * r;
  }
  f.ok = true;
  return f;
}

}  // namespace

GrowthClassification classify_values(const std::vector<Count>& values, int n_min, int n_max,
                                     const ClassifierThresholds& thresholds) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (Count d : values) logs.push_back(d == 0 ? -INFINITY : std::log(static_cast<double>(d)));
  return classify_logs(logs, n_min, n_max, thresholds);
}

GrowthClassification classify_logs(const std::vector<double>& values, int n_min, int n_max,
                                   const ClassifierThresholds& thresholds) {
  if (n_min < 1 || n_max > static_cast<int>(values.size()) || n_max - n_min < 4)
    throw ValidationError("classification window (" + std::to_string(n_min) + "," + std::to_string(n_max) +
                          ") must lie in 1.." + std::to_string(values.size()) + " and span at least 4 steps");
  GrowthClassification c;
  c.n_min = n_min;
  c.n_max = n_max;
  c.thresholds = thresholds;

  // Zero entries carry no logarithm and are skipped.
  std::vector<double> ns, logns, logds, upper_logns, upper_logds;
  const int mid = n_min + (n_max - n_min) / 2;
  for (int n = n_min; n <= n_max; ++n) {
    const double logd = values[static_cast<std::size_t>(n - 1)];
    if (std::isinf(logd)) continue;
    ns.push_back(n);
    logns.push_back(std::log(static_cast<double>(n)));
    logds.push_back(logd);
    if (n >= mid) {
      upper_logns.push_back(logns.back());
      upper_logds.push_back(logds.back());
    }
  }
  if (ns.empty()) {
    c.zero_table = true;
    c.verdict = Verdict::Polynomial;
    return c;
  }
  const Fit exp_fit = least_squares(ns, logds);
  const Fit poly_fit = least_squares(logns, logds);
  const Fit upper_fit = least_squares(upper_logns, upper_logds);
  if (!exp_fit.ok || !poly_fit.ok || !upper_fit.ok) return c;

  c.alpha = exp_fit.slope;
  c.gamma = poly_fit.slope;
  c.gamma_upper = upper_fit.slope;
  c.rss_exponential = exp_fit.rss;
  c.rss_polynomial = poly_fit.rss;

  const bool exponential = c.alpha >= thresholds.rate_floor && c.rss_exponential < c.rss_polynomial;
  const bool stable = std::abs(c.gamma_upper - c.gamma) <= thresholds.degree_stability;
  if (exponential) {
    c.verdict = Verdict::Exponential;
    c.rate = c.alpha;
  } else if (stable && (c.alpha < thresholds.rate_floor || c.rss_polynomial <= c.rss_exponential)) {
    c.verdict = Verdict::Polynomial;
    c.rate = c.gamma;
  } else {
    c.verdict = Verdict::Inconclusive;
    c.rate = c.alpha;
  }
  // Round away floating noise in exactly-flat tables.
  if (std::abs(c.rate) < 1e-12) c.rate = 0;
  c.rate_exact = exact_from_double(c.rate);
  return c;
}

GrowthClassification classify_growth(const GrowthTable& table, int n_min, int n_max,
                                     const ClassifierThresholds& thresholds) {
  return classify_values(table.dims, n_min, n_max, thresholds);
}

}  // namespace algrowth
