#pragma once

// Growth tables n -> d_n and the empirical exponential/polynomial classifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algrowth/exactlin.hpp"

namespace algrowth {

using Count = std::uint64_t;

struct GrowthTable {
  std::vector<Count> dims;  ///< dims[n-1] = d_n
  std::vector<bool> exact;  ///< false where the entry is only an upper bound
  std::optional<std::string> object;
  std::size_t sigma_size = 0;
  std::vector<std::string> warnings;

  int n_max() const { return static_cast<int>(dims.size()); }
  Count at(int n) const { return dims.at(static_cast<std::size_t>(n - 1)); }
  bool all_exact() const;
};

enum class Verdict { Exponential, Polynomial, Inconclusive };
std::string to_string(Verdict v);

struct ClassifierThresholds {
  double rate_floor = 0.05;
  double degree_stability = 0.25;  ///< max |gamma(upper half) - gamma(window)|
};

struct GrowthClassification {
  Verdict verdict = Verdict::Inconclusive;
  double rate = 0;      ///< alpha for exponential, gamma for polynomial
  Rational rate_exact;  ///< the same double, converted exactly
  int n_min = 0;
  int n_max = 0;
  bool zero_table = false;

  double alpha = 0;  ///< slope of log d_n against n
  double gamma = 0;  ///< slope of log d_n against log n
  double gamma_upper = 0;
  double rss_exponential = 0;
  double rss_polynomial = 0;
  ClassifierThresholds thresholds;
};

/// values[k] is d_{k+1}. The window is inclusive and 1-based.
GrowthClassification classify_values(const std::vector<Count>& values, int n_min, int n_max,
                                     const ClassifierThresholds& thresholds = {});

/// Same rule on log d_n (entries for d_n = 0 are -infinity).
GrowthClassification classify_logs(const std::vector<double>& log_values, int n_min, int n_max,
                                   const ClassifierThresholds& thresholds = {});

GrowthClassification classify_growth(const GrowthTable& table, int n_min, int n_max,
                                     const ClassifierThresholds& thresholds = {});

}  // namespace algrowth
