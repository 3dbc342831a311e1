#pragma once

// Numeric criteria on filtered growth profiles: a polynomial-degree test
// against half the ambient dimension, and an entropy lower bound from the
// exponential rate of i(n).

#include <string>
#include <vector>

#include "algrowth/filt.hpp"

namespace algrowth {

struct BoundThresholds {
  double rate_floor = 0.05;        ///< entropy verdict: positive iff the rate exceeds this
  double polynomial_slack = 0.25;  ///< affine verdict: degree <= ambient_dim/2 + slack
};

struct BoundReport {
  std::string profile;
  std::string criterion;  ///< "affine-consistency" or "entropy-lower-bound"
  Rational estimate;      ///< exact rational image of the floating estimate
  double threshold = 0;
  std::string verdict;
  Rational window_start;
  Rational window_end;
  bool degenerate = false;  ///< profile identically zero on the window
  BoundThresholds thresholds;

  std::string to_text() const;
};

/// Header plus one row per report.
std::string bound_reports_tsv(const std::vector<BoundReport>& reports);

/// max over the upper half of the window of log i(n) / log n, points with
/// n <= 1 or i(n) = 0 skipped. Exponential profiles (by the growth
/// classifier) are inconsistent whatever the estimate.
BoundReport affine_consistency(const FilteredGrowthProfile& profile, int ambient_dim,
                               const BoundThresholds& thresholds = {});

/// Gamma = max over the upper half of the window of (1/n) log i(n) for n >= 1;
/// the bound is Gamma / max_f. Requires max_f >= 1.
BoundReport entropy_lower_bound(const FilteredGrowthProfile& profile, const Rational& max_f,
                                const BoundThresholds& thresholds = {});

/// Classifier verdict on the integer points n >= 1 of the profile.
GrowthClassification classify_profile(const FilteredGrowthProfile& profile);

}  // namespace algrowth
