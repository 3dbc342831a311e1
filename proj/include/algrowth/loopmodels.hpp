#pragma once

// Algebraic stand-ins for loop-space homology: tensor-algebra Hilbert series,
// graded free Lie algebra dimensions, and word balls of free and surface
// groups together with their group algebras filtered by word length.

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algrowth/exactlin.hpp"
#include "algrowth/growth.hpp"
#include "algrowth/lincat.hpp"

namespace algrowth {

struct HilbertSeries {
  std::vector<BigInt> coefficients;  ///< c_0 .. c_N
};

/// Coefficients of 1 / (1 - sum_i t^{d_i}) through degree n_max.
HilbertSeries tensor_hilbert(const std::vector<int>& degrees, int n_max);

struct WittTable {
  std::vector<int> degrees;
  std::vector<BigInt> lie_dims;  ///< lie_dims[j] = l_j for j = 0..N (l_0 = 0)
};

/// l_j from prod_{j odd} (1 + t^j)^{l_j} * prod_{j even} (1 - t^j)^{-l_j}
/// = 1 / (1 - sum_i t^{d_i}), solved degree by degree.
WittTable graded_witt_dims(const std::vector<int>& degrees, int n_max);

/// The product side above, expanded through degree n_max.
std::vector<BigInt> pbw_product(const WittTable& table, int n_max);

struct PbwCheck {
  bool ok = true;
  int first_failure = -1;  ///< lowest degree where the two sides differ
};
PbwCheck pbw_check(const std::vector<int>& degrees, int n_max);

/// Classifies the partial sums b_{<=n} = sum_{i<=n} c_i, n >= 1.
GrowthClassification rational_hyperbolicity(const HilbertSeries& series, int n_min, int n_max,
                                            const ClassifierThresholds& thresholds = {});

/// Letters 2j and 2j+1 are generator j and its inverse.
using GroupWord = std::string;

/// A free group (no relator) or a surface group with its one-relator
/// presentation. Normal forms are geodesic and unique per element.
class GroupModel {
 public:
  static GroupModel free_group(int rank);
  /// Orientable genus >= 2: [a1,b1]...[ag,bg]. Non-orientable genus >= 3: a1^2...ag^2.
  static GroupModel surface_group(int genus, bool orientable);

  int generator_count() const { return generators_; }
  int letter_count() const { return 2 * generators_; }
  const GroupWord& relator() const { return relator_; }
  std::string describe() const { return description_; }

  GroupWord normal_form(const GroupWord& w) const;
  std::string render(const GroupWord& w) const;

 private:
  GroupWord dehn_reduce(GroupWord w) const;

  int generators_ = 0;
  GroupWord relator_;
  std::vector<GroupWord> cyclic_;  ///< cyclic conjugates of the relator and its inverse
  std::string description_;
};

GroupWord free_reduce(const GroupWord& w);
GroupWord group_inverse(const GroupWord& w);

struct BallTable {
  std::string group;
  std::vector<Count> sizes;  ///< B_0 .. B_N
};

/// Closed form B_n = 1 + sum_{l=1}^n 2r (2r-1)^{l-1}.
BallTable free_group_ball(int rank, int n_max);

/// Thrown when the sphere-by-sphere search would exceed the memory budget.
class BallBudgetExceeded : public ResourceError {
 public:
  BallBudgetExceeded(const std::string& what, BallTable partial) : ResourceError(what), partial_(std::move(partial)) {}
  const BallTable& partial() const { return partial_; }

 private:
  BallTable partial_;
};

/// Budget in bytes for the breadth-first search: ALGROWTH_BFS_BUDGET_MB, default 4096 MB.
std::size_t bfs_budget_bytes();

/// Breadth-first search over normal forms. Non-orientable genus 2 (the
/// Klein bottle group) is rejected as UnsupportedInput.
BallTable surface_group_ball(int genus, bool orientable, int n_max,
                             std::optional<std::size_t> budget_bytes = std::nullopt);
BallTable group_ball(const GroupModel& g, int n_max, std::optional<std::size_t> budget_bytes = std::nullopt,
                     std::vector<std::vector<GroupWord>>* spheres = nullptr);

/// k[G] truncated to elements of length <= window, as a one-object linear
/// category in degree 0. Products longer than the window are set to zero
/// and counted; this truncation is not associative at the window edge.
class GroupAlgebraModel : public LinearCategory {
 public:
  GroupAlgebraModel(GroupModel group, int window);

  int object_count() const override { return 1; }
  std::string object_name(int) const override { return "pt"; }
  Index basis_size() const override { return static_cast<Index>(elements_.size()); }
  const BasisInfo& basis(Index i) const override { return basis_.at(static_cast<std::size_t>(i)); }
  Vec compose_basis(Index a, Index b) const override;
  Vec unit(int) const override { return Vec::unit(0); }

  const GroupModel& group() const { return group_; }
  int window() const { return window_; }
  std::size_t length(Index i) const { return elements_.at(static_cast<std::size_t>(i)).size(); }
  const GroupWord& element(Index i) const { return elements_.at(static_cast<std::size_t>(i)); }
  std::optional<Index> index_of(const GroupWord& normal_form) const;
  /// Basis index of a single generator letter.
  Index letter(int l) const;
  std::size_t out_of_window() const { return out_of_window_.load(); }

  /// Word length as an exact level per basis vector.
  std::vector<Rational> levels() const;

 private:
  GroupModel group_;
  int window_;
  std::vector<GroupWord> elements_;
  std::vector<BasisInfo> basis_;
  std::unordered_map<GroupWord, Index> index_;
  mutable std::atomic<std::size_t> out_of_window_{0};
};

}  // namespace algrowth
