#pragma once

// Explicit finite-dimensional linear categories.
//
// Morphisms are sparse vectors over one global basis; every basis vector
// lives in a single hom(src, tgt). compose_basis(a, b) is "a then b".

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "algrowth/exactlin.hpp"
#include "algrowth/fpcat.hpp"
#include "algrowth/growth.hpp"

namespace algrowth {

struct BasisInfo {
  int src = 0;
  int tgt = 0;
  long long degree = 0;
  std::string label;
};

class LinearCategory {
 public:
  virtual ~LinearCategory() = default;

  virtual int object_count() const = 0;
  virtual std::string object_name(int o) const = 0;
  virtual Index basis_size() const = 0;
  virtual const BasisInfo& basis(Index i) const = 0;
  /// Requires basis(a).tgt == basis(b).src.
  virtual Vec compose_basis(Index a, Index b) const = 0;
  virtual Vec unit(int o) const = 0;
  virtual long long grading_modulus() const { return 0; }

  /// Bilinear extension of compose_basis; non-composable pairs contribute 0.
  Vec compose(const Vec& a, const Vec& b) const;
  std::vector<Index> hom_basis(int src, int tgt) const;
};

/// Composition given by explicit tables.
class ExplicitLinearCategory : public LinearCategory {
 public:
  ExplicitLinearCategory(std::vector<std::string> objects, std::vector<BasisInfo> basis, long long modulus = 0);

  void set_product(Index a, Index b, Vec value);
  void set_unit(int o, Vec value);

  int object_count() const override { return static_cast<int>(objects_.size()); }
  std::string object_name(int o) const override { return objects_.at(static_cast<std::size_t>(o)); }
  Index basis_size() const override { return static_cast<Index>(basis_.size()); }
  const BasisInfo& basis(Index i) const override { return basis_.at(static_cast<std::size_t>(i)); }
  Vec compose_basis(Index a, Index b) const override;
  Vec unit(int o) const override { return units_.at(static_cast<std::size_t>(o)); }
  long long grading_modulus() const override { return modulus_; }

 private:
  std::vector<std::string> objects_;
  std::vector<BasisInfo> basis_;
  std::map<std::pair<Index, Index>, Vec> table_;
  std::vector<Vec> units_;
  long long modulus_;
};

/// Copies every composable product into an explicit table.
ExplicitLinearCategory materialize(const LinearCategory& c);

/// The ground field as a one-object category.
ExplicitLinearCategory unit_category();

/// A length-homogeneous presentation modulo its ideal and all words longer
/// than max_length. Basis: standard (irreducible) words of length <= max_length.
class TruncatedPathCategory : public LinearCategory {
 public:
  TruncatedPathCategory(FpCategory& fp, int max_length);

  int object_count() const override { return fp_.object_count(); }
  std::string object_name(int o) const override {
    return fp_.presentation().objects.at(static_cast<std::size_t>(o));
  }
  Index basis_size() const override { return static_cast<Index>(basis_.size()); }
  const BasisInfo& basis(Index i) const override { return basis_.at(static_cast<std::size_t>(i)); }
  Vec compose_basis(Index a, Index b) const override;
  Vec unit(int o) const override;
  long long grading_modulus() const override { return fp_.presentation().grading_modulus; }

  /// Image of a word-id vector (as produced by fp.compile) in this basis.
  Vec from_words(const Vec& words) const;
  std::size_t word_length(Index i) const { return fp_.words().length(word_of_[static_cast<std::size_t>(i)]); }

 private:
  FpCategory& fp_;
  int max_length_;
  std::vector<BasisInfo> basis_;
  std::vector<Index> word_of_;
  std::unordered_map<Index, Index> index_of_word_;
};

/// Objects are vector spaces k^{dim}; hom(K, L) = dim K x dim L matrices
/// acting on row vectors, so "f then g" is the matrix product f * g.
class MatrixCategory : public LinearCategory {
 public:
  MatrixCategory(std::vector<std::string> names, std::vector<int> dims);

  int object_count() const override { return static_cast<int>(dims_.size()); }
  std::string object_name(int o) const override { return names_.at(static_cast<std::size_t>(o)); }
  Index basis_size() const override { return static_cast<Index>(basis_.size()); }
  const BasisInfo& basis(Index i) const override { return basis_.at(static_cast<std::size_t>(i)); }
  Vec compose_basis(Index a, Index b) const override;
  Vec unit(int o) const override;

  int dim(int o) const { return dims_.at(static_cast<std::size_t>(o)); }
  Index entry(int src, int tgt, int row, int col) const;
  Vec from_matrix(int src, int tgt, const std::vector<std::vector<Rational>>& m) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> dims_;
  std::vector<BasisInfo> basis_;
  std::map<std::pair<int, int>, Index> offset_;
};

/// Growth tables of a finite set of morphisms in an explicit category.
GrowthBundle linear_word_growth(const LinearCategory& c, const std::vector<Vec>& sigma, int n_max);

/// Block (src, tgt) of a nonzero morphism; throws if it spans several homs.
std::pair<int, int> block_of(const LinearCategory& c, const Vec& v);

/// Objects are pairs, homs are tensor products of homs, and
/// (a (x) b)(a' (x) b') = (-1)^{|b||a'|} (a a') (x) (b b').
/// Both inputs must be unital; parity must be well defined.
ExplicitLinearCategory tensor_category(const LinearCategory& c, const LinearCategory& d);

/// Index of the object (i, j) and of the basis pair (a, b) in tensor_category(c, d).
int tensor_object(const LinearCategory& c, const LinearCategory& d, int i, int j);
Index tensor_basis(const LinearCategory& c, const LinearCategory& d, Index a, Index b);

/// Unit laws on every basis vector; returns the violations found.
std::vector<std::string> unit_violations(const LinearCategory& c);
/// Associativity on every composable basis triple.
std::vector<std::string> associativity_violations(const LinearCategory& c);

/// Retract data: r: K -> L and k: L -> K with "r then k" = id_K, per object K.
struct RetractData {
  int to = 0;  ///< the object L
  Vec r;
  Vec k;
};

struct RetractTransport {
  std::vector<Vec> transported;
  GrowthTable original;
  GrowthTable transported_table;
  bool equal = false;
};

/// phi(y) = k_src * y * r_tgt for y : K_src -> K_tgt. Checks the retract
/// identities first (InvariantViolation otherwise).
RetractTransport retract_transport(const LinearCategory& c, const std::vector<Vec>& sigma,
                                   const std::map<int, RetractData>& retracts, int n_max);

}  // namespace algrowth
