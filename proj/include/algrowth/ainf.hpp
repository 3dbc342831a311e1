#pragma once

// Finite strictly unital A-infinity categories.
//
// Inputs are written in diagrammatic order: mu^k(x_1, ..., x_k) with
// x_i in hom(X_{i-1}, X_i), output in hom(X_0, X_k), degree 2 - k.
// The relations are
//   sum_{i, j} (-1)^{sum_{l <= i} (|x_l| - 1)}
//       mu(x_1, ..., x_i, mu^j(x_{i+1}, ..., x_{i+j}), x_{i+j+1}, ..., x_k) = 0,
// and strict units satisfy mu^2(e, x) = x, mu^2(x, e) = (-1)^{|x|} x and
// mu^k(..., e, ...) = 0 for k != 2. A dg category in the same order becomes
// mu^1(x) = (-1)^{|x|} dx, mu^2(x_1, x_2) = (-1)^{|x_1|} x_1 x_2.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algrowth/exactlin.hpp"
#include "algrowth/lincat.hpp"

namespace algrowth {

using Tuple = std::vector<Index>;

class AInfOps {
 public:
  virtual ~AInfOps() = default;

  virtual int object_count() const = 0;
  virtual std::string object_name(int o) const = 0;
  virtual Index basis_size() const = 0;
  virtual const BasisInfo& basis(Index i) const = 0;
  virtual long long grading_modulus() const = 0;
  /// mu^k vanishes identically for k > max_arity().
  virtual int max_arity() const = 0;
  /// mu^k on a composable basis tuple (1 <= k).
  virtual Vec mu(const Tuple& inputs) const = 0;
  virtual Vec unit(int o) const = 0;

  /// Multilinear extension; non-composable combinations contribute zero.
  Vec mu_vectors(const std::vector<Vec>& inputs) const;

  const std::vector<Index>& hom_basis(int src, int tgt) const;
  const std::vector<Index>& basis_from(int src) const;
  int parity(Index i) const;
  long long reduce_degree(long long d) const;

 protected:
  /// Derived classes call this once their basis is final.
  void index_basis();

 private:
  std::map<std::pair<int, int>, std::vector<Index>> hom_;
  std::vector<std::vector<Index>> from_;
  std::vector<Index> empty_;
};

/// Rejects odd nonzero grading moduli: the sign rules need a parity.
void require_even_modulus(long long modulus);

/// Table-backed A-infinity category.
class AInfCategory : public AInfOps {
 public:
  AInfCategory(std::vector<std::string> objects, long long modulus, int k_max);

  Index add_basis(int src, int tgt, long long degree, std::string label);
  /// The strict unit of o must be a degree-0 endomorphism basis vector.
  void set_unit(int o, Index basis_vector);
  /// Records mu(inputs) = output. Rejects arity > k_max, bad degrees and
  /// outputs outside hom(src(x_1), tgt(x_k)).
  void set_mu(const Tuple& inputs, Vec output);
  /// Fills the strict-unit entries, checking any explicit ones against them.
  void finalize();

  int object_count() const override { return static_cast<int>(objects_.size()); }
  std::string object_name(int o) const override { return objects_.at(static_cast<std::size_t>(o)); }
  Index basis_size() const override { return static_cast<Index>(basis_.size()); }
  const BasisInfo& basis(Index i) const override { return basis_.at(static_cast<std::size_t>(i)); }
  long long grading_modulus() const override { return modulus_; }
  int max_arity() const override { return k_max_; }
  Vec mu(const Tuple& inputs) const override;
  Vec unit(int o) const override;

  std::optional<Index> unit_index(int o) const { return units_.at(static_cast<std::size_t>(o)); }
  const std::map<Tuple, Vec>& table() const { return table_; }
  std::optional<Index> find_label(const std::string& label) const;

 private:
  std::vector<std::string> objects_;
  long long modulus_;
  int k_max_;
  std::vector<BasisInfo> basis_;
  std::vector<std::optional<Index>> units_;
  std::map<Tuple, Vec> table_;
  std::unordered_map<std::string, Index> labels_;
  bool finalized_ = false;
};

struct RelationViolation {
  Tuple inputs;
  Vec residual;
  std::string kind;  ///< "relation", "unit" or "degree"
};

/// Every A-infinity relation of total arity <= arity_bound on every composable
/// basis tuple, plus the strict-unit laws; each nonzero residual is reported.
std::vector<RelationViolation> check_ainf(const AInfOps& ops, int arity_bound);

std::string describe(const AInfOps& ops, const RelationViolation& v);
/// "2*f + -1/3*g" in basis labels; "0" for the zero vector.
std::string render(const AInfOps& ops, const Vec& v);

/// A linear category with zero differential as an A-infinity category.
class LinearAsAInf : public AInfOps {
 public:
  explicit LinearAsAInf(const LinearCategory& c);

  int object_count() const override { return c_.object_count(); }
  std::string object_name(int o) const override { return c_.object_name(o); }
  Index basis_size() const override { return c_.basis_size(); }
  const BasisInfo& basis(Index i) const override { return c_.basis(i); }
  long long grading_modulus() const override { return c_.grading_modulus(); }
  int max_arity() const override { return 2; }
  Vec mu(const Tuple& inputs) const override;
  Vec unit(int o) const override { return c_.unit(o); }

 private:
  const LinearCategory& c_;
};

/// H(hom, mu^1) with echelon representatives and [x_1][x_2] = (-1)^{|x_1|} [mu^2(x_1, x_2)].
struct CohomologyCategory {
  std::unique_ptr<ExplicitLinearCategory> category;
  std::vector<Vec> representatives;  ///< cocycle in the source basis for each class
  /// Class coordinates of a cocycle (throws if not a cocycle).
  std::function<Vec(const Vec&)> classes_of;
};

/// Asserts associativity and unitality of the result unless check_laws is false.
CohomologyCategory cohomology_category(const AInfOps& ops, bool check_laws = true);

/// W_Sigma(n) of the cohomology category, computed on cocycle representatives
/// (products (-1)^{|a|} mu^2(a, b), reduced modulo boundaries). Throws
/// InvariantViolation for a sigma element that is not a cocycle.
GrowthBundle cohomology_word_growth(const AInfOps& ops, const std::vector<Vec>& sigma, int n_max);

/// A unital linear category with one-vector units as a table (k_max = 2).
AInfCategory ainf_from_linear(const LinearCategory& c);

/// mu^1 on hom(src, tgt) as a complex in local coordinates (order of hom_basis).
Complex hom_complex(const AInfOps& ops, int src, int tgt);

}  // namespace algrowth
