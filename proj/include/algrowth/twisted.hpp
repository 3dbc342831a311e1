#pragma once

// Shifted objects and one-sided twisted complexes over a finite A-infinity
// category, with the operations of Tw obtained by inserting differentials.
//
// In the shifted category, hom(S^s X, S^t Y) = hom(X, Y) with degree raised
// by t - s, and mu(x_1, ..., x_k) picks up (-1)^s where S^s X is the source of
// x_1. The unit of S^s X is (-1)^s e_X. Differentials have shifted degree 1,
// so inserting them adds no further signs.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "algrowth/ainf.hpp"

namespace algrowth {

struct ShiftedObject {
  int object = 0;
  long long shift = 0;
};

struct TwistedComplex {
  std::string name;
  std::vector<ShiftedObject> summands;
  /// delta[{a, b}] in hom(X_a, X_b) of the base category, a < b.
  std::map<std::pair<int, int>, Vec> delta;
};

struct TwValidation {
  bool ok = true;
  std::string message;
  int alpha = -1, beta = -1;  ///< summands of the first nonzero residual
  Vec residual;
};

/// Shape, shifts, degrees, strict upper triangularity and the Maurer-Cartan
/// equation sum_k mu^k(delta, ..., delta) = 0.
TwValidation validate_twisted_complex(const AInfOps& c, const TwistedComplex& t);

/// Tw over a finite pool of validated complexes, as an A-infinity category.
/// The basis of hom(P, Q) is (i, j, b) with b a base basis vector of
/// hom(X^P_i, X^Q_j), of degree |b| + s^Q_j - s^P_i.
class TwCategory : public AInfOps {
 public:
  struct Coord {
    int p = 0, q = 0, i = 0, j = 0;
    Index b = 0;
  };

  /// Throws ValidationError when a complex in the pool is invalid.
  TwCategory(const AInfOps& base, std::vector<TwistedComplex> pool);

  int object_count() const override { return static_cast<int>(pool_.size()); }
  std::string object_name(int o) const override { return pool_.at(static_cast<std::size_t>(o)).name; }
  Index basis_size() const override { return static_cast<Index>(basis_.size()); }
  const BasisInfo& basis(Index i) const override { return basis_.at(static_cast<std::size_t>(i)); }
  long long grading_modulus() const override { return base_.grading_modulus(); }
  int max_arity() const override { return base_.max_arity(); }
  Vec mu(const Tuple& inputs) const override;
  Vec unit(int o) const override;

  const AInfOps& base() const { return base_; }
  const TwistedComplex& complex(int p) const { return pool_.at(static_cast<std::size_t>(p)); }
  const Coord& coord(Index i) const { return coords_.at(static_cast<std::size_t>(i)); }
  std::optional<Index> index_of(int p, int q, int i, int j, Index b) const;
  /// A base morphism X^P_i -> X^Q_j placed in block (i, j) of hom(P, Q).
  Vec embed(int p, int q, int i, int j, const Vec& base_vector) const;

 private:
  const AInfOps& base_;
  std::vector<TwistedComplex> pool_;
  std::vector<BasisInfo> basis_;
  std::vector<Coord> coords_;
  std::map<std::tuple<int, int, int, int, Index>, Index> index_;
};

struct TwHomComplex {
  Complex complex;
  std::vector<TwCategory::Coord> coords;  ///< per local basis vector
};

/// hom_Tw(p, q) with mu^1_Tw; throws VerificationFailure if it does not square to zero.
TwHomComplex tw_hom_complex(const AInfOps& c, const TwistedComplex& p, const TwistedComplex& q);

/// mu_Tw on vectors along a chain of pool objects; non-composable inputs are an error.
Vec tw_mu(const TwCategory& tw, const std::vector<Vec>& inputs);

/// S^0 K -> S^1 K with differential e_K.
TwistedComplex cone_of_identity(const AInfOps& c, int object);

/// The one-summand complex (K, 0, delta = 0).
TwistedComplex embedded_object(const AInfOps& c, int object);

}  // namespace algrowth
