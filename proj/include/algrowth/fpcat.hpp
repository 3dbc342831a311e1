#pragma once

// Finitely presented graded linear categories (quivers with relations) and
// the word-growth spaces W_Sigma(n), W_Sigma(n; L).
//
// Composition is diagrammatic throughout: the word a_1 a_2 ... a_l means
// "a_1 then a_2 ...", with a_i in hom(L_{i-1}, L_i).

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algrowth/exactlin.hpp"
#include "algrowth/growth.hpp"
#include "algrowth/span_growth.hpp"

namespace algrowth {

struct GeneratorSpec {
  std::string name;
  std::string src;
  std::string tgt;
  long long degree = 0;
};

struct TermSpec {
  Rational coeff;
  std::vector<std::string> word;  ///< generator names; empty only for identities
  std::optional<std::string> object;  ///< required for identity terms
};

using RelationSpec = std::vector<TermSpec>;

/// Raw presentation as read from a file; validate() checks it.
struct Presentation {
  long long grading_modulus = 0;
  std::vector<std::string> objects;
  std::vector<GeneratorSpec> generators;
  std::vector<RelationSpec> relations;
  bool inhomogeneous = false;  ///< allow relations mixing word lengths
};

/// A linear combination of words sharing one (source, target).
using MorphismExpr = std::vector<TermSpec>;
using SigmaSpec = std::vector<MorphismExpr>;

/// Every violated invariant, each with its location. Empty means valid.
std::vector<std::string> validate(const Presentation& p);

/// Interned composable words. Identities are empty words at an object.
class WordTable {
 public:
  Index intern(int src, const std::vector<int>& letters, int tgt);
  const std::vector<int>& letters(Index id) const { return words_[static_cast<std::size_t>(id)].letters; }
  int source(Index id) const { return words_[static_cast<std::size_t>(id)].src; }
  int target(Index id) const { return words_[static_cast<std::size_t>(id)].tgt; }
  std::size_t length(Index id) const { return letters(id).size(); }
  Index size() const { return static_cast<Index>(words_.size()); }
  std::optional<Index> find(int src, const std::vector<int>& letters) const;

 private:
  struct Entry {
    int src;
    int tgt;
    std::vector<int> letters;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<int, std::vector<int>>& k) const noexcept;
  };
  std::vector<Entry> words_;
  std::unordered_map<std::pair<int, std::vector<int>>, Index, KeyHash> index_;
};

/// A validated presentation with interned words and a lazily extended
/// relation ideal. Not safe for concurrent use (interning mutates state).
class FpCategory {
 public:
  /// Throws ValidationError listing every problem when p is invalid.
  explicit FpCategory(Presentation p);

  const Presentation& presentation() const { return p_; }
  int object_count() const { return static_cast<int>(p_.objects.size()); }
  int object_index(const std::string& name) const;
  int generator_index(const std::string& name) const;
  int gen_source(int g) const { return gen_src_[static_cast<std::size_t>(g)]; }
  int gen_target(int g) const { return gen_tgt_[static_cast<std::size_t>(g)]; }
  bool homogeneous() const { return !p_.inhomogeneous; }

  WordTable& words() { return words_; }
  const WordTable& words() const { return words_; }
  std::string render_word(Index id) const;

  Index word_id(int src, const std::vector<int>& letters);
  Vec multiply(const Vec& a, const Vec& b);

  /// Compiles a morphism expression; throws ValidationError naming `where`.
  BlockVector compile(const MorphismExpr& e, const std::string& where);

  /// Canonical representative modulo the ideal (length-homogeneous mode).
  Vec normal_form(const Vec& v);

  /// All composable words of exactly this length, in deterministic order.
  std::vector<Index> words_of_length(std::size_t length);

  /// Relators as word-id vectors.
  const std::vector<BlockVector>& relators();

  /// Echelon rows spanning I ∩ span(words of length l) (homogeneous mode).
  const EchelonForm<Rational>& ideal_layer(std::size_t l);

 private:
  void extend_ideal(std::size_t l);

  Presentation p_;
  std::map<std::string, int> object_index_;
  std::map<std::string, int> generator_index_;
  std::vector<int> gen_src_, gen_tgt_;
  std::vector<std::vector<int>> gens_from_;  ///< generators by source object
  std::vector<std::vector<int>> gens_to_;    ///< generators by target object
  WordTable words_;
  std::vector<BlockVector> relators_;
  bool relators_built_ = false;
  std::vector<EchelonForm<Rational>> layers_;  ///< layers_[l] = I_l
  EchelonForm<Rational> ideal_;                 ///< union of computed layers
  std::size_t ideal_length_ = 0;
  std::map<std::size_t, std::vector<Index>> words_by_length_;
};

struct IdealTruncation {
  std::map<std::pair<int, int>, std::vector<Vec>> blocks;  ///< reduced echelon rows per (src, tgt)
  bool exact = true;
  int n = 0;
  int slack = 0;
  Index dim() const;
  /// Number of basis rows whose leading word has the given length.
  Index dim_at_length(const WordTable& words, std::size_t length) const;
};

/// Homogeneous relations: exactly I ∩ P_{<=n}. Otherwise the span of p*r*q
/// with every term of length <= n + slack, cut down to length <= n, and
/// flagged inexact.
IdealTruncation ideal_basis_up_to(FpCategory& cat, int n, int slack = 2);

struct GrowthOptions {
  int slack = 2;  ///< only used with inhomogeneous relations
};

GrowthTable word_growth(FpCategory& cat, const SigmaSpec& sigma, int n_max, const GrowthOptions& opts = {});
GrowthTable word_growth_at_object(FpCategory& cat, const SigmaSpec& sigma, const std::string& object, int n_max,
                                  const GrowthOptions& opts = {});

/// Both the whole-category table and one table per object, from one pass.
struct GrowthBundle {
  GrowthTable total;
  std::vector<GrowthTable> at_object;
};
GrowthBundle word_growth_all(FpCategory& cat, const SigmaSpec& sigma, int n_max, const GrowthOptions& opts = {});

/// Full subpresentation on the given objects. Throws InvariantViolation when
/// a path of generators leaves the kept objects and returns, since then the
/// restriction is not a full subcategory.
Presentation restrict_objects(const Presentation& p, const std::vector<std::string>& keep);

/// Decomposition bound d_n <= prod_i (d_n(L_i) + 1)^m * |Sigma|^(m-1), checked
/// exactly for n = 1..n_max with Sigma augmented by every identity.
struct CategoryToObjectCheck {
  GrowthBundle growth;
  std::size_t sigma_size = 0;
  int objects = 0;
  std::vector<bool> holds;  ///< per n
  bool pass = true;
};
CategoryToObjectCheck check_category_to_object(FpCategory& cat, const SigmaSpec& sigma, int n_max);

}  // namespace algrowth
