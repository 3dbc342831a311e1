#pragma once

// Filtered A-infinity categories in adapted-basis form: every basis vector
// carries one exact level and hom(K, L)_a is the span of those with level <= a.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algrowth/ainf.hpp"
#include "algrowth/growth.hpp"
#include "algrowth/twisted.hpp"

namespace algrowth {

struct FiltrationAssignment {
  std::vector<Rational> levels;  ///< per basis vector

  /// Largest level among the components of a nonzero vector.
  Rational level(const Vec& v) const;
};

FiltrationAssignment zero_filtration(const AInfOps& ops);
/// Throws DimensionMismatch when the level count differs from the basis size.
void require_fits(const AInfOps& ops, const FiltrationAssignment& f);

struct FiltrationViolation {
  Tuple inputs;
  Index component = 0;
  Rational excess;  ///< component level minus the sum of input levels
};

/// level(mu^k(x_1..x_k) components) <= sum level(x_i) on every composable
/// basis tuple with k <= arity_bound.
std::vector<FiltrationViolation> check_filtration_axiom(const AInfOps& ops, const FiltrationAssignment& f,
                                                        int arity_bound);

/// Asserts that every level-<=-x span of hom(K, L) is closed under mu^1, for
/// every level x that occurs. Returns the failing (K, L, x) triples.
std::vector<std::string> check_subcomplex_closure(const AInfOps& ops, const FiltrationAssignment& f);

/// Every delta entry has level <= c. Returns the offending entry, if any.
std::optional<std::pair<int, int>> inadmissible_entry(const AInfOps& c, const FiltrationAssignment& f,
                                                      const TwistedComplex& t, const Rational& threshold);

/// Levels on a Tw category: block (i, j) of hom(P, Q) gets base level - (j - i) c.
/// Throws ValidationError naming the first inadmissible entry.
FiltrationAssignment tw_filtration(const TwCategory& tw, const FiltrationAssignment& base, const Rational& threshold);

/// dim of the image of H(level <= x) in H, for a complex with per-vector levels.
Count persistence_dim(const Complex& complex, const std::vector<Rational>& levels, const Rational& x);
/// i_{K,L}(x) on hom(K, L).
Count persistence_dim(const AInfOps& ops, const FiltrationAssignment& f, int k, int l, const Rational& x);

struct FilteredGrowthProfile {
  std::string pair;  ///< "K->L"
  std::vector<Rational> grid;
  std::vector<Count> values;
  /// Least-squares slope of log i(x) against x over the upper half of the
  /// grid, zeros skipped; absent when fewer than two nonzero points remain.
  std::optional<double> rate;
};

FilteredGrowthProfile make_profile(std::string pair, std::vector<Rational> grid, std::vector<Count> values);
FilteredGrowthProfile filtered_growth_profile(const AInfOps& ops, const FiltrationAssignment& f, int k, int l,
                                              const std::vector<Rational>& grid);

struct VerificationReport {
  std::string lemma;
  std::string instance;
  std::vector<std::pair<std::string, std::string>> constants;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool pass = true;

  std::string to_text() const;
};

/// Growth to filtration: with B the largest level among the cocycles sigma in hom(L, L),
/// checks i_{L,L}(nB) >= dim W_Sigma(n; L) for n = 1..n_max, the right side
/// computed in the cohomology category.
VerificationReport verify_growth_to_filtration(const AInfOps& ops, const FiltrationAssignment& f,
                                               const std::vector<Vec>& sigma, int l, int n_max);

/// Generator bound on q (object `q` of tw, m summands K_1..K_m, threshold c): at
/// every grid point some pair (j, k) has
/// 2^{m+1} i_{K_j,K_k}(x + (m-1)c) >= i_{Q,Q,Phi_c}(x). Also records the
/// tightest constant i_Q / max_{j,k} i_{K_j,K_k} seen.
VerificationReport verify_tw_generator_bound(const TwCategory& tw, const FiltrationAssignment& base, int q,
                                             const Rational& threshold, const std::vector<Rational>& grid);

/// The growth-to-filtration check on Tw with Phi_c for sigma in hom(Q, Q),
/// then the generator bound at x = nB, giving a base pair (K_j, K_k) with
/// 2^{m+1} i_{K_j,K_k}(nB + (m-1)c) >= dim W_Sigma(n; Q).
VerificationReport verify_tw_action_object(const TwCategory& tw, const FiltrationAssignment& base, int q,
                                           const Rational& threshold, const std::vector<Vec>& sigma, int n_max);

}  // namespace algrowth
