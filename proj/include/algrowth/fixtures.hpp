#pragma once

// Seeded instance generators shared by the tests, the acceptance suite and
// the verify command. Every instance is a function of its seed alone.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algrowth/ainf.hpp"
#include "algrowth/filt.hpp"
#include "algrowth/lincat.hpp"
#include "algrowth/random.hpp"
#include "algrowth/twisted.hpp"

namespace algrowth {

struct FilteredFixture {
  std::shared_ptr<AInfCategory> category;
  FiltrationAssignment filtration;
  std::string description;
};

struct DgFixtureOptions {
  int min_objects = 2;
  int max_objects = 3;
  int max_dim = 2;  ///< dimension of each underlying complex
};

/// End-of-complexes dg category: objects are small graded complexes V_o
/// with a level on each basis vector and a level-non-increasing matching
/// differential; hom(V_a, V_b) has the elementary matrices, with the identity
/// replacing the first diagonal one. Levels are l(q) - l(p) + |c_a - c_b|.
FilteredFixture random_dg_fixture(std::uint64_t seed, const DgFixtureOptions& options = {});

/// Directed version of the above (hom(a, b) = 0 for a > b, End(a) = k) with
/// the structure transported along a gauge functor F^1 = id, F^2 = phi, so
/// that mu^3 and higher are generally nonzero.
FilteredFixture random_gauge_fixture(std::uint64_t seed, int objects = 3);

/// Free algebra on `generators` letters modulo words longer than max_length,
/// zero differential, levels = word length.
FilteredFixture free_algebra_fixture(int generators, int max_length);

struct TwistedOptions {
  int max_summands = 3;
  int attempts = 20;
};

/// Admissible twisted complex: delta entries of level <= threshold, chosen in
/// order of increasing distance so that the Maurer-Cartan equation holds.
std::optional<TwistedComplex> random_twisted_complex(const AInfOps& c, const FiltrationAssignment& f,
                                                     const Rational& threshold, Rng& rng,
                                                     const TwistedOptions& options = {});

/// Pool of twisted complexes of the given size, named T0, T1, ...
std::vector<TwistedComplex> random_pool(const AInfOps& c, const FiltrationAssignment& f, const Rational& threshold,
                                        std::size_t size, Rng& rng, const TwistedOptions& options = {});

struct RetractInstance {
  std::shared_ptr<MatrixCategory> category;
  std::vector<Vec> sigma;
  std::map<int, RetractData> retracts;
};

/// Objects K (dim a) and L = K + K' (dim a + b); sigma in End(K) random; the
/// retract is the inclusion/projection pair twisted by a random invertible
/// block change of basis.
RetractInstance random_retract_instance(std::uint64_t seed);

}  // namespace algrowth
