#pragma once

// Independent dense reference computations used as test oracles.

#include <cstdint>
#include <vector>

#include "algrowth/exactlin.hpp"

namespace oracle {

using algrowth::Rational;
using Dense = std::vector<std::vector<Rational>>;

/// Rank by textbook Gaussian elimination on a dense copy.
int dense_rank(Dense m);

Dense to_dense(const algrowth::Matrix& m);

/// Random sparse matrix with roughly `fill` percent nonzero small entries.
algrowth::Matrix random_matrix(std::uint64_t seed, int rows, int cols, int fill);

/// Binomial coefficient as a 64-bit integer.
std::uint64_t choose(int n, int k);

}  // namespace oracle
