#pragma once

#include <functional>
#include <vector>

#include "algrowth/exactlin.hpp"
#include "algrowth/growth.hpp"

namespace algrowth {

/// A vector that lives in a single hom space hom(src, tgt).
struct BlockVector {
  int src = 0;
  int tgt = 0;
  Vec v;
};

struct SpanGrowth {
  std::vector<Count> total;                   ///< total[n-1] = dim W(n)
  std::vector<std::vector<Count>> at_object;  ///< at_object[L][n-1] = dim W(n; L)
  std::vector<bool> zero_generators;          ///< sigma entries that normalize to zero
};

using BlockProduct = std::function<Vec(const BlockVector&, const BlockVector&)>;
using Normalizer = std::function<Vec(Vec)>;

/// Dimensions of W(n) = span of composable products of at most n elements of
/// sigma, for n = 1..n_max. Products are formed by `multiply` (diagrammatic:
/// first argument first) and brought to normal form by `normalize`, which
/// must be linear with kernel equal to the relations being quotiented out.
SpanGrowth product_span_growth(const std::vector<BlockVector>& sigma, int n_max, int objects,
                               const BlockProduct& multiply, const Normalizer& normalize);

}  // namespace algrowth
