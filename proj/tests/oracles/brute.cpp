#include "brute.hpp"

#include "algrowth/random.hpp"

namespace oracle {

int dense_rank(Dense m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(m[rank], m[p]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

Dense to_dense(const algrowth::Matrix& m) {
  Dense d(static_cast<std::size_t>(m.rows()), std::vector<Rational>(static_cast<std::size_t>(m.cols())));
  for (const auto& [r, c, v] : m.entries()) d[r][c] = v;
  return d;
}

algrowth::Matrix random_matrix(std::uint64_t seed, int rows, int cols, int fill) {
  algrowth::Rng rng(seed);
  std::vector<algrowth::Matrix::Triplet> t;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (rng.uniform(0, 99) < fill) t.emplace_back(r, c, Rational(rng.uniform(-3, 3), rng.uniform(1, 2)));
  return algrowth::Matrix::from_triplets(rows, cols, t);
}

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace oracle
