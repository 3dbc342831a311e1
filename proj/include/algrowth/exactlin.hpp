#pragma once

// Exact sparse linear algebra over a field.
//
// Everything here is templated on the scalar type; the rest of the library
// instantiates it with Rational (GMP-backed mpq). Vectors are sparse row
// vectors with strictly increasing indices and no stored zeros. Matrices act
// on row vectors from the right, so the rows of a matrix span its image.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "algrowth/errors.hpp"

namespace algrowth {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using Index = std::ptrdiff_t;

/// "p/q" or "p"; throws ParseError on anything else.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& value);
/// The exact dyadic rational equal to a finite double.
Rational exact_from_double(double value);
double to_double(const Rational& value);

template <class Scalar>
class SparseVector {
 public:
  using Entry = std::pair<Index, Scalar>;

  SparseVector() = default;

  static SparseVector unit(Index index, Scalar value = Scalar(1)) {
    SparseVector v;
    if (value != 0) v.entries_.emplace_back(index, std::move(value));
    return v;
  }

  /// Sorts by index, sums duplicates and drops zeros.
  static SparseVector from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    for (auto& e : entries) {
      if (!v.entries_.empty() && v.entries_.back().first == e.first) {
        v.entries_.back().second += e.second;
        if (v.entries_.back().second == 0) v.entries_.pop_back();
      } else if (e.second != 0) {
        v.entries_.push_back(std::move(e));
      }
    }
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Index leading() const { return entries_.empty() ? -1 : entries_.front().first; }
  Index trailing() const { return entries_.empty() ? -1 : entries_.back().first; }

  Scalar coeff(Index index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, Index i) { return e.first < i; });
    if (it == entries_.end() || it->first != index) return Scalar(0);
    return it->second;
  }

  /// this += factor * other
  void add_scaled(const SparseVector& other, const Scalar& factor) {
    if (factor == 0 || other.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        merged.push_back(std::move(*a));
        ++a;
      } else if (a == entries_.end() || b->first < a->first) {
        merged.emplace_back(b->first, b->second * factor);
        ++b;
      } else {
        Scalar s = a->second + b->second * factor;
        if (s != 0) merged.emplace_back(a->first, std::move(s));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(merged);
  }

  SparseVector& operator*=(const Scalar& factor) {
    if (factor == 0) {
      entries_.clear();
    } else {
      for (auto& e : entries_) e.second *= factor;
    }
    return *this;
  }

  SparseVector& operator+=(const SparseVector& other) {
    add_scaled(other, Scalar(1));
    return *this;
  }
  SparseVector& operator-=(const SparseVector& other) {
    add_scaled(other, Scalar(-1));
    return *this;
  }

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Scalar& s, SparseVector v) { return v *= s; }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

  /// Re-index every entry through map (which must be injective on the support).
  template <class F>
  SparseVector reindexed(F&& map) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.emplace_back(map(e.first), e.second);
    return from_entries(std::move(out));
  }

 private:
  std::vector<Entry> entries_;
};

using Vec = SparseVector<Rational>;

/// Accumulates scaled contributions in arbitrary order.
template <class Scalar>
class SparseAccumulator {
 public:
  void add(Index index, const Scalar& value) {
    if (value == 0) return;
    auto [it, inserted] = terms_.try_emplace(index, value);
    if (!inserted) it->second += value;
  }
  void add(const SparseVector<Scalar>& v, const Scalar& factor) {
    for (const auto& [i, x] : v.entries()) add(i, x * factor);
  }
  SparseVector<Scalar> finish() {
    std::vector<typename SparseVector<Scalar>::Entry> entries;
    entries.reserve(terms_.size());
    for (auto& [i, x] : terms_) entries.emplace_back(i, std::move(x));
    terms_.clear();
    return SparseVector<Scalar>::from_entries(std::move(entries));
  }

 private:
  std::unordered_map<Index, Scalar> terms_;
};

template <class Scalar>
class SparseMatrix {
 public:
  using Vector = SparseVector<Scalar>;
  using Triplet = std::tuple<Index, Index, Scalar>;

  SparseMatrix() = default;
  SparseMatrix(Index rows, Index cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

  /// Builds from (row, col, value) entries. Rejects out-of-range indices and
  /// duplicate positions; zero values are dropped.
  static SparseMatrix from_triplets(Index rows, Index cols, const std::vector<Triplet>& triplets) {
    SparseMatrix m(rows, cols);
    std::vector<std::vector<typename Vector::Entry>> buckets(static_cast<std::size_t>(rows));
    for (const auto& [r, c, v] : triplets) {
      if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw DimensionMismatch("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                                ") out of range");
      buckets[static_cast<std::size_t>(r)].emplace_back(c, v);
    }
    for (std::size_t r = 0; r < buckets.size(); ++r) {
      auto& b = buckets[r];
      std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t i = 1; i < b.size(); ++i)
        if (b[i].first == b[i - 1].first)
          throw InvariantViolation("duplicate matrix entry at (" + std::to_string(r) + "," +
                                   std::to_string(b[i].first) + ")");
      m.rows_[r] = Vector::from_entries(std::move(b));
    }
    return m;
  }

  static SparseMatrix from_rows(Index cols, std::vector<Vector> rows) {
    SparseMatrix m;
    m.cols_ = cols;
    for (const auto& r : rows)
      if (!r.empty() && (r.leading() < 0 || r.trailing() >= cols))
        throw DimensionMismatch("row entry out of column range");
    m.rows_ = std::move(rows);
    return m;
  }

  static SparseMatrix identity(Index n) {
    SparseMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m.rows_[static_cast<std::size_t>(i)] = Vector::unit(i);
    return m;
  }

  Index rows() const { return static_cast<Index>(rows_.size()); }
  Index cols() const { return cols_; }
  const Vector& row(Index i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<Vector>& row_vectors() const { return rows_; }
  void append_row(Vector v) { rows_.push_back(std::move(v)); }

  /// Canonical row-major entry list.
  std::vector<Triplet> entries() const {
    std::vector<Triplet> out;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r].entries()) out.emplace_back(static_cast<Index>(r), c, v);
    return out;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  Index cols_ = 0;
  std::vector<Vector> rows_;
};

using Matrix = SparseMatrix<Rational>;

/// v * M for a row vector v.
template <class Scalar>
SparseVector<Scalar> times(const SparseVector<Scalar>& v, const SparseMatrix<Scalar>& m) {
  SparseVector<Scalar> out;
  for (const auto& [i, x] : v.entries()) out.add_scaled(m.row(i), x);
  return out;
}

template <class Scalar>
SparseMatrix<Scalar> multiply(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
  std::vector<SparseVector<Scalar>> rows;
  rows.reserve(static_cast<std::size_t>(a.rows()));
  for (const auto& r : a.row_vectors()) rows.push_back(times(r, b));
  return SparseMatrix<Scalar>::from_rows(b.cols(), std::move(rows));
}

template <class Scalar>
SparseMatrix<Scalar> stack(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("stack: column counts differ");
  auto rows = a.row_vectors();
  rows.insert(rows.end(), b.row_vectors().begin(), b.row_vectors().end());
  return SparseMatrix<Scalar>::from_rows(a.cols(), std::move(rows));
}

/// Incremental row echelon form. Rows are kept with leading coefficient 1 and
/// distinct pivots; the pivot of a row is its first nonzero entry. Reduction
/// leaves a remainder with zeros in every pivot column, which is a canonical
/// representative of the coset v + span(rows).
template <class Scalar>
class EchelonForm {
 public:
  using Vector = SparseVector<Scalar>;

  /// Remainder of v modulo the current row space.
  Vector reduce(Vector v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
      const Index col = v.entries()[pos].first;
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      const Scalar factor = -v.entries()[pos].second;
      v.add_scaled(rows_[it->second], factor);
      // Entries before pos are untouched: the subtracted row starts at col.
    }
    return v;
  }

  bool contains(const Vector& v) const { return reduce(v).empty(); }

  /// Adds v to the row space. Returns true when v was independent.
  bool insert(Vector v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const Scalar lead = v.entries().front().second;
    if (lead != 1) v *= Scalar(1) / lead;
    pivots_.emplace(v.leading(), rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  Index rank() const { return static_cast<Index>(rows_.size()); }
  const std::vector<Vector>& rows() const { return rows_; }
  bool is_pivot(Index col) const { return pivots_.count(col) != 0; }

  /// Fully reduced basis sorted by pivot column.
  std::vector<Vector> reduced_rows() const {
    std::vector<Vector> out = rows_;
    std::sort(out.begin(), out.end(), [](const Vector& a, const Vector& b) { return a.leading() < b.leading(); });
    for (std::size_t i = out.size(); i-- > 0;) {
      const Index p = out[i].leading();
      for (std::size_t j = 0; j < i; ++j) {
        const Scalar c = out[j].coeff(p);
        if (c != 0) out[j].add_scaled(out[i], -c);
      }
    }
    return out;
  }

 private:
  std::vector<Vector> rows_;
  std::unordered_map<Index, std::size_t> pivots_;
};

enum class EchelonPath { Automatic, Sparse, Dense };

template <class Scalar>
struct EchelonResult {
  Index rank = 0;
  SparseMatrix<Scalar> basis;  ///< reduced row echelon form, pivots strictly increasing
};

/// Matrices smaller than this in both dimensions may be eliminated densely.
inline constexpr Index kDenseThreshold = 64;

namespace detail {

template <class Scalar>
EchelonResult<Scalar> dense_echelonize(const SparseMatrix<Scalar>& m) {
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Dense a = Dense::Zero(m.rows(), m.cols());
  for (const auto& [r, c, v] : m.entries()) a(r, c) = v;

  Index rank = 0;
  std::vector<Index> pivot_cols;
  for (Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    // Pivot on the first row (in order) with a nonzero entry in this column.
    Index pivot_row = -1;
    for (Index r = rank; r < a.rows(); ++r)
      if (a(r, col) != 0) {
        pivot_row = r;
        break;
      }
    if (pivot_row < 0) continue;
    a.row(rank).swap(a.row(pivot_row));
    const Scalar inv = Scalar(1) / a(rank, col);
    for (Index c = col; c < a.cols(); ++c) a(rank, c) *= inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == rank || a(r, col) == 0) continue;
      const Scalar f = a(r, col);
      for (Index c = col; c < a.cols(); ++c) a(r, c) -= f * a(rank, c);
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<SparseVector<Scalar>> rows;
  for (Index r = 0; r < rank; ++r) {
    std::vector<typename SparseVector<Scalar>::Entry> e;
    for (Index c = pivot_cols[static_cast<std::size_t>(r)]; c < a.cols(); ++c)
      if (a(r, c) != 0) e.emplace_back(c, a(r, c));
    rows.push_back(SparseVector<Scalar>::from_entries(std::move(e)));
  }
  return {rank, SparseMatrix<Scalar>::from_rows(m.cols(), std::move(rows))};
}

template <class Scalar>
EchelonResult<Scalar> sparse_echelonize(const SparseMatrix<Scalar>& m) {
  EchelonForm<Scalar> form;
  for (const auto& r : m.row_vectors()) form.insert(r);
  return {form.rank(), SparseMatrix<Scalar>::from_rows(m.cols(), form.reduced_rows())};
}

}  // namespace detail

/// Rank and reduced row echelon basis of the row space. Both elimination
/// paths produce the same canonical output.
template <class Scalar>
EchelonResult<Scalar> echelonize(const SparseMatrix<Scalar>& m, EchelonPath path = EchelonPath::Automatic) {
  const bool dense = path == EchelonPath::Dense ||
                     (path == EchelonPath::Automatic && m.rows() < kDenseThreshold && m.cols() < kDenseThreshold);
  return dense ? detail::dense_echelonize(m) : detail::sparse_echelonize(m);
}

template <class Scalar>
Index rank(const SparseMatrix<Scalar>& m) {
  EchelonForm<Scalar> form;
  for (const auto& r : m.row_vectors()) form.insert(r);
  return form.rank();
}

/// Basis of { c : c * m = 0 }, as row vectors indexed by the rows of m.
template <class Scalar>
std::vector<SparseVector<Scalar>> left_kernel(const SparseMatrix<Scalar>& m) {
  const Index offset = m.cols();
  EchelonForm<Scalar> form;
  for (Index i = 0; i < m.rows(); ++i) {
    auto aug = m.row(i);
    aug.add_scaled(SparseVector<Scalar>::unit(offset + i), Scalar(1));
    form.insert(std::move(aug));
  }
  std::vector<SparseVector<Scalar>> kernel;
  for (const auto& r : form.rows()) {
    if (r.leading() < offset) continue;
    kernel.push_back(r.reindexed([offset](Index i) { return i - offset; }));
  }
  return kernel;
}

/// Coefficients c with sum_i c_i * rows[i] == target, if any exist.
template <class Scalar>
std::optional<SparseVector<Scalar>> solve_combination(const std::vector<SparseVector<Scalar>>& rows,
                                                      const SparseVector<Scalar>& target, Index cols) {
  EchelonForm<Scalar> form;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto aug = rows[i];
    aug.add_scaled(SparseVector<Scalar>::unit(cols + static_cast<Index>(i)), Scalar(1));
    form.insert(std::move(aug));
  }
  auto rem = form.reduce(target);
  if (!rem.empty() && rem.leading() < cols) return std::nullopt;
  rem *= Scalar(-1);
  return rem.reindexed([cols](Index i) { return i - cols; });
}

/// Basis of rowspace(a) ∩ rowspace(b) by the Zassenhaus construction.
template <class Scalar>
SparseMatrix<Scalar> subspace_intersection(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  if (a.cols() != b.cols())
    throw DimensionMismatch("subspace_intersection: ambient dimensions " + std::to_string(a.cols()) + " and " +
                            std::to_string(b.cols()) + " differ");
  const Index n = a.cols();
  EchelonForm<Scalar> form;
  for (const auto& r : a.row_vectors()) {
    auto doubled = r;
    doubled.add_scaled(r.reindexed([n](Index i) { return i + n; }), Scalar(1));
    form.insert(std::move(doubled));
  }
  for (const auto& r : b.row_vectors()) form.insert(r);
  std::vector<SparseVector<Scalar>> rows;
  for (const auto& r : form.rows())
    if (r.leading() >= n) rows.push_back(r.reindexed([n](Index i) { return i - n; }));
  return echelonize(SparseMatrix<Scalar>::from_rows(n, std::move(rows)), EchelonPath::Sparse).basis;
}

template <class Scalar>
Index subspace_intersection_dim(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  return subspace_intersection(a, b).rows();
}

/// A finite-dimensional complex: basis vectors 0..dim-1 (optionally graded)
/// and a differential whose row i is d(e_i).
template <class Scalar>
struct ChainComplex {
  SparseMatrix<Scalar> differential;
  std::vector<int> degrees;  ///< empty when ungraded

  Index dim() const { return differential.rows(); }
};

using Complex = ChainComplex<Rational>;

template <class Scalar>
bool squares_to_zero(const ChainComplex<Scalar>& c) {
  for (const auto& r : c.differential.row_vectors())
    if (!times(r, c.differential).empty()) return false;
  return true;
}

template <class Scalar>
Index cohomology_dim(const ChainComplex<Scalar>& c) {
  const Index r = rank(c.differential);
  return c.dim() - 2 * r;
}

/// dim im(H(sub) -> H(complex)) = dim Z(sub) - dim(Z(sub) ∩ B(complex)).
/// sub is given by spanning rows and must be closed under the differential.
template <class Scalar>
Index image_in_cohomology_dim(const SparseMatrix<Scalar>& sub, const ChainComplex<Scalar>& complex) {
  const auto& d = complex.differential;
  if (d.rows() != d.cols()) throw DimensionMismatch("differential must be square");
  if (sub.cols() != complex.dim()) throw DimensionMismatch("subspace ambient dimension differs from complex");
  if (!squares_to_zero(complex)) throw InvariantViolation("differential does not square to zero");

  EchelonForm<Scalar> sub_form;
  for (const auto& r : sub.row_vectors()) sub_form.insert(r);
  const auto& basis = sub_form.rows();

  std::vector<SparseVector<Scalar>> images;
  images.reserve(basis.size());
  for (const auto& s : basis) {
    auto ds = times(s, d);
    if (!sub_form.contains(ds)) throw InvariantViolation("subspace is not closed under the differential");
    images.push_back(std::move(ds));
  }

  const auto kernel = left_kernel(SparseMatrix<Scalar>::from_rows(complex.dim(), images));
  std::vector<SparseVector<Scalar>> cycles;
  cycles.reserve(kernel.size());
  for (const auto& k : kernel) {
    SparseVector<Scalar> z;
    for (const auto& [i, c] : k.entries()) z.add_scaled(basis[static_cast<std::size_t>(i)], c);
    cycles.push_back(std::move(z));
  }
  const auto zs = SparseMatrix<Scalar>::from_rows(complex.dim(), std::move(cycles));
  return zs.rows() - subspace_intersection_dim(zs, d);
}

}  // namespace algrowth
