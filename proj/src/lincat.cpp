#include "algrowth/lincat.hpp"

#include <numeric>

#include "algrowth/span_growth.hpp"

namespace algrowth {

Vec LinearCategory::compose(const Vec& a, const Vec& b) const {
  SparseAccumulator<Rational> acc;
  for (const auto& [i, x] : a.entries())
    for (const auto& [j, y] : b.entries())
      if (basis(i).tgt == basis(j).src) acc.add(compose_basis(i, j), x * y);
  return acc.finish();
}

std::vector<Index> LinearCategory::hom_basis(int src, int tgt) const {
  std::vector<Index> out;
  for (Index i = 0; i < basis_size(); ++i)
    if (basis(i).src == src && basis(i).tgt == tgt) out.push_back(i);
  return out;
}

ExplicitLinearCategory::ExplicitLinearCategory(std::vector<std::string> objects, std::vector<BasisInfo> basis,
                                               long long modulus)
    : objects_(std::move(objects)), basis_(std::move(basis)), units_(objects_.size()), modulus_(modulus) {
  for (const auto& b : basis_)
    if (b.src < 0 || b.tgt < 0 || b.src >= object_count() || b.tgt >= object_count())
      throw ValidationError("basis vector '" + b.label + "' refers to an unknown object");
}

void ExplicitLinearCategory::set_product(Index a, Index b, Vec value) {
  if (basis(a).tgt != basis(b).src) throw ValidationError("set_product: basis vectors are not composable");
  if (value.empty()) {
    table_.erase({a, b});
  } else {
    table_[{a, b}] = std::move(value);
  }
}

void ExplicitLinearCategory::set_unit(int o, Vec value) { units_.at(static_cast<std::size_t>(o)) = std::move(value); }

Vec ExplicitLinearCategory::compose_basis(Index a, Index b) const {
  auto it = table_.find({a, b});
  return it == table_.end() ? Vec{} : it->second;
}

ExplicitLinearCategory materialize(const LinearCategory& c) {
  std::vector<std::string> objects;
  for (int o = 0; o < c.object_count(); ++o) objects.push_back(c.object_name(o));
  std::vector<BasisInfo> basis;
  for (Index i = 0; i < c.basis_size(); ++i) basis.push_back(c.basis(i));
  ExplicitLinearCategory out(objects, basis, c.grading_modulus());
  for (Index a = 0; a < c.basis_size(); ++a)
    for (Index b = 0; b < c.basis_size(); ++b)
      if (c.basis(a).tgt == c.basis(b).src) out.set_product(a, b, c.compose_basis(a, b));
  for (int o = 0; o < c.object_count(); ++o) out.set_unit(o, c.unit(o));
  return out;
}

ExplicitLinearCategory unit_category() {
  ExplicitLinearCategory k({"pt"}, {BasisInfo{0, 0, 0, "e"}});
  k.set_product(0, 0, Vec::unit(0));
  k.set_unit(0, Vec::unit(0));
  return k;
}

TruncatedPathCategory::TruncatedPathCategory(FpCategory& fp, int max_length) : fp_(fp), max_length_(max_length) {
  if (!fp.homogeneous()) throw UnsupportedInput("truncated path categories need length-homogeneous relations");
  if (max_length < 0) throw ValidationError("max_length must be >= 0");
  const long long modulus = fp.presentation().grading_modulus;
  for (int l = 0; l <= max_length; ++l) {
    const auto& layer = fp.ideal_layer(static_cast<std::size_t>(l));
    for (Index w : fp.words_of_length(static_cast<std::size_t>(l))) {
      if (layer.is_pivot(w)) continue;
      long long degree = 0;
      for (int g : fp.words().letters(w)) degree += fp.presentation().generators[static_cast<std::size_t>(g)].degree;
      if (modulus > 0) degree = ((degree % modulus) + modulus) % modulus;
      index_of_word_[w] = static_cast<Index>(basis_.size());
      word_of_.push_back(w);
      basis_.push_back({fp.words().source(w), fp.words().target(w), degree, fp.render_word(w)});
    }
  }
}

Vec TruncatedPathCategory::from_words(const Vec& words) const {
  Vec nf = fp_.normal_form(words);
  std::vector<Vec::Entry> out;
  for (const auto& [w, c] : nf.entries()) {
    if (fp_.words().length(w) > static_cast<std::size_t>(max_length_)) continue;
    out.emplace_back(index_of_word_.at(w), c);
  }
  return Vec::from_entries(std::move(out));
}

Vec TruncatedPathCategory::compose_basis(Index a, Index b) const {
  const Index wa = word_of_[static_cast<std::size_t>(a)], wb = word_of_[static_cast<std::size_t>(b)];
  if (fp_.words().length(wa) + fp_.words().length(wb) > static_cast<std::size_t>(max_length_)) return {};
  return from_words(fp_.multiply(Vec::unit(wa), Vec::unit(wb)));
}

Vec TruncatedPathCategory::unit(int o) const { return from_words(Vec::unit(fp_.word_id(o, {}))); }

MatrixCategory::MatrixCategory(std::vector<std::string> names, std::vector<int> dims)
    : names_(std::move(names)), dims_(std::move(dims)) {
  if (names_.size() != dims_.size()) throw DimensionMismatch("one dimension per object");
  for (int s = 0; s < object_count(); ++s)
    for (int t = 0; t < object_count(); ++t) {
      offset_[{s, t}] = static_cast<Index>(basis_.size());
      for (int i = 0; i < dim(s); ++i)
        for (int j = 0; j < dim(t); ++j)
          basis_.push_back({s, t, 0, "E" + std::to_string(i) + std::to_string(j) + "(" + names_[static_cast<std::size_t>(s)] +
                                         "," + names_[static_cast<std::size_t>(t)] + ")"});
    }
}

Index MatrixCategory::entry(int src, int tgt, int row, int col) const {
  return offset_.at({src, tgt}) + row * dim(tgt) + col;
}

Vec MatrixCategory::compose_basis(Index a, Index b) const {
  const auto& ba = basis(a);
  const auto& bb = basis(b);
  const Index la = a - offset_.at({ba.src, ba.tgt});
  const Index lb = b - offset_.at({bb.src, bb.tgt});
  const Index i = la / dim(ba.tgt), j = la % dim(ba.tgt);
  const Index k = lb / dim(bb.tgt), l = lb % dim(bb.tgt);
  if (j != k) return {};
  return Vec::unit(entry(ba.src, bb.tgt, static_cast<int>(i), static_cast<int>(l)));
}

Vec MatrixCategory::unit(int o) const {
  std::vector<Vec::Entry> e;
  for (int i = 0; i < dim(o); ++i) e.emplace_back(entry(o, o, i, i), Rational(1));
  return Vec::from_entries(std::move(e));
}

Vec MatrixCategory::from_matrix(int src, int tgt, const std::vector<std::vector<Rational>>& m) const {
  if (static_cast<int>(m.size()) != dim(src)) throw DimensionMismatch("matrix row count differs from source dimension");
  std::vector<Vec::Entry> e;
  for (int i = 0; i < dim(src); ++i) {
    if (static_cast<int>(m[static_cast<std::size_t>(i)].size()) != dim(tgt))
      throw DimensionMismatch("matrix column count differs from target dimension");
    for (int j = 0; j < dim(tgt); ++j) e.emplace_back(entry(src, tgt, i, j), m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return Vec::from_entries(std::move(e));
}

std::pair<int, int> block_of(const LinearCategory& c, const Vec& v) {
  if (v.empty()) throw ValidationError("zero morphism has no hom block");
  const auto& first = c.basis(v.leading());
  for (const auto& [i, x] : v.entries())
    if (c.basis(i).src != first.src || c.basis(i).tgt != first.tgt)
      throw ValidationError("morphism spans several hom spaces");
  return {first.src, first.tgt};
}

GrowthBundle linear_word_growth(const LinearCategory& c, const std::vector<Vec>& sigma, int n_max) {
  if (sigma.empty()) throw ValidationError("sigma is empty");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  std::vector<BlockVector> blocks;
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i].empty()) {
      warnings.push_back("sigma element " + std::to_string(i) + " is zero");
      continue;
    }
    const auto [s, t] = block_of(c, sigma[i]);
    blocks.push_back({s, t, sigma[i]});
  }
  SpanGrowth span;
  if (blocks.empty()) {
    span.total.assign(static_cast<std::size_t>(n_max), 0);
    span.at_object.assign(static_cast<std::size_t>(c.object_count()), std::vector<Count>(static_cast<std::size_t>(n_max), 0));
  } else {
    span = product_span_growth(
        blocks, n_max, c.object_count(), [&](const BlockVector& a, const BlockVector& b) { return c.compose(a.v, b.v); },
        [](Vec v) { return v; });
  }
  GrowthBundle out;
  out.total.dims = span.total;
  out.total.exact.assign(span.total.size(), true);
  out.total.sigma_size = sigma.size();
  out.total.warnings = warnings;
  for (int o = 0; o < c.object_count(); ++o) {
    GrowthTable t;
    t.dims = span.at_object[static_cast<std::size_t>(o)];
    t.exact.assign(t.dims.size(), true);
    t.object = c.object_name(o);
    t.sigma_size = sigma.size();
    t.warnings = warnings;
    out.at_object.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> unit_violations(const LinearCategory& c) {
  std::vector<std::string> out;
  for (Index i = 0; i < c.basis_size(); ++i) {
    const Vec x = Vec::unit(i);
    const auto& b = c.basis(i);
    if (c.compose(c.unit(b.src), x) != x) out.push_back("left unit fails on '" + b.label + "'");
    if (c.compose(x, c.unit(b.tgt)) != x) out.push_back("right unit fails on '" + b.label + "'");
  }
  return out;
}

std::vector<std::string> associativity_violations(const LinearCategory& c) {
  std::vector<std::string> out;
  for (Index a = 0; a < c.basis_size(); ++a)
    for (Index b = 0; b < c.basis_size(); ++b) {
      if (c.basis(a).tgt != c.basis(b).src) continue;
      const Vec ab = c.compose_basis(a, b);
      for (Index d = 0; d < c.basis_size(); ++d) {
        if (c.basis(b).tgt != c.basis(d).src) continue;
        if (c.compose(ab, Vec::unit(d)) != c.compose(Vec::unit(a), c.compose_basis(b, d)))
          out.push_back("(" + c.basis(a).label + ", " + c.basis(b).label + ", " + c.basis(d).label + ")");
      }
    }
  return out;
}

int tensor_object(const LinearCategory&, const LinearCategory& d, int i, int j) { return i * d.object_count() + j; }

Index tensor_basis(const LinearCategory&, const LinearCategory& d, Index a, Index b) { return a * d.basis_size() + b; }

ExplicitLinearCategory tensor_category(const LinearCategory& c, const LinearCategory& d) {
  for (const LinearCategory* x : {&c, &d}) {
    const auto bad = unit_violations(*x);
    if (!bad.empty()) throw ValidationError("tensor_category needs unital inputs: " + bad.front());
  }
  const long long modulus = std::gcd(c.grading_modulus(), d.grading_modulus());
  auto reduced = [&](long long deg) { return modulus > 0 ? ((deg % modulus) + modulus) % modulus : deg; };
  if (modulus % 2 != 0) {
    for (const LinearCategory* x : {&c, &d})
      for (Index i = 0; i < x->basis_size(); ++i)
        if (reduced(x->basis(i).degree) != 0)
          throw UnsupportedInput("Koszul signs need an even or integer grading");
  }
  auto odd = [&](long long deg) { return (reduced(deg) % 2 + 2) % 2 == 1; };

  std::vector<std::string> objects;
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < d.object_count(); ++j) objects.push_back("(" + c.object_name(i) + "," + d.object_name(j) + ")");
  std::vector<BasisInfo> basis;
  for (Index a = 0; a < c.basis_size(); ++a)
    for (Index b = 0; b < d.basis_size(); ++b) {
      const auto& ba = c.basis(a);
      const auto& bb = d.basis(b);
      basis.push_back({tensor_object(c, d, ba.src, bb.src), tensor_object(c, d, ba.tgt, bb.tgt),
                       reduced(ba.degree + bb.degree), ba.label + "(x)" + bb.label});
    }
  ExplicitLinearCategory out(objects, basis, modulus);

  auto tensor = [&](const Vec& x, const Vec& y) {
    std::vector<Vec::Entry> e;
    for (const auto& [i, p] : x.entries())
      for (const auto& [j, q] : y.entries()) e.emplace_back(tensor_basis(c, d, i, j), p * q);
    return Vec::from_entries(std::move(e));
  };

  for (Index a = 0; a < c.basis_size(); ++a)
    for (Index a2 = 0; a2 < c.basis_size(); ++a2) {
      if (c.basis(a).tgt != c.basis(a2).src) continue;
      const Vec left = c.compose_basis(a, a2);
      if (left.empty()) continue;
      for (Index b = 0; b < d.basis_size(); ++b)
        for (Index b2 = 0; b2 < d.basis_size(); ++b2) {
          if (d.basis(b).tgt != d.basis(b2).src) continue;
          Vec v = tensor(left, d.compose_basis(b, b2));
          if (odd(d.basis(b).degree) && odd(c.basis(a2).degree)) v *= Rational(-1);
          out.set_product(tensor_basis(c, d, a, b), tensor_basis(c, d, a2, b2), std::move(v));
        }
    }
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < d.object_count(); ++j) out.set_unit(tensor_object(c, d, i, j), tensor(c.unit(i), d.unit(j)));
  return out;
}

RetractTransport retract_transport(const LinearCategory& c, const std::vector<Vec>& sigma,
                                   const std::map<int, RetractData>& retracts, int n_max) {
  for (const auto& [k_obj, data] : retracts) {
    if (block_of(c, data.r) != std::make_pair(k_obj, data.to) || block_of(c, data.k) != std::make_pair(data.to, k_obj))
      throw ValidationError("retract data for '" + c.object_name(k_obj) + "' has the wrong source or target");
    if (c.compose(data.r, data.k) != c.unit(k_obj))
      throw InvariantViolation("r then k is not the identity of '" + c.object_name(k_obj) + "'");
  }
  RetractTransport out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto [s, t] = block_of(c, sigma[i]);
    auto rs = retracts.find(s);
    auto rt = retracts.find(t);
    if (rs == retracts.end() || rt == retracts.end())
      throw ValidationError("sigma element " + std::to_string(i) + " touches an object without retract data");
    out.transported.push_back(c.compose(c.compose(rs->second.k, sigma[i]), rt->second.r));
  }
  out.original = linear_word_growth(c, sigma, n_max).total;
  out.transported_table = linear_word_growth(c, out.transported, n_max).total;
  out.equal = out.original.dims == out.transported_table.dims;
  return out;
}

}  // namespace algrowth
