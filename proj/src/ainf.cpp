#include "algrowth/ainf.hpp"

#include <unordered_map>

#include "algrowth/parallel.hpp"
#include "algrowth/span_growth.hpp"

namespace algrowth {

namespace {

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    std::size_t h = t.size();
    for (Index x : t) h = h * 1000003u ^ static_cast<std::size_t>(x);
    return h;
  }
};

class MuCache {
 public:
  explicit MuCache(const AInfOps& ops) : ops_(ops) {}
  const Vec& get(const Tuple& t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(t, ops_.mu(t)).first->second;
  }

 private:
  const AInfOps& ops_;
  std::unordered_map<Tuple, Vec, TupleHash> cache_;
};

Rational sign_of(int parity) { return parity % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace

void require_even_modulus(long long modulus) {
  if (modulus < 0) throw ValidationError("grading modulus must be >= 0");
  if (modulus % 2 == 1)
    throw UnsupportedInput("grading modulus " + std::to_string(modulus) +
                           " is odd; signs need degrees modulo 2 (use 0 or an even modulus)");
}

long long AInfOps::reduce_degree(long long d) const {
  const long long n = grading_modulus();
  return n == 0 ? d : ((d % n) + n) % n;
}

int AInfOps::parity(Index i) const {
  const long long d = basis(i).degree;
  return static_cast<int>(((d % 2) + 2) % 2);
}

void AInfOps::index_basis() {
  hom_.clear();
  from_.assign(static_cast<std::size_t>(object_count()), {});
  for (Index i = 0; i < basis_size(); ++i) {
    const auto& b = basis(i);
    hom_[{b.src, b.tgt}].push_back(i);
    from_.at(static_cast<std::size_t>(b.src)).push_back(i);
  }
}

const std::vector<Index>& AInfOps::hom_basis(int src, int tgt) const {
  auto it = hom_.find({src, tgt});
  return it == hom_.end() ? empty_ : it->second;
}

const std::vector<Index>& AInfOps::basis_from(int src) const {
  if (src < 0 || static_cast<std::size_t>(src) >= from_.size()) return empty_;
  return from_[static_cast<std::size_t>(src)];
}

Vec AInfOps::mu_vectors(const std::vector<Vec>& inputs) const {
  if (inputs.empty()) throw ValidationError("mu needs at least one input");
  if (static_cast<int>(inputs.size()) > max_arity()) return {};
  SparseAccumulator<Rational> acc;
  Tuple t(inputs.size());
  std::function<void(std::size_t, const Rational&)> expand = [&](std::size_t pos, const Rational& coeff) {
    if (pos == inputs.size()) {
      acc.add(mu(t), coeff);
      return;
    }
    for (const auto& [i, x] : inputs[pos].entries()) {
      if (pos > 0 && basis(t[pos - 1]).tgt != basis(i).src) continue;
      t[pos] = i;
      expand(pos + 1, coeff * x);
    }
  };
  expand(0, Rational(1));
  return acc.finish();
}

std::string render(const AInfOps& ops, const Vec& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v.entries()) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += to_string(c) + "*";
    out += ops.basis(i).label;
  }
  return out;
}

// --- table-backed categories ---

AInfCategory::AInfCategory(std::vector<std::string> objects, long long modulus, int k_max)
    : objects_(std::move(objects)), modulus_(modulus), k_max_(k_max), units_(objects_.size()) {
  require_even_modulus(modulus);
  if (k_max < 2) throw ValidationError("k_max must be at least 2 (strict units need mu^2)");
  index_basis();
}

Index AInfCategory::add_basis(int src, int tgt, long long degree, std::string label) {
  if (finalized_) throw ValidationError("basis is frozen after finalize()");
  if (src < 0 || tgt < 0 || src >= object_count() || tgt >= object_count())
    throw ValidationError("basis vector '" + label + "' refers to an unknown object");
  if (find_label(label)) throw ValidationError("duplicate basis label '" + label + "'");
  labels_.emplace(label, static_cast<Index>(basis_.size()));
  basis_.push_back(BasisInfo{src, tgt, reduce_degree(degree), std::move(label)});
  return static_cast<Index>(basis_.size() - 1);
}

std::optional<Index> AInfCategory::find_label(const std::string& label) const {
  auto it = labels_.find(label);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

void AInfCategory::set_unit(int o, Index b) {
  if (o < 0 || o >= object_count()) throw ValidationError("set_unit: unknown object");
  if (b < 0 || b >= basis_size()) throw ValidationError("set_unit: unknown basis vector");
  const auto& info = basis(b);
  if (info.src != o || info.tgt != o || info.degree != 0)
    throw ValidationError("unit of '" + object_name(o) + "' must be a degree-0 endomorphism, got '" + info.label + "'");
  units_[static_cast<std::size_t>(o)] = b;
}

void AInfCategory::set_mu(const Tuple& inputs, Vec output) {
  const int k = static_cast<int>(inputs.size());
  if (k < 1) throw ValidationError("mu needs at least one input");
  if (k > k_max_)
    throw ValidationError("mu^" + std::to_string(k) + " given but k_max = " + std::to_string(k_max_));
  long long degree = 2 - k;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i] < 0 || inputs[i] >= basis_size()) throw ValidationError("mu input refers to an unknown basis vector");
    if (i > 0 && basis(inputs[i - 1]).tgt != basis(inputs[i]).src)
      throw ValidationError("mu inputs are not composable at position " + std::to_string(i + 1));
    degree += basis(inputs[i]).degree;
  }
  degree = reduce_degree(degree);
  const int src = basis(inputs.front()).src, tgt = basis(inputs.back()).tgt;
  for (const auto& [b, c] : output.entries()) {
    (void)c;
    if (b < 0 || b >= basis_size()) throw ValidationError("mu output refers to an unknown basis vector");
    const auto& info = basis(b);
    if (info.src != src || info.tgt != tgt)
      throw ValidationError("mu output component '" + info.label + "' lies outside hom(" + object_name(src) + ", " +
                            object_name(tgt) + ")");
    if (info.degree != degree)
      throw ValidationError("mu^" + std::to_string(k) + " output component '" + info.label + "' has degree " +
                            std::to_string(info.degree) + ", expected " + std::to_string(degree));
  }
  table_[inputs] = std::move(output);
}

void AInfCategory::finalize() {
  if (finalized_) return;
  index_basis();
  for (int o = 0; o < object_count(); ++o)
    if (!units_[static_cast<std::size_t>(o)]) throw ValidationError("object '" + object_name(o) + "' has no strict unit");
  auto is_unit = [&](Index b) {
    const auto& u = units_[static_cast<std::size_t>(basis(b).src)];
    return u && *u == b;
  };
  for (const auto& [t, v] : table_) {
    if (t.size() == 2 || v.empty()) continue;
    for (Index b : t)
      if (is_unit(b))
        throw ValidationError("mu^" + std::to_string(t.size()) + " must vanish on unit input '" + basis(b).label + "'");
  }
  auto fill = [&](const Tuple& t, Vec expected) {
    auto it = table_.find(t);
    if (it != table_.end() && !(it->second == expected))
      throw ValidationError("explicit mu^2(" + basis(t[0]).label + ", " + basis(t[1]).label +
                            ") contradicts strict unitality");
    table_[t] = std::move(expected);
  };
  for (Index x = 0; x < basis_size(); ++x) {
    const auto& info = basis(x);
    const Index es = *units_[static_cast<std::size_t>(info.src)];
    const Index et = *units_[static_cast<std::size_t>(info.tgt)];
    fill({es, x}, Vec::unit(x));
    fill({x, et}, Vec::unit(x, sign_of(parity(x))));
  }
  finalized_ = true;
}

Vec AInfCategory::mu(const Tuple& inputs) const {
  auto it = table_.find(inputs);
  return it == table_.end() ? Vec{} : it->second;
}

Vec AInfCategory::unit(int o) const {
  const auto& u = units_.at(static_cast<std::size_t>(o));
  return u ? Vec::unit(*u) : Vec{};
}

// --- relation checking ---

std::vector<RelationViolation> check_ainf(const AInfOps& ops, int arity_bound) {
  const Index n = ops.basis_size();
  const int kmax = ops.max_arity();

  auto per_first = parallel_map<std::vector<RelationViolation>>(
      static_cast<std::size_t>(n), [&](std::size_t first) {
        std::vector<RelationViolation> out;
        MuCache cache(ops);
        Tuple t{static_cast<Index>(first)};
        Tuple outer;

        auto check_tuple = [&]() {
          const int d = static_cast<int>(t.size());
          if (d <= kmax) {
            long long degree = 2 - d;
            for (Index x : t) degree += ops.basis(x).degree;
            degree = ops.reduce_degree(degree);
            const int src = ops.basis(t.front()).src, tgt = ops.basis(t.back()).tgt;
            for (const auto& [b, c] : cache.get(t).entries()) {
              const auto& info = ops.basis(b);
              if (info.src != src || info.tgt != tgt || info.degree != degree) {
                out.push_back({t, Vec::unit(b, c), "degree"});
                break;
              }
            }
          }
          SparseAccumulator<Rational> residual;
          int prefix = 0;  // sum of (|x_l| - 1) over l < i, mod 2
          for (int i = 0; i < d; ++i) {
            for (int j = 1; i + j <= d; ++j) {
              if (j > kmax || d - j + 1 > kmax) continue;
              const Tuple inner(t.begin() + i, t.begin() + i + j);
              const Vec& v = cache.get(inner);
              if (v.empty()) continue;
              const Rational s = sign_of(prefix);
              for (const auto& [b, c] : v.entries()) {
                outer.assign(t.begin(), t.begin() + i);
                outer.push_back(b);
                outer.insert(outer.end(), t.begin() + i + j, t.end());
                residual.add(cache.get(outer), s * c);
              }
            }
            prefix = (prefix + ops.parity(t[static_cast<std::size_t>(i)]) + 1) % 2;
          }
          Vec r = residual.finish();
          if (!r.empty()) out.push_back({t, std::move(r), "relation"});
        };

        std::function<void()> visit = [&]() {
          check_tuple();
          if (static_cast<int>(t.size()) >= arity_bound) return;
          for (Index next : ops.basis_from(ops.basis(t.back()).tgt)) {
            t.push_back(next);
            visit();
            t.pop_back();
          }
        };
        visit();

        // Strict-unit laws with x as the non-unit input.
        const Index x = static_cast<Index>(first);
        const Vec vx = Vec::unit(x);
        const Vec es = ops.unit(ops.basis(x).src), et = ops.unit(ops.basis(x).tgt);
        if (arity_bound >= 2 && !es.empty() && !et.empty()) {
          if (Vec r = ops.mu_vectors({es, vx}) - vx; !r.empty()) out.push_back({{x}, std::move(r), "unit"});
          if (Vec r = ops.mu_vectors({vx, et}) - Vec::unit(x, sign_of(ops.parity(x))); !r.empty())
            out.push_back({{x}, std::move(r), "unit"});
        }
        if (arity_bound >= 3 && kmax >= 3) {
          for (Index y : ops.basis_from(ops.basis(x).tgt)) {
            const Vec vy = Vec::unit(y);
            const Vec eu = ops.unit(ops.basis(y).tgt);
            for (const auto& in : {std::vector<Vec>{es, vx, vy}, std::vector<Vec>{vx, et, vy},
                                   std::vector<Vec>{vx, vy, eu}})
              if (Vec r = ops.mu_vectors(in); !r.empty()) out.push_back({{x, y}, std::move(r), "unit"});
          }
        }
        return out;
      });

  std::vector<RelationViolation> all;
  for (int o = 0; o < ops.object_count(); ++o) {
    const Vec e = ops.unit(o);
    if (e.empty()) {
      all.push_back({{}, {}, "unit"});
      continue;
    }
    if (Vec r = ops.mu_vectors({e}); !r.empty()) all.push_back({{}, std::move(r), "unit"});
  }
  for (auto& part : per_first)
    for (auto& v : part) all.push_back(std::move(v));
  return all;
}

std::string describe(const AInfOps& ops, const RelationViolation& v) {
  std::string tuple;
  for (Index x : v.inputs) tuple += (tuple.empty() ? "" : ", ") + ops.basis(x).label;
  return v.kind + " violation on (" + tuple + "): residual " + render(ops, v.residual);
}

// --- linear categories ---

LinearAsAInf::LinearAsAInf(const LinearCategory& c) : c_(c) {
  require_even_modulus(c.grading_modulus());
  index_basis();
}

Vec LinearAsAInf::mu(const Tuple& inputs) const {
  if (inputs.size() != 2) return {};
  Vec v = c_.compose_basis(inputs[0], inputs[1]);
  if (parity(inputs[0]) == 1) v *= Rational(-1);
  return v;
}

// --- cohomology ---

namespace {

struct BlockCohomology {
  int src = 0, tgt = 0;
  std::vector<Index> basis;  // global indices, local coordinate = position
  std::unordered_map<Index, Index> local;
  std::vector<Vec> reps;    // local coordinates
  std::vector<Index> class_ids;
  std::vector<Vec> bounds;  // local coordinates, spanning B
};

Vec to_local(const Vec& v, const std::unordered_map<Index, Index>& local) {
  std::vector<Vec::Entry> entries;
  for (const auto& [i, c] : v.entries()) {
    auto it = local.find(i);
    if (it == local.end()) throw InvariantViolation("mu^1 leaves its hom space");
    entries.emplace_back(it->second, c);
  }
  return Vec::from_entries(std::move(entries));
}

Vec to_global(const Vec& v, const std::vector<Index>& basis) {
  return v.reindexed([&](Index i) { return basis[static_cast<std::size_t>(i)]; });
}

}  // namespace

Complex hom_complex(const AInfOps& ops, int src, int tgt) {
  const auto& basis = ops.hom_basis(src, tgt);
  std::unordered_map<Index, Index> local;
  for (std::size_t i = 0; i < basis.size(); ++i) local[basis[i]] = static_cast<Index>(i);
  std::vector<Vec> rows;
  std::vector<int> degrees;
  for (Index b : basis) {
    rows.push_back(to_local(ops.mu({b}), local));
    degrees.push_back(static_cast<int>(ops.basis(b).degree));
  }
  return Complex{Matrix::from_rows(static_cast<Index>(basis.size()), std::move(rows)), std::move(degrees)};
}

CohomologyCategory cohomology_category(const AInfOps& ops, bool check_laws) {
  auto blocks = std::make_shared<std::map<std::pair<int, int>, BlockCohomology>>();
  std::vector<BasisInfo> class_basis;
  std::vector<Vec> reps_global;

  for (int s = 0; s < ops.object_count(); ++s) {
    for (int t = 0; t < ops.object_count(); ++t) {
      const auto& basis = ops.hom_basis(s, t);
      if (basis.empty()) continue;
      BlockCohomology& blk = (*blocks)[{s, t}];
      blk.src = s;
      blk.tgt = t;
      blk.basis = basis;
      for (std::size_t i = 0; i < basis.size(); ++i) blk.local[basis[i]] = static_cast<Index>(i);
      const Index cols = static_cast<Index>(basis.size());

      std::map<long long, std::vector<Index>> by_degree;  // local indices
      std::map<long long, std::vector<Vec>> images;       // mu^1 landing in that degree
      std::vector<Vec> d(basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const long long deg = ops.basis(basis[i]).degree;
        by_degree[deg].push_back(static_cast<Index>(i));
        d[i] = to_local(ops.mu({basis[i]}), blk.local);
        if (!d[i].empty()) {
          images[ops.reduce_degree(deg + 1)].push_back(d[i]);
          blk.bounds.push_back(d[i]);
        }
      }
      int counter = 0;
      for (const auto& [deg, idx] : by_degree) {
        std::vector<Vec> rows;
        for (Index i : idx) rows.push_back(d[static_cast<std::size_t>(i)]);
        const auto kernel = left_kernel(Matrix::from_rows(cols, rows));
        EchelonForm<Rational> boundary, seen;
        for (const auto& b : images[deg]) {
          boundary.insert(b);
          seen.insert(b);
        }
        for (const auto& k : kernel) {
          Vec z;
          for (const auto& [pos, c] : k.entries()) z.add_scaled(Vec::unit(idx[static_cast<std::size_t>(pos)]), c);
          if (!seen.insert(z)) continue;
          Vec rep = boundary.reduce(z);
          blk.class_ids.push_back(static_cast<Index>(class_basis.size()));
          blk.reps.push_back(rep);
          reps_global.push_back(to_global(rep, blk.basis));
          class_basis.push_back(BasisInfo{s, t, deg,
                                          "H(" + ops.object_name(s) + "," + ops.object_name(t) + ")#" +
                                              std::to_string(counter++)});
        }
      }
    }
  }

  CohomologyCategory out;
  out.classes_of = [blocks](const Vec& cocycle) {
    std::map<std::pair<int, int>, std::vector<Vec::Entry>> split;
    for (const auto& [i, c] : cocycle.entries()) {
      bool found = false;
      for (auto& [key, blk] : *blocks) {
        auto it = blk.local.find(i);
        if (it == blk.local.end()) continue;
        split[key].emplace_back(it->second, c);
        found = true;
        break;
      }
      if (!found) throw InvariantViolation("cocycle refers to an unknown basis vector");
    }
    SparseAccumulator<Rational> acc;
    for (auto& [key, entries] : split) {
      const auto& blk = blocks->at(key);
      std::vector<Vec> rows = blk.reps;
      rows.insert(rows.end(), blk.bounds.begin(), blk.bounds.end());
      const auto sol = solve_combination(rows, Vec::from_entries(std::move(entries)),
                                         static_cast<Index>(blk.basis.size()));
      if (!sol) throw InvariantViolation("element is not a cocycle");
      for (const auto& [r, c] : sol->entries())
        if (r < static_cast<Index>(blk.reps.size())) acc.add(blk.class_ids[static_cast<std::size_t>(r)], c);
    }
    return acc.finish();
  };

  std::vector<std::string> objects;
  for (int o = 0; o < ops.object_count(); ++o) objects.push_back(ops.object_name(o));
  out.category = std::make_unique<ExplicitLinearCategory>(objects, class_basis, ops.grading_modulus());
  for (std::size_t a = 0; a < class_basis.size(); ++a) {
    for (std::size_t b = 0; b < class_basis.size(); ++b) {
      if (class_basis[a].tgt != class_basis[b].src) continue;
      Vec prod = ops.mu_vectors({reps_global[a], reps_global[b]});
      if (((class_basis[a].degree % 2) + 2) % 2 == 1) prod *= Rational(-1);
      out.category->set_product(static_cast<Index>(a), static_cast<Index>(b), out.classes_of(prod));
    }
  }
  for (int o = 0; o < ops.object_count(); ++o) out.category->set_unit(o, out.classes_of(ops.unit(o)));
  out.representatives = std::move(reps_global);

  if (check_laws) {
    auto bad = associativity_violations(*out.category);
    if (bad.empty()) bad = unit_violations(*out.category);
    if (!bad.empty()) throw InvariantViolation("cohomology category is not a category: " + bad.front());
  }
  return out;
}

GrowthBundle cohomology_word_growth(const AInfOps& ops, const std::vector<Vec>& sigma, int n_max) {
  if (sigma.empty()) throw ValidationError("sigma is empty");
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  EchelonForm<Rational> boundaries;
  for (Index b = 0; b < ops.basis_size(); ++b) boundaries.insert(ops.mu({b}));
  auto normalize = [&](Vec v) { return boundaries.reduce(std::move(v)); };

  std::vector<BlockVector> blocks;
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Vec& x = sigma[i];
    if (!ops.mu_vectors({x}).empty()) throw InvariantViolation("sigma element " + std::to_string(i) + " is not a cocycle");
    if (x.empty()) {
      warnings.push_back("sigma element " + std::to_string(i) + " is zero");
      continue;
    }
    const int s = ops.basis(x.leading()).src, t = ops.basis(x.leading()).tgt;
    for (const auto& [b, c] : x.entries()) {
      (void)c;
      if (ops.basis(b).src != s || ops.basis(b).tgt != t)
        throw ValidationError("sigma element " + std::to_string(i) + " spans several hom spaces");
    }
    blocks.push_back({s, t, x});
  }
  SpanGrowth span;
  if (blocks.empty()) {
    span.total.assign(static_cast<std::size_t>(n_max), 0);
    span.at_object.assign(static_cast<std::size_t>(ops.object_count()),
                          std::vector<Count>(static_cast<std::size_t>(n_max), 0));
  } else {
    span = product_span_growth(
        blocks, n_max, ops.object_count(),
        [&](const BlockVector& a, const BlockVector& b) {
          Vec v = ops.mu_vectors({a.v, b.v});
          if (!a.v.empty() && ops.parity(a.v.leading()) == 1) v *= Rational(-1);
          return v;
        },
        normalize);
  }
  for (std::size_t i = 0; i < span.zero_generators.size(); ++i)
    if (span.zero_generators[i]) warnings.push_back("sigma element " + std::to_string(i) + " is exact");
  GrowthBundle out;
  out.total.dims = span.total;
  out.total.exact.assign(span.total.size(), true);
  out.total.sigma_size = sigma.size();
  out.total.warnings = warnings;
  for (int o = 0; o < ops.object_count(); ++o) {
    GrowthTable t;
    t.dims = span.at_object[static_cast<std::size_t>(o)];
    t.exact.assign(t.dims.size(), true);
    t.object = ops.object_name(o);
    t.sigma_size = sigma.size();
    t.warnings = warnings;
    out.at_object.push_back(std::move(t));
  }
  return out;
}

AInfCategory ainf_from_linear(const LinearCategory& c) {
  std::vector<std::string> objects;
  for (int o = 0; o < c.object_count(); ++o) objects.push_back(c.object_name(o));
  AInfCategory out(objects, c.grading_modulus(), 2);
  for (Index i = 0; i < c.basis_size(); ++i) {
    const auto& b = c.basis(i);
    out.add_basis(b.src, b.tgt, b.degree, b.label);
  }
  for (int o = 0; o < c.object_count(); ++o) {
    const Vec e = c.unit(o);
    if (e.size() != 1 || e.entries().front().second != 1)
      throw UnsupportedInput("unit of '" + c.object_name(o) + "' is not a single basis vector");
    out.set_unit(o, e.leading());
  }
  for (Index a = 0; a < c.basis_size(); ++a) {
    for (Index b = 0; b < c.basis_size(); ++b) {
      if (c.basis(a).tgt != c.basis(b).src) continue;
      Vec v = c.compose_basis(a, b);
      if (v.empty()) continue;
      if (out.parity(a) == 1) v *= Rational(-1);
      out.set_mu({a, b}, std::move(v));
    }
  }
  out.finalize();
  return out;
}

}  // namespace algrowth
