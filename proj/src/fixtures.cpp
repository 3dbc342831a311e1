#include "algrowth/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "algrowth/fpcat.hpp"

namespace algrowth {

namespace {

using Dense = std::vector<std::vector<Rational>>;

Dense zeros(int r, int c) {
  return Dense(static_cast<std::size_t>(r), std::vector<Rational>(static_cast<std::size_t>(c), Rational(0)));
}

Dense mat_mul(const Dense& a, const Dense& b) {
  const int r = static_cast<int>(a.size());
  const int k = b.empty() ? 0 : static_cast<int>(b.size());
  const int c = b.empty() ? 0 : static_cast<int>(b[0].size());
  Dense out = zeros(r, c);
  for (int i = 0; i < r; ++i)
    for (int l = 0; l < k; ++l) {
      const Rational& x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
      if (x == 0) continue;
      for (int j = 0; j < c; ++j)
        out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            x * b[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
    }
  return out;
}

Rational sign_of(long long parity) { return ((parity % 2) + 2) % 2 == 0 ? Rational(1) : Rational(-1); }

Rational random_nonzero(Rng& rng) {
  static const std::vector<int> values{-2, -1, 1, 1, 2};
  return Rational(rng.pick(values));
}

/// End-of-complexes data. Basis vectors of hom(a, b) are elementary
/// matrices E_pq (v_p -> v_q) except that the identity replaces E_00 in
/// End(a); directed mode keeps only a < b and the identities.
class DgModel {
 public:
  DgModel(Rng& rng, int objects, int max_dim, bool directed) : directed_(directed) {
    for (int o = 0; o < objects; ++o) {
      const int n = static_cast<int>(rng.uniform(1, max_dim));
      std::vector<long long> deg(static_cast<std::size_t>(n)), lvl(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p) {
        deg[static_cast<std::size_t>(p)] = rng.uniform(-1, 1);
        lvl[static_cast<std::size_t>(p)] = rng.uniform(0, 2);
      }
      Dense d = zeros(n, n);
      std::vector<bool> used(static_cast<std::size_t>(n), false);
      for (int p = 0; p < n; ++p) {
        if (used[static_cast<std::size_t>(p)] || !rng.coin(2, 3)) continue;
        std::vector<int> free;
        for (int q = 0; q < n; ++q)
          if (q != p && !used[static_cast<std::size_t>(q)]) free.push_back(q);
        if (free.empty()) continue;
        const int q = rng.pick(free);
        used[static_cast<std::size_t>(p)] = used[static_cast<std::size_t>(q)] = true;
        deg[static_cast<std::size_t>(q)] = deg[static_cast<std::size_t>(p)] + 1;
        lvl[static_cast<std::size_t>(q)] = rng.uniform(0, lvl[static_cast<std::size_t>(p)]);
        d[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = random_nonzero(rng);
      }
      dims_.push_back(n);
      deg_.push_back(std::move(deg));
      lvl_.push_back(std::move(lvl));
      diff_.push_back(std::move(d));
      offsets_.push_back(rng.uniform(0, 2));
      names_.push_back("X" + std::to_string(o));
    }
    for (int a = 0; a < objects; ++a) {
      for (int b = 0; b < objects; ++b) {
        if (directed && a > b) continue;
        const long long t = std::llabs(offsets_[static_cast<std::size_t>(a)] - offsets_[static_cast<std::size_t>(b)]);
        if (a == b) {
          unit_.push_back(add(a, b, 0, 0, true, Rational(0), "id_" + names_[static_cast<std::size_t>(a)]));
          if (directed) continue;
        }
        for (int p = 0; p < dims_[static_cast<std::size_t>(a)]; ++p) {
          for (int q = 0; q < dims_[static_cast<std::size_t>(b)]; ++q) {
            if (a == b && p == 0 && q == 0) continue;
            const long long deg = deg_[static_cast<std::size_t>(b)][static_cast<std::size_t>(q)] -
                                  deg_[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)];
            const long long lvl = lvl_[static_cast<std::size_t>(b)][static_cast<std::size_t>(q)] -
                                  lvl_[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)] + t;
            add(a, b, p, q, false, Rational(lvl),
                "E[" + names_[static_cast<std::size_t>(a)] + "." + std::to_string(p) + "," +
                    names_[static_cast<std::size_t>(b)] + "." + std::to_string(q) + "]",
                deg);
          }
        }
      }
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<BasisInfo>& basis() const { return basis_; }
  const std::vector<Rational>& levels() const { return levels_; }
  Index unit(int o) const { return unit_.at(static_cast<std::size_t>(o)); }
  bool is_unit(Index b) const { return entries_[static_cast<std::size_t>(b)].identity; }

  /// mu^1(x) = (-1)^{|x|} (M D_b - (-1)^{|x|} D_a M).
  Vec mu1(Index x) const {
    const auto& info = basis_[static_cast<std::size_t>(x)];
    const Dense m = matrix(x);
    Dense left = mat_mul(m, diff_[static_cast<std::size_t>(info.tgt)]);
    const Dense right = mat_mul(diff_[static_cast<std::size_t>(info.src)], m);
    const Rational s = sign_of(info.degree);
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < left[i].size(); ++j) left[i][j] = s * (left[i][j] - s * right[i][j]);
    return to_basis(info.src, info.tgt, left);
  }

  /// mu^2(x, y) = (-1)^{|x|} M_x M_y.
  Vec mu2(Index x, Index y) const {
    const auto& bx = basis_[static_cast<std::size_t>(x)];
    const auto& by = basis_[static_cast<std::size_t>(y)];
    Dense prod = mat_mul(matrix(x), matrix(y));
    const Rational s = sign_of(bx.degree);
    for (auto& row : prod)
      for (auto& v : row) v *= s;
    return to_basis(bx.src, by.tgt, prod);
  }

 private:
  struct Entry {
    int p = 0, q = 0;
    bool identity = false;
  };

  Index add(int a, int b, int p, int q, bool identity, Rational level, std::string label, long long degree = 0) {
    basis_.push_back(BasisInfo{a, b, degree, std::move(label)});
    entries_.push_back(Entry{p, q, identity});
    levels_.push_back(std::move(level));
    const Index idx = static_cast<Index>(basis_.size() - 1);
    if (!identity) elementary_[{a, b, p, q}] = idx;
    return idx;
  }

  Dense matrix(Index x) const {
    const auto& info = basis_[static_cast<std::size_t>(x)];
    const auto& e = entries_[static_cast<std::size_t>(x)];
    Dense m = zeros(dims_[static_cast<std::size_t>(info.src)], dims_[static_cast<std::size_t>(info.tgt)]);
    if (e.identity) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 1;
    } else {
      m[static_cast<std::size_t>(e.p)][static_cast<std::size_t>(e.q)] = 1;
    }
    return m;
  }

  Vec to_basis(int a, int b, const Dense& m) const {
    std::vector<Vec::Entry> out;
    const int na = dims_[static_cast<std::size_t>(a)], nb = dims_[static_cast<std::size_t>(b)];
    Rational diag(0);
    if (a == b) {
      diag = m[0][0];
      if (diag != 0) out.emplace_back(unit(a), diag);
    }
    for (int p = 0; p < na; ++p) {
      for (int q = 0; q < nb; ++q) {
        if (a == b && p == 0 && q == 0) continue;
        Rational v = m[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        if (a == b && p == q) v -= diag;
        if (v == 0) continue;
        auto it = elementary_.find({a, b, p, q});
        if (it == elementary_.end()) throw InvariantViolation("dg fixture: product leaves the directed subcategory");
        out.emplace_back(it->second, v);
      }
    }
    return Vec::from_entries(std::move(out));
  }

  bool directed_;
  std::vector<int> dims_;
  std::vector<std::vector<long long>> deg_, lvl_;
  std::vector<Dense> diff_;
  std::vector<long long> offsets_;
  std::vector<std::string> names_;
  std::vector<BasisInfo> basis_;
  std::vector<Entry> entries_;
  std::vector<Rational> levels_;
  std::vector<Index> unit_;
  std::map<std::tuple<int, int, int, int>, Index> elementary_;
};

std::shared_ptr<AInfCategory> empty_category(const DgModel& dg, int k_max) {
  auto c = std::make_shared<AInfCategory>(dg.names(), 0, k_max);
  for (const auto& b : dg.basis()) c->add_basis(b.src, b.tgt, b.degree, b.label);
  for (int o = 0; o < static_cast<int>(dg.names().size()); ++o) c->set_unit(o, dg.unit(o));
  return c;
}

/// Composable basis tuples of length d, in lexicographic order.
void for_each_tuple(const std::vector<BasisInfo>& basis, int d, const std::function<void(const Tuple&)>& visit) {
  Tuple t;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(t.size()) == d) {
      visit(t);
      return;
    }
    for (Index b = 0; b < static_cast<Index>(basis.size()); ++b) {
      if (!t.empty() && basis[static_cast<std::size_t>(t.back())].tgt != basis[static_cast<std::size_t>(b)].src)
        continue;
      t.push_back(b);
      rec();
      t.pop_back();
    }
  };
  rec();
}

}  // namespace

FilteredFixture random_dg_fixture(std::uint64_t seed, const DgFixtureOptions& options) {
  Rng rng(seed);
  const int objects = static_cast<int>(rng.uniform(options.min_objects, options.max_objects));
  const DgModel dg(rng, objects, options.max_dim, false);
  auto c = empty_category(dg, 2);
  for (Index x = 0; x < static_cast<Index>(dg.basis().size()); ++x) {
    if (Vec v = dg.mu1(x); !v.empty()) c->set_mu({x}, std::move(v));
    for (Index y = 0; y < static_cast<Index>(dg.basis().size()); ++y)
      if (dg.basis()[static_cast<std::size_t>(x)].tgt == dg.basis()[static_cast<std::size_t>(y)].src)
        c->set_mu({x, y}, dg.mu2(x, y));
  }
  c->finalize();
  return {c, FiltrationAssignment{dg.levels()}, "dg fixture seed " + std::to_string(seed)};
}

FilteredFixture random_gauge_fixture(std::uint64_t seed, int objects) {
  if (objects < 2) throw ValidationError("gauge fixture needs at least two objects");
  Rng rng(seed);
  const DgModel dg(rng, objects, 2, true);
  const auto& basis = dg.basis();
  const auto& levels = dg.levels();
  const Index n = static_cast<Index>(basis.size());

  // phi on basis pairs a -> b -> c with a < b < c, degree |x| + |y| - 1, level-compatible.
  std::map<std::pair<Index, Index>, Vec> phi;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const auto& bx = basis[static_cast<std::size_t>(x)];
      const auto& by = basis[static_cast<std::size_t>(y)];
      if (bx.tgt != by.src || !(bx.src < bx.tgt && by.src < by.tgt)) continue;
      std::vector<Vec::Entry> entries;
      for (Index z = 0; z < n; ++z) {
        const auto& bz = basis[static_cast<std::size_t>(z)];
        if (bz.src != bx.src || bz.tgt != by.tgt || bz.degree != bx.degree + by.degree - 1) continue;
        if (levels[static_cast<std::size_t>(z)] > levels[static_cast<std::size_t>(x)] + levels[static_cast<std::size_t>(y)])
          continue;
        if (rng.coin()) entries.emplace_back(z, random_nonzero(rng));
      }
      if (!entries.empty()) phi[{x, y}] = Vec::from_entries(std::move(entries));
    }
  }
  auto phi_v = [&](const Vec& a, const Vec& b) {
    SparseAccumulator<Rational> acc;
    for (const auto& [x, p] : a.entries())
      for (const auto& [y, q] : b.entries()) {
        auto it = phi.find({x, y});
        if (it != phi.end()) acc.add(it->second, p * q);
      }
    return acc.finish();
  };
  auto mu1_v = [&](const Vec& a) {
    SparseAccumulator<Rational> acc;
    for (const auto& [x, p] : a.entries()) acc.add(dg.mu1(x), p);
    return acc.finish();
  };
  auto mu2_v = [&](const Vec& a, const Vec& b) {
    SparseAccumulator<Rational> acc;
    for (const auto& [x, p] : a.entries())
      for (const auto& [y, q] : b.entries())
        if (basis[static_cast<std::size_t>(x)].tgt == basis[static_cast<std::size_t>(y)].src)
          acc.add(dg.mu2(x, y), p * q);
    return acc.finish();
  };

  // Transported operations, solved arity by arity from the functor equation
  // with F^1 = id and F^2 = phi.
  std::vector<std::map<Tuple, Vec>> mu(static_cast<std::size_t>(objects + 2));
  auto mu_v = [&](int d, const std::vector<Vec>& in) {
    SparseAccumulator<Rational> acc;
    Tuple t(in.size());
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t pos, const Rational& c) {
      if (pos == in.size()) {
        auto it = mu[static_cast<std::size_t>(d)].find(t);
        if (it != mu[static_cast<std::size_t>(d)].end()) acc.add(it->second, c);
        return;
      }
      for (const auto& [x, p] : in[pos].entries()) {
        t[pos] = x;
        rec(pos + 1, c * p);
      }
    };
    rec(0, Rational(1));
    return acc.finish();
  };
  auto F = [&](const Tuple& t, std::size_t from, std::size_t len) {
    if (len == 1) return Vec::unit(t[from]);
    return phi_v(Vec::unit(t[from]), Vec::unit(t[from + 1]));
  };

  int k_max = 2;
  for (int d = 1; d <= objects + 1; ++d) {
    for_each_tuple(basis, d, [&](const Tuple& t) {
      Vec out;
      if (d == 1) {
        out = dg.mu1(t[0]);
      } else {
        if (d == 2) out += mu1_v(phi_v(Vec::unit(t[0]), Vec::unit(t[1])));
        for (std::size_t s1 = 1; s1 <= 2; ++s1) {
          const std::size_t s2 = static_cast<std::size_t>(d) - s1;
          if (s2 < 1 || s2 > 2) continue;
          out += mu2_v(F(t, 0, s1), F(t, s1, s2));
        }
        std::vector<Vec> front, back;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) front.push_back(Vec::unit(t[i]));
        for (std::size_t i = 1; i < t.size(); ++i) back.push_back(Vec::unit(t[i]));
        out -= phi_v(mu_v(d - 1, front), Vec::unit(t.back()));
        Vec tail = phi_v(Vec::unit(t.front()), mu_v(d - 1, back));
        out -= sign_of(basis[static_cast<std::size_t>(t.front())].degree - 1) * tail;
      }
      if (!out.empty()) {
        mu[static_cast<std::size_t>(d)][t] = out;
        k_max = std::max(k_max, d);
      }
    });
  }

  auto c = empty_category(dg, k_max);
  for (int d = 1; d <= k_max; ++d)
    for (auto& [t, v] : mu[static_cast<std::size_t>(d)]) c->set_mu(t, v);
  c->finalize();
  return {c, FiltrationAssignment{levels},
          "gauge fixture seed " + std::to_string(seed) + " (k_max " + std::to_string(k_max) + ")"};
}

FilteredFixture free_algebra_fixture(int generators, int max_length) {
  if (generators < 1 || generators > 26) throw ValidationError("generator count must be in 1..26");
  Presentation p;
  p.objects = {"pt"};
  for (int g = 0; g < generators; ++g)
    p.generators.push_back(
        GeneratorSpec{g < 3 ? std::string(1, static_cast<char>('x' + g)) : "g" + std::to_string(g), "pt", "pt", 0});
  FpCategory fp(p);
  TruncatedPathCategory trunc(fp, max_length);
  auto c = std::make_shared<AInfCategory>(ainf_from_linear(trunc));
  FiltrationAssignment f;
  for (Index i = 0; i < trunc.basis_size(); ++i) f.levels.emplace_back(static_cast<long long>(trunc.word_length(i)));
  return {c, std::move(f),
          "free algebra on " + std::to_string(generators) + " generators, words of length <= " +
              std::to_string(max_length)};
}

namespace {

/// Sum over chains s = a_0 < ... < a_k = t (k >= 2) of (-1)^{s_s} mu^k(delta...).
Vec mc_rest(const AInfOps& c, const TwistedComplex& t, int s, int target) {
  SparseAccumulator<Rational> acc;
  const Rational sign = sign_of(t.summands[static_cast<std::size_t>(s)].shift);
  std::vector<Vec> path;
  std::function<void(int)> rec = [&](int at) {
    if (at == target) {
      if (path.size() >= 2) acc.add(c.mu_vectors(path), sign);
      return;
    }
    if (static_cast<int>(path.size()) >= c.max_arity()) return;
    for (int b = at + 1; b <= target; ++b) {
      auto it = t.delta.find({at, b});
      if (it == t.delta.end() || it->second.empty()) continue;
      path.push_back(it->second);
      rec(b);
      path.pop_back();
    }
  };
  rec(s);
  return acc.finish();
}

}  // namespace

std::optional<TwistedComplex> random_twisted_complex(const AInfOps& c, const FiltrationAssignment& f,
                                                     const Rational& threshold, Rng& rng,
                                                     const TwistedOptions& options) {
  require_fits(c, f);
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    TwistedComplex t;
    const int m = static_cast<int>(rng.uniform(1, options.max_summands));
    std::vector<int> objs;
    for (int i = 0; i < m; ++i) objs.push_back(static_cast<int>(rng.uniform(0, c.object_count() - 1)));
    std::sort(objs.begin(), objs.end());
    long long shift = rng.uniform(-1, 1);
    for (int i = 0; i < m; ++i) {
      if (i > 0) {
        std::vector<Index> cands;
        for (Index b : c.hom_basis(objs[static_cast<std::size_t>(i - 1)], objs[static_cast<std::size_t>(i)]))
          if (f.levels[static_cast<std::size_t>(b)] <= threshold) cands.push_back(b);
        if (!cands.empty() && rng.coin(3, 4))
          shift = shift + 1 - c.basis(rng.pick(cands)).degree;
        else
          shift = rng.uniform(-1, 1);
      }
      t.summands.push_back({objs[static_cast<std::size_t>(i)], c.reduce_degree(shift)});
    }

    bool failed = false;
    for (int dist = 1; dist < m && !failed; ++dist) {
      for (int s = 0; s + dist < m && !failed; ++s) {
        const int e = s + dist;
        const auto& ss = t.summands[static_cast<std::size_t>(s)];
        const auto& se = t.summands[static_cast<std::size_t>(e)];
        const Vec rest = mc_rest(c, t, s, e);
        // (-1)^{s_s} mu^1(delta) + rest = 0.
        Vec target = Rational(-sign_of(ss.shift)) * rest;
        std::vector<Index> allowed;
        for (Index b : c.hom_basis(ss.object, se.object))
          if (c.basis(b).degree == c.reduce_degree(1 + ss.shift - se.shift) &&
              f.levels[static_cast<std::size_t>(b)] <= threshold)
            allowed.push_back(b);
        if (allowed.empty()) {
          failed = !target.empty();
          continue;
        }
        std::vector<Vec> rows;
        for (Index b : allowed) rows.push_back(c.mu({b}));
        const auto sol = solve_combination(rows, target, c.basis_size());
        if (!sol) {
          failed = true;
          continue;
        }
        Vec delta;
        for (const auto& [i, x] : sol->entries()) delta.add_scaled(Vec::unit(allowed[static_cast<std::size_t>(i)]), x);
        for (const auto& k : left_kernel(Matrix::from_rows(c.basis_size(), rows))) {
          if (!rng.coin(2, 3)) continue;
          const Rational coeff = random_nonzero(rng);
          for (const auto& [i, x] : k.entries())
            delta.add_scaled(Vec::unit(allowed[static_cast<std::size_t>(i)]), x * coeff);
        }
        if (!delta.empty()) t.delta[{s, e}] = std::move(delta);
      }
    }
    if (failed) continue;
    if (validate_twisted_complex(c, t).ok) return t;
  }
  return std::nullopt;
}

std::vector<TwistedComplex> random_pool(const AInfOps& c, const FiltrationAssignment& f, const Rational& threshold,
                                        std::size_t size, Rng& rng, const TwistedOptions& options) {
  std::vector<TwistedComplex> pool;
  while (pool.size() < size) {
    auto t = random_twisted_complex(c, f, threshold, rng, options);
    if (!t) t = embedded_object(c, static_cast<int>(rng.uniform(0, c.object_count() - 1)));
    t->name = "T" + std::to_string(pool.size());
    pool.push_back(std::move(*t));
  }
  return pool;
}

RetractInstance random_retract_instance(std::uint64_t seed) {
  Rng rng(seed);
  const int a = static_cast<int>(rng.uniform(1, 3));
  const int b = static_cast<int>(rng.uniform(1, 2));
  const int n = a + b;
  RetractInstance out;
  out.category = std::make_shared<MatrixCategory>(std::vector<std::string>{"K", "L"}, std::vector<int>{a, n});

  // G = I + N with N strictly upper triangular; G^{-1} = sum_k (-N)^k.
  Dense nil = zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin()) nil[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(rng.uniform(-2, 2));
  Dense g = nil, ginv = zeros(n, n), power = zeros(n, n);
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += 1;
    power[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  }
  Dense neg = nil;
  for (auto& row : neg)
    for (auto& v : row) v = -v;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        ginv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            power[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    power = mat_mul(power, neg);
  }
  Dense incl = zeros(a, n), proj = zeros(n, a);
  for (int i = 0; i < a; ++i) {
    incl[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    proj[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  }
  RetractData data;
  data.to = 1;
  data.r = out.category->from_matrix(0, 1, mat_mul(incl, g));
  data.k = out.category->from_matrix(1, 0, mat_mul(ginv, proj));
  out.retracts[0] = data;

  const int count = static_cast<int>(rng.uniform(1, 3));
  for (int s = 0; s < count; ++s) {
    Vec x;
    while (x.empty()) {
      Dense m = zeros(a, a);
      for (auto& row : m)
        for (auto& v : row)
          if (rng.coin()) v = Rational(rng.uniform(-2, 2));
      x = out.category->from_matrix(0, 0, m);
    }
    out.sigma.push_back(std::move(x));
  }
  return out;
}

}  // namespace algrowth
