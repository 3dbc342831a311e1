#include "algrowth/filt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "algrowth/parallel.hpp"

namespace algrowth {

Rational FiltrationAssignment::level(const Vec& v) const {
  if (v.empty()) throw ValidationError("the zero vector has no level");
  Rational best = levels.at(static_cast<std::size_t>(v.entries().front().first));
  for (const auto& [i, c] : v.entries()) {
    (void)c;
    best = std::max(best, levels.at(static_cast<std::size_t>(i)));
  }
  return best;
}

FiltrationAssignment zero_filtration(const AInfOps& ops) {
  return FiltrationAssignment{std::vector<Rational>(static_cast<std::size_t>(ops.basis_size()), Rational(0))};
}

void require_fits(const AInfOps& ops, const FiltrationAssignment& f) {
  if (static_cast<Index>(f.levels.size()) != ops.basis_size())
    throw DimensionMismatch("filtration has " + std::to_string(f.levels.size()) + " levels for " +
                            std::to_string(ops.basis_size()) + " basis vectors");
}

std::vector<FiltrationViolation> check_filtration_axiom(const AInfOps& ops, const FiltrationAssignment& f,
                                                        int arity_bound) {
  require_fits(ops, f);
  const int bound = std::min(arity_bound, ops.max_arity());
  auto parts = parallel_map<std::vector<FiltrationViolation>>(
      static_cast<std::size_t>(ops.basis_size()), [&](std::size_t first) {
        std::vector<FiltrationViolation> out;
        Tuple t{static_cast<Index>(first)};
        std::function<void(const Rational&)> visit = [&](const Rational& sum) {
          const Vec out_vec = ops.mu(t);
          for (const auto& [b, c] : out_vec.entries()) {
            (void)c;
            const Rational& lvl = f.levels[static_cast<std::size_t>(b)];
            if (lvl > sum) out.push_back({t, b, lvl - sum});
          }
          if (static_cast<int>(t.size()) >= bound) return;
          for (Index next : ops.basis_from(ops.basis(t.back()).tgt)) {
            t.push_back(next);
            visit(sum + f.levels[static_cast<std::size_t>(next)]);
            t.pop_back();
          }
        };
        visit(f.levels[first]);
        return out;
      });
  std::vector<FiltrationViolation> all;
  for (auto& p : parts)
    for (auto& v : p) all.push_back(std::move(v));
  return all;
}

std::vector<std::string> check_subcomplex_closure(const AInfOps& ops, const FiltrationAssignment& f) {
  require_fits(ops, f);
  std::vector<std::string> out;
  for (Index b = 0; b < ops.basis_size(); ++b) {
    const Vec d = ops.mu({b});
    if (d.empty()) continue;
    const Rational& x = f.levels[static_cast<std::size_t>(b)];
    if (f.level(d) > x)
      out.push_back("hom(" + ops.object_name(ops.basis(b).src) + ", " + ops.object_name(ops.basis(b).tgt) +
                    ") at level " + to_string(x) + ": mu^1(" + ops.basis(b).label + ") leaves the subspace");
  }
  return out;
}

std::optional<std::pair<int, int>> inadmissible_entry(const AInfOps& c, const FiltrationAssignment& f,
                                                      const TwistedComplex& t, const Rational& threshold) {
  require_fits(c, f);
  for (const auto& [key, d] : t.delta)
    if (!d.empty() && f.level(d) > threshold) return key;
  return std::nullopt;
}

FiltrationAssignment tw_filtration(const TwCategory& tw, const FiltrationAssignment& base, const Rational& threshold) {
  if (threshold <= 0) throw ValidationError("threshold c must be positive");
  require_fits(tw.base(), base);
  for (int p = 0; p < tw.object_count(); ++p) {
    const auto& t = tw.complex(p);
    if (auto bad = inadmissible_entry(tw.base(), base, t, threshold))
      throw ValidationError("twisted complex '" + t.name + "' is not admissible: entry (" +
                            std::to_string(bad->first) + "," + std::to_string(bad->second) + ") has level " +
                            to_string(base.level(t.delta.at(*bad))) + " > c = " + to_string(threshold));
  }
  FiltrationAssignment out;
  out.levels.reserve(static_cast<std::size_t>(tw.basis_size()));
  for (Index i = 0; i < tw.basis_size(); ++i) {
    const auto& co = tw.coord(i);
    out.levels.push_back(base.levels[static_cast<std::size_t>(co.b)] - Rational(co.j - co.i) * threshold);
  }
  return out;
}

Count persistence_dim(const Complex& complex, const std::vector<Rational>& levels, const Rational& x) {
  if (static_cast<Index>(levels.size()) != complex.dim())
    throw DimensionMismatch("level count differs from complex dimension");
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] <= x) rows.push_back(Vec::unit(static_cast<Index>(i)));
  if (rows.empty()) return 0;
  return static_cast<Count>(image_in_cohomology_dim(Matrix::from_rows(complex.dim(), std::move(rows)), complex));
}

namespace {

std::vector<Rational> local_levels(const AInfOps& ops, const FiltrationAssignment& f, int k, int l) {
  std::vector<Rational> out;
  for (Index b : ops.hom_basis(k, l)) out.push_back(f.levels[static_cast<std::size_t>(b)]);
  return out;
}

/// i_{K,L}(x) at many x, sharing the complex.
class PersistenceTable {
 public:
  PersistenceTable(const AInfOps& ops, const FiltrationAssignment& f) : ops_(ops), f_(f) { require_fits(ops, f); }

  Count at(int k, int l, const Rational& x) {
    auto key = std::make_pair(k, l);
    auto it = complexes_.find(key);
    if (it == complexes_.end())
      it = complexes_.emplace(key, std::make_pair(hom_complex(ops_, k, l), local_levels(ops_, f_, k, l))).first;
    auto& values = cache_[key];
    auto v = values.find(x);
    if (v != values.end()) return v->second;
    const Count r = persistence_dim(it->second.first, it->second.second, x);
    values.emplace(x, r);
    return r;
  }

 private:
  const AInfOps& ops_;
  const FiltrationAssignment& f_;
  std::map<std::pair<int, int>, std::pair<Complex, std::vector<Rational>>> complexes_;
  std::map<std::pair<int, int>, std::map<Rational, Count>> cache_;
};

std::string bool_text(bool b) { return b ? "true" : "false"; }

Rational power_of_two(int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= 2;
  return r;
}

}  // namespace

Count persistence_dim(const AInfOps& ops, const FiltrationAssignment& f, int k, int l, const Rational& x) {
  require_fits(ops, f);
  return persistence_dim(hom_complex(ops, k, l), local_levels(ops, f, k, l), x);
}

FilteredGrowthProfile make_profile(std::string pair, std::vector<Rational> grid, std::vector<Count> values) {
  if (grid.size() != values.size()) throw DimensionMismatch("profile grid and values differ in length");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] < grid[i])) throw ValidationError("profile grid must be strictly increasing");
  FilteredGrowthProfile p{std::move(pair), std::move(grid), std::move(values), std::nullopt};
  std::vector<double> xs, ys;
  for (std::size_t i = p.grid.size() / 2; i < p.grid.size(); ++i) {
    if (p.values[i] == 0) continue;
    xs.push_back(to_double(p.grid[i]));
    ys.push_back(std::log(static_cast<double>(p.values[i])));
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / n;
      my += ys[i] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx > 0) p.rate = sxy / sxx;
  }
  return p;
}

FilteredGrowthProfile filtered_growth_profile(const AInfOps& ops, const FiltrationAssignment& f, int k, int l,
                                              const std::vector<Rational>& grid) {
  const Complex complex = hom_complex(ops, k, l);
  const auto levels = local_levels(ops, f, k, l);
  require_fits(ops, f);
  auto values = parallel_map<Count>(grid.size(), [&](std::size_t i) { return persistence_dim(complex, levels, grid[i]); });
  return make_profile(ops.object_name(k) + "->" + ops.object_name(l), grid, std::move(values));
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "lemma: " << lemma << "\n";
  out << "instance: " << instance << "\n";
  for (const auto& [k, v] : constants) out << "constant " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "\t" : "") << columns[i];
  if (!columns.empty()) out << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << r[i];
    out << "\n";
  }
  out << "pass: " << bool_text(pass) << "\n";
  return out.str();
}

VerificationReport verify_growth_to_filtration(const AInfOps& ops, const FiltrationAssignment& f,
                                               const std::vector<Vec>& sigma, int l, int n_max) {
  require_fits(ops, f);
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  if (sigma.empty()) throw ValidationError("sigma is empty");
  if (l < 0 || l >= ops.object_count()) throw ValidationError("unknown object");
  Rational b(0);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (const auto& [x, c] : sigma[i].entries()) {
      (void)c;
      if (ops.basis(x).src != l || ops.basis(x).tgt != l)
        throw ValidationError("sigma element " + std::to_string(i) + " is not an endomorphism of '" +
                              ops.object_name(l) + "'");
    }
    if (!sigma[i].empty()) b = std::max(b, f.level(sigma[i]));
  }
  const GrowthTable w = cohomology_word_growth(ops, sigma, n_max).at_object[static_cast<std::size_t>(l)];

  VerificationReport r;
  r.lemma = "growth-to-filtration (lemma-4-6)";
  r.instance = "object " + ops.object_name(l) + ", |sigma| = " + std::to_string(sigma.size());
  r.constants = {{"B", to_string(b)}, {"n_max", std::to_string(n_max)}};
  r.columns = {"n", "nB", "i(nB)", "dim_W", "holds"};
  PersistenceTable table(ops, f);
  for (int n = 1; n <= n_max; ++n) {
    const Rational x = b * n;
    const Count i = table.at(l, l, x);
    const Count d = w.at(n);
    const bool holds = i >= d;
    r.pass = r.pass && holds;
    r.rows.push_back({std::to_string(n), to_string(x), std::to_string(i), std::to_string(d), bool_text(holds)});
  }
  return r;
}

namespace {

struct PairWitness {
  int j = 0, k = 0;
  Count value = 0;
};

PairWitness best_pair(PersistenceTable& base, const TwistedComplex& q, const Rational& y) {
  PairWitness best;
  const int m = static_cast<int>(q.summands.size());
  bool first = true;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const Count v = base.at(q.summands[static_cast<std::size_t>(j)].object,
                              q.summands[static_cast<std::size_t>(k)].object, y);
      if (first || v > best.value) best = {j, k, v};
      first = false;
    }
  }
  return best;
}

}  // namespace

VerificationReport verify_tw_generator_bound(const TwCategory& tw, const FiltrationAssignment& base, int q,
                                             const Rational& threshold, const std::vector<Rational>& grid) {
  if (grid.empty()) throw ValidationError("grid is empty");
  const FiltrationAssignment phi = tw_filtration(tw, base, threshold);
  const TwistedComplex& Q = tw.complex(q);
  const int m = static_cast<int>(Q.summands.size());
  const Rational factor = power_of_two(m + 1);
  const Rational offset = Rational(m - 1) * threshold;

  PersistenceTable tw_table(tw, phi), base_table(tw.base(), base);
  VerificationReport r;
  r.lemma = "tw-generator-bound (lemma-4-8)";
  r.instance = "complex " + Q.name;
  r.columns = {"x", "i_Q(x)", "pair", "i_pair(x+(m-1)c)", "holds"};
  std::optional<Rational> tightest;
  for (const Rational& x : grid) {
    const Count iq = tw_table.at(q, q, x);
    const PairWitness w = best_pair(base_table, Q, x + offset);
    const bool holds = factor * Rational(w.value) >= Rational(iq);
    r.pass = r.pass && holds;
    if (iq > 0) {
      const Rational ratio = Rational(w.value) / Rational(iq);
      if (!tightest || ratio < *tightest) tightest = ratio;
    }
    r.rows.push_back({to_string(x), std::to_string(iq),
                      "(" + std::to_string(w.j + 1) + "," + std::to_string(w.k + 1) + ")", std::to_string(w.value),
                      bool_text(holds)});
  }
  r.constants = {{"m", std::to_string(m)},
                 {"c", to_string(threshold)},
                 {"stated_constant", "1/" + to_string(factor)},
                 {"tightest_observed", tightest ? to_string(*tightest) : "none"}};
  return r;
}

VerificationReport verify_tw_action_object(const TwCategory& tw, const FiltrationAssignment& base, int q,
                                           const Rational& threshold, const std::vector<Vec>& sigma, int n_max) {
  if (n_max < 1) throw ValidationError("grid is empty (n_max must be >= 1)");
  const FiltrationAssignment phi = tw_filtration(tw, base, threshold);
  const VerificationReport first = verify_growth_to_filtration(tw, phi, sigma, q, n_max);
  const Rational b = parse_rational(first.constants.front().second);
  const TwistedComplex& Q = tw.complex(q);
  const int m = static_cast<int>(Q.summands.size());
  const Rational factor = power_of_two(m + 1);
  const Rational offset = Rational(m - 1) * threshold;

  PersistenceTable base_table(tw.base(), base);
  VerificationReport r;
  r.lemma = "tw-action-object (cor-4-9)";
  r.instance = "complex " + Q.name + ", |sigma| = " + std::to_string(sigma.size());
  r.constants = {{"B", to_string(b)},
                 {"m", std::to_string(m)},
                 {"c", to_string(threshold)},
                 {"factor", to_string(factor)}};
  r.columns = {"n", "dim_W", "i_Q(nB)", "pair", "i_pair(nB+(m-1)c)", "holds"};
  for (int n = 1; n <= n_max; ++n) {
    const auto& row = first.rows[static_cast<std::size_t>(n - 1)];
    const Count iq = std::stoull(row[2]);
    const Count d = std::stoull(row[3]);
    const PairWitness w = best_pair(base_table, Q, b * n + offset);
    const bool holds = iq >= d && factor * Rational(w.value) >= Rational(iq);
    r.pass = r.pass && holds;
    r.rows.push_back({std::to_string(n), std::to_string(d), std::to_string(iq),
                      "(" + std::to_string(w.j + 1) + "," + std::to_string(w.k + 1) + ")", std::to_string(w.value),
                      bool_text(holds)});
  }
  return r;
}

}  // namespace algrowth
