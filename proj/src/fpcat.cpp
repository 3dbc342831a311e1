#include "algrowth/fpcat.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace algrowth {

namespace {

long long reduce_degree(long long d, long long modulus) {
  if (modulus <= 0) return d;
  return ((d % modulus) + modulus) % modulus;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::vector<std::string> validate(const Presentation& p) {
  std::vector<std::string> issues;
  if (p.grading_modulus < 0) issues.push_back("grading_modulus must be >= 0");

  std::set<std::string> objects;
  for (const auto& o : p.objects) {
    if (o.empty()) issues.push_back("object names must be non-empty");
    if (!objects.insert(o).second) issues.push_back("duplicate object '" + o + "'");
  }

  struct GenInfo {
    std::string src, tgt;
    long long degree;
  };
  std::map<std::string, GenInfo> gens;
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const auto& g = p.generators[i];
    const std::string where = "generator " + std::to_string(i) + " ('" + g.name + "')";
    if (g.name.empty()) issues.push_back(where + ": empty name");
    if (!gens.emplace(g.name, GenInfo{g.src, g.tgt, g.degree}).second)
      issues.push_back(where + ": duplicate generator name");
    if (!objects.count(g.src)) issues.push_back(where + ": unknown source object '" + g.src + "'");
    if (!objects.count(g.tgt)) issues.push_back(where + ": unknown target object '" + g.tgt + "'");
  }

  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    const auto& rel = p.relations[r];
    const std::string where = "relation " + std::to_string(r);
    if (rel.empty()) {
      issues.push_back(where + ": empty relation");
      continue;
    }
    std::optional<std::pair<std::string, std::string>> ends;
    std::optional<long long> degree;
    std::optional<std::size_t> length;
    std::set<std::vector<std::string>> seen;
    for (std::size_t t = 0; t < rel.size(); ++t) {
      const auto& term = rel[t];
      const std::string at = where + " term " + std::to_string(t);
      if (term.coeff == 0) issues.push_back(at + ": zero coefficient");
      if (!seen.insert(term.word).second) issues.push_back(at + ": duplicate word");
      std::string src, tgt;
      long long deg = 0;
      bool ok = true;
      if (term.word.empty()) {
        if (!term.object || !objects.count(*term.object)) {
          issues.push_back(at + ": identity term needs a known object");
          continue;
        }
        src = tgt = *term.object;
      }
      for (std::size_t k = 0; k < term.word.size(); ++k) {
        auto it = gens.find(term.word[k]);
        if (it == gens.end()) {
          issues.push_back(at + ": unknown generator '" + term.word[k] + "'");
          ok = false;
          break;
        }
        if (k == 0) {
          src = it->second.src;
        } else if (tgt != it->second.src) {
          issues.push_back(at + ": '" + term.word[k - 1] + "' and '" + term.word[k] +
                           "' are not composable (target " + tgt + " != source " + it->second.src + ")");
          ok = false;
          break;
        }
        tgt = it->second.tgt;
        deg += it->second.degree;
      }
      if (!ok) continue;
      if (!ends) {
        ends = std::make_pair(src, tgt);
      } else if (*ends != std::make_pair(src, tgt)) {
        issues.push_back(at + ": word runs " + src + "->" + tgt + " but the relation runs " + ends->first + "->" +
                         ends->second);
      }
      deg = reduce_degree(deg, p.grading_modulus);
      if (!degree) {
        degree = deg;
      } else if (*degree != deg) {
        issues.push_back(at + ": degree " + std::to_string(deg) + " differs from " + std::to_string(*degree) +
                         " (relation not homogeneous)");
      }
      if (!length) {
        length = term.word.size();
      } else if (*length != term.word.size() && !p.inhomogeneous) {
        issues.push_back(at + ": word length " + std::to_string(term.word.size()) + " differs from " +
                         std::to_string(*length) + " (set inhomogeneous to allow mixed lengths)");
      }
    }
  }
  return issues;
}

std::size_t WordTable::KeyHash::operator()(const std::pair<int, std::vector<int>>& k) const noexcept {
  std::size_t h = std::hash<int>()(k.first) * 0x9E3779B97F4A7C15ULL;
  for (int x : k.second) h = (h ^ static_cast<std::size_t>(x + 1)) * 0x100000001B3ULL;
  return h;
}

Index WordTable::intern(int src, const std::vector<int>& letters, int tgt) {
  auto key = std::make_pair(src, letters);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<Index>(words_.size());
  words_.push_back({src, tgt, letters});
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<Index> WordTable::find(int src, const std::vector<int>& letters) const {
  auto it = index_.find(std::make_pair(src, letters));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FpCategory::FpCategory(Presentation p) : p_(std::move(p)) {
  const auto issues = validate(p_);
  if (!issues.empty()) throw ValidationError("invalid presentation: " + join(issues, "; "));
  for (std::size_t i = 0; i < p_.objects.size(); ++i) object_index_[p_.objects[i]] = static_cast<int>(i);
  gens_from_.resize(p_.objects.size());
  gens_to_.resize(p_.objects.size());
  for (std::size_t i = 0; i < p_.generators.size(); ++i) {
    const auto& g = p_.generators[i];
    generator_index_[g.name] = static_cast<int>(i);
    gen_src_.push_back(object_index_.at(g.src));
    gen_tgt_.push_back(object_index_.at(g.tgt));
    gens_from_[static_cast<std::size_t>(gen_src_.back())].push_back(static_cast<int>(i));
    gens_to_[static_cast<std::size_t>(gen_tgt_.back())].push_back(static_cast<int>(i));
  }
}

int FpCategory::object_index(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) throw ValidationError("unknown object '" + name + "'");
  return it->second;
}

int FpCategory::generator_index(const std::string& name) const {
  auto it = generator_index_.find(name);
  if (it == generator_index_.end()) throw ValidationError("unknown generator '" + name + "'");
  return it->second;
}

std::string FpCategory::render_word(Index id) const {
  const auto& letters = words_.letters(id);
  if (letters.empty()) return "id(" + p_.objects[static_cast<std::size_t>(words_.source(id))] + ")";
  std::vector<std::string> names;
  for (int g : letters) names.push_back(p_.generators[static_cast<std::size_t>(g)].name);
  return join(names, " ");
}

Index FpCategory::word_id(int src, const std::vector<int>& letters) {
  const int tgt = letters.empty() ? src : gen_tgt_[static_cast<std::size_t>(letters.back())];
  return words_.intern(src, letters, tgt);
}

Vec FpCategory::multiply(const Vec& a, const Vec& b) {
  SparseAccumulator<Rational> acc;
  std::vector<int> letters;
  for (const auto& [wa, ca] : a.entries()) {
    for (const auto& [wb, cb] : b.entries()) {
      if (words_.target(wa) != words_.source(wb)) continue;
      letters = words_.letters(wa);
      const auto& tail = words_.letters(wb);
      letters.insert(letters.end(), tail.begin(), tail.end());
      acc.add(word_id(words_.source(wa), letters), ca * cb);
    }
  }
  return acc.finish();
}

BlockVector FpCategory::compile(const MorphismExpr& e, const std::string& where) {
  if (e.empty()) throw ValidationError(where + ": empty morphism expression");
  BlockVector out;
  std::set<std::pair<int, std::vector<int>>> seen;
  SparseAccumulator<Rational> acc;
  for (std::size_t t = 0; t < e.size(); ++t) {
    const auto& term = e[t];
    const std::string at = where + " term " + std::to_string(t);
    if (term.coeff == 0) throw ValidationError(at + ": zero coefficient");
    std::vector<int> letters;
    int src = -1, tgt = -1;
    if (term.word.empty()) {
      if (!term.object) throw ValidationError(at + ": identity term needs an object");
      src = tgt = object_index(*term.object);
    }
    for (const auto& name : term.word) {
      auto it = generator_index_.find(name);
      if (it == generator_index_.end()) throw ValidationError(at + ": unknown generator '" + name + "'");
      const int g = it->second;
      if (letters.empty()) {
        src = gen_src_[static_cast<std::size_t>(g)];
      } else if (tgt != gen_src_[static_cast<std::size_t>(g)]) {
        throw ValidationError(at + ": word is not composable at '" + name + "'");
      }
      tgt = gen_tgt_[static_cast<std::size_t>(g)];
      letters.push_back(g);
    }
    if (t == 0) {
      out.src = src;
      out.tgt = tgt;
    } else if (out.src != src || out.tgt != tgt) {
      throw ValidationError(at + ": terms do not share one source and target");
    }
    if (!seen.emplace(src, letters).second) throw ValidationError(at + ": duplicate word");
    acc.add(word_id(src, letters), term.coeff);
  }
  out.v = acc.finish();
  return out;
}

std::vector<Index> FpCategory::words_of_length(std::size_t length) {
  auto cached = words_by_length_.find(length);
  if (cached != words_by_length_.end()) return cached->second;
  std::vector<Index> out;
  if (length == 0) {
    for (int o = 0; o < object_count(); ++o) out.push_back(word_id(o, {}));
  } else {
    for (Index w : words_of_length(length - 1)) {
      const int t = words_.target(w);
      for (int g : gens_from_[static_cast<std::size_t>(t)]) {
        auto letters = words_.letters(w);
        letters.push_back(g);
        out.push_back(word_id(words_.source(w), letters));
      }
    }
  }
  words_by_length_[length] = out;
  return out;
}

const std::vector<BlockVector>& FpCategory::relators() {
  if (!relators_built_) {
    for (std::size_t r = 0; r < p_.relations.size(); ++r)
      relators_.push_back(compile(p_.relations[r], "relation " + std::to_string(r)));
    relators_built_ = true;
  }
  return relators_;
}

void FpCategory::extend_ideal(std::size_t l) {
  if (!homogeneous()) throw UnsupportedInput("normal forms need length-homogeneous relations");
  const auto& rels = relators();
  while (layers_.size() <= l) {
    const std::size_t k = layers_.size();
    EchelonForm<Rational> layer;
    for (const auto& r : rels)
      if (!r.v.empty() && words_.length(r.v.leading()) == k) layer.insert(r.v);
    if (k > 0) {
      // I_k = R_k + sum_g (g I_{k-1} + I_{k-1} g)
      const auto prev = layers_[k - 1].rows();
      for (const auto& row : prev) {
        const Index lead = row.leading();
        const int src = words_.source(lead), tgt = words_.target(lead);
        for (int g : gens_to_[static_cast<std::size_t>(src)])
          layer.insert(multiply(Vec::unit(word_id(gen_src_[static_cast<std::size_t>(g)], {g})), row));
        for (int g : gens_from_[static_cast<std::size_t>(tgt)])
          layer.insert(multiply(row, Vec::unit(word_id(tgt, {g}))));
      }
    }
    for (const auto& row : layer.rows()) ideal_.insert(row);
    layers_.push_back(std::move(layer));
  }
  ideal_length_ = std::max(ideal_length_, l);
}

const EchelonForm<Rational>& FpCategory::ideal_layer(std::size_t l) {
  extend_ideal(l);
  return layers_[l];
}

Vec FpCategory::normal_form(const Vec& v) {
  if (v.empty()) return v;
  std::size_t longest = 0;
  for (const auto& [w, c] : v.entries()) longest = std::max(longest, words_.length(w));
  extend_ideal(longest);
  return ideal_.reduce(v);
}

Index IdealTruncation::dim() const {
  Index d = 0;
  for (const auto& [b, rows] : blocks) d += static_cast<Index>(rows.size());
  return d;
}

Index IdealTruncation::dim_at_length(const WordTable& words, std::size_t length) const {
  Index d = 0;
  for (const auto& [b, rows] : blocks)
    for (const auto& r : rows)
      if (words.length(r.leading()) == length) ++d;
  return d;
}

namespace {

/// Rows spanning the p*r*q combinations (every term of length <= bound + slack)
/// that involve only words of length <= bound.
std::vector<Vec> truncated_ideal(FpCategory& cat, std::size_t bound, std::size_t slack) {
  auto& words = cat.words();
  const std::size_t cap = bound + slack;
  std::vector<std::vector<Index>> by_length;
  for (std::size_t l = 0; l <= cap; ++l) by_length.push_back(cat.words_of_length(l));

  std::vector<Vec> generated;
  for (const auto& r : cat.relators()) {
    std::size_t rlen = 0;
    for (const auto& [w, c] : r.v.entries()) rlen = std::max(rlen, words.length(w));
    if (rlen > cap) continue;
    for (std::size_t a = 0; a + rlen <= cap; ++a) {
      for (Index p : by_length[a]) {
        if (words.target(p) != r.src) continue;
        const Vec pr = cat.multiply(Vec::unit(p), r.v);
        for (std::size_t b = 0; a + b + rlen <= cap; ++b)
          for (Index q : by_length[b])
            if (words.source(q) == r.tgt) generated.push_back(cat.multiply(pr, Vec::unit(q)));
      }
    }
  }

  // Order columns longest word first so a row's pivot is its longest word.
  std::vector<Index> cols;
  for (const auto& ids : by_length) cols.insert(cols.end(), ids.begin(), ids.end());
  std::stable_sort(cols.begin(), cols.end(),
                   [&](Index x, Index y) { return words.length(x) > words.length(y); });
  std::unordered_map<Index, Index> to_col;
  for (std::size_t i = 0; i < cols.size(); ++i) to_col[cols[i]] = static_cast<Index>(i);

  EchelonForm<Rational> form;
  for (const auto& g : generated) form.insert(g.reindexed([&](Index w) { return to_col.at(w); }));
  std::vector<Vec> out;
  for (const auto& row : form.reduced_rows()) {
    if (words.length(cols[static_cast<std::size_t>(row.leading())]) > bound) continue;
    out.push_back(row.reindexed([&](Index c) { return cols[static_cast<std::size_t>(c)]; }));
  }
  return out;
}

std::pair<int, int> block_of(const WordTable& words, const Vec& v) {
  return {words.source(v.leading()), words.target(v.leading())};
}

}  // namespace

IdealTruncation ideal_basis_up_to(FpCategory& cat, int n, int slack) {
  if (n < 0 || slack < 0) throw ValidationError("ideal truncation needs n >= 0 and slack >= 0");
  IdealTruncation out;
  out.n = n;
  out.slack = slack;
  if (cat.homogeneous()) {
    for (int l = 0; l <= n; ++l)
      for (const auto& row : cat.ideal_layer(static_cast<std::size_t>(l)).reduced_rows())
        out.blocks[block_of(cat.words(), row)].push_back(row);
    return out;
  }
  out.exact = false;
  for (auto& row : truncated_ideal(cat, static_cast<std::size_t>(n), static_cast<std::size_t>(slack)))
    out.blocks[block_of(cat.words(), row)].push_back(std::move(row));
  return out;
}

namespace {

std::vector<BlockVector> compile_sigma(FpCategory& cat, const SigmaSpec& sigma) {
  if (sigma.empty()) throw ValidationError("sigma is empty");
  std::vector<BlockVector> out;
  for (std::size_t i = 0; i < sigma.size(); ++i) out.push_back(cat.compile(sigma[i], "sigma " + std::to_string(i)));
  return out;
}

GrowthBundle make_bundle(FpCategory& cat, std::size_t sigma_size, const std::vector<Count>& total,
                         const std::vector<std::vector<Count>>& at_object, bool exact,
                         const std::vector<std::string>& warnings) {
  GrowthBundle b;
  b.total.dims = total;
  b.total.exact.assign(total.size(), exact);
  b.total.sigma_size = sigma_size;
  b.total.warnings = warnings;
  for (int o = 0; o < cat.object_count(); ++o) {
    GrowthTable t;
    t.dims = at_object[static_cast<std::size_t>(o)];
    t.exact.assign(t.dims.size(), exact);
    t.object = cat.presentation().objects[static_cast<std::size_t>(o)];
    t.sigma_size = sigma_size;
    t.warnings = warnings;
    b.at_object.push_back(std::move(t));
  }
  return b;
}

GrowthBundle inhomogeneous_growth(FpCategory& cat, const std::vector<BlockVector>& sigma, int n_max, int slack) {
  using Block = std::pair<int, int>;
  auto& words = cat.words();
  std::vector<std::string> warnings;
  std::map<Block, EchelonForm<Rational>> layer, w;
  for (std::size_t i = 0; i < sigma.size(); ++i) layer[{sigma[i].src, sigma[i].tgt}].insert(sigma[i].v);

  std::vector<Count> total;
  std::vector<std::vector<Count>> at_object(static_cast<std::size_t>(cat.object_count()));
  std::size_t longest = 0;
  for (int l = 1; l <= n_max; ++l) {
    if (l > 1) {
      std::map<Block, EchelonForm<Rational>> next;
      for (const auto& [block, form] : layer)
        for (const auto& row : form.rows())
          for (const auto& s : sigma)
            if (s.src == block.second) next[{block.first, s.tgt}].insert(cat.multiply(row, s.v));
      layer = std::move(next);
    }
    for (const auto& [block, form] : layer)
      for (const auto& row : form.rows()) {
        for (const auto& [wd, c] : row.entries()) longest = std::max(longest, words.length(wd));
        w[block].insert(row);
      }

    std::map<Block, EchelonForm<Rational>> j;
    for (auto& row : truncated_ideal(cat, longest, static_cast<std::size_t>(slack)))
      j[block_of(words, row)].insert(std::move(row));
    Count t = 0;
    std::vector<Count> per(static_cast<std::size_t>(cat.object_count()), 0);
    for (const auto& [block, form] : w) {
      EchelonForm<Rational> both = j.count(block) ? j.at(block) : EchelonForm<Rational>{};
      const Index base = both.rank();
      for (const auto& row : form.rows()) both.insert(row);
      const auto d = static_cast<Count>(both.rank() - base);
      t += d;
      if (block.first == block.second) per[static_cast<std::size_t>(block.first)] = d;
    }
    total.push_back(t);
    for (std::size_t o = 0; o < per.size(); ++o) at_object[o].push_back(per[o]);
  }
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    std::size_t len = 0;
    for (const auto& [wd, c] : sigma[i].v.entries()) len = std::max(len, words.length(wd));
    EchelonForm<Rational> j;
    for (auto& row : truncated_ideal(cat, len, static_cast<std::size_t>(slack))) j.insert(std::move(row));
    if (j.contains(sigma[i].v)) warnings.push_back("sigma element " + std::to_string(i) + " is zero in the quotient");
  }
  return make_bundle(cat, sigma.size(), total, at_object, false, warnings);
}

}  // namespace

GrowthBundle word_growth_all(FpCategory& cat, const SigmaSpec& sigma, int n_max, const GrowthOptions& opts) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  const auto compiled = compile_sigma(cat, sigma);
  if (!cat.homogeneous()) return inhomogeneous_growth(cat, compiled, n_max, opts.slack);

  const auto span = product_span_growth(
      compiled, n_max, cat.object_count(),
      [&](const BlockVector& a, const BlockVector& b) { return cat.multiply(a.v, b.v); },
      [&](Vec v) { return cat.normal_form(v); });
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < span.zero_generators.size(); ++i)
    if (span.zero_generators[i]) warnings.push_back("sigma element " + std::to_string(i) + " is zero in the quotient");
  return make_bundle(cat, compiled.size(), span.total, span.at_object, true, warnings);
}

GrowthTable word_growth(FpCategory& cat, const SigmaSpec& sigma, int n_max, const GrowthOptions& opts) {
  return word_growth_all(cat, sigma, n_max, opts).total;
}

GrowthTable word_growth_at_object(FpCategory& cat, const SigmaSpec& sigma, const std::string& object, int n_max,
                                  const GrowthOptions& opts) {
  const int o = cat.object_index(object);
  return word_growth_all(cat, sigma, n_max, opts).at_object[static_cast<std::size_t>(o)];
}

Presentation restrict_objects(const Presentation& p, const std::vector<std::string>& keep) {
  std::set<std::string> kept(keep.begin(), keep.end());
  for (const auto& k : keep)
    if (std::find(p.objects.begin(), p.objects.end(), k) == p.objects.end())
      throw ValidationError("unknown object '" + k + "'");

  // Removed objects reachable from the kept ones.
  std::set<std::string> outside;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& g : p.generators) {
      const bool from_reach = kept.count(g.src) || outside.count(g.src);
      if (from_reach && !kept.count(g.tgt) && outside.insert(g.tgt).second) grew = true;
    }
  }
  for (const auto& g : p.generators)
    if (outside.count(g.src) && kept.count(g.tgt))
      throw InvariantViolation("restriction is not full: paths through '" + g.src + "' return to '" + g.tgt + "'");

  Presentation out;
  out.grading_modulus = p.grading_modulus;
  out.inhomogeneous = p.inhomogeneous;
  for (const auto& o : p.objects)
    if (kept.count(o)) out.objects.push_back(o);
  std::set<std::string> gens;
  for (const auto& g : p.generators)
    if (kept.count(g.src) && kept.count(g.tgt)) {
      out.generators.push_back(g);
      gens.insert(g.name);
    }
  for (const auto& rel : p.relations) {
    bool inside = true;
    for (const auto& t : rel) {
      for (const auto& name : t.word) inside = inside && gens.count(name);
      if (t.word.empty()) inside = inside && t.object && kept.count(*t.object);
    }
    if (inside) out.relations.push_back(rel);
  }
  return out;
}

CategoryToObjectCheck check_category_to_object(FpCategory& cat, const SigmaSpec& sigma, int n_max) {
  using boost::multiprecision::cpp_int;
  std::set<int> involved;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const auto b = cat.compile(sigma[i], "sigma " + std::to_string(i));
    involved.insert(b.src);
    involved.insert(b.tgt);
  }
  SigmaSpec augmented = sigma;
  for (int o : involved)
    augmented.push_back({TermSpec{Rational(1), {}, cat.presentation().objects[static_cast<std::size_t>(o)]}});

  CategoryToObjectCheck out;
  out.growth = word_growth_all(cat, augmented, n_max);
  out.sigma_size = augmented.size();
  out.objects = static_cast<int>(involved.size());
  const unsigned m = static_cast<unsigned>(involved.size());
  for (int n = 1; n <= n_max; ++n) {
    cpp_int rhs = boost::multiprecision::pow(cpp_int(out.sigma_size), m - 1);
    for (int o : involved) {
      const cpp_int base = cpp_int(out.growth.at_object[static_cast<std::size_t>(o)].at(n)) + 1;
      rhs *= boost::multiprecision::pow(base, m);
    }
    const bool ok = cpp_int(out.growth.total.at(n)) <= rhs;
    out.holds.push_back(ok);
    out.pass = out.pass && ok;
  }
  return out;
}

}  // namespace algrowth
