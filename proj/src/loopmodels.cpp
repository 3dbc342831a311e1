#include "algrowth/loopmodels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "algrowth/parallel.hpp"

namespace algrowth {

namespace {

void check_degrees(const std::vector<int>& degrees, int n_max) {
  if (n_max < 0) throw ValidationError("n_max must be >= 0");
  for (int d : degrees)
    if (d < 1) throw ValidationError("generator degrees must be >= 1 (got " + std::to_string(d) + ")");
}

BigInt binomial(const BigInt& n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// out *= factor(t) where factor is (1 + t^j)^l or (1 - t^j)^{-l}.
void multiply_factor(std::vector<BigInt>& series, int j, const BigInt& l, bool odd) {
  if (l == 0) return;
  const int n = static_cast<int>(series.size()) - 1;
  std::vector<BigInt> factor(static_cast<std::size_t>(n + 1), 0);
  for (int k = 0; k * j <= n; ++k) {
    // (1+t^j)^l: C(l, k); (1-t^j)^{-l}: C(l+k-1, k)
    factor[static_cast<std::size_t>(k * j)] =
        odd ? binomial(l, static_cast<unsigned>(k)) : binomial(l + k - 1, static_cast<unsigned>(k));
  }
  std::vector<BigInt> out(static_cast<std::size_t>(n + 1), 0);
  for (int a = 0; a <= n; ++a) {
    if (series[static_cast<std::size_t>(a)] == 0) continue;
    for (int b = 0; a + b <= n; b += j)
      out[static_cast<std::size_t>(a + b)] += series[static_cast<std::size_t>(a)] * factor[static_cast<std::size_t>(b)];
  }
  series = std::move(out);
}

double big_log(const BigInt& x) {
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 900) return std::log(x.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits - 60);
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

}  // namespace

HilbertSeries tensor_hilbert(const std::vector<int>& degrees, int n_max) {
  check_degrees(degrees, n_max);
  HilbertSeries h;
  h.coefficients.assign(static_cast<std::size_t>(n_max + 1), 0);
  h.coefficients[0] = 1;
  for (int j = 1; j <= n_max; ++j)
    for (int d : degrees)
      if (j - d >= 0) h.coefficients[static_cast<std::size_t>(j)] += h.coefficients[static_cast<std::size_t>(j - d)];
  return h;
}

WittTable graded_witt_dims(const std::vector<int>& degrees, int n_max) {
  const auto target = tensor_hilbert(degrees, n_max).coefficients;
  WittTable w;
  w.degrees = degrees;
  std::sort(w.degrees.begin(), w.degrees.end());
  w.lie_dims.assign(static_cast<std::size_t>(n_max + 1), 0);
  std::vector<BigInt> product(static_cast<std::size_t>(n_max + 1), 0);
  product[0] = 1;
  for (int j = 1; j <= n_max; ++j) {
    // Factors for degrees >= j only touch t^j through l_j * t^j.
    const BigInt l = target[static_cast<std::size_t>(j)] - product[static_cast<std::size_t>(j)];
    if (l < 0)
      throw InvariantViolation("PBW identity has no nonnegative solution at degree " + std::to_string(j));
    w.lie_dims[static_cast<std::size_t>(j)] = l;
    multiply_factor(product, j, l, j % 2 == 1);
  }
  return w;
}

std::vector<BigInt> pbw_product(const WittTable& table, int n_max) {
  std::vector<BigInt> product(static_cast<std::size_t>(n_max + 1), 0);
  product[0] = 1;
  for (int j = 1; j <= n_max && j < static_cast<int>(table.lie_dims.size()); ++j)
    multiply_factor(product, j, table.lie_dims[static_cast<std::size_t>(j)], j % 2 == 1);
  return product;
}

PbwCheck pbw_check(const std::vector<int>& degrees, int n_max) {
  const auto lhs = tensor_hilbert(degrees, n_max).coefficients;
  const auto rhs = pbw_product(graded_witt_dims(degrees, n_max), n_max);
  PbwCheck c;
  for (int j = 0; j <= n_max; ++j)
    if (lhs[static_cast<std::size_t>(j)] != rhs[static_cast<std::size_t>(j)]) {
      c.ok = false;
      c.first_failure = j;
      break;
    }
  return c;
}

GrowthClassification rational_hyperbolicity(const HilbertSeries& series, int n_min, int n_max,
                                            const ClassifierThresholds& thresholds) {
  std::vector<double> logs;
  BigInt sum = 0;
  for (std::size_t j = 0; j < series.coefficients.size(); ++j) {
    sum += series.coefficients[j];
    if (j >= 1) logs.push_back(sum == 0 ? -INFINITY : big_log(sum));
  }
  return classify_logs(logs, n_min, n_max, thresholds);
}

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() && out.back() == static_cast<char>(c ^ 1)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

GroupWord group_inverse(const GroupWord& w) {
  GroupWord out(w.rbegin(), w.rend());
  for (auto& c : out) c = static_cast<char>(c ^ 1);
  return out;
}

GroupModel GroupModel::free_group(int rank) {
  if (rank < 1) throw ValidationError("free group rank must be >= 1");
  GroupModel g;
  g.generators_ = rank;
  g.description_ = "free group of rank " + std::to_string(rank);
  return g;
}

GroupModel GroupModel::surface_group(int genus, bool orientable) {
  GroupModel g;
  if (orientable) {
    if (genus < 2) throw ValidationError("orientable surface genus must be >= 2");
    g.generators_ = 2 * genus;
    for (int i = 0; i < genus; ++i) {
      const char a = static_cast<char>(4 * i), b = static_cast<char>(4 * i + 2);
      g.relator_ += {a, b, static_cast<char>(a ^ 1), static_cast<char>(b ^ 1)};
    }
    g.description_ = "orientable surface group of genus " + std::to_string(genus);
  } else {
    if (genus == 2)
      throw UnsupportedInput("non-orientable genus 2 is the Klein bottle group, which is not hyperbolic");
    if (genus < 3) throw ValidationError("non-orientable surface genus must be >= 3");
    g.generators_ = genus;
    for (int i = 0; i < genus; ++i) g.relator_ += {static_cast<char>(2 * i), static_cast<char>(2 * i)};
    g.description_ = "non-orientable surface group of genus " + std::to_string(genus);
  }
  const std::size_t r = g.relator_.size();
  std::set<GroupWord> distinct;
  for (const GroupWord& rel : {g.relator_, group_inverse(g.relator_)})
    for (std::size_t s = 0; s < r; ++s) distinct.insert(rel.substr(s) + rel.substr(0, s));
  g.cyclic_.assign(distinct.begin(), distinct.end());
  return g;
}

std::string GroupModel::render(const GroupWord& w) const {
  if (w.empty()) return "e";
  std::string out;
  const bool surface_orientable = !relator_.empty() && relator_.size() == static_cast<std::size_t>(2 * generators_);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int gen = w[i] >> 1;
    const bool inverse = (w[i] & 1) != 0;
    std::string name;
    if (relator_.empty()) {
      name = "x" + std::to_string(gen + 1);
    } else if (surface_orientable) {
      name = std::string(1, gen % 2 == 0 ? 'a' : 'b') + std::to_string(gen / 2 + 1);
    } else {
      name = "a" + std::to_string(gen + 1);
    }
    if (inverse) name[0] = static_cast<char>(name[0] - 'a' + 'A');
    if (i) out += ' ';
    out += name;
  }
  return out;
}

namespace {

/// Longest k with w[p, p+k) == c[0, k).
std::size_t match_length(const GroupWord& w, std::size_t p, const GroupWord& c) {
  std::size_t k = 0;
  while (p + k < w.size() && k < c.size() && w[p + k] == c[k]) ++k;
  return k;
}

}  // namespace

GroupWord GroupModel::dehn_reduce(GroupWord w) const {
  const std::size_t r = relator_.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < w.size() && !changed; ++p)
      for (const auto& c : cyclic_) {
        const std::size_t k = match_length(w, p, c);
        if (2 * k <= r) continue;
        w = free_reduce(w.substr(0, p) + group_inverse(c.substr(k)) + w.substr(p + k));
        changed = true;
        break;
      }
  }
  return w;
}

GroupWord GroupModel::normal_form(const GroupWord& input) const {
  GroupWord w = free_reduce(input);
  if (relator_.empty()) return w;
  const std::size_t r = relator_.size();
  for (;;) {
    w = dehn_reduce(w);
    // Words reachable by swapping exactly half a relator for the other half.
    std::set<GroupWord> seen{w};
    std::vector<GroupWord> queue{w};
    std::optional<GroupWord> shorter;
    while (!queue.empty() && !shorter) {
      const GroupWord x = queue.back();
      queue.pop_back();
      for (std::size_t p = 0; p < x.size() && !shorter; ++p)
        for (const auto& c : cyclic_) {
          const std::size_t k = match_length(x, p, c);
          if (2 * k > r) {
            shorter = x;
            break;
          }
          if (2 * k < r) continue;
          GroupWord y = x.substr(0, p) + group_inverse(c.substr(k)) + x.substr(p + k);
          GroupWord reduced = free_reduce(y);
          if (reduced.size() < y.size()) {
            shorter = std::move(reduced);
            break;
          }
          if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    if (!shorter) return *seen.begin();
    w = *shorter;
  }
}

BallTable free_group_ball(int rank, int n_max) {
  if (rank < 1) throw ValidationError("free group rank must be >= 1");
  if (n_max < 0) throw ValidationError("n_max must be >= 0");
  BallTable t;
  t.group = GroupModel::free_group(rank).describe();
  t.sizes.push_back(1);
  Count sphere = static_cast<Count>(2 * rank);
  for (int n = 1; n <= n_max; ++n) {
    Count next;
    if (__builtin_add_overflow(t.sizes.back(), sphere, &next)) throw ResourceError("ball size exceeds 64 bits");
    t.sizes.push_back(next);
    if (__builtin_mul_overflow(sphere, static_cast<Count>(2 * rank - 1), &sphere) && n < n_max)
      throw ResourceError("ball size exceeds 64 bits");
  }
  return t;
}

std::size_t bfs_budget_bytes() {
  std::size_t mb = 4096;
  if (const char* env = std::getenv("ALGROWTH_BFS_BUDGET_MB")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') mb = static_cast<std::size_t>(v);
  }
  return mb << 20;
}

BallTable group_ball(const GroupModel& g, int n_max, std::optional<std::size_t> budget_bytes,
                     std::vector<std::vector<GroupWord>>* spheres) {
  if (n_max < 0) throw ValidationError("n_max must be >= 0");
  const std::size_t budget = budget_bytes.value_or(bfs_budget_bytes());
  BallTable t;
  t.group = g.describe();
  t.sizes.push_back(1);
  std::vector<GroupWord> sphere{GroupWord{}};
  if (spheres) spheres->push_back(sphere);
  std::size_t stored = sizeof(GroupWord);

  for (int k = 0; k < n_max; ++k) {
    const std::size_t len = static_cast<std::size_t>(k + 1);
    const std::size_t per = sizeof(GroupWord) + (len > 15 ? len + 1 : 0);
    const std::size_t estimate = sphere.size() * static_cast<std::size_t>(g.letter_count()) * per;
    if (stored + estimate > budget)
      throw BallBudgetExceeded("ball search to radius " + std::to_string(k + 1) + " needs about " +
                                   std::to_string((stored + estimate) >> 20) + " MB (budget " +
                                   std::to_string(budget >> 20) + " MB)",
                               t);
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (sphere.size() + kChunk - 1) / kChunk;
    auto parts = parallel_map<std::vector<GroupWord>>(chunks, [&](std::size_t c) {
      std::vector<GroupWord> out;
      const std::size_t end = std::min(sphere.size(), (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < end; ++i) {
        const GroupWord& w = sphere[i];
        for (int l = 0; l < g.letter_count(); ++l) {
          const char letter = static_cast<char>(l);
          if (!w.empty() && w.back() == static_cast<char>(letter ^ 1)) continue;
          GroupWord y = g.normal_form(w + letter);
          if (y.size() == len) out.push_back(std::move(y));
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    });
    std::vector<GroupWord> next;
    for (auto& p : parts) next.insert(next.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    t.sizes.push_back(t.sizes.back() + next.size());
    if (spheres) {
      spheres->push_back(next);
      stored += next.size() * per;
    }
    sphere = std::move(next);
  }
  return t;
}

BallTable surface_group_ball(int genus, bool orientable, int n_max, std::optional<std::size_t> budget_bytes) {
  return group_ball(GroupModel::surface_group(genus, orientable), n_max, budget_bytes);
}

GroupAlgebraModel::GroupAlgebraModel(GroupModel group, int window) : group_(std::move(group)), window_(window) {
  if (window < 0) throw ValidationError("window must be >= 0");
  std::vector<std::vector<GroupWord>> spheres;
  group_ball(group_, window, std::nullopt, &spheres);
  for (const auto& s : spheres)
    for (const auto& w : s) {
      index_.emplace(w, static_cast<Index>(elements_.size()));
      elements_.push_back(w);
      basis_.push_back({0, 0, 0, group_.render(w)});
    }
}

std::optional<Index> GroupAlgebraModel::index_of(const GroupWord& normal_form) const {
  auto it = index_.find(normal_form);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index GroupAlgebraModel::letter(int l) const { return index_.at(GroupWord(1, static_cast<char>(l))); }

Vec GroupAlgebraModel::compose_basis(Index a, Index b) const {
  const GroupWord y = group_.normal_form(element(a) + element(b));
  auto idx = index_of(y);
  if (!idx) {
    out_of_window_.fetch_add(1);
    return {};
  }
  return Vec::unit(*idx);
}

std::vector<Rational> GroupAlgebraModel::levels() const {
  std::vector<Rational> out;
  out.reserve(elements_.size());
  for (const auto& w : elements_) out.emplace_back(static_cast<long>(w.size()));
  return out;
}

}  // namespace algrowth
