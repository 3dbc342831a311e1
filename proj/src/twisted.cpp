#include "algrowth/twisted.hpp"

#include <functional>

namespace algrowth {

namespace {

int shift_parity(long long s) { return static_cast<int>(((s % 2) + 2) % 2); }
Rational sign_of(int parity) { return parity % 2 == 0 ? Rational(1) : Rational(-1); }

const Vec& delta_entry(const TwistedComplex& t, int a, int b) {
  static const Vec zero;
  auto it = t.delta.find({a, b});
  return it == t.delta.end() ? zero : it->second;
}

/// Chains a_0 < a_1 < ... < a_n with nonzero delta entries; visit(start, end, deltas).
void for_each_chain(const TwistedComplex& t, int from, int max_steps,
                    const std::function<void(int, const std::vector<const Vec*>&)>& visit,
                    std::vector<const Vec*>& path) {
  visit(from, path);
  if (max_steps <= 0) return;
  for (int b = from + 1; b < static_cast<int>(t.summands.size()); ++b) {
    const Vec& d = delta_entry(t, from, b);
    if (d.empty()) continue;
    path.push_back(&d);
    for_each_chain(t, b, max_steps - 1, visit, path);
    path.pop_back();
  }
}

}  // namespace

TwValidation validate_twisted_complex(const AInfOps& c, const TwistedComplex& t) {
  TwValidation v;
  auto fail = [&](std::string msg) {
    v.ok = false;
    v.message = "twisted complex '" + t.name + "': " + std::move(msg);
    return v;
  };
  const int m = static_cast<int>(t.summands.size());
  if (m == 0) return fail("no summands");
  for (int a = 0; a < m; ++a) {
    const int o = t.summands[static_cast<std::size_t>(a)].object;
    if (o < 0 || o >= c.object_count()) return fail("summand " + std::to_string(a) + " has an unknown object");
  }
  for (const auto& [key, d] : t.delta) {
    const auto [a, b] = key;
    if (a < 0 || b < 0 || a >= m || b >= m) return fail("differential entry outside the summand range");
    if (d.empty()) continue;
    if (a >= b)
      return fail("differential entry (" + std::to_string(a) + "," + std::to_string(b) +
                  ") is not strictly upper triangular");
    const auto& sa = t.summands[static_cast<std::size_t>(a)];
    const auto& sb = t.summands[static_cast<std::size_t>(b)];
    const long long want = c.reduce_degree(1 + sa.shift - sb.shift);
    for (const auto& [i, x] : d.entries()) {
      (void)x;
      if (i < 0 || i >= c.basis_size()) return fail("differential refers to an unknown basis vector");
      const auto& info = c.basis(i);
      if (info.src != sa.object || info.tgt != sb.object)
        return fail("entry (" + std::to_string(a) + "," + std::to_string(b) + ") component '" + info.label +
                    "' is not in hom(" + c.object_name(sa.object) + ", " + c.object_name(sb.object) + ")");
      if (info.degree != want)
        return fail("entry (" + std::to_string(a) + "," + std::to_string(b) + ") component '" + info.label +
                    "' has degree " + std::to_string(info.degree) + ", expected " + std::to_string(want));
    }
  }
  // Maurer-Cartan, entry by entry.
  for (int s = 0; s < m; ++s) {
    std::map<int, SparseAccumulator<Rational>> residual;
    const Rational sign = sign_of(shift_parity(t.summands[static_cast<std::size_t>(s)].shift));
    std::vector<const Vec*> path;
    for_each_chain(
        t, s, c.max_arity(),
        [&](int end, const std::vector<const Vec*>& deltas) {
          if (deltas.empty()) return;
          std::vector<Vec> inputs;
          for (const Vec* d : deltas) inputs.push_back(*d);
          residual[end].add(c.mu_vectors(inputs), sign);
        },
        path);
    for (auto& [end, acc] : residual) {
      Vec r = acc.finish();
      if (r.empty()) continue;
      v.alpha = s;
      v.beta = end;
      v.residual = r;
      return fail("Maurer-Cartan residual at (" + std::to_string(s) + "," + std::to_string(end) +
                  "): " + render(c, r));
    }
  }
  return v;
}

TwCategory::TwCategory(const AInfOps& base, std::vector<TwistedComplex> pool) : base_(base), pool_(std::move(pool)) {
  require_even_modulus(base.grading_modulus());
  for (auto& t : pool_) {
    for (auto& s : t.summands) s.shift = base.reduce_degree(s.shift);
    const auto v = validate_twisted_complex(base, t);
    if (!v.ok) throw ValidationError(v.message);
  }
  const int n = static_cast<int>(pool_.size());
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const auto& P = pool_[static_cast<std::size_t>(p)];
      const auto& Q = pool_[static_cast<std::size_t>(q)];
      for (int i = 0; i < static_cast<int>(P.summands.size()); ++i) {
        for (int j = 0; j < static_cast<int>(Q.summands.size()); ++j) {
          const auto& si = P.summands[static_cast<std::size_t>(i)];
          const auto& sj = Q.summands[static_cast<std::size_t>(j)];
          for (Index b : base.hom_basis(si.object, sj.object)) {
            const long long deg = base.reduce_degree(base.basis(b).degree + sj.shift - si.shift);
            index_[{p, q, i, j, b}] = static_cast<Index>(basis_.size());
            coords_.push_back(Coord{p, q, i, j, b});
            basis_.push_back(BasisInfo{p, q, deg,
                                       "(" + P.name + "." + std::to_string(i) + "," + Q.name + "." +
                                           std::to_string(j) + "):" + base.basis(b).label});
          }
        }
      }
    }
  }
  index_basis();
}

std::optional<Index> TwCategory::index_of(int p, int q, int i, int j, Index b) const {
  auto it = index_.find({p, q, i, j, b});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vec TwCategory::embed(int p, int q, int i, int j, const Vec& base_vector) const {
  std::vector<Vec::Entry> entries;
  for (const auto& [b, c] : base_vector.entries()) {
    auto idx = index_of(p, q, i, j, b);
    if (!idx) throw InvariantViolation("base morphism does not fit block (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
    entries.emplace_back(*idx, c);
  }
  return Vec::from_entries(std::move(entries));
}

Vec TwCategory::unit(int o) const {
  const auto& P = complex(o);
  Vec u;
  for (int i = 0; i < static_cast<int>(P.summands.size()); ++i) {
    const auto& s = P.summands[static_cast<std::size_t>(i)];
    u.add_scaled(embed(o, o, i, i, base_.unit(s.object)), sign_of(shift_parity(s.shift)));
  }
  return u;
}

Vec TwCategory::mu(const Tuple& inputs) const {
  const int k = static_cast<int>(inputs.size());
  const int budget = base_.max_arity() - k;
  if (k < 1 || budget < 0) return {};
  std::vector<const Coord*> ys;
  for (Index y : inputs) ys.push_back(&coord(y));
  for (int l = 1; l < k; ++l)
    if (ys[static_cast<std::size_t>(l - 1)]->q != ys[static_cast<std::size_t>(l)]->p)
      throw ValidationError("Tw inputs are not composable");

  const TwistedComplex& first = complex(ys.front()->p);
  const TwistedComplex& last = complex(ys.back()->q);
  std::map<std::pair<int, int>, SparseAccumulator<Rational>> out;  // (s, t) -> base output
  std::vector<Vec> seq;

  // Stage l = 1..k: append y_l, then a delta chain in Q_l (to i_{l+1}, or free at the end).
  std::function<void(int, int, int)> stage = [&](int l, int start, int left) {
    const Coord& y = *ys[static_cast<std::size_t>(l - 1)];
    seq.push_back(Vec::unit(y.b));
    const TwistedComplex& Q = complex(y.q);
    std::vector<const Vec*> path;
    for_each_chain(
        Q, y.j, left,
        [&](int end, const std::vector<const Vec*>& deltas) {
          if (l < k && end != ys[static_cast<std::size_t>(l)]->i) return;
          const std::size_t mark = seq.size();
          for (const Vec* d : deltas) seq.push_back(*d);
          const int rest = left - static_cast<int>(deltas.size());
          if (l < k) {
            stage(l + 1, start, rest);
          } else {
            Vec v = base_.mu_vectors(seq);
            if (!v.empty()) {
              const long long s = first.summands[static_cast<std::size_t>(start)].shift;
              out[{start, end}].add(v, sign_of(shift_parity(s)));
            }
          }
          seq.resize(mark);
        },
        path);
    seq.pop_back();
  };

  // Stage 0: delta chains in Q_0 ending at i_1, from every possible start.
  const int i1 = ys.front()->i;
  for (int s = 0; s <= i1; ++s) {
    std::vector<const Vec*> path;
    for_each_chain(
        first, s, budget,
        [&](int end, const std::vector<const Vec*>& deltas) {
          if (end != i1) return;
          seq.clear();
          for (const Vec* d : deltas) seq.push_back(*d);
          stage(1, s, budget - static_cast<int>(deltas.size()));
        },
        path);
  }

  (void)last;
  SparseAccumulator<Rational> result;
  for (auto& [st, acc] : out) result.add(embed(ys.front()->p, ys.back()->q, st.first, st.second, acc.finish()), 1);
  return result.finish();
}

TwHomComplex tw_hom_complex(const AInfOps& c, const TwistedComplex& p, const TwistedComplex& q) {
  TwCategory tw(c, {p, q});
  TwHomComplex out;
  out.complex = hom_complex(tw, 0, 1);
  for (Index b : tw.hom_basis(0, 1)) out.coords.push_back(tw.coord(b));
  if (!squares_to_zero(out.complex))
    throw VerificationFailure("sign-convention self-check failed: mu^1_Tw does not square to zero on hom(" + p.name +
                              ", " + q.name + ")");
  return out;
}

Vec tw_mu(const TwCategory& tw, const std::vector<Vec>& inputs) {
  for (std::size_t l = 0; l < inputs.size(); ++l) {
    if (inputs[l].empty()) return {};
    const int p = tw.basis(inputs[l].leading()).src, q = tw.basis(inputs[l].leading()).tgt;
    for (const auto& [b, x] : inputs[l].entries()) {
      (void)x;
      if (tw.basis(b).src != p || tw.basis(b).tgt != q) throw ValidationError("Tw input spans several hom spaces");
    }
    if (l > 0 && tw.basis(inputs[l - 1].leading()).tgt != p)
      throw ValidationError("Tw inputs " + std::to_string(l) + " and " + std::to_string(l + 1) +
                            " are not composable");
  }
  return tw.mu_vectors(inputs);
}

TwistedComplex cone_of_identity(const AInfOps& c, int object) {
  TwistedComplex t;
  t.name = "Cone(id_" + c.object_name(object) + ")";
  t.summands = {{object, 0}, {object, 1}};
  t.delta[{0, 1}] = c.unit(object);
  return t;
}

TwistedComplex embedded_object(const AInfOps& c, int object) {
  TwistedComplex t;
  t.name = c.object_name(object);
  t.summands = {{object, 0}};
  return t;
}

}  // namespace algrowth
