#include "algrowth/suites.hpp"

#include <algorithm>

#include "algrowth/fixtures.hpp"
#include "algrowth/lincat.hpp"
#include "algrowth/loopmodels.hpp"
#include "algrowth/twisted.hpp"

namespace algrowth {

namespace {

struct LemmaName {
  LemmaKind kind;
  const char* numbered;
  const char* alias;
};

constexpr LemmaName kLemmas[] = {
    {LemmaKind::FiltrationAxiom, "filtration-axiom", "filtration-axiom"},
    {LemmaKind::GrowthToFiltration, "lemma-4-6", "growth-to-filtration"},
    {LemmaKind::TwGeneratorBound, "lemma-4-8", "tw-generator-bound"},
    {LemmaKind::TwActionObject, "cor-4-9", "tw-action-object"},
    {LemmaKind::TwRelations, "tw-ainf", "tw-relations"},
    {LemmaKind::Retract, "retract", "retract-transport"},
};

FilteredFixture seeded_fixture(std::uint64_t seed) {
  return seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, seed % 4 == 0 ? 4 : 3);
}

std::vector<Rational> int_grid(int lo, int hi) {
  std::vector<Rational> g;
  for (int x = lo; x <= hi; ++x) g.emplace_back(x);
  return g;
}

io::Json replay_block(LemmaKind kind, std::uint64_t seed) {
  return io::Json{{"lemma", lemma_name(kind)}, {"seed", seed}};
}

io::Json document_json(const FilteredFixture& fx, std::vector<TwistedComplex> twisted, std::vector<Vec> sigma,
                       std::optional<std::string> sigma_object, std::optional<Rational> threshold) {
  io::AInfDocument doc;
  doc.category = fx.category;
  doc.filtration = fx.filtration;
  doc.twisted = std::move(twisted);
  doc.sigma = std::move(sigma);
  doc.sigma_object = std::move(sigma_object);
  doc.threshold = std::move(threshold);
  return io::ainf_to_json(doc);
}

std::string first_filtration_violation(const AInfOps& ops, const std::vector<FiltrationViolation>& v) {
  if (v.empty()) return "-";
  std::string s = "(";
  for (std::size_t k = 0; k < v[0].inputs.size(); ++k) s += (k ? ", " : "") + ops.basis(v[0].inputs[k]).label;
  return s + ") -> " + ops.basis(v[0].component).label + " excess " + to_string(v[0].excess);
}

std::string first_relation_violation(const AInfOps& ops, const std::vector<RelationViolation>& v) {
  return v.empty() ? "-" : describe(ops, v[0]);
}

/// Filtration axiom on the base and, when a pool is given, on Tw with Phi_c.
VerificationReport filtration_report(const AInfOps& base, const FiltrationAssignment& f, int arity,
                                     const std::vector<TwistedComplex>& pool, const std::optional<Rational>& c) {
  VerificationReport r;
  r.lemma = lemma_alias(LemmaKind::FiltrationAxiom);
  r.columns = {"category", "arity", "violations", "first"};
  const auto v = check_filtration_axiom(base, f, arity);
  const auto closure = check_subcomplex_closure(base, f);
  r.rows.push_back({"base", std::to_string(arity), std::to_string(v.size() + closure.size()),
                    v.empty() && !closure.empty() ? closure.front() : first_filtration_violation(base, v)});
  r.pass = v.empty() && closure.empty();
  if (!pool.empty() && c) {
    r.constants.push_back({"c", to_string(*c)});
    TwCategory tw(base, pool);
    const auto phi = tw_filtration(tw, f, *c);
    const int tw_arity = std::min(arity, 3);
    const auto tv = check_filtration_axiom(tw, phi, tw_arity);
    const auto tclosure = check_subcomplex_closure(tw, phi);
    r.rows.push_back({"tw", std::to_string(tw_arity), std::to_string(tv.size() + tclosure.size()),
                      tv.empty() && !tclosure.empty() ? tclosure.front() : first_filtration_violation(tw, tv)});
    r.pass = r.pass && tv.empty() && tclosure.empty();
  }
  return r;
}

VerificationReport relations_report(const AInfOps& base, const std::vector<TwistedComplex>& pool, int arity) {
  VerificationReport r;
  r.lemma = lemma_alias(LemmaKind::TwRelations);
  r.columns = {"check", "failures", "first"};
  const auto bv = check_ainf(base, arity);
  r.rows.push_back({"base relations", std::to_string(bv.size()), first_relation_violation(base, bv)});
  r.pass = bv.empty();
  if (!r.pass) return r;  // Tw over a broken base is meaningless
  for (const auto& t : pool) {
    const auto val = validate_twisted_complex(base, t);
    if (!val.ok) {
      r.rows.push_back({"complex " + t.name, "1", val.message});
      r.pass = false;
    }
  }
  if (!r.pass) return r;
  for (int o = 0; o < base.object_count(); ++o) {
    const auto cone = cone_of_identity(base, o);
    const Index h = cohomology_dim(tw_hom_complex(base, cone, cone).complex);
    r.rows.push_back({"cone(id) on " + base.object_name(o), std::to_string(h), h ? "not acyclic" : "-"});
    r.pass = r.pass && h == 0;
  }
  if (!pool.empty()) {
    TwCategory tw(base, pool);
    const auto tv = check_ainf(tw, arity);
    r.rows.push_back({"tw relations", std::to_string(tv.size()), first_relation_violation(tw, tv)});
    r.pass = r.pass && tv.empty();
  }
  return r;
}

/// A complex with at least two summands when the fixture allows one.
TwistedComplex multi_summand_complex(const FilteredFixture& fx, const Rational& c, Rng& rng, int max_summands) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    auto t = random_twisted_complex(*fx.category, fx.filtration, c, rng, {max_summands, 20});
    if (t && t->summands.size() >= 2) {
      t->name = "Q";
      return *t;
    }
  }
  auto t = cone_of_identity(*fx.category, 0);
  t.name = "Q";
  return t;
}

Vec pick_nonzero_combination(const std::vector<Vec>& basis, Rng& rng) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    SparseAccumulator<Rational> acc;
    for (const Vec& v : basis)
      if (rng.coin()) acc.add(v, Rational(rng.uniform(-2, 2)));
    Vec out = acc.finish();
    if (!out.empty()) return out;
  }
  return basis.front();
}

io::Json tw_sigma_json(const TwCategory& tw, const std::vector<Vec>& sigma) {
  io::Json out = io::Json::array();
  for (const Vec& v : sigma) {
    io::Json terms = io::Json::array();
    for (const auto& [b, x] : v.entries()) {
      const auto& co = tw.coord(b);
      terms.push_back(io::Json{{"row", co.i}, {"col", co.j}, {"coeff", to_string(x)}, {"id", tw.base().basis(co.b).label}});
    }
    out.push_back(std::move(terms));
  }
  return out;
}

std::vector<Vec> tw_sigma_from_json(const TwCategory& tw, const AInfCategory& base, const io::Json& j) {
  std::vector<Vec> out;
  if (!j.is_array()) throw ValidationError("tw_sigma: expected a list");
  for (const auto& terms : j) {
    SparseAccumulator<Rational> acc;
    for (const auto& t : terms) {
      const auto b = base.find_label(t.at("id").get<std::string>());
      if (!b) throw ValidationError("tw_sigma: unknown basis id " + t.at("id").get<std::string>());
      const auto i = tw.index_of(0, 0, t.at("row").get<int>(), t.at("col").get<int>(), *b);
      if (!i) throw ValidationError("tw_sigma: entry outside hom(Q, Q)");
      acc.add(*i, parse_rational(t.at("coeff").get<std::string>()));
    }
    out.push_back(acc.finish());
  }
  return out;
}

void tag(SeededCase& sc, const std::string& what) {
  sc.report.instance = "seed " + std::to_string(sc.seed) + ": " + what + (sc.report.instance.empty() ? "" : "; " + sc.report.instance);
}

int json_int(const io::Json& j, const char* key, int fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) throw ValidationError(std::string(key) + ": expected an integer");
  return it->get<int>();
}

std::vector<Rational> json_grid(const io::Json& j, std::vector<Rational> fallback) {
  auto it = j.find("grid");
  if (it == j.end()) return fallback;
  std::vector<Rational> g;
  for (const auto& x : *it) g.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>()));
  return g;
}

io::Json grid_json(const std::vector<Rational>& grid) {
  io::Json g = io::Json::array();
  for (const auto& x : grid) g.push_back(to_string(x));
  return g;
}

}  // namespace

LemmaKind parse_lemma(const std::string& name) {
  for (const auto& l : kLemmas)
    if (name == l.numbered || name == l.alias) return l.kind;
  std::string known;
  for (const auto& l : kLemmas) known += std::string(known.empty() ? "" : ", ") + l.numbered + " (" + l.alias + ")";
  throw ValidationError("unknown lemma \"" + name + "\"; known: " + known);
}

std::string lemma_name(LemmaKind kind) {
  for (const auto& l : kLemmas)
    if (l.kind == kind) return l.numbered;
  return "?";
}

std::string lemma_alias(LemmaKind kind) {
  for (const auto& l : kLemmas)
    if (l.kind == kind) return l.alias;
  return "?";
}

std::vector<Vec> endomorphism_cocycles(const AInfOps& ops, int o) {
  const auto basis = ops.hom_basis(o, o);
  std::vector<Vec> rows;
  for (Index b : basis) rows.push_back(ops.mu({b}));
  const auto kernel = left_kernel(Matrix::from_rows(ops.basis_size(), rows));
  std::vector<Vec> out;
  for (const Vec& k : kernel) out.push_back(k.reindexed([&](Index i) { return basis[static_cast<std::size_t>(i)]; }));
  return out;
}

SeededCase run_seeded(LemmaKind kind, std::uint64_t seed) {
  SeededCase sc;
  sc.seed = seed;
  Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(kind) + 1));
  switch (kind) {
    case LemmaKind::FiltrationAxiom: {
      const auto fx = seeded_fixture(seed);
      const Rational c(2);
      const auto pool = random_pool(*fx.category, fx.filtration, c, 3, rng);
      sc.report = filtration_report(*fx.category, fx.filtration, 4, pool, c);
      sc.replay = document_json(fx, pool, {}, std::nullopt, c);
      tag(sc, fx.description);
      break;
    }
    case LemmaKind::GrowthToFiltration: {
      const auto fx = seeded_fixture(seed);
      const int o = static_cast<int>(seed % static_cast<std::uint64_t>(fx.category->object_count()));
      std::vector<Vec> sigma;
      const auto cocycles = endomorphism_cocycles(*fx.category, o);
      const int count = static_cast<int>(rng.uniform(1, 2));
      for (int k = 0; k < count && !cocycles.empty(); ++k) sigma.push_back(pick_nonzero_combination(cocycles, rng));
      if (sigma.empty()) sigma.push_back(fx.category->unit(o));
      const int n_max = 4;
      sc.report = verify_growth_to_filtration(*fx.category, fx.filtration, sigma, o, n_max);
      sc.replay = document_json(fx, {}, sigma, fx.category->object_name(o), std::nullopt);
      sc.replay["n_max"] = n_max;
      tag(sc, fx.description);
      break;
    }
    case LemmaKind::TwGeneratorBound: {
      const auto fx = seeded_fixture(seed);
      const Rational c(2);
      const auto q = multi_summand_complex(fx, c, rng, 4);
      const auto grid = int_grid(0, 10);
      TwCategory tw(*fx.category, {q});
      sc.report = verify_tw_generator_bound(tw, fx.filtration, 0, c, grid);
      sc.replay = document_json(fx, {q}, {}, std::nullopt, c);
      sc.replay["grid"] = grid_json(grid);
      tag(sc, fx.description);
      break;
    }
    case LemmaKind::TwActionObject: {
      FilteredFixture fx;
      Rational c;
      TwistedComplex q;
      if (seed % 2) {
        fx = free_algebra_fixture(2, 6);
        c = 1;
        std::vector<Vec> letters{Vec::unit(*fx.category->find_label("x")), Vec::unit(*fx.category->find_label("y"))};
        q = TwistedComplex{"Q", {{0, 0}, {0, 1}}, {{{0, 1}, pick_nonzero_combination(letters, rng)}}};
      } else {
        fx = seeded_fixture(seed);
        c = 2;
        q = multi_summand_complex(fx, c, rng, 3);
      }
      TwCategory tw(*fx.category, {q});
      const auto cocycles = endomorphism_cocycles(tw, 0);
      std::vector<Vec> sigma;
      const int count = static_cast<int>(rng.uniform(1, 2));
      for (int k = 0; k < count && !cocycles.empty(); ++k)
        sigma.push_back(cocycles[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(cocycles.size()) - 1))]);
      if (sigma.empty()) sigma.push_back(tw.unit(0));
      const int n_max = 3;
      sc.report = verify_tw_action_object(tw, fx.filtration, 0, c, sigma, n_max);
      sc.replay = document_json(fx, {q}, {}, std::nullopt, c);
      sc.replay["tw_sigma"] = tw_sigma_json(tw, sigma);
      sc.replay["n_max"] = n_max;
      tag(sc, fx.description);
      break;
    }
    case LemmaKind::TwRelations: {
      const auto fx = seeded_fixture(seed);
      const auto size = static_cast<std::size_t>(rng.uniform(1, 4));
      const auto pool = random_pool(*fx.category, fx.filtration, Rational(2), size, rng, {3, 20});
      sc.report = relations_report(*fx.category, pool, 3);
      sc.replay = document_json(fx, pool, {}, std::nullopt, std::nullopt);
      tag(sc, fx.description);
      break;
    }
    case LemmaKind::Retract: {
      const auto inst = random_retract_instance(seed);
      const int n_max = 8;
      const auto t = retract_transport(*inst.category, inst.sigma, inst.retracts, n_max);
      VerificationReport& r = sc.report;
      r.lemma = lemma_alias(kind);
      r.constants = {{"dim K", std::to_string(inst.category->dim(0))}, {"dim L", std::to_string(inst.category->dim(1))},
                     {"|sigma|", std::to_string(inst.sigma.size())}};
      r.columns = {"n", "d_n", "d_n(transported)", "equal"};
      for (int n = 1; n <= n_max; ++n)
        r.rows.push_back({std::to_string(n), std::to_string(t.original.at(n)), std::to_string(t.transported_table.at(n)),
                          t.original.at(n) == t.transported_table.at(n) ? "true" : "false"});
      r.pass = t.equal;
      sc.replay = io::Json::object();
      tag(sc, "retract instance");
      break;
    }
  }
  sc.replay["replay"] = replay_block(kind, seed);
  return sc;
}

SeededCase run_document(LemmaKind kind, const io::Json& j, int arity_bound) {
  if (j.is_object() && j.contains("replay") && !j.contains("basis")) {
    const auto& rb = j.at("replay");
    if (!rb.contains("seed") || !rb.at("seed").is_number_unsigned()) throw ValidationError("replay.seed: expected a seed");
    return run_seeded(kind, rb.at("seed").get<std::uint64_t>());
  }
  const auto doc = io::ainf_from_json(j);
  const AInfCategory& c = *doc.category;
  SeededCase sc;
  sc.replay = j;
  auto need_filtration = [&]() -> const FiltrationAssignment& {
    if (!doc.filtration) throw ValidationError("this check needs a level on every basis vector");
    return *doc.filtration;
  };
  auto need_threshold = [&]() -> Rational {
    if (!doc.threshold) throw ValidationError("this check needs a \"threshold\"");
    return *doc.threshold;
  };
  switch (kind) {
    case LemmaKind::FiltrationAxiom:
      sc.report = filtration_report(c, need_filtration(), std::max(arity_bound, 2), doc.twisted, doc.threshold);
      break;
    case LemmaKind::GrowthToFiltration: {
      if (doc.sigma.empty() || !doc.sigma_object) throw ValidationError("this check needs \"sigma\" and \"sigma_object\"");
      int o = 0;
      while (c.object_name(o) != *doc.sigma_object) ++o;
      sc.report = verify_growth_to_filtration(c, need_filtration(), doc.sigma, o, json_int(j, "n_max", 4));
      break;
    }
    case LemmaKind::TwGeneratorBound: {
      if (doc.twisted.empty()) throw ValidationError("this check needs a twisted complex");
      const int q = json_int(j, "complex", 0);
      if (q < 0 || q >= static_cast<int>(doc.twisted.size())) throw ValidationError("complex: index out of range");
      TwCategory tw(c, doc.twisted);
      sc.report = verify_tw_generator_bound(tw, need_filtration(), q, need_threshold(), json_grid(j, int_grid(0, 10)));
      break;
    }
    case LemmaKind::TwActionObject: {
      if (doc.twisted.size() != 1) throw ValidationError("this check needs exactly one twisted complex");
      TwCategory tw(c, doc.twisted);
      if (!j.contains("tw_sigma")) throw ValidationError("this check needs \"tw_sigma\"");
      sc.report = verify_tw_action_object(tw, need_filtration(), 0, need_threshold(), tw_sigma_from_json(tw, c, j.at("tw_sigma")),
                                 json_int(j, "n_max", 3));
      break;
    }
    case LemmaKind::TwRelations:
      sc.report = relations_report(c, doc.twisted, std::max(arity_bound, 2));
      break;
    case LemmaKind::Retract:
      throw ValidationError("retract instances are replayed by seed only");
  }
  if (sc.report.instance.empty()) sc.report.instance = "input document";
  return sc;
}

VerificationReport run_fixture(LemmaKind kind, const std::string& fixture, int window) {
  if (window < 1) throw ValidationError("window must be >= 1");
  auto group_of = [&]() {
    if (fixture == "surface") return GroupModel::surface_group(2, true);
    if (fixture == "free-group") return GroupModel::free_group(2);
    throw ValidationError("unknown fixture \"" + fixture + "\" (surface, free-group, free-algebra)");
  };
  if (kind == LemmaKind::FiltrationAxiom) {
    if (fixture == "free-algebra") {
      const auto fx = free_algebra_fixture(2, window);
      auto r = filtration_report(*fx.category, fx.filtration, 3, {}, std::nullopt);
      r.instance = fx.description;
      return r;
    }
    GroupAlgebraModel model(group_of(), window);
    LinearAsAInf ops(model);
    auto r = filtration_report(ops, FiltrationAssignment{model.levels()}, 2, {}, std::nullopt);
    r.instance = "group algebra of " + model.group().describe() + ", word length <= " + std::to_string(window);
    return r;
  }
  if (kind == LemmaKind::GrowthToFiltration) {
    if (fixture == "free-algebra") {
      const auto fx = free_algebra_fixture(2, window + 1);
      auto r = verify_growth_to_filtration(*fx.category, fx.filtration,
                                           {Vec::unit(*fx.category->find_label("x")), Vec::unit(*fx.category->find_label("y"))},
                                           0, window);
      r.instance = fx.description + ", sigma = {x, y}";
      return r;
    }
    GroupAlgebraModel model(group_of(), window);
    LinearAsAInf ops(model);
    std::vector<Vec> sigma;
    for (int l = 0; l < model.group().letter_count(); ++l) sigma.push_back(Vec::unit(model.letter(l)));
    auto r = verify_growth_to_filtration(ops, FiltrationAssignment{model.levels()}, sigma, 0, window);
    r.instance = "group algebra of " + model.group().describe() + ", sigma = generators and inverses";
    return r;
  }
  throw ValidationError("named fixtures exist for filtration-axiom and lemma-4-6 only");
}

}  // namespace algrowth
