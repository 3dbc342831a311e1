#include <gtest/gtest.h>

#include <cmath>

#include "algrowth/ainf.hpp"
#include "algrowth/filt.hpp"
#include "algrowth/fixtures.hpp"
#include "algrowth/loopmodels.hpp"
#include "algrowth/twisted.hpp"
#include "oracles/group_oracle.hpp"

using namespace algrowth;

namespace {

/// One object, basis e (0), z (1), u (1), w (0) with mu^1(w) = z; levels
/// e:0, z:0, u:1, w:w_level. Products with e only.
struct SmallComplex {
  AInfCategory c{{"K"}, 0, 2};
  FiltrationAssignment f;
  Index e, z, u, w;
  explicit SmallComplex(long long z_level = 0, long long w_level = 2) {
    e = c.add_basis(0, 0, 0, "e");
    z = c.add_basis(0, 0, 1, "z");
    u = c.add_basis(0, 0, 1, "u");
    w = c.add_basis(0, 0, 0, "w");
    c.set_unit(0, e);
    c.set_mu({w}, Vec::unit(z));
    c.finalize();
    f.levels = {Rational(0), Rational(z_level), Rational(1), Rational(w_level)};
  }
};

std::vector<Rational> int_grid(int lo, int hi) {
  std::vector<Rational> g;
  for (int x = lo; x <= hi; ++x) g.emplace_back(x);
  return g;
}

/// Exhaustive check of the filtration axiom on Tw with the induced levels.
void expect_tw_filtered(const FilteredFixture& fx, std::uint64_t seed, int arity, const Rational& c) {
  Rng rng(seed);
  const auto pool = random_pool(*fx.category, fx.filtration, c, 3, rng);
  TwCategory tw(*fx.category, pool);
  ASSERT_TRUE(check_ainf(tw, arity).empty());
  const auto phi = tw_filtration(tw, fx.filtration, c);
  EXPECT_TRUE(check_filtration_axiom(tw, phi, arity).empty()) << fx.description;
  EXPECT_TRUE(check_subcomplex_closure(tw, phi).empty());
}

}  // namespace

TEST(FiltrationAxiom, DifferentialExamples) {
  SmallComplex ok(0, 2);
  EXPECT_TRUE(check_filtration_axiom(ok.c, ok.f, 3).empty());
  SmallComplex bad(3, 2);
  const auto v = check_filtration_axiom(bad.c, bad.f, 3);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].inputs, (Tuple{bad.w}));
  EXPECT_EQ(v[0].component, bad.z);
  EXPECT_EQ(v[0].excess, Rational(1));
  EXPECT_FALSE(check_subcomplex_closure(bad.c, bad.f).empty());
}

TEST(FiltrationAxiom, GroupAlgebraWordLength) {
  for (const auto& g : {GroupModel::surface_group(2, true), GroupModel::free_group(2)}) {
    GroupAlgebraModel model(g, 3);
    LinearAsAInf ops(model);
    EXPECT_TRUE(check_filtration_axiom(ops, FiltrationAssignment{model.levels()}, 2).empty()) << g.describe();
  }
}

TEST(FiltrationAxiom, FixturesSatisfyAxiom) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto fx = seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, 4);
    EXPECT_TRUE(check_filtration_axiom(*fx.category, fx.filtration, 4).empty()) << fx.description;
    EXPECT_TRUE(check_subcomplex_closure(*fx.category, fx.filtration).empty());
  }
}

TEST(FiltrationAxiom, SizeMismatchRejected) {
  SmallComplex s;
  FiltrationAssignment f{{Rational(0)}};
  EXPECT_THROW(check_filtration_axiom(s.c, f, 2), DimensionMismatch);
}

TEST(Persistence, HandExamples) {
  {
    AInfCategory c({"K"}, 0, 2);
    c.set_unit(0, c.add_basis(0, 0, 0, "e"));
    c.add_basis(0, 0, 0, "x");
    c.finalize();
    FiltrationAssignment f{{Rational(0), Rational(1)}};
    EXPECT_EQ(persistence_dim(c, f, 0, 0, Rational(0)), 1u);
    EXPECT_EQ(persistence_dim(c, f, 0, 0, Rational(1)), 2u);
    EXPECT_EQ(persistence_dim(c, f, 0, 0, Rational(-1)), 0u);
  }
  // Only z, u, w (no unit): z dies, u is a cycle at level 1.
  const Matrix d = Matrix::from_rows(3, {Vec{}, Vec{}, Vec::unit(0)});
  const Complex cx{d};
  const std::vector<Rational> zw_levels{Rational(0), Rational(1), Rational(2)};
  EXPECT_EQ(persistence_dim(cx, zw_levels, Rational(0)), 0u);
  EXPECT_EQ(persistence_dim(cx, zw_levels, Rational(1)), 1u);
  EXPECT_EQ(persistence_dim(cx, zw_levels, Rational(5)), 1u);
  const Complex zw{Matrix::from_rows(2, {Vec{}, Vec::unit(0)})};
  for (int x = 0; x < 4; ++x) EXPECT_EQ(persistence_dim(zw, {Rational(0), Rational(2)}, Rational(x)), 0u);
}

TEST(Persistence, FreeGroupProfile) {
  GroupAlgebraModel model(GroupModel::free_group(2), 6);
  LinearAsAInf ops(model);
  const auto p = filtered_growth_profile(ops, FiltrationAssignment{model.levels()}, 0, 0, int_grid(0, 6));
  const auto balls = oracle::free_group_ball_enumerated(2, 6);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(p.values[static_cast<std::size_t>(n)], balls[static_cast<std::size_t>(n)]);
  ASSERT_TRUE(p.rate.has_value());
  EXPECT_NEAR(*p.rate, std::log(3.0), 0.05);
}

TEST(Persistence, AcyclicAndDegenerateProfiles) {
  const Complex zw{Matrix::from_rows(2, {Vec{}, Vec::unit(0)})};
  const auto acyclic = make_profile("K->K", int_grid(0, 5), std::vector<Count>(6, 0));
  EXPECT_FALSE(acyclic.rate.has_value());

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto fx = random_dg_fixture(seed);
    const auto zero = zero_filtration(*fx.category);
    for (int k = 0; k < fx.category->object_count(); ++k) {
      const Count h = static_cast<Count>(cohomology_dim(hom_complex(*fx.category, k, k)));
      const auto p = filtered_growth_profile(*fx.category, zero, k, k, int_grid(0, 4));
      for (Count v : p.values) EXPECT_EQ(v, h);
    }
  }
}

TEST(Persistence, MonotoneAndBounded) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fx = seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, 3);
    const int n = fx.category->object_count();
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const Count h = static_cast<Count>(cohomology_dim(hom_complex(*fx.category, k, l)));
        const auto p = filtered_growth_profile(*fx.category, fx.filtration, k, l, int_grid(-1, 6));
        for (std::size_t i = 0; i < p.values.size(); ++i) {
          EXPECT_LE(p.values[i], h);
          if (i) EXPECT_LE(p.values[i - 1], p.values[i]);
        }
        EXPECT_EQ(p.values.back(), h);
      }
  }
}

TEST(TwFiltration, OneSummandLevelsUnchanged) {
  const auto fx = random_dg_fixture(4);
  std::vector<TwistedComplex> pool;
  for (int o = 0; o < fx.category->object_count(); ++o) pool.push_back(embedded_object(*fx.category, o));
  TwCategory tw(*fx.category, pool);
  const auto phi = tw_filtration(tw, fx.filtration, Rational(1));
  for (Index i = 0; i < tw.basis_size(); ++i) EXPECT_EQ(phi.levels[static_cast<std::size_t>(i)], fx.filtration.levels[static_cast<std::size_t>(tw.coord(i).b)]);
}

TEST(TwFiltration, TwoSummandShift) {
  AInfCategory k({"K"}, 0, 2);
  k.set_unit(0, k.add_basis(0, 0, 0, "e"));
  k.finalize();
  FiltrationAssignment f{{Rational(0)}};
  const auto cone = cone_of_identity(k, 0);
  TwCategory tw(k, {cone});
  const auto phi = tw_filtration(tw, f, Rational(1));
  auto level = [&](int i, int j) { return phi.levels[static_cast<std::size_t>(*tw.index_of(0, 0, i, j, 0))]; };
  EXPECT_EQ(level(0, 0), Rational(0));
  EXPECT_EQ(level(1, 1), Rational(0));
  EXPECT_EQ(level(0, 1), Rational(-1));
  EXPECT_EQ(level(1, 0), Rational(1));
  EXPECT_TRUE(check_filtration_axiom(tw, phi, 3).empty());
  // Threshold below the level of delta: inadmissible.
  FiltrationAssignment high{{Rational(2)}};
  EXPECT_THROW(tw_filtration(tw, high, Rational(1)), ValidationError);
  EXPECT_THROW(tw_filtration(tw, f, Rational(0)), ValidationError);
  EXPECT_EQ(inadmissible_entry(k, high, cone, Rational(1)), (std::optional<std::pair<int, int>>{{0, 1}}));
}

TEST(TwFiltration, InducedFiltrationOnFixtures) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto fx = seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, 3);
    expect_tw_filtered(fx, Rng::derive(5, seed), 3, Rational(2));
  }
}

TEST(GrowthToFiltration, FreeAlgebraIsTightUpToUnit) {
  const auto fx = free_algebra_fixture(2, 8);
  const Vec x = Vec::unit(*fx.category->find_label("x")), y = Vec::unit(*fx.category->find_label("y"));
  const auto r = verify_growth_to_filtration(*fx.category, fx.filtration, {x, y}, 0, 7);
  EXPECT_TRUE(r.pass) << r.to_text();
  ASSERT_EQ(r.rows.size(), 7u);
  for (int n = 1; n <= 7; ++n) {
    const auto& row = r.rows[static_cast<std::size_t>(n - 1)];
    EXPECT_EQ(row[3], std::to_string((1ull << (n + 1)) - 2));
    // The unit sits at level 0 and is not a word in sigma.
    EXPECT_EQ(row[2], std::to_string((1ull << (n + 1)) - 1));
  }
}

TEST(GrowthToFiltration, SurfaceGroupWindow) {
  GroupAlgebraModel model(GroupModel::surface_group(2, true), 4);
  LinearAsAInf ops(model);
  std::vector<Vec> sigma;
  for (int l = 0; l < model.group().letter_count(); ++l) sigma.push_back(Vec::unit(model.letter(l)));
  const auto r = verify_growth_to_filtration(ops, FiltrationAssignment{model.levels()}, sigma, 0, 4);
  EXPECT_TRUE(r.pass) << r.to_text();
  const auto balls = oracle::surface_group_ball_closure(2, true, 4);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(r.rows[static_cast<std::size_t>(n - 1)][2], std::to_string(balls[static_cast<std::size_t>(n)]));
}

TEST(GrowthToFiltration, UnitOnly) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto fx = random_dg_fixture(seed);
    for (int o = 0; o < fx.category->object_count(); ++o) {
      // The unit class vanishes exactly when End(o) is acyclic.
      const bool acyclic = cohomology_dim(hom_complex(*fx.category, o, o)) == 0;
      const auto r = verify_growth_to_filtration(*fx.category, fx.filtration, {fx.category->unit(o)}, o, 3);
      EXPECT_TRUE(r.pass);
      EXPECT_EQ(r.constants.front(), (std::pair<std::string, std::string>{"B", "0"}));
      for (const auto& row : r.rows) EXPECT_EQ(row[3], acyclic ? "0" : "1");
      if (!acyclic) ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(GrowthToFiltration, NonCocycleRejected) {
  SmallComplex s;
  EXPECT_THROW(verify_growth_to_filtration(s.c, s.f, {Vec::unit(s.w)}, 0, 2), InvariantViolation);
}

TEST(TwGeneratorBound, SingleSummandAlwaysPasses) {
  const auto fx = random_dg_fixture(6);
  TwCategory tw(*fx.category, {embedded_object(*fx.category, 0)});
  const auto r = verify_tw_generator_bound(tw, fx.filtration, 0, Rational(1), int_grid(-1, 6));
  EXPECT_TRUE(r.pass) << r.to_text();
}

TEST(TwGeneratorBound, ConeOverFixture) {
  const auto fx = random_dg_fixture(8);
  const Rational c = *std::max_element(fx.filtration.levels.begin(), fx.filtration.levels.end());
  TwCategory tw(*fx.category, {cone_of_identity(*fx.category, 0)});
  const auto r = verify_tw_generator_bound(tw, fx.filtration, 0, std::max(c, Rational(1)), int_grid(0, 6));
  EXPECT_TRUE(r.pass) << r.to_text();
}

TEST(TwGeneratorBound, SeededComplexes) {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 12 && seed <= 40; ++seed) {
    const auto fx = seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, 4);
    Rng rng(Rng::derive(48, seed));
    const auto q = random_twisted_complex(*fx.category, fx.filtration, Rational(2), rng, {4, 20});
    if (!q || q->summands.size() < 2) continue;
    TwCategory tw(*fx.category, {*q});
    const auto r = verify_tw_generator_bound(tw, fx.filtration, 0, Rational(2), int_grid(0, 8));
    EXPECT_TRUE(r.pass) << r.to_text();
    ++checked;
  }
  EXPECT_EQ(checked, 12);
}

TEST(TwActionObject, ImageOfBaseReduces) {
  const auto fx = free_algebra_fixture(2, 6);
  TwCategory tw(*fx.category, {embedded_object(*fx.category, 0)});
  const Index x = *fx.category->find_label("x"), y = *fx.category->find_label("y");
  const auto base = verify_growth_to_filtration(*fx.category, fx.filtration, {Vec::unit(x), Vec::unit(y)}, 0, 5);
  const auto lifted = verify_growth_to_filtration(tw, tw_filtration(tw, fx.filtration, Rational(1)),
                                                  {tw.embed(0, 0, 0, 0, Vec::unit(x)), tw.embed(0, 0, 0, 0, Vec::unit(y))},
                                                  0, 5);
  EXPECT_EQ(base.rows, lifted.rows);
  const auto r = verify_tw_action_object(tw, fx.filtration, 0, Rational(1),
                                {tw.embed(0, 0, 0, 0, Vec::unit(x)), tw.embed(0, 0, 0, 0, Vec::unit(y))}, 5);
  EXPECT_TRUE(r.pass) << r.to_text();
}

TEST(TwActionObject, TwoSummandOverFreeAlgebra) {
  const auto fx = free_algebra_fixture(2, 6);
  const Index x = *fx.category->find_label("x");
  // Q = K --x--> K[1]; x has level 1 <= c and mu^1 = 0, so delta = x is Maurer-Cartan.
  TwistedComplex q{"Q", {{0, 0}, {0, 1}}, {{{0, 1}, Vec::unit(x)}}};
  ASSERT_TRUE(validate_twisted_complex(*fx.category, q).ok);
  TwCategory tw(*fx.category, {q});
  // diag(x, +-x) commutes with delta = x for one of the two signs.
  std::vector<Vec> sigma;
  for (int s : {1, -1}) {
    const Vec v = tw.embed(0, 0, 0, 0, Vec::unit(x)) + Rational(s) * tw.embed(0, 0, 1, 1, Vec::unit(x));
    if (tw.mu_vectors({v}).empty()) sigma.push_back(v);
  }
  ASSERT_EQ(sigma.size(), 1u);
  const auto r = verify_tw_action_object(tw, fx.filtration, 0, Rational(1), sigma, 4);
  EXPECT_TRUE(r.pass) << r.to_text();
  EXPECT_THROW(verify_tw_action_object(tw, fx.filtration, 0, Rational(1), sigma, 0), ValidationError);
}
