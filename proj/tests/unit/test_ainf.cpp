#include <gtest/gtest.h>

#include "algrowth/ainf.hpp"
#include "algrowth/fixtures.hpp"
#include "algrowth/twisted.hpp"
#include <algorithm>

using namespace algrowth;

namespace {

/// k[x]/x^2 with |x| = deg and zero differential.
AInfCategory dual_numbers(long long deg) {
  AInfCategory c({"K"}, 0, 2);
  const Index e = c.add_basis(0, 0, 0, "e");
  c.add_basis(0, 0, deg, "x");
  c.set_unit(0, e);
  c.finalize();
  return c;
}

/// K with basis e (0), a (0), b (1), mu^1(a) = b, all other products zero.
AInfCategory square_zero_with_differential() {
  AInfCategory c({"K"}, 0, 2);
  const Index e = c.add_basis(0, 0, 0, "e");
  const Index a = c.add_basis(0, 0, 0, "a");
  const Index b = c.add_basis(0, 0, 1, "b");
  c.set_unit(0, e);
  c.set_mu({a}, Vec::unit(b));
  c.finalize();
  return c;
}

AInfCategory ground_field() {
  AInfCategory c({"K"}, 0, 2);
  c.set_unit(0, c.add_basis(0, 0, 0, "e"));
  c.finalize();
  return c;
}

}  // namespace

TEST(AInf, DualNumbersAreAInfinity) {
  for (long long deg : {0, 1, -2}) {
    const auto c = dual_numbers(deg);
    EXPECT_TRUE(check_ainf(c, 4).empty()) << deg;
  }
}

TEST(AInf, StrictUnitConvention) {
  const auto c = dual_numbers(1);
  const Index e = 0, x = 1;
  EXPECT_EQ(c.mu({e, x}), Vec::unit(x));
  EXPECT_EQ(c.mu({x, e}), Vec::unit(x, Rational(-1)));
}

TEST(AInf, FlippedSignIsReported) {
  // Path category of A -> B -> C -> D in degree 0.
  AInfCategory c({"A", "B", "C", "D"}, 0, 2);
  for (int o = 0; o < 4; ++o) c.set_unit(o, c.add_basis(o, o, 0, "e" + std::to_string(o)));
  const Index f = c.add_basis(0, 1, 0, "f"), g = c.add_basis(1, 2, 0, "g"), h = c.add_basis(2, 3, 0, "h");
  const Index fg = c.add_basis(0, 2, 0, "fg"), gh = c.add_basis(1, 3, 0, "gh"), fgh = c.add_basis(0, 3, 0, "fgh");
  c.set_mu({f, g}, Vec::unit(fg));
  c.set_mu({g, h}, Vec::unit(gh));
  c.set_mu({fg, h}, Vec::unit(fgh));
  c.set_mu({f, gh}, Vec::unit(fgh));
  c.finalize();
  ASSERT_TRUE(check_ainf(c, 4).empty());
  c.set_mu({f, gh}, Vec::unit(fgh, Rational(-1)));
  const auto bad = check_ainf(c, 4);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].kind, "relation");
  EXPECT_EQ(bad[0].inputs, (Tuple{f, g, h}));
  EXPECT_EQ(bad[0].residual, Vec::unit(fgh, Rational(2)));
}

TEST(AInf, TableValidation) {
  EXPECT_THROW(AInfCategory({"K"}, 3, 2), UnsupportedInput);
  EXPECT_THROW(AInfCategory({"K"}, 0, 1), ValidationError);
  AInfCategory c({"K", "L"}, 0, 2);
  const Index e = c.add_basis(0, 0, 0, "e");
  const Index f = c.add_basis(1, 1, 0, "f");
  const Index x = c.add_basis(0, 1, 1, "x");
  EXPECT_THROW(c.set_mu({x, x}, {}), ValidationError);               // not composable
  EXPECT_THROW(c.set_mu({e, x, f}, {}), ValidationError);            // above k_max
  EXPECT_THROW(c.set_mu({x}, Vec::unit(x)), ValidationError);        // degree 2 expected
  EXPECT_THROW(c.set_mu({e, x}, Vec::unit(e)), ValidationError);     // wrong hom space
  EXPECT_THROW(c.set_unit(0, x), ValidationError);
  EXPECT_THROW(c.add_basis(0, 1, 0, "x"), ValidationError);          // duplicate label
  c.set_unit(0, e);
  EXPECT_THROW(c.finalize(), ValidationError);                       // L has no unit
}

TEST(AInf, ExplicitUnitContradictionRejected) {
  AInfCategory c({"K"}, 0, 2);
  const Index e = c.add_basis(0, 0, 0, "e");
  const Index x = c.add_basis(0, 0, 1, "x");
  c.set_unit(0, e);
  c.set_mu({x, e}, Vec::unit(x));  // should be -x for odd x
  EXPECT_THROW(c.finalize(), ValidationError);
}

TEST(AInf, DgFixturesSatisfyRelations) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto fx = random_dg_fixture(seed);
    const auto bad = check_ainf(*fx.category, 4);
    EXPECT_TRUE(bad.empty()) << fx.description << ": " << (bad.empty() ? "" : describe(*fx.category, bad[0]));
  }
}

TEST(AInf, GaugeFixturesSatisfyRelations) {
  int with_mu3 = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto fx = random_gauge_fixture(seed, seed % 2 == 0 ? 4 : 3);
    if (fx.category->max_arity() >= 3) ++with_mu3;
    const auto bad = check_ainf(*fx.category, 5);
    EXPECT_TRUE(bad.empty()) << fx.description << ": " << (bad.empty() ? "" : describe(*fx.category, bad[0]));
  }
  EXPECT_GT(with_mu3, 0);
}

TEST(AInf, FixturesAreReproducible) {
  const auto a = random_gauge_fixture(42, 4), b = random_gauge_fixture(42, 4);
  EXPECT_EQ(a.category->table(), b.category->table());
  EXPECT_EQ(a.filtration.levels, b.filtration.levels);
}

TEST(Cohomology, ZeroDifferentialKeepsHoms) {
  const auto c = dual_numbers(0);
  const auto h = cohomology_category(c);
  EXPECT_EQ(h.category->basis_size(), 2);
  // x * x = 0 and e is the unit.
  const Index hx = h.classes_of(Vec::unit(1)).leading();
  EXPECT_TRUE(h.category->compose_basis(hx, hx).empty());
  EXPECT_EQ(h.category->unit(0), h.classes_of(Vec::unit(0)));
}

TEST(Cohomology, DifferentialKillsPairs) {
  const auto c = square_zero_with_differential();
  const auto h = cohomology_category(c);
  EXPECT_EQ(h.category->basis_size(), 1);  // only e survives
  EXPECT_THROW(h.classes_of(Vec::unit(1)), InvariantViolation);
  EXPECT_TRUE(h.classes_of(Vec::unit(2)).empty());
}

TEST(Cohomology, FixturesGiveCategories) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto fx = random_dg_fixture(seed);
    const auto h = cohomology_category(*fx.category);  // throws unless associative and unital
    Index total = 0;
    for (int k = 0; k < fx.category->object_count(); ++k)
      for (int l = 0; l < fx.category->object_count(); ++l)
        total += cohomology_dim(hom_complex(*fx.category, k, l));
    EXPECT_EQ(h.category->basis_size(), total);
    const auto gx = random_gauge_fixture(seed, 4);
    EXPECT_NO_THROW(cohomology_category(*gx.category));
  }
}

TEST(Twisted, ZeroDifferentialIsValid) {
  const auto fx = random_dg_fixture(3);
  TwistedComplex t{"T", {{0, 0}, {1, 2}, {0, -1}}, {}};
  EXPECT_TRUE(validate_twisted_complex(*fx.category, t).ok);
}

TEST(Twisted, TwoTermMaurerCartan) {
  const auto c = square_zero_with_differential();
  TwistedComplex good{"good", {{0, 0}, {0, 1}}, {{{0, 1}, Vec::unit(0)}}};
  EXPECT_TRUE(validate_twisted_complex(c, good).ok);
  TwistedComplex bad{"bad", {{0, 0}, {0, 1}}, {{{0, 1}, Vec::unit(1)}}};
  const auto v = validate_twisted_complex(c, bad);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.alpha, 0);
  EXPECT_EQ(v.beta, 1);
  EXPECT_EQ(v.residual, Vec::unit(2));
  TwistedComplex lower{"lower", {{0, 0}, {0, 1}}, {{{1, 0}, Vec::unit(0)}}};
  EXPECT_FALSE(validate_twisted_complex(c, lower).ok);
  TwistedComplex wrong_degree{"deg", {{0, 0}, {0, 0}}, {{{0, 1}, Vec::unit(0)}}};
  EXPECT_FALSE(validate_twisted_complex(c, wrong_degree).ok);
}

TEST(Twisted, ConeOfIdentityOverGroundField) {
  const auto k = ground_field();
  const auto cone = cone_of_identity(k, 0);
  const auto hom = tw_hom_complex(k, cone, cone);
  ASSERT_EQ(hom.complex.dim(), 4);
  EXPECT_EQ(rank(hom.complex.differential), 2);
  EXPECT_EQ(cohomology_dim(hom.complex), 0);

  // Hand computation with delta = e in block (0, 1): writing (i, j) for the
  // basis vector of block (i, j),
  //   mu1(0,0) = (0,1), mu1(1,1) = (0,1), mu1(1,0) = (0,0) - (1,1), mu1(0,1) = 0,
  //   mu2((i,j),(j,l)) = (-1)^{s_i} (i,l).
  TwCategory tw(k, {cone});
  auto at = [&](int i, int j) { return *tw.index_of(0, 0, i, j, 0); };
  EXPECT_EQ(tw.mu({at(0, 0)}), Vec::unit(at(0, 1)));
  EXPECT_EQ(tw.mu({at(1, 1)}), Vec::unit(at(0, 1)));
  EXPECT_EQ(tw.mu({at(1, 0)}), Vec::unit(at(0, 0)) - Vec::unit(at(1, 1)));
  EXPECT_TRUE(tw.mu({at(0, 1)}).empty());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        EXPECT_EQ(tw.mu({at(i, j), at(j, l)}), Vec::unit(at(i, l), i == 0 ? Rational(1) : Rational(-1)));
  EXPECT_TRUE(tw.mu({at(0, 1), at(0, 1)}).empty());
  EXPECT_TRUE(check_ainf(tw, 3).empty());
}

TEST(Twisted, ConeOfIdentityAcyclicOnFixtures) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fx = seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, 3);
    for (int o = 0; o < fx.category->object_count(); ++o) {
      const auto cone = cone_of_identity(*fx.category, o);
      EXPECT_EQ(cohomology_dim(tw_hom_complex(*fx.category, cone, cone).complex), 0) << fx.description;
    }
  }
}

TEST(Twisted, EmbeddingIsFullyFaithful) {
  const auto fx = random_gauge_fixture(5, 4);
  const AInfCategory& c = *fx.category;
  std::vector<TwistedComplex> pool;
  for (int o = 0; o < c.object_count(); ++o) pool.push_back(embedded_object(c, o));
  TwCategory tw(c, pool);
  ASSERT_EQ(tw.basis_size(), c.basis_size());
  auto lift = [&](Index b) { return *tw.index_of(c.basis(b).src, c.basis(b).tgt, 0, 0, b); };
  auto lift_vec = [&](const Vec& v) { return v.reindexed(lift); };
  for (Index b = 0; b < c.basis_size(); ++b) {
    EXPECT_EQ(tw.basis(lift(b)).degree, c.basis(b).degree);
    EXPECT_EQ(tw.mu({lift(b)}), lift_vec(c.mu({b})));
    for (Index b2 : c.basis_from(c.basis(b).tgt)) {
      EXPECT_EQ(tw.mu({lift(b), lift(b2)}), lift_vec(c.mu({b, b2})));
      for (Index b3 : c.basis_from(c.basis(b2).tgt))
        EXPECT_EQ(tw.mu({lift(b), lift(b2), lift(b3)}), lift_vec(c.mu({b, b2, b3})));
    }
  }
  for (int o = 0; o < c.object_count(); ++o) EXPECT_EQ(tw.unit(o), lift_vec(c.unit(o)));
}

TEST(Twisted, RandomComplexesAreValid) {
  Rng rng(11);
  int nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fx = seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, 4);
    for (int i = 0; i < 5; ++i) {
      auto t = random_twisted_complex(*fx.category, fx.filtration, Rational(2), rng);
      if (!t) continue;
      EXPECT_TRUE(validate_twisted_complex(*fx.category, *t).ok);
      if (!t->delta.empty()) ++nontrivial;
    }
  }
  EXPECT_GT(nontrivial, 5);
}

TEST(Twisted, TwSatisfiesRelations) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto fx = seed % 2 ? random_dg_fixture(seed) : random_gauge_fixture(seed, 3);
    Rng rng(Rng::derive(99, seed));
    TwCategory tw(*fx.category, random_pool(*fx.category, fx.filtration, Rational(2), 3, rng));
    const auto bad = check_ainf(tw, 3);
    EXPECT_TRUE(bad.empty()) << fx.description << ": " << (bad.empty() ? "" : describe(tw, bad[0]));
  }
}

TEST(Twisted, MuChecksComposability) {
  const auto k = ground_field();
  TwCategory tw(k, {embedded_object(k, 0), cone_of_identity(k, 0)});
  const Vec a = Vec::unit(*tw.index_of(0, 1, 0, 0, 0));
  EXPECT_THROW(tw_mu(tw, {a, a}), ValidationError);
  const Vec u = tw.unit(1);
  EXPECT_EQ(tw_mu(tw, {a, u}), a);
}
