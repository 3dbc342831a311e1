#include <gtest/gtest.h>

#include <map>

#include "algrowth/fpcat.hpp"
#include "algrowth/random.hpp"
#include "oracles/brute.hpp"

using namespace algrowth;

namespace {

TermSpec term(int coeff, std::vector<std::string> word) { return TermSpec{Rational(coeff), std::move(word), {}}; }

Presentation one_object(std::vector<std::string> gens, std::vector<RelationSpec> rels = {}) {
  Presentation p;
  p.objects = {"A"};
  for (auto& g : gens) p.generators.push_back({g, "A", "A", 0});
  p.relations = std::move(rels);
  return p;
}

Presentation commutative() { return one_object({"x", "y"}, {{term(1, {"x", "y"}), term(-1, {"y", "x"})}}); }

SigmaSpec gens_sigma(std::vector<std::string> gens) {
  SigmaSpec s;
  for (auto& g : gens) s.push_back({term(1, {g})});
  return s;
}

std::vector<Count> dims(const GrowthTable& t) { return t.dims; }

}  // namespace

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(one_object({"x", "y"})).empty());
  EXPECT_TRUE(validate(commutative()).empty());

  Presentation bad;
  bad.objects = {"A", "B", "C"};
  bad.generators = {{"f", "A", "B", 0}, {"g", "C", "A", 0}};
  bad.relations = {{term(1, {"f", "g"})}};
  const auto issues = validate(bad);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_NE(issues[0].find("relation 0"), std::string::npos);
  EXPECT_NE(issues[0].find("not composable"), std::string::npos);
}

TEST(Validate, ReportsEveryProblem) {
  Presentation p;
  p.objects = {"A"};
  p.generators = {{"x", "A", "A", 1}, {"x", "A", "Z", 0}, {"y", "A", "A", 0}};
  p.relations = {{term(1, {"x", "x"}), term(1, {"y"})}, {term(0, {"y"})}, {term(1, {"q"})}};
  const auto issues = validate(p);
  auto has = [&](const std::string& s) {
    for (const auto& i : issues)
      if (i.find(s) != std::string::npos) return true;
    return false;
  };
  EXPECT_TRUE(has("duplicate generator"));
  EXPECT_TRUE(has("unknown target object 'Z'"));
  EXPECT_TRUE(has("relation 0 term 1: degree"));
  EXPECT_TRUE(has("relation 0 term 1: word length"));
  EXPECT_TRUE(has("relation 1 term 0: zero coefficient"));
  EXPECT_TRUE(has("relation 2 term 0: unknown generator 'q'"));
  EXPECT_THROW(FpCategory{p}, ValidationError);
}

TEST(Validate, DegreesModuloN) {
  Presentation p = one_object({"x", "y"});
  p.grading_modulus = 2;
  p.generators[0].degree = 1;
  p.generators[1].degree = 3;
  p.relations = {{term(1, {"x"}), term(1, {"y"})}};
  EXPECT_TRUE(validate(p).empty());
  p.grading_modulus = 0;
  EXPECT_FALSE(validate(p).empty());
}

TEST(Ideal, FreeAlgebraIsEmpty) {
  FpCategory cat(one_object({"x", "y"}));
  EXPECT_EQ(ideal_basis_up_to(cat, 5).dim(), 0);
}

TEST(Ideal, SquareZero) {
  FpCategory cat(one_object({"x"}, {{term(1, {"x", "x"})}}));
  const auto ideal = ideal_basis_up_to(cat, 3);
  EXPECT_TRUE(ideal.exact);
  EXPECT_EQ(ideal.dim(), 2);
  EXPECT_EQ(ideal.dim_at_length(cat.words(), 2), 1);
  EXPECT_EQ(ideal.dim_at_length(cat.words(), 3), 1);
}

TEST(Ideal, Commutativity) {
  FpCategory cat(commutative());
  const auto ideal = ideal_basis_up_to(cat, 3);
  EXPECT_EQ(ideal.dim_at_length(cat.words(), 2), 1);
  // x(xy-yx), (xy-yx)x, y(xy-yx), (xy-yx)y are independent
  EXPECT_EQ(ideal.dim_at_length(cat.words(), 3), 4);
  // words of length l minus monomials of degree l
  const auto deep = ideal_basis_up_to(cat, 8);
  for (int l = 1; l <= 8; ++l) EXPECT_EQ(deep.dim_at_length(cat.words(), l), (1 << l) - (l + 1));
}

TEST(WordGrowth, FreeAlgebra) {
  FpCategory cat(one_object({"x", "y"}));
  const auto t = word_growth(cat, gens_sigma({"x", "y"}), 12);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(t.at(n), (Count{1} << (n + 1)) - 2);
  EXPECT_TRUE(t.all_exact());
  EXPECT_EQ(dims(word_growth_at_object(cat, gens_sigma({"x", "y"}), "A", 12)), t.dims);
}

TEST(WordGrowth, SquareZero) {
  FpCategory cat(one_object({"x"}, {{term(1, {"x", "x"})}}));
  const auto t = word_growth(cat, gens_sigma({"x"}), 6);
  EXPECT_EQ(t.dims, std::vector<Count>(6, 1));
}

TEST(WordGrowth, SingleArrowQuiver) {
  Presentation p;
  p.objects = {"A", "B"};
  p.generators = {{"f", "A", "B", 0}};
  FpCategory cat(p);
  EXPECT_EQ(word_growth(cat, gens_sigma({"f"}), 5).dims, std::vector<Count>(5, 1));
  EXPECT_EQ(word_growth_at_object(cat, gens_sigma({"f"}), "A", 5).dims, std::vector<Count>(5, 0));
  EXPECT_THROW(word_growth_at_object(cat, gens_sigma({"f"}), "Q", 5), ValidationError);
}

TEST(WordGrowth, CommutativeAtObject) {
  FpCategory cat(commutative());
  const auto t = word_growth_at_object(cat, gens_sigma({"x", "y"}), "A", 9);
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(t.at(n), static_cast<Count>((n + 1) * (n + 2) / 2 - 1));
}

TEST(WordGrowth, EmptySigmaAndZeroElement) {
  FpCategory cat(one_object({"x"}, {{term(1, {"x", "x"})}}));
  EXPECT_THROW(word_growth(cat, {}, 3), ValidationError);
  const auto t = word_growth(cat, {{term(1, {"x", "x"})}, {term(1, {"x"})}}, 3);
  ASSERT_EQ(t.warnings.size(), 1u);
  EXPECT_NE(t.warnings[0].find("sigma element 0"), std::string::npos);
  EXPECT_EQ(t.dims, std::vector<Count>(3, 1));
}

namespace {

// Products of sigma elements computed as commutative polynomials in x, y:
// the quotient by xy - yx is the polynomial ring, so this is an independent
// model of the commutative fixture.
using Poly = std::map<std::pair<int, int>, Rational>;

Poly poly_of(const MorphismExpr& e) {
  Poly p;
  for (const auto& t : e) {
    int a = 0, b = 0;
    for (const auto& g : t.word) (g == "x" ? a : b)++;
    p[{a, b}] += t.coeff;
  }
  return p;
}

Poly mul(const Poly& p, const Poly& q) {
  Poly r;
  for (const auto& [m1, c1] : p)
    for (const auto& [m2, c2] : q) r[{m1.first + m2.first, m1.second + m2.second}] += c1 * c2;
  return r;
}

std::vector<std::string> random_word(Rng& rng, int len) {
  std::vector<std::string> w;
  for (int i = 0; i < len; ++i) w.push_back(rng.coin() ? "x" : "y");
  return w;
}

}  // namespace

TEST(WordGrowth, CommutativeMatchesPolynomialModel) {
  for (int seed = 0; seed < 8; ++seed) {
    Rng rng(Rng::derive(11, static_cast<std::uint64_t>(seed)));
    SigmaSpec sigma;
    const int k = static_cast<int>(rng.uniform(1, 3));
    for (int i = 0; i < k; ++i) {
      MorphismExpr e;
      const int len = static_cast<int>(rng.uniform(1, 2));
      std::set<std::vector<std::string>> used;
      for (int t = 0; t < 2; ++t) {
        auto w = random_word(rng, len);
        if (!used.insert(w).second) continue;
        e.push_back(term(static_cast<int>(rng.uniform(1, 3)), w));
      }
      sigma.push_back(e);
    }
    const int n_max = 4;
    FpCategory cat(commutative());
    const auto t = word_growth(cat, sigma, n_max);

    // all products of at most n sigma elements, as dense coefficient rows
    std::vector<Poly> layer, all;
    for (const auto& e : sigma) layer.push_back(poly_of(e));
    all = layer;
    for (int n = 1; n <= n_max; ++n) {
      if (n > 1) {
        std::vector<Poly> next;
        for (const auto& p : layer)
          for (const auto& e : sigma) next.push_back(mul(p, poly_of(e)));
        layer = next;
        all.insert(all.end(), layer.begin(), layer.end());
      }
      std::map<std::pair<int, int>, int> col;
      for (const auto& p : all)
        for (const auto& [m, c] : p) col.emplace(m, static_cast<int>(col.size()));
      oracle::Dense d(all.size(), std::vector<Rational>(col.size()));
      for (std::size_t r = 0; r < all.size(); ++r)
        for (const auto& [m, c] : all[r]) d[r][static_cast<std::size_t>(col[m])] = c;
      EXPECT_EQ(t.at(n), static_cast<Count>(oracle::dense_rank(d))) << "seed " << seed << " n " << n;
    }
  }
}

TEST(WordGrowth, Invariants) {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(Rng::derive(5, static_cast<std::uint64_t>(seed)));
    Presentation p;
    p.objects = {"A", "B"};
    p.generators = {{"a", "A", "A", 0}, {"b", "A", "B", 0}, {"c", "B", "A", 0}, {"d", "B", "B", 0}};
    if (rng.coin()) p.relations.push_back({term(1, {"a", "b"}), term(-1, {"b", "d"})});
    if (rng.coin()) p.relations.push_back({term(1, {"c", "b"})});
    FpCategory cat(p);
    SigmaSpec sigma = gens_sigma({"a", "b", "c", "d"});
    sigma.resize(static_cast<std::size_t>(rng.uniform(2, 4)));
    const auto t = word_growth(cat, sigma, 7);
    Count bound = 0, power = 1;
    for (int n = 1; n <= 7; ++n) {
      power *= sigma.size();
      bound += power;
      EXPECT_LE(t.at(n), bound);
      if (n > 1) EXPECT_GE(t.at(n), t.at(n - 1));
    }
  }
}

TEST(WordGrowth, FaithfulEmbedding) {
  Presentation p;
  p.objects = {"A", "B", "C"};
  p.generators = {{"x", "A", "A", 0}, {"y", "A", "A", 0}, {"f", "A", "B", 0},
                  {"z", "B", "B", 0}, {"g", "C", "A", 0}};
  p.relations = {{term(1, {"x", "y"}), term(-1, {"y", "x"})}, {term(1, {"x", "f"}), term(-1, {"f", "z"})}};
  FpCategory ambient(p);
  const SigmaSpec sigma = {{term(1, {"x"})}, {term(1, {"y"}), term(2, {"x"})}, {term(1, {"f"})}};

  const auto sub_p = restrict_objects(p, {"A", "B"});
  FpCategory sub(sub_p);
  EXPECT_EQ(word_growth(ambient, sigma, 6).dims, word_growth(sub, sigma, 6).dims);
  EXPECT_EQ(word_growth_at_object(ambient, sigma, "A", 6).dims, word_growth_at_object(sub, sigma, "A", 6).dims);

  Presentation loop = p;
  loop.generators.push_back({"h", "B", "C", 0});
  EXPECT_THROW(restrict_objects(loop, {"A", "B"}), InvariantViolation);
}

TEST(WordGrowth, CategoryToObjectBound) {
  for (int seed = 0; seed < 6; ++seed) {
    Rng rng(Rng::derive(21, static_cast<std::uint64_t>(seed)));
    const int objects = static_cast<int>(rng.uniform(2, 4));
    Presentation p;
    for (int o = 0; o < objects; ++o) p.objects.push_back("O" + std::to_string(o));
    SigmaSpec sigma;
    for (int g = 0; g < objects + 2; ++g) {
      const std::string name = "g" + std::to_string(g);
      p.generators.push_back({name, p.objects[rng.uniform(0, objects - 1)], p.objects[rng.uniform(0, objects - 1)], 0});
      sigma.push_back({term(1, {name})});
    }
    FpCategory cat(p);
    const auto check = check_category_to_object(cat, sigma, 8);
    EXPECT_TRUE(check.pass) << "seed " << seed;
  }
}

TEST(WordGrowth, InhomogeneousModeIsFlaggedUpperBound) {
  // x^2 = x: the algebra is spanned by 1 and x.
  Presentation p = one_object({"x"}, {{term(1, {"x", "x"}), term(-1, {"x"})}});
  EXPECT_FALSE(validate(p).empty());
  p.inhomogeneous = true;
  FpCategory cat(p);
  const auto t = word_growth(cat, gens_sigma({"x"}), 5);
  EXPECT_FALSE(t.all_exact());
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(t.at(n), 1u);
  const auto ideal = ideal_basis_up_to(cat, 3, 1);
  EXPECT_FALSE(ideal.exact);
  EXPECT_EQ(ideal.dim(), 2);  // x^2 - x, x^3 - x
}

TEST(Classify, Examples) {
  std::vector<Count> free(15), square(20), one(10, 1), zero(10, 0);
  for (int n = 1; n <= 15; ++n) free[n - 1] = (Count{1} << (n + 1)) - 2;
  for (int n = 1; n <= 20; ++n) square[n - 1] = static_cast<Count>(n * n);
  const auto e = classify_values(free, 4, 14);
  EXPECT_EQ(e.verdict, Verdict::Exponential);
  EXPECT_NEAR(e.rate, std::log(2.0), 0.05);
  const auto p = classify_values(square, 4, 20);
  EXPECT_EQ(p.verdict, Verdict::Polynomial);
  EXPECT_NEAR(p.rate, 2.0, 0.1);
  const auto c = classify_values(one, 1, 10);
  EXPECT_EQ(c.verdict, Verdict::Polynomial);
  EXPECT_EQ(c.rate, 0.0);
  const auto z = classify_values(zero, 1, 10);
  EXPECT_EQ(z.verdict, Verdict::Polynomial);
  EXPECT_TRUE(z.zero_table);
  EXPECT_THROW(classify_values(one, 2, 5), ValidationError);
  EXPECT_EQ(e.rate_exact, exact_from_double(e.rate));
}
