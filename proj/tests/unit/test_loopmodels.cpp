#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "algrowth/loopmodels.hpp"
#include "algrowth/random.hpp"
#include "oracles/group_oracle.hpp"

using namespace algrowth;

namespace {

std::vector<long> as_long(const std::vector<BigInt>& v, std::size_t n) {
  std::vector<long> out;
  for (std::size_t i = 0; i < n && i < v.size(); ++i) out.push_back(v[i].convert_to<long>());
  return out;
}

}  // namespace

TEST(Hilbert, Examples) {
  EXPECT_EQ(as_long(tensor_hilbert({1, 1}, 4).coefficients, 5), (std::vector<long>{1, 2, 4, 8, 16}));
  EXPECT_EQ(as_long(tensor_hilbert({2}, 4).coefficients, 5), (std::vector<long>{1, 0, 1, 0, 1}));
  EXPECT_EQ(as_long(tensor_hilbert({1, 2}, 4).coefficients, 5), (std::vector<long>{1, 1, 2, 3, 5}));
  EXPECT_THROW(tensor_hilbert({0, 1}, 4), ValidationError);
}

TEST(Witt, Examples) {
  const auto two = graded_witt_dims({1, 1}, 6);
  EXPECT_EQ(two.lie_dims[1], 2);
  EXPECT_EQ(two.lie_dims[2], 3);
  const auto even = graded_witt_dims({2}, 10);
  for (int j = 1; j <= 10; ++j) EXPECT_EQ(even.lie_dims[static_cast<std::size_t>(j)], j == 2 ? 1 : 0) << j;
  const auto odd = graded_witt_dims({3}, 5);
  for (int j = 1; j <= 5; ++j) EXPECT_EQ(odd.lie_dims[static_cast<std::size_t>(j)], j == 3 ? 1 : 0) << j;
  // an odd generator squares into degree 6
  EXPECT_EQ(graded_witt_dims({3}, 6).lie_dims[6], 1);
}

TEST(Witt, ClassicalNecklaceCountsForEvenGenerators) {
  // Generators of degree 2 are even, so l_{2j} equals the ungraded Witt number
  // (1/j) sum_{d | j} mu(d) 2^{j/d} for two generators.
  const auto w = graded_witt_dims({2, 2}, 16);
  const long expected[] = {0, 2, 1, 2, 3, 6, 9, 18, 30};
  for (int j = 1; j <= 8; ++j) EXPECT_EQ(w.lie_dims[static_cast<std::size_t>(2 * j)], expected[j]) << j;
}

TEST(Pbw, RoundTrips) {
  EXPECT_TRUE(pbw_check({1, 1}, 20).ok);
  EXPECT_TRUE(pbw_check({1, 2, 3}, 20).ok);
  EXPECT_TRUE(pbw_check({2, 2, 4}, 20).ok);
  for (int seed = 0; seed < 50; ++seed) {
    Rng rng(Rng::derive(3, static_cast<std::uint64_t>(seed)));
    std::vector<int> degrees(static_cast<std::size_t>(rng.uniform(1, 6)));
    for (auto& d : degrees) d = static_cast<int>(rng.uniform(1, 6));
    const auto c = pbw_check(degrees, 20);
    EXPECT_TRUE(c.ok) << "seed " << seed << " fails at " << c.first_failure;
  }
}

TEST(Hyperbolicity, Examples) {
  const auto wedge = rational_hyperbolicity(tensor_hilbert({1, 1}, 20), 4, 20);
  EXPECT_EQ(wedge.verdict, Verdict::Exponential);
  EXPECT_NEAR(wedge.rate, std::log(2.0), 0.05);
  const auto poly = rational_hyperbolicity(tensor_hilbert({2}, 30), 6, 30);
  EXPECT_EQ(poly.verdict, Verdict::Polynomial);
  HilbertSeries trivial{std::vector<BigInt>(21, 0)};
  trivial.coefficients[0] = 1;
  const auto flat = rational_hyperbolicity(trivial, 1, 20);
  EXPECT_EQ(flat.verdict, Verdict::Polynomial);
  EXPECT_EQ(flat.rate, 0.0);
}

TEST(Hyperbolicity, TwoGeneratorMultisetsAreExponential) {
  for (int a = 1; a <= 4; ++a)
    for (int b = a; b <= 4; ++b) {
      const auto c = rational_hyperbolicity(tensor_hilbert({a, b}, 60), 20, 60);
      EXPECT_EQ(c.verdict, Verdict::Exponential) << a << "," << b;
    }
}

TEST(FreeGroup, ClosedForm) {
  const auto r2 = free_group_ball(2, 3);
  EXPECT_EQ(r2.sizes, (std::vector<Count>{1, 5, 17, 53}));
  const auto r1 = free_group_ball(1, 6);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(r1.sizes[static_cast<std::size_t>(n)], static_cast<Count>(2 * n + 1));
  EXPECT_THROW(free_group_ball(0, 3), ValidationError);
  for (int r = 1; r <= 3; ++r) {
    const auto brute = oracle::free_group_ball_enumerated(r, 5);
    EXPECT_EQ(free_group_ball(r, 5).sizes, std::vector<Count>(brute.begin(), brute.end()));
    EXPECT_EQ(group_ball(GroupModel::free_group(r), 5).sizes, std::vector<Count>(brute.begin(), brute.end()));
  }
}

TEST(SurfaceGroup, SmallBalls) {
  const auto t = surface_group_ball(2, true, 4);
  EXPECT_EQ(t.sizes[0], 1u);
  EXPECT_EQ(t.sizes[1], 9u);
  EXPECT_EQ(t.sizes[2], 65u);
}

TEST(SurfaceGroup, AgreesWithRewritingClosure) {
  const auto oracle_ball = oracle::surface_group_ball_closure(2, true, 5);
  EXPECT_EQ(surface_group_ball(2, true, 5).sizes, std::vector<Count>(oracle_ball.begin(), oracle_ball.end()));
}

TEST(SurfaceGroup, NonOrientableAgreesWithRewritingClosure) {
  for (int genus : {3, 4}) {
    const auto oracle_ball = oracle::surface_group_ball_closure(genus, false, 4);
    EXPECT_EQ(surface_group_ball(genus, false, 4).sizes, std::vector<Count>(oracle_ball.begin(), oracle_ball.end()))
        << genus;
  }
  EXPECT_THROW(surface_group_ball(2, false, 3), UnsupportedInput);
  EXPECT_THROW(surface_group_ball(1, true, 3), ValidationError);
}

TEST(SurfaceGroup, BoundedByFreeGroupOfRankFour) {
  const auto s = surface_group_ball(2, true, 6);
  const auto f = free_group_ball(4, 6);
  for (std::size_t n = 0; n < s.sizes.size(); ++n) EXPECT_LE(s.sizes[n], f.sizes[n]);
}

TEST(SurfaceGroup, NormalFormIsAGroupInvariant) {
  const auto g = GroupModel::surface_group(2, true);
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    GroupWord w;
    for (int i = 0; i < 6; ++i) w.push_back(static_cast<char>(rng.uniform(0, 7)));
    // inserting a conjugate of the relator anywhere does not change the element
    GroupWord u;
    for (int i = 0; i < 2; ++i) u.push_back(static_cast<char>(rng.uniform(0, 7)));
    const std::size_t at = static_cast<std::size_t>(rng.uniform(0, 6));
    const GroupWord v = w.substr(0, at) + u + g.relator() + group_inverse(u) + w.substr(at);
    EXPECT_EQ(g.normal_form(w), g.normal_form(v));
    EXPECT_LE(g.normal_form(w).size(), free_reduce(w).size());
    EXPECT_EQ(g.normal_form(w + group_inverse(w)), "");
  }
}

TEST(SurfaceGroup, BudgetExceededCarriesPartialTable) {
  try {
    surface_group_ball(2, true, 8, std::size_t{1} << 16);
    FAIL() << "expected a resource error";
  } catch (const BallBudgetExceeded& e) {
    EXPECT_EQ(e.code(), ExitCode::Resource);
    ASSERT_GE(e.partial().sizes.size(), 2u);
    EXPECT_EQ(e.partial().sizes[1], 9u);
  }
}

TEST(GroupAlgebra, FreeGroupModel) {
  GroupAlgebraModel m(GroupModel::free_group(2), 3);
  EXPECT_EQ(m.basis_size(), 53);
  const Index x = m.letter(0), X = m.letter(1);
  EXPECT_EQ(m.compose_basis(x, X), Vec::unit(0));
  const auto levels = m.levels();
  EXPECT_EQ(levels[static_cast<std::size_t>(x)], 1);
  // a product of two length-3 elements that stays long leaves the window
  const Index longest = m.basis_size() - 1;
  EXPECT_TRUE(m.compose_basis(longest, longest).empty());
  EXPECT_GT(m.out_of_window(), 0u);
}
