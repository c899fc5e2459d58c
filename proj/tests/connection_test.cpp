#include <gtest/gtest.h>

#include "pqc/connection.hpp"
#include "pqc/gauge.hpp"
#include "pqc/model.hpp"

using namespace pqc;

namespace {

struct Built {
  Model m;
  ReebFrame rf;
  ConnectionData cd;
};

Built build(const Model& m) {
  auto rr = solve_reeb(m);
  EXPECT_TRUE(std::holds_alternative<ReebFrame>(rr));
  auto rf = std::get<ReebFrame>(rr);
  auto cd = build_connection(m, rf);
  return {m, rf, std::move(cd)};
}

std::string failures(const CheckList& c) {
  std::string out;
  for (const auto& f : c.failing_ids()) out += f + " ";
  return out;
}

}  // namespace

TEST(Koszul, HeisenbergHorizontalCoefficientsVanish) {
  const auto m = builtin_heisenberg(1);
  const auto rf = std::get<ReebFrame>(solve_reeb(m));
  const auto gamma = horizontal_koszul(m, rf);
  for (const auto& v : gamma) EXPECT_TRUE(vec_is_zero(v));
}

TEST(Koszul, AntisymmetrizationReproducesHorizontalBracket) {
  const auto m = builtin_l0(rat(3));
  const auto rf = std::get<ReebFrame>(solve_reeb(m));
  const auto gamma = horizontal_koszul(m, rf);
  const int nh = m.dim_h();
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) {
      const VecQ lhs = gamma[a * nh + b] - gamma[b * nh + a];
      EXPECT_EQ(lhs, rf.h_part(m.frame.bracket(a, b)));
    }
}

TEST(Koszul, L0CoefficientsProportionalToC) {
  const auto m3 = builtin_l0(rat(3));
  const auto rf3 = std::get<ReebFrame>(solve_reeb(m3));
  const auto g3 = horizontal_koszul(m3, rf3);
  bool nonzero = false;
  for (const auto& v : g3) nonzero = nonzero || !vec_is_zero(v);
  EXPECT_TRUE(nonzero);
  // doubling c doubles every coefficient
  const auto m6 = builtin_l0(rat(6));
  const auto rf6 = std::get<ReebFrame>(solve_reeb(m6));
  const auto g6 = horizontal_koszul(m6, rf6);
  for (std::size_t i = 0; i < g3.size(); ++i) EXPECT_EQ(g6[i], Rat(2) * g3[i]);
}

TEST(Alpha, L0ConnectionForms) {
  const Rat c = rat(3);
  const auto m = builtin_l0(c);
  const auto rf = std::get<ReebFrame>(solve_reeb(m));
  const auto ad = compute_alpha(m, rf);
  EXPECT_TRUE(ad.checks.all_pass()) << failures(ad.checks);
  // alpha_1 = alpha_3 = 0, alpha_2 = -c g4
  Form a2(7, 1);
  a2.at({3}) = -c;
  EXPECT_TRUE(ad.alpha[1].is_zero());
  EXPECT_TRUE(ad.alpha[3].is_zero());
  EXPECT_EQ(ad.alpha[2], a2);
  EXPECT_EQ(ad.lambda, Rat(0));
}

TEST(Alpha, HeisenbergConnectionFormsVanish) {
  for (int n : {1, 2}) {
    const auto m = builtin_heisenberg(n);
    const auto rf = std::get<ReebFrame>(solve_reeb(m));
    const auto ad = compute_alpha(m, rf);
    EXPECT_TRUE(ad.checks.all_pass()) << failures(ad.checks);
    for (int s = 1; s <= 3; ++s) EXPECT_TRUE(ad.alpha[s].is_zero());
    EXPECT_EQ(ad.lambda, Rat(0));
  }
}

TEST(Connection, HeisenbergIsFlatTable) {
  const auto b = build(builtin_heisenberg(1));
  EXPECT_TRUE(b.cd.checks.all_pass()) << failures(b.cd.checks);
  for (int a = 0; a < 7; ++a)
    for (int c = 0; c < 7; ++c) EXPECT_TRUE(vec_is_zero(b.cd.conn.nabla(a, c)));
  // torsion is nonzero only through the horizontal brackets
  EXPECT_TRUE(b.cd.torsion.tau.is_zero());
  EXPECT_TRUE(b.cd.torsion.mu.is_zero());
  bool some_t = false;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) some_t = some_t || !vec_is_zero(b.cd.torsion.t(x, y));
  EXPECT_TRUE(some_t);
}

TEST(Connection, DefiningClausesHoldOnBuiltins) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3)),
                        builtin_l0(rat(1)), builtin_l0(rat(-2))}) {
    const auto b = build(m);
    EXPECT_TRUE(b.cd.checks.all_pass()) << m.name << ": " << failures(b.cd.checks);
  }
}

TEST(Connection, DefiningClausesHoldOnGaugedModels) {
  for (std::uint64_t seed : {11ull, 12ull}) {
    for (const auto& base : {builtin_heisenberg(1), builtin_l0(rat(3))}) {
      const auto t = gauge_transform(base, random_gauge(base, seed));
      const auto b = build(t);
      EXPECT_TRUE(b.cd.checks.all_pass()) << t.name << ": " << failures(b.cd.checks);
    }
  }
}

TEST(Connection, L0FrameIsNotParallelButTorsionEndoVanishes) {
  const auto b = build(builtin_l0(rat(3)));
  bool nonparallel = false;
  for (int a = 0; a < 7; ++a)
    for (int c = 0; c < 7; ++c) nonparallel = nonparallel || !vec_is_zero(b.cd.conn.nabla(a, c));
  EXPECT_TRUE(nonparallel);
  EXPECT_TRUE(b.cd.torsion.tau.is_zero());
  EXPECT_TRUE(b.cd.torsion.mu.is_zero());
  for (int s = 1; s <= 3; ++s) EXPECT_TRUE(b.cd.torsion.t_endo[s].is_zero());
}

TEST(Connection, MuVanishesInDimensionSeven) {
  for (const auto& m : {builtin_heisenberg(1), builtin_l0(rat(3))}) {
    const auto b = build(m);
    EXPECT_TRUE(b.cd.torsion.mu.is_zero());
  }
}

TEST(LeviCivita, ComparisonHoldsOnBuiltins) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3))}) {
    const auto b = build(m);
    const auto cmp = levi_civita_compare(b.m, b.rf, b.cd);
    EXPECT_TRUE(cmp.all_pass()) << m.name << ": " << failures(cmp);
  }
}

TEST(LeviCivita, ComparisonHoldsOnGaugedL0) {
  const auto base = builtin_l0(rat(3));
  const auto t = gauge_transform(base, random_gauge(base, 99));
  const auto b = build(t);
  const auto cmp = levi_civita_compare(b.m, b.rf, b.cd);
  EXPECT_TRUE(cmp.all_pass()) << failures(cmp);
}
