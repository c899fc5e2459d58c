#include <gtest/gtest.h>

#include "pqc/model.hpp"
#include "pqc/structure.hpp"

using namespace pqc;

TEST(Validate, HeisenbergPasses) {
  EXPECT_TRUE(validate_pqc(builtin_heisenberg(1)).all_pass());
}

TEST(Validate, L0Passes) {
  EXPECT_TRUE(validate_pqc(builtin_l0(rat(3))).all_pass());
}

TEST(Validate, FlippedMetricEntryFailsParam) {
  auto m = builtin_heisenberg(1);
  m.g_h.at(1, 1) = 1;  // g(I1 T1, I1 T1) flipped to +1
  const auto diag = validate_pqc(m);
  EXPECT_FALSE(diag.all_pass());
  bool found = false;
  for (const auto& c : diag.checks)
    if (c.id == "structure/param-s1" && !c.pass) {
      found = true;
      EXPECT_NE(c.witness.find("s=1"), std::string::npos);
      EXPECT_NE(c.witness.find("(e1,"), std::string::npos);
    }
  EXPECT_TRUE(found) << "expected a located (param) failure at s=1";
}

TEST(Reeb, HeisenbergCentralFields) {
  const auto m = builtin_heisenberg(2);
  const auto rr = solve_reeb(m);
  ASSERT_TRUE(std::holds_alternative<ReebFrame>(rr));
  const auto& rf = std::get<ReebFrame>(rr);
  for (int s = 1; s <= 3; ++s) EXPECT_EQ(rf.xi[s], vec_basis(11, 8 + s - 1));
  EXPECT_FALSE(rf.dim7);
}

TEST(Reeb, L0Fields) {
  const auto m = builtin_l0(rat(3));
  const auto rr = solve_reeb(m);
  ASSERT_TRUE(std::holds_alternative<ReebFrame>(rr));
  const auto& rf = std::get<ReebFrame>(rr);
  EXPECT_EQ(rf.xi[3], vec_basis(7, 4));  // xi_3 = e5
  EXPECT_EQ(rf.xi[1], vec_basis(7, 5));  // xi_1 = e6
  EXPECT_EQ(rf.xi[2], vec_basis(7, 6));  // xi_2 = e7
  EXPECT_TRUE(rf.dim7);
}

TEST(Reeb, PerturbedVerticalConstantHasNoSolution) {
  // doubling the g45-coefficient of d g6 breaks the cross condition
  auto m = builtin_l0(rat(3));
  m.frame.set_C(5, 3, 4, rat(-6));
  const auto rr = solve_reeb(m);
  ASSERT_TRUE(std::holds_alternative<ReebFailure>(rr));
  const auto& f = std::get<ReebFailure>(rr);
  EXPECT_NE(f.reason.find("cross condition"), std::string::npos);
  EXPECT_FALSE(f.inconsistency);  // legitimate outcome in dimension 7
}

TEST(Reeb, ExtendedMetricSignature) {
  for (int n : {1, 2}) {
    const auto m = builtin_heisenberg(n);
    const auto rf = std::get<ReebFrame>(solve_reeb(m));
    const auto sig = rf.g_ext.signature();
    EXPECT_EQ(sig.first, 2 * n + 1);
    EXPECT_EQ(sig.second, 2 * n + 2);
    // g(xi_s, xi_t) = -eps_s delta_st
    for (int s = 1; s <= 3; ++s)
      for (int t = 1; t <= 3; ++t)
        EXPECT_EQ(rf.ip(rf.xi[s], rf.xi[t]), s == t ? Rat(-epsilon(s)) : Rat(0));
  }
  const auto m = builtin_l0(rat(3));
  const auto rf = std::get<ReebFrame>(solve_reeb(m));
  const auto sig = rf.g_ext.signature();
  EXPECT_EQ(sig.first, 3);
  EXPECT_EQ(sig.second, 4);
}

TEST(FundamentalForms, HeisenbergValues) {
  const auto m = builtin_heisenberg(1);
  const auto omega = fundamental_forms(m);
  // omega_3(T1, I3 T1) = g(I3 T1, I3 T1) = 1
  EXPECT_EQ(omega[3].value({0, 3}), Rat(1));
}

TEST(FundamentalForms, L0Values) {
  const auto m = builtin_l0(rat(3));
  const auto omega = fundamental_forms(m);
  Form w3(7, 2);
  w3.at({0, 1}) = 1;
  w3.at({2, 3}) = 1;
  EXPECT_EQ(omega[3], w3);  // omega_3 = g12 + g34
  Form w1(7, 2);
  w1.at({0, 2}) = -1;
  w1.at({1, 3}) = -1;
  EXPECT_EQ(omega[1], w1);  // -omega_1 = g13 + g24
  Form w2(7, 2);
  w2.at({0, 3}) = -1;
  w2.at({1, 2}) = 1;
  EXPECT_EQ(omega[2], w2);  // -omega_2 = g14 - g23
}

TEST(FundamentalForms, CompatibilityUnderI) {
  // omega_s(I_s X, I_s Y) = -eps_s omega_s(X, Y)
  for (const auto& m : {builtin_heisenberg(1), builtin_l0(rat(-2))}) {
    const auto omega = fundamental_forms(m);
    const int nh = m.dim_h();
    for (int s = 1; s <= 3; ++s)
      for (int a = 0; a < nh; ++a)
        for (int b = 0; b < nh; ++b) {
          const VecQ ia = m.apply_I(s, a);
          const VecQ ib = m.apply_I(s, vec_basis(m.dim(), b));
          EXPECT_EQ(omega[s].eval(std::array<VecQ, 2>{ia, ib}),
                    Rat(-epsilon(s)) * omega[s].value({a, b}));
        }
  }
}

TEST(FundamentalForms, TwoRoutesAgreeOnBuiltins) {
  for (int n : {1, 2, 3}) EXPECT_NO_THROW(fundamental_forms(builtin_heisenberg(n)));
  for (long c : {-2, 0, 1, 3}) EXPECT_NO_THROW(fundamental_forms(builtin_l0(rat(c))));
}
