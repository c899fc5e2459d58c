#include <gtest/gtest.h>

#include "pqc/curvature.hpp"
#include "pqc/gauge.hpp"
#include "pqc/model.hpp"

using namespace pqc;

namespace {

struct Built {
  Model m;
  ReebFrame rf;
  ConnectionData cd;
  CurvatureData cv;
};

Built build(const Model& m) {
  auto rf = std::get<ReebFrame>(solve_reeb(m));
  auto cd = build_connection(m, rf);
  auto cv = curvature_tensor(m, rf, cd.conn);
  return {m, rf, std::move(cd), std::move(cv)};
}

std::string failures(const CheckList& c) {
  std::string out;
  for (const auto& f : c.checks)
    if (!f.pass) out += f.id + " [" + f.witness + "] ";
  return out;
}

}  // namespace

TEST(Curvature, VanishesOnBuiltins) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3)),
                        builtin_l0(rat(1))}) {
    const auto b = build(m);
    EXPECT_TRUE(b.cv.r4.is_zero()) << m.name;
    EXPECT_EQ(b.cv.scal, Rat(0));
  }
}

TEST(Curvature, VanishesOnGaugeTransformedModels) {
  for (std::uint64_t seed : {5ull, 6ull}) {
    for (const auto& base : {builtin_heisenberg(1), builtin_l0(rat(3))}) {
      const auto t = gauge_transform(base, random_gauge(base, seed));
      const auto b = build(t);
      EXPECT_TRUE(b.cv.r4.is_zero()) << t.name;
    }
  }
}

TEST(Curvature, ScalInvariantUnderSpFrameChange) {
  const auto base = builtin_heisenberg(1);
  GaugeTransform g = random_gauge(base, 17);
  g.so12 = MatQ::identity(3);  // pure Sp(n,R)-frame change
  const auto t = gauge_transform(base, g);
  const auto b0 = build(base);
  const auto b1 = build(t);
  EXPECT_EQ(b0.cv.scal, b1.cv.scal);
}

TEST(RicciIdentities, HoldOnBuiltins) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3)),
                        builtin_l0(rat(-2))}) {
    const auto b = build(m);
    const auto checks = verify_ricci_identities(b.m, b.rf, b.cd, b.cv);
    EXPECT_TRUE(checks.all_pass()) << m.name << ": " << failures(checks);
  }
}

TEST(RicciIdentities, HoldOnGaugedModels) {
  for (std::uint64_t seed : {21ull, 22ull}) {
    for (const auto& base : {builtin_heisenberg(1), builtin_l0(rat(3))}) {
      const auto t = gauge_transform(base, random_gauge(base, seed));
      const auto b = build(t);
      const auto checks = verify_ricci_identities(b.m, b.rf, b.cd, b.cv);
      EXPECT_TRUE(checks.all_pass()) << t.name << ": " << failures(checks);
    }
  }
}

TEST(RicciIdentities, CorruptedConnectionIsDetected) {
  const auto m = builtin_l0(rat(3));
  auto rf = std::get<ReebFrame>(solve_reeb(m));
  auto cd = build_connection(m, rf);
  cd.conn.gamma[1 * 7 + 2][0] += 1;  // perturb one coefficient
  const auto cv = curvature_tensor(m, rf, cd.conn);
  const auto checks = verify_ricci_identities(m, rf, cd, cv);
  EXPECT_FALSE(checks.all_pass());
}

TEST(Bianchi, HoldsOnBuiltins) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3))}) {
    const auto b = build(m);
    const auto checks = verify_bianchi(b.m, b.rf, b.cd, b.cv);
    EXPECT_TRUE(checks.all_pass()) << m.name << ": " << failures(checks);
  }
}

TEST(Bianchi, HoldsOnGaugedL0) {
  const auto base = builtin_l0(rat(3));
  const auto t = gauge_transform(base, random_gauge(base, 33));
  const auto b = build(t);
  const auto checks = verify_bianchi(b.m, b.rf, b.cd, b.cv);
  EXPECT_TRUE(checks.all_pass()) << failures(checks);
}

TEST(Bianchi, CorruptedConnectionIsDetected) {
  const auto m = builtin_heisenberg(1);
  auto rf = std::get<ReebFrame>(solve_reeb(m));
  auto cd = build_connection(m, rf);
  cd.conn.gamma[0 * 7 + 1][3] += rat(1, 2);
  const auto cv = curvature_tensor(m, rf, cd.conn);
  const auto checks = verify_bianchi(m, rf, cd, cv);
  EXPECT_FALSE(checks.all_pass());
}

TEST(VerticalCurvature, HoldsOnBuiltins) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3)),
                        builtin_l0(rat(1))}) {
    const auto b = build(m);
    const auto checks = verify_vertical_curvature(b.m, b.rf, b.cd, b.cv);
    EXPECT_TRUE(checks.all_pass()) << m.name << ": " << failures(checks);
  }
}

TEST(VerticalCurvature, HoldsOnGaugedModels) {
  for (std::uint64_t seed : {41ull, 42ull}) {
    for (const auto& base : {builtin_heisenberg(1), builtin_l0(rat(3))}) {
      const auto t = gauge_transform(base, random_gauge(base, seed));
      const auto b = build(t);
      const auto checks = verify_vertical_curvature(b.m, b.rf, b.cd, b.cv);
      EXPECT_TRUE(checks.all_pass()) << t.name << ": " << failures(checks);
    }
  }
}

TEST(CheckFlat, BuiltinsAreFlat) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3))}) {
    const auto b = build(m);
    const auto v = check_flat(b.m, b.rf, b.cd, b.cv);
    EXPECT_TRUE(v.flat) << m.name;
    EXPECT_NE(v.label.find("flat 2-step model"), std::string::npos);
  }
}
