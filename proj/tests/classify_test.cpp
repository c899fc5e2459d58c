#include <gtest/gtest.h>

#include "pqc/classify.hpp"
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

}  // namespace

TEST(Einstein, BuiltinsAreEinsteinWithZeroScal) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3))}) {
    const auto b = build(m);
    const auto e = einstein_check(b.m, b.rf, b.cd, b.cv);
    EXPECT_TRUE(e.einstein) << m.name;
    EXPECT_TRUE(e.ric_trace_free);
    EXPECT_TRUE(e.torsion_free);
    EXPECT_EQ(b.cv.scal, Rat(0));
  }
}

TEST(Einstein, CorruptedTorsionFlagsInconsistency) {
  const auto m = builtin_heisenberg(1);
  const auto b = build(m);
  MatQ ric_h(4, 4);
  MatQ bad_tau(4, 4);
  bad_tau.at(0, 1) = 1;
  bad_tau.at(1, 0) = 1;
  // trace-free Ric says Einstein, corrupted tau says not: must be flagged
  EXPECT_THROW(
      einstein_conditions(ric_h, Rat(0), m.g_h, bad_tau, MatQ(4, 4), 1),
      EngineInconsistency);
  // with enforcement off the two sides are visibly split
  const auto r = einstein_conditions(ric_h, Rat(0), m.g_h, bad_tau, MatQ(4, 4), 1, false);
  EXPECT_TRUE(r.ric_trace_free);
  EXPECT_FALSE(r.torsion_free);
}

TEST(Einstein, TorEinConsequencesOnConstantModels) {
  // einstein and n > 1: d(Scal) = 0 and [xi_s, xi_t] has no horizontal part
  const auto m = builtin_heisenberg(2);
  const auto b = build(m);
  const auto e = einstein_check(b.m, b.rf, b.cd, b.cv);
  ASSERT_TRUE(e.einstein);
  Form scal_fn(m.dim(), 0);
  scal_fn.at(std::initializer_list<int>{}) = b.cv.scal;
  EXPECT_TRUE(scal_fn.d(m.frame).is_zero());
  for (int s = 1; s <= 3; ++s)
    for (int t = 1; t <= 3; ++t)
      EXPECT_TRUE(vec_is_zero(b.rf.h_part(m.frame.bracket(b.rf.xi[s], b.rf.xi[t]))));
}

TEST(Sasakian, BuiltinsAreNotSasakian) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3))}) {
    const auto b = build(m);
    const auto s = sasakian_check(b.m, b.rf, b.cd);
    EXPECT_FALSE(s.sasakian) << m.name;
    // lambda = 0 on the flat models, so the normalization criterion fires
    bool lambda_evidence = false;
    for (const auto& e : s.evidence)
      lambda_evidence = lambda_evidence || e.find("lambda = 0") != std::string::npos;
    EXPECT_TRUE(lambda_evidence);
  }
}

TEST(Classify, BuiltinsAreFlat) {
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3)),
                        builtin_l0(rat(1))}) {
    const auto v = classify(m);
    EXPECT_EQ(v.label, Label::FlatHeisenberg) << m.name;
    EXPECT_EQ(label_name(v.label), "FlatHeisenberg");
    bool has_tau = false, has_scal = false;
    for (const auto& e : v.evidence) {
      has_tau = has_tau || e.find("tau") != std::string::npos;
      has_scal = has_scal || e.find("Scal") != std::string::npos;
    }
    EXPECT_TRUE(has_tau);
    EXPECT_TRUE(has_scal);
  }
}

TEST(Classify, InvariantUnderGauge) {
  for (std::uint64_t seed : {51ull, 52ull, 53ull}) {
    for (const auto& base : {builtin_heisenberg(1), builtin_l0(rat(3))}) {
      const auto t = gauge_transform(base, random_gauge(base, seed));
      EXPECT_EQ(classify(t).label, Label::FlatHeisenberg) << t.name << " seed " << seed;
    }
  }
  // constant rescale keeps the label as well
  GaugeTransform g = GaugeTransform::identity(2);
  g.rescale = rat(5, 3);
  EXPECT_EQ(classify(gauge_transform(builtin_heisenberg(2), g)).label, Label::FlatHeisenberg);
}

TEST(Classify, RejectsInvalidModel) {
  auto m = builtin_heisenberg(1);
  m.g_h.at(1, 1) = 1;
  EXPECT_THROW(classify(m), ClassificationError);
}
