#include <gtest/gtest.h>

#include <random>

#include "pqc/endomorphism.hpp"
#include "pqc/paraquaternion.hpp"

using namespace pqc;

namespace {

Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return rat(num(rng), den(rng));
}

ParaQuaternion random_pq(std::mt19937_64& rng) {
  return {random_rat(rng), random_rat(rng), random_rat(rng), random_rat(rng)};
}

}  // namespace

TEST(Epsilon, TableAndCyclicProducts) {
  EXPECT_EQ(epsilon(1), 1);
  EXPECT_EQ(epsilon(2), 1);
  EXPECT_EQ(epsilon(3), -1);
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    EXPECT_EQ(epsilon(ii) * epsilon(j), -epsilon(k));
  }
}

TEST(ParaQuaternionMul, UnitRelations) {
  const auto r1 = ParaQuaternion::unit(1);
  const auto r2 = ParaQuaternion::unit(2);
  const auto r3 = ParaQuaternion::unit(3);
  EXPECT_EQ(pq_mul(r1, r1), ParaQuaternion::one());
  EXPECT_EQ(pq_mul(r2, r2), ParaQuaternion::one());
  EXPECT_EQ(pq_mul(r3, r3), Rat(-1) * ParaQuaternion::one());
  EXPECT_EQ(pq_mul(r1, r2), r3);
  EXPECT_EQ(pq_mul(r2, r1), Rat(-1) * r3);
  // expanding r_i r_j = -epsilon_k r_k with (i,j,k)=(3,1,2) gives r3 r1 = -r2
  EXPECT_EQ(pq_mul(r3, r1), Rat(-1) * r2);
  EXPECT_EQ(pq_mul(r2, r3), Rat(-1) * r1);
}

TEST(ParaQuaternionMul, UnitElement) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    const auto p = random_pq(rng);
    EXPECT_EQ(pq_mul(ParaQuaternion::one(), p), p);
    EXPECT_EQ(pq_mul(p, ParaQuaternion::one()), p);
  }
}

TEST(ParaQuaternionMul, AssociativeAndBilinear) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    const auto p = random_pq(rng), q = random_pq(rng), r = random_pq(rng);
    EXPECT_EQ(pq_mul(pq_mul(p, q), r), pq_mul(p, pq_mul(q, r)));
    const Rat c = random_rat(rng);
    EXPECT_EQ(pq_mul(c * p + q, r), c * pq_mul(p, r) + pq_mul(q, r));
  }
}

TEST(ParaQuaternionNorm, BasicValues) {
  EXPECT_EQ(pq_norm(ParaQuaternion::one()), Rat(1));
  // 1 + r1 is a zero divisor: the algebra has null elements
  const auto zd = ParaQuaternion::one() + ParaQuaternion::unit(1);
  EXPECT_EQ(pq_norm(zd), Rat(0));
  EXPECT_EQ(pq_norm(ParaQuaternion(2, 3, 5, 7)), rat(4 + 9 - 25 - 49));
}

TEST(ParaQuaternionNorm, Multiplicative) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    const auto p = random_pq(rng), q = random_pq(rng);
    EXPECT_EQ(pq_norm(pq_mul(p, q)), pq_norm(p) * pq_norm(q));
  }
}

namespace {

/// 4-dimensional model triple: H = pQ with the standard structure.
/// Basis (T, Y=I1 T, Z=I2 T, X=I3 T), g = diag(1,-1,-1,1).
PqTriple standard_triple() {
  PqTriple t;
  t.g = MatQ(4, 4);
  t.g.at(0, 0) = 1;
  t.g.at(1, 1) = -1;
  t.g.at(2, 2) = -1;
  t.g.at(3, 3) = 1;
  for (int s = 1; s <= 3; ++s) t.I[s] = MatQ(4, 4);
  auto set_col = [](MatQ& m, int col, int row, int v) { m.at(row, col) = v; };
  // I1: T->Y, Y->T, Z->X, X->Z
  set_col(t.I[1], 0, 1, 1);
  set_col(t.I[1], 1, 0, 1);
  set_col(t.I[1], 2, 3, 1);
  set_col(t.I[1], 3, 2, 1);
  // I2: T->Z, Z->T, Y->-X, X->-Y
  set_col(t.I[2], 0, 2, 1);
  set_col(t.I[2], 2, 0, 1);
  set_col(t.I[2], 1, 3, -1);
  set_col(t.I[2], 3, 1, -1);
  // I3: T->X, X->-T, Y->-Z, Z->Y
  set_col(t.I[3], 0, 3, 1);
  set_col(t.I[3], 3, 0, -1);
  set_col(t.I[3], 1, 2, -1);
  set_col(t.I[3], 2, 1, 1);
  return t;
}

MatQ random_matrix(std::mt19937_64& rng, std::size_t m) {
  MatQ out(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) out.at(r, c) = random_rat(rng);
  return out;
}

MatQ skew_part(const MatQ& a, const MatQ& g, const MatQ& g_inv) {
  // endomorphism whose lowered tensor is the antisymmetric part of g(A.,.)
  const MatQ lowered = a.transposed() * g;  // (0,2) components of g(A.,.)
  const MatQ axs = Rat(1, 2) * (lowered - lowered.transposed());
  return g_inv * axs.transposed();
}

}  // namespace

TEST(StandardTriple, SatisfiesQuaternionRelations) {
  const auto t = standard_triple();
  EXPECT_TRUE(satisfies_paraquaternion_relations(t.I));
  // g(I_s X, I_s Y) = -eps_s g(X, Y)
  for (int s = 1; s <= 3; ++s)
    EXPECT_EQ(t.I[s].transposed() * t.g * t.I[s], Rat(-epsilon(s)) * t.g);
}

TEST(Decompose, IdentityIsPart3) {
  const auto t = standard_triple();
  const MatQ id = MatQ::identity(4);
  const auto d = decompose_endomorphism(id, t.I);
  EXPECT_EQ(d.part3, id);
  EXPECT_TRUE(d.part_minus1.is_zero());
}

TEST(Decompose, I1IsPartMinus1) {
  const auto t = standard_triple();
  const auto d = decompose_endomorphism(t.I[1], t.I);
  EXPECT_TRUE(d.part3.is_zero());
  EXPECT_EQ(d.part_minus1, t.I[1]);
}

TEST(Decompose, PartsSumAndCharacterizingIdentities) {
  const auto t = standard_triple();
  std::mt19937_64 rng(17);
  for (int it = 0; it < 10; ++it) {
    const MatQ psi = random_matrix(rng, 4);
    const auto d = decompose_endomorphism(psi, t.I);
    EXPECT_EQ(d.ppp + d.pmm + d.mpm + d.mmp, psi);
    EXPECT_EQ(d.part3 + d.part_minus1, psi);
    // psi = psi_[3]  <=>  3 psi - I1 psi I1 - I2 psi I2 + I3 psi I3 = 0
    const auto ch3 = Rat(3) * d.part3 - t.I[1] * d.part3 * t.I[1] - t.I[2] * d.part3 * t.I[2] +
                     t.I[3] * d.part3 * t.I[3];
    EXPECT_TRUE(ch3.is_zero());
    // psi = psi_[-1] <=>  psi + I1 psi I1 + I2 psi I2 - I3 psi I3 = 0
    const auto chm = d.part_minus1 + t.I[1] * d.part_minus1 * t.I[1] +
                     t.I[2] * d.part_minus1 * t.I[2] - t.I[3] * d.part_minus1 * t.I[3];
    EXPECT_TRUE(chm.is_zero());
    // idempotence of the aggregate projectors
    EXPECT_EQ(decompose_endomorphism(d.part3, t.I).part3, d.part3);
    EXPECT_EQ(decompose_endomorphism(d.part_minus1, t.I).part_minus1, d.part_minus1);
  }
}

TEST(Decompose, RejectsBadTriple) {
  auto t = standard_triple();
  t.I[3].at(0, 0) = 5;
  EXPECT_THROW(decompose_endomorphism(MatQ::identity(4), t.I), std::invalid_argument);
}

TEST(Sp1PerpProject, KillsSp1Elements) {
  const auto t = standard_triple();
  const MatQ g_inv = *t.g.inverse();
  for (int s = 1; s <= 3; ++s)
    EXPECT_TRUE(sp1_perp_project(t.I[s], t, g_inv).is_zero());
}

TEST(Sp1PerpProject, KillsCommutingSkew) {
  const auto t = standard_triple();
  const MatQ g_inv = *t.g.inverse();
  std::mt19937_64 rng(23);
  for (int it = 0; it < 10; ++it) {
    // skew part of the [3]-projection commutes with all I_s
    MatQ a = casimir_part3(skew_part(random_matrix(rng, 4), t.g, g_inv), t.I);
    EXPECT_TRUE((t.g * a).is_antisymmetric());
    EXPECT_TRUE(sp1_perp_project(a, t, g_inv).is_zero());
  }
}

TEST(Sp1PerpProject, ImageIsOrthogonalAndIdempotent) {
  const auto t = standard_triple();
  const MatQ g_inv = *t.g.inverse();
  std::mt19937_64 rng(29);
  for (int it = 0; it < 10; ++it) {
    const MatQ a = skew_part(random_matrix(rng, 4), t.g, g_inv);
    const MatQ p = sp1_perp_project(a, t, g_inv);
    // orthogonal to sp(1,R)
    for (int s = 1; s <= 3; ++s) EXPECT_EQ(endo_inner(p, t.I[s], t.g, g_inv), Rat(0));
    // orthogonal to sp(n,R): skew endomorphisms commuting with all I_s
    for (int it2 = 0; it2 < 5; ++it2) {
      const MatQ b = casimir_part3(skew_part(random_matrix(rng, 4), t.g, g_inv), t.I);
      EXPECT_EQ(endo_inner(p, b, t.g, g_inv), Rat(0));
    }
    // idempotent
    EXPECT_EQ(sp1_perp_project(p, t, g_inv), p);
  }
}

TEST(Sp1PerpProject, RejectsNonSkew) {
  const auto t = standard_triple();
  const MatQ g_inv = *t.g.inverse();
  MatQ sym = MatQ::identity(4);
  EXPECT_THROW(sp1_perp_project(sym, t, g_inv), std::invalid_argument);
}
