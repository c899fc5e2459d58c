#pragma once

#include <array>
#include <stdexcept>

#include "pqc/linalg.hpp"
#include "pqc/paraquaternion.hpp"

namespace pqc {

/// Triple of endomorphism matrices I_1, I_2, I_3 on H together with the
/// horizontal metric; the arena for the invariant decompositions.
struct PqTriple {
  MatQ g;                    // horizontal metric, symmetric
  std::array<MatQ, 4> I;     // 1-based: I[1], I[2], I[3]

  std::size_t dim_h() const { return g.rows(); }
};

/// Checks I_s^2 = epsilon_s and I_i I_j = -I_j I_i = -epsilon_k I_k exactly.
inline bool satisfies_paraquaternion_relations(const std::array<MatQ, 4>& I) {
  const std::size_t m = I[1].rows();
  const MatQ id = MatQ::identity(m);
  for (int s = 1; s <= 3; ++s)
    if (I[s] * I[s] != Rat(epsilon(s)) * id) return false;
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    const MatQ lhs = I[ii] * I[j];
    if (lhs != -(I[j] * I[ii])) return false;
    if (lhs != Rat(-epsilon(k)) * I[k]) return false;
  }
  return true;
}

/// The four quarter-projector parts of an endomorphism and the two
/// Sp(n,R)Sp(1,R)-invariant aggregates (Casimir eigenvalues 3 and -1).
struct EndomorphismDecomposition {
  MatQ ppp, pmm, mpm, mmp;  // commutation patterns (+++), (+--), (-+-), (--+)
  MatQ part3;               // psi_[3]  = ppp
  MatQ part_minus1;         // psi_[-1] = pmm + mpm + mmp
};

inline EndomorphismDecomposition decompose_endomorphism(const MatQ& psi,
                                                        const std::array<MatQ, 4>& I) {
  if (!satisfies_paraquaternion_relations(I))
    throw std::invalid_argument("decompose_endomorphism: I_s violate the quaternion-type relations");
  const MatQ a1 = I[1] * psi * I[1];
  const MatQ a2 = I[2] * psi * I[2];
  const MatQ a3 = I[3] * psi * I[3];
  const Rat q(1, 4);
  EndomorphismDecomposition d;
  d.ppp = q * (psi + a1 + a2 - a3);
  d.pmm = q * (psi + a1 - a2 + a3);
  d.mpm = q * (psi - a1 + a2 + a3);
  d.mmp = q * (psi - a1 - a2 - a3);
  d.part3 = d.ppp;
  d.part_minus1 = d.pmm + d.mpm + d.mmp;
  return d;
}

/// <A,B> = g^{ab} g(A e_a, B e_b), the neutral inner product on End(H).
inline Rat endo_inner(const MatQ& a, const MatQ& b, const MatQ& g, const MatQ& g_inv) {
  // = Tr(g_inv * A^t * g * B)
  const MatQ m = g_inv * (a.transposed() * (g * b));
  Rat tr = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) tr += m.at(i, i);
  return tr;
}

/// Signed trace A(e_a, I_s e_a) of the lowered tensor A(X,Y)=g(AX,Y),
/// realized as g^{ab} g(A e_a, I_s e_b).
inline Rat signed_trace_with(const MatQ& a, const MatQ& i_s, const MatQ& g, const MatQ& g_inv) {
  return endo_inner(a, i_s, g, g_inv);
}

/// Orthogonal projection of A onto sp(1,R) = span{I_1,I_2,I_3}:
/// 4n A_{sp(1)} picks up a -epsilon_s weight from <I_s,I_s> = -4n epsilon_s.
inline MatQ sp1_project(const MatQ& a, const PqTriple& t, const MatQ& g_inv) {
  const std::size_t m = t.dim_h();
  MatQ out(m, m);
  const Rat inv4n(1, static_cast<long>(m));
  for (int s = 1; s <= 3; ++s) {
    const Rat c = -Rat(epsilon(s)) * inv4n * signed_trace_with(a, t.I[s], t.g, g_inv);
    out += c * t.I[s];
  }
  return out;
}

/// Component of A commuting with all I_s (the [3]-part of the endomorphism).
inline MatQ casimir_part3(const MatQ& a, const std::array<MatQ, 4>& I) {
  const Rat q(1, 4);
  return q * (a + I[1] * a * I[1] + I[2] * a * I[2] - I[3] * a * I[3]);
}

/// A = A_[-1] - A_{sp(1)} for g-skew A: the projection onto
/// (sp(n,R)+sp(1,R))^perp inside so(2n,2n). Rejects non-skew input.
inline MatQ sp1_perp_project(const MatQ& a, const PqTriple& t, const MatQ& g_inv) {
  const MatQ lowered = t.g * a;
  if (!lowered.is_antisymmetric())
    throw std::invalid_argument("sp1_perp_project: input is not g-skew-symmetric");
  const MatQ part3 = casimir_part3(a, t.I);
  const MatQ part_m1 = a - part3;
  return part_m1 - sp1_project(a, t, g_inv);
}

}  // namespace pqc
