#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pqc/coframe.hpp"
#include "pqc/endomorphism.hpp"
#include "pqc/linalg.hpp"

namespace pqc {

/// A coframe model together with its contact data: the three coframe
/// positions carrying eta_s, the horizontal metric and the endomorphisms I_s.
/// Frame order: e_0..e_{4n-1} horizontal, e_{4n}..e_{4n+2} vertical.
struct Model {
  CoframeModel frame;
  std::array<int, 4> eta{};     // eta[s] = 0-based coframe index, s = 1..3
  MatQ g_h;                     // 4n x 4n
  std::array<MatQ, 4> I;        // 4n x 4n each
  std::string name;
  std::vector<std::string> basis_names;
  std::map<std::string, std::string> metadata;

  int n() const { return frame.n(); }
  int dim() const { return frame.dim(); }
  int dim_h() const { return frame.dim_h(); }

  Form eta_form(int s) const { return Form::coframe_element(dim(), eta[s]); }
  Form d_eta(int s) const { return d_coframe_element(frame, eta[s]); }

  /// Matrix of d eta_s restricted to H: entries d eta_s (e_b, e_c), b,c < 4n.
  MatQ d_eta_h(int s) const {
    const int nh = dim_h();
    MatQ r(nh, nh);
    for (int b = 0; b < nh; ++b)
      for (int c = 0; c < nh; ++c) r.at(b, c) = -frame.C(eta[s], b, c);
    return r;
  }

  PqTriple triple() const { return PqTriple{g_h, I}; }

  /// I_s e_b as a full-frame vector (b horizontal).
  VecQ apply_I(int s, int b) const {
    VecQ v(dim(), Rat(0));
    for (int r = 0; r < dim_h(); ++r) v[r] = I[s].at(r, b);
    return v;
  }

  /// I_s v for a horizontal full-frame vector v.
  VecQ apply_I(int s, const VecQ& v) const {
    VecQ out(dim(), Rat(0));
    for (int c = 0; c < dim_h(); ++c) {
      if (is_zero(v[c])) continue;
      for (int r = 0; r < dim_h(); ++r)
        if (!is_zero(I[s].at(r, c))) out[r] += I[s].at(r, c) * v[c];
    }
    return out;
  }

  bool operator==(const Model& o) const {
    if (n() != o.n() || eta != o.eta || g_h != o.g_h || I != o.I || name != o.name ||
        basis_names != o.basis_names || metadata != o.metadata)
      return false;
    for (int a = 0; a < dim(); ++a)
      for (int b = 0; b < dim(); ++b)
        for (int c = 0; c < dim(); ++c)
          if (frame.C(a, b, c) != o.frame.C(a, b, c)) return false;
    return true;
  }
};

/// Recovered contact structure.
struct ContactStructure {
  MatQ g;
  std::array<MatQ, 4> I;
};

struct ContactDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reconstructs (g, I_1, I_2, I_3) from the matrices R_s of d eta_s |H via
/// I_k = epsilon_i R_i^{-1} R_j and g from -2 epsilon_s g(I_s., .) = R_s.
/// The recovered metric is pinned to the adapted orientation g(e_1,e_1) > 0;
/// data whose unique solution violates it is rejected as inconsistent.
inline ContactStructure derive_structure_from_contact(const std::array<MatQ, 4>& R) {
  const std::size_t nh = R[1].rows();
  for (int s = 1; s <= 3; ++s) {
    if (R[s].rows() != nh || R[s].cols() != nh)
      throw ContactDataError("contact data: inconsistent dimensions");
    if (!R[s].is_antisymmetric())
      throw ContactDataError("contact data: R_" + std::to_string(s) + " is not antisymmetric");
  }
  std::array<MatQ, 4> Rinv;
  for (int s = 1; s <= 3; ++s) {
    auto inv = R[s].inverse();
    if (!inv) throw ContactDataError("contact data: R_" + std::to_string(s) + " is singular on H");
    Rinv[s] = *inv;
  }

  ContactStructure out;
  for (int k = 1; k <= 3; ++k) {
    auto [i, j, kk] = cyclic(k % 3 + 1);  // (i,j,k) cyclic with third entry k
    (void)kk;
    out.I[k] = Rat(epsilon(i)) * (Rinv[i] * R[j]);
  }

  if (!satisfies_paraquaternion_relations(out.I))
    throw ContactDataError("contact data: recovered I_s violate the quaternion-type relations");

  // g from each s; all three must agree
  MatQ g;
  for (int s = 1; s <= 3; ++s) {
    auto i_inv = out.I[s].inverse();
    if (!i_inv) throw ContactDataError("contact data: recovered I is singular");
    const MatQ gs = Rat(epsilon(s), 2) * (R[s] * *i_inv);
    if (s == 1)
      g = gs;
    else if (gs != g)
      throw ContactDataError("contact data: metric from R_" + std::to_string(s) +
                             " disagrees with R_1");
  }
  if (!g.is_symmetric()) throw ContactDataError("contact data: recovered metric is not symmetric");
  out.g = g;

  // compatibility g(I_s X, I_s Y) = -eps_s g(X,Y)
  for (int s = 1; s <= 3; ++s)
    if (out.I[s].transposed() * g * out.I[s] != Rat(-epsilon(s)) * g)
      throw ContactDataError("contact data: recovered pair violates metric compatibility at s=" +
                             std::to_string(s));

  // contact condition -2 eps_s (I_s^t g) = R_s
  for (int s = 1; s <= 3; ++s)
    if (Rat(-2 * epsilon(s)) * (out.I[s].transposed() * g) != R[s])
      throw ContactDataError("contact data: contact condition fails at s=" + std::to_string(s));

  const auto sig = g.signature();
  const int twon = static_cast<int>(nh) / 2;
  if (sig.first != twon || sig.second != twon)
    throw ContactDataError("contact data: recovered metric is not neutral");

  if (sgn(g.at(0, 0)) <= 0)
    throw ContactDataError(
        "contact data: recovered metric has g(e_1,e_1) <= 0 (adapted orientation violated)");

  return out;
}

/// The para Heisenberg model: frame per a-block (T_a, I1 T_a, I2 T_a, I3 T_a),
/// vertical (xi_1, xi_2, xi_3). Only nonzero brackets:
///   [I_s T_a, T_a] = 2 xi_s,   [I_i T_a, I_j T_a] = 2 eps_k xi_k.
/// g(T,T) = g(I3 T, I3 T) = 1, g(I1 T, I1 T) = g(I2 T, I2 T) = -1.
inline Model builtin_heisenberg(int n) {
  if (n < 1) throw std::invalid_argument("builtin_heisenberg: n must be >= 1");
  Model m;
  m.frame = CoframeModel(n);
  const int v1 = 4 * n, v2 = 4 * n + 1, v3 = 4 * n + 2;
  for (int a = 0; a < n; ++a) {
    const int T = 4 * a, Y = 4 * a + 1, Z = 4 * a + 2, X = 4 * a + 3;
    m.frame.set_C(v1, Y, T, rat(2));   // [I1 T, T] = 2 xi_1
    m.frame.set_C(v2, Z, T, rat(2));   // [I2 T, T] = 2 xi_2
    m.frame.set_C(v3, X, T, rat(2));   // [I3 T, T] = 2 xi_3
    m.frame.set_C(v3, Y, Z, rat(-2));  // [I1 T, I2 T] = 2 eps_3 xi_3
    m.frame.set_C(v1, Z, X, rat(2));   // [I2 T, I3 T] = 2 eps_1 xi_1
    m.frame.set_C(v2, X, Y, rat(2));   // [I3 T, I1 T] = 2 eps_2 xi_2
  }
  m.eta = {-1, v1, v2, v3};
  m.g_h = MatQ(4 * n, 4 * n);
  for (int s = 1; s <= 3; ++s) m.I[s] = MatQ(4 * n, 4 * n);
  for (int a = 0; a < n; ++a) {
    const int T = 4 * a, Y = 4 * a + 1, Z = 4 * a + 2, X = 4 * a + 3;
    m.g_h.at(T, T) = 1;
    m.g_h.at(Y, Y) = -1;
    m.g_h.at(Z, Z) = -1;
    m.g_h.at(X, X) = 1;
    // I1: T<->Y, Z<->X
    m.I[1].at(Y, T) = 1; m.I[1].at(T, Y) = 1; m.I[1].at(X, Z) = 1; m.I[1].at(Z, X) = 1;
    // I2: T<->Z, Y->-X, X->-Y
    m.I[2].at(Z, T) = 1; m.I[2].at(T, Z) = 1; m.I[2].at(X, Y) = -1; m.I[2].at(Y, X) = -1;
    // I3: T->X, X->-T, Y->-Z, Z->Y
    m.I[3].at(X, T) = 1; m.I[3].at(T, X) = -1; m.I[3].at(Z, Y) = -1; m.I[3].at(Y, Z) = 1;
  }
  m.name = "heisenberg-n" + std::to_string(n);
  m.basis_names.resize(m.dim());
  for (int a = 0; a < n; ++a) {
    const std::string sfx = std::to_string(a + 1);
    m.basis_names[4 * a] = "T" + sfx;
    m.basis_names[4 * a + 1] = "Y" + sfx;
    m.basis_names[4 * a + 2] = "Z" + sfx;
    m.basis_names[4 * a + 3] = "X" + sfx;
  }
  m.basis_names[v1] = "xi1";
  m.basis_names[v2] = "xi2";
  m.basis_names[v3] = "xi3";
  m.metadata["family"] = "heisenberg";
  m.metadata["n"] = std::to_string(n);
  return m;
}

/// The solvable 7-dimensional model with structure equations
///   d g1 = 0, d g2 = -c g34, d g3 = -c g24, d g4 = 0,
///   d g5 = 2 g12 + 2 g34 + c g46, d g6 = 2 g13 + 2 g24 + c g45,
///   d g7 = 2 g14 - 2 g23,
/// contact data (eta_3, eta_1, eta_2) = (g5, g6, g7); g and I_s recovered
/// from the contact matrices and frozen after validation.
inline Model builtin_l0(const Rat& c) {
  Model m;
  m.frame = CoframeModel(1);
  m.frame.set_C(1, 2, 3, c);        // d g2 = -c g34
  m.frame.set_C(2, 1, 3, c);        // d g3 = -c g24
  m.frame.set_C(4, 0, 1, rat(-2));  // d g5 : 2 g12
  m.frame.set_C(4, 2, 3, rat(-2));  //        2 g34
  m.frame.set_C(4, 3, 5, -c);       //        c g46
  m.frame.set_C(5, 0, 2, rat(-2));  // d g6 : 2 g13
  m.frame.set_C(5, 1, 3, rat(-2));  //        2 g24
  m.frame.set_C(5, 3, 4, -c);       //        c g45
  m.frame.set_C(6, 0, 3, rat(-2));  // d g7 : 2 g14
  m.frame.set_C(6, 1, 2, rat(2));   //       -2 g23
  m.eta = {-1, 5, 6, 4};            // eta_1 = g6, eta_2 = g7, eta_3 = g5
  const auto cs = derive_structure_from_contact({MatQ{}, m.d_eta_h(1), m.d_eta_h(2), m.d_eta_h(3)});
  m.g_h = cs.g;
  m.I = cs.I;
  m.name = "l0-c" + rat_to_string(c);
  m.basis_names = {"g1", "g2", "g3", "g4", "g5", "g6", "g7"};
  m.metadata["family"] = "l0";
  m.metadata["c"] = rat_to_string(c);
  m.metadata["derived_structure"] =
      "g and I_s recovered from the contact matrices; g = diag(1,1,-1,-1), no sign adjustments";
  return m;
}

}  // namespace pqc
