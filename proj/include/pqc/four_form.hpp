#pragma once

#include "pqc/curvature.hpp"

namespace pqc {

/// The invariant horizontal 4-form and its exterior derivative.
struct FourFormData {
  Form omega4;    // -w1^w1 - w2^w2 + w3^w3
  Form d_omega4;
};

inline FourFormData fundamental_four_form(const Model& m) {
  const auto omega = fundamental_forms(m);
  FourFormData out;
  out.omega4 = -(omega[1].wedge(omega[1])) - omega[2].wedge(omega[2]) + omega[3].wedge(omega[3]);
  out.d_omega4 = out.omega4.d(m.frame);
  return out;
}

/// Trace-free Ricci 2-forms rho0_s(X,Y) = 1/2 [tau(X,I_sY) - tau(I_sX,Y)] + 2 mu(X,I_sY).
inline std::array<Form, 4> trace_free_ricci_forms(const Model& m, const TorsionData& tor) {
  const int nh = m.dim_h();
  std::array<Form, 4> out;
  for (int s = 1; s <= 3; ++s) {
    const MatQ mat = Rat(1, 2) * (tor.tau * m.I[s] - m.I[s].transposed() * tor.tau) +
                     Rat(2) * (tor.mu * m.I[s]);
    if (!mat.is_antisymmetric())
      throw EngineInconsistency("trace-free Ricci 2-form is not antisymmetric");
    Form f(m.dim(), 2);
    for (int a = 0; a < nh; ++a)
      for (int b = a + 1; b < nh; ++b) f.at({a, b}) = mat.at(a, b);
    out[s] = f;
  }
  return out;
}

/// The three local structure equations, each side evaluated exactly.
inline CheckList verify_structure_equations(const Model& m, const ReebFrame& /*rf*/,
                                            const ConnectionData& cd, const CurvatureData& cv) {
  CheckList out;
  const int dim = m.dim();
  const auto omega = fundamental_forms(m);
  const auto& alpha = cd.conn.alpha;
  const Rat lambda = cd.conn.lambda;

  Form lambda_fn(dim, 0);
  lambda_fn.at(std::initializer_list<int>{}) = lambda;
  const Form dlambda = lambda_fn.d(m.frame);

  std::array<Form, 4> eta, deta, rho_form;
  for (int s = 1; s <= 3; ++s) {
    eta[s] = m.eta_form(s);
    deta[s] = m.d_eta(s);
    Form f(dim, 2);
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) f.at({a, b}) = cv.rho[s].at(a, b);
    rho_form[s] = f;
  }

  // (streq): d eta_i = -2 eps_i w_i + eta_j^alpha_k + eps_j eta_k^alpha_j
  //          + eps_i lambda eta_j^eta_k
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    Form rhs = Rat(-2 * epsilon(ii)) * omega[ii];
    rhs += eta[j].wedge(alpha[k]);
    rhs += Rat(epsilon(j)) * eta[k].wedge(alpha[j]);
    rhs += (Rat(epsilon(ii)) * lambda) * eta[j].wedge(eta[k]);
    out.add("structure/streq-i" + std::to_string(ii), "streq", deta[ii] == rhs,
            deta[ii] == rhs ? "" : "first structure equation fails at i=" + std::to_string(ii));
  }

  // (str2): eps_i d w_i = w_j^[-eps_j a_k + eps_k l eta_k] + w_k^[eps_i a_j - eps_j l eta_j]
  //         - eps_j rho_k^eta_j + eps_k rho_j^eta_k + 1/2 eps_i dl^eta_j^eta_k
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    const Form lhs = Rat(epsilon(ii)) * omega[ii].d(m.frame);
    Form rhs = omega[j].wedge(Rat(-epsilon(j)) * alpha[k] + (Rat(epsilon(k)) * lambda) * eta[k]);
    rhs += omega[k].wedge(Rat(epsilon(ii)) * alpha[j] - (Rat(epsilon(j)) * lambda) * eta[j]);
    rhs -= Rat(epsilon(j)) * rho_form[k].wedge(eta[j]);
    rhs += Rat(epsilon(k)) * rho_form[j].wedge(eta[k]);
    rhs += Rat(epsilon(ii), 2) * dlambda.wedge(eta[j].wedge(eta[k]));
    out.add("structure/str2-i" + std::to_string(ii), "str2", lhs == rhs,
            lhs == rhs ? "" : "second structure equation fails at i=" + std::to_string(ii));
  }

  // (strom): d Omega against the torsion data
  {
    const auto ff = fundamental_four_form(m);
    const auto rho0 = trace_free_ricci_forms(m, cd.torsion);
    Form rhs(dim, 5);
    for (int i = 1; i <= 3; ++i) {
      auto [ii, j, k] = cyclic(i);  // even permutations of (1,2,3)
      Form term = Rat(2) * eta[ii].wedge(rho0[k].wedge(omega[j]) - rho0[j].wedge(omega[k]));
      term += dlambda.wedge(omega[ii]).wedge(eta[j].wedge(eta[k]));
      rhs -= Rat(epsilon(ii)) * term;
    }
    out.add("structure/strom", "strom", ff.d_omega4 == rhs,
            ff.d_omega4 == rhs ? "" : "the d Omega expansion fails");
  }

  return out;
}

struct RejectedForN1 : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// tau and mu recovered from contractions of d Omega; defined for n >= 2
/// (the tau prefactor carries 1/(16(1-n))).
struct RecoveredTorsion {
  MatQ tau, mu;
};

inline RecoveredTorsion recover_torsion_from_dOmega(const Model& m, const ReebFrame& rf,
                                                    const Form& d_omega4) {
  const int n = m.n();
  if (n < 2)
    throw RejectedForN1("torsion recovery from d Omega requires dimension (4n+3) > 7");
  const int nh = m.dim_h();
  const int dim = m.dim();

  // signed trace over the last two slots of the 2-form left after three
  // interior products: sum g^{ab} w(e_a, I_j e_b)
  auto j_trace = [&](const Form& two, int j) {
    Rat acc = 0;
    for (int a = 0; a < nh; ++a)
      for (int b = 0; b < nh; ++b) {
        if (is_zero(rf.g_h_inv.at(a, b))) continue;
        for (int d = 0; d < nh; ++d)
          if (!is_zero(m.I[j].at(d, b))) acc += rf.g_h_inv.at(a, b) * m.I[j].at(d, b) * two.value({a, d});
      }
    return acc;
  };

  std::array<MatQ, 4> mu_by_perm;
  MatQ tau_sum(nh, nh);
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    const Form w4 = d_omega4.interior(rf.xi[ii]);
    MatQ a_mat(nh, nh), b_mat(nh, nh);
    for (int x = 0; x < nh; ++x) {
      const Form w3x = w4.interior(vec_basis(dim, x));
      const Form w3ix = w4.interior(m.apply_I(ii, x));
      for (int y = 0; y < nh; ++y) {
        a_mat.at(x, y) = j_trace(w3x.interior(m.apply_I(k, y)), j);
        b_mat.at(x, y) = j_trace(w3ix.interior(m.apply_I(j, y)), j);
      }
    }
    mu_by_perm[ii] = Rat(-1, 32 * n) * (a_mat - Rat(epsilon(k)) * b_mat);
    tau_sum += a_mat + Rat(epsilon(k)) * b_mat;
  }
  if (!(mu_by_perm[1] == mu_by_perm[2] && mu_by_perm[2] == mu_by_perm[3]))
    throw EngineInconsistency("mu recovered from d Omega differs between cyclic readings");

  RecoveredTorsion out;
  out.mu = mu_by_perm[1];
  out.tau = rat(1, 16 * (1 - n)) * tau_sum;
  return out;
}

}  // namespace pqc
