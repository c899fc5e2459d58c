#pragma once

#include "pqc/four_form.hpp"

namespace pqc {

/// Scal value the para 3-Sasakian normalization requires, computed by the two
/// equivalent products 16n(n+2) and 8n(n+2) * 2.
inline long sasakian_scal_requirement(int n) { return 16L * n * (n + 2); }
inline long sasakian_scal_via_lambda(int n) { return 8L * n * (n + 2) * 2; }

/// Trace-free Ricci test together with the torsion-endomorphism criterion;
/// the two must agree (their equivalence is a theorem) or the engine stops.
struct EinsteinResult {
  bool einstein = false;
  bool ric_trace_free = false;
  bool torsion_free = false;
  std::vector<std::string> evidence;
};

/// Raw comparison on already-computed data; exposed so synthetic
/// (corrupted) inputs can demonstrate the consistency guard.
inline EinsteinResult einstein_conditions(const MatQ& ric_h, const Rat& scal, const MatQ& g_h,
                                          const MatQ& tau, const MatQ& mu, int n,
                                          bool enforce_equivalence = true) {
  EinsteinResult out;
  const MatQ dev = ric_h - (scal * Rat(1, 4 * n)) * g_h;
  out.ric_trace_free = dev.is_zero();
  out.torsion_free = tau.is_zero() && mu.is_zero();
  if (enforce_equivalence && out.ric_trace_free != out.torsion_free)
    throw EngineInconsistency(
        "trace-free Ricci and vanishing torsion endomorphism disagree on the same data");
  out.einstein = out.ric_trace_free;
  out.evidence.push_back(std::string("Ric - (Scal/4n) g on H: ") +
                         (out.ric_trace_free ? "zero" : "nonzero"));
  out.evidence.push_back(std::string("tau = mu = 0: ") + (out.torsion_free ? "yes" : "no"));
  return out;
}

inline EinsteinResult einstein_check(const Model& m, const ReebFrame& /*rf*/,
                                     const ConnectionData& cd, const CurvatureData& cv) {
  const int nh = m.dim_h();
  MatQ ric_h(nh, nh);
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) ric_h.at(a, b) = cv.ric.at(a, b);
  auto out = einstein_conditions(ric_h, cv.scal, m.g_h, cd.torsion.tau, cd.torsion.mu, m.n());
  out.evidence.push_back("Scal = " + fmt_rat(cv.scal));
  return out;
}

struct SasakianResult {
  bool sasakian = false;
  std::vector<std::string> evidence;
};

/// True iff the model satisfies the homogeneous structure-equation form:
/// d eta_i = -2 eps_i w_i - 2 eps_i eta_j^eta_k,
/// d w_i = 2 eps_j w_j^eta_k - 2 eps_k w_k^eta_j, lambda = 2,
/// alpha_i = -2 eps_j eta_i, tau = mu = 0.
inline SasakianResult sasakian_check(const Model& m, const ReebFrame& /*rf*/,
                                     const ConnectionData& cd) {
  SasakianResult out;
  const auto omega = fundamental_forms(m);
  bool c_eta = true, c_omega = true, c_alpha = true;
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    const Form eta_i = m.eta_form(ii), eta_j = m.eta_form(j), eta_k = m.eta_form(k);
    Form rhs = Rat(-2 * epsilon(ii)) * omega[ii] +
               Rat(-2 * epsilon(ii)) * eta_j.wedge(eta_k);
    if (!(m.d_eta(ii) == rhs)) c_eta = false;
    Form rhs_w = Rat(2 * epsilon(j)) * omega[j].wedge(eta_k) -
                 Rat(2 * epsilon(k)) * omega[k].wedge(eta_j);
    if (!(omega[ii].d(m.frame) == rhs_w)) c_omega = false;
    if (!(cd.conn.alpha[ii] == Rat(-2 * epsilon(j)) * eta_i)) c_alpha = false;
  }
  const bool c_lambda = cd.conn.lambda == Rat(2);
  const bool c_torsion = cd.torsion.tau.is_zero() && cd.torsion.mu.is_zero();
  out.sasakian = c_eta && c_omega && c_lambda && c_alpha && c_torsion;
  out.evidence.push_back(std::string("contact structure equations: ") + (c_eta ? "yes" : "no"));
  out.evidence.push_back(std::string("fundamental-form equations: ") + (c_omega ? "yes" : "no"));
  out.evidence.push_back("lambda = " + fmt_rat(cd.conn.lambda) + " (need 2; Scal requirement " +
                         std::to_string(sasakian_scal_requirement(m.n())) + ")");
  out.evidence.push_back(std::string("alpha_i = -2 eps_j eta_i: ") + (c_alpha ? "yes" : "no"));
  out.evidence.push_back(std::string("torsion endomorphism zero: ") + (c_torsion ? "yes" : "no"));
  return out;
}

enum class Label { FlatHeisenberg, PqcEinstein, Para3SasakianCandidate, Generic };

inline std::string label_name(Label l) {
  switch (l) {
    case Label::FlatHeisenberg: return "FlatHeisenberg";
    case Label::PqcEinstein: return "PqcEinstein";
    case Label::Para3SasakianCandidate: return "Para3SasakianCandidate";
    case Label::Generic: return "Generic";
  }
  return "?";
}

struct ClassificationVerdict {
  Label label = Label::Generic;
  std::vector<std::string> evidence;
};

struct ClassificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full pipeline classifier. Requires a valid model with a Reeb frame.
inline ClassificationVerdict classify(const Model& m) {
  const auto diag = validate_pqc(m);
  if (!diag.all_pass())
    throw ClassificationError("model fails validation: " + diag.failing_ids().front());
  const auto rr = solve_reeb(m);
  if (!std::holds_alternative<ReebFrame>(rr))
    throw ClassificationError("no Reeb frame: " + std::get<ReebFailure>(rr).reason);
  const auto& rf = std::get<ReebFrame>(rr);
  const auto cd = build_connection(m, rf);
  const auto cv = curvature_tensor(m, rf, cd.conn);

  ClassificationVerdict out;
  out.evidence.push_back(std::string("tau: ") +
                         (cd.torsion.tau.is_zero() ? "zero" : "nonzero"));
  out.evidence.push_back(std::string("mu: ") + (cd.torsion.mu.is_zero() ? "zero" : "nonzero"));
  out.evidence.push_back("lambda = " + fmt_rat(cd.conn.lambda));
  out.evidence.push_back("Scal = " + fmt_rat(cv.scal));

  const auto flat = check_flat(m, rf, cd, cv);
  const auto ein = einstein_check(m, rf, cd, cv);
  for (const auto& e : ein.evidence) out.evidence.push_back(e);
  if (flat.flat) {
    out.label = Label::FlatHeisenberg;
    out.evidence.push_back(flat.label);
    return out;
  }
  const auto sas = sasakian_check(m, rf, cd);
  if (sas.sasakian) {
    out.label = Label::Para3SasakianCandidate;
    for (const auto& e : sas.evidence) out.evidence.push_back(e);
    return out;
  }
  if (ein.einstein) {
    out.label = Label::PqcEinstein;
    return out;
  }
  out.label = Label::Generic;
  return out;
}

}  // namespace pqc
