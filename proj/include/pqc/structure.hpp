#pragma once

#include <optional>
#include <sstream>
#include <variant>

#include "pqc/check.hpp"
#include "pqc/model.hpp"

namespace pqc {

inline std::string fmt_rat(const Rat& r) { return rat_to_string(r); }

/// Checks the defining identities of the structure on a model; every failing
/// instance carries indices and both side values.
inline CheckList validate_pqc(const Model& m) {
  CheckList out;
  const int nh = m.dim_h();
  const int dim = m.dim();

  // shape
  {
    bool ok = m.g_h.rows() == static_cast<std::size_t>(nh) && m.g_h.is_symmetric();
    for (int s = 1; s <= 3; ++s)
      ok = ok && m.I[s].rows() == static_cast<std::size_t>(nh) &&
           m.I[s].cols() == static_cast<std::size_t>(nh);
    bool eta_ok = true;
    for (int s = 1; s <= 3; ++s)
      eta_ok = eta_ok && m.eta[s] >= nh && m.eta[s] < dim;
    eta_ok = eta_ok && m.eta[1] != m.eta[2] && m.eta[1] != m.eta[3] && m.eta[2] != m.eta[3];
    out.add("shape/dimensions", "artifact", ok && eta_ok,
            ok && eta_ok ? "" : "inconsistent dimensions or eta positions");
    if (!(ok && eta_ok)) return out;
  }

  // Jacobi / d.d = 0
  {
    const auto w = m.frame.jacobi_witness();
    std::ostringstream os;
    if (w) os << "cyclic bracket sum of (e" << (*w)[0] + 1 << ",e" << (*w)[1] + 1 << ",e"
              << (*w)[2] + 1 << ") has nonzero e" << (*w)[3] + 1 << " component";
    out.add("frame/jacobi", "dd0", !w, os.str());
  }

  // metric invertible + neutral signature (2n,2n)
  {
    const bool inv = m.g_h.inverse().has_value();
    out.add("metric/invertible", "artifact", inv, inv ? "" : "horizontal metric is singular");
    if (inv) {
      const auto sig = m.g_h.signature();
      std::ostringstream os;
      os << "signature (" << sig.first << "," << sig.second << "), expected (" << 2 * m.n() << ","
         << 2 * m.n() << ")";
      out.add("metric/neutral-signature", "param", sig.first == 2 * m.n() && sig.second == 2 * m.n(),
              sig.first == 2 * m.n() && sig.second == 2 * m.n() ? "" : os.str());
    }
  }

  // (paraq)
  {
    bool pass = satisfies_paraquaternion_relations(m.I);
    std::string witness;
    if (!pass) {
      const MatQ id = MatQ::identity(nh);
      for (int s = 1; s <= 3 && witness.empty(); ++s)
        if (m.I[s] * m.I[s] != Rat(epsilon(s)) * id)
          witness = "I_" + std::to_string(s) + "^2 != eps_" + std::to_string(s) + " id";
      for (int i = 1; i <= 3 && witness.empty(); ++i) {
        auto [ii, j, k] = cyclic(i);
        if (m.I[ii] * m.I[j] != Rat(-epsilon(k)) * m.I[k])
          witness = "I_" + std::to_string(ii) + " I_" + std::to_string(j) + " != -eps I_" +
                    std::to_string(k);
      }
    }
    out.add("structure/paraq", "paraq", pass, witness);
  }

  // (param): g(I_s X, I_s Y) = -eps_s g(X, Y)
  for (int s = 1; s <= 3; ++s) {
    const MatQ lhs = m.I[s].transposed() * m.g_h * m.I[s];
    const MatQ rhs = Rat(-epsilon(s)) * m.g_h;
    bool pass = lhs == rhs;
    std::string witness;
    if (!pass) {
      for (int a = 0; a < nh && witness.empty(); ++a)
        for (int b = 0; b < nh && witness.empty(); ++b)
          if (lhs.at(a, b) != rhs.at(a, b)) {
            std::ostringstream os;
            os << "s=" << s << " at (e" << a + 1 << ",e" << b + 1 << "): g(I_s.,I_s.)="
               << fmt_rat(lhs.at(a, b)) << " vs -eps_s g = " << fmt_rat(rhs.at(a, b));
            witness = os.str();
          }
    }
    out.add("structure/param-s" + std::to_string(s), "param", pass, witness);
  }

  // (ccon): d eta_s (X, Y) = -2 eps_s g(I_s X, Y) on H
  for (int s = 1; s <= 3; ++s) {
    const MatQ lhs = m.d_eta_h(s);
    const MatQ rhs = Rat(-2 * epsilon(s)) * (m.I[s].transposed() * m.g_h);
    bool pass = lhs == rhs;
    std::string witness;
    if (!pass) {
      for (int a = 0; a < nh && witness.empty(); ++a)
        for (int b = 0; b < nh && witness.empty(); ++b)
          if (lhs.at(a, b) != rhs.at(a, b)) {
            std::ostringstream os;
            os << "s=" << s << " at (e" << a + 1 << ",e" << b + 1
               << "): d eta = " << fmt_rat(lhs.at(a, b)) << " vs -2 eps_s g(I_s.,.) = "
               << fmt_rat(rhs.at(a, b));
            witness = os.str();
          }
    }
    out.add("structure/ccon-s" + std::to_string(s), "ccon", pass, witness);
  }

  return out;
}

/// The solved Reeb frame and the extended metric it defines,
/// g = g_H + g_V with g(xi_s, xi_t) = -eps_s delta_st.
struct ReebFrame {
  std::array<VecQ, 4> xi;  // xi[1..3]
  bool dim7 = false;       // "pqc (dim-7 convention)" label
  int nh = 0;
  MatQ g_ext;              // dim x dim, frame components
  MatQ g_ext_inv;
  MatQ g_h_inv;            // 4n x 4n
  MatQ p, p_inv;           // adapted basis (e_1..e_4n, xi_1..xi_3) <-> frame

  /// g(v, w) for full-frame vectors.
  Rat ip(const VecQ& v, const VecQ& w) const {
    Rat acc = 0;
    const int dim = static_cast<int>(g_ext.rows());
    for (int a = 0; a < dim; ++a) {
      if (is_zero(v[a])) continue;
      for (int b = 0; b < dim; ++b)
        if (!is_zero(g_ext.at(a, b)) && !is_zero(w[b])) acc += v[a] * g_ext.at(a, b) * w[b];
    }
    return acc;
  }

  /// Coordinates of v in the adapted basis (H frame, xi_1, xi_2, xi_3).
  VecQ adapted_coords(const VecQ& v) const { return p_inv.apply(v); }

  /// Projection onto H along V = span{xi_s}.
  VecQ h_part(const VecQ& v) const {
    VecQ c = adapted_coords(v);
    VecQ out = v;
    for (int t = 1; t <= 3; ++t)
      if (!is_zero(c[nh + t - 1])) out -= c[nh + t - 1] * xi[t];
    return out;
  }

  VecQ v_part(const VecQ& v) const { return v - h_part(v); }
};

struct ReebFailure {
  std::string reason;
  bool inconsistency = false;  // true: cross condition failed although n > 1
};

using ReebResult = std::variant<ReebFrame, ReebFailure>;

inline ReebResult solve_reeb(const Model& m) {
  const int dim = m.dim();
  const int nh = m.dim_h();

  std::array<Form, 4> deta;
  for (int s = 1; s <= 3; ++s) deta[s] = m.d_eta(s);

  ReebFrame rf;
  rf.dim7 = (m.n() == 1);

  // per-t square system: eta_s(xi_t) = delta_st and (xi_t -| d eta_t)|H = 0
  for (int t = 1; t <= 3; ++t) {
    MatQ a(dim, dim);
    VecQ b(dim, Rat(0));
    int row = 0;
    for (int s = 1; s <= 3; ++s, ++row) {
      a.at(row, m.eta[s]) = 1;
      b[row] = (s == t) ? 1 : 0;
    }
    for (int h = 0; h < nh; ++h, ++row) {
      for (int c = 0; c < dim; ++c) a.at(row, c) = deta[t].value({c, h});
      b[row] = 0;
    }
    bool unique = false;
    auto sol = solve_linear(a, b, &unique);
    if (!sol)
      return ReebFailure{"no vector field satisfies the normalization and contraction conditions "
                         "for xi_" + std::to_string(t)};
    if (!unique)
      return ReebFailure{"the conditions for xi_" + std::to_string(t) +
                         " do not determine it uniquely"};
    rf.xi[t] = *sol;
  }

  // cross conditions: (xi_j -| d eta_i)|H = eps_k (xi_i -| d eta_j)|H
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    const Form li = deta[ii].interior(rf.xi[j]);
    const Form lj = deta[j].interior(rf.xi[ii]);
    for (int h = 0; h < nh; ++h) {
      const Rat lhs = li.value({h});
      const Rat rhs = Rat(epsilon(k)) * lj.value({h});
      if (lhs != rhs) {
        std::ostringstream os;
        os << "cross condition fails: (xi_" << j << " -| d eta_" << ii << ")(e" << h + 1
           << ") = " << fmt_rat(lhs) << " but eps_" << k << " (xi_" << ii << " -| d eta_" << j
           << ")(e" << h + 1 << ") = " << fmt_rat(rhs);
        return ReebFailure{os.str(), m.n() > 1};
      }
    }
  }

  // extended metric: P maps (H basis, xi_1, xi_2, xi_3) coordinates to frame ones
  MatQ p(dim, dim);
  for (int h = 0; h < nh; ++h) p.at(h, h) = 1;
  for (int t = 1; t <= 3; ++t)
    for (int r = 0; r < dim; ++r) p.at(r, nh + t - 1) = rf.xi[t][r];
  const MatQ p_inv = *p.inverse();
  MatQ g_adapted(dim, dim);
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) g_adapted.at(a, b) = m.g_h.at(a, b);
  for (int t = 1; t <= 3; ++t) g_adapted.at(nh + t - 1, nh + t - 1) = -epsilon(t);
  rf.nh = nh;
  rf.p = p;
  rf.p_inv = p_inv;
  rf.g_ext = p_inv.transposed() * g_adapted * p_inv;
  rf.g_ext_inv = *rf.g_ext.inverse();
  rf.g_h_inv = *m.g_h.inverse();
  return rf;
}

/// Fundamental 2-forms omega_s as full-frame forms (horizontal support),
/// computed as omega_s(X,Y) = g(I_s X, Y) and cross-checked against
/// d eta_s |H = -2 eps_s omega_s. Throws on route disagreement.
inline std::array<Form, 4> fundamental_forms(const Model& m) {
  const int nh = m.dim_h();
  std::array<Form, 4> omega;
  for (int s = 1; s <= 3; ++s) {
    const MatQ lowered = m.I[s].transposed() * m.g_h;
    Form f(m.dim(), 2);
    for (int a = 0; a < nh; ++a)
      for (int b = a + 1; b < nh; ++b) f.at({a, b}) = lowered.at(a, b);
    const Form via_deta = Rat(-epsilon(s), 2) * m.d_eta(s).restricted_to_h(nh);
    if (!(f == via_deta))
      throw std::runtime_error("fundamental_forms: omega_" + std::to_string(s) +
                               " from g(I_s.,.) disagrees with d eta_s |H");
    omega[s] = f;
  }
  return omega;
}

}  // namespace pqc
