#pragma once

#include "pqc/connection.hpp"

namespace pqc {

struct Tensor4 {
  int d = 0;
  std::vector<Rat> v;
  Tensor4() = default;
  explicit Tensor4(int dim)
      : d(dim), v(static_cast<std::size_t>(dim) * dim * dim * dim, Rat(0)) {}
  Rat& at(int a, int b, int c, int e) {
    return v[((static_cast<std::size_t>(a) * d + b) * d + c) * d + e];
  }
  const Rat& at(int a, int b, int c, int e) const {
    return v[((static_cast<std::size_t>(a) * d + b) * d + c) * d + e];
  }
  bool is_zero() const {
    for (const auto& x : v)
      if (!pqc::is_zero(x)) return false;
    return true;
  }
};

/// Curvature of the connection with all Ricci-type contractions.
struct CurvatureData {
  int dim = 0, nh = 0;
  std::vector<MatQ> r_op;  // R(e_a, e_b) as frame endomorphism, index a*dim+b
  Tensor4 r4;              // R(A,B,C,D) lowered with the extended metric
  MatQ ric;                // Ric(B,C) over the full frame
  Rat scal;
  std::array<MatQ, 4> rho, zeta, vrho;  // rho_s, zeta_s, varrho_s over the full frame

  const MatQ& op(int a, int b) const { return r_op[static_cast<std::size_t>(a) * dim + b]; }

  Rat r4_dir(const VecQ& a, const VecQ& b, const VecQ& c, const VecQ& e) const {
    Rat acc = 0;
    for (int i = 0; i < dim; ++i) {
      if (is_zero(a[i])) continue;
      for (int j = 0; j < dim; ++j) {
        if (is_zero(b[j])) continue;
        const Rat f = a[i] * b[j];
        for (int k = 0; k < dim; ++k) {
          if (is_zero(c[k])) continue;
          for (int l = 0; l < dim; ++l)
            if (!is_zero(e[l]) && !is_zero(r4.at(i, j, k, l)))
              acc += f * c[k] * e[l] * r4.at(i, j, k, l);
        }
      }
    }
    return acc;
  }

  Rat pair2(const MatQ& t, const VecQ& a, const VecQ& b) const {
    Rat acc = 0;
    for (int i = 0; i < dim; ++i) {
      if (is_zero(a[i])) continue;
      for (int j = 0; j < dim; ++j)
        if (!is_zero(b[j]) && !is_zero(t.at(i, j))) acc += a[i] * t.at(i, j) * b[j];
    }
    return acc;
  }
};

inline CurvatureData curvature_tensor(const Model& m, const ReebFrame& rf,
                                      const CanonicalConnection& conn) {
  const int dim = m.dim();
  const int nh = m.dim_h();
  CurvatureData out;
  out.dim = dim;
  out.nh = nh;
  out.r_op.assign(static_cast<std::size_t>(dim) * dim, MatQ(dim, dim));
  out.r4 = Tensor4(dim);

  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      MatQ& r = out.r_op[static_cast<std::size_t>(a) * dim + b];
      const VecQ br = m.frame.bracket(a, b);
      for (int c = 0; c < dim; ++c) {
        VecQ v = conn.nabla_frame(a, conn.nabla(b, c)) - conn.nabla_frame(b, conn.nabla(a, c));
        for (int e = 0; e < dim; ++e)
          if (!is_zero(br[e])) v -= br[e] * conn.nabla(e, c);
        for (int r_ = 0; r_ < dim; ++r_) r.at(r_, c) = v[r_];
      }
      for (int c = 0; c < dim; ++c) {
        VecQ rc(dim, Rat(0));
        for (int r_ = 0; r_ < dim; ++r_) rc[r_] = r.at(r_, c);
        for (int e = 0; e < dim; ++e) out.r4.at(a, b, c, e) = rf.ip(rc, vec_basis(dim, e));
      }
    }

  // Ricci-type contractions (signed horizontal traces)
  out.ric = MatQ(dim, dim);
  for (int bb = 0; bb < dim; ++bb)
    for (int cc = 0; cc < dim; ++cc) {
      Rat acc = 0;
      for (int a = 0; a < nh; ++a)
        for (int b = 0; b < nh; ++b)
          if (!is_zero(rf.g_h_inv.at(a, b))) acc += rf.g_h_inv.at(a, b) * out.r4.at(a, bb, cc, b);
      out.ric.at(bb, cc) = acc;
    }
  out.scal = 0;
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b)
      if (!is_zero(rf.g_h_inv.at(a, b))) out.scal += rf.g_h_inv.at(a, b) * out.ric.at(a, b);

  const Rat inv4n(1, 4 * m.n());
  for (int s = 1; s <= 3; ++s) {
    out.rho[s] = MatQ(dim, dim);
    out.zeta[s] = MatQ(dim, dim);
    out.vrho[s] = MatQ(dim, dim);
    for (int bb = 0; bb < dim; ++bb)
      for (int cc = 0; cc < dim; ++cc) {
        Rat acc_rho = 0, acc_zeta = 0, acc_vrho = 0;
        for (int a = 0; a < nh; ++a)
          for (int b = 0; b < nh; ++b) {
            if (is_zero(rf.g_h_inv.at(a, b))) continue;
            const Rat w = rf.g_h_inv.at(a, b);
            for (int d = 0; d < nh; ++d) {
              if (is_zero(m.I[s].at(d, b))) continue;
              const Rat f = w * m.I[s].at(d, b);
              acc_rho += f * out.r4.at(bb, cc, a, d);
              acc_zeta += f * out.r4.at(a, bb, cc, d);
              acc_vrho += f * out.r4.at(a, d, bb, cc);
            }
          }
        out.rho[s].at(bb, cc) = inv4n * acc_rho;
        out.zeta[s].at(bb, cc) = inv4n * acc_zeta;
        out.vrho[s].at(bb, cc) = inv4n * acc_vrho;
      }
  }
  return out;
}

namespace detail_curv {

/// (nabla_{e_a} t)(e_b, e_c) for a constant (0,2) tensor with horizontal
/// support, direction and slots in the frame.
inline Rat nabla_bilinear_h(const CanonicalConnection& conn, const MatQ& t, int a, int b, int c,
                            int nh) {
  Rat acc = 0;
  const VecQ& gb = conn.nabla(a, b);
  const VecQ& gc = conn.nabla(a, c);
  for (int r = 0; r < nh; ++r) {
    if (!is_zero(gb[r])) acc -= gb[r] * t.at(r, c);
    if (!is_zero(gc[r])) acc -= gc[r] * t.at(b, r);
  }
  return acc;
}

}  // namespace detail_curv

/// The horizontal Ricci identities plus the symmetry claims and the
/// Casimir-component recovery of tau and mu.
inline CheckList verify_ricci_identities(const Model& m, const ReebFrame& rf,
                                         const ConnectionData& cd, const CurvatureData& cv) {
  CheckList out;
  const int dim = m.dim();
  const int nh = m.dim_h();
  const int n = m.n();
  const MatQ& tau = cd.torsion.tau;
  const MatQ& mu = cd.torsion.mu;

  // curvature antisymmetries
  {
    bool a12 = true, a34 = true;
    for (int a = 0; a < dim && (a12 || a34); ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c)
          for (int e = 0; e < dim; ++e) {
            if (cv.r4.at(a, b, c, e) != -cv.r4.at(b, a, c, e)) a12 = false;
            if (cv.r4.at(a, b, c, e) != -cv.r4.at(a, b, e, c)) a34 = false;
          }
    out.add("curv/antisymmetry-first-pair", "curvdef", a12, a12 ? "" : "R(A,B,...) not skew");
    out.add("curv/antisymmetry-last-pair", "curvdef", a34, a34 ? "" : "R(...,C,D) not skew");
  }

  // (spn1): R0(B,C) commutes with every I_s
  {
    bool ok = true;
    std::string w;
    for (int a = 0; a < dim && ok; ++a)
      for (int b = 0; b < dim && ok; ++b) {
        MatQ r0(nh, nh);
        for (int r = 0; r < nh; ++r)
          for (int c = 0; c < nh; ++c) r0.at(r, c) = cv.op(a, b).at(r, c);
        for (int s = 1; s <= 3; ++s) r0 += (Rat(epsilon(s)) * cv.rho[s].at(a, b)) * m.I[s];
        for (int s = 1; s <= 3 && ok; ++s)
          if (!(r0 * m.I[s] == m.I[s] * r0)) {
            ok = false;
            w = "sp(n)-part fails to commute with I_" + std::to_string(s) + " at pair (e" +
                std::to_string(a + 1) + ",e" + std::to_string(b + 1) + ")";
          }
      }
    out.add("curv/spn-part-commutes", "spn1", ok, w);
  }

  const Rat scal_c1 = cv.scal * Rat(1, 4 * n);                 // Scal/4n
  const Rat scal_c2 = cv.scal * Rat(1, 8 * n * (n + 2));       // Scal/8n(n+2)
  const Rat scal_c3 = cv.scal * Rat(1, 16 * n * (n + 2));      // Scal/16n(n+2)

  auto mat_IsT = [&](int s, const MatQ& t) { return m.I[s].transposed() * t; };   // t(I_s., .)
  auto mat_TIs = [&](int s, const MatQ& t) { return t * m.I[s]; };                // t(., I_s.)
  auto mat_conj = [&](int s, const MatQ& t) { return m.I[s].transposed() * t * m.I[s]; };

  // (ricci)
  {
    bool ok = true;
    std::string w;
    for (int x = 0; x < nh && ok; ++x)
      for (int y = 0; y < nh && ok; ++y) {
        const Rat rhs = scal_c1 * m.g_h.at(x, y) + Rat(2 * n + 2) * tau.at(x, y) +
                        Rat(4 * n + 10) * mu.at(x, y);
        if (cv.ric.at(x, y) != rhs) {
          ok = false;
          w = "Ric formula fails at (e" + std::to_string(x + 1) + ",e" + std::to_string(y + 1) +
              "): " + fmt_rat(cv.ric.at(x, y)) + " vs " + fmt_rat(rhs);
        }
      }
    out.add("ricci/horizontal-ricci", "ricci", ok, w);
  }

  // (ricciformf), (riccitau), (riccizeta)
  for (int s = 1; s <= 3; ++s) {
    MatQ rho_h(nh, nh), zeta_h(nh, nh), vrho_h(nh, nh);
    for (int x = 0; x < nh; ++x)
      for (int y = 0; y < nh; ++y) {
        rho_h.at(x, y) = cv.rho[s].at(x, y);
        zeta_h.at(x, y) = cv.zeta[s].at(x, y);
        vrho_h.at(x, y) = cv.vrho[s].at(x, y);
      }
    const MatQ tconj = mat_conj(s, tau);
    {
      const MatQ lhs = mat_TIs(s, rho_h);
      MatQ rhs = (Rat(epsilon(s)) * scal_c2) * m.g_h;
      rhs += Rat(1, 2) * (Rat(epsilon(s)) * tau - tconj);
      rhs += Rat(2 * epsilon(s)) * mu;
      out.add("ricci/rho-s" + std::to_string(s), "ricciformf", lhs == rhs,
              lhs == rhs ? "" : "rho_s(X, I_s Y) formula fails");
    }
    {
      const MatQ lhs = mat_TIs(s, vrho_h);
      MatQ rhs = (Rat(epsilon(s)) * scal_c2) * m.g_h;
      rhs += Rat(n + 2, 2 * n) * (Rat(epsilon(s)) * tau - tconj);
      out.add("ricci/vrho-s" + std::to_string(s), "riccitau", lhs == rhs,
              lhs == rhs ? "" : "varrho_s(X, I_s Y) formula fails");
    }
    {
      const MatQ lhs = Rat(-epsilon(s)) * mat_TIs(s, zeta_h);
      MatQ rhs = scal_c3 * m.g_h;
      rhs += Rat(2 * n + 1, 4 * n) * tau;
      rhs -= Rat(epsilon(s), 4 * n) * tconj;
      rhs += Rat(2 * n + 1, 2 * n) * mu;
      out.add("ricci/zeta-s" + std::to_string(s), "riccizeta", lhs == rhs,
              lhs == rhs ? "" : "zeta_s(X, I_s Y) formula fails");
    }
    // symmetry claims
    out.add("ricci/zeta-symmetric-s" + std::to_string(s), "sixtyseven",
            mat_TIs(s, zeta_h).is_symmetric(),
            mat_TIs(s, zeta_h).is_symmetric() ? "" : "zeta_s(X, I_s Y) not symmetric");
    out.add("ricci/rho-Is-skew-s" + std::to_string(s), "sixtyseven",
            mat_TIs(s, rho_h) == -(mat_IsT(s, rho_h)),
            mat_TIs(s, rho_h) == -(mat_IsT(s, rho_h)) ? "" : "rho_s(X,I_sY) != -rho_s(I_sX,Y)");
    out.add("ricci/vrho-Is-skew-s" + std::to_string(s), "sixtyseven",
            mat_TIs(s, vrho_h) == -(mat_IsT(s, vrho_h)),
            mat_TIs(s, vrho_h) == -(mat_IsT(s, vrho_h)) ? "" : "varrho_s(X,I_sY) != -varrho_s(I_sX,Y)");
  }

  // Ric symmetric on H
  {
    bool ok = true;
    for (int x = 0; x < nh && ok; ++x)
      for (int y = 0; y < nh && ok; ++y) ok = cv.ric.at(x, y) == cv.ric.at(y, x);
    out.add("ricci/ric-symmetric", "sixtyseven", ok, ok ? "" : "horizontal Ric not symmetric");
  }

  // (scaltor): Scal = -8n(n+2) g(T(xi_1,xi_2), xi_3) = 8n(n+2) lambda
  {
    const Rat t123 = rf.ip(cd.torsion.t_dir(rf.xi[1], rf.xi[2]), rf.xi[3]);
    const bool ok1 = cv.scal == Rat(-8 * n * (n + 2)) * t123;
    const bool ok2 = cv.scal == Rat(8 * n * (n + 2)) * cd.conn.lambda;
    out.add("ricci/scal-torsion", "scaltor", ok1 && ok2,
            ok1 && ok2 ? "" : "Scal vs vertical torsion/lambda mismatch");
  }

  // (torv): T(xi_i, xi_j) = eps_k Scal/(8n(n+2)) xi_k - [xi_i, xi_j]_H
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      const VecQ lhs = cd.torsion.t_dir(rf.xi[ii], rf.xi[j]);
      VecQ rhs = (Rat(epsilon(k)) * scal_c2) * rf.xi[k];
      rhs -= rf.h_part(m.frame.bracket(rf.xi[ii], rf.xi[j]));
      if (!(lhs == rhs)) {
        ok = false;
        w = "vertical torsion formula fails at i=" + std::to_string(ii);
      }
    }
    out.add("ricci/vertical-torsion", "torv", ok, w);
  }

  // (vertor): T(xi_i,xi_j,I_k X) = rho_k(I_j X, xi_i) = -rho_k(I_i X, xi_j)
  //                              = omega_k([xi_i,xi_j], X)
  {
    bool ok = true;
    std::string w;
    const auto omega = fundamental_forms(m);
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      const VecQ tij = cd.torsion.t_dir(rf.xi[ii], rf.xi[j]);
      const VecQ brij = m.frame.bracket(rf.xi[ii], rf.xi[j]);
      for (int x = 0; x < nh && ok; ++x) {
        const Rat v1 = rf.ip(tij, m.apply_I(k, x));
        const Rat v2 = cv.pair2(cv.rho[k], m.apply_I(j, x), rf.xi[ii]);
        const Rat v3 = -cv.pair2(cv.rho[k], m.apply_I(ii, x), rf.xi[j]);
        const Rat v4 = omega[k].eval(std::array<VecQ, 2>{brij, vec_basis(dim, x)});
        if (!(v1 == v2 && v2 == v3 && v3 == v4)) {
          ok = false;
          w = "the four expressions disagree at (i, X)=(" + std::to_string(ii) + ", e" +
              std::to_string(x + 1) + ")";
        }
      }
    }
    out.add("ricci/vertor", "vertor", ok, w);
  }

  // (ricciformv) with X(Scal) = 0 on constant models
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      for (int x = 0; x < nh && ok; ++x) {
        const VecQ ex = vec_basis(dim, x);
        const Rat lhs = -Rat(epsilon(ii)) * cv.pair2(cv.rho[ii], ex, rf.xi[ii]);
        Rat rhs = 0;  // -X(Scal)/32n(n+2) vanishes
        rhs += Rat(1, 2) * (-cv.pair2(cv.rho[ii], rf.xi[j], m.apply_I(k, x)) +
                            cv.pair2(cv.rho[j], rf.xi[k], m.apply_I(ii, x)) +
                            cv.pair2(cv.rho[k], rf.xi[ii], m.apply_I(j, x)));
        if (lhs != rhs) {
          ok = false;
          w = "mixed rho formula fails at (i, X)=(" + std::to_string(ii) + ", e" +
              std::to_string(x + 1) + ")";
        }
      }
    }
    out.add("ricci/ricciformv", "ricciformv", ok, w);
  }

  // (ricvert1): -eps_i rho_i(xi_i,xi_j) - eps_k rho_k(xi_k,xi_j) = xi_j(Scal)/16n(n+2) = 0
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      const Rat lhs = -Rat(epsilon(ii)) * cv.pair2(cv.rho[ii], rf.xi[ii], rf.xi[j]) -
                      Rat(epsilon(k)) * cv.pair2(cv.rho[k], rf.xi[k], rf.xi[j]);
      if (!is_zero(lhs)) {
        ok = false;
        w = "vertical rho trace nonzero at i=" + std::to_string(ii);
      }
    }
    out.add("ricci/ricvert1", "ricvert1", ok, w);
  }

  // tau = Ric_[-1]/(2n+2), mu = Ric_[3][0]/(4n+10)
  {
    MatQ ric_h(nh, nh);
    for (int x = 0; x < nh; ++x)
      for (int y = 0; y < nh; ++y) ric_h.at(x, y) = cv.ric.at(x, y);
    MatQ part3 = ric_h;
    for (int s = 1; s <= 3; ++s)
      part3 += (s == 3 ? Rat(1) : Rat(-1)) * mat_conj(s, ric_h);
    part3 = Rat(1, 4) * part3;
    const MatQ part_m1 = ric_h - part3;
    Rat tr3 = 0;
    for (int a = 0; a < nh; ++a)
      for (int b = 0; b < nh; ++b)
        if (!is_zero(rf.g_h_inv.at(a, b))) tr3 += rf.g_h_inv.at(a, b) * part3.at(a, b);
    const MatQ part30 = part3 - (tr3 * Rat(1, 4 * n)) * m.g_h;
    out.add("ricci/tau-from-ric", "ric-components", Rat(2 * n + 2) * tau == part_m1,
            Rat(2 * n + 2) * tau == part_m1 ? "" : "tau != Ric_[-1]/(2n+2)");
    out.add("ricci/mu-from-ric", "ric-components", Rat(4 * n + 10) * mu == part30,
            Rat(4 * n + 10) * mu == part30 ? "" : "mu != Ric_[3][0]/(4n+10)");
  }

  // Scal = 2(n+2) rho_s(I_s e_a, e_a) and the varrho/zeta companions
  for (int s = 1; s <= 3; ++s) {
    auto dtrace = [&](const MatQ& t) {
      Rat acc = 0;
      for (int a = 0; a < nh; ++a)
        for (int b = 0; b < nh; ++b) {
          if (is_zero(rf.g_h_inv.at(a, b))) continue;
          for (int d = 0; d < nh; ++d)
            if (!is_zero(m.I[s].at(d, a))) acc += rf.g_h_inv.at(a, b) * m.I[s].at(d, a) * t.at(d, b);
        }
      return acc;
    };
    const bool ok = cv.scal == Rat(2 * (n + 2)) * dtrace(cv.rho[s]) &&
                    cv.scal == Rat(2 * (n + 2)) * dtrace(cv.vrho[s]) &&
                    cv.scal == Rat(-4 * (n + 2)) * dtrace(cv.zeta[s]);
    out.add("ricci/scal-contractions-s" + std::to_string(s), "scal-contr", ok,
            ok ? "" : "Scal contraction cross-check fails at s=" + std::to_string(s));
  }

  return out;
}

/// Cyclic-sum projector b(A,B,C,D) of the torsion.
inline Tensor4 bianchi_projector(const Model& m, const ReebFrame& rf, const ConnectionData& cd) {
  const int dim = m.dim();
  Tensor4 b(dim);
  const auto& conn = cd.conn;
  const auto& tor = cd.torsion;
  // (nabla_A T)(B,C) as vectors, then lowered
  auto nab_t = [&](int a, int b, int c) {
    VecQ v = conn.nabla_frame(a, tor.t(b, c));
    v -= tor.t_dir(conn.nabla(a, b), vec_basis(dim, c));
    v -= tor.t_dir(vec_basis(dim, b), conn.nabla(a, c));
    return v;
  };
  for (int a = 0; a < dim; ++a)
    for (int bb = 0; bb < dim; ++bb)
      for (int c = 0; c < dim; ++c) {
        VecQ acc(dim, Rat(0));
        const std::array<std::array<int, 3>, 3> cyc = {{{a, bb, c}, {bb, c, a}, {c, a, bb}}};
        for (const auto& t : cyc) {
          acc += nab_t(t[0], t[1], t[2]);
          acc += tor.t_dir(tor.t(t[0], t[1]), vec_basis(dim, t[2]));
        }
        for (int e = 0; e < dim; ++e) b.at(a, bb, c, e) = rf.ip(acc, vec_basis(dim, e));
      }
  return b;
}

/// First Bianchi identity, its double consequence, the raw second Bianchi
/// identity, the contracted second Bianchi and the horizontal expansion of b.
inline CheckList verify_bianchi(const Model& m, const ReebFrame& rf, const ConnectionData& cd,
                                const CurvatureData& cv) {
  CheckList out;
  const int dim = m.dim();
  const int nh = m.dim_h();
  const int n = m.n();
  const Tensor4 b = bianchi_projector(m, rf, cd);

  // (bian1): cyclic sum of R = b
  {
    bool ok = true;
    std::string w;
    for (int a = 0; a < dim && ok; ++a)
      for (int bb = 0; bb < dim && ok; ++bb)
        for (int c = 0; c < dim && ok; ++c)
          for (int e = 0; e < dim; ++e) {
            const Rat lhs =
                cv.r4.at(a, bb, c, e) + cv.r4.at(bb, c, a, e) + cv.r4.at(c, a, bb, e);
            if (lhs != b.at(a, bb, c, e)) {
              ok = false;
              w = "first Bianchi fails at (" + std::to_string(a + 1) + "," +
                  std::to_string(bb + 1) + "," + std::to_string(c + 1) + "," +
                  std::to_string(e + 1) + ")";
              break;
            }
          }
    out.add("bianchi/first", "bian1", ok, w);
  }

  // (zam): 2R(A,B,C,D) - 2R(C,D,A,B) = b(A,B,C,D)+b(B,C,D,A)-b(A,C,D,B)-b(A,B,D,C)
  {
    bool ok = true;
    std::string w;
    for (int a = 0; a < dim && ok; ++a)
      for (int bb = 0; bb < dim && ok; ++bb)
        for (int c = 0; c < dim && ok; ++c)
          for (int e = 0; e < dim; ++e) {
            const Rat lhs = Rat(2) * cv.r4.at(a, bb, c, e) - Rat(2) * cv.r4.at(c, e, a, bb);
            const Rat rhs = b.at(a, bb, c, e) + b.at(bb, c, e, a) - b.at(a, c, e, bb) -
                            b.at(a, bb, e, c);
            if (lhs != rhs) {
              ok = false;
              w = "pair-exchange consequence fails at (" + std::to_string(a + 1) + "," +
                  std::to_string(bb + 1) + "," + std::to_string(c + 1) + "," +
                  std::to_string(e + 1) + ")";
              break;
            }
          }
    out.add("bianchi/pair-exchange", "zam", ok, w);
  }

  // horizontal expansion of b in omega, tau, mu
  {
    bool ok = true;
    std::string w;
    const auto omega = fundamental_forms(m);
    const auto& tau = cd.torsion.tau;
    const auto& mu = cd.torsion.mu;
    for (int x = 0; x < nh && ok; ++x)
      for (int y = 0; y < nh && ok; ++y)
        for (int z = 0; z < nh && ok; ++z)
          for (int v = 0; v < nh; ++v) {
            Rat rhs = 0;
            const std::array<std::array<int, 3>, 3> cyc = {{{x, y, z}, {y, z, x}, {z, x, y}}};
            for (const auto& t : cyc)
              for (int s = 1; s <= 3; ++s) {
                const Rat om = omega[s].value({t[0], t[1]});
                if (is_zero(om)) continue;
                Rat inner = (m.I[s].transposed() * mu).at(t[2], v);
                inner -= Rat(1, 4) * ((m.I[s].transposed() * tau).at(t[2], v) +
                                      (tau * m.I[s]).at(t[2], v));
                rhs += Rat(-2 * epsilon(s)) * om * inner;
              }
            if (b.at(x, y, z, v) != rhs) {
              ok = false;
              w = "horizontal b expansion fails at (e" + std::to_string(x + 1) + ",e" +
                  std::to_string(y + 1) + ",e" + std::to_string(z + 1) + ",e" +
                  std::to_string(v + 1) + ")";
              break;
            }
          }
    out.add("bianchi/horizontal-b-expansion", "b4", ok, w);
  }

  // raw second Bianchi identity
  {
    bool ok = true;
    std::string w;
    auto nab_r = [&](int a, int bb, int c, int d, int e) {
      Rat acc = 0;
      const VecQ& g1 = cd.conn.nabla(a, bb);
      const VecQ& g2 = cd.conn.nabla(a, c);
      const VecQ& g3 = cd.conn.nabla(a, d);
      const VecQ& g4 = cd.conn.nabla(a, e);
      for (int f = 0; f < dim; ++f) {
        if (!is_zero(g1[f])) acc -= g1[f] * cv.r4.at(f, c, d, e);
        if (!is_zero(g2[f])) acc -= g2[f] * cv.r4.at(bb, f, d, e);
        if (!is_zero(g3[f])) acc -= g3[f] * cv.r4.at(bb, c, f, e);
        if (!is_zero(g4[f])) acc -= g4[f] * cv.r4.at(bb, c, d, f);
      }
      return acc;
    };
    for (int a = 0; a < dim && ok; ++a)
      for (int bb = 0; bb < dim && ok; ++bb)
        for (int c = 0; c < dim && ok; ++c)
          for (int d = 0; d < dim && ok; ++d)
            for (int e = 0; e < dim; ++e) {
              Rat acc = 0;
              const std::array<std::array<int, 3>, 3> cyc = {{{a, bb, c}, {bb, c, a}, {c, a, bb}}};
              for (const auto& t : cyc) {
                acc += nab_r(t[0], t[1], t[2], d, e);
                const VecQ& tv = cd.torsion.t(t[0], t[1]);
                for (int f = 0; f < dim; ++f)
                  if (!is_zero(tv[f])) acc += tv[f] * cv.r4.at(f, t[2], d, e);
              }
              if (!is_zero(acc)) {
                ok = false;
                w = "second Bianchi fails at (" + std::to_string(a + 1) + "," +
                    std::to_string(bb + 1) + "," + std::to_string(c + 1) + "," +
                    std::to_string(d + 1) + "," + std::to_string(e + 1) + ")";
                break;
              }
            }
    out.add("bianchi/second-raw", "secb", ok, w);
  }

  // contracted second Bianchi
  {
    bool ok = true;
    std::string w;
    Form scal_fn(dim, 0);
    scal_fn.at(std::initializer_list<int>{}) = cv.scal;
    const Form dscal = scal_fn.d(m.frame);
    for (int x = 0; x < nh && ok; ++x) {
      Rat acc = 0;
      for (int a = 0; a < nh; ++a)
        for (int bb = 0; bb < nh; ++bb) {
          if (is_zero(rf.g_h_inv.at(a, bb))) continue;
          const Rat wgt = rf.g_h_inv.at(a, bb);
          acc += Rat(n - 1) * wgt *
                 detail_curv::nabla_bilinear_h(cd.conn, cd.torsion.tau, a, bb, x, nh);
          acc += Rat(2 * (n + 2)) * wgt *
                 detail_curv::nabla_bilinear_h(cd.conn, cd.torsion.mu, a, bb, x, nh);
        }
      acc -= Rat((n - 1) * (2 * n + 1), 8 * n * (n + 2)) * dscal.value({x});
      if (!is_zero(acc)) {
        ok = false;
        w = "contracted second Bianchi fails at X=e" + std::to_string(x + 1) + ": " + fmt_rat(acc);
      }
    }
    out.add("bianchi/contracted", "div", ok, w);
  }

  return out;
}

/// Vertical curvature formulas, the connection-form expression of the Ricci
/// 2-forms and the mixed rho contraction identities.
inline CheckList verify_vertical_curvature(const Model& m, const ReebFrame& rf,
                                           const ConnectionData& cd, const CurvatureData& cv) {
  CheckList out;
  const int dim = m.dim();
  const int nh = m.dim_h();
  const int n = m.n();
  const auto& conn = cd.conn;
  const auto& tor = cd.torsion;
  const auto omega = fundamental_forms(m);
  std::array<Form, 4> deta;
  for (int s = 1; s <= 3; ++s) deta[s] = m.d_eta(s);

  // (rhoal): rho_i = 1/2 [eps_k d alpha_i - eps_j alpha_j ^ alpha_k]
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      const Form rhs = Rat(1, 2) * (Rat(epsilon(k)) * conn.alpha[ii].d(m.frame) -
                                    Rat(epsilon(j)) * conn.alpha[j].wedge(conn.alpha[k]));
      for (int a = 0; a < dim && ok; ++a)
        for (int bb = 0; bb < dim; ++bb)
          if (cv.rho[ii].at(a, bb) != rhs.value({a, bb})) {
            ok = false;
            w = "rho_" + std::to_string(ii) + " != connection-form expression at (e" +
                std::to_string(a + 1) + ",e" + std::to_string(bb + 1) + ")";
            break;
          }
    }
    out.add("vert/rho-from-alpha", "rhoal", ok, w);
  }

  // (rhov): R(B,C) xi_i = -2 eps_i rho_k(B,C) xi_j + 2 eps_i rho_j(B,C) xi_k
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      for (int a = 0; a < dim && ok; ++a)
        for (int bb = 0; bb < dim; ++bb) {
          const VecQ lhs = cv.op(a, bb).apply(rf.xi[ii]);
          VecQ rhs = (Rat(-2 * epsilon(ii)) * cv.rho[k].at(a, bb)) * rf.xi[j];
          rhs += (Rat(2 * epsilon(ii)) * cv.rho[j].at(a, bb)) * rf.xi[k];
          if (!(lhs == rhs)) {
            ok = false;
            w = "vertical curvature action fails at i=" + std::to_string(ii);
            break;
          }
        }
    }
    out.add("vert/curvature-on-reeb", "rhov", ok, w);
  }

  // (rjr): R(B,C) I_i X - I_i R(B,C) X = 2 eps_i [rho_j I_k X - rho_k I_j X]
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      for (int a = 0; a < dim && ok; ++a)
        for (int bb = 0; bb < dim && ok; ++bb) {
          MatQ rh(nh, nh);
          for (int r = 0; r < nh; ++r)
            for (int c = 0; c < nh; ++c) rh.at(r, c) = cv.op(a, bb).at(r, c);
          const MatQ lhs = rh * m.I[ii] - m.I[ii] * rh;
          MatQ rhs = (Rat(2 * epsilon(ii)) * cv.rho[j].at(a, bb)) * m.I[k];
          rhs -= (Rat(2 * epsilon(ii)) * cv.rho[k].at(a, bb)) * m.I[j];
          if (!(lhs == rhs)) {
            ok = false;
            w = "commutator formula fails at (i, e" + std::to_string(a + 1) + ", e" +
                std::to_string(bb + 1) + "), i=" + std::to_string(ii);
          }
        }
    }
    out.add("vert/curvature-I-commutator", "rjr", ok, w);
  }

  // (riczrho): Ric(C, I_i Y) + 4n zeta_i(C, Y) = -2 eps_i rho_j(C, I_k Y) + 2 eps_i rho_k(C, I_j Y)
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      for (int c = 0; c < dim && ok; ++c) {
        const VecQ ec = vec_basis(dim, c);
        for (int y = 0; y < nh; ++y) {
          const Rat lhs = cv.pair2(cv.ric, ec, m.apply_I(ii, y)) +
                          Rat(4 * n) * cv.zeta[ii].at(c, y);
          const Rat rhs = Rat(-2 * epsilon(ii)) * cv.pair2(cv.rho[j], ec, m.apply_I(k, y)) +
                          Rat(2 * epsilon(ii)) * cv.pair2(cv.rho[k], ec, m.apply_I(j, y));
          if (lhs != rhs) {
            ok = false;
            w = "trace of the commutator formula fails at i=" + std::to_string(ii);
            break;
          }
        }
      }
    }
    out.add("vert/ric-zeta-rho", "riczrho", ok, w);
  }

  // Ricci 2-forms on H via Lie derivatives of the fundamental forms
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      const Form lw = lie_derivative(m.frame, rf.xi[k], omega[j]);
      const Rat cjj = deta[j].eval(std::array<VecQ, 2>{rf.xi[k], rf.xi[j]});
      const Rat cji = deta[j].eval(std::array<VecQ, 2>{rf.xi[k], rf.xi[ii]});
      for (int x = 0; x < nh && ok; ++x)
        for (int y = 0; y < nh; ++y) {
          Rat rhs = Rat(epsilon(ii)) * lw.value({x, y});
          rhs -= Rat(epsilon(ii)) * cjj * omega[j].value({x, y});
          rhs -= Rat(epsilon(j)) * cji * omega[ii].value({x, y});
          if (cv.rho[ii].at(x, y) != rhs) {
            ok = false;
            w = "restricted Ricci 2-form formula fails at i=" + std::to_string(ii);
            break;
          }
        }
    }
    out.add("vert/rho-restricted-to-h", "rho-H", ok, w);
  }

  auto nab_t2_dir = [&](const VecQ& dir, const MatQ& t, const VecQ& u, const VecQ& v) {
    // (nabla_dir t)(u, v) for a constant (0,2) tensor with horizontal support
    Rat acc = 0;
    const VecQ nu = conn.nabla_dir(dir, u);
    const VecQ nv = conn.nabla_dir(dir, v);
    for (int r = 0; r < nh; ++r) {
      for (int c = 0; c < nh; ++c) {
        if (is_zero(t.at(r, c))) continue;
        acc -= nu[r] * t.at(r, c) * v[c];
        acc -= u[r] * t.at(r, c) * nv[c];
      }
    }
    return acc;
  };

  // (vert1)
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      for (int x = 0; x < nh && ok; ++x)
        for (int y = 0; y < nh && ok; ++y)
          for (int z = 0; z < nh; ++z) {
            const VecQ ex = vec_basis(dim, x), ey = vec_basis(dim, y), ez = vec_basis(dim, z);
            const Rat lhs = cv.r4_dir(rf.xi[ii], ex, ey, ez);
            Rat rhs = -nab_t2_dir(ex, tor.mu, m.apply_I(ii, y), ez);
            rhs -= Rat(1, 4) * (nab_t2_dir(ey, tor.tau, m.apply_I(ii, z), ex) +
                                nab_t2_dir(ey, tor.tau, ez, m.apply_I(ii, x)));
            rhs += Rat(1, 4) * (nab_t2_dir(ez, tor.tau, m.apply_I(ii, y), ex) +
                                nab_t2_dir(ez, tor.tau, ey, m.apply_I(ii, x)));
            rhs += omega[j].value({x, y}) * cv.pair2(cv.rho[k], m.apply_I(ii, z), rf.xi[ii]);
            rhs -= omega[k].value({x, y}) * cv.pair2(cv.rho[j], m.apply_I(ii, z), rf.xi[ii]);
            rhs -= omega[j].value({x, z}) * cv.pair2(cv.rho[k], m.apply_I(ii, y), rf.xi[ii]);
            rhs += omega[k].value({x, z}) * cv.pair2(cv.rho[j], m.apply_I(ii, y), rf.xi[ii]);
            rhs -= omega[j].value({y, z}) * cv.pair2(cv.rho[k], m.apply_I(ii, x), rf.xi[ii]);
            rhs += omega[k].value({y, z}) * cv.pair2(cv.rho[j], m.apply_I(ii, x), rf.xi[ii]);
            if (lhs != rhs) {
              ok = false;
              w = "R(xi_i, X, Y, Z) formula fails at i=" + std::to_string(ii);
              break;
            }
          }
    }
    out.add("vert/vert1", "vert1", ok, w);
  }

  // (vert2)
  {
    bool ok = true;
    std::string w;
    const Rat scal_c2 = cv.scal * Rat(1, 8 * n * (n + 2));
    for (int i = 1; i <= 3 && ok; ++i) {
      auto [ii, j, k] = cyclic(i);
      for (int x = 0; x < nh && ok; ++x)
        for (int y = 0; y < nh; ++y) {
          const VecQ ex = vec_basis(dim, x), ey = vec_basis(dim, y);
          const Rat lhs = cv.r4_dir(rf.xi[ii], rf.xi[j], ex, ey);
          Rat rhs = nab_t2_dir(rf.xi[ii], tor.mu, m.apply_I(j, x), ey);
          rhs -= nab_t2_dir(rf.xi[j], tor.mu, m.apply_I(ii, x), ey);
          // eps_j (nabla_X rho_k)(I_i Y, xi_i)
          {
            const VecQ u = m.apply_I(ii, y);
            const VecQ nu = conn.nabla_dir(ex, u);
            const VecQ nxi = conn.nabla_dir(ex, rf.xi[ii]);
            Rat nr = -cv.pair2(cv.rho[k], nu, rf.xi[ii]) - cv.pair2(cv.rho[k], u, nxi);
            rhs += Rat(epsilon(j)) * nr;
          }
          rhs -= Rat(1, 4) * (nab_t2_dir(rf.xi[ii], tor.tau, m.apply_I(j, x), ey) +
                              nab_t2_dir(rf.xi[ii], tor.tau, ex, m.apply_I(j, y)));
          rhs += Rat(1, 4) * (nab_t2_dir(rf.xi[j], tor.tau, m.apply_I(ii, x), ey) +
                              nab_t2_dir(rf.xi[j], tor.tau, ex, m.apply_I(ii, y)));
          rhs += Rat(epsilon(k)) * scal_c2 * tor.t_endo_low[k].at(x, y);
          // - T(xi_j, X, e_a) T(xi_i, e_a, Y) + T(xi_j, e_a, Y) T(xi_i, X, e_a)
          const MatQ cross1 = tor.t_endo_low[j] * rf.g_h_inv * tor.t_endo_low[ii];
          const MatQ cross2 = tor.t_endo_low[ii] * rf.g_h_inv * tor.t_endo_low[j];
          rhs -= cross1.at(x, y);
          rhs += cross2.at(x, y);
          if (lhs != rhs) {
            ok = false;
            w = "R(xi_i, xi_j, X, Y) formula fails at i=" + std::to_string(ii);
            break;
          }
        }
    }
    out.add("vert/vert2", "vert2", ok, w);
  }

  // (vert023) and (vert024) with X(Scal) = 0
  {
    bool ok23 = true, ok24 = true;
    std::string w23, w24;
    for (int i = 1; i <= 3; ++i) {
      auto [ii, j, k] = cyclic(i);
      for (int x = 0; x < nh; ++x) {
        const VecQ ex = vec_basis(dim, x);
        Rat tr_tau_plain = 0, tr_tau_twist = 0, tr_mu = 0;
        for (int a = 0; a < nh; ++a)
          for (int bb = 0; bb < nh; ++bb) {
            if (is_zero(rf.g_h_inv.at(a, bb))) continue;
            const Rat wgt = rf.g_h_inv.at(a, bb);
            tr_tau_plain += wgt * detail_curv::nabla_bilinear_h(conn, tor.tau, a, bb, x, nh);
            tr_tau_twist += wgt * nab_t2_dir(vec_basis(dim, a), tor.tau,
                                             m.apply_I(ii, bb), m.apply_I(ii, x));
            tr_mu += wgt * nab_t2_dir(vec_basis(dim, a), tor.mu, ex, vec_basis(dim, bb));
          }
        {
          const Rat lhs = Rat(3 * (2 * n + 1)) * cv.pair2(cv.rho[ii], rf.xi[ii], ex);
          const Rat rhs = Rat(-epsilon(ii), 4) * tr_tau_plain - Rat(3, 4) * tr_tau_twist +
                          Rat(epsilon(ii)) * tr_mu;
          if (lhs != rhs && ok23) {
            ok23 = false;
            w23 = "mixed rho trace formula fails at i=" + std::to_string(ii);
          }
        }
        {
          const Rat lhs1 = Rat(3 * (2 * n + 1)) * cv.pair2(cv.rho[ii], m.apply_I(k, x), rf.xi[j]);
          const Rat lhs2 = Rat(-3 * (2 * n + 1)) * cv.pair2(cv.rho[ii], m.apply_I(j, x), rf.xi[k]);
          const Rat rhs = Rat(2 * (n + 1)) * tr_mu + Rat(4 * n + 1, 4) * tr_tau_plain -
                          Rat(3 * epsilon(ii), 4) * tr_tau_twist;
          if ((lhs1 != rhs || lhs2 != rhs) && ok24) {
            ok24 = false;
            w24 = "mixed rho twisted formula fails at i=" + std::to_string(ii);
          }
        }
      }
    }
    out.add("vert/vert023", "vert023", ok23, w23);
    out.add("vert/vert024", "vert024", ok24, w24);
  }

  return out;
}

/// Flatness classification with the implied-vanishing consistency sweep.
struct FlatnessVerdict {
  bool flat = false;
  std::string label;  // "locally isomorphic to the flat 2-step model" when flat
};

struct EngineInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline FlatnessVerdict check_flat(const Model& m, const ReebFrame& rf, const ConnectionData& cd,
                                  const CurvatureData& cv) {
  const int nh = m.dim_h();
  bool flat_h = true;
  for (int a = 0; a < nh && flat_h; ++a)
    for (int b = 0; b < nh && flat_h; ++b)
      for (int c = 0; c < nh && flat_h; ++c)
        for (int e = 0; e < nh; ++e)
          if (!is_zero(cv.r4.at(a, b, c, e))) {
            flat_h = false;
            break;
          }
  if (!flat_h) return {false, "not flat"};
  if (!cv.r4.is_zero())
    throw EngineInconsistency("horizontal curvature vanishes but the full curvature does not");
  for (int s = 1; s <= 3; ++s)
    if (!cd.torsion.t_endo[s].is_zero())
      throw EngineInconsistency("flat model with nonvanishing torsion endomorphism");
  for (int s = 1; s <= 3; ++s)
    for (int t = 1; t <= 3; ++t)
      if (!vec_is_zero(cd.torsion.t_dir(rf.xi[s], rf.xi[t])))
        throw EngineInconsistency("flat model with nonvanishing vertical torsion");
  if (!is_zero(cv.scal)) throw EngineInconsistency("flat model with nonzero scalar curvature");
  return {true, "locally isomorphic to the flat 2-step model"};
}

}  // namespace pqc
