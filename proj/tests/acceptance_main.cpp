// Acceptance suite: runs every top-level criterion at its stated tolerance
// (exact arithmetic throughout) and prints one pass/fail line per criterion.

#include <chrono>
#include <iostream>
#include <string>

#include "pqc/classify.hpp"
#include "pqc/formal.hpp"
#include "pqc/gauge.hpp"
#include "pqc/model_io.hpp"
#include "pqc/polyfield.hpp"

using namespace pqc;

namespace {

int g_failures = 0;

void report(int k, bool pass, const std::string& what) {
  std::cout << "CRITERION " << k << ": " << (pass ? "PASS" : "FAIL") << " - " << what << "\n";
  if (!pass) ++g_failures;
}

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

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: the flat model, n = 1 and n = 2 ----
void criterion1() {
  bool pass = true;
  std::string detail;
  double t1 = 0, t2 = 0;
  for (int n : {1, 2}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = builtin_heisenberg(n);
    if (!validate_pqc(m).all_pass()) pass = false;
    const auto b = build(m);
    pass = pass && b.cd.checks.all_pass();
    pass = pass && b.cv.r4.is_zero();
    for (int s = 1; s <= 3; ++s) pass = pass && b.cd.torsion.t_endo[s].is_zero();
    pass = pass && b.cd.torsion.tau.is_zero() && b.cd.torsion.mu.is_zero();
    pass = pass && b.cd.conn.lambda == Rat(0) && b.cv.scal == Rat(0);
    pass = pass && classify(m).label == Label::FlatHeisenberg;
    (n == 1 ? t1 : t2) = seconds_since(t0);
  }
  pass = pass && t1 < 1.0 && t2 < 30.0;
  detail = "flat model n=1,2: R=0, T(xi,.)=0, tau=mu=0, lambda=Scal=0, FlatHeisenberg (" +
           std::to_string(t1) + " s / " + std::to_string(t2) + " s)";
  report(1, pass, detail);
}

// ---- criterion 2: the solvable model golden values ----
void criterion2() {
  bool pass = true;
  for (long c : {1L, 3L}) {
    const auto m = builtin_l0(rat(c));
    const auto b = build(m);
    Form a2(7, 1);
    a2.at({3}) = rat(-c);
    pass = pass && b.cd.conn.alpha[1].is_zero() && b.cd.conn.alpha[3].is_zero();
    pass = pass && b.cd.conn.alpha[2] == a2;
    pass = pass && b.cv.r4.is_zero();
    for (int s = 1; s <= 3; ++s) pass = pass && b.cd.torsion.t_endo[s].is_zero();
    bool nonparallel = false;
    for (int a = 0; a < 7; ++a)
      for (int bb = 0; bb < 7; ++bb)
        nonparallel = nonparallel || !vec_is_zero(b.cd.conn.nabla(a, bb));
    pass = pass && nonparallel;
  }
  report(2, pass, "solvable model c=1,3: alpha_1=alpha_3=0, alpha_2=-c g4, R=0, torsion "
                  "endomorphism zero, frame not parallel");
}

// ---- criterion 3: the Ricci-identity suite on built-ins and gauges ----
void criterion3() {
  bool pass = true;
  int models = 0;
  auto check_one = [&](const Model& m) {
    const auto b = build(m);
    const auto checks = verify_ricci_identities(b.m, b.rf, b.cd, b.cv);
    if (!checks.all_pass()) pass = false;
    ++models;
  };
  for (const auto& base : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(1)),
                           builtin_l0(rat(3))}) {
    check_one(base);
  }
  for (const auto& base : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(3))})
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      check_one(gauge_transform(base, random_gauge(base, seed)));
  report(3, pass, "nine Ricci-type identities, symmetry claims and the Scal cross-checks hold on " +
                      std::to_string(models) + " models (built-ins + 20 seeded gauges each)");
}

// ---- criterion 4: the Bianchi suite and its negative control ----
void criterion4() {
  bool pass = true;
  for (const auto& m : {builtin_heisenberg(1), builtin_heisenberg(2), builtin_l0(rat(1)),
                        builtin_l0(rat(3))}) {
    const auto b = build(m);
    if (!verify_bianchi(b.m, b.rf, b.cd, b.cv).all_pass()) pass = false;
  }
  for (const auto& base : {builtin_heisenberg(1), builtin_l0(rat(3))}) {
    const auto t = gauge_transform(base, random_gauge(base, 1001));
    const auto b = build(t);
    if (!verify_bianchi(b.m, b.rf, b.cd, b.cv).all_pass()) pass = false;
  }
  // negative control: one perturbed connection coefficient must be caught
  {
    const auto m = builtin_heisenberg(1);
    auto rf = std::get<ReebFrame>(solve_reeb(m));
    auto cd = build_connection(m, rf);
    cd.conn.gamma[0 * 7 + 1][2] += 1;
    const auto cv = curvature_tensor(m, rf, cd.conn);
    const bool detected = !verify_bianchi(m, rf, cd, cv).all_pass() ||
                          !verify_ricci_identities(m, rf, cd, cv).all_pass();
    pass = pass && detected;
  }
  report(4, pass, "first/second/contracted Bianchi identities hold on all tested models; "
                  "a corrupted coefficient is detected");
}

// ---- criterion 5: 4-form recovery at n = 2 and the n = 1 rejection ----
void criterion5() {
  bool pass = true;
  const auto m = builtin_heisenberg(2);
  const auto b = build(m);
  const auto ff = fundamental_four_form(m);
  pass = pass && ff.d_omega4.is_zero();
  const auto rec = recover_torsion_from_dOmega(m, b.rf, ff.d_omega4);
  pass = pass && rec.tau.is_zero() && rec.mu.is_zero();
  pass = pass && rec.tau == b.cd.torsion.tau && rec.mu == b.cd.torsion.mu;
  bool rejected = false;
  try {
    const auto m1 = builtin_heisenberg(1);
    const auto b1 = build(m1);
    recover_torsion_from_dOmega(m1, b1.rf, fundamental_four_form(m1).d_omega4);
  } catch (const RejectedForN1&) {
    rejected = true;
  }
  pass = pass && rejected;
  report(5, pass, "d of the 4-form vanishes at n=2, recovery returns tau=mu=0 matching the "
                  "direct route, and n=1 input is rejected");
}

// ---- criterion 6: the symbolic cone computation ----
void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto checks = formal_dga_verify();
  const double secs = seconds_since(t0);
  const bool pass = checks.all_pass() && secs < 5.0;
  report(6, pass, "symbolic rule set: d^2 = 0, closed cone forms, closed invariant 4-forms, "
                  "structure-equation reduction (" + std::to_string(secs) + " s)");
}

// ---- criterion 7: the scalar-curvature arithmetic anchor ----
void criterion7() {
  const long expected[4] = {0, 48, 128, 240};
  bool pass = true;
  for (int n = 1; n <= 3; ++n) {
    pass = pass && sasakian_scal_requirement(n) == expected[n];
    pass = pass && sasakian_scal_via_lambda(n) == expected[n];
  }
  report(7, pass, "normalized-structure Scal requirement equals 48, 128, 240 for n = 1, 2, 3 "
                  "under both defining products");
}

// ---- criterion 8: the coordinate cross-check ----
void criterion8() {
  bool pass = true;
  for (int n : {1, 2}) {
    const auto m = builtin_heisenberg(n);
    pass = pass && poly_bracket_check(heisenberg_coordinate_fields(n), m.frame).ok;
    const auto theta = heisenberg_contact_forms(n);
    const int nc = 4 * n + 3;
    PolyForm2 d3, d1, d2;
    d3.ncoords = d1.ncoords = d2.ncoords = nc;
    for (int a = 0; a < n; ++a) {
      const int t = 4 * a, x = 4 * a + 1, y = 4 * a + 2, z = 4 * a + 3;
      d3.comp[{t, x}] = Poly::constant(nc, 2);
      d3.comp[{y, z}] = Poly::constant(nc, 2);
      d1.comp[{t, y}] = Poly::constant(nc, 2);
      d1.comp[{x, z}] = Poly::constant(nc, 2);
      d2.comp[{t, z}] = Poly::constant(nc, 2);
      d2.comp[{x, y}] = Poly::constant(nc, -2);
    }
    pass = pass && poly_d(theta[3]) == d3 && poly_d(theta[1]) == d1 && poly_d(theta[2]) == d2;
  }
  report(8, pass, "polynomial coordinate fields reproduce the structure constants for n = 1, 2 "
                  "and the contact-form derivatives match the expected equations");
}

// ---- criterion 9: the uniqueness-lemma realization ----
void criterion9() {
  bool pass = true;
  {
    const auto m = builtin_heisenberg(1);
    const auto cs =
        derive_structure_from_contact({MatQ{}, m.d_eta_h(1), m.d_eta_h(2), m.d_eta_h(3)});
    pass = pass && cs.g == m.g_h;
    for (int s = 1; s <= 3; ++s) pass = pass && cs.I[s] == m.I[s];
  }
  {
    const auto m = builtin_l0(rat(3));  // construction itself runs the recovery
    pass = pass && validate_pqc(m).all_pass();
  }
  {
    bool rejected = false;
    const auto m = builtin_heisenberg(1);
    try {
      derive_structure_from_contact({MatQ{}, m.d_eta_h(1), -m.d_eta_h(2), m.d_eta_h(3)});
    } catch (const ContactDataError&) {
      rejected = true;
    }
    pass = pass && rejected;
  }
  report(9, pass, "contact-data recovery returns the declared structure on the flat model, "
                  "validated data for the solvable model, and rejects a sign flip");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria pass"
                                : "ACCEPTANCE: " + std::to_string(g_failures) + " criteria failed")
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
