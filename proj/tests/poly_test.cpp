#include <gtest/gtest.h>

#include "pqc/model.hpp"
#include "pqc/polyfield.hpp"

using namespace pqc;

TEST(Poly, ArithmeticAndPartials) {
  const int nv = 3;
  const Poly x = Poly::variable(nv, 0), y = Poly::variable(nv, 1);
  const Poly p = x * x * y + rat(2) * y;
  EXPECT_EQ(p.partial(0), rat(2) * (x * y));
  EXPECT_EQ(p.partial(1), x * x + Poly::constant(nv, 2));
  EXPECT_TRUE((p - p).is_zero());
}

TEST(PolyBracket, CoordinateFieldsMatchStructureConstantsN1) {
  const auto m = builtin_heisenberg(1);
  const auto fields = heisenberg_coordinate_fields(1);
  const auto rep = poly_bracket_check(fields, m.frame);
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.mismatches.empty());
}

TEST(PolyBracket, CoordinateFieldsMatchStructureConstantsN2) {
  const auto m = builtin_heisenberg(2);
  const auto rep = poly_bracket_check(heisenberg_coordinate_fields(2), m.frame);
  EXPECT_TRUE(rep.ok);
}

TEST(PolyBracket, CorruptedCoefficientIsLocated) {
  const auto m = builtin_heisenberg(1);
  auto fields = heisenberg_coordinate_fields(1);
  fields[1].comp[4] += Poly::variable(7, 0);  // corrupt Y1's wx-coefficient
  const auto rep = poly_bracket_check(fields, m.frame);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.mismatches.empty());
  bool names_field2 = false;
  for (const auto& s : rep.mismatches)
    names_field2 = names_field2 || s.find("2") != std::string::npos;
  EXPECT_TRUE(names_field2);
}

TEST(ContactForms, FrameFieldsAreHorizontalAndNormalized) {
  for (int n : {1, 2}) {
    const auto fields = heisenberg_coordinate_fields(n);
    const auto theta = heisenberg_contact_forms(n);
    const int nc = 4 * n + 3;
    for (int s = 1; s <= 3; ++s) {
      for (int h = 0; h < 4 * n; ++h)
        EXPECT_TRUE(theta[s].pair(fields[h]).is_zero())
            << "theta_" << s << " does not annihilate frame field " << h + 1;
      for (int t = 1; t <= 3; ++t) {
        const Poly v = theta[s].pair(fields[4 * n + t - 1]);
        EXPECT_EQ(v, Poly::constant(nc, s == t ? 1 : 0));
      }
    }
  }
}

TEST(ContactForms, ExteriorDerivativesMatchDisplayedEquations) {
  for (int n : {1, 2}) {
    const auto theta = heisenberg_contact_forms(n);
    const int nc = 4 * n + 3;
    PolyForm2 d3, d1, d2;
    d3.ncoords = d1.ncoords = d2.ncoords = nc;
    for (int a = 0; a < n; ++a) {
      const int t = 4 * a, x = 4 * a + 1, y = 4 * a + 2, z = 4 * a + 3;
      d3.comp[{t, x}] = Poly::constant(nc, 2);  // 2 dt^dx
      d3.comp[{y, z}] = Poly::constant(nc, 2);  // 2 dy^dz
      d1.comp[{t, y}] = Poly::constant(nc, 2);
      d1.comp[{x, z}] = Poly::constant(nc, 2);
      d2.comp[{t, z}] = Poly::constant(nc, 2);
      d2.comp[{x, y}] = Poly::constant(nc, -2);
    }
    EXPECT_TRUE(poly_d(theta[3]) == d3);
    EXPECT_TRUE(poly_d(theta[1]) == d1);
    EXPECT_TRUE(poly_d(theta[2]) == d2);
  }
}
