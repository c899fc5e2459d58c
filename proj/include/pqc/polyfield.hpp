#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pqc/coframe.hpp"
#include "pqc/rational.hpp"

namespace pqc {

/// Multivariate polynomial with exact rational coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, Rat c) {
    Poly p(nvars);
    if (!pqc::is_zero(c)) p.terms_[std::vector<int>(nvars, 0)] = std::move(c);
    return p;
  }
  static Poly variable(int nvars, int i, Rat c = Rat(1)) {
    Poly p(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    if (!pqc::is_zero(c)) p.terms_[std::move(e)] = std::move(c);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_[e] = c;
      } else {
        it->second += c;
        if (pqc::is_zero(it->second)) terms_.erase(it);
      }
    }
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend Poly operator-(Poly a, const Poly& b) { return a += -b; }
  friend Poly operator*(const Rat& c, Poly p) {
    if (pqc::is_zero(c)) return Poly(p.nvars_);
    for (auto& [e, v] : p.terms_) v *= c;
    return p;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        std::vector<int> e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          r.terms_[std::move(e)] = ca * cb;
        } else {
          it->second += ca * cb;
          if (pqc::is_zero(it->second)) r.terms_.erase(it);
        }
      }
    return r;
  }

  Poly partial(int i) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      std::vector<int> e2 = e;
      e2[i] -= 1;
      r.terms_[std::move(e2)] = Rat(e[i]) * c;
    }
    return r;
  }

 private:
  int nvars_ = 0;
  std::map<std::vector<int>, Rat> terms_;
};

/// Vector field with polynomial coefficients, one per coordinate.
struct PolyVectorField {
  std::vector<Poly> comp;

  int ncoords() const { return static_cast<int>(comp.size()); }
  bool operator==(const PolyVectorField& o) const { return comp == o.comp; }
};

inline PolyVectorField poly_bracket(const PolyVectorField& v, const PolyVectorField& w) {
  const int nc = v.ncoords();
  PolyVectorField out;
  out.comp.assign(nc, Poly(v.comp[0].nvars()));
  for (int i = 0; i < nc; ++i) {
    Poly acc(v.comp[0].nvars());
    for (int j = 0; j < nc; ++j) {
      acc += v.comp[j] * w.comp[i].partial(j);
      acc += -(w.comp[j] * v.comp[i].partial(j));
    }
    out.comp[i] = acc;
  }
  return out;
}

struct PolyBracketReport {
  bool ok = true;
  std::vector<std::string> mismatches;  // offending pairs
};

/// Confirms that one polynomial field per frame label reproduces the model's
/// structure constants: [V_b, V_c] = sum_a C^a_{bc} V_a exactly.
inline PolyBracketReport poly_bracket_check(const std::vector<PolyVectorField>& fields,
                                            const CoframeModel& m) {
  PolyBracketReport rep;
  if (static_cast<int>(fields.size()) != m.dim()) {
    rep.ok = false;
    rep.mismatches.push_back("expected one field per frame label");
    return rep;
  }
  const int nv = fields[0].comp[0].nvars();
  for (int b = 0; b < m.dim(); ++b)
    for (int c = b + 1; c < m.dim(); ++c) {
      const PolyVectorField lhs = poly_bracket(fields[b], fields[c]);
      PolyVectorField rhs;
      rhs.comp.assign(fields[0].ncoords(), Poly(nv));
      for (int a = 0; a < m.dim(); ++a) {
        if (is_zero(m.C(a, b, c))) continue;
        for (int i = 0; i < fields[a].ncoords(); ++i)
          rhs.comp[i] += m.C(a, b, c) * fields[a].comp[i];
      }
      if (!(lhs == rhs)) {
        rep.ok = false;
        std::ostringstream os;
        os << "bracket of frame fields " << b + 1 << " and " << c + 1
           << " does not match the structure constants";
        rep.mismatches.push_back(os.str());
      }
    }
  return rep;
}

/// 1-form with polynomial coefficients: sum comp[i] dx^i.
struct PolyForm1 {
  std::vector<Poly> comp;

  Poly pair(const PolyVectorField& v) const {
    Poly acc(comp[0].nvars());
    for (std::size_t i = 0; i < comp.size(); ++i) acc += comp[i] * v.comp[i];
    return acc;
  }
};

/// 2-form with polynomial coefficients over i < j pairs.
struct PolyForm2 {
  int ncoords = 0;
  std::map<std::pair<int, int>, Poly> comp;

  bool operator==(const PolyForm2& o) const {
    if (ncoords != o.ncoords) return false;
    for (const auto& [k, p] : comp)
      if (!p.is_zero()) {
        auto it = o.comp.find(k);
        if (it == o.comp.end() || !(it->second == p)) return false;
      }
    for (const auto& [k, p] : o.comp)
      if (!p.is_zero()) {
        auto it = comp.find(k);
        if (it == comp.end() || !(it->second == p)) return false;
      }
    return true;
  }
};

inline PolyForm2 poly_d(const PolyForm1& w) {
  PolyForm2 out;
  const int nc = static_cast<int>(w.comp.size());
  out.ncoords = nc;
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) {
      // d(f dx^j)(e_i, e_j) picks up df/dx^i; orientation (i < j)
      Poly c = w.comp[j].partial(i) - w.comp[i].partial(j);
      if (!c.is_zero()) out.comp[{i, j}] = std::move(c);
    }
  return out;
}

/// Left-invariant coordinate realization of the flat 2-step group: one field
/// per frame label of builtin_heisenberg(n), on coordinates
/// (t_1, x_1, y_1, z_1, ..., wx, wy, wz).
inline std::vector<PolyVectorField> heisenberg_coordinate_fields(int n) {
  const int nc = 4 * n + 3;
  const int wx = 4 * n, wy = 4 * n + 1, wz = 4 * n + 2;
  std::vector<PolyVectorField> fields(4 * n + 3);
  for (auto& f : fields) f.comp.assign(nc, Poly(nc));
  auto var = [&](int i) { return Poly::variable(nc, i); };
  for (int a = 0; a < n; ++a) {
    const int t = 4 * a, x = 4 * a + 1, y = 4 * a + 2, z = 4 * a + 3;
    // frame order per block: T, Y = I1 T, Z = I2 T, X = I3 T
    auto& T = fields[4 * a];
    T.comp[t] = Poly::constant(nc, 1);
    T.comp[wx] = rat(2) * var(x);
    T.comp[wy] = rat(2) * var(y);
    T.comp[wz] = rat(2) * var(z);
    auto& Y = fields[4 * a + 1];
    Y.comp[y] = Poly::constant(nc, 1);
    Y.comp[wx] = rat(2) * var(z);
    Y.comp[wy] = rat(-2) * var(t);
    Y.comp[wz] = rat(2) * var(x);
    auto& Z = fields[4 * a + 2];
    Z.comp[z] = Poly::constant(nc, 1);
    Z.comp[wx] = rat(-2) * var(y);
    Z.comp[wy] = rat(-2) * var(x);
    Z.comp[wz] = rat(-2) * var(t);
    auto& X = fields[4 * a + 3];
    X.comp[x] = Poly::constant(nc, 1);
    X.comp[wx] = rat(-2) * var(t);
    X.comp[wy] = rat(2) * var(z);
    X.comp[wz] = rat(-2) * var(y);
  }
  fields[wx].comp[wy] = Poly::constant(nc, 2);   // xi_1 = 2 d/dwy
  fields[wy].comp[wz] = Poly::constant(nc, 2);   // xi_2 = 2 d/dwz
  fields[wz].comp[wx] = Poly::constant(nc, 2);   // xi_3 = 2 d/dwx
  return fields;
}

/// The contact 1-forms of the coordinate realization.
inline std::array<PolyForm1, 4> heisenberg_contact_forms(int n) {
  const int nc = 4 * n + 3;
  const int wx = 4 * n, wy = 4 * n + 1, wz = 4 * n + 2;
  std::array<PolyForm1, 4> theta;
  for (int s = 1; s <= 3; ++s) theta[s].comp.assign(nc, Poly(nc));
  auto var = [&](int i) { return Poly::variable(nc, i); };
  theta[3].comp[wx] = Poly::constant(nc, rat(1, 2));
  theta[1].comp[wy] = Poly::constant(nc, rat(1, 2));
  theta[2].comp[wz] = Poly::constant(nc, rat(1, 2));
  for (int a = 0; a < n; ++a) {
    const int t = 4 * a, x = 4 * a + 1, y = 4 * a + 2, z = 4 * a + 3;
    theta[3].comp[x] += var(t);
    theta[3].comp[t] += rat(-1) * var(x);
    theta[3].comp[z] += var(y);
    theta[3].comp[y] += rat(-1) * var(z);
    theta[1].comp[y] += var(t);
    theta[1].comp[t] += rat(-1) * var(y);
    theta[1].comp[z] += var(x);
    theta[1].comp[x] += rat(-1) * var(z);
    theta[2].comp[z] += var(t);
    theta[2].comp[t] += rat(-1) * var(z);
    theta[2].comp[y] += rat(-1) * var(x);
    theta[2].comp[x] += var(y);
  }
  return theta;
}

}  // namespace pqc
