#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pqc/check.hpp"
#include "pqc/paraquaternion.hpp"
#include "pqc/rational.hpp"

namespace pqc {

/// Polynomial in the cone coordinate t with rational coefficients.
class PolyT {
 public:
  PolyT() = default;
  PolyT(Rat c) { if (!pqc::is_zero(c)) c_ = {std::move(c)}; }
  static PolyT t(int power = 1) {
    PolyT p;
    p.c_.assign(power + 1, Rat(0));
    p.c_[power] = 1;
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  PolyT& operator+=(const PolyT& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  PolyT operator-() const {
    PolyT r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a += -b; }
  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    if (a.is_zero() || b.is_zero()) return {};
    PolyT r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  bool operator==(const PolyT& o) const { return c_ == o.c_; }

  PolyT derivative() const {
    PolyT r;
    if (c_.size() <= 1) return r;
    r.c_.assign(c_.size() - 1, Rat(0));
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = Rat(static_cast<long>(i)) * c_[i];
    r.trim();
    return r;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (pqc::is_zero(c_[i])) continue;
      if (!first) os << " + ";
      os << rat_to_string(c_[i]);
      if (i >= 1) os << "*t";
      if (i >= 2) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && pqc::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Rat> c_;  // c_[k] is the t^k coefficient
};

/// Monomial in the free graded-commutative algebra on
/// dt < eta_1 < eta_2 < eta_3 (odd) and phi_1, phi_2, phi_3 (even).
struct FMono {
  std::uint8_t odd = 0;           // bit 0 = dt, bits 1..3 = eta_s
  std::array<int, 3> phi{0, 0, 0};

  int degree() const {
    int d = 0;
    for (int b = 0; b < 4; ++b) d += (odd >> b) & 1;
    return d + 2 * (phi[0] + phi[1] + phi[2]);
  }
  bool operator<(const FMono& o) const {
    if (odd != o.odd) return odd < o.odd;
    return phi < o.phi;
  }
  bool operator==(const FMono& o) const { return odd == o.odd && phi == o.phi; }
};

/// Element of the free graded-commutative differential algebra with
/// polynomial-in-t coefficients, kept in normal form.
class FormalElement {
 public:
  FormalElement() = default;
  FormalElement(Rat c) {
    if (!pqc::is_zero(c)) terms_[FMono{}] = PolyT(std::move(c));
  }

  static FormalElement scalar(PolyT p) {
    FormalElement e;
    if (!p.is_zero()) e.terms_[FMono{}] = std::move(p);
    return e;
  }
  static FormalElement dt() {
    FormalElement e;
    FMono m;
    m.odd = 1;
    e.terms_[m] = PolyT(Rat(1));
    return e;
  }
  static FormalElement eta(int s) {
    FormalElement e;
    FMono m;
    m.odd = static_cast<std::uint8_t>(1u << s);
    e.terms_[m] = PolyT(Rat(1));
    return e;
  }
  static FormalElement phi(int s) {
    FormalElement e;
    FMono m;
    m.phi[s - 1] = 1;
    e.terms_[m] = PolyT(Rat(1));
    return e;
  }

  bool is_zero() const { return terms_.empty(); }

  FormalElement& operator+=(const FormalElement& o) {
    for (const auto& [m, c] : o.terms_) {
      auto it = terms_.find(m);
      if (it == terms_.end()) {
        terms_[m] = c;
      } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  friend FormalElement operator+(FormalElement a, const FormalElement& b) { return a += b; }
  FormalElement operator-() const {
    FormalElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend FormalElement operator-(FormalElement a, const FormalElement& b) { return a += -b; }
  friend FormalElement operator*(const Rat& c, const FormalElement& e) {
    return FormalElement::scalar(PolyT(c)) * e;
  }

  friend FormalElement operator*(const FormalElement& a, const FormalElement& b) {
    FormalElement r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.odd & mb.odd) continue;  // repeated odd generator
        // sign: each odd generator of mb moves left past the greater odd
        // generators of ma
        int inv = 0;
        for (int gb = 0; gb < 4; ++gb) {
          if (!((mb.odd >> gb) & 1)) continue;
          for (int ga = gb + 1; ga < 4; ++ga)
            if ((ma.odd >> ga) & 1) ++inv;
        }
        FMono m;
        m.odd = ma.odd | mb.odd;
        for (int s = 0; s < 3; ++s) m.phi[s] = ma.phi[s] + mb.phi[s];
        PolyT c = ca * cb;
        if (inv % 2 == 1) c = -c;
        auto it = r.terms_.find(m);
        if (it == r.terms_.end()) {
          if (!c.is_zero()) r.terms_[m] = std::move(c);
        } else {
          it->second += c;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }

  bool operator==(const FormalElement& o) const { return terms_ == o.terms_; }

  /// Normal-form rendering; "0" when empty.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    static const char* odd_names[4] = {"dt", "eta1", "eta2", "eta3"};
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      os << "(" << c.str() << ")";
      for (int b = 0; b < 4; ++b)
        if ((m.odd >> b) & 1) os << "^" << odd_names[b];
      for (int s = 0; s < 3; ++s)
        for (int e = 0; e < m.phi[s]; ++e) os << "^phi" << s + 1;
      first = false;
    }
    return os.str();
  }

  const std::map<FMono, PolyT>& terms() const { return terms_; }

 private:
  friend FormalElement formal_d(const FormalElement&);
  std::map<FMono, PolyT> terms_;
};

/// d on generators: d(eta_i) = -2 eps_i phi_i - 2 eps_i eta_j^eta_k,
/// d(phi_i) = 2 eps_j phi_j^eta_k - 2 eps_k phi_k^eta_j, d(dt) = 0, d(t) = dt.
inline FormalElement formal_d_eta(int i) {
  auto [ii, j, k] = cyclic(i);
  return Rat(-2 * epsilon(ii)) * FormalElement::phi(ii) +
         Rat(-2 * epsilon(ii)) * (FormalElement::eta(j) * FormalElement::eta(k));
}

inline FormalElement formal_d_phi(int i) {
  auto [ii, j, k] = cyclic(i);
  return Rat(2 * epsilon(j)) * (FormalElement::phi(j) * FormalElement::eta(k)) -
         Rat(2 * epsilon(k)) * (FormalElement::phi(k) * FormalElement::eta(j));
}

inline FormalElement formal_d(const FormalElement& e) {
  FormalElement out;
  for (const auto& [m, c] : e.terms_) {
    // coefficient part: c'(t) dt ^ monomial
    FormalElement mono;
    mono.terms_[m] = PolyT(Rat(1));
    const PolyT dc = c.derivative();
    if (!dc.is_zero()) out += FormalElement::scalar(dc) * FormalElement::dt() * mono;
    // graded Leibniz across the generators, in canonical order
    int sign = 1;
    // odd generators first (dt has no differential)
    for (int b = 1; b < 4; ++b) {
      if (!((m.odd >> b) & 1)) continue;
      // prefix sign: odd generators before this one
      int pre = 0;
      for (int b2 = 0; b2 < b; ++b2)
        if ((m.odd >> b2) & 1) ++pre;
      FMono rest = m;
      rest.odd = static_cast<std::uint8_t>(m.odd & ~(1u << b));
      FormalElement rest_el;
      rest_el.terms_[rest] = c;
      FormalElement piece = formal_d_eta(b) * rest_el;
      if (pre % 2 == 1) piece = -piece;
      out += piece;
    }
    // even generators: d(phi^p) = p phi^(p-1) dphi; the Leibniz prefix sign
    // cancels against moving the odd-degree dphi to the front
    for (int s = 0; s < 3; ++s) {
      if (m.phi[s] == 0) continue;
      FMono rest = m;
      rest.phi[s] -= 1;
      FormalElement rest_el;
      rest_el.terms_[rest] = c * PolyT(Rat(m.phi[s]));
      out += formal_d_phi(s + 1) * rest_el;
    }
    (void)sign;
  }
  return out;
}

/// The cone 2-forms F_i = t^2 (phi_i + eta_j^eta_k) + eps_i t eta_i^dt.
inline FormalElement formal_cone_form(int i) {
  auto [ii, j, k] = cyclic(i);
  FormalElement f = FormalElement::scalar(PolyT::t(2)) *
                    (FormalElement::phi(ii) + FormalElement::eta(j) * FormalElement::eta(k));
  f += Rat(epsilon(ii)) * (FormalElement::scalar(PolyT::t(1)) *
                           (FormalElement::eta(ii) * FormalElement::dt()));
  return f;
}

/// Symbolic verification of the structure-equation rule set, the cone forms
/// and the closed invariant 4-forms; every residue is reported verbatim.
inline CheckList formal_dga_verify() {
  CheckList out;
  auto residue = [&](const std::string& id, const std::string& anchor, const FormalElement& e) {
    out.add(id, anchor, e.is_zero(), e.is_zero() ? "" : "residue: " + e.str());
  };

  // (a) d^2 = 0 on every generator under the rule set
  for (int i = 1; i <= 3; ++i) {
    residue("formal/d2-eta" + std::to_string(i), "co", formal_d(formal_d_eta(i)));
    residue("formal/d2-phi" + std::to_string(i), "co", formal_d(formal_d_phi(i)));
  }
  residue("formal/d2-t", "co", formal_d(FormalElement::dt()));

  // (b) dF_i = 0
  for (int i = 1; i <= 3; ++i)
    residue("formal/cone-closed-" + std::to_string(i), "con2", formal_d(formal_cone_form(i)));

  // (c) F = -sum eps_s F_s ^ F_s is closed
  {
    FormalElement f;
    for (int s = 1; s <= 3; ++s) {
      const FormalElement fs = formal_cone_form(s);
      f += Rat(-epsilon(s)) * (fs * fs);
    }
    residue("formal/hypersymplectic-4form-closed", "con4", formal_d(f));
  }

  // (d) Omega = -phi1^phi1 - phi2^phi2 + phi3^phi3 is closed
  {
    FormalElement om;
    for (int s = 1; s <= 3; ++s)
      om += Rat(-epsilon(s)) * (FormalElement::phi(s) * FormalElement::phi(s));
    residue("formal/fundamental-4form-closed", "fform", formal_d(om));
  }

  // (e) substituting alpha_i = -2 eps_j eta_i and lambda = 2 into the first
  // structure equation reproduces the rule set
  for (int i = 1; i <= 3; ++i) {
    auto [ii, j, k] = cyclic(i);
    auto alpha = [](int s) {
      auto [si, sj, sk] = cyclic(s);
      (void)sk;
      return Rat(-2 * epsilon(sj)) * FormalElement::eta(si);
    };
    FormalElement rhs = Rat(-2 * epsilon(ii)) * FormalElement::phi(ii);
    rhs += FormalElement::eta(j) * alpha(k);
    rhs += Rat(epsilon(j)) * (FormalElement::eta(k) * alpha(j));
    rhs += Rat(2 * epsilon(ii)) * (FormalElement::eta(j) * FormalElement::eta(k));
    residue("formal/streq-reduces-to-rules-" + std::to_string(ii), "eta3sas",
            formal_d_eta(ii) - rhs);
  }

  return out;
}

}  // namespace pqc
