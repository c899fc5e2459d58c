#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqc/linalg.hpp"

namespace pqc {

/// Frame with exact rational structure constants:
/// [e_b, e_c] = sum_a C^a_{bc} e_a. Frame indices are 0-based; the first 4n
/// vectors span H and the last three span the vertical complement.
class CoframeModel {
 public:
  CoframeModel() = default;
  CoframeModel(int n) : n_(n), dim_(4 * n + 3), c_(static_cast<std::size_t>(dim_) * dim_ * dim_, Rat(0)) {}

  int n() const { return n_; }
  int dim() const { return dim_; }
  int dim_h() const { return 4 * n_; }
  bool horizontal(int a) const { return a < 4 * n_; }

  const Rat& C(int a, int b, int c) const { return c_[idx(a, b, c)]; }

  /// Sets C^a_{bc} = v and C^a_{cb} = -v.
  void set_C(int a, int b, int c, const Rat& v) {
    if (b == c && !is_zero(v)) throw std::invalid_argument("antisymmetry: C^a_{bb} must vanish");
    c_[idx(a, b, c)] = v;
    c_[idx(a, c, b)] = -v;
  }

  VecQ bracket(int b, int c) const {
    if (b < 0 || b >= dim_ || c < 0 || c >= dim_)
      throw std::out_of_range("bracket: frame index out of range");
    VecQ v(dim_, Rat(0));
    for (int a = 0; a < dim_; ++a) v[a] = C(a, b, c);
    return v;
  }

  VecQ bracket(const VecQ& v, const VecQ& w) const {
    VecQ out(dim_, Rat(0));
    for (int b = 0; b < dim_; ++b) {
      if (is_zero(v[b])) continue;
      for (int c = 0; c < dim_; ++c) {
        if (is_zero(w[c])) continue;
        const Rat f = v[b] * w[c];
        for (int a = 0; a < dim_; ++a)
          if (!is_zero(C(a, b, c))) out[a] += f * C(a, b, c);
      }
    }
    return out;
  }

  VecQ horizontal_part(VecQ v) const {
    for (int a = dim_h(); a < dim_; ++a) v[a] = 0;
    return v;
  }

  VecQ vertical_part(VecQ v) const {
    for (int a = 0; a < dim_h(); ++a) v[a] = 0;
    return v;
  }

  /// First Jacobi failure as (b, c, d, a): component a of the cyclic sum
  /// [[e_b,e_c],e_d] + [[e_c,e_d],e_b] + [[e_d,e_b],e_c]. nullopt when exact.
  std::optional<std::array<int, 4>> jacobi_witness() const {
    for (int b = 0; b < dim_; ++b)
      for (int c = b + 1; c < dim_; ++c)
        for (int d = c + 1; d < dim_; ++d) {
          VecQ s = bracket(bracket(b, c), vec_basis(dim_, d));
          s += bracket(bracket(c, d), vec_basis(dim_, b));
          s += bracket(bracket(d, b), vec_basis(dim_, c));
          for (int a = 0; a < dim_; ++a)
            if (!is_zero(s[a])) return std::array<int, 4>{b, c, d, a};
        }
    return std::nullopt;
  }

 private:
  std::size_t idx(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * dim_ + b) * dim_ + c;
  }

  int n_ = 0;
  int dim_ = 0;
  std::vector<Rat> c_;
};

namespace detail {

inline long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Combinatorial-number-system rank of a strictly increasing tuple.
inline std::size_t comb_rank(std::span<const int> idx) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) r += binom(idx[i], static_cast<int>(i) + 1);
  return r;
}

inline bool next_combination(std::vector<int>& idx, int dim) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < dim - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<int> first_combination(int k) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

}  // namespace detail

/// Dense alternating k-form with exact components over the coframe.
/// Wedge and d follow the determinant convention:
/// (a^b)(X,Y) = a(X)b(Y) - a(Y)b(X), no interior factorials.
class Form {
 public:
  Form() = default;
  Form(int dim, int deg)
      : dim_(dim), deg_(deg), comp_(static_cast<std::size_t>(detail::binom(dim, deg)), Rat(0)) {}

  static Form coframe_element(int dim, int a) {
    Form f(dim, 1);
    f.comp_[a] = 1;
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return deg_; }

  Rat& at(std::span<const int> increasing) { return comp_[detail::comb_rank(increasing)]; }
  const Rat& at(std::span<const int> increasing) const { return comp_[detail::comb_rank(increasing)]; }

  Rat& at(std::initializer_list<int> l) { return at(std::span<const int>(l.begin(), l.size())); }
  const Rat& at(std::initializer_list<int> l) const {
    return at(std::span<const int>(l.begin(), l.size()));
  }

  /// Component for an arbitrary index tuple (sorted internally, sign-adjusted;
  /// zero on repeats).
  Rat value(std::span<const int> idx) const {
    std::vector<int> s(idx.begin(), idx.end());
    int sign = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (s[i] == s[j]) return Rat(0);
        if (s[i] > s[j]) {
          std::swap(s[i], s[j]);
          sign = -sign;
        }
      }
    return Rat(sign) * at(s);
  }
  Rat value(std::initializer_list<int> l) const {
    return value(std::span<const int>(l.begin(), l.size()));
  }

  /// Multilinear evaluation on constant-coefficient vectors.
  Rat eval(std::span<const VecQ> v) const {
    if (static_cast<int>(v.size()) != deg_) throw std::invalid_argument("Form::eval arity");
    if (deg_ == 0) return comp_[0];
    Rat total = 0;
    auto idx = detail::first_combination(deg_);
    do {
      const Rat& c = comp_[detail::comb_rank(idx)];
      if (!pqc::is_zero(c)) total += c * minor_det(v, idx);
    } while (detail::next_combination(idx, dim_));
    return total;
  }

  bool is_zero() const {
    for (const auto& x : comp_)
      if (!pqc::is_zero(x)) return false;
    return true;
  }

  /// True when every component touching a vertical index vanishes.
  bool is_horizontal(int dim_h) const {
    if (deg_ == 0) return true;
    auto idx = detail::first_combination(deg_);
    do {
      if (!pqc::is_zero(comp_[detail::comb_rank(idx)]) && idx.back() >= dim_h) return false;
    } while (detail::next_combination(idx, dim_));
    return true;
  }

  /// Zeroes every component touching a vertical index.
  Form restricted_to_h(int dim_h) const {
    Form out(dim_, deg_);
    if (deg_ == 0) { out.comp_ = comp_; return out; }
    auto idx = detail::first_combination(deg_);
    do {
      const std::size_t rank = detail::comb_rank(idx);
      if (idx.back() < dim_h) out.comp_[rank] = comp_[rank];
    } while (detail::next_combination(idx, dim_));
    return out;
  }

  bool operator==(const Form& o) const {
    return dim_ == o.dim_ && deg_ == o.deg_ && comp_ == o.comp_;
  }

  Form& operator+=(const Form& o) {
    check_shape(o);
    for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_shape(o);
    for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i] -= o.comp_[i];
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Rat& c, Form f) {
    for (auto& x : f.comp_) x *= c;
    return f;
  }
  Form operator-() const { return Rat(-1) * *this; }

  Form wedge(const Form& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("wedge: dimension mismatch");
    const int p = deg_, q = o.deg_;
    Form out(dim_, p + q);
    if (p + q > dim_) return out;
    if (p == 0) return comp_[0] * o;
    if (q == 0) return o.comp_[0] * *this;
    auto s = detail::first_combination(p + q);
    do {
      Rat acc = 0;
      // split S into the p indices fed to *this and the q fed to o
      std::vector<int> pick(p);
      acc = wedge_component(o, s, pick, 0, 0);
      if (!pqc::is_zero(acc)) out.at(s) = acc;
    } while (detail::next_combination(s, dim_));
    return out;
  }

  /// Interior product v -| form (contraction in the first slot).
  Form interior(const VecQ& v) const {
    if (deg_ == 0) throw std::invalid_argument("interior: degree must be >= 1");
    Form out(dim_, deg_ - 1);
    if (deg_ == 1) {
      Rat acc = 0;
      for (int a = 0; a < dim_; ++a) acc += v[a] * comp_[a];
      out.comp_[0] = acc;
      return out;
    }
    auto rest = detail::first_combination(deg_ - 1);
    do {
      Rat acc = 0;
      std::vector<int> full(deg_);
      for (int a = 0; a < dim_; ++a) {
        if (pqc::is_zero(v[a])) continue;
        full[0] = a;
        std::copy(rest.begin(), rest.end(), full.begin() + 1);
        acc += v[a] * value(full);
      }
      if (!pqc::is_zero(acc)) out.at(rest) = acc;
    } while (detail::next_combination(rest, dim_));
    return out;
  }

  /// Exterior derivative on constant-component forms:
  /// dw(e_{a0},...,e_{ak}) = sum_{i<j} (-1)^{i+j} w([e_{ai},e_{aj}], ..rest..).
  Form d(const CoframeModel& m) const {
    if (dim_ != m.dim()) throw std::invalid_argument("d: model dimension mismatch");
    Form out(dim_, deg_ + 1);
    if (deg_ + 1 > dim_) return out;
    if (deg_ == 0) return out;  // constant scalar
    auto s = detail::first_combination(deg_ + 1);
    do {
      Rat acc = 0;
      for (int i = 0; i < deg_ + 1; ++i)
        for (int j = i + 1; j < deg_ + 1; ++j) {
          const VecQ br = m.bracket(s[i], s[j]);
          if (vec_is_zero(br)) continue;
          std::vector<int> rest;
          rest.reserve(deg_);
          rest.push_back(-1);  // slot for the bracket component
          for (int r = 0; r < deg_ + 1; ++r)
            if (r != i && r != j) rest.push_back(s[r]);
          Rat term = 0;
          for (int a = 0; a < dim_; ++a) {
            if (pqc::is_zero(br[a])) continue;
            rest[0] = a;
            term += br[a] * value(rest);
          }
          if ((i + j) % 2 == 1) term = -term;
          acc += term;
        }
      if (!pqc::is_zero(acc)) out.at(s) = acc;
    } while (detail::next_combination(s, dim_));
    return out;
  }

 private:
  void check_shape(const Form& o) const {
    if (dim_ != o.dim_ || deg_ != o.deg_) throw std::invalid_argument("form shape mismatch");
  }

  Rat minor_det(std::span<const VecQ> v, const std::vector<int>& rows) const {
    // determinant of the k x k matrix v_j[rows_i], expansion over permutations
    const int k = static_cast<int>(rows.size());
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    Rat det = 0;
    int sign = 1;
    // Heap-free: use std::next_permutation with explicit parity tracking.
    std::vector<int> p = perm;
    do {
      int inversions = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (p[i] > p[j]) ++inversions;
      Rat prod = (inversions % 2 == 0) ? Rat(1) : Rat(-1);
      for (int i = 0; i < k; ++i) {
        prod *= v[p[i]][rows[i]];
        if (pqc::is_zero(prod)) break;
      }
      det += prod;
    } while (std::next_permutation(p.begin(), p.end()));
    (void)sign;
    return det;
  }

  Rat wedge_component(const Form& o, const std::vector<int>& s, std::vector<int>& pick,
                      std::size_t s_pos, std::size_t picked) const {
    const std::size_t p = pick.size();
    if (picked == p) {
      // remaining indices of s go to o; sign = parity of the shuffle
      std::vector<int> rest;
      rest.reserve(s.size() - p);
      std::size_t pi = 0;
      int inversions = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (pi < p && static_cast<std::size_t>(pick[pi]) == i) {
          inversions += static_cast<int>(i - pi);
          ++pi;
        } else {
          rest.push_back(s[i]);
        }
      }
      std::vector<int> mine(p);
      for (std::size_t i = 0; i < p; ++i) mine[i] = s[pick[i]];
      Rat a = at(mine);
      if (pqc::is_zero(a)) return Rat(0);
      Rat b = o.at(rest);
      if (pqc::is_zero(b)) return Rat(0);
      return (inversions % 2 == 0 ? Rat(1) : Rat(-1)) * a * b;
    }
    Rat acc = 0;
    for (std::size_t i = s_pos; i + (p - picked) <= s.size(); ++i) {
      pick[picked] = static_cast<int>(i);
      acc += wedge_component(o, s, pick, i + 1, picked + 1);
    }
    return acc;
  }

  int dim_ = 0;
  int deg_ = 0;
  std::vector<Rat> comp_;
};

/// d of the coframe element theta^a: d theta^a (e_b, e_c) = -C^a_{bc}.
inline Form d_coframe_element(const CoframeModel& m, int a) {
  return Form::coframe_element(m.dim(), a).d(m);
}

/// Lie bracket of two constant-coefficient frame fields.
inline VecQ lie_bracket(const CoframeModel& m, const VecQ& v, const VecQ& w) {
  return m.bracket(v, w);
}

/// L_v w = [v, w] for constant fields; forms/tensors below.
inline Form lie_derivative(const CoframeModel& m, const VecQ& v, const Form& w) {
  Form out(w.dim(), w.degree());
  if (w.degree() == 0) return out;
  auto idx = detail::first_combination(w.degree());
  do {
    Rat acc = 0;
    std::vector<int> t(idx.begin(), idx.end());
    for (int slot = 0; slot < w.degree(); ++slot) {
      const VecQ br = m.bracket(v, vec_basis(m.dim(), idx[slot]));
      if (vec_is_zero(br)) continue;
      const int keep = t[slot];
      for (int a = 0; a < m.dim(); ++a) {
        if (is_zero(br[a])) continue;
        t[slot] = a;
        acc -= br[a] * w.value(t);
      }
      t[slot] = keep;
    }
    if (!is_zero(acc)) out.at(idx) = acc;
  } while (detail::next_combination(idx, m.dim()));
  return out;
}

/// Lie derivative of a full-frame (0,2) tensor:
/// (L_v T)(X,Y) = -T([v,X],Y) - T(X,[v,Y]).
inline MatQ lie_derivative_bilinear(const CoframeModel& m, const VecQ& v, const MatQ& t) {
  const int dim = m.dim();
  MatQ out(dim, dim);
  std::vector<VecQ> br(dim);
  for (int a = 0; a < dim; ++a) br[a] = m.bracket(v, vec_basis(dim, a));
  for (int b = 0; b < dim; ++b)
    for (int c = 0; c < dim; ++c) {
      Rat acc = 0;
      for (int a = 0; a < dim; ++a) {
        if (!is_zero(br[b][a])) acc -= br[b][a] * t.at(a, c);
        if (!is_zero(br[c][a])) acc -= br[c][a] * t.at(b, a);
      }
      out.at(b, c) = acc;
    }
  return out;
}

/// Lie derivative of an H-endomorphism with horizontal projection:
/// (L_v I)X = [v, IX]_H - I([v, X]_H), X horizontal. Returns a 4n x 4n matrix.
inline MatQ lie_derivative_endo_h(const CoframeModel& m, const VecQ& v, const MatQ& i_mat) {
  const int nh = m.dim_h();
  MatQ out(nh, nh);
  for (int b = 0; b < nh; ++b) {
    // I e_b as a full-frame vector
    VecQ ib(m.dim(), Rat(0));
    for (int r = 0; r < nh; ++r) ib[r] = i_mat.at(r, b);
    VecQ first = m.horizontal_part(m.bracket(v, ib));
    VecQ second_h = m.horizontal_part(m.bracket(v, vec_basis(m.dim(), b)));
    for (int r = 0; r < nh; ++r) {
      Rat acc = first[r];
      for (int c = 0; c < nh; ++c)
        if (!is_zero(second_h[c])) acc -= i_mat.at(r, c) * second_h[c];
      out.at(r, b) = acc;
    }
  }
  return out;
}

}  // namespace pqc
