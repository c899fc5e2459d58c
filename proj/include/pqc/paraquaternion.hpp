#pragma once

#include <array>
#include <stdexcept>

#include "pqc/rational.hpp"

namespace pqc {

/// epsilon_1 = epsilon_2 = 1, epsilon_3 = -1; for cyclic (i,j,k):
/// epsilon_i * epsilon_j = -epsilon_k.
inline int epsilon(int s) {
  switch (s) {
    case 1:
    case 2: return 1;
    case 3: return -1;
  }
  throw std::out_of_range("epsilon index must be 1, 2 or 3");
}

/// Completes s to the cyclic triple (i,j,k) = (s, s+1, s+2) mod 3.
struct Cyclic {
  int i, j, k;
};
inline Cyclic cyclic(int i) {
  return {i, i % 3 + 1, (i + 1) % 3 + 1};
}

/// Element t + x r3 + y r1 + z r2 of the split-quaternion algebra:
/// r1^2 = r2^2 = 1, r3^2 = -1, r1 r2 = -r2 r1 = r3.
struct ParaQuaternion {
  Rat t, x, y, z;

  ParaQuaternion(Rat t_ = 0, Rat x_ = 0, Rat y_ = 0, Rat z_ = 0)
      : t(std::move(t_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  static ParaQuaternion one() { return {1, 0, 0, 0}; }
  /// Imaginary unit r_s.
  static ParaQuaternion unit(int s) {
    switch (s) {
      case 1: return {0, 0, 1, 0};
      case 2: return {0, 0, 0, 1};
      case 3: return {0, 1, 0, 0};
    }
    throw std::out_of_range("unit index must be 1, 2 or 3");
  }

  ParaQuaternion conj() const { return {t, -x, -y, -z}; }

  bool operator==(const ParaQuaternion& o) const {
    return t == o.t && x == o.x && y == o.y && z == o.z;
  }

  friend ParaQuaternion operator+(const ParaQuaternion& a, const ParaQuaternion& b) {
    return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend ParaQuaternion operator-(const ParaQuaternion& a, const ParaQuaternion& b) {
    return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend ParaQuaternion operator*(const Rat& c, const ParaQuaternion& p) {
    return {c * p.t, c * p.x, c * p.y, c * p.z};
  }
};

/// Product in the basis {1, r3, r1, r2}; bilinear extension of
/// r_i r_j = -r_j r_i = -epsilon_k r_k and r_s^2 = epsilon_s.
inline ParaQuaternion pq_mul(const ParaQuaternion& p, const ParaQuaternion& q) {
  // componentwise: (t,x,y,z) ~ t + x r3 + y r1 + z r2
  // r3 r1 = -r2, r1 r3 = r2; r1 r2 = r3, r2 r1 = -r3; r2 r3 = -r1, r3 r2 = r1
  return {
      p.t * q.t - p.x * q.x + p.y * q.y + p.z * q.z,
      p.t * q.x + p.x * q.t + p.y * q.z - p.z * q.y,
      p.t * q.y + p.y * q.t + p.x * q.z - p.z * q.x,
      p.t * q.z + p.z * q.t - p.x * q.y + p.y * q.x,
  };
}

/// ||p||^2 = Re(conj(p) p) = t^2 + x^2 - y^2 - z^2, the neutral (2,2) norm.
inline Rat pq_norm(const ParaQuaternion& p) {
  return p.t * p.t + p.x * p.x - p.y * p.y - p.z * p.z;
}

}  // namespace pqc
