#pragma once

#include <cmath>

namespace vimu {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const { return *this / norm(); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Unit quaternion (w, x, y, z) representing a rotation. Rotation of a vector
// is v' = q v q*, i.e. the quaternion maps body coordinates to world
// coordinates when it encodes a body-to-world orientation.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quat identity() { return {1.0, 0.0, 0.0, 0.0}; }

  // Rotation of `angle` radians about a unit axis.
  static Quat from_axis_angle(const Vec3& axis, double angle) {
    const double h = 0.5 * angle;
    const double s = std::sin(h);
    return {std::cos(h), axis.x * s, axis.y * s, axis.z * s};
  }

  // Rotation matrix given by column vectors (the body axes in world
  // coordinates). Shepperd's method; assumes the columns are orthonormal.
  static Quat from_axes(const Vec3& cx, const Vec3& cy, const Vec3& cz);

  Quat conjugate() const { return {w, -x, -y, -z}; }

  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  Quat operator-() const { return {-w, -x, -y, -z}; }

  double dot(const Quat& o) const {
    return w * o.w + x * o.x + y * o.y + z * o.z;
  }

  double norm() const { return std::sqrt(dot(*this)); }

  Quat normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Vec3 rotate(const Vec3& v) const {
    const Vec3 qv{x, y, z};
    const Vec3 t = 2.0 * qv.cross(v);
    return v + w * t + qv.cross(t);
  }

  Vec3 rotate_inverse(const Vec3& v) const { return conjugate().rotate(v); }

  // Rotation-vector (axis * angle) image of the quaternion, i.e.
  // 2 * log(q). The sign of w is fixed first so the angle is in [0, pi].
  Vec3 rotation_vector() const {
    Quat q = *this;
    if (q.w < 0.0) q = -q;
    const Vec3 v{q.x, q.y, q.z};
    const double s = v.norm();
    if (s < 1e-12) return 2.0 * v;  // log(q) ~ v/w near identity, w ~ 1
    const double angle = 2.0 * std::atan2(s, q.w);
    return v * (angle / s);
  }

  bool finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) &&
           std::isfinite(z);
  }
};

inline Quat Quat::from_axes(const Vec3& cx, const Vec3& cy, const Vec3& cz) {
  // Rows of the matrix [cx cy cz] by element.
  const double m00 = cx.x, m01 = cy.x, m02 = cz.x;
  const double m10 = cx.y, m11 = cy.y, m12 = cz.y;
  const double m20 = cx.z, m21 = cy.z, m22 = cz.z;
  const double trace = m00 + m11 + m22;
  Quat q;
  if (trace > 0.0) {
    double s = std::sqrt(trace + 1.0) * 2.0;
    q.w = 0.25 * s;
    q.x = (m21 - m12) / s;
    q.y = (m02 - m20) / s;
    q.z = (m10 - m01) / s;
  } else if (m00 > m11 && m00 > m22) {
    double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
    q.w = (m21 - m12) / s;
    q.x = 0.25 * s;
    q.y = (m01 + m10) / s;
    q.z = (m02 + m20) / s;
  } else if (m11 > m22) {
    double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
    q.w = (m02 - m20) / s;
    q.x = (m01 + m10) / s;
    q.y = 0.25 * s;
    q.z = (m12 + m21) / s;
  } else {
    double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
    q.w = (m10 - m01) / s;
    q.x = (m02 + m20) / s;
    q.y = (m12 + m21) / s;
    q.z = 0.25 * s;
  }
  return q.normalized();
}

}  // namespace vimu
