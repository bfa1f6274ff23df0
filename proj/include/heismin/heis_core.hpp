#pragma once

// Heisenberg group H1: group law, contact form, CR structure, adapted
// metric and the rigid motions generated by left translations and
// rotations about the z-axis.

#include <array>
#include <cmath>

namespace heismin {

/// Coordinate vector in R^3 (the underlying space of H1).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(const Vec3& a, double s) { return s * a; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// A point of H1.
struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 coords() const { return {x, y, z}; }
  static HPoint from(const Vec3& v) { return {v.x, v.y, v.z}; }
  friend bool operator==(const HPoint&, const HPoint&) = default;
};

/// Tangent vector at `base` written in the left-invariant frame (e1, e2, T).
struct FrameVector {
  double c1 = 0.0;
  double c2 = 0.0;
  double cT = 0.0;
  HPoint base{};

  bool horizontal() const { return cT == 0.0; }
  /// Squared norm in the adapted metric (the frame is orthonormal).
  double norm2() const { return c1 * c1 + c2 * c2 + cT * cT; }
  double norm() const { return std::sqrt(norm2()); }
  /// Coordinate expression c1*e1 + c2*e2 + cT*T at the base point.
  Vec3 to_coords() const;
  static FrameVector from_coords(const HPoint& base, const Vec3& v);
};

/// Adapted-metric inner product of two coordinate vectors at p.
double adapted_inner(const HPoint& p, const Vec3& v, const Vec3& w);

/// Element of PSH(1) modeled as L_translation o R_angle.
struct RigidMotion {
  HPoint translation{};
  double rotation_angle = 0.0;

  static RigidMotion identity() { return {}; }
  static RigidMotion translate(const HPoint& t) { return {t, 0.0}; }
  static RigidMotion rotate(double angle) { return {{}, angle}; }
};

HPoint group_mul(const HPoint& p, const HPoint& q);
HPoint group_inv(const HPoint& p);

/// Theta(v) = v_z + x v_y - y v_x with Theta = dz + x dy - y dx.
double contact_value(const HPoint& p, const Vec3& v);

/// Coordinate expressions of (e1, e2, T) at p.
std::array<Vec3, 3> frame_at(const HPoint& p);

/// CR structure on the contact plane. Throws InvalidArgument for vectors
/// with a T component.
FrameVector J_rotate(const FrameVector& v);

HPoint apply_motion(const RigidMotion& m, const HPoint& p);
/// Differential of the motion at p applied to a coordinate vector.
Vec3 push_forward(const RigidMotion& m, const HPoint& p, const Vec3& v);
/// (a o b)(p) = a(b(p)).
RigidMotion compose(const RigidMotion& a, const RigidMotion& b);
RigidMotion inverse(const RigidMotion& m);

/// Differential of the left translation by p at any point.
Vec3 left_translation_differential(const HPoint& p, const Vec3& v);

}  // namespace heismin
