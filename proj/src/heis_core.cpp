#include "heismin/heis_core.hpp"

#include "heismin/errors.hpp"

namespace heismin {

namespace {

HPoint rotate_z(double angle, const HPoint& p) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y, p.z};
}

}  // namespace

Vec3 FrameVector::to_coords() const {
  // c1 (1,0,y) + c2 (0,1,-x) + cT (0,0,1)
  return {c1, c2, c1 * base.y - c2 * base.x + cT};
}

FrameVector FrameVector::from_coords(const HPoint& base, const Vec3& v) {
  return {v.x, v.y, contact_value(base, v), base};
}

double adapted_inner(const HPoint& p, const Vec3& v, const Vec3& w) {
  const FrameVector a = FrameVector::from_coords(p, v);
  const FrameVector b = FrameVector::from_coords(p, w);
  return a.c1 * b.c1 + a.c2 * b.c2 + a.cT * b.cT;
}

HPoint group_mul(const HPoint& p, const HPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + p.y * q.x - p.x * q.y};
}

HPoint group_inv(const HPoint& p) { return {-p.x, -p.y, -p.z}; }

double contact_value(const HPoint& p, const Vec3& v) { return v.z + p.x * v.y - p.y * v.x; }

std::array<Vec3, 3> frame_at(const HPoint& p) {
  return {Vec3{1.0, 0.0, p.y}, Vec3{0.0, 1.0, -p.x}, Vec3{0.0, 0.0, 1.0}};
}

FrameVector J_rotate(const FrameVector& v) {
  if (v.cT != 0.0) {
    throw NumericError(ErrorKind::InvalidArgument, "J is only defined on the contact plane");
  }
  return {-v.c2, v.c1, 0.0, v.base};
}

HPoint apply_motion(const RigidMotion& m, const HPoint& p) {
  return group_mul(m.translation, rotate_z(m.rotation_angle, p));
}

Vec3 push_forward(const RigidMotion& m, const HPoint& /*p*/, const Vec3& v) {
  const double c = std::cos(m.rotation_angle);
  const double s = std::sin(m.rotation_angle);
  const Vec3 r{c * v.x - s * v.y, s * v.x + c * v.y, v.z};
  return left_translation_differential(m.translation, r);
}

Vec3 left_translation_differential(const HPoint& p, const Vec3& v) {
  return {v.x, v.y, v.z + p.y * v.x - p.x * v.y};
}

RigidMotion compose(const RigidMotion& a, const RigidMotion& b) {
  // Rotations about z are automorphisms of H1: R L_t = L_{R t} R.
  return {group_mul(a.translation, rotate_z(a.rotation_angle, b.translation)),
          a.rotation_angle + b.rotation_angle};
}

RigidMotion inverse(const RigidMotion& m) {
  return {rotate_z(-m.rotation_angle, group_inv(m.translation)), -m.rotation_angle};
}

}  // namespace heismin
