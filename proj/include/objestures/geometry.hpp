#pragma once

#include <cmath>

namespace objestures {

/// Point or direction in the world frame, meters.
/// Right-handed, +Y up (gravity-aligned).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }
constexpr Vec3 midpoint(const Vec3& a, const Vec3& b) { return (a + b) * 0.5; }

inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Rotation of `v` about world +Y by `angle` radians (right-hand rule).
inline Vec3 rotate_about_y(const Vec3& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x + s * v.z, v.y, -s * v.x + c * v.z};
}

struct SegmentProjection {
  double s;         // normalized position along the segment, [0, 1]
  double distance;  // meters from the point to its projection
};

/// Closest point on segment [p1, p2] to `p`.
/// Throws Errc::DegenerateSegment when |p2 - p1| < 1e-9 m.
SegmentProjection project_to_segment(const Vec3& p, const Vec3& p1, const Vec3& p2);

/// Signed shortest angle, in (-pi, pi], that takes the horizontal projection
/// of `ref_dir` onto that of `cur_dir`. Counterclockwise seen from +Y is
/// positive. Throws Errc::VerticalDirection if either projection vanishes.
double signed_yaw_delta(const Vec3& ref_dir, const Vec3& cur_dir);

/// `v` with its vertical component removed.
constexpr Vec3 horizontal(const Vec3& v) { return {v.x, 0.0, v.z}; }

/// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace objestures
