#include "objestures/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "objestures/error.hpp"

namespace objestures {

namespace {
constexpr double kDegenerateLength = 1e-9;
}

SegmentProjection project_to_segment(const Vec3& p, const Vec3& p1, const Vec3& p2) {
  const Vec3 axis = p2 - p1;
  const double len2 = dot(axis, axis);
  if (!(std::sqrt(len2) >= kDegenerateLength)) {
    throw Error(Errc::DegenerateSegment, "segment endpoints coincide");
  }
  const double s = std::clamp(dot(p - p1, axis) / len2, 0.0, 1.0);
  return {s, distance(p, p1 + axis * s)};
}

double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  a = std::remainder(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

double signed_yaw_delta(const Vec3& ref_dir, const Vec3& cur_dir) {
  const Vec3 a = horizontal(ref_dir);
  const Vec3 b = horizontal(cur_dir);
  if (norm(a) < kDegenerateLength || norm(b) < kDegenerateLength) {
    throw Error(Errc::VerticalDirection, "direction has no horizontal component");
  }
  // y component of a x b: positive when b is counterclockwise of a seen from +Y.
  const double sine = a.z * b.x - a.x * b.z;
  const double angle = std::atan2(sine, dot(a, b));
  return angle <= -std::numbers::pi ? std::numbers::pi : angle;
}

}  // namespace objestures
