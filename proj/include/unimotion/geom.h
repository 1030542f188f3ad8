// Copyright 2026 The Unimotion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNIMOTION_GEOM_H_
#define UNIMOTION_GEOM_H_

#include <cmath>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

namespace unimotion {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) {
  return a.x * b.x + a.y * b.y;
}
// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) {
  return a.x * b.y - a.y * b.x;
}
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Maps any angle onto the canonical interval [-pi, pi).
double wrap_angle(double radians);

// Orientation angle, always stored in canonical form.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(wrap_angle(radians)) {}

  double radians() const { return value_; }

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  double value_ = 0.0;
};

// Signed difference a - b folded onto [-pi, pi).
inline double angle_difference(double a, double b) {
  return wrap_angle(a - b);
}

Vec2 rotate(double theta, const Vec2& v);

// Unit vector along the orientation, (cos t, sin t).
Vec2 heading_vector(double theta);
// Left-pointing unit normal, rotate(pi/2, heading_vector(theta)).
Vec2 normal_vector(double theta);

// Counterclockwise angle from u to v in [-pi, pi). Throws std::domain_error
// if either vector is zero.
double angle_between(const Vec2& u, const Vec2& v);

double distance_point_to_segment(const Vec2& p, const Vec2& a, const Vec2& b);
Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b);
double distance_segment_to_segment(const Vec2& a0, const Vec2& a1,
                                   const Vec2& b0, const Vec2& b1);

// Mirror image of p across the infinite line through a and b. Returns p when
// a == b.
Vec2 reflect_across_line(const Vec2& p, const Vec2& a, const Vec2& b);

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

// Convex polygon with counterclockwise, strictly convex vertices. The vertex
// list may be degenerate: one vertex is a point, two vertices a segment.
class Polygon {
 public:
  Polygon() = default;

  // Convex hull of the given points; collinear and duplicate points are
  // merged.
  static Polygon hull(std::span<const Vec2> points);

  // Same as hull(), but throws std::invalid_argument unless the input already
  // describes a convex polygon (any winding, collinear vertices allowed).
  static Polygon from_convex_vertices(std::span<const Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  bool has_interior() const { return vertices_.size() >= 3; }
  double area() const;

 private:
  std::vector<Vec2> vertices_;
};

// conv({apex} u disk). Equal to the union of the triangle spanned by the apex
// and the two tangent points with the disk itself.
struct ConeHull {
  Vec2 apex;
  Disk disk;

  bool apex_inside_disk() const {
    return distance(apex, disk.center) <= disk.radius;
  }
  // Tangent points of the two lines through the apex touching the disk. Only
  // meaningful when the apex lies outside the disk.
  std::pair<Vec2, Vec2> tangent_points() const;
  Polygon triangle() const;
};

// Ordered polyline; not convex in general.
struct PointChain {
  std::vector<Vec2> points;
};

using ConvexSet = std::variant<Disk, Polygon, ConeHull, PointChain>;

double distance_point_to_set(const Vec2& p, const ConvexSet& set);
double distance_between_sets(const ConvexSet& a, const ConvexSet& b);

// Signed penetration depth of p: the distance to the set complement when p is
// inside, minus the distance to the set otherwise. Sets without interior and
// PointChains report -distance.
double depth_in_set(const Vec2& p, const ConvexSet& set);

// max over the set of <direction, y>.
double support(const ConvexSet& set, const Vec2& direction);

// max over the set of the distance to p.
double max_distance_from(const ConvexSet& set, const Vec2& p);

// True iff inner lies in outer dilated by tol. Exact for convex outer sets;
// for a PointChain outer set every generating point of inner must be within
// tol of the chain.
bool contains_set(const ConvexSet& outer, const ConvexSet& inner, double tol);

}  // namespace unimotion

#endif  // UNIMOTION_GEOM_H_
